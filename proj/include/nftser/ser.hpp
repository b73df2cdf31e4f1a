#pragma once

// Successive eigenvalue removal: refine one eigenvalue, read its spectral
// amplitude with the forward-backward method, remove it with a Darboux
// update and shrink the time window before moving on. The classical
// baseline estimates every eigenvalue on the unmodified pulse.

#include "nftser/eigenfinder.hpp"
#include "nftser/scattering.hpp"
#include "nftser/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nftser {

enum class RemovalOrder { ascending_im, descending_im, explicit_list };

struct SerConfig {
  double epsilon = 2e-4;
  RemovalOrder removal_order = RemovalOrder::ascending_im;
  double p_fraction = 0.5;
  NewtonConfig newton;
  bool validate_energy = true;
  double energy_tol = 0.02;
  JostOptions jost;
  /// Truncate the input to its effective support before the first iteration.
  bool truncate_input = true;
  /// Optional fixed windows replacing threshold truncation: entry i is the
  /// window of the pulse processed in iteration i (entry 0 = initial pulse).
  std::vector<SupportWindow> window_schedule;
  /// Used only when no initial guesses are supplied.
  std::optional<CollocationConfig> collocation;

  void validate() const;
};

struct SerIteration {
  std::size_t n = 0;  // eigenvalues left in the pulse before this step
  Complex guess;
  Complex lambda_hat;
  Complex b_hat;
  int newton_iters = 0;
  double residual = 0.0;
  SupportWindow window;     // support of q^(n)
  std::size_t samples_used = 0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  bool energy_check_pass = false;
  double stitch_error = 0.0;
  bool ok = false;
  std::optional<ErrorCode> error;
  std::string message;
};

struct SerReport {
  std::vector<SerIteration> iterations;
  double alpha_factor = 0.0;
  DiscreteSpectrum recovered;
  double residual_energy = 0.0;  // energy left after the last removal

  /// Durations T^(n) ordered n = 1..N.
  std::vector<double> durations() const;
};

/// Pulse restricted to effective_support(pulse, threshold).
SampledPulse truncate(const SampledPulse& pulse, double threshold);

/// Samples whose times fall inside the window (half a step of slack).
SampledPulse truncate_to_window(const SampledPulse& pulse, const SupportWindow& window);

/// |(e_before - e_after) - 4 Im(lambda)| <= tol * 4 Im(lambda)
bool energy_validation(double e_before, double e_after, Complex lambda, double tol);

SerReport ser_decompose(const SampledPulse& pulse, const std::vector<Complex>& initial_guesses,
                        const SerConfig& config = {});

/// Guesses from Fourier collocation.
SerReport ser_decompose(const SampledPulse& pulse, const SerConfig& config = {});

struct ClassicalEstimate {
  Complex guess;
  Complex lambda_hat;
  Complex b_hat;
  int newton_iters = 0;
  double residual = 0.0;
  bool ok = false;
  std::optional<ErrorCode> error;
};

struct ClassicalReport {
  std::vector<ClassicalEstimate> estimates;

  /// Successful estimates; repeated eigenvalues are kept once.
  DiscreteSpectrum recovered() const;
};

ClassicalReport classical_decompose(const SampledPulse& pulse, const std::vector<Complex>& initial_guesses,
                                    const NewtonConfig& newton = {}, double p_fraction = 0.5);

}  // namespace nftser
