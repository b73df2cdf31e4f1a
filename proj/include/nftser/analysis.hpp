#pragma once

// Closed-form predictions for multi-soliton geometry: tail asymptotes,
// effective-support durations, the SER complexity factor, and the separation
// of the soliton pair created when an eigenvalue is removed with an offset.

#include "nftser/scattering.hpp"
#include "nftser/types.hpp"

#include <span>
#include <vector>

namespace nftser::analysis {

enum class TailSide { left, right };

/// |q(t)| ~ amplitude * exp(-rate * |t - (+/- t_s)|) on the given side.
struct TailAsymptote {
  TailSide side = TailSide::right;
  double amplitude = 0.0;  // 4 sigma_n |b_n|^{+/-1}
  double rate = 0.0;       // 2 sigma_n
  double t_s = 0.0;

  double envelope(double t) const;
};

/// Shift t_s of the tails, driven by the smallest-Im eigenvalue:
/// (1 / 2 sigma_n) ln | prod_{k != n} (lambda_n - lambda_k^*) / (lambda_n - lambda_k) |.
double tail_shift(const DiscreteSpectrum& spectrum);

TailAsymptote tail_asymptote(const DiscreteSpectrum& spectrum, TailSide side);

/// Window where the tail asymptotes cross 2 sigma_n sqrt(epsilon).
SupportWindow predicted_support(const DiscreteSpectrum& spectrum, double epsilon);

/// 2 t_s + ln(4 / epsilon) / (2 sigma_n). Independent of arg(b_k).
double duration_estimate(const DiscreteSpectrum& spectrum, double epsilon);

/// Predicted T^(n) for ascending-Im removal; element i is T^(i+1).
std::vector<double> duration_staircase(const DiscreteSpectrum& spectrum, double epsilon);

/// alpha_N = sum T^(n) / (N T^(N)); durations[i] holds T^(i+1), so the last
/// element is the initial duration.
double complexity_factor(std::span<const double> durations);

struct SeparationPrediction {
  double t_delta_plus = 0.0;
  double t_delta_minus = 0.0;
  double phi_delta_plus = 0.0;
  double phi_delta_minus = 0.0;
  double t_th_plus = 0.0;
  double t_th_minus = 0.0;
  double t0 = 0.0;
  Complex alpha_plus;
  Complex alpha_minus;
};

/// First-order location of the two escaping solitons after adding
/// lambda_n + delta with amplitude b_n_added to a pulse whose smallest-Im
/// eigenvalue lambda_n carries b_n_true. The separation points t_th use the
/// next eigenvalue lambda_{n-1} and its amplitude from the spectrum.
SeparationPrediction separation_predict(const DiscreteSpectrum& spectrum, Complex delta,
                                        Complex b_n_true, Complex b_n_added);

struct DeltaBound {
  double plus = 0.0;
  double minus = 0.0;
  double value() const { return plus > minus ? plus : minus; }
};

/// Admissible |delta / sigma_n| for which truncation to the next support
/// window excludes both escaping solitons. Requires at least two eigenvalues.
DeltaBound delta_bound(const DiscreteSpectrum& spectrum, double epsilon, Complex b_n_added);

}  // namespace nftser::analysis
