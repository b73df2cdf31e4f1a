#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nftser {

using Complex = std::complex<double>;

enum class ErrorCode {
  invalid_argument,
  degenerate_division,
  stitch_mismatch,
  all_below_threshold,
  grid_too_small,
  duplicate_eigenvalue,
  vanishing_denominator,
  eigensolver_failure,
  no_candidates,
  no_convergence,
  left_half_plane,
  alpha_degenerate,
  empty_guess_list,
  parse_error,
};

const char* to_string(ErrorCode code);

/// Numerical or contract failure raised by the library. The code identifies
/// the failure class so callers can record it instead of aborting.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Uniform time grid: t_m = t_start + m * step, m = 0..samples-1.
struct TimeGrid {
  double t_start = 0.0;
  double step = 1.0;
  std::size_t samples = 0;

  double time(std::size_t m) const { return t_start + static_cast<double>(m) * step; }
  double t_end() const { return time(samples - 1); }
};

/// Uniformly sampled complex envelope q(t_m) in normalized units.
class SampledPulse {
public:
  SampledPulse(double t_start, double step, std::vector<Complex> samples);
  SampledPulse(const TimeGrid& grid, std::vector<Complex> samples)
      : SampledPulse(grid.t_start, grid.step, std::move(samples)) {}

  /// All-zero pulse on the given grid.
  static SampledPulse zeros(const TimeGrid& grid);

  double t_start() const { return t_start_; }
  double step() const { return step_; }
  std::size_t size() const { return samples_.size(); }
  double time(std::size_t m) const { return t_start_ + static_cast<double>(m) * step_; }
  double t_end() const { return time(size() - 1); }
  TimeGrid grid() const { return {t_start_, step_, samples_.size()}; }

  std::span<const Complex> samples() const { return samples_; }
  const Complex& operator[](std::size_t m) const { return samples_[m]; }

private:
  double t_start_;
  double step_;
  std::vector<Complex> samples_;
};

struct SpectralEntry {
  Complex eigenvalue;
  Complex amplitude;  // b_k
};

/// Discrete nonlinear spectrum {(lambda_k, b_k)}. Eigenvalues lie strictly in
/// the upper half plane and are pairwise distinct.
class DiscreteSpectrum {
public:
  DiscreteSpectrum() = default;
  explicit DiscreteSpectrum(std::vector<SpectralEntry> entries);
  DiscreteSpectrum(std::span<const Complex> eigenvalues, std::span<const Complex> amplitudes);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const SpectralEntry& operator[](std::size_t k) const { return entries_[k]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::span<const SpectralEntry> entries() const { return entries_; }

  std::vector<Complex> eigenvalues() const;
  std::vector<Complex> amplitudes() const;

  /// Copy sorted by Im(lambda); ties are broken by Re(lambda) ascending.
  DiscreteSpectrum sorted_ascending_im() const;
  DiscreteSpectrum sorted_descending_im() const;

  /// Entry whose eigenvalue has the smallest imaginary part.
  const SpectralEntry& smallest_im() const;

private:
  std::vector<SpectralEntry> entries_;
};

/// Strict-weak ordering used everywhere an ascending-Im removal order is
/// needed (ties broken by ascending real part).
bool ascending_im_less(const Complex& a, const Complex& b);

}  // namespace nftser
