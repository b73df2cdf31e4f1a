#include "nftser/types.hpp"

#include <algorithm>
#include <cmath>

namespace nftser {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::degenerate_division: return "degenerate-division";
    case ErrorCode::stitch_mismatch: return "stitch-mismatch";
    case ErrorCode::all_below_threshold: return "all-below-threshold";
    case ErrorCode::grid_too_small: return "grid-too-small";
    case ErrorCode::duplicate_eigenvalue: return "duplicate-eigenvalue";
    case ErrorCode::vanishing_denominator: return "vanishing-denominator";
    case ErrorCode::eigensolver_failure: return "eigensolver-failure";
    case ErrorCode::no_candidates: return "no-candidates";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::left_half_plane: return "left-half-plane";
    case ErrorCode::alpha_degenerate: return "alpha-degenerate";
    case ErrorCode::empty_guess_list: return "empty-guess-list";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

SampledPulse::SampledPulse(double t_start, double step, std::vector<Complex> samples)
    : t_start_(t_start), step_(step), samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "SampledPulse: at least two samples required");
  }
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw Error(ErrorCode::invalid_argument, "SampledPulse: step must be positive and finite");
  }
  if (!std::isfinite(t_start_)) {
    throw Error(ErrorCode::invalid_argument, "SampledPulse: t_start must be finite");
  }
}

SampledPulse SampledPulse::zeros(const TimeGrid& grid) {
  return SampledPulse(grid, std::vector<Complex>(grid.samples, Complex{}));
}

bool ascending_im_less(const Complex& a, const Complex& b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

DiscreteSpectrum::DiscreteSpectrum(std::vector<SpectralEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Complex lam = entries_[k].eigenvalue;
    if (!(lam.imag() > 0.0) || !std::isfinite(lam.real()) || !std::isfinite(lam.imag())) {
      throw Error(ErrorCode::invalid_argument, "DiscreteSpectrum: eigenvalues must lie in the upper half plane");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (entries_[j].eigenvalue == lam) {
        throw Error(ErrorCode::duplicate_eigenvalue, "DiscreteSpectrum: duplicate eigenvalue");
      }
    }
  }
}

DiscreteSpectrum::DiscreteSpectrum(std::span<const Complex> eigenvalues,
                                   std::span<const Complex> amplitudes)
    : DiscreteSpectrum([&] {
        if (eigenvalues.size() != amplitudes.size()) {
          throw Error(ErrorCode::invalid_argument, "DiscreteSpectrum: eigenvalue/amplitude count mismatch");
        }
        std::vector<SpectralEntry> e;
        e.reserve(eigenvalues.size());
        for (std::size_t k = 0; k < eigenvalues.size(); ++k) e.push_back({eigenvalues[k], amplitudes[k]});
        return e;
      }()) {}

std::vector<Complex> DiscreteSpectrum::eigenvalues() const {
  std::vector<Complex> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.eigenvalue);
  return out;
}

std::vector<Complex> DiscreteSpectrum::amplitudes() const {
  std::vector<Complex> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.amplitude);
  return out;
}

DiscreteSpectrum DiscreteSpectrum::sorted_ascending_im() const {
  auto copy = entries_;
  std::stable_sort(copy.begin(), copy.end(), [](const SpectralEntry& a, const SpectralEntry& b) {
    return ascending_im_less(a.eigenvalue, b.eigenvalue);
  });
  DiscreteSpectrum out;
  out.entries_ = std::move(copy);
  return out;
}

DiscreteSpectrum DiscreteSpectrum::sorted_descending_im() const {
  auto out = sorted_ascending_im();
  std::reverse(out.entries_.begin(), out.entries_.end());
  return out;
}

const SpectralEntry& DiscreteSpectrum::smallest_im() const {
  if (entries_.empty()) throw Error(ErrorCode::invalid_argument, "DiscreteSpectrum: empty spectrum");
  return *std::min_element(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return ascending_im_less(a.eigenvalue, b.eigenvalue);
  });
}

}  // namespace nftser
