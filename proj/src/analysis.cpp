#include "nftser/analysis.hpp"

#include <cmath>
#include <numeric>

namespace nftser::analysis {
namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
  }
}

// prod_k (lambda - lambda_k^*) / (lambda - lambda_k) over the given entries.
Complex blaschke_ratio(Complex lambda, std::span<const SpectralEntry> others) {
  Complex prod{1.0, 0.0};
  for (const auto& e : others) prod *= (lambda - std::conj(e.eigenvalue)) / (lambda - e.eigenvalue);
  return prod;
}

}  // namespace

double TailAsymptote::envelope(double t) const {
  const double centre = side == TailSide::right ? t_s : -t_s;
  return amplitude * std::exp(-rate * std::abs(t - centre));
}

double tail_shift(const DiscreteSpectrum& spectrum) {
  const auto sorted = spectrum.sorted_descending_im();
  const auto entries = sorted.entries();
  const SpectralEntry& last = entries.back();
  const double sigma = last.eigenvalue.imag();
  return std::log(std::abs(blaschke_ratio(last.eigenvalue, entries.first(entries.size() - 1)))) /
         (2.0 * sigma);
}

TailAsymptote tail_asymptote(const DiscreteSpectrum& spectrum, TailSide side) {
  const SpectralEntry& n = spectrum.smallest_im();
  const double sigma = n.eigenvalue.imag();
  const double b = std::abs(n.amplitude);
  TailAsymptote tail;
  tail.side = side;
  tail.rate = 2.0 * sigma;
  tail.amplitude = 4.0 * sigma * (side == TailSide::right ? b : 1.0 / b);
  tail.t_s = tail_shift(spectrum);
  return tail;
}

SupportWindow predicted_support(const DiscreteSpectrum& spectrum, double epsilon) {
  require_epsilon(epsilon);
  const double sigma = spectrum.smallest_im().eigenvalue.imag();
  const double threshold = 2.0 * sigma * std::sqrt(epsilon);
  const auto right = tail_asymptote(spectrum, TailSide::right);
  const auto left = tail_asymptote(spectrum, TailSide::left);
  return {-left.t_s - std::log(left.amplitude / threshold) / left.rate,
          right.t_s + std::log(right.amplitude / threshold) / right.rate};
}

double duration_estimate(const DiscreteSpectrum& spectrum, double epsilon) {
  require_epsilon(epsilon);
  const double sigma = spectrum.smallest_im().eigenvalue.imag();
  return 2.0 * tail_shift(spectrum) + std::log(4.0 / epsilon) / (2.0 * sigma);
}

std::vector<double> duration_staircase(const DiscreteSpectrum& spectrum, double epsilon) {
  const auto sorted = spectrum.sorted_descending_im();
  std::vector<double> out;
  for (std::size_t n = 1; n <= sorted.size(); ++n) {
    const auto head = sorted.entries().first(n);
    out.push_back(duration_estimate(DiscreteSpectrum({head.begin(), head.end()}), epsilon));
  }
  return out;
}

double complexity_factor(std::span<const double> durations) {
  if (durations.empty()) throw Error(ErrorCode::invalid_argument, "complexity_factor: empty duration list");
  for (double d : durations) {
    if (!(d > 0.0)) throw Error(ErrorCode::invalid_argument, "complexity_factor: durations must be positive");
  }
  const double total = std::accumulate(durations.begin(), durations.end(), 0.0);
  return total / (static_cast<double>(durations.size()) * durations.back());
}

SeparationPrediction separation_predict(const DiscreteSpectrum& spectrum, Complex delta,
                                        Complex b_n_true, Complex b_n_added) {
  const auto sorted = spectrum.sorted_descending_im();
  const auto e = sorted.entries();
  const std::size_t n = e.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "separation_predict: need at least two eigenvalues");
  if (delta == Complex{}) throw Error(ErrorCode::invalid_argument, "separation_predict: delta must be nonzero");

  const Complex lambda_n = e[n - 1].eigenvalue;
  const double sigma_n = lambda_n.imag();
  const Complex lambda_m = e[n - 2].eigenvalue;  // lambda_{n-1}
  const double sigma_m = lambda_m.imag();
  const double b_m = std::abs(e[n - 2].amplitude);

  SeparationPrediction out;
  out.alpha_plus = b_n_added - b_n_true;
  out.alpha_minus = 1.0 / b_n_added - 1.0 / b_n_true;
  const double scale = std::max(std::abs(b_n_true), std::abs(1.0 / b_n_true));
  if (std::abs(out.alpha_plus) <= 1e-12 * scale || std::abs(out.alpha_minus) <= 1e-12 * scale) {
    throw Error(ErrorCode::alpha_degenerate, "separation_predict: added amplitude equals the true one");
  }

  const Complex common = Complex(0.0, 2.0 * sigma_n) / delta * blaschke_ratio(lambda_n, e.first(n - 1));
  const Complex zp = common * out.alpha_plus;
  const Complex zm = common * out.alpha_minus;
  out.t_delta_plus = std::log(std::abs(zp)) / (2.0 * sigma_n);
  out.t_delta_minus = std::log(std::abs(zm)) / (2.0 * sigma_n);
  out.phi_delta_plus = std::arg(zp);
  out.phi_delta_minus = std::arg(zm);

  out.t0 = std::log(std::abs(blaschke_ratio(lambda_m, e.first(n - 2)))) / (2.0 * sigma_m);
  const double denom = sigma_n + sigma_m;
  out.t_th_plus = (0.5 * std::log(b_m * sigma_m / sigma_n) + sigma_n * out.t_delta_plus + sigma_m * out.t0) / denom;
  out.t_th_minus =
      -(0.5 * std::log(sigma_m / (b_m * sigma_n)) + sigma_n * out.t_delta_minus + sigma_m * out.t0) / denom;
  return out;
}

DeltaBound delta_bound(const DiscreteSpectrum& spectrum, double epsilon, Complex b_n_added) {
  require_epsilon(epsilon);
  const auto sorted = spectrum.sorted_descending_im();
  const auto e = sorted.entries();
  const std::size_t n = e.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "delta_bound: need at least two eigenvalues");

  const double sigma_n = e[n - 1].eigenvalue.imag();
  const double sigma_m = e[n - 2].eigenvalue.imag();
  const Complex b_n = e[n - 1].amplitude;
  const double b_m = std::abs(e[n - 2].amplitude);
  const double t_s = tail_shift(sorted);
  const double t0 = std::log(std::abs(blaschke_ratio(e[n - 2].eigenvalue, e.first(n - 2)))) / (2.0 * sigma_m);

  const double root_eps = std::sqrt(epsilon);
  const double common = root_eps * sigma_m / sigma_n * std::exp(2.0 * sigma_n * (t_s - t0));
  const double exponent = sigma_n / sigma_m;
  DeltaBound out;
  out.plus = std::abs(b_n_added - b_n) * common * std::pow(root_eps / (2.0 * b_m), exponent);
  out.minus = std::abs(1.0 / b_n_added - 1.0 / b_n) * common * std::pow(root_eps * b_m / 2.0, exponent);
  return out;
}

}  // namespace nftser::analysis
