#include "nftser/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nftser {
namespace {

constexpr Complex kJ{0.0, 1.0};

// sin(|q| h) / |q|, continuous through q = 0.
double sinc_step(double abs_q, double h) {
  const double x = abs_q * h;
  if (std::abs(x) < 1e-8) return h * (1.0 - x * x / 6.0);
  return std::sin(x) / abs_q;
}

// Rotating-frame state at the centre of cell m, half a cell to the right of
// the stored edge vector.
Vec2 cell_centre(const ScatteringScheme& scheme, const SampledPulse& pulse, std::size_t m,
                 Complex lambda, const Vec2& edge) {
  const double h = pulse.step();
  return scheme.transfer(pulse[m], pulse.time(m) - 0.25 * h, 0.5 * h, lambda) * edge;
}

ScatteringCoefficients fb_from_vectors(const Vec2& w, const Vec2& u, const FbOptions& options) {
  if (!(std::abs(u(1)) >= options.division_floor)) {
    throw Error(ErrorCode::degenerate_division, "fb_coefficients: |u_2^(p)| below floor");
  }
  return {w(0) * u(1) - u(0) * w(1), w(1) / u(1)};
}

}  // namespace

Mat2 MidpointScheme::transfer(Complex q, double t, double h, Complex lambda) const {
  const double aq = std::abs(q);
  const double c = std::cos(aq * h);
  const double s = sinc_step(aq, h);
  const Complex phase = std::exp(2.0 * kJ * lambda * t);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = q * s * phase;
  m(1, 0) = -std::conj(q) * s / phase;
  m(1, 1) = c;
  return m;
}

Mat2 MidpointScheme::transfer_derivative(Complex q, double t, double h, Complex lambda) const {
  const double s = sinc_step(std::abs(q), h);
  const Complex phase = std::exp(2.0 * kJ * lambda * t);
  Mat2 m;
  m(0, 0) = 0.0;
  m(0, 1) = 2.0 * kJ * t * q * s * phase;
  m(1, 0) = 2.0 * kJ * t * std::conj(q) * s / phase;
  m(1, 1) = 0.0;
  return m;
}

const ScatteringScheme& midpoint_scheme() {
  static const MidpointScheme scheme;
  return scheme;
}

std::unique_ptr<ScatteringScheme> make_scheme(std::string_view name) {
  if (name == "midpoint") return std::make_unique<MidpointScheme>();
  throw Error(ErrorCode::invalid_argument, "unknown scattering scheme '" + std::string(name) + "'");
}

Mat2 transfer_matrix(Complex q, double t, double h, Complex lambda) {
  return midpoint_scheme().transfer(q, t, h, lambda);
}

std::vector<Vec2> propagate_forward(const SampledPulse& pulse, Complex lambda,
                                    const ScatteringScheme& scheme) {
  const std::size_t M = pulse.size();
  const double h = pulse.step();
  std::vector<Vec2> w(M + 1);
  w[0] = Vec2(1.0, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    w[m + 1] = scheme.transfer(pulse[m], pulse.time(m), h, lambda) * w[m];
  }
  return w;
}

std::vector<Vec2> propagate_backward(const SampledPulse& pulse, Complex lambda,
                                     const ScatteringScheme& scheme) {
  const std::size_t M = pulse.size();
  const double h = pulse.step();
  std::vector<Vec2> u(M + 1);
  u[M] = Vec2(0.0, 1.0);
  for (std::size_t m = M; m-- > 0;) {
    u[m] = scheme.transfer(pulse[m], pulse.time(m), -h, lambda) * u[m + 1];
  }
  return u;
}

ScatteringCoefficients spectral_coefficients(const SampledPulse& pulse, Complex lambda,
                                             const ScatteringScheme& scheme) {
  const double h = pulse.step();
  Vec2 w(1.0, 0.0);
  for (std::size_t m = 0; m < pulse.size(); ++m) {
    w = scheme.transfer(pulse[m], pulse.time(m), h, lambda) * w;
  }
  return {w(0), w(1)};
}

std::size_t split_index(std::size_t samples, double fraction) {
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "split_index: need at least two samples");
  const auto p = static_cast<long long>(std::llround(fraction * static_cast<double>(samples)));
  return static_cast<std::size_t>(std::clamp<long long>(p, 1, static_cast<long long>(samples) - 1));
}

ScatteringRun scattering_run(const SampledPulse& pulse, Complex lambda, std::size_t p,
                             const ScatteringScheme& scheme) {
  if (p == 0 || p >= pulse.size()) {
    throw Error(ErrorCode::invalid_argument, "scattering_run: split index must satisfy 0 < p < M");
  }
  return {lambda, propagate_forward(pulse, lambda, scheme), propagate_backward(pulse, lambda, scheme), p};
}

ScatteringCoefficients fb_coefficients(const ScatteringRun& run, const FbOptions& options) {
  return fb_from_vectors(run.forward.at(run.split_index), run.backward.at(run.split_index), options);
}

ScatteringCoefficients fb_coefficients(const SampledPulse& pulse, Complex lambda, std::size_t p,
                                       const FbOptions& options, const ScatteringScheme& scheme) {
  const std::size_t M = pulse.size();
  if (p == 0 || p >= M) {
    throw Error(ErrorCode::invalid_argument, "fb_coefficients: split index must satisfy 0 < p < M");
  }
  const double h = pulse.step();
  Vec2 w(1.0, 0.0);
  for (std::size_t m = 0; m < p; ++m) w = scheme.transfer(pulse[m], pulse.time(m), h, lambda) * w;
  Vec2 u(0.0, 1.0);
  for (std::size_t m = M; m-- > p;) u = scheme.transfer(pulse[m], pulse.time(m), -h, lambda) * u;
  return fb_from_vectors(w, u, options);
}

JostSolution jost_solution(const SampledPulse& pulse, const ScatteringRun& run, Complex b_hat,
                           const JostOptions& options, const ScatteringScheme& scheme) {
  const std::size_t M = pulse.size();
  const std::size_t p = run.split_index;
  if (run.forward.size() != M + 1 || run.backward.size() != M + 1 || p == 0 || p >= M) {
    throw Error(ErrorCode::invalid_argument, "jost_solution: scattering run does not match pulse");
  }
  const Complex lambda = run.lambda;

  const Vec2& wp = run.forward[p];
  const Vec2 up = b_hat * run.backward[p];
  const double scale = std::max(wp.norm(), std::numeric_limits<double>::min());
  const double stitch = (wp - up).norm() / scale;
  if (!(stitch <= options.stitch_tolerance)) {
    throw Error(ErrorCode::stitch_mismatch,
                "jost_solution: branches disagree at split index (relative jump " + std::to_string(stitch) + ")");
  }

  JostSolution out{lambda, std::vector<Vec2>(M), p, stitch};
  for (std::size_t m = 0; m < M; ++m) {
    const Vec2 edge = m < p ? run.forward[m] : Vec2(b_hat * run.backward[m]);
    const Vec2 psi = cell_centre(scheme, pulse, m, lambda, edge);
    const double t = pulse.time(m);
    out.values[m] = Vec2(psi(0) * std::exp(-kJ * lambda * t), psi(1) * std::exp(kJ * lambda * t));
  }
  return out;
}

JostSolution jost_solution(const SampledPulse& pulse, Complex lambda, std::size_t p, Complex b_hat,
                           const JostOptions& options, const ScatteringScheme& scheme) {
  return jost_solution(pulse, scattering_run(pulse, lambda, p, scheme), b_hat, options, scheme);
}

CoefficientDerivative a_with_derivative(const SampledPulse& pulse, Complex lambda,
                                        const ScatteringScheme& scheme) {
  const double h = pulse.step();
  Vec2 w(1.0, 0.0);
  Vec2 dw(0.0, 0.0);
  for (std::size_t m = 0; m < pulse.size(); ++m) {
    const double t = pulse.time(m);
    const Mat2 s = scheme.transfer(pulse[m], t, h, lambda);
    const Mat2 ds = scheme.transfer_derivative(pulse[m], t, h, lambda);
    dw = ds * w + s * dw;
    w = s * w;
  }
  return {w(0), dw(0)};
}

Complex a_derivative(const SampledPulse& pulse, Complex lambda, const ScatteringScheme& scheme) {
  return a_with_derivative(pulse, lambda, scheme).da;
}

double pulse_energy(const SampledPulse& pulse) {
  double sum = 0.0;
  for (const Complex& q : pulse.samples()) sum += std::norm(q);
  return pulse.step() * sum;
}

SupportWindow effective_support(const SampledPulse& pulse, double threshold) {
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "effective_support: threshold must be positive");
  }
  const auto s = pulse.samples();
  const auto above = [threshold](const Complex& q) { return std::abs(q) > threshold; };
  const auto first = std::find_if(s.begin(), s.end(), above);
  if (first == s.end()) {
    throw Error(ErrorCode::all_below_threshold, "effective_support: no sample exceeds threshold");
  }
  const auto last = std::find_if(s.rbegin(), s.rend(), above);
  const auto i0 = static_cast<std::size_t>(first - s.begin());
  const auto i1 = static_cast<std::size_t>(s.rend() - last) - 1;
  return {pulse.time(i0), pulse.time(i1)};
}

}  // namespace nftser
