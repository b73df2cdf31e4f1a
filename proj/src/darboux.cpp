#include "nftser/darboux.hpp"

#include "nftser/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nftser {
namespace {

constexpr Complex kJ{0.0, 1.0};

// (e^{-j mu t}, -b e^{j mu t}) scaled so the larger component has unit modulus.
Vec2 vacuum_vector(Complex mu, Complex b, double t) {
  const Complex l1 = -kJ * mu * t;
  const Complex l2 = kJ * mu * t + std::log(-b);
  const double shift = std::max(l1.real(), l2.real());
  return Vec2(std::exp(l1 - shift), std::exp(l2 - shift));
}

Vec2 normalized(const Vec2& v) {
  const double s = std::max(std::abs(v(0)), std::abs(v(1)));
  return s > 0.0 ? Vec2(v / s) : v;
}

}  // namespace

double PhysicalScaling::P0() const { return std::abs(beta2) / (gamma * T0 * T0); }

void PhysicalScaling::validate() const {
  if (!(T0 > 0.0) || !(gamma > 0.0) || !(P0() > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "PhysicalScaling: T0, gamma and |beta2| must be positive");
  }
}

DressingState DressingState::seed(const DiscreteSpectrum& spectrum, const TimeGrid& grid) {
  const auto sorted = spectrum.sorted_ascending_im();
  DressingState state{SampledPulse::zeros(grid), {}, {}};
  for (const auto& e : sorted) {
    if (e.amplitude == Complex{}) {
      throw Error(ErrorCode::invalid_argument, "synthesize: spectral amplitude b_k must be nonzero");
    }
    std::vector<Vec2> aux(grid.samples);
    for (std::size_t m = 0; m < grid.samples; ++m) aux[m] = vacuum_vector(e.eigenvalue, e.amplitude, grid.time(m));
    state.pending.push_back(e.eigenvalue);
    state.auxiliary.push_back(std::move(aux));
  }
  return state;
}

void DressingState::add_next() {
  if (pending.empty()) return;
  const Complex mu = pending.front();
  const std::vector<Vec2> used = std::move(auxiliary.front());
  pending.erase(pending.begin());
  auxiliary.erase(auxiliary.begin());

  JostSolution theta{mu, used, 0, 0.0};
  pulse = darboux_update(pulse, theta, mu);

  // Dressing matrix D(lambda) = (lambda - mu^*) I - (mu - mu^*) P with the
  // projector P onto the used solution.
  const Complex gap = mu - std::conj(mu);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    const Complex shift = pending[k] - std::conj(mu);
    auto& aux = auxiliary[k];
    for (std::size_t m = 0; m < aux.size(); ++m) {
      const Vec2& th = used[m];
      const Complex overlap = th.dot(aux[m]) / th.squaredNorm();  // th^H v / |th|^2
      aux[m] = normalized(shift * aux[m] - gap * overlap * th);
    }
  }
}

SampledPulse synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid,
                        const SynthesisOptions& options) {
  if (grid.samples < 2 || !(grid.step > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "synthesize: invalid grid");
  }
  if (spectrum.empty()) return SampledPulse::zeros(grid);
  if (options.check_support) {
    const SupportWindow need = analysis::predicted_support(spectrum, options.epsilon);
    if (need.t_minus < grid.t_start || need.t_plus > grid.t_end()) {
      throw Error(ErrorCode::grid_too_small, "synthesize: grid does not cover the predicted effective support");
    }
  }
  DressingState state = DressingState::seed(spectrum, grid);
  while (!state.done()) state.add_next();
  return state.pulse;
}

TimeGrid synthesis_grid_with_step(const DiscreteSpectrum& spectrum, double step, double epsilon,
                                  double padding) {
  if (!(step > 0.0) || !(padding >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "synthesis_grid: step must be positive, padding non-negative");
  }
  const SupportWindow w = analysis::predicted_support(spectrum, epsilon);
  const double half = 0.5 * (1.0 + padding) * w.duration();
  const double centre = 0.5 * (w.t_minus + w.t_plus);
  const auto samples = static_cast<std::size_t>(std::ceil(2.0 * half / step)) + 1;
  return {centre - 0.5 * step * static_cast<double>(samples - 1), step, samples};
}

TimeGrid synthesis_grid(const DiscreteSpectrum& spectrum, std::size_t samples, double epsilon,
                        double padding) {
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "synthesis_grid: need at least two samples");
  const SupportWindow w = analysis::predicted_support(spectrum, epsilon);
  const double length = (1.0 + padding) * w.duration();
  const double step = length / static_cast<double>(samples - 1);
  const double centre = 0.5 * (w.t_minus + w.t_plus);
  return {centre - 0.5 * length, step, samples};
}

JostSolution vacuum_seed(const TimeGrid& grid, Complex mu, Complex b) {
  JostSolution out{mu, std::vector<Vec2>(grid.samples), grid.samples / 2, 0.0};
  for (std::size_t m = 0; m < grid.samples; ++m) out.values[m] = vacuum_vector(mu, b, grid.time(m));
  return out;
}

SampledPulse darboux_update(const SampledPulse& pulse, const JostSolution& theta, Complex mu) {
  if (theta.values.size() != pulse.size()) {
    throw Error(ErrorCode::invalid_argument, "darboux_update: solution length does not match pulse");
  }
  const Complex factor = 2.0 * kJ * (std::conj(mu) - mu);
  std::vector<Complex> out(pulse.samples().begin(), pulse.samples().end());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const Vec2 th = normalized(theta.values[m]);
    const double denom = std::norm(th(0)) + std::norm(th(1));
    if (!(denom > std::numeric_limits<double>::min()) || !std::isfinite(denom)) {
      throw Error(ErrorCode::vanishing_denominator, "darboux_update: |theta_1|^2 + |theta_2|^2 vanishes");
    }
    out[m] += factor * std::conj(th(1)) * th(0) / denom;
  }
  return SampledPulse(pulse.grid(), std::move(out));
}

RemovalResult remove_eigenvalue(const SampledPulse& pulse, Complex lambda_hat, std::size_t p,
                                const JostOptions& jost, const FbOptions& fb) {
  const ScatteringRun run = scattering_run(pulse, lambda_hat, p);
  const Complex b_hat = fb_coefficients(run, fb).b;
  const JostSolution theta = jost_solution(pulse, run, b_hat, jost);
  return {darboux_update(pulse, theta, lambda_hat), b_hat, theta.stitch_error};
}

DiscreteSpectrum propagate_spectrum(const DiscreteSpectrum& spectrum, double z) {
  std::vector<SpectralEntry> out;
  out.reserve(spectrum.size());
  for (const auto& e : spectrum) {
    const Complex l2 = e.eigenvalue * e.eigenvalue;
    out.push_back({e.eigenvalue, e.amplitude * std::exp(-4.0 * kJ * l2 * z)});
  }
  return DiscreteSpectrum(std::move(out));
}

SampledPulse to_physical(const SampledPulse& pulse, const PhysicalScaling& scaling) {
  scaling.validate();
  const double amp = std::sqrt(scaling.P0());
  std::vector<Complex> out;
  out.reserve(pulse.size());
  for (const Complex& q : pulse.samples()) out.push_back(amp * q);
  return SampledPulse(pulse.t_start() * scaling.T0, pulse.step() * scaling.T0, std::move(out));
}

}  // namespace nftser
