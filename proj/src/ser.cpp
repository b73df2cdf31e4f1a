#include "nftser/ser.hpp"

#include "nftser/analysis.hpp"
#include "nftser/darboux.hpp"

#include <algorithm>
#include <cmath>

namespace nftser {
namespace {

bool too_close(const std::vector<SpectralEntry>& entries, Complex lambda) {
  return std::any_of(entries.begin(), entries.end(), [&](const SpectralEntry& e) {
    return std::abs(e.eigenvalue - lambda) < 1e-9 * (1.0 + std::abs(lambda));
  });
}

// Smallest positive Im among values[from..]; 0 when none. Guesses off the
// upper half plane fail refinement and must not collapse the threshold.
double min_im(const std::vector<Complex>& values, std::size_t from) {
  double out = 0.0;
  for (std::size_t k = from; k < values.size(); ++k) {
    const double im = values[k].imag();
    if (im > 0.0 && (out == 0.0 || im < out)) out = im;
  }
  return out;
}

}  // namespace

void SerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::invalid_argument, "SerConfig: epsilon in (0,1)");
  if (!(p_fraction > 0.0 && p_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "SerConfig: p_fraction in (0,1)");
  }
  newton.validate();
}

std::vector<double> SerReport::durations() const {
  std::vector<double> out;
  for (auto it = iterations.rbegin(); it != iterations.rend(); ++it) out.push_back(it->window.duration());
  return out;
}

SampledPulse truncate(const SampledPulse& pulse, double threshold) {
  return truncate_to_window(pulse, effective_support(pulse, threshold));
}

SampledPulse truncate_to_window(const SampledPulse& pulse, const SupportWindow& window) {
  const double h = pulse.step();
  const double lo = (window.t_minus - pulse.t_start()) / h;
  const double hi = (window.t_plus - pulse.t_start()) / h;
  const auto first = static_cast<long long>(std::ceil(lo - 0.5));
  const auto last = static_cast<long long>(std::floor(hi + 0.5));
  const long long i0 = std::max<long long>(first, 0);
  const long long i1 = std::min<long long>(last, static_cast<long long>(pulse.size()) - 1);
  if (i1 - i0 + 1 < 2) throw Error(ErrorCode::invalid_argument, "truncate: window keeps fewer than two samples");
  const auto s = pulse.samples();
  return SampledPulse(pulse.time(static_cast<std::size_t>(i0)), h,
                      std::vector<Complex>(s.begin() + i0, s.begin() + i1 + 1));
}

bool energy_validation(double e_before, double e_after, Complex lambda, double tol) {
  const double expected = 4.0 * lambda.imag();
  return std::abs((e_before - e_after) - expected) <= tol * expected;
}

SerReport ser_decompose(const SampledPulse& pulse, const std::vector<Complex>& initial_guesses,
                        const SerConfig& config) {
  config.validate();
  if (initial_guesses.empty()) throw Error(ErrorCode::empty_guess_list, "ser_decompose: no initial guesses");

  std::vector<Complex> order = initial_guesses;
  switch (config.removal_order) {
    case RemovalOrder::ascending_im:
      std::stable_sort(order.begin(), order.end(), ascending_im_less);
      break;
    case RemovalOrder::descending_im:
      std::stable_sort(order.begin(), order.end(), [](const Complex& a, const Complex& b) {
        return ascending_im_less(b, a);
      });
      break;
    case RemovalOrder::explicit_list:
      break;
  }

  const double root_eps = std::sqrt(config.epsilon);
  const auto& schedule = config.window_schedule;
  SampledPulse current = pulse;
  if (!schedule.empty()) {
    current = truncate_to_window(current, schedule.front());
  } else if (config.truncate_input && min_im(order, 0) > 0.0) {
    current = truncate(current, 2.0 * min_im(order, 0) * root_eps);
  }

  SerReport report;
  std::vector<SpectralEntry> recovered;
  const std::size_t N = order.size();
  for (std::size_t i = 0; i < N; ++i) {
    SerIteration it;
    it.n = N - i;
    it.guess = order[i];
    it.window = {current.t_start(), current.t_end()};
    it.samples_used = current.size();
    it.energy_before = pulse_energy(current);
    it.energy_after = it.energy_before;
    try {
      const NewtonResult refined = newton_refine(current, order[i], config.newton);
      it.lambda_hat = refined.lambda;
      it.residual = refined.residual;
      it.newton_iters = refined.iterations;

      const std::size_t p = split_index(current.size(), config.p_fraction);
      RemovalResult removed = remove_eigenvalue(current, refined.lambda, p, config.jost);
      it.b_hat = removed.b_hat;
      it.stitch_error = removed.stitch_error;
      current = std::move(removed.pulse);
      it.ok = true;
      if (!too_close(recovered, it.lambda_hat)) recovered.push_back({it.lambda_hat, it.b_hat});
    } catch (const Error& e) {
      it.error = e.code();
      it.message = e.what();
    }

    // Shrink to the support of the next pulse. After the final removal the
    // threshold falls back to the eigenvalue just removed.
    const bool last = i + 1 == N;
    if (i + 1 < schedule.size()) {
      current = truncate_to_window(current, schedule[i + 1]);
    } else if (schedule.empty()) {
      const double sigma = last ? (it.ok ? it.lambda_hat.imag() : order[i].imag()) : min_im(order, i + 1);
      try {
        current = truncate(current, 2.0 * sigma * root_eps);
      } catch (const Error& e) {
        // Nothing above threshold: the residual is noise floor, keep it whole.
        if (e.code() != ErrorCode::all_below_threshold && e.code() != ErrorCode::invalid_argument) throw;
      }
    }
    it.energy_after = pulse_energy(current);
    if (it.ok && config.validate_energy) {
      it.energy_check_pass = energy_validation(it.energy_before, it.energy_after, it.lambda_hat, config.energy_tol);
    }
    report.iterations.push_back(std::move(it));
  }

  report.residual_energy = pulse_energy(current);
  report.recovered = DiscreteSpectrum(std::move(recovered));
  report.alpha_factor = analysis::complexity_factor(report.durations());
  return report;
}

SerReport ser_decompose(const SampledPulse& pulse, const SerConfig& config) {
  const CollocationConfig fc = config.collocation.value_or(default_collocation(pulse, 0.25, config.epsilon));
  return ser_decompose(pulse, fourier_collocation(pulse, fc), config);
}

DiscreteSpectrum ClassicalReport::recovered() const {
  std::vector<SpectralEntry> out;
  for (const auto& e : estimates) {
    if (e.ok && !too_close(out, e.lambda_hat)) out.push_back({e.lambda_hat, e.b_hat});
  }
  return DiscreteSpectrum(std::move(out));
}

ClassicalReport classical_decompose(const SampledPulse& pulse, const std::vector<Complex>& initial_guesses,
                                    const NewtonConfig& newton, double p_fraction) {
  if (initial_guesses.empty()) throw Error(ErrorCode::empty_guess_list, "classical_decompose: no initial guesses");
  const std::size_t p = split_index(pulse.size(), p_fraction);
  ClassicalReport report;
  for (const Complex& guess : initial_guesses) {
    ClassicalEstimate est;
    est.guess = guess;
    try {
      const NewtonResult refined = newton_refine(pulse, guess, newton);
      est.lambda_hat = refined.lambda;
      est.residual = refined.residual;
      est.newton_iters = refined.iterations;
      est.b_hat = fb_coefficients(pulse, refined.lambda, p).b;
      est.ok = true;
    } catch (const Error& e) {
      est.error = e.code();
    }
    report.estimates.push_back(est);
  }
  return report;
}

}  // namespace nftser
