#include "nftser/bench/experiments.hpp"

#include "nftser/analysis.hpp"
#include "nftser/bench/signal.hpp"
#include "nftser/darboux.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace nftser::bench {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kPhaseStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

// Runs body(i) for i in [0, count) on a small worker pool. Results must be
// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double wrap_phase(double x) { return std::remainder(x, kTwoPi); }

std::vector<double> random_phases(std::uint64_t seed, std::size_t trial, std::size_t count) {
  std::mt19937_64 rng(substream_seed(seed, kPhaseStream, trial));
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  std::vector<double> out(count);
  for (auto& x : out) x = uni(rng);
  return out;
}

DiscreteSpectrum phase_spectrum(const std::vector<Complex>& eigenvalues, const std::vector<double>& phases) {
  std::vector<SpectralEntry> entries;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) entries.push_back({eigenvalues[k], std::polar(1.0, phases[k])});
  return DiscreteSpectrum(std::move(entries));
}

double min_gap(const std::vector<Complex>& eigenvalues) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) gap = std::min(gap, std::abs(eigenvalues[i] - eigenvalues[j]));
  }
  return gap;
}

double smallest_im(const std::vector<Complex>& eigenvalues) {
  double s = eigenvalues.front().imag();
  for (const auto& l : eigenvalues) s = std::min(s, l.imag());
  return s;
}

// For each true eigenvalue, the nearest estimate within `radius`, if any.
std::vector<std::optional<SpectralEntry>> match_estimates(const std::vector<Complex>& truth,
                                                         const std::vector<SpectralEntry>& estimates, double radius) {
  std::vector<std::optional<SpectralEntry>> out(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    double best = radius;
    for (const auto& e : estimates) {
      const double d = std::abs(e.eigenvalue - truth[k]);
      if (d < best) {
        best = d;
        out[k] = e;
      }
    }
  }
  return out;
}

std::vector<SpectralEntry> ser_entries(const SerReport& report) {
  std::vector<SpectralEntry> out;
  for (const auto& it : report.iterations) {
    if (it.ok) out.push_back({it.lambda_hat, it.b_hat});
  }
  return out;
}

std::vector<SpectralEntry> classical_entries(const ClassicalReport& report) {
  std::vector<SpectralEntry> out;
  for (const auto& e : report.estimates) {
    if (e.ok) out.push_back({e.lambda_hat, e.b_hat});
  }
  return out;
}

// Per-eigenvalue phase errors of one decoding; NaN marks an exclusion.
std::vector<double> phase_errors(const DiscreteSpectrum& truth, const std::vector<SpectralEntry>& estimates,
                                 double radius) {
  const auto& eig = truth.eigenvalues();
  const auto& amp = truth.amplitudes();
  const auto matched = match_estimates(eig, estimates, radius);
  std::vector<double> out(eig.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < eig.size(); ++k) {
    if (matched[k] && std::abs(matched[k]->amplitude) > 0.0) {
      out[k] = std::arg(matched[k]->amplitude / amp[k]);
    }
  }
  return out;
}

// Aggregates per-trial phase errors (trial-major) into per-eigenvalue stats.
MethodStats summarize(const std::vector<std::vector<double>>& errors, std::size_t n_eig) {
  MethodStats stats;
  stats.variance.assign(n_eig, std::numeric_limits<double>::quiet_NaN());
  stats.excluded.assign(n_eig, 0);
  for (std::size_t k = 0; k < n_eig; ++k) {
    std::vector<double> values;
    for (const auto& trial : errors) {
      ++stats.estimates;
      if (std::isnan(trial[k])) {
        ++stats.excluded[k];
      } else {
        values.push_back(trial[k]);
      }
    }
    if (!values.empty()) stats.variance[k] = circular_variance(values);
  }
  return stats;
}

void push_stats(std::vector<ResultRow>& rows, const std::string& experiment, const std::string& prefix,
                const MethodStats& stats) {
  for (std::size_t k = 0; k < stats.variance.size(); ++k) {
    const int idx = static_cast<int>(k) + 1;
    rows.push_back({experiment, -1, idx, prefix + "_phase_variance", stats.variance[k]});
    rows.push_back({experiment, -1, idx, prefix + "_excluded", static_cast<double>(stats.excluded[k])});
  }
}

// Noisy-experiment preparation shared by the SNR sweep and the truncation
// study: per-trial clean pulses sampled at oversampling * max bandwidth, and
// the window schedule of a noise-free SER run on each.
struct Trial {
  DiscreteSpectrum spectrum;
  SampledPulse clean = SampledPulse(0.0, 1.0, std::vector<Complex>(2));
  std::vector<SupportWindow> schedule;  // schedule[i] = window of iteration i
  bool ok = false;
};

struct Batch {
  std::vector<Complex> eigenvalues;  // descending Im
  double b_max = 0.0;
  double sampling_rate = 0.0;
  double radius = 0.0;
  std::vector<Trial> trials;
};

Batch prepare_batch(const ExperimentConfig& config) {
  Batch batch;
  batch.eigenvalues = config_eigenvalues(config);
  batch.radius = 0.25 * min_gap(batch.eigenvalues);
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t N = batch.eigenvalues.size();

  std::vector<DiscreteSpectrum> spectra;
  spectra.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) spectra.push_back(phase_spectrum(batch.eigenvalues, random_phases(config.seed, i, N)));

  std::vector<double> bandwidth(trials);
  parallel_for(trials, config.threads, [&](std::size_t i) {
    const TimeGrid fine = synthesis_grid(spectra[i], config.samples, config.epsilon);
    bandwidth[i] = measure_bandwidth(synthesize(spectra[i], fine, {config.epsilon, true}), config.bandwidth_fraction);
  });
  batch.b_max = *std::max_element(bandwidth.begin(), bandwidth.end());
  batch.sampling_rate = config.oversampling * batch.b_max;
  const double h = 1.0 / batch.sampling_rate;
  const double threshold = 2.0 * smallest_im(batch.eigenvalues) * std::sqrt(config.epsilon);

  batch.trials.resize(trials);
  parallel_for(trials, config.threads, [&](std::size_t i) {
    Trial& t = batch.trials[i];
    t.spectrum = spectra[i];
    try {
      const TimeGrid grid = synthesis_grid_with_step(t.spectrum, h, config.epsilon);
      t.clean = truncate(synthesize(t.spectrum, grid, {config.epsilon, true}), threshold);
      SerConfig sc;
      sc.epsilon = config.epsilon;
      const SerReport ref = ser_decompose(t.clean, batch.eigenvalues, sc);
      for (const auto& it : ref.iterations) t.schedule.push_back(it.window);
      t.ok = std::all_of(ref.iterations.begin(), ref.iterations.end(), [](const SerIteration& it) { return it.ok; });
    } catch (const Error&) {
      t.ok = false;
    }
  });
  return batch;
}

std::vector<double> decode_ser(const Trial& trial, const SampledPulse& noisy, const Batch& batch,
                               const ExperimentConfig& config) {
  SerConfig sc;
  sc.epsilon = config.epsilon;
  sc.window_schedule = trial.schedule;
  sc.validate_energy = false;
  try {
    return phase_errors(trial.spectrum, ser_entries(ser_decompose(noisy, batch.eigenvalues, sc)), batch.radius);
  } catch (const Error&) {
    return std::vector<double>(batch.eigenvalues.size(), std::numeric_limits<double>::quiet_NaN());
  }
}

std::vector<double> decode_classical(const Trial& trial, const SampledPulse& pulse, const Batch& batch) {
  try {
    return phase_errors(trial.spectrum, classical_entries(classical_decompose(pulse, batch.eigenvalues)), batch.radius);
  } catch (const Error&) {
    return std::vector<double>(batch.eigenvalues.size(), std::numeric_limits<double>::quiet_NaN());
  }
}

std::vector<double> excluded_trial(std::size_t n) {
  return std::vector<double>(n, std::numeric_limits<double>::quiet_NaN());
}

// Time of the local maximum of |q| at sample i, refined by a parabola.
double refined_peak(const SampledPulse& pulse, std::size_t i) {
  const double y0 = std::abs(pulse[i - 1]);
  const double y1 = std::abs(pulse[i]);
  const double y2 = std::abs(pulse[i + 1]);
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
  return pulse.time(i) + shift * pulse.step();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "ExperimentConfig: trials must be >= 1");
  for (double s : snr_grid_db) {
    if (std::isnan(s) || std::isinf(s)) throw Error(ErrorCode::invalid_argument, "ExperimentConfig: SNR values must be finite");
  }
  if (!(oversampling >= 1.0)) throw Error(ErrorCode::invalid_argument, "ExperimentConfig: oversampling must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::invalid_argument, "ExperimentConfig: epsilon in (0,1)");
  if (samples < 16) throw Error(ErrorCode::invalid_argument, "ExperimentConfig: samples must be >= 16");
  if (!(bandwidth_fraction > 0.0 && bandwidth_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "ExperimentConfig: bandwidth_fraction in (0,1)");
  }
}

std::vector<Complex> family_eigenvalues(std::string_view family) {
  using namespace std::complex_literals;
  if (family == "a") return {9.0i, 7.0i, 5.0i, 3.0i, 0.5i};
  if (family == "b") return {0.58i, 0.56i, 0.54i, 0.52i, 0.5i};
  if (family == "c") return {2.5i, 2.0i, 1.5i, 1.0i, 0.5i};
  throw Error(ErrorCode::invalid_argument, "unknown spectrum family '" + std::string(family) + "'");
}

std::vector<Complex> config_eigenvalues(const ExperimentConfig& config) {
  std::vector<Complex> out;
  if (config.spectrum_family == "file") {
    if (config.eigenvalues.empty()) throw Error(ErrorCode::invalid_argument, "family 'file' needs eigenvalues");
    out = config.eigenvalues;
  } else {
    out = family_eigenvalues(config.spectrum_family);
  }
  std::stable_sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) { return ascending_im_less(b, a); });
  return out;
}

DiscreteSpectrum alternating_spectrum(const std::vector<Complex>& eigenvalues) {
  std::vector<Complex> sorted = eigenvalues;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) { return ascending_im_less(b, a); });
  std::vector<SpectralEntry> entries;
  for (std::size_t k = 0; k < sorted.size(); ++k) entries.push_back({sorted[k], (k % 2 == 0) ? -1.0 : 1.0});
  return DiscreteSpectrum(std::move(entries));
}

double circular_variance(const std::vector<double>& phase_errors) {
  if (phase_errors.empty()) throw Error(ErrorCode::invalid_argument, "circular_variance: no samples");
  Complex sum = 0.0;
  for (double x : phase_errors) sum += std::polar(1.0, x);
  const double R = std::abs(sum) / static_cast<double>(phase_errors.size());
  if (R <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -2.0 * std::log(std::min(R, 1.0)));
}

int MethodStats::total_excluded() const {
  int total = 0;
  for (int e : excluded) total += e;
  return total;
}

std::vector<ResultRow> DurationResult::rows() const {
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    rows.push_back({"duration", 0, n, "T_n", durations[i]});
    rows.push_back({"duration", 0, n, "T_n_predicted", predicted[i]});
  }
  for (const auto& it : report.iterations) {
    const int n = static_cast<int>(it.n);
    rows.push_back({"duration", 0, n, "energy_check_pass", it.energy_check_pass ? 1.0 : 0.0});
    if (!it.ok) rows.push_back({"duration", 0, n, "error", 1.0});
  }
  rows.push_back({"duration", -1, 0, "alpha", alpha});
  rows.push_back({"duration", -1, 0, "alpha_predicted", predicted_alpha});
  return rows;
}

DurationResult run_duration_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto eig = config_eigenvalues(config);
  const DiscreteSpectrum spectrum = alternating_spectrum(eig);
  const TimeGrid grid = synthesis_grid(spectrum, config.samples, config.epsilon);
  const SampledPulse pulse = synthesize(spectrum, grid, {config.epsilon, true});

  SerConfig sc;
  sc.epsilon = config.epsilon;
  DurationResult out;
  out.report = ser_decompose(pulse, eig, sc);
  out.durations = out.report.durations();
  out.alpha = out.report.alpha_factor;
  out.predicted = analysis::duration_staircase(spectrum, config.epsilon);
  out.predicted_alpha = analysis::complexity_factor(out.predicted);
  return out;
}

std::vector<ResultRow> SnrResult::rows() const {
  std::vector<ResultRow> rows;
  rows.push_back({"snr_sweep", -1, 0, "b_max", b_max});
  rows.push_back({"snr_sweep", -1, 0, "sampling_rate", sampling_rate});
  rows.push_back({"snr_sweep", -1, 0, "trials", static_cast<double>(trials)});
  for (const auto& p : points) {
    rows.push_back({"snr_sweep", -1, 0, "snr_db", p.snr_db});
    push_stats(rows, "snr_sweep", "ser", p.ser);
    push_stats(rows, "snr_sweep", "classical", p.classical);
  }
  return rows;
}

SnrResult run_snr_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.snr_grid_db.empty()) throw Error(ErrorCode::invalid_argument, "snr sweep needs at least one SNR value");
  const Batch batch = prepare_batch(config);
  const std::size_t N = batch.eigenvalues.size();
  const std::size_t trials = batch.trials.size();

  SnrResult out;
  out.b_max = batch.b_max;
  out.sampling_rate = batch.sampling_rate;
  out.trials = config.trials;
  for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
    const double snr = config.snr_grid_db[s];
    std::vector<std::vector<double>> ser(trials), classical(trials);
    parallel_for(trials, config.threads, [&](std::size_t i) {
      const Trial& t = batch.trials[i];
      if (!t.ok) {
        ser[i] = classical[i] = excluded_trial(N);
        return;
      }
      const SampledPulse noisy = add_awgn(t.clean, snr, batch.b_max, substream_seed(config.seed, kNoiseStream + s, i));
      ser[i] = decode_ser(t, noisy, batch, config);
      classical[i] = decode_classical(t, noisy, batch);
    });
    out.points.push_back({snr, summarize(ser, N), summarize(classical, N)});
  }
  return out;
}

std::vector<ResultRow> TruncationResult::rows() const {
  std::vector<ResultRow> rows;
  rows.push_back({"truncation", -1, 0, "snr_db", snr_db});
  rows.push_back({"truncation", -1, 0, "b_max", b_max});
  rows.push_back({"truncation", -1, 0, "sampling_rate", sampling_rate});
  rows.push_back({"truncation", -1, 0, "trials", static_cast<double>(trials)});
  for (std::size_t n = 0; n < classical_by_window.size(); ++n) {
    push_stats(rows, "truncation", "classical_T" + std::to_string(n + 1), classical_by_window[n]);
  }
  push_stats(rows, "truncation", "ser", ser);
  push_stats(rows, "truncation", "classical_matched", matched);
  push_stats(rows, "truncation", "classical_full", full);
  return rows;
}

TruncationResult run_truncation_experiment(const ExperimentConfig& config) {
  config.validate();
  const Batch batch = prepare_batch(config);
  const std::size_t N = batch.eigenvalues.size();
  const std::size_t trials = batch.trials.size();
  const double snr = config.snr_grid_db.empty() ? 30.0 : config.snr_grid_db.front();

  // by_window[n][trial]: classical errors on window T^(n+1).
  std::vector<std::vector<std::vector<double>>> by_window(N, std::vector<std::vector<double>>(trials));
  std::vector<std::vector<double>> ser(trials), matched(trials);
  parallel_for(trials, config.threads, [&](std::size_t i) {
    const Trial& t = batch.trials[i];
    if (!t.ok) {
      for (auto& w : by_window) w[i] = excluded_trial(N);
      ser[i] = matched[i] = excluded_trial(N);
      return;
    }
    const SampledPulse noisy = add_awgn(t.clean, snr, batch.b_max, substream_seed(config.seed, kNoiseStream, i));
    for (std::size_t n = 0; n < N; ++n) {
      // Iteration i processes the pulse with N - i eigenvalues left.
      const SupportWindow& w = t.schedule[N - 1 - n];
      try {
        by_window[n][i] = decode_classical(t, truncate_to_window(noisy, w), batch);
      } catch (const Error&) {
        by_window[n][i] = excluded_trial(N);
      }
    }
    ser[i] = decode_ser(t, noisy, batch, config);
    matched[i].resize(N);
    for (std::size_t k = 0; k < N; ++k) matched[i][k] = by_window[k][i][k];
  });

  TruncationResult out;
  out.snr_db = snr;
  out.b_max = batch.b_max;
  out.sampling_rate = batch.sampling_rate;
  out.trials = config.trials;
  for (const auto& w : by_window) out.classical_by_window.push_back(summarize(w, N));
  out.ser = summarize(ser, N);
  out.matched = summarize(matched, N);
  out.full = out.classical_by_window.back();
  return out;
}

std::vector<ResultRow> RoundTripResult::rows() const {
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < lambda_errors.size(); ++i) {
    rows.push_back({"roundtrip", static_cast<int>(i), 0, "max_lambda_error", lambda_errors[i]});
    rows.push_back({"roundtrip", static_cast<int>(i), 0, "max_phase_error", phase_errors[i]});
  }
  rows.push_back({"roundtrip", -1, 0, "max_lambda_error", max_lambda_error});
  rows.push_back({"roundtrip", -1, 0, "max_phase_error", max_phase_error});
  rows.push_back({"roundtrip", -1, 0, "failures", static_cast<double>(failures)});
  return rows;
}

RoundTripResult run_roundtrip_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto eig = config_eigenvalues(config);
  const std::size_t N = eig.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const double radius = 0.25 * min_gap(eig);
  const double inf = std::numeric_limits<double>::infinity();

  RoundTripResult out;
  out.trials = config.trials;
  out.lambda_errors.assign(trials, inf);
  out.phase_errors.assign(trials, inf);
  parallel_for(trials, config.threads, [&](std::size_t i) {
    const DiscreteSpectrum spectrum = phase_spectrum(eig, random_phases(config.seed, i, N));
    try {
      const double h = analysis::duration_estimate(spectrum, config.epsilon) / static_cast<double>(config.samples);
      const SampledPulse pulse = synthesize(spectrum, synthesis_grid_with_step(spectrum, h, config.epsilon),
                                            {config.epsilon, true});
      SerConfig sc;
      sc.epsilon = config.epsilon;
      const SerReport report = ser_decompose(pulse, eig, sc);
      const auto matched = match_estimates(eig, ser_entries(report), radius);
      double dl = 0.0, dp = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        if (!matched[k]) {
          dl = dp = inf;
          break;
        }
        dl = std::max(dl, std::abs(matched[k]->eigenvalue - eig[k]));
        dp = std::max(dp, std::abs(wrap_phase(std::arg(matched[k]->amplitude / spectrum.amplitudes()[k]))));
      }
      out.lambda_errors[i] = dl;
      out.phase_errors[i] = dp;
    } catch (const Error&) {
    }
  });
  for (std::size_t i = 0; i < trials; ++i) {
    if (std::isinf(out.lambda_errors[i])) ++out.failures;
    out.max_lambda_error = std::max(out.max_lambda_error, out.lambda_errors[i]);
    out.max_phase_error = std::max(out.max_phase_error, out.phase_errors[i]);
  }
  return out;
}

DiscreteSpectrum separation_base_spectrum() {
  const std::vector<double> phases{0.24, 4.90, 0.58, 3.98, 0.09};
  return phase_spectrum(family_eigenvalues("c"), phases);
}

std::vector<ResultRow> SeparationResult::rows() const {
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const int trial = static_cast<int>(i);
    rows.push_back({"separation", trial, 0, "delta_abs", std::abs(c.delta)});
    rows.push_back({"separation", trial, 0, "t_plus_predicted", c.predicted_plus});
    rows.push_back({"separation", trial, 0, "t_minus_predicted", c.predicted_minus});
    rows.push_back({"separation", trial, 0, "t_plus_measured", c.measured_plus});
    rows.push_back({"separation", trial, 0, "t_minus_measured", c.measured_minus});
  }
  rows.push_back({"separation", -1, 0, "slope", slope});
  rows.push_back({"separation", -1, 0, "slope_predicted", predicted_slope});
  return rows;
}

SeparationResult run_separation_experiment(const ExperimentConfig& config, const std::vector<Complex>& deltas) {
  config.validate();
  if (deltas.empty()) throw Error(ErrorCode::invalid_argument, "separation needs at least one delta");
  const DiscreteSpectrum base = separation_base_spectrum();
  const auto sorted = base.sorted_descending_im();
  const SpectralEntry last = sorted[sorted.size() - 1];
  const double sigma = last.eigenvalue.imag();
  const Complex b_added = std::polar(1.0, kSeparationAddedPhase);
  const double h = analysis::duration_estimate(base, config.epsilon) / static_cast<double>(config.samples);

  SeparationResult out;
  out.predicted_slope = 1.0 / sigma;
  out.cases.resize(deltas.size());
  parallel_for(deltas.size(), config.threads, [&](std::size_t i) {
    SeparationCase& c = out.cases[i];
    c.delta = deltas[i];
    const auto pred = analysis::separation_predict(base, c.delta, last.amplitude, b_added);
    c.predicted_plus = pred.t_delta_plus;
    c.predicted_minus = pred.t_delta_minus;

    std::vector<SpectralEntry> entries(sorted.begin(), sorted.end());
    entries.push_back({last.eigenvalue + c.delta, b_added});
    const DiscreteSpectrum spectrum(std::move(entries));
    const SampledPulse q = synthesize(spectrum, synthesis_grid_with_step(spectrum, h, config.epsilon),
                                      {config.epsilon, true});

    // Outermost local maxima that reach half the escaping soliton amplitude.
    const double floor = sigma;
    std::size_t first = 0, last_peak = 0;
    for (std::size_t m = 1; m + 1 < q.size(); ++m) {
      const double y = std::abs(q[m]);
      if (y >= floor && y >= std::abs(q[m - 1]) && y > std::abs(q[m + 1])) {
        if (first == 0) first = m;
        last_peak = m;
      }
    }
    if (first == 0) throw Error(ErrorCode::no_candidates, "separation: no soliton peaks found");
    c.measured_minus = -refined_peak(q, first);
    c.measured_plus = refined_peak(q, last_peak);
  });

  // Least-squares slope of t+ + t- against ln(1/|delta|).
  if (out.cases.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(out.cases.size());
    for (const auto& c : out.cases) {
      const double x = -std::log(std::abs(c.delta));
      const double y = c.measured_plus + c.measured_minus;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::duration:
      return run_duration_experiment(config).rows();
    case ExperimentKind::snr_sweep:
      return run_snr_experiment(config).rows();
    case ExperimentKind::truncation:
      return run_truncation_experiment(config).rows();
    case ExperimentKind::roundtrip:
      return run_roundtrip_experiment(config).rows();
    case ExperimentKind::separation: {
      using namespace std::complex_literals;
      return run_separation_experiment(config, {1e-4i, 1e-6i, 1e-8i}).rows();
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown experiment");
}

}  // namespace nftser::bench
