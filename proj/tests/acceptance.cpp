// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails. An optional argument selects a
// single criterion by name.

#include "oracles.hpp"

#include "nftser/analysis.hpp"
#include "nftser/bench/experiments.hpp"
#include "nftser/darboux.hpp"
#include "nftser/eigenfinder.hpp"
#include "nftser/scattering.hpp"
#include "nftser/ser.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace nftser;
using namespace std::complex_literals;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

struct Criterion {
  const char* name;
  double budget_s;  // <= 0: no runtime limit
  std::function<void(Outcome&)> run;
};

const char* const kFamilies[] = {"a", "b", "c"};

double total_im(const std::vector<Complex>& eig) {
  double s = 0.0;
  for (auto l : eig) s += l.imag();
  return s;
}

// Least-squares slope of ln|q| over the outer 20% of the effective support.
double tail_slope(const SampledPulse& p, const SupportWindow& w, analysis::TailSide side) {
  const double width = 0.2 * w.duration();
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double t = p.time(m);
    const bool in = side == analysis::TailSide::right ? (t >= w.t_plus - width && t <= w.t_plus)
                                                      : (t <= w.t_minus + width && t >= w.t_minus);
    if (!in) continue;
    const double y = std::log(std::abs(p[m]));
    n += 1;
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void roundtrip(Outcome& o) {
  bench::ExperimentConfig cfg;
  cfg.experiment = bench::ExperimentKind::roundtrip;
  cfg.trials = 100;
  cfg.samples = 4096;
  const auto r = bench::run_roundtrip_experiment(cfg);
  o.detail << "trials=" << r.trials << " failures=" << r.failures << " max|dlambda|=" << r.max_lambda_error
           << " max|dphi|=" << r.max_phase_error;
  o.require(r.failures == 0, "every trial decoded");
  o.require(r.max_lambda_error < 1e-6, "|dlambda| < 1e-6");
  o.require(r.max_phase_error < 1e-3, "|dphi| < 1e-3");
}

void blaschke(Outcome& o) {
  const auto full = oracle::fig2_spectrum().sorted_ascending_im();
  double worst = 0.0, min_order = 1e300;
  for (std::size_t N = 1; N <= 5; ++N) {
    const DiscreteSpectrum s(std::vector<SpectralEntry>(full.begin(), full.begin() + static_cast<long>(N)));
    const double T = analysis::duration_estimate(s, 2e-4);
    auto max_err = [&](double h) {
      const auto p = synthesize(s, synthesis_grid_with_step(s, h, 1e-14));
      double err = 0.0;
      for (int i = 0; i < 64; ++i) {
        const double l = -4.0 + 8.0 * i / 63.0;
        err = std::max(err, std::abs(spectral_coefficients(p, l).a - oracle::blaschke(l, s.eigenvalues())));
      }
      return err;
    };
    const double coarse = max_err(T / 2048), fine = max_err(T / 4096);
    worst = std::max(worst, fine);
    min_order = std::min(min_order, std::log2(coarse / fine));
  }
  o.detail << "max error at T/4096=" << worst << " min order=" << min_order;
  o.require(worst < 1e-3, "max error < 1e-3");
  o.require(min_order >= 1.8, "order >= 1.8");
}

void complexity(Outcome& o) {
  const double expected[] = {0.3, 0.62, 0.46};
  for (int f = 0; f < 3; ++f) {
    bench::ExperimentConfig cfg;
    cfg.spectrum_family = kFamilies[f];
    const auto r = bench::run_duration_experiment(cfg);
    o.detail << kFamilies[f] << ":alpha=" << r.alpha << " ";
    o.require(std::abs(r.alpha - expected[f]) <= 0.05, std::string("family ") + kFamilies[f]);
  }
}

void energy(Outcome& o) {
  for (const char* family : kFamilies) {
    const auto eig = bench::family_eigenvalues(family);
    const auto s = bench::alternating_spectrum(eig);
    const auto p = synthesize(s, synthesis_grid(s, 4096));
    const double E = pulse_energy(p), expected = 4.0 * total_im(eig);
    const auto report = ser_decompose(p, eig);
    int passed = 0;
    for (const auto& it : report.iterations) passed += it.ok && it.energy_check_pass;
    o.detail << family << ":E/4sum=" << E / expected << " passed=" << passed << "/" << eig.size() << " ";
    o.require(passed == static_cast<int>(eig.size()), std::string("energy check, family ") + family);
    o.require(std::abs(E / expected - 1.0) < 5e-3, std::string("total energy, family ") + family);
  }
}

void removal(Outcome& o) {
  const auto s = oracle::fig2_spectrum();
  const double T = analysis::duration_estimate(s, 2e-4);
  const auto p = synthesize(s, synthesis_grid_with_step(s, T / 4096));
  const std::size_t mid = split_index(p.size());
  const Complex ln = newton_refine(p, 0.5i).lambda;
  const auto r = remove_eigenvalue(p, ln, mid);
  double law = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double l = -4.0 + 8.0 * i / 63.0;
    const Complex before = spectral_coefficients(p, l).a;
    const Complex after = spectral_coefficients(r.pulse, l).a;
    law = std::max(law, std::abs(after * (l - ln) / (l - std::conj(ln)) - before));
  }
  double shift = 0.0;
  for (Complex l : {1.0i, 1.5i, 2.0i, 2.5i}) {
    const Complex b0 = fb_coefficients(p, newton_refine(p, l).lambda, mid).b;
    const Complex b1 = fb_coefficients(r.pulse, newton_refine(r.pulse, l).lambda, mid).b;
    shift = std::max(shift, std::abs(b1 - b0) / std::abs(b0));
  }
  o.detail << "max law error=" << law << " max relative b shift=" << shift;
  o.require(law < 1e-3, "spectral law within 1e-3");
  o.require(shift < 1e-4, "b shift < 1e-4");
}

void separation(Outcome& o) {
  bench::ExperimentConfig cfg;
  cfg.experiment = bench::ExperimentKind::separation;
  const auto r = bench::run_separation_experiment(cfg, {1e-4i, 1e-6i, 1e-8i});
  double worst = 0.0;
  for (const auto& c : r.cases) {
    worst = std::max(worst, std::abs(c.measured_plus / c.predicted_plus - 1.0));
    worst = std::max(worst, std::abs(c.measured_minus / c.predicted_minus - 1.0));
  }
  const double slope_err = std::abs(r.slope / r.predicted_slope - 1.0);
  o.detail << "max position error=" << worst << " slope=" << r.slope << " (1/sigma=" << r.predicted_slope << ")";
  o.require(worst < 0.05, "peak positions within 5%");
  o.require(slope_err < 0.05, "slope within 5%");
}

void tails(Outcome& o) {
  for (const char* family : kFamilies) {
    const auto s = bench::alternating_spectrum(bench::family_eigenvalues(family));
    const auto p = synthesize(s, synthesis_grid(s, 4096));
    const double sigma = s.smallest_im().eigenvalue.imag();
    const auto w = effective_support(p, 2.0 * sigma * std::sqrt(2e-4));
    double worst = 0.0;
    for (auto side : {analysis::TailSide::left, analysis::TailSide::right}) {
      const double expected = side == analysis::TailSide::right ? -2.0 * sigma : 2.0 * sigma;
      worst = std::max(worst, std::abs(tail_slope(p, w, side) / expected - 1.0));
    }
    o.detail << family << ":slope error=" << worst << " ";
    o.require(worst < 0.02, std::string("family ") + family + " within 2%");
  }
}

void noise_parity(Outcome& o) {
  bench::ExperimentConfig cfg;
  cfg.experiment = bench::ExperimentKind::snr_sweep;
  cfg.trials = 500;
  cfg.snr_grid_db = {10, 15, 20, 25, 30, 35};
  const auto r = bench::run_snr_experiment(cfg);
  const std::size_t N = r.points.front().ser.variance.size();
  bool monotone = true, parity = true;
  double lo = 1e300, hi = 0.0;
  int excluded_20 = 0, attempted_20 = 0;
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      monotone = monotone && r.points[i].ser.variance[k] < r.points[i - 1].ser.variance[k];
      monotone = monotone && r.points[i].classical.variance[k] < r.points[i - 1].classical.variance[k];
    }
  }
  for (const auto& pt : r.points) {
    if (pt.snr_db < 20.0) continue;
    excluded_20 += pt.ser.total_excluded() + pt.classical.total_excluded();
    attempted_20 += pt.ser.estimates + pt.classical.estimates;
    for (std::size_t k = 0; k < N; ++k) {
      const double ratio = pt.ser.variance[k] / pt.classical.variance[k];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      parity = parity && ratio >= 0.5 && ratio <= 2.0;
    }
  }
  o.detail << "ratio range (SNR>=20)=[" << lo << "," << hi << "]"
           << " exclusions (SNR>=20)=" << excluded_20 << "/" << attempted_20;
  o.require(monotone, "variance monotone decreasing");
  o.require(parity, "ratio in [0.5, 2]");
}

void truncation(Outcome& o) {
  bench::ExperimentConfig cfg;
  cfg.experiment = bench::ExperimentKind::truncation;
  cfg.trials = 500;
  cfg.snr_grid_db = {30.0};
  const auto r = bench::run_truncation_experiment(cfg);
  const auto& t1 = r.classical_by_window.front();
  double min_gain = 1e300, max_ser_over_full = 0.0;
  for (std::size_t k = 1; k < r.ser.variance.size(); ++k) min_gain = std::min(min_gain, t1.variance[k] / r.ser.variance[k]);
  for (std::size_t k = 0; k < r.ser.variance.size(); ++k)
    max_ser_over_full = std::max(max_ser_over_full, r.ser.variance[k] / r.full.variance[k]);
  o.detail << "min classical(T1)/SER for lambda_2..5=" << min_gain << " max SER/full=" << max_ser_over_full;
  o.require(min_gain >= 10.0, "classical on T1 >= 10x SER");
  o.require(max_ser_over_full <= 2.0, "SER within 2x of full classical");
}

void eigenfinder(Outcome& o) {
  auto two_sech = [](double h) {
    const auto M = static_cast<std::size_t>(48.0 / h) + 1;
    return oracle::sample([](double t) { return Complex(2.0 / std::cosh(t)); }, -24.0, h, M);
  };
  const auto coarse = two_sech(48.0 / 2048);
  const auto cand = fourier_collocation(coarse, default_collocation(coarse));
  const Complex truth[] = {0.5i, 1.5i};
  o.detail << "candidates=" << cand.size();
  o.require(cand.size() == 2, "two candidates");
  if (cand.size() != 2) return;
  const auto fine = two_sech(1e-4);
  for (int k = 0; k < 2; ++k) {
    const double pre = std::abs(cand[k] - truth[k]);
    const auto r = newton_refine(fine, cand[k]);
    const double post = std::abs(r.lambda - truth[k]);
    o.detail << " pre=" << pre << " post=" << post << " iters=" << r.iterations;
    o.require(pre < 1e-2, "collocation within 1e-2");
    o.require(post < 1e-8 && r.iterations <= 10, "Newton to 1e-8 in <= 10 iterations");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"roundtrip", 120.0, roundtrip},     {"blaschke", 0.0, blaschke},     {"complexity", 60.0, complexity},
      {"energy", 0.0, energy},             {"removal", 0.0, removal},       {"separation", 60.0, separation},
      {"tails", 0.0, tails},               {"noise_parity", 900.0, noise_parity},
      {"truncation", 600.0, truncation},   {"eigenfinder", 0.0, eigenfinder},
  };
  const std::string filter = argc > 1 ? argv[1] : "";
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!filter.empty() && filter != c.name) continue;
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.detail << " runtime=" << secs << "s";
    if (c.budget_s > 0.0) o.require(secs < c.budget_s, "runtime budget " + std::to_string(static_cast<int>(c.budget_s)) + "s");
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion: " << filter << "\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
