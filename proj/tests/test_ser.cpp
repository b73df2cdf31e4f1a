#include "doctest.h"
#include "oracles.hpp"

#include "nftser/analysis.hpp"
#include "nftser/bench/experiments.hpp"
#include "nftser/darboux.hpp"
#include "nftser/ser.hpp"

using namespace nftser;
using namespace std::complex_literals;

namespace {

SampledPulse synth(const DiscreteSpectrum& s, std::size_t samples = 4096) {
  return synthesize(s, synthesis_grid(s, samples));
}

const SpectralEntry& truth_for(const DiscreteSpectrum& s, Complex estimate) {
  const SpectralEntry* best = &s[0];
  for (const auto& e : s) {
    if (std::abs(e.eigenvalue - estimate) < std::abs(best->eigenvalue - estimate)) best = &e;
  }
  return *best;
}

}  // namespace

TEST_SUITE("ser") {
  TEST_CASE("energy_validation") {
    CHECK(energy_validation(30.0, 28.0, 0.5i, 0.01));
    CHECK_FALSE(energy_validation(30.0, 29.0, 0.5i, 0.01));
    CHECK(energy_validation(30.0, 28.0, 0.5i, 0.0));
  }

  TEST_CASE("SerConfig validation and empty guesses") {
    SerConfig c;
    c.epsilon = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c.epsilon = 2e-4;
    c.p_fraction = 1.0;
    CHECK_THROWS_AS(c.validate(), Error);
    const auto p = synth(DiscreteSpectrum({{0.5i, 1.0}}), 256);
    try {
      ser_decompose(p, std::vector<Complex>{});
      FAIL("expected empty_guess_list");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::empty_guess_list);
    }
    CHECK_THROWS_AS(classical_decompose(p, {}), Error);
  }

  TEST_CASE("truncate") {
    const auto p = synth(oracle::fig1_spectrum());
    double min_abs = 1e300;
    for (const auto& q : p.samples()) min_abs = std::min(min_abs, std::abs(q));
    const auto same = truncate(p, 0.5 * min_abs);
    CHECK(same.size() == p.size());
    CHECK(same.t_start() == p.t_start());

    const auto dashed = remove_eigenvalue(p, newton_refine(p, 1.0i).lambda, split_index(p.size())).pulse;
    const auto cut = truncate(dashed, 2.0 * 1.5 * std::sqrt(2e-4));
    CHECK(cut.t_start() > dashed.t_start());
    CHECK(cut.t_end() < dashed.t_end());
    CHECK(cut.step() == dashed.step());
    CHECK(cut[0] == dashed[static_cast<std::size_t>(std::llround((cut.t_start() - dashed.t_start()) / dashed.step()))]);

    CHECK_THROWS_AS(truncate_to_window(p, {0.0, 0.0}), Error);
    try {
      truncate(p, 1e6);
      FAIL("expected all_below_threshold");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::all_below_threshold);
    }
  }

  TEST_CASE("Fig. 2 spectrum round-trips with phase error below 1e-3 rad") {
    const auto s = oracle::fig2_spectrum();
    const double T = analysis::duration_estimate(s, 2e-4);
    const auto p = synthesize(s, synthesis_grid_with_step(s, T / 4096));
    const auto report = ser_decompose(p, s.eigenvalues());
    REQUIRE(report.iterations.size() == 5);
    for (const auto& it : report.iterations) {
      REQUIRE(it.ok);
      const auto& truth = truth_for(s, it.lambda_hat);
      CHECK(std::abs(it.lambda_hat - truth.eigenvalue) < 1e-2);
      CHECK(std::abs(std::arg(it.b_hat / truth.amplitude)) < 1e-3);
      CHECK(it.energy_check_pass);
    }
    // Ascending-Im order.
    for (std::size_t i = 1; i < 5; ++i) {
      CHECK(report.iterations[i].lambda_hat.imag() > report.iterations[i - 1].lambda_hat.imag());
    }
    CHECK(report.recovered.size() == 5);

    const auto classical = classical_decompose(p, s.eigenvalues());
    for (const auto& est : classical.estimates) {
      REQUIRE(est.ok);
      CHECK(std::abs(std::arg(est.b_hat / truth_for(s, est.lambda_hat).amplitude)) < 1e-3);
    }
  }

  TEST_CASE("collocation supplies the guesses when none are given") {
    const auto s = oracle::fig2_spectrum();
    const auto p = synth(s, 2048);
    SerConfig cfg;
    cfg.collocation = default_collocation(p, 0.5);
    const auto report = ser_decompose(p, cfg);
    CHECK(report.iterations.size() == 5);
    for (const auto& it : report.iterations) {
      CHECK(it.ok);
      CHECK(std::abs(std::arg(it.b_hat / truth_for(s, it.lambda_hat).amplitude)) < 1e-2);
    }
  }

  TEST_CASE("1-soliton: one iteration, no residual") {
    const auto p = synth(DiscreteSpectrum({{0.5i, 2.1}}));
    const auto report = ser_decompose(p, {0.48i});
    REQUIRE(report.iterations.size() == 1);
    CHECK(report.iterations[0].ok);
    CHECK(report.residual_energy < 0.01 * pulse_energy(p));
    CHECK(report.alpha_factor == doctest::Approx(1.0));
  }

  TEST_CASE("Fig. 3 spectra: nesting, alpha consistency, energy ledger, sample counts") {
    for (std::string family : {"a", "b", "c"}) {
      CAPTURE(family);
      const auto eig = bench::family_eigenvalues(family);
      const auto s = bench::alternating_spectrum(eig);
      const auto p = synth(s);
      CHECK(pulse_energy(p) == doctest::Approx(4.0 * [&] {
              double t = 0;
              for (auto l : eig) t += l.imag();
              return t;
            }()).epsilon(5e-3));
      const auto report = ser_decompose(p, eig);
      REQUIRE(report.iterations.size() == eig.size());
      double sum = 0.0;
      for (std::size_t i = 0; i < report.iterations.size(); ++i) {
        const auto& it = report.iterations[i];
        CHECK(it.ok);
        CHECK(it.energy_check_pass);
        CHECK(std::abs(std::arg(it.b_hat / truth_for(s, it.lambda_hat).amplitude)) < 1e-3);
        sum += it.window.duration();
        if (i > 0) {
          const auto& prev = report.iterations[i - 1];
          CHECK(prev.window.contains(it.window));
          CHECK(it.samples_used <= prev.samples_used);
        }
      }
      const double T_N = report.iterations.front().window.duration();
      CHECK(report.alpha_factor == doctest::Approx(sum / (static_cast<double>(eig.size()) * T_N)).epsilon(1e-12));
    }
  }

  TEST_CASE("alpha for the Fig. 3 (a) set") {
    const auto eig = bench::family_eigenvalues("a");
    const auto report = ser_decompose(synth(bench::alternating_spectrum(eig)), eig);
    CHECK(std::abs(report.alpha_factor - 0.3) < 0.05);
  }

  TEST_CASE("removal orders") {
    const auto s = oracle::fig1_spectrum();
    const auto p = synth(s);
    SerConfig cfg;
    cfg.removal_order = RemovalOrder::descending_im;
    const auto desc = ser_decompose(p, s.eigenvalues(), cfg);
    CHECK(desc.iterations.front().guess == 2.0i);
    cfg.removal_order = RemovalOrder::explicit_list;
    const auto expl = ser_decompose(p, {1.5i, 1.0i, 2.0i}, cfg);
    CHECK(expl.iterations.front().guess == 1.5i);
    for (const auto* r : {&desc, &expl}) {
      CHECK(r->recovered.size() == 3);
      for (const auto& it : r->iterations) {
        CHECK(it.ok);
        CHECK(std::abs(it.b_hat - truth_for(s, it.lambda_hat).amplitude) < 5e-3);
      }
    }
  }

  TEST_CASE("failed refinement is recorded and the loop continues") {
    const auto s = oracle::fig1_spectrum();
    const auto p = synth(s);
    SerConfig cfg;
    cfg.removal_order = RemovalOrder::explicit_list;
    const auto report = ser_decompose(p, {1.0i, 0.5, 1.5i, 2.0i}, cfg);
    REQUIRE(report.iterations.size() == 4);
    CHECK_FALSE(report.iterations[1].ok);
    CHECK(report.iterations[1].error == ErrorCode::left_half_plane);
    CHECK(report.iterations[0].ok);
    CHECK(report.iterations[2].ok);
    CHECK(report.iterations[3].ok);
    CHECK(report.recovered.size() == 3);
  }

  TEST_CASE("classical on the zero pulse fails every refinement") {
    const auto z = SampledPulse::zeros({-5.0, 0.05, 201});
    const auto r = classical_decompose(z, {0.5i, 1.0i});
    for (const auto& e : r.estimates) {
      CHECK_FALSE(e.ok);
      CHECK(e.error.has_value());
    }
    CHECK(r.recovered().empty());
  }

  TEST_CASE("window schedule replaces threshold truncation") {
    const auto eig = bench::family_eigenvalues("c");
    const auto p = synth(bench::alternating_spectrum(eig), 2048);
    const auto ref = ser_decompose(p, eig);
    SerConfig cfg;
    for (const auto& it : ref.iterations) cfg.window_schedule.push_back(it.window);
    const auto again = ser_decompose(p, eig, cfg);
    for (std::size_t i = 0; i < ref.iterations.size(); ++i) {
      CHECK(again.iterations[i].samples_used == ref.iterations[i].samples_used);
      CHECK(std::abs(again.iterations[i].b_hat - ref.iterations[i].b_hat) < 1e-12);
    }
  }
}
