#include "doctest.h"
#include "oracles.hpp"

#include "nftser/bench/experiments.hpp"
#include "nftser/bench/io.hpp"
#include "nftser/bench/signal.hpp"
#include "nftser/darboux.hpp"

#include <cmath>
#include <sstream>

using namespace nftser;
using namespace nftser::bench;
using namespace std::complex_literals;

namespace {

SampledPulse sech_pulse(double sigma, double L, std::size_t M) {
  const double h = 2.0 * L / static_cast<double>(M);
  return oracle::sample([sigma](double t) { return Complex(1.0 / std::cosh(2.0 * sigma * t)); }, -L, h, M);
}

// Fraction of noise energy inside |f| <= B/2, via an independent plain DFT.
double in_band_fraction(const std::vector<Complex>& x, double h, double B) {
  const std::size_t M = x.size();
  double inside = 0.0, total = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    Complex X = 0.0;
    for (std::size_t m = 0; m < M; ++m) X += x[m] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * m % M) / double(M));
    const double f = (k <= M / 2 ? double(k) : double(k) - double(M)) / (double(M) * h);
    total += std::norm(X);
    if (std::abs(f) <= B / 2) inside += std::norm(X);
  }
  return inside / total;
}

}  // namespace

TEST_SUITE("bench-cli") {
  TEST_CASE("bandwidth of a sech pulse matches the analytic energy spectrum") {
    const auto p = sech_pulse(0.5, 40.0, 4096);
    const double expected = oracle::sech_bandwidth(0.5, 0.9999);
    CHECK(measure_bandwidth(p, 0.9999) == doctest::Approx(expected).epsilon(0.01));
    CHECK(measure_bandwidth(p, 0.99) == doctest::Approx(oracle::sech_bandwidth(0.5, 0.99)).epsilon(0.02));
  }

  TEST_CASE("bandwidth: zero padding in time does not change it, and it grows with the fraction") {
    const auto p = sech_pulse(0.5, 40.0, 4096);
    std::vector<Complex> padded(8192, 0.0);
    for (std::size_t m = 0; m < p.size(); ++m) padded[2048 + m] = p[m];
    const SampledPulse wide(p.t_start() - 2048 * p.step(), p.step(), std::move(padded));
    CHECK(measure_bandwidth(wide, 0.9999) == doctest::Approx(measure_bandwidth(p, 0.9999)).epsilon(0.01));
    CHECK(measure_bandwidth(p, 0.9) < measure_bandwidth(p, 0.99));
    CHECK(measure_bandwidth(p, 0.99) < measure_bandwidth(p, 0.9999));
    CHECK_THROWS_AS(measure_bandwidth(p, 0.0), Error);
    CHECK_THROWS_AS(measure_bandwidth(p, 1.5), Error);
  }

  TEST_CASE("awgn: infinite SNR and determinism") {
    const auto p = sech_pulse(0.5, 20.0, 512);
    const auto same = add_awgn(p, std::numeric_limits<double>::infinity(), 1.0, 3);
    for (std::size_t m = 0; m < p.size(); ++m) CHECK(same[m] == p[m]);
    const auto n1 = add_awgn(p, 20.0, 1.0, 42);
    const auto n2 = add_awgn(p, 20.0, 1.0, 42);
    const auto n3 = add_awgn(p, 20.0, 1.0, 43);
    bool differ = false;
    for (std::size_t m = 0; m < p.size(); ++m) {
      CHECK(n1[m] == n2[m]);
      differ = differ || n1[m] != n3[m];
    }
    CHECK(differ);
    CHECK(substream_seed(1, 2, 3) != substream_seed(1, 2, 4));
    CHECK(substream_seed(1, 2, 3) != substream_seed(1, 3, 3));
    CHECK(substream_seed(1, 2, 3) == substream_seed(1, 2, 3));
  }

  TEST_CASE("awgn: in-band noise power over signal power equals 1/SNR") {
    const auto p = sech_pulse(0.5, 16.0, 256);
    const double h = p.step();
    const double B = 0.25 / h;  // f_s / 4
    const double snr_db = 15.0;
    const double signal_power = pulse_energy(p) / (static_cast<double>(p.size()) * h);
    double acc = 0.0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
      const auto noisy = add_awgn(p, snr_db, B, substream_seed(9, 0, i));
      double power = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) power += std::norm(noisy[m] - p[m]);
      acc += 0.25 * power / static_cast<double>(p.size());  // white: in-band share is B / f_s
    }
    CHECK(acc / trials / signal_power == doctest::Approx(std::pow(10.0, -snr_db / 10.0)).epsilon(0.02));

    // Whiteness of a single realization.
    const auto noisy = add_awgn(p, snr_db, B, 77);
    std::vector<Complex> n(p.size());
    for (std::size_t m = 0; m < p.size(); ++m) n[m] = noisy[m] - p[m];
    CHECK(in_band_fraction(n, h, B) == doctest::Approx(0.25).epsilon(0.2));
  }

  TEST_CASE("circular variance") {
    CHECK(circular_variance({0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    // Small errors: approximately the linear variance about the mean.
    const std::vector<double> e{0.01, -0.01, 0.02, -0.02};
    CHECK(circular_variance(e) == doctest::Approx(0.00025).epsilon(0.01));
    // Invariant to 2 pi wrapping.
    const std::vector<double> w{0.01 + 2 * std::numbers::pi, -0.01, 0.02, -0.02 - 2 * std::numbers::pi};
    CHECK(circular_variance(w) == doctest::Approx(circular_variance(e)).epsilon(1e-9));
  }

  TEST_CASE("families and the alternating spectrum") {
    const auto c = family_eigenvalues("c");
    REQUIRE(c.size() == 5);
    CHECK(c.front() == 2.5i);
    CHECK(c.back() == 0.5i);
    const auto s = alternating_spectrum(c);
    CHECK(s[0].amplitude == -1.0);
    CHECK(s[1].amplitude == 1.0);
    CHECK_THROWS_AS(family_eigenvalues("z"), Error);
    ExperimentConfig cfg;
    cfg.spectrum_family = "file";
    CHECK_THROWS_AS(config_eigenvalues(cfg), Error);
  }

  TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.trials = 1;
    cfg.oversampling = 0.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.oversampling = 4.0;
    cfg.bandwidth_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("pulse CSV round trip and parse errors") {
    const auto p = synthesize(oracle::fig1_spectrum(), synthesis_grid(oracle::fig1_spectrum(), 256));
    std::stringstream ss;
    write_pulse_csv(ss, p);
    const auto back = read_pulse_csv(ss);
    REQUIRE(back.size() == p.size());
    CHECK(back.step() == doctest::Approx(p.step()).epsilon(1e-12));
    for (std::size_t m = 0; m < p.size(); ++m) CHECK(back[m] == p[m]);

    auto expect_parse_error = [](const std::string& text) {
      std::istringstream in(text);
      try {
        read_pulse_csv(in);
        FAIL("expected parse_error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
      }
    };
    expect_parse_error("t,re,im\n0,1,0\n0.1,abc,0\n");
    expect_parse_error("t,re,im\n0,1,0\n0,1,0\n");
    expect_parse_error("t,re,im\n0,1,0\n0.1,1,0\n0.3,1,0\n");
    expect_parse_error("");
  }

  TEST_CASE("spectrum JSON round trip") {
    const auto s = oracle::fig2_spectrum();
    std::stringstream ss;
    write_spectrum_json(ss, s);
    const auto back = read_spectrum_json(ss);
    REQUIRE(back.size() == s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(back[k].eigenvalue == s[k].eigenvalue);
      CHECK(back[k].amplitude == s[k].amplitude);
    }
    std::istringstream bad(R"({"eigenvalues":[{"re":0,"im":-1}],"b":[{"re":1,"im":0}]})");
    CHECK_THROWS_AS(read_spectrum_json(bad), Error);
    std::istringstream garbage("{not json");
    CHECK_THROWS_AS(read_spectrum_json(garbage), Error);
  }

  TEST_CASE("format_double round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  }

  TEST_CASE("experiments are deterministic for a fixed seed and thread count independent") {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::snr_sweep;
    cfg.trials = 4;
    cfg.snr_grid_db = {25.0};
    cfg.samples = 1024;
    cfg.threads = 1;
    const auto r1 = run_experiment(cfg);
    cfg.threads = 3;
    const auto r2 = run_experiment(cfg);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].quantity == r2[i].quantity);
      CHECK(format_double(r1[i].value) == format_double(r2[i].value));
    }
    std::stringstream csv;
    write_results_csv(csv, r1);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "experiment,trial,eigenvalue_index,quantity,value");
  }
}
