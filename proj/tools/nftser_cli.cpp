#include "nftser/analysis.hpp"
#include "nftser/bench/experiments.hpp"
#include "nftser/bench/io.hpp"
#include "nftser/darboux.hpp"
#include "nftser/eigenfinder.hpp"
#include "nftser/ser.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using nftser::Complex;
using nftser::bench::ResultRow;

struct Globals {
  std::uint64_t seed = 1;
  double epsilon = 2e-4;
  std::size_t samples = 4096;
  std::string output;
  std::string format = "csv";
};

// Writes to --output when given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw nftser::Error(nftser::ErrorCode::invalid_argument, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_rows(const Globals& g, const std::vector<ResultRow>& rows) {
  Sink sink(g.output);
  if (g.format == "json") {
    nftser::bench::write_results_json(sink.stream(), rows);
  } else {
    nftser::bench::write_results_csv(sink.stream(), rows);
  }
}

Complex parse_complex(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re >> comma >> im) || comma != ',' || !ss.eof()) {
    throw CLI::ValidationError("complex value", "expected 're,im', got '" + text + "'");
  }
  return {re, im};
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<Complex> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

int run_synthesize(const Globals& g, const std::string& spectrum_path, double padding) {
  const auto spectrum = nftser::bench::load_spectrum(spectrum_path);
  const auto grid = nftser::synthesis_grid(spectrum, g.samples, g.epsilon, padding);
  const auto pulse = nftser::synthesize(spectrum, grid, {g.epsilon, true});
  Sink sink(g.output);
  nftser::bench::write_pulse_csv(sink.stream(), pulse);
  return 0;
}

int run_nft(const Globals& g, const std::string& pulse_path, const std::vector<std::string>& lambdas) {
  const auto pulse = nftser::bench::load_pulse(pulse_path);
  std::vector<ResultRow> rows;
  if (!lambdas.empty()) {
    // Scattering coefficients at the requested points.
    const auto points = parse_complex_list(lambdas);
    const std::size_t p = nftser::split_index(pulse.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int trial = static_cast<int>(i);
      const auto ab = nftser::spectral_coefficients(pulse, points[i]);
      rows.push_back({"nft", trial, 0, "lambda_re", points[i].real()});
      rows.push_back({"nft", trial, 0, "lambda_im", points[i].imag()});
      rows.push_back({"nft", trial, 0, "a_re", ab.a.real()});
      rows.push_back({"nft", trial, 0, "a_im", ab.a.imag()});
      const auto b = points[i].imag() > 0.0 ? nftser::fb_coefficients(pulse, points[i], p).b : ab.b;
      rows.push_back({"nft", trial, 0, "b_re", b.real()});
      rows.push_back({"nft", trial, 0, "b_im", b.imag()});
    }
    emit_rows(g, rows);
    return 0;
  }
  // Discrete spectrum: collocation guesses refined on the full pulse.
  const auto guesses = nftser::fourier_collocation(pulse, nftser::default_collocation(pulse, 0.25, g.epsilon));
  const auto spectrum = nftser::classical_decompose(pulse, guesses).recovered();
  Sink sink(g.output);
  if (g.format == "json") {
    nftser::bench::write_spectrum_json(sink.stream(), spectrum);
  } else {
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const int idx = static_cast<int>(k) + 1;
      rows.push_back({"nft", 0, idx, "lambda_re", spectrum[k].eigenvalue.real()});
      rows.push_back({"nft", 0, idx, "lambda_im", spectrum[k].eigenvalue.imag()});
      rows.push_back({"nft", 0, idx, "b_re", spectrum[k].amplitude.real()});
      rows.push_back({"nft", 0, idx, "b_im", spectrum[k].amplitude.imag()});
    }
    nftser::bench::write_results_csv(sink.stream(), rows);
  }
  return 0;
}

int run_ser(const Globals& g, const std::string& pulse_path, const std::string& guesses_path,
            const std::vector<std::string>& guesses_inline, double p_fraction) {
  const auto pulse = nftser::bench::load_pulse(pulse_path);
  nftser::SerConfig config;
  config.epsilon = g.epsilon;
  config.p_fraction = p_fraction;
  std::vector<Complex> guesses = parse_complex_list(guesses_inline);
  if (!guesses_path.empty()) {
    const auto eig = nftser::bench::load_spectrum(guesses_path).eigenvalues();
    guesses.insert(guesses.end(), eig.begin(), eig.end());
  }
  const auto report = guesses.empty() ? nftser::ser_decompose(pulse, config) : nftser::ser_decompose(pulse, guesses, config);
  Sink sink(g.output);
  if (g.format == "csv") {
    std::vector<ResultRow> rows;
    for (const auto& it : report.iterations) {
      const int n = static_cast<int>(it.n);
      rows.push_back({"ser", 0, n, "lambda_re", it.lambda_hat.real()});
      rows.push_back({"ser", 0, n, "lambda_im", it.lambda_hat.imag()});
      rows.push_back({"ser", 0, n, "b_re", it.b_hat.real()});
      rows.push_back({"ser", 0, n, "b_im", it.b_hat.imag()});
      rows.push_back({"ser", 0, n, "t_minus", it.window.t_minus});
      rows.push_back({"ser", 0, n, "t_plus", it.window.t_plus});
      rows.push_back({"ser", 0, n, "samples_used", static_cast<double>(it.samples_used)});
      rows.push_back({"ser", 0, n, "energy_check_pass", it.energy_check_pass ? 1.0 : 0.0});
      rows.push_back({"ser", 0, n, "ok", it.ok ? 1.0 : 0.0});
    }
    rows.push_back({"ser", 0, 0, "alpha", report.alpha_factor});
    nftser::bench::write_results_csv(sink.stream(), rows);
  } else {
    nftser::bench::write_ser_report_json(sink.stream(), report);
  }
  return 0;
}

int run_analyze(const Globals& g, const std::string& spectrum_path, const std::string& b_added) {
  namespace an = nftser::analysis;
  const auto spectrum = nftser::bench::load_spectrum(spectrum_path);
  std::vector<ResultRow> rows;
  const auto support = an::predicted_support(spectrum, g.epsilon);
  rows.push_back({"analyze", 0, 0, "tail_shift", an::tail_shift(spectrum)});
  rows.push_back({"analyze", 0, 0, "duration_estimate", an::duration_estimate(spectrum, g.epsilon)});
  rows.push_back({"analyze", 0, 0, "support_t_minus", support.t_minus});
  rows.push_back({"analyze", 0, 0, "support_t_plus", support.t_plus});
  const auto staircase = an::duration_staircase(spectrum, g.epsilon);
  for (std::size_t i = 0; i < staircase.size(); ++i) {
    rows.push_back({"analyze", 0, static_cast<int>(i) + 1, "T_n_predicted", staircase[i]});
  }
  rows.push_back({"analyze", 0, 0, "alpha_predicted", an::complexity_factor(staircase)});
  if (spectrum.size() >= 2 && !b_added.empty()) {
    const auto bound = an::delta_bound(spectrum, g.epsilon, parse_complex(b_added));
    rows.push_back({"analyze", 0, 0, "delta_bound_plus", bound.plus});
    rows.push_back({"analyze", 0, 0, "delta_bound_minus", bound.minus});
  }
  emit_rows(g, rows);
  return 0;
}

int run_bench(const Globals& g, const std::string& which, nftser::bench::ExperimentConfig config) {
  using nftser::bench::ExperimentKind;
  config.seed = g.seed;
  config.epsilon = g.epsilon;
  config.samples = g.samples;
  if (which == "fig3") {
    config.experiment = ExperimentKind::duration;
    const auto result = nftser::bench::run_duration_experiment(config);
    if (g.format == "json") {
      emit_rows(g, result.rows());
      return 0;
    }
    Sink sink(g.output);
    auto& out = sink.stream();
    out << "n,T_n,alpha\n";
    for (std::size_t i = result.durations.size(); i-- > 0;) {
      out << i + 1 << ',' << nftser::bench::format_double(result.durations[i]) << ','
          << nftser::bench::format_double(result.alpha) << '\n';
    }
    return 0;
  }
  if (which == "fig4") {
    config.experiment = ExperimentKind::snr_sweep;
    if (config.snr_grid_db.empty()) config.snr_grid_db = {10, 15, 20, 25, 30, 35};
  } else if (which == "fig5") {
    config.experiment = ExperimentKind::truncation;
    if (config.snr_grid_db.empty()) config.snr_grid_db = {30};
  } else if (which == "separation") {
    config.experiment = ExperimentKind::separation;
  } else if (which == "roundtrip") {
    config.experiment = ExperimentKind::roundtrip;
  }
  emit_rows(g, nftser::bench::run_experiment(config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-soliton synthesis and successive eigenvalue removal"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed");
  app.add_option("--epsilon", g.epsilon, "Truncation parameter")->check(CLI::Range(1e-300, 1.0 - 1e-16));
  app.add_option("--samples", g.samples, "Samples per effective duration")->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string spectrum_path, pulse_path, guesses_path, which, b_added;
  std::vector<std::string> lambdas, guesses_inline;
  double padding = 0.2, p_fraction = 0.5;

  auto* synth = app.add_subcommand("synthesize", "Multi-soliton from a spectrum JSON; writes pulse CSV");
  synth->add_option("--spectrum", spectrum_path, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--padding", padding, "Relative padding around the predicted support")->check(CLI::NonNegativeNumber);

  auto* nft = app.add_subcommand("nft", "Forward NFT of a pulse CSV");
  nft->add_option("--pulse", pulse_path, "Pulse CSV")->required()->check(CLI::ExistingFile);
  nft->add_option("--lambda", lambdas, "Evaluation points 're,im' (default: discrete spectrum)");

  auto* ser = app.add_subcommand("ser", "Successive eigenvalue removal on a pulse CSV; writes a report");
  ser->add_option("--pulse", pulse_path, "Pulse CSV")->required()->check(CLI::ExistingFile);
  ser->add_option("--guesses", guesses_path, "Spectrum JSON whose eigenvalues seed the search")->check(CLI::ExistingFile);
  ser->add_option("--guess", guesses_inline, "Initial guess 're,im' (repeatable)");
  ser->add_option("--p-fraction", p_fraction, "Split index fraction")->check(CLI::Range(1e-9, 1.0 - 1e-9));

  auto* analyze = app.add_subcommand("analyze", "Closed-form predictions for a spectrum JSON");
  analyze->add_option("--spectrum", spectrum_path, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--b-added", b_added, "Amplitude 're,im' of an offset eigenvalue; adds the delta bound");

  nftser::bench::ExperimentConfig config;
  std::vector<std::string> eig_inline;
  auto* bench = app.add_subcommand("bench", "Benchmark experiments");
  bench->add_option("experiment", which, "fig3 | fig4 | fig5 | separation | roundtrip")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "separation", "roundtrip"}));
  bench->add_option("--family", config.spectrum_family, "Eigenvalue family")->check(CLI::IsMember({"a", "b", "c", "file"}));
  bench->add_option("--eigenvalue", eig_inline, "Eigenvalue 're,im' for --family file (repeatable)");
  bench->add_option("--trials", config.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  bench->add_option("--snr", config.snr_grid_db, "SNR grid in dB");
  bench->add_option("--oversampling", config.oversampling, "f_s / max bandwidth")->check(CLI::Range(1.0, 1e6));
  bench->add_option("--threads", config.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors 2
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*synth) return run_synthesize(g, spectrum_path, padding);
    if (*nft) return run_nft(g, pulse_path, lambdas);
    if (*ser) return run_ser(g, pulse_path, guesses_path, guesses_inline, p_fraction);
    if (*analyze) return run_analyze(g, spectrum_path, b_added);
    if (*bench) {
      config.eigenvalues = parse_complex_list(eig_inline);
      return run_bench(g, which, config);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const nftser::Error& e) {
    // Numerical and input failures become a structured error row.
    std::cerr << "error: " << e.what() << '\n';
    const std::string label = command == "bench" ? which : command;
    try {
      emit_rows(g, {{label, -1, 0, std::string("error:") + nftser::to_string(e.code()), 0.0}});
    } catch (const nftser::Error&) {
      nftser::bench::write_results_csv(std::cout, {{label, -1, 0, std::string("error:") + nftser::to_string(e.code()), 0.0}});
    }
    return 1;
  }
  return 0;
}
