#include "nftser/bench/io.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nftser::bench {
namespace {

using nlohmann::ordered_json;

ordered_json complex_json(Complex z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() || !j["im"].is_number()) {
    throw Error(ErrorCode::parse_error, "spectrum JSON: expected {\"re\":number,\"im\":number}");
  }
  return {j["re"].get<double>(), j["im"].get<double>()};
}

// JSON has no NaN/inf; those become null.
ordered_json number_json(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

double parse_field(const std::string& field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::parse_error, "pulse CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_pulse_csv(std::ostream& out, const SampledPulse& pulse) {
  out << "t,re,im\n";
  for (std::size_t m = 0; m < pulse.size(); ++m) {
    out << format_double(pulse.time(m)) << ',' << format_double(pulse[m].real()) << ','
        << format_double(pulse[m].imag()) << '\n';
  }
}

SampledPulse read_pulse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, "pulse CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im") throw Error(ErrorCode::parse_error, "pulse CSV: header must be 't,re,im'");

  std::vector<double> times;
  std::vector<Complex> samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3) {
      throw Error(ErrorCode::parse_error, "pulse CSV line " + std::to_string(lineno) + ": expected 3 fields");
    }
    times.push_back(parse_field(fields[0], lineno));
    samples.emplace_back(parse_field(fields[1], lineno), parse_field(fields[2], lineno));
  }
  if (samples.size() < 2) throw Error(ErrorCode::parse_error, "pulse CSV: need at least two samples");

  const double step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(step > 0.0)) throw Error(ErrorCode::parse_error, "pulse CSV: time must be strictly increasing");
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double dt = times[m] - times[m - 1];
    if (!(dt > 0.0)) throw Error(ErrorCode::parse_error, "pulse CSV: time must be strictly increasing");
    if (std::abs(dt - step) > 1e-6 * step) throw Error(ErrorCode::parse_error, "pulse CSV: time step is not constant");
  }
  return SampledPulse(times.front(), step, std::move(samples));
}

void write_spectrum_json(std::ostream& out, const DiscreteSpectrum& spectrum) {
  ordered_json j;
  j["eigenvalues"] = ordered_json::array();
  j["b"] = ordered_json::array();
  for (const auto& e : spectrum) {
    j["eigenvalues"].push_back(complex_json(e.eigenvalue));
    j["b"].push_back(complex_json(e.amplitude));
  }
  out << j.dump(2) << '\n';
}

DiscreteSpectrum read_spectrum_json(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("spectrum JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("eigenvalues") || !j["eigenvalues"].is_array()) {
    throw Error(ErrorCode::parse_error, "spectrum JSON: missing 'eigenvalues' array");
  }
  if (!j.contains("b") || !j["b"].is_array() || j["b"].size() != j["eigenvalues"].size()) {
    throw Error(ErrorCode::parse_error, "spectrum JSON: 'b' must be an array matching 'eigenvalues'");
  }
  std::vector<SpectralEntry> entries;
  for (std::size_t k = 0; k < j["eigenvalues"].size(); ++k) {
    entries.push_back({complex_from(j["eigenvalues"][k]), complex_from(j["b"][k])});
  }
  return DiscreteSpectrum(std::move(entries));
}

void write_ser_report_json(std::ostream& out, const SerReport& report) {
  ordered_json j;
  j["iterations"] = ordered_json::array();
  for (const auto& it : report.iterations) {
    ordered_json r;
    r["n"] = it.n;
    r["guess"] = complex_json(it.guess);
    r["ok"] = it.ok;
    if (it.ok) {
      r["lambda_hat"] = complex_json(it.lambda_hat);
      r["b_hat"] = complex_json(it.b_hat);
    } else {
      r["lambda_hat"] = nullptr;
      r["b_hat"] = nullptr;
    }
    r["newton_iters"] = it.newton_iters;
    r["residual"] = number_json(it.residual);
    r["window"] = ordered_json{{"t_minus", it.window.t_minus}, {"t_plus", it.window.t_plus}};
    r["samples_used"] = it.samples_used;
    r["energy_before"] = number_json(it.energy_before);
    r["energy_after"] = number_json(it.energy_after);
    r["energy_check_pass"] = it.energy_check_pass;
    r["stitch_error"] = number_json(it.stitch_error);
    if (it.error) {
      r["error"] = to_string(*it.error);
      r["message"] = it.message;
    }
    j["iterations"].push_back(std::move(r));
  }
  j["alpha_factor"] = number_json(report.alpha_factor);
  j["residual_energy"] = number_json(report.residual_energy);
  j["recovered"] = ordered_json::array();
  for (const auto& e : report.recovered) {
    j["recovered"].push_back(ordered_json{{"eigenvalue", complex_json(e.eigenvalue)}, {"b", complex_json(e.amplitude)}});
  }
  out << j.dump(2) << '\n';
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,trial,eigenvalue_index,quantity,value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.trial << ',' << r.eigenvalue_index << ',' << r.quantity << ','
        << format_double(r.value) << '\n';
  }
}

void write_results_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  ordered_json j = ordered_json::array();
  for (const auto& r : rows) {
    j.push_back(ordered_json{{"experiment", r.experiment},
                             {"trial", r.trial},
                             {"eigenvalue_index", r.eigenvalue_index},
                             {"quantity", r.quantity},
                             {"value", number_json(r.value)}});
  }
  out << j.dump(2) << '\n';
}

SampledPulse load_pulse(const std::string& path) {
  auto in = open_input(path);
  return read_pulse_csv(in);
}

DiscreteSpectrum load_spectrum(const std::string& path) {
  auto in = open_input(path);
  return read_spectrum_json(in);
}

}  // namespace nftser::bench
