#pragma once

// Benchmark experiments: duration staircase and complexity factor, noisy
// phase-estimation sweeps for SER against the classical per-eigenvalue
// method, truncation sensitivity, noise-free round trips and the separation
// geometry of an offset removal.

#include "nftser/ser.hpp"
#include "nftser/types.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nftser::bench {

enum class ExperimentKind { duration, snr_sweep, truncation, roundtrip, separation };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::duration;
  std::string spectrum_family = "c";  // a | b | c | file
  std::vector<Complex> eigenvalues;   // used when spectrum_family == "file"
  int trials = 1;
  std::vector<double> snr_grid_db;
  double epsilon = 2e-4;
  std::uint64_t seed = 1;
  double oversampling = 4.0;
  std::size_t samples = 4096;        // samples per effective duration for noise-free synthesis
  double bandwidth_fraction = 0.9999;
  unsigned threads = 0;              // 0: hardware concurrency

  void validate() const;
};

struct ResultRow {
  std::string experiment;
  int trial = -1;            // -1 for aggregates
  int eigenvalue_index = 0;  // 1-based, descending Im; 0 when not per-eigenvalue
  std::string quantity;
  double value = 0.0;
};

/// Eigenvalues of the named five-soliton families, descending Im.
std::vector<Complex> family_eigenvalues(std::string_view family);
std::vector<Complex> config_eigenvalues(const ExperimentConfig& config);

/// b_k = (-1)^k with k = 1..N in descending-Im order.
DiscreteSpectrum alternating_spectrum(const std::vector<Complex>& eigenvalues);

/// Circular spread of phase errors, reported as the wrapped-normal variance
/// -2 ln |mean e^{j dphi}|.
double circular_variance(const std::vector<double>& phase_errors);

struct DurationResult {
  std::vector<double> durations;  // T^(1)..T^(N)
  std::vector<double> predicted;  // duration_estimate staircase
  double alpha = 0.0;
  double predicted_alpha = 0.0;
  SerReport report;

  std::vector<ResultRow> rows() const;
};

DurationResult run_duration_experiment(const ExperimentConfig& config);

struct MethodStats {
  std::vector<double> variance;  // per eigenvalue, descending Im
  std::vector<int> excluded;     // per eigenvalue
  int estimates = 0;             // attempted (trial, eigenvalue) pairs
  int total_excluded() const;
};

struct SnrPoint {
  double snr_db = 0.0;
  MethodStats ser;
  MethodStats classical;
};

struct SnrResult {
  double b_max = 0.0;
  double sampling_rate = 0.0;
  int trials = 0;
  std::vector<SnrPoint> points;

  std::vector<ResultRow> rows() const;
};

SnrResult run_snr_experiment(const ExperimentConfig& config);

struct TruncationResult {
  double snr_db = 30.0;
  double b_max = 0.0;
  double sampling_rate = 0.0;
  int trials = 0;
  std::vector<MethodStats> classical_by_window;  // index n-1 holds window T^(n)
  MethodStats ser;
  MethodStats matched;  // classical on T^(k) for eigenvalue k
  MethodStats full;     // classical on the full window (T^(N))

  std::vector<ResultRow> rows() const;
};

TruncationResult run_truncation_experiment(const ExperimentConfig& config);

struct RoundTripResult {
  int trials = 0;
  int failures = 0;
  double max_lambda_error = 0.0;
  double max_phase_error = 0.0;
  std::vector<double> lambda_errors;  // per trial, worst eigenvalue
  std::vector<double> phase_errors;   // per trial, worst eigenvalue

  std::vector<ResultRow> rows() const;
};

RoundTripResult run_roundtrip_experiment(const ExperimentConfig& config);

struct SeparationCase {
  Complex delta;
  double predicted_plus = 0.0;
  double predicted_minus = 0.0;
  double measured_plus = 0.0;   // time of the rightmost soliton peak
  double measured_minus = 0.0;  // minus the time of the leftmost soliton peak
};

struct SeparationResult {
  std::vector<SeparationCase> cases;
  double slope = 0.0;           // d(t+ + t-) / d ln(1/|delta|), measured
  double predicted_slope = 0.0; // 1 / sigma_n

  std::vector<ResultRow> rows() const;
};

/// Spectrum with phases (0.24, 4.90, 0.58, 3.98, 0.09) on family c, plus
/// (0.5j + delta, exp(5.88j)).
SeparationResult run_separation_experiment(const ExperimentConfig& config,
                                           const std::vector<Complex>& deltas);

/// Fig. 2 base spectrum (family c with the fixed phases above).
DiscreteSpectrum separation_base_spectrum();
inline constexpr double kSeparationAddedPhase = 5.88;

std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

}  // namespace nftser::bench
