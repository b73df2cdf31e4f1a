#pragma once

#include "nftser/scattering.hpp"
#include "nftser/types.hpp"

#include <vector>

namespace nftser {

/// Fiber parameters mapping normalized units to physical ones.
struct PhysicalScaling {
  double T0 = 1.0;     // s
  double beta2 = -1.0; // s^2/m, anomalous dispersion is negative
  double gamma = 1.0;  // 1/(W m)

  /// P0 = |beta2| / (gamma T0^2)
  double P0() const;
  void validate() const;
};

struct SynthesisOptions {
  double epsilon = 2e-4;
  /// Reject grids that do not cover the predicted effective support.
  bool check_support = true;
};

/// Recursive dressing state: the current pulse plus, for every eigenvalue not
/// yet added, a solution of the scattering problem of that pulse. Auxiliary
/// vectors are stored normalized per sample; the update only depends on
/// their direction.
struct DressingState {
  SampledPulse pulse;
  std::vector<Complex> pending;           // eigenvalues still to add, in order
  std::vector<std::vector<Vec2>> auxiliary;

  /// Initializes vacuum seeds for every entry, ordered by ascending Im.
  static DressingState seed(const DiscreteSpectrum& spectrum, const TimeGrid& grid);

  bool done() const { return pending.empty(); }
  /// Adds the next pending eigenvalue and dresses the remaining seeds.
  void add_next();
};

/// Multi-soliton with the prescribed discrete spectrum.
SampledPulse synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid,
                        const SynthesisOptions& options = {});

/// Grid covering the predicted support padded by `padding` of its duration,
/// with the given number of samples.
TimeGrid synthesis_grid(const DiscreteSpectrum& spectrum, std::size_t samples, double epsilon = 2e-4,
                        double padding = 0.2);

/// Same, but with a fixed step.
TimeGrid synthesis_grid_with_step(const DiscreteSpectrum& spectrum, double step, double epsilon = 2e-4,
                                  double padding = 0.2);

/// Vacuum solution (e^{-j mu t}, -b e^{j mu t}) on the grid, per-sample
/// normalized. Adding it with darboux_update to a zero pulse yields the
/// one-soliton (mu, b).
JostSolution vacuum_seed(const TimeGrid& grid, Complex mu, Complex b);

/// q~ = q + 2j (mu^* - mu) theta_2^* theta_1 / (|theta_1|^2 + |theta_2|^2)
SampledPulse darboux_update(const SampledPulse& pulse, const JostSolution& theta, Complex mu);

struct RemovalResult {
  SampledPulse pulse;
  Complex b_hat;
  double stitch_error = 0.0;
};

/// Forward-backward amplitude estimate at lambda_hat followed by the Darboux
/// update with the stitched bound state.
RemovalResult remove_eigenvalue(const SampledPulse& pulse, Complex lambda_hat, std::size_t p,
                                const JostOptions& jost = {}, const FbOptions& fb = {});

/// b_k -> b_k exp(-4j lambda_k^2 z); eigenvalues unchanged.
DiscreteSpectrum propagate_spectrum(const DiscreteSpectrum& spectrum, double z);

/// Time axis scaled by T0, amplitude by sqrt(P0).
SampledPulse to_physical(const SampledPulse& pulse, const PhysicalScaling& scaling);

}  // namespace nftser
