#pragma once

#include "nftser/scattering.hpp"
#include "nftser/types.hpp"

#include <vector>

namespace nftser {

struct CollocationConfig {
  int modes = 128;              // K; the matrix has size 2(2K+1)
  double period = 0.0;          // L
  double im_floor = 1e-3;       // smallest Im(lambda) reported
  double residual_ceiling = 1e-2;  // largest |a(lambda)| accepted

  void validate() const;
};

/// L = measured support + 4 soliton widths 1/(2 sigma_min); K = min(M/2, 128).
/// The support is measured with threshold 2 sigma_min sqrt(epsilon).
CollocationConfig default_collocation(const SampledPulse& pulse, double sigma_min = 0.25,
                                      double epsilon = 2e-4);

/// Coarse eigenvalues from the Fourier-collocation discretization of the
/// scattering operator, filtered by Im floor and scattering residual, sorted
/// by ascending Im.
std::vector<Complex> fourier_collocation(const SampledPulse& pulse, const CollocationConfig& config);

struct NewtonConfig {
  double tol = 1e-10;
  int max_iter = 30;
  double damping = 1.0;

  void validate() const;
};

struct NewtonResult {
  Complex lambda;
  double residual = 0.0;  // |a(lambda)|
  int iterations = 0;
};

/// Newton iteration on a(lambda) = 0. Steps that would leave the upper half
/// plane are retried with halved damping.
NewtonResult newton_refine(const SampledPulse& pulse, Complex lambda0, const NewtonConfig& config = {});

}  // namespace nftser
