#pragma once

// Discretized Zakharov-Shabat scattering.
//
// Samples are treated as cell-centred: sample m stands for the interval
// [t_m - h/2, t_m + h/2]. The forward vector w^(m) and the backward vector
// u^(m) both live at the left edge of cell m, so w^(0) sits at T_- - h/2 and
// w^(M) at T_+ + h/2. With that convention det[w^(m), u^(m)] equals a(lambda)
// for every m and the one-step matrix of the midpoint rule is second order.
//
// All vectors are in the rotating frame Psi = (theta_1 e^{j lambda t},
// theta_2 e^{-j lambda t}).

#include "nftser/types.hpp"

#include <Eigen/Core>

#include <memory>
#include <string_view>
#include <vector>

namespace nftser {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// One-step discretization of the scattering problem. Implementations map
/// (q_m, t_m, h, lambda) to the 2x2 transfer matrix of one cell; a negative h
/// must yield the inverse step.
class ScatteringScheme {
public:
  virtual ~ScatteringScheme() = default;
  virtual std::string_view name() const = 0;
  virtual Mat2 transfer(Complex q, double t, double h, Complex lambda) const = 0;
  /// d/dlambda of transfer().
  virtual Mat2 transfer_derivative(Complex q, double t, double h, Complex lambda) const = 0;
};

/// Exponential midpoint rule with the rotating-frame phase frozen at the cell
/// centre.
class MidpointScheme final : public ScatteringScheme {
public:
  std::string_view name() const override { return "midpoint"; }
  Mat2 transfer(Complex q, double t, double h, Complex lambda) const override;
  Mat2 transfer_derivative(Complex q, double t, double h, Complex lambda) const override;
};

const ScatteringScheme& midpoint_scheme();

/// Scheme lookup by name. Only "midpoint" is registered.
std::unique_ptr<ScatteringScheme> make_scheme(std::string_view name);

/// Midpoint transfer matrix S_m. Unimodular; S(-h) == S(h)^{-1}.
Mat2 transfer_matrix(Complex q, double t, double h, Complex lambda);

/// w^(0) = (1,0), w^(m+1) = S_m w^(m); returns M+1 vectors.
std::vector<Vec2> propagate_forward(const SampledPulse& pulse, Complex lambda,
                                    const ScatteringScheme& scheme = midpoint_scheme());

/// u^(M) = (0,1), u^(m) = S_m^{-1} u^(m+1); returns M+1 vectors.
std::vector<Vec2> propagate_backward(const SampledPulse& pulse, Complex lambda,
                                     const ScatteringScheme& scheme = midpoint_scheme());

struct ScatteringCoefficients {
  Complex a;
  Complex b;
};

/// (a, b) = w^(M).
ScatteringCoefficients spectral_coefficients(const SampledPulse& pulse, Complex lambda,
                                             const ScatteringScheme& scheme = midpoint_scheme());

/// Forward and backward trajectories for one (pulse, lambda) pair.
struct ScatteringRun {
  Complex lambda;
  std::vector<Vec2> forward;
  std::vector<Vec2> backward;
  std::size_t split_index = 0;
};

/// Split index round(fraction * M), clamped to [1, M-1].
std::size_t split_index(std::size_t samples, double fraction = 0.5);

ScatteringRun scattering_run(const SampledPulse& pulse, Complex lambda, std::size_t p,
                             const ScatteringScheme& scheme = midpoint_scheme());

struct FbOptions {
  double division_floor = 1e-200;  // minimum |u_2^(p)|
};

/// Forward-backward estimates at split index p:
///   a_hat = w1 u2 - u1 w2,  b_hat = w2 / u2.
ScatteringCoefficients fb_coefficients(const ScatteringRun& run, const FbOptions& options = {});
ScatteringCoefficients fb_coefficients(const SampledPulse& pulse, Complex lambda, std::size_t p,
                                       const FbOptions& options = {},
                                       const ScatteringScheme& scheme = midpoint_scheme());

/// theta(lambda; t_m) for every sample, stitched from the forward branch
/// (m < p) and the scaled backward branch (m >= p).
struct JostSolution {
  Complex lambda;
  std::vector<Vec2> values;
  std::size_t split_index = 0;
  double stitch_error = 0.0;  // |w^(p) - b_hat u^(p)| / |w^(p)|
};

struct JostOptions {
  double stitch_tolerance = 1e-3;
};

JostSolution jost_solution(const SampledPulse& pulse, const ScatteringRun& run, Complex b_hat,
                           const JostOptions& options = {},
                           const ScatteringScheme& scheme = midpoint_scheme());
JostSolution jost_solution(const SampledPulse& pulse, Complex lambda, std::size_t p, Complex b_hat,
                           const JostOptions& options = {},
                           const ScatteringScheme& scheme = midpoint_scheme());

struct CoefficientDerivative {
  Complex a;
  Complex da;  // d a / d lambda
};

/// a(lambda) and its lambda-derivative from one joint forward sweep.
CoefficientDerivative a_with_derivative(const SampledPulse& pulse, Complex lambda,
                                        const ScatteringScheme& scheme = midpoint_scheme());
Complex a_derivative(const SampledPulse& pulse, Complex lambda,
                     const ScatteringScheme& scheme = midpoint_scheme());

/// h * sum |q_m|^2
double pulse_energy(const SampledPulse& pulse);

struct SupportWindow {
  double t_minus = 0.0;
  double t_plus = 0.0;
  double duration() const { return t_plus - t_minus; }
  bool contains(const SupportWindow& inner) const {
    return inner.t_minus >= t_minus && inner.t_plus <= t_plus;
  }
};

/// Times of the first and last sample with |q_m| > threshold.
SupportWindow effective_support(const SampledPulse& pulse, double threshold);

}  // namespace nftser
