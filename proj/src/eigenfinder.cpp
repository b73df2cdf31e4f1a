#include "nftser/eigenfinder.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nftser {

void CollocationConfig::validate() const {
  if (modes < 1 || !(period > 0.0) || !(im_floor > 0.0) || !(residual_ceiling > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "CollocationConfig: need K >= 1, L > 0, im_floor > 0");
  }
}

void NewtonConfig::validate() const {
  if (!(tol > 0.0) || max_iter < 1 || !(damping > 0.0 && damping <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "NewtonConfig: need tol > 0, max_iter >= 1, damping in (0,1]");
  }
}

CollocationConfig default_collocation(const SampledPulse& pulse, double sigma_min, double epsilon) {
  double support = pulse.t_end() - pulse.t_start();
  try {
    support = effective_support(pulse, 2.0 * sigma_min * std::sqrt(epsilon)).duration();
  } catch (const Error&) {
  }
  CollocationConfig config;
  config.period = support + 4.0 / (2.0 * sigma_min);
  config.modes = static_cast<int>(std::min<std::size_t>(pulse.size() / 2, 128));
  return config;
}

std::vector<Complex> fourier_collocation(const SampledPulse& pulse, const CollocationConfig& config) {
  config.validate();
  const int K = config.modes;
  const int n = 2 * K + 1;
  const double w0 = 2.0 * std::numbers::pi / config.period;
  const double centre = 0.5 * (pulse.t_start() + pulse.t_end());
  const double h = pulse.step();

  // Fourier coefficients c_k of q on the period, k = -2K..2K.
  std::vector<Complex> c(4 * K + 1);
  for (int k = -2 * K; k <= 2 * K; ++k) {
    Complex sum{};
    for (std::size_t m = 0; m < pulse.size(); ++m) {
      sum += pulse[m] * std::polar(1.0, -w0 * k * (pulse.time(m) - centre));
    }
    c[k + 2 * K] = sum * h / config.period;
  }
  const auto coef = [&](int k) { return c[k + 2 * K]; };

  // lambda v1 = j v1' - j q v2,  lambda v2 = -j v2' - j q^* v1.
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const Complex j{0.0, 1.0};
  for (int r = 0; r < n; ++r) {
    const int kr = r - K;
    A(r, r) = -kr * w0;
    A(n + r, n + r) = kr * w0;
    for (int s = 0; s < n; ++s) {
      const int d = kr - (s - K);
      A(r, n + s) = -j * coef(d);
      A(n + r, s) = -j * std::conj(coef(-d));
    }
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eigensolver_failure, "fourier_collocation: eigensolver did not converge");
  }

  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex lam = solver.eigenvalues()(i);
    if (!(lam.imag() > config.im_floor)) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Complex& o) {
      return std::abs(o - lam) < 1e-6 * (1.0 + std::abs(lam));
    });
    if (duplicate) continue;
    if (std::abs(spectral_coefficients(pulse, lam).a) >= config.residual_ceiling) continue;
    out.push_back(lam);
  }
  if (out.empty()) throw Error(ErrorCode::no_candidates, "fourier_collocation: no eigenvalue candidates");
  std::sort(out.begin(), out.end(), ascending_im_less);
  return out;
}

NewtonResult newton_refine(const SampledPulse& pulse, Complex lambda0, const NewtonConfig& config) {
  config.validate();
  if (!(lambda0.imag() > 0.0)) {
    throw Error(ErrorCode::left_half_plane, "newton_refine: starting point must lie in the upper half plane");
  }
  Complex lambda = lambda0;
  for (int iter = 1; iter <= config.max_iter; ++iter) {
    const auto [a, da] = a_with_derivative(pulse, lambda);
    if (da == Complex{} || !std::isfinite(std::abs(a / da))) {
      throw Error(ErrorCode::no_convergence, "newton_refine: vanishing derivative");
    }
    const Complex full = a / da;
    double damping = config.damping;
    Complex next = lambda - damping * full;
    int halvings = 0;
    while (!(next.imag() > 0.0)) {
      if (++halvings > 60) {
        throw Error(ErrorCode::left_half_plane, "newton_refine: cannot stay in the upper half plane");
      }
      damping *= 0.5;
      next = lambda - damping * full;
    }
    const double step = std::abs(next - lambda);
    lambda = next;
    if (step < config.tol) {
      return {lambda, std::abs(spectral_coefficients(pulse, lambda).a), iter};
    }
  }
  throw Error(ErrorCode::no_convergence, "newton_refine: no convergence within max_iter");
}

}  // namespace nftser
