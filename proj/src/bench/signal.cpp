#include "nftser/bench/signal.hpp"

#include "nftser/scattering.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace nftser::bench {
namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double measure_bandwidth(const SampledPulse& pulse, double energy_fraction, int padding_factor) {
  if (!(energy_fraction > 0.0 && energy_fraction <= 1.0) || padding_factor < 1) {
    throw Error(ErrorCode::invalid_argument, "measure_bandwidth: energy fraction in (0,1], padding >= 1");
  }
  const std::size_t n = next_pow2(pulse.size() * static_cast<std::size_t>(padding_factor));
  std::vector<Complex> buffer(n, Complex{});
  std::copy(pulse.samples().begin(), pulse.samples().end(), buffer.begin());
  auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double df = 1.0 / (static_cast<double>(n) * pulse.step());
  std::vector<double> freq(n), energy(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto signed_k = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    freq[k] = signed_k * df;
    energy[k] = std::norm(buffer[k]);
  }
  const double total = std::accumulate(energy.begin(), energy.end(), 0.0);
  if (!(total > 0.0)) return 0.0;
  double centroid = 0.0;
  for (std::size_t k = 0; k < n; ++k) centroid += freq[k] * energy[k];
  centroid /= total;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(freq[a] - centroid) < std::abs(freq[b] - centroid);
  });
  const double target = energy_fraction * total;
  double acc = 0.0;
  double radius = 0.0;
  for (std::size_t idx : order) {
    acc += energy[idx];
    radius = std::abs(freq[idx] - centroid);
    if (acc >= target * (1.0 - 1e-12)) break;
  }
  return 2.0 * radius;
}

double awgn_variance(const SampledPulse& pulse, double snr_db, double b_max) {
  if (!(b_max > 0.0)) throw Error(ErrorCode::invalid_argument, "add_awgn: b_max must be positive");
  const double fs = 1.0 / pulse.step();
  if (fs < b_max) throw Error(ErrorCode::invalid_argument, "add_awgn: sampling rate below b_max");
  if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
  const double power = pulse_energy(pulse) / (static_cast<double>(pulse.size()) * pulse.step());
  return power * (fs / b_max) / std::pow(10.0, snr_db / 10.0);
}

SampledPulse add_awgn(const SampledPulse& pulse, double snr_db, double b_max, std::uint64_t seed) {
  const double variance = awgn_variance(pulse, snr_db, b_max);
  if (variance == 0.0) return pulse;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  std::vector<Complex> out(pulse.samples().begin(), pulse.samples().end());
  for (auto& q : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    q += Complex(re, im);
  }
  return SampledPulse(pulse.grid(), std::move(out));
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

}  // namespace nftser::bench
