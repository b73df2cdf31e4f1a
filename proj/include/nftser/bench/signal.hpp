#pragma once

#include "nftser/types.hpp"

#include <cstdint>

namespace nftser::bench {

/// Width (in cycles per unit time) of the smallest interval around the
/// spectral centroid holding `energy_fraction` of the DFT energy. The pulse is
/// zero-padded by `padding_factor` for frequency resolution.
double measure_bandwidth(const SampledPulse& pulse, double energy_fraction, int padding_factor = 8);

/// Adds circular white Gaussian noise with per-sample variance
/// (E / T) (f_s / b_max) / SNR, so that the noise power inside b_max relative
/// to the signal power is 1 / SNR. T is the grid length M h.
SampledPulse add_awgn(const SampledPulse& pulse, double snr_db, double b_max, std::uint64_t seed);

/// Noise variance per complex sample used by add_awgn.
double awgn_variance(const SampledPulse& pulse, double snr_db, double b_max);

/// Decorrelated substream seed for (master, stream, index).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace nftser::bench
