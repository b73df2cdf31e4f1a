#pragma once

// File formats: pulse CSV (t,re,im), spectrum JSON, SER report JSON and the
// long-format results table.

#include "nftser/bench/experiments.hpp"
#include "nftser/ser.hpp"
#include "nftser/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nftser::bench {

/// Header `t,re,im`, one sample per line.
void write_pulse_csv(std::ostream& out, const SampledPulse& pulse);
/// Rejects malformed rows, non-increasing time and non-constant steps.
SampledPulse read_pulse_csv(std::istream& in);

/// {"eigenvalues":[{"re":..,"im":..}],"b":[{"re":..,"im":..}]}
void write_spectrum_json(std::ostream& out, const DiscreteSpectrum& spectrum);
DiscreteSpectrum read_spectrum_json(std::istream& in);

void write_ser_report_json(std::ostream& out, const SerReport& report);

/// Header `experiment,trial,eigenvalue_index,quantity,value`.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_results_json(std::ostream& out, const std::vector<ResultRow>& rows);

/// Shortest text that reads back to the same double ("nan", "inf", "-inf"
/// for non-finite values).
std::string format_double(double x);

SampledPulse load_pulse(const std::string& path);
DiscreteSpectrum load_spectrum(const std::string& path);

}  // namespace nftser::bench
