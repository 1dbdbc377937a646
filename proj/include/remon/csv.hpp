#pragma once

#include <string>
#include <vector>

#include "remon/metrics.hpp"
#include "remon/montecarlo.hpp"

namespace remon::csv {

// Header shared by sweep, front, and point output.
extern const char* const kSweepHeader;

// One value formatted with 12 significant digits (%.12g); NaN prints "nan".
std::string format_value(double value);

std::string sweep_row(const metrics::TradeoffPoint& point);

void write_sweep_csv(const std::string& path, const std::vector<metrics::TradeoffPoint>& points);

// Strict parser for files produced by write_sweep_csv: exact header, nine
// fields per row.
std::vector<metrics::TradeoffPoint> parse_sweep_csv(const std::string& path);

// Simulation output: analytic row geometry plus empirical means and standard
// errors. Standard errors print as empty fields when unavailable (one path).
extern const char* const kSimulateHeader;

std::string simulate_row(double distortion, double excess_prob, double blocklength,
                         double attempt_delay, const montecarlo::SimResult& result);

} // namespace remon::csv
