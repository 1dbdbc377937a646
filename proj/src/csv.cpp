#include "remon/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace remon::csv {

const char* const kSweepHeader = "d,epsilon,n,r,aoi,mse,mse_delay,mse_channel,feasible";
const char* const kSimulateHeader =
    "d,epsilon,n,r,mse,mse_se,aoi,aoi_se,mse_delay,mse_delay_se,mse_channel,mse_channel_se,cycles";

std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string sweep_row(const metrics::TradeoffPoint& point) {
    std::string row;
    row += format_value(point.distortion);
    row += ',';
    row += format_value(point.excess_prob);
    row += ',';
    row += format_value(point.blocklength);
    row += ',';
    row += format_value(point.attempt_delay);
    row += ',';
    row += format_value(point.aoi);
    row += ',';
    row += format_value(point.mse);
    row += ',';
    row += format_value(point.mse_delay);
    row += ',';
    row += format_value(point.mse_channel);
    row += ',';
    row += point.feasible ? '1' : '0';
    return row;
}

void write_sweep_csv(const std::string& path, const std::vector<metrics::TradeoffPoint>& points) {
    std::ofstream out(path, std::ios::binary); // fixed line endings on every platform
    if (!out) throw std::invalid_argument("csv: cannot open '" + path + "' for writing");
    out << kSweepHeader << '\n';
    for (const auto& point : points) out << sweep_row(point) << '\n';
    if (!out) throw std::invalid_argument("csv: write to '" + path + "' failed");
}

namespace {

double parse_field(const std::string& field, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double value = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("csv: '" + path + "' line " + std::to_string(line) +
                                 ": bad numeric field '" + field + "'");
    }
}

} // namespace

std::vector<metrics::TradeoffPoint> parse_sweep_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader) {
        throw std::invalid_argument("csv: '" + path + "' does not start with the sweep header");
    }
    std::vector<metrics::TradeoffPoint> points;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw std::invalid_argument("csv: '" + path + "' line " + std::to_string(lineno) +
                                     ": expected 9 fields, got " + std::to_string(fields.size()));
        }
        metrics::TradeoffPoint p{};
        p.distortion = parse_field(fields[0], path, lineno);
        p.excess_prob = parse_field(fields[1], path, lineno);
        p.blocklength = parse_field(fields[2], path, lineno);
        p.attempt_delay = parse_field(fields[3], path, lineno);
        p.aoi = parse_field(fields[4], path, lineno);
        p.mse = parse_field(fields[5], path, lineno);
        p.mse_delay = parse_field(fields[6], path, lineno);
        p.mse_channel = parse_field(fields[7], path, lineno);
        if (fields[8] != "0" && fields[8] != "1") {
            throw std::invalid_argument("csv: '" + path + "' line " + std::to_string(lineno) +
                                     ": feasible flag must be 0 or 1");
        }
        p.feasible = fields[8] == "1";
        points.push_back(p);
    }
    return points;
}

std::string simulate_row(double distortion, double excess_prob, double blocklength,
                         double attempt_delay, const montecarlo::SimResult& result) {
    const auto opt = [](double value) {
        return std::isnan(value) ? std::string() : format_value(value);
    };
    std::string row;
    row += format_value(distortion);
    row += ',';
    row += format_value(excess_prob);
    row += ',';
    row += format_value(blocklength);
    row += ',';
    row += format_value(attempt_delay);
    row += ',';
    row += format_value(result.mse_mean);
    row += ',';
    row += opt(result.mse_se);
    row += ',';
    row += format_value(result.aoi_mean);
    row += ',';
    row += opt(result.aoi_se);
    row += ',';
    row += format_value(result.mse_delay_mean);
    row += ',';
    row += opt(result.mse_delay_se);
    row += ',';
    row += format_value(result.mse_channel_mean);
    row += ',';
    row += opt(result.mse_channel_se);
    row += ',';
    row += std::to_string(result.cycles_observed);
    return row;
}

} // namespace remon::csv
