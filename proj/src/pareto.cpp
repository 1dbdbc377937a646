#include "remon/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "remon/errors.hpp"

namespace remon::pareto {

std::vector<double> SweepGrid::axis(double lo, double hi, int count, Spacing spacing) {
    if (count < 1) throw std::invalid_argument("SweepGrid: axis needs at least one point");
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("SweepGrid: axis bounds must be finite with lo <= hi");
    }
    if (count == 1) return {lo};
    if (lo == hi) throw std::invalid_argument("SweepGrid: axis bounds coincide");
    std::vector<double> values(static_cast<std::size_t>(count));
    if (spacing == Spacing::Logarithmic) {
        if (!(lo > 0.0)) throw std::invalid_argument("SweepGrid: log axis requires lo > 0");
        const double llo = std::log(lo);
        const double lhi = std::log(hi);
        for (int i = 0; i < count; ++i) {
            values[static_cast<std::size_t>(i)] =
                std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
        }
        values.front() = lo;
        values.back() = hi;
    } else {
        for (int i = 0; i < count; ++i) {
            values[static_cast<std::size_t>(i)] =
                lo + (hi - lo) * static_cast<double>(i) / (count - 1);
        }
        values.back() = hi;
    }
    return values;
}

SweepGrid SweepGrid::default_grid(double max_source_eig) {
    if (!(max_source_eig > 0.0)) {
        throw std::invalid_argument("SweepGrid: max source eigenvalue must be > 0");
    }
    SweepGrid grid;
    grid.d_values = axis(1e-3 * max_source_eig, 0.99 * max_source_eig, 60, Spacing::Logarithmic);
    grid.eps_values = axis(1e-4, 0.9, 60, Spacing::Linear);
    return grid;
}

void SweepGrid::validate() const {
    if (d_values.empty() || eps_values.empty()) {
        throw std::invalid_argument("SweepGrid: axes must be nonempty");
    }
    for (std::size_t i = 0; i < d_values.size(); ++i) {
        if (!(d_values[i] > 0.0) || !std::isfinite(d_values[i])) {
            throw std::invalid_argument("SweepGrid: distortions must be finite and > 0");
        }
        if (i > 0 && !(d_values[i] > d_values[i - 1])) {
            throw std::invalid_argument("SweepGrid: distortions must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < eps_values.size(); ++i) {
        if (!(eps_values[i] > 0.0) || !(eps_values[i] < 1.0)) {
            throw std::invalid_argument("SweepGrid: eps values must lie in (0, 1)");
        }
        if (i > 0 && !(eps_values[i] > eps_values[i - 1])) {
            throw std::invalid_argument("SweepGrid: eps values must be strictly increasing");
        }
    }
}

std::vector<metrics::TradeoffPoint> sweep(const SweepGrid& grid, const metrics::SystemConfig& sys,
                                          int threads) {
    grid.validate();
    if (threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");

    const std::size_t cols = grid.eps_values.size();
    const std::size_t cells = grid.d_values.size() * cols;
    std::vector<metrics::TradeoffPoint> points(cells);

    const auto evaluate_cell = [&](std::size_t idx) {
        const double d = grid.d_values[idx / cols];
        const double eps = grid.eps_values[idx % cols];
        try {
            points[idx] = metrics::evaluate_point(sys, d, eps);
        } catch (const infeasible_error&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            points[idx] = {d, eps, nan, nan, nan, nan, nan, nan, false};
        }
    };

    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), cells));
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < cells; ++idx) evaluate_cell(idx);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        const std::size_t chunk = (cells + static_cast<std::size_t>(workers) - 1) /
                                  static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(lo + chunk, cells);
            pool.emplace_back([&, w, lo, hi]() {
                try {
                    for (std::size_t idx = lo; idx < hi; ++idx) evaluate_cell(idx);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    return points;
}

std::vector<metrics::TradeoffPoint> pareto_front(const std::vector<metrics::TradeoffPoint>& points) {
    if (points.empty()) throw std::invalid_argument("pareto_front: empty input");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].feasible) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (points[lhs].aoi != points[rhs].aoi) return points[lhs].aoi < points[rhs].aoi;
        if (points[lhs].mse != points[rhs].mse) return points[lhs].mse < points[rhs].mse;
        return lhs < rhs;
    });
    std::vector<metrics::TradeoffPoint> front;
    double best_mse = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        if (points[idx].mse < best_mse) {
            front.push_back(points[idx]);
            best_mse = points[idx].mse;
        }
    }
    return front;
}

namespace {

// Lower edge of one (aoi, value) cloud. Bins hold the smallest value seen at
// that AoI (first point wins a value tie); a binned point survives only if no
// strictly smaller value exists both at smaller and at larger AoI. Endpoints
// and interior minima always survive, so the edge is not forced monotone; a
// V-shaped cloud keeps its V.
std::vector<BoundaryPoint> lower_edge(const std::vector<BoundaryPoint>& samples,
                                      double resolution) {
    std::map<long long, BoundaryPoint> bins;
    for (const auto& s : samples) {
        const long long key = static_cast<long long>(std::llround(s.aoi / resolution));
        auto [it, inserted] = bins.try_emplace(key, s);
        if (!inserted && s.value < it->second.value) it->second = s;
    }
    // Bin keys ascend with aoi, so the candidates come out aoi-sorted.
    std::vector<BoundaryPoint> cand;
    cand.reserve(bins.size());
    for (const auto& [key, p] : bins) {
        (void)key;
        cand.push_back(p);
    }
    const std::size_t n = cand.size();
    std::vector<double> suffix_min(n, std::numeric_limits<double>::infinity());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = n; i-- > 0;) {
        suffix_min[i] = best;
        best = std::min(best, cand[i].value);
    }
    std::vector<BoundaryPoint> edge;
    double prefix_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(prefix_min < cand[i].value && suffix_min[i] < cand[i].value)) {
            edge.push_back(cand[i]);
        }
        prefix_min = std::min(prefix_min, cand[i].value);
    }
    return edge;
}

} // namespace

BoundaryCurves boundary_curves(const std::vector<metrics::TradeoffPoint>& points) {
    double max_aoi = 0.0;
    for (const auto& p : points) {
        if (p.feasible) max_aoi = std::max(max_aoi, p.aoi);
    }
    if (max_aoi <= 0.0) throw std::invalid_argument("boundary_curves: no feasible points");
    const double resolution = 1e-6 * max_aoi;

    std::vector<BoundaryPoint> delay;
    std::vector<BoundaryPoint> channel;
    std::vector<BoundaryPoint> total;
    for (const auto& p : points) {
        if (!p.feasible) continue;
        delay.push_back({p.aoi, p.mse_delay});
        channel.push_back({p.aoi, p.mse_channel});
        total.push_back({p.aoi, p.mse});
    }
    BoundaryCurves curves;
    curves.mse_delay = lower_edge(delay, resolution);
    curves.mse_channel = lower_edge(channel, resolution);
    curves.mse_total = lower_edge(total, resolution);
    return curves;
}

} // namespace remon::pareto
