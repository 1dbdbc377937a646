#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "remon/metrics.hpp"
#include "remon/pareto.hpp"

using remon::metrics::SystemConfig;
using remon::metrics::TradeoffPoint;
using remon::pareto::Spacing;
using remon::pareto::SweepGrid;
using remon::process::ProcessModel;

namespace {

SystemConfig reference_config() {
    return SystemConfig{ProcessModel::scalar(-0.02, 1.0), remon::coding::ChannelSpec(10.0),
                        remon::timing::LinkTiming(1.0, 0.0, 0.0),
                        remon::metrics::EvalOptions{}};
}

TradeoffPoint synthetic(double aoi, double mse, bool feasible = true) {
    TradeoffPoint p{};
    p.aoi = aoi;
    p.mse = mse;
    p.mse_delay = 0.6 * mse;
    p.mse_channel = 0.4 * mse;
    p.feasible = feasible;
    return p;
}

}  // namespace

TEST_CASE("axis construction") {
    auto lin = SweepGrid::axis(1.0, 5.0, 5, Spacing::Linear);
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == 1.0);
    CHECK(lin.back() == 5.0);
    CHECK(lin[2] == doctest::Approx(3.0).epsilon(1e-15));

    auto log = SweepGrid::axis(0.01, 100.0, 5, Spacing::Logarithmic);
    REQUIRE(log.size() == 5);
    CHECK(log.front() == 0.01);
    CHECK(log.back() == 100.0);
    CHECK(log[2] == doctest::Approx(1.0).epsilon(1e-12));

    auto single = SweepGrid::axis(2.0, 9.0, 1, Spacing::Linear);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 2.0);

    CHECK_THROWS_AS(SweepGrid::axis(5.0, 1.0, 4, Spacing::Linear), std::invalid_argument);
    CHECK_THROWS_AS(SweepGrid::axis(0.0, 1.0, 4, Spacing::Logarithmic),
                    std::invalid_argument);
    CHECK_THROWS_AS(SweepGrid::axis(1.0, 2.0, 0, Spacing::Linear), std::invalid_argument);
}

TEST_CASE("default grid shape") {
    auto grid = SweepGrid::default_grid(25.0);
    REQUIRE(grid.d_values.size() == 60);
    REQUIRE(grid.eps_values.size() == 60);
    CHECK(grid.d_values.front() == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(grid.d_values.back() == doctest::Approx(24.75).epsilon(1e-12));
    CHECK(grid.eps_values.front() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(grid.eps_values.back() == doctest::Approx(0.9).epsilon(1e-12));
    grid.validate();
}

TEST_CASE("grid validation") {
    SweepGrid grid;
    grid.d_values = {1.0, 2.0};
    grid.eps_values = {0.1, 0.2};
    grid.validate();

    grid.eps_values = {0.2, 0.1};
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);

    grid.eps_values = {0.1, 1.0};
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);

    grid.eps_values = {0.1};
    grid.d_values = {0.0, 1.0};
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);

    grid.d_values = {};
    grid.eps_values = {0.1};
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
}

TEST_CASE("sweep layout and values") {
    auto sys = reference_config();
    SweepGrid grid;
    grid.d_values = {0.5, 1.0, 20.0};
    grid.eps_values = {0.1, 0.5, 0.85};
    auto rows = remon::pareto::sweep(grid, sys);
    REQUIRE(rows.size() == 9);

    // distortion-major ordering with the grid values verbatim
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].distortion == grid.d_values[i / 3]);
        CHECK(rows[i].excess_prob == grid.eps_values[i % 3]);
    }

    // a single cell reproduces the point evaluation exactly
    auto pt = remon::metrics::evaluate_point(sys, 1.0, 0.5);
    CHECK(rows[4].blocklength == pt.blocklength);
    CHECK(rows[4].aoi == pt.aoi);
    CHECK(rows[4].mse == pt.mse);

    for (const auto& row : rows) {
        if (!row.feasible) {
            CHECK(std::isnan(row.mse));
            CHECK(std::isnan(row.aoi));
            continue;
        }
        CHECK(row.mse == doctest::Approx(row.mse_delay + row.mse_channel).epsilon(1e-10));
        CHECK(row.aoi > 0.0);
    }

    // the loose-tolerance high-failure corner admits no positive root
    CHECK_FALSE(rows[8].feasible);
}

TEST_CASE("sweep is thread-count invariant") {
    auto sys = reference_config();
    SweepGrid grid;
    grid.d_values = SweepGrid::axis(0.1, 20.0, 7, Spacing::Logarithmic);
    grid.eps_values = SweepGrid::axis(0.01, 0.9, 5, Spacing::Linear);
    auto serial = remon::pareto::sweep(grid, sys, 1);
    auto parallel = remon::pareto::sweep(grid, sys, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        bool same = (serial[i].feasible == parallel[i].feasible) &&
                    (serial[i].mse == parallel[i].mse ||
                     (std::isnan(serial[i].mse) && std::isnan(parallel[i].mse)));
        CHECK(same);
    }
}

TEST_CASE("front of synthetic points") {
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(2.0, 3.0));
    pts.push_back(synthetic(1.0, 4.0));
    pts.push_back(synthetic(3.0, 5.0)); // dominated by the first
    pts.push_back(synthetic(0.5, 10.0, false)); // infeasible, ignored
    auto front = remon::pareto::pareto_front(pts);
    REQUIRE(front.size() == 2);
    CHECK(front[0].aoi == 1.0);
    CHECK(front[1].aoi == 2.0);
}

TEST_CASE("ties keep the earliest row") {
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(1.0, 1.0));
    pts.back().distortion = 111.0;
    pts.push_back(synthetic(1.0, 1.0));
    pts.back().distortion = 222.0;
    auto front = remon::pareto::pareto_front(pts);
    REQUIRE(front.size() == 1);
    CHECK(front[0].distortion == 111.0);
}

TEST_CASE("front matches the quadratic-time scan") {
    std::mt19937_64 gen(515);
    std::uniform_real_distribution<double> unif(0.0, 10.0);
    for (int round = 0; round < 3; ++round) {
        std::vector<TradeoffPoint> pts;
        for (int i = 0; i < 500; ++i) {
            auto p = synthetic(unif(gen), unif(gen), (i % 17) != 0);
            p.distortion = i; // marker for identity checks
            pts.push_back(p);
        }
        auto fast = remon::pareto::pareto_front(pts);
        auto slow = oracles::brute_force_front(pts);
        // same multiset: compare by marker after sorting both by aoi
        std::sort(slow.begin(), slow.end(), [](const auto& a, const auto& b) {
            return a.aoi < b.aoi;
        });
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(fast[i].distortion == slow[i].distortion);

        // idempotence and mutual non-domination
        auto again = remon::pareto::pareto_front(fast);
        CHECK(again.size() == fast.size());
        for (std::size_t i = 1; i < fast.size(); ++i) {
            CHECK(fast[i].aoi > fast[i - 1].aoi);
            CHECK(fast[i].mse < fast[i - 1].mse);
        }
    }
}

TEST_CASE("front input validation") {
    std::vector<TradeoffPoint> empty;
    CHECK_THROWS_AS(remon::pareto::pareto_front(empty), std::invalid_argument);

    // all-infeasible input yields an empty front
    std::vector<TradeoffPoint> pts{synthetic(1.0, 1.0, false)};
    auto front = remon::pareto::pareto_front(pts);
    CHECK(front.empty());
}

TEST_CASE("boundary curves") {
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(1.0, 4.0));
    pts.push_back(synthetic(1.0, 2.0)); // same bin, lower values win
    pts.push_back(synthetic(5.0, 1.0));
    auto curves = remon::pareto::boundary_curves(pts);
    REQUIRE(curves.mse_total.size() == 2);
    CHECK(curves.mse_total[0].aoi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(curves.mse_total[0].value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(curves.mse_total[1].value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curves.mse_delay[0].value == doctest::Approx(0.6 * 2.0).epsilon(1e-12));
    CHECK(curves.mse_channel[0].value == doctest::Approx(0.4 * 2.0).epsilon(1e-12));
    for (std::size_t i = 1; i < curves.mse_total.size(); ++i)
        CHECK(curves.mse_total[i].aoi > curves.mse_total[i - 1].aoi);

    std::vector<TradeoffPoint> none{synthetic(1.0, 1.0, false)};
    CHECK_THROWS_AS(remon::pareto::boundary_curves(none), std::invalid_argument);
}

TEST_CASE("boundary curves drop points undercut on both sides") {
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(1.0, 3.0));
    pts.push_back(synthetic(2.0, 5.0)); // a lower value exists on each side
    pts.push_back(synthetic(3.0, 1.0));
    auto curves = remon::pareto::boundary_curves(pts);
    REQUIRE(curves.mse_total.size() == 2);
    CHECK(curves.mse_total[0].value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(curves.mse_total[1].value == doctest::Approx(1.0).epsilon(1e-12));
    // the components share the proportional split, so they shed the same point
    REQUIRE(curves.mse_delay.size() == 2);
    REQUIRE(curves.mse_channel.size() == 2);
    CHECK(curves.mse_delay[1].value == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(curves.mse_channel[0].value == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("boundary curves keep an interior minimum") {
    // nothing forces monotonicity: a V-shaped cloud keeps its V
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(1.0, 3.0));
    pts.push_back(synthetic(2.0, 1.0));
    pts.push_back(synthetic(3.0, 2.0));
    auto curves = remon::pareto::boundary_curves(pts);
    REQUIRE(curves.mse_total.size() == 3);
    CHECK(curves.mse_total[0].value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(curves.mse_total[1].value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curves.mse_total[2].value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("boundary curves keep the first point on a value tie") {
    std::vector<TradeoffPoint> pts;
    pts.push_back(synthetic(1.000001, 2.0)); // same bin as the next point
    pts.push_back(synthetic(1.0, 2.0));
    pts.push_back(synthetic(5.0, 1.0));
    auto curves = remon::pareto::boundary_curves(pts);
    REQUIRE(curves.mse_total.size() == 2);
    CHECK(curves.mse_total[0].aoi == 1.000001);
}

TEST_CASE("sweep front on the reference system") {
    auto sys = reference_config();
    SweepGrid grid;
    grid.d_values = SweepGrid::axis(0.025, 24.75, 12, Spacing::Logarithmic);
    grid.eps_values = SweepGrid::axis(1e-4, 0.9, 10, Spacing::Linear);
    auto rows = remon::pareto::sweep(grid, sys, 2);
    auto front = remon::pareto::pareto_front(rows);
    REQUIRE(front.size() >= 2);
    auto slow = oracles::brute_force_front(rows);
    CHECK(front.size() == slow.size());
}
