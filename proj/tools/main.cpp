#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "remon/coding.hpp"
#include "remon/csv.hpp"
#include "remon/errors.hpp"
#include "remon/estimation.hpp"
#include "remon/linalg.hpp"
#include "remon/metrics.hpp"
#include "remon/montecarlo.hpp"
#include "remon/pareto.hpp"
#include "remon/process.hpp"
#include "remon/rng.hpp"
#include "remon/timing.hpp"

namespace {

using remon::coding::SourceVarMode;
using remon::metrics::SystemConfig;
using remon::metrics::TradeoffPoint;

struct CommonConfig {
    double a = -0.02;               // scalar drift, 1/second
    double q_u = 1.0;               // scalar input-noise intensity
    int dim = 1;                    // state dimension k
    std::vector<double> a_matrix;   // row-major k*k system matrix (k > 1)
    std::vector<double> qu_matrix;  // row-major k*k input-noise covariance
    double snr = 10.0;              // linear channel SNR
    double alpha = 1.0;             // seconds per channel symbol
    double beta = 0.0;              // per-attempt overhead, seconds
    double wait = 0.0;              // post-ACK waiting time, seconds
    double explicit_qw = -1.0;      // sample-noise variance; < 0 = worst case d
    std::string source_var = "steady";
    bool integer_n = false;
};

void add_common_flags(CLI::App* cmd, CommonConfig* cfg) {
    cmd->add_option("--a", cfg->a, "Scalar drift (1/s), must be < 0")->capture_default_str();
    cmd->add_option("--qu", cfg->q_u, "Scalar input-noise intensity, > 0; for k > 1 scales the identity unless --Qu is given")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--k", cfg->dim, "State dimension")
        ->check(CLI::Range(1, remon::linalg::kMaxDim))
        ->capture_default_str();
    cmd->add_option("--A", cfg->a_matrix, "Row-major k*k system matrix (overrides --a)");
    cmd->add_option("--Qu", cfg->qu_matrix, "Row-major k*k input-noise covariance (overrides --qu)");
    cmd->add_option("--P", cfg->snr, "Linear channel SNR, > 0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--alpha", cfg->alpha, "Seconds per channel symbol, > 0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--beta", cfg->beta, "Fixed per-attempt overhead (s), >= 0")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--s", cfg->wait, "Post-ACK waiting time (s), >= 0")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--qw", cfg->explicit_qw,
                    "Sample-noise variance per component; default: worst case, tracks d")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--source-var", cfg->source_var,
                    "Covariance feeding rate-distortion: encoder steady state or receiver output")
        ->check(CLI::IsMember({"steady", "receiver"}))
        ->capture_default_str();
    cmd->add_flag("--integer-n", cfg->integer_n, "Ceil the blocklength to an integer symbol count");
}

SystemConfig build_system(const CommonConfig& cfg) {
    using remon::linalg::Matrix;
    remon::process::ProcessModel model = [&]() {
        if (cfg.a_matrix.empty() && cfg.dim == 1) {
            return remon::process::ProcessModel::scalar(cfg.a, cfg.q_u);
        }
        const std::size_t need = static_cast<std::size_t>(cfg.dim) * static_cast<std::size_t>(cfg.dim);
        if (cfg.a_matrix.size() != need) {
            throw std::invalid_argument("--A must supply exactly k*k entries (row-major)");
        }
        Matrix sys(cfg.dim, cfg.dim);
        for (int i = 0; i < cfg.dim; ++i) {
            for (int j = 0; j < cfg.dim; ++j) {
                sys(i, j) = cfg.a_matrix[static_cast<std::size_t>(i * cfg.dim + j)];
            }
        }
        Matrix noise;
        if (cfg.qu_matrix.empty()) {
            noise = cfg.q_u * Matrix::Identity(cfg.dim, cfg.dim);
        } else {
            if (cfg.qu_matrix.size() != need) {
                throw std::invalid_argument("--Qu must supply exactly k*k entries (row-major)");
            }
            noise.resize(cfg.dim, cfg.dim);
            for (int i = 0; i < cfg.dim; ++i) {
                for (int j = 0; j < cfg.dim; ++j) {
                    noise(i, j) = cfg.qu_matrix[static_cast<std::size_t>(i * cfg.dim + j)];
                }
            }
        }
        return remon::process::ProcessModel(std::move(sys), std::move(noise));
    }();

    remon::metrics::EvalOptions options;
    options.source_var =
        cfg.source_var == "receiver" ? SourceVarMode::ReceiverOutput : SourceVarMode::SteadyState;
    options.integer_blocklength = cfg.integer_n;
    options.explicit_q_w = cfg.explicit_qw;
    return SystemConfig{std::move(model), remon::coding::ChannelSpec(cfg.snr),
                        remon::timing::LinkTiming(cfg.alpha, cfg.beta, cfg.wait), options};
}

std::string front_companion_path(const std::string& path) {
    const std::string suffix = ".csv";
    if (path.size() > suffix.size() &&
        path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return path.substr(0, path.size() - suffix.size()) + ".front.csv";
    }
    return path + ".front.csv";
}

int run_point(const SystemConfig& sys, double d, double eps) {
    const TradeoffPoint point = remon::metrics::evaluate_point(sys, d, eps);
    std::cout << remon::csv::kSweepHeader << '\n' << remon::csv::sweep_row(point) << '\n';
    return 0;
}

struct GridFlags {
    double d_min = 0.0; // 0 = derive from the largest source mode
    double d_max = 0.0;
    int d_points = 60;
    std::string d_spacing = "log";
    double eps_min = 1e-4;
    double eps_max = 0.9;
    int eps_points = 60;
    std::string eps_spacing = "linear";
};

remon::pareto::SweepGrid build_grid(const GridFlags& flags, const SystemConfig& sys) {
    const remon::linalg::Vector eigs =
        remon::linalg::sym_eigenvalues(sys.model.steady_covariance());
    const double max_eig = eigs[eigs.size() - 1];
    if (!(max_eig > 0.0)) {
        throw remon::infeasible_error("sweep: the source has no positive mode to encode");
    }
    const double d_lo = flags.d_min > 0.0 ? flags.d_min : 1e-3 * max_eig;
    const double d_hi = flags.d_max > 0.0 ? flags.d_max : 0.99 * max_eig;
    const auto spacing = [](const std::string& s) {
        return s == "log" ? remon::pareto::Spacing::Logarithmic : remon::pareto::Spacing::Linear;
    };
    remon::pareto::SweepGrid grid;
    grid.d_values = remon::pareto::SweepGrid::axis(d_lo, d_hi, flags.d_points, spacing(flags.d_spacing));
    grid.eps_values =
        remon::pareto::SweepGrid::axis(flags.eps_min, flags.eps_max, flags.eps_points,
                                       spacing(flags.eps_spacing));
    return grid;
}

int run_sweep(const SystemConfig& sys, const GridFlags& flags, const std::string& out, int threads) {
    const remon::pareto::SweepGrid grid = build_grid(flags, sys);
    const std::vector<TradeoffPoint> points = remon::pareto::sweep(grid, sys, threads);
    remon::csv::write_sweep_csv(out, points);
    const std::vector<TradeoffPoint> front = remon::pareto::pareto_front(points);
    const std::string front_path = front_companion_path(out);
    remon::csv::write_sweep_csv(front_path, front);
    std::size_t feasible = 0;
    for (const auto& p : points) feasible += p.feasible ? 1 : 0;
    std::cout << "wrote " << points.size() << " rows (" << feasible << " feasible) to " << out
              << " and " << front.size() << " front rows to " << front_path << '\n';
    return 0;
}

int run_front(const std::string& in, std::string out) {
    const std::vector<TradeoffPoint> points = remon::csv::parse_sweep_csv(in);
    const std::vector<TradeoffPoint> front = remon::pareto::pareto_front(points);
    if (out.empty()) out = front_companion_path(in);
    remon::csv::write_sweep_csv(out, front);
    std::cout << "wrote " << front.size() << " front rows to " << out << '\n';
    return 0;
}

struct SimFlags {
    std::uint64_t seed = 12345;
    long paths = 200;
    long cycles = 500;
    double grid_step = 0.0; // 0 = attempt/50
    int threads = 1;
};

int run_simulate(const SystemConfig& sys, double d, double eps, const SimFlags& flags) {
    // Same pipeline as an analytic point so both rows share n and r.
    const remon::coding::CodingPoint cp =
        remon::coding::make_coding_point(sys.model, sys.channel, d, eps, sys.options.source_var);
    double n = cp.blocklength;
    if (sys.options.integer_blocklength) n = std::ceil(n);
    const double attempt = remon::timing::attempt_delay(sys.timing, n);
    if (sys.options.explicit_q_w >= 0.0 && sys.options.explicit_q_w > d) {
        throw remon::infeasible_error(
            "simulate: sample-noise variance q_w exceeds the tolerated distortion d");
    }
    remon::montecarlo::SimConfig cfg{sys.model,
                                     sys.options.explicit_q_w >= 0.0 ? sys.options.explicit_q_w : d,
                                     attempt,
                                     sys.timing.wait,
                                     eps,
                                     flags.cycles,
                                     flags.paths,
                                     flags.seed,
                                     flags.grid_step,
                                     flags.threads};
    const remon::montecarlo::SimResult res = remon::montecarlo::simulate(cfg);
    std::cout << remon::csv::kSimulateHeader << '\n'
              << remon::csv::simulate_row(d, eps, n, attempt, res) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// validate: analytic formulas against independent numeric and stochastic
// oracles, reported one line per check.

struct CheckReport {
    bool all_pass = true;

    void row(const std::string& name, double analytic, double oracle, double tol, bool pass) {
        std::printf("%-52s analytic=%-16.10g oracle=%-16.10g tol=%-10.3g %s\n", name.c_str(),
                    analytic, oracle, tol, pass ? "PASS" : "FAIL");
        all_pass = all_pass && pass;
    }
};

double series_delay_mean(double attempt, double eps) {
    double sum = 0.0;
    double weight = 1.0 - eps;
    for (long m = 0; m < 4000; ++m) {
        sum += weight * (static_cast<double>(m) + 1.0) * attempt;
        weight *= eps;
        if (weight * (static_cast<double>(m) + 2.0) * attempt < 1e-14) break;
    }
    return sum;
}

double series_delay_second_moment(double attempt, double eps) {
    double sum = 0.0;
    double weight = 1.0 - eps;
    for (long m = 0; m < 4000; ++m) {
        const double delay = (static_cast<double>(m) + 1.0) * attempt;
        sum += weight * delay * delay;
        weight *= eps;
        if (weight * std::pow((static_cast<double>(m) + 2.0) * attempt, 2) < 1e-14) break;
    }
    return sum;
}

void check_closed_form_vs_series(CheckReport* report, bool perturb) {
    double worst = 0.0;
    double worst_closed = 0.0;
    double worst_series = 0.0;
    const double drifts[] = {-0.02, -0.5};
    const double intensities[] = {1.0, 2.0};
    const double noises[] = {0.1, 1.0, 10.0};
    const double attempts[] = {0.5, 5.0, 50.0};
    const double waits[] = {0.0, 1.0};
    const double probs[] = {0.0, 0.1, 0.5, 0.9};
    for (double a : drifts) {
        for (double q_u : intensities) {
            const remon::process::ScalarProcess sp(a, q_u);
            const remon::process::ProcessModel model = remon::process::ProcessModel::scalar(a, q_u);
            for (double q_w : noises) {
                for (double attempt : attempts) {
                    for (double wait : waits) {
                        for (double eps : probs) {
                            const auto closed =
                                remon::metrics::avg_mse_scalar(sp, q_w, attempt, wait, eps);
                            const auto series =
                                remon::metrics::avg_mse_general(model, q_w, attempt, wait, eps);
                            const double scale = perturb ? 1.0 + 1e-6 : 1.0;
                            const double diff = std::fabs(closed.mse * scale - series.mse) /
                                                (1.0 + std::fabs(series.mse));
                            if (diff > worst) {
                                worst = diff;
                                worst_closed = closed.mse * scale;
                                worst_series = series.mse;
                            }
                        }
                    }
                }
            }
        }
    }
    report->row("time-average MSE closed form vs quadrature series", worst_closed, worst_series,
                1e-8, worst <= 1e-8);
}

void check_blocklength_residual(CheckReport* report, const SystemConfig& sys) {
    std::mt19937_64 gen = remon::rng::make_stream(2024, 7);
    const remon::linalg::Vector eigs =
        remon::linalg::sym_eigenvalues(sys.model.steady_covariance());
    const double max_eig = eigs[eigs.size() - 1];
    double worst = 0.0;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    long tested = 0;
    while (tested < 1000) {
        const double d = max_eig * std::pow(10.0, -3.0 * remon::rng::uniform_open(gen));
        const double eps = remon::rng::uniform_open(gen);
        remon::coding::CodingPoint cp;
        try {
            cp = remon::coding::make_coding_point(sys.model, sys.channel, d, eps);
        } catch (const remon::infeasible_error&) {
            continue;
        }
        ++tested;
        const double k = static_cast<double>(cp.source_dim);
        const double lhs = cp.blocklength * cp.capacity - k * cp.rate;
        const double rhs =
            std::sqrt(cp.blocklength * cp.channel_dispersion + k * cp.source_dispersion) *
            remon::coding::q_inv(eps);
        const double resid =
            std::fabs(lhs - rhs) / std::max(1.0, cp.blocklength * cp.capacity);
        if (resid > worst) {
            worst = resid;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
    }
    report->row("blocklength residual, 1000 random feasible cells", worst_lhs, worst_rhs, 1e-9,
                worst <= 1e-9);

    const remon::coding::CodingPoint half =
        remon::coding::make_coding_point(sys.model, sys.channel, 1.0, 0.5);
    const double expected = static_cast<double>(half.source_dim) * half.rate / half.capacity;
    const double diff = std::fabs(half.blocklength - expected) / expected;
    report->row("blocklength at eps = 0.5 equals k*R/C", half.blocklength, expected, 1e-12,
                diff <= 1e-12);
}

void check_geometric_moments(CheckReport* report) {
    double worst = 0.0;
    double worst_closed = 0.0;
    double worst_series = 0.0;
    for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        for (double attempt : {0.1, 1.0, 10.0}) {
            const auto moments = remon::timing::success_delay_moments(attempt, eps);
            const double mean = series_delay_mean(attempt, eps);
            const double second = series_delay_second_moment(attempt, eps);
            const double diff = std::max(std::fabs(moments.mean - mean) / mean,
                                         std::fabs(moments.second_moment - second) / second);
            if (diff > worst) {
                worst = diff;
                worst_closed = moments.second_moment;
                worst_series = second;
            }
        }
    }
    report->row("retransmission delay moments vs truncated series", worst_closed, worst_series,
                1e-10, worst <= 1e-10);

    std::mt19937_64 gen = remon::rng::make_stream(99, 3);
    const double eps = 0.5;
    double sum = 0.0;
    double sum_sq = 0.0;
    const long draws = 1000000;
    for (long i = 0; i < draws; ++i) {
        const double v = remon::timing::sample_success_delay(1.0, eps, gen);
        sum += v;
        sum_sq += v * v;
    }
    const auto moments = remon::timing::success_delay_moments(1.0, eps);
    const double mean = sum / static_cast<double>(draws);
    const double var = sum_sq / static_cast<double>(draws) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(draws));
    report->row("sampled delay mean within 3 standard errors", moments.mean, mean, 3.0 * se,
                std::fabs(mean - moments.mean) <= 3.0 * se);
}

void check_transition_identity(CheckReport* report) {
    double worst = 0.0;
    double worst_lyap = 0.0;
    double worst_quad = 0.0;
    const auto compare = [&](const remon::process::ProcessModel& model, double h) {
        const remon::process::Transition tr = remon::process::transition(model, h);
        const int dim = model.dim();
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const double quad = remon::linalg::quadrature(
                    [&](double mu) {
                        const remon::linalg::Matrix e =
                            remon::linalg::mat_exp(model.A(), h - mu);
                        return (e * model.Q_u() * e.transpose())(i, j);
                    },
                    0.0, h, 1e-11);
                const double diff = std::fabs(tr.Sigma(i, j) - quad);
                if (diff > worst) {
                    worst = diff;
                    worst_lyap = tr.Sigma(i, j);
                    worst_quad = quad;
                }
            }
        }
    };
    compare(remon::process::ProcessModel::scalar(-0.02, 1.0), 10.0);
    remon::linalg::Matrix sys(2, 2);
    sys << -0.3, 0.2, -0.1, -0.5;
    remon::linalg::Matrix noise(2, 2);
    noise << 1.0, 0.2, 0.2, 0.8;
    compare(remon::process::ProcessModel(sys, noise), 3.0);
    report->row("transition covariance vs quadrature", worst_lyap, worst_quad, 1e-9,
                worst <= 1e-9);
}

void check_estimator_probe(CheckReport* report, const SystemConfig& sys) {
    std::mt19937_64 gen = remon::rng::make_stream(31, 1);
    remon::rng::GaussianSampler gauss;
    const int dim = sys.model.dim();
    double worst_drop = 0.0;
    double base_at_worst = 0.0;
    double probe_at_worst = 0.0;
    for (double tau : {0.0, 1.0, 5.0, 10.0, 50.0}) {
        for (double q_w : {0.5, 5.0}) {
            const remon::linalg::Matrix gain =
                remon::estimation::estimator_gain(sys.model, q_w, tau);
            const double base =
                remon::estimation::mse_channel_with_gain(sys.model, q_w, tau, gain);
            for (int trial = 0; trial < 100; ++trial) {
                remon::linalg::Matrix delta(dim, dim);
                for (int i = 0; i < dim; ++i) {
                    for (int j = 0; j < dim; ++j) delta(i, j) = gauss(gen);
                }
                delta *= 1e-3 / delta.norm();
                const double probe =
                    remon::estimation::mse_channel_with_gain(sys.model, q_w, tau, gain + delta);
                const double drop = base - probe;
                if (drop > worst_drop) {
                    worst_drop = drop;
                    base_at_worst = base;
                    probe_at_worst = probe;
                }
            }
        }
    }
    report->row("estimator gain is a local minimum of the sample-noise MSE", base_at_worst,
                probe_at_worst, 1e-12, worst_drop <= 1e-12);
}

void check_sweep_structure(CheckReport* report, const SystemConfig& sys, int threads) {
    const remon::pareto::SweepGrid grid = build_grid(GridFlags{}, sys);
    const std::vector<TradeoffPoint> points = remon::pareto::sweep(grid, sys, threads);
    const remon::pareto::BoundaryCurves curves = remon::pareto::boundary_curves(points);

    // Shape checks tolerate sub-visual wobble: 0.1% of each series' range.
    const auto series_slack = [](const std::vector<remon::pareto::BoundaryPoint>& s) {
        double lo = s.front().value, hi = s.front().value;
        for (const auto& b : s) {
            lo = std::min(lo, b.value);
            hi = std::max(hi, b.value);
        }
        return 1e-3 * (hi - lo);
    };
    const double delay_slack = series_slack(curves.mse_delay);
    bool delay_monotone = true;
    for (std::size_t i = 1; i < curves.mse_delay.size(); ++i) {
        delay_monotone &= curves.mse_delay[i].value >= curves.mse_delay[i - 1].value - delay_slack;
    }
    const double channel_slack = series_slack(curves.mse_channel);
    bool channel_monotone = true;
    for (std::size_t i = 1; i < curves.mse_channel.size(); ++i) {
        channel_monotone &=
            curves.mse_channel[i].value <= curves.mse_channel[i - 1].value + channel_slack;
    }
    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < curves.mse_total.size(); ++i) {
        if (curves.mse_total[i].value < curves.mse_total[min_idx].value) min_idx = i;
    }
    const bool interior = min_idx > 0 && min_idx + 1 < curves.mse_total.size();
    const std::vector<TradeoffPoint> front = remon::pareto::pareto_front(points);

    report->row("boundary: staleness MSE nondecreasing in AoI", delay_monotone ? 1.0 : 0.0, 1.0,
                0.0, delay_monotone);
    report->row("boundary: sample-noise MSE nonincreasing in AoI", channel_monotone ? 1.0 : 0.0,
                1.0, 0.0, channel_monotone);
    report->row("boundary: total MSE minimized strictly inside", interior ? 1.0 : 0.0, 1.0, 0.0,
                interior);
    report->row("Pareto front exposes a genuine trade-off (>= 2 points)",
                static_cast<double>(front.size()), 2.0, 0.0, front.size() >= 2);

    // Determinism: identical rows from a repeated run on one thread.
    const std::vector<TradeoffPoint> again = remon::pareto::sweep(grid, sys, 1);
    bool identical = again.size() == points.size();
    for (std::size_t i = 0; identical && i < points.size(); ++i) {
        identical = remon::csv::sweep_row(points[i]) == remon::csv::sweep_row(again[i]);
    }
    report->row("sweep rows byte-identical across runs and thread counts", identical ? 1.0 : 0.0,
                1.0, 0.0, identical);
}

void check_monte_carlo(CheckReport* report, const SystemConfig& sys, double d, double eps,
                       const SimFlags& flags) {
    // Reference attempt delay; with eps = 0 coding is degenerate, so the
    // dispersion-free blocklength k*R/C pins r for the timing checks.
    const remon::coding::CodingPoint cp = remon::coding::make_coding_point(
        sys.model, sys.channel, d, eps > 0.0 ? eps : 0.5, sys.options.source_var);
    double n = cp.blocklength;
    if (eps == 0.0) n = static_cast<double>(cp.source_dim) * cp.rate / cp.capacity;
    if (sys.options.integer_blocklength) n = std::ceil(n);
    const double attempt = remon::timing::attempt_delay(sys.timing, n);
    const double q_w = sys.options.explicit_q_w >= 0.0 ? sys.options.explicit_q_w : d;

    remon::montecarlo::SimConfig cfg{sys.model, q_w,         attempt,    sys.timing.wait,
                                     eps,       flags.cycles, flags.paths, flags.seed,
                                     0.0,       flags.threads};
    const remon::montecarlo::SimResult res = remon::montecarlo::simulate(cfg);

    double mse_analytic;
    if (sys.model.dim() == 1) {
        const remon::process::ScalarProcess sp(sys.model.A()(0, 0), sys.model.Q_u()(0, 0));
        mse_analytic =
            remon::metrics::avg_mse_scalar(sp, q_w, attempt, sys.timing.wait, eps).mse;
    } else {
        mse_analytic =
            remon::metrics::avg_mse_general(sys.model, q_w, attempt, sys.timing.wait, eps).mse;
    }
    const double aoi_analytic = remon::metrics::avg_aoi(attempt, sys.timing.wait, eps);

    report->row("simulated time-average MSE within 3 standard errors", mse_analytic, res.mse_mean,
                3.0 * res.mse_se, std::fabs(res.mse_mean - mse_analytic) <= 3.0 * res.mse_se);
    report->row("simulated time-average AoI within 3 standard errors", aoi_analytic, res.aoi_mean,
                3.0 * res.aoi_se, std::fabs(res.aoi_mean - aoi_analytic) <= 3.0 * res.aoi_se);

    // Determinism: re-running with a different thread count must reproduce
    // every field bit for bit.
    remon::montecarlo::SimConfig small = cfg;
    small.paths = std::min<long>(cfg.paths, 8);
    small.horizon_cycles = std::min<long>(cfg.horizon_cycles, 50);
    small.threads = 1;
    const remon::montecarlo::SimResult one = remon::montecarlo::simulate(small);
    small.threads = 3;
    const remon::montecarlo::SimResult three = remon::montecarlo::simulate(small);
    const bool identical = one.mse_mean == three.mse_mean && one.aoi_mean == three.aoi_mean &&
                           one.mse_delay_mean == three.mse_delay_mean &&
                           one.mse_channel_mean == three.mse_channel_mean &&
                           one.mse_se == three.mse_se && one.aoi_se == three.aoi_se;
    report->row("simulation bit-identical across thread counts", one.mse_mean, three.mse_mean, 0.0,
                identical);
}

int run_validate(const SystemConfig& sys, double d, double eps, const SimFlags& flags,
                 bool perturb) {
    CheckReport report;
    check_closed_form_vs_series(&report, perturb);
    check_blocklength_residual(&report, sys);
    check_geometric_moments(&report);
    check_transition_identity(&report);
    check_estimator_probe(&report, sys);
    check_sweep_structure(&report, sys, flags.threads);
    check_monte_carlo(&report, sys, d, eps, flags);
    std::printf("%s\n", report.all_pass ? "all checks passed" : "CHECKS FAILED");
    return report.all_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Time-average estimation MSE and Age-of-Information for a remotely "
        "monitored Gauss-Markov process over a finite-blocklength AWGN link.\n"
        "Units: alpha, beta, s, r, AoI in seconds; MSE in state-variance units."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style key=value file");

    const CLI::Validator open_unit(
        [](std::string& value) -> std::string {
            double v = 0.0;
            try {
                v = std::stod(value);
            } catch (const std::exception&) {
                return "value is not a number";
            }
            if (!(v > 0.0 && v < 1.0)) return "must lie strictly inside (0, 1)";
            return {};
        },
        "FLOAT in (0,1)");
    const CLI::Validator unit_with_zero(
        [](std::string& value) -> std::string {
            double v = 0.0;
            try {
                v = std::stod(value);
            } catch (const std::exception&) {
                return "value is not a number";
            }
            if (!(v >= 0.0 && v < 1.0)) return "must lie in [0, 1)";
            return {};
        },
        "FLOAT in [0,1)");

    CommonConfig point_cfg;
    double point_d = 1.0;
    double point_eps = 0.5;
    CLI::App* point_cmd = app.add_subcommand("point", "Evaluate one (d, eps) operating point");
    add_common_flags(point_cmd, &point_cfg);
    point_cmd->add_option("--d", point_d, "Tolerated distortion, > 0")
        ->required()
        ->check(CLI::PositiveNumber);
    point_cmd->add_option("--eps", point_eps, "Excess-distortion probability")
        ->required()
        ->check(open_unit);

    CommonConfig sweep_cfg;
    GridFlags grid_flags;
    std::string sweep_out = "sweep.csv";
    int sweep_threads = 1;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Sweep a (d, eps) grid and write CSV plus its Pareto front");
    add_common_flags(sweep_cmd, &sweep_cfg);
    sweep_cmd->add_option("--d-min", grid_flags.d_min, "Smallest distortion (default: 1e-3 * max source mode)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--d-max", grid_flags.d_max, "Largest distortion (default: 0.99 * max source mode)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--d-points", grid_flags.d_points, "Distortion grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--d-spacing", grid_flags.d_spacing, "Distortion axis spacing")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
    sweep_cmd->add_option("--eps-min", grid_flags.eps_min, "Smallest eps")
        ->check(open_unit)
        ->capture_default_str();
    sweep_cmd->add_option("--eps-max", grid_flags.eps_max, "Largest eps")
        ->check(open_unit)
        ->capture_default_str();
    sweep_cmd->add_option("--eps-points", grid_flags.eps_points, "Eps grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--eps-spacing", grid_flags.eps_spacing, "Eps axis spacing")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_threads, "Worker threads (results are thread-count independent)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string front_in;
    std::string front_out;
    CLI::App* front_cmd =
        app.add_subcommand("front", "Extract the Pareto front from an existing sweep CSV");
    front_cmd->add_option("--in", front_in, "Sweep CSV to read")->required();
    front_cmd->add_option("--out", front_out, "Front CSV to write (default: <in>.front.csv)");

    CommonConfig sim_cfg;
    double sim_d = 1.0;
    double sim_eps = 0.1;
    SimFlags sim_flags;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo estimate of one (d, eps) operating point");
    add_common_flags(sim_cmd, &sim_cfg);
    sim_cmd->add_option("--d", sim_d, "Tolerated distortion, > 0")
        ->required()
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--eps", sim_eps, "Excess-distortion probability")
        ->required()
        ->check(open_unit);
    sim_cmd->add_option("--seed", sim_flags.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--paths", sim_flags.paths, "Independent sample paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--cycles", sim_flags.cycles, "Success cycles per path (after 10 burn-in)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--grid-step", sim_flags.grid_step,
                        "MSE integration step in seconds (default r/50, must be <= r/10)")
        ->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--threads", sim_flags.threads, "Worker threads (results are thread-count independent)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CommonConfig val_cfg;
    double val_d = 1.0;
    double val_eps = 0.1;
    SimFlags val_flags;
    bool perturb = false;
    CLI::App* val_cmd = app.add_subcommand(
        "validate", "Cross-check closed forms against numeric and Monte Carlo oracles");
    add_common_flags(val_cmd, &val_cfg);
    val_cmd->add_option("--d", val_d, "Distortion for the Monte Carlo cross-check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    val_cmd->add_option("--eps", val_eps, "Eps for the Monte Carlo cross-check (0 allowed)")
        ->check(unit_with_zero)
        ->capture_default_str();
    val_cmd->add_option("--seed", val_flags.seed, "RNG seed")->capture_default_str();
    val_cmd->add_option("--paths", val_flags.paths, "Monte Carlo paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    val_cmd->add_option("--cycles", val_flags.cycles, "Cycles per path")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    val_cmd->add_option("--threads", val_flags.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    val_cmd->add_flag("--self-test-perturb", perturb,
                      "Deliberately skew one formula; the report must then fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*point_cmd) return run_point(build_system(point_cfg), point_d, point_eps);
        if (*sweep_cmd) return run_sweep(build_system(sweep_cfg), grid_flags, sweep_out, sweep_threads);
        if (*front_cmd) return run_front(front_in, front_out);
        if (*sim_cmd) return run_simulate(build_system(sim_cfg), sim_d, sim_eps, sim_flags);
        if (*val_cmd) return run_validate(build_system(val_cfg), val_d, val_eps, val_flags, perturb);
    } catch (const remon::infeasible_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
