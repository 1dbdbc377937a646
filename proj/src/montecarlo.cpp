#include "remon/montecarlo.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "remon/estimation.hpp"
#include "remon/rng.hpp"

namespace remon::montecarlo {

namespace {

using linalg::Matrix;
using linalg::Vector;

// Symmetric PSD square root; tolerates eigensolver jitter around zero.
Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("simulate: eigendecomposition failed");
    }
    Vector vals = solver.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = std::sqrt(std::max(vals[i], 0.0));
    return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().transpose();
}

struct Step {
    Matrix phi;
    Matrix noise; // factor of the exact transition covariance over the step
};

struct PathTotals {
    double time = 0.0;
    double mse = 0.0;
    double aoi = 0.0;
    double delay = 0.0;
    double channel = 0.0;
};

class PathRunner {
  public:
    PathRunner(const SimConfig& cfg, double grid_step, const Matrix& steady_factor,
               const Matrix& shrink)
        : cfg_(cfg),
          grid_step_(grid_step),
          steady_factor_(steady_factor),
          shrink_(shrink),
          dim_(cfg.model.dim()),
          x_(dim_),
          xhat_(dim_),
          wref_(dim_),
          sample_state_(dim_),
          sample_shrunk_(dim_),
          draw_(dim_),
          scratch_(dim_) {}

    PathTotals run(long path_index) {
        gen_ = rng::make_stream(cfg_.seed, static_cast<std::uint64_t>(path_index));
        gauss_ = rng::GaussianSampler();
        PathTotals totals;

        // The path starts at an ACK instant whose sample was taken one
        // attempt delay earlier, with the true state drawn from steady state.
        fill_gaussian();
        x_.noalias() = steady_factor_ * draw_;
        capture_sample();
        double carry = cfg_.attempt; // distance from the state's position to cycle start

        const long total_cycles = 10 + cfg_.horizon_cycles;
        for (long cycle = 0; cycle < total_cycles; ++cycle) {
            const bool record = cycle >= 10;
            const double failures =
                static_cast<double>(rng::geometric_failures(cfg_.eps, gen_));
            const double cycle_len = cfg_.wait + (failures + 1.0) * cfg_.attempt;
            const long steps = std::max<long>(1, static_cast<long>(std::ceil(cycle_len / grid_step_)));
            const double h = cycle_len / static_cast<double>(steps);
            const double sample_off = cycle_len - cfg_.attempt;
            if (std::fabs((cycle_len - sample_off) - cfg_.attempt) > 1e-9 * cfg_.attempt) {
                throw std::runtime_error("simulate: age did not reset to the attempt delay");
            }

            // Display trackers at the first grid midpoint, age r + h/2.
            const Step& init = step_for(cfg_.attempt + 0.5 * h);
            xhat_.noalias() = init.phi * sample_shrunk_;
            wref_.noalias() = init.phi * sample_state_;
            const Step& grid = step_for(h);

            double pos = -carry;
            bool sample_done = false;
            for (long i = 0; i < steps; ++i) {
                const double g = (static_cast<double>(i) + 0.5) * h;
                if (!sample_done && sample_off <= g) {
                    advance_state(sample_off - pos);
                    pos = sample_off;
                    capture_sample();
                    sample_done = true;
                }
                advance_state(g - pos);
                pos = g;
                if (record) {
                    totals.mse += (x_ - xhat_).squaredNorm() * h;
                    totals.delay += (x_ - wref_).squaredNorm() * h;
                    totals.channel += (wref_ - xhat_).squaredNorm() * h;
                    totals.aoi += (cfg_.attempt + g) * h;
                }
                if (i + 1 < steps) {
                    scratch_.noalias() = grid.phi * xhat_;
                    xhat_.swap(scratch_);
                    scratch_.noalias() = grid.phi * wref_;
                    wref_.swap(scratch_);
                }
            }
            if (!sample_done) throw std::runtime_error("simulate: sample instant missed");
            if (record) totals.time += cycle_len;
            carry = cycle_len - pos;
        }
        return totals;
    }

  private:
    void fill_gaussian() {
        for (int i = 0; i < dim_; ++i) draw_[i] = gauss_(gen_);
    }

    // Records the freshest sample: true state and the shrunk noisy reading.
    void capture_sample() {
        sample_state_ = x_;
        fill_gaussian();
        const double noise_sd = std::sqrt(cfg_.q_w);
        sample_shrunk_.noalias() = shrink_ * (x_ + noise_sd * draw_);
    }

    void advance_state(double delta) {
        if (delta <= 0.0) return; // rounding may produce a zero-length step
        const Step& st = step_for(delta);
        fill_gaussian();
        scratch_.noalias() = st.phi * x_;
        scratch_.noalias() += st.noise * draw_;
        x_.swap(scratch_);
    }

    const Step& step_for(double delta) {
        auto it = steps_.find(delta);
        if (it == steps_.end()) {
            const process::Transition tr = process::transition(cfg_.model, delta);
            it = steps_.emplace(delta, Step{tr.Phi, psd_sqrt(tr.Sigma)}).first;
        }
        return it->second;
    }

    const SimConfig& cfg_;
    double grid_step_;
    const Matrix& steady_factor_;
    const Matrix& shrink_;
    int dim_;
    std::mt19937_64 gen_;
    rng::GaussianSampler gauss_;
    std::map<double, Step> steps_;
    Vector x_, xhat_, wref_, sample_state_, sample_shrunk_, draw_, scratch_;
};

// Pooled ratio estimate with a linearized standard error across paths.
void ratio_with_se(const std::vector<double>& num, const std::vector<double>& den, double* mean,
                   double* se) {
    const std::size_t count = num.size();
    double num_sum = 0.0;
    double den_sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        num_sum += num[i];
        den_sum += den[i];
    }
    const double ratio = num_sum / den_sum;
    *mean = ratio;
    if (count < 2) {
        *se = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double den_mean = den_sum / static_cast<double>(count);
    double resid = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double e = num[i] - ratio * den[i];
        resid += e * e;
    }
    const double n = static_cast<double>(count);
    *se = std::sqrt(resid / (n - 1.0) / n) / den_mean;
}

} // namespace

void SimConfig::validate() const {
    if (!(q_w >= 0.0) || !std::isfinite(q_w)) {
        throw std::invalid_argument("SimConfig: q_w must be finite and >= 0");
    }
    if (!(attempt > 0.0) || !std::isfinite(attempt)) {
        throw std::invalid_argument("SimConfig: attempt must be finite and > 0");
    }
    if (!(wait >= 0.0) || !std::isfinite(wait)) {
        throw std::invalid_argument("SimConfig: wait must be finite and >= 0");
    }
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("SimConfig: eps must be in [0, 1)");
    }
    if (horizon_cycles < 1) throw std::invalid_argument("SimConfig: horizon_cycles must be >= 1");
    if (paths < 1) throw std::invalid_argument("SimConfig: paths must be >= 1");
    if (mse_grid_step < 0.0 || !std::isfinite(mse_grid_step)) {
        throw std::invalid_argument("SimConfig: mse_grid_step must be finite and >= 0");
    }
    if (mse_grid_step > attempt / 10.0) {
        throw std::invalid_argument("SimConfig: mse_grid_step must be <= attempt/10");
    }
    if (threads < 1) throw std::invalid_argument("SimConfig: threads must be >= 1");
}

SimResult simulate(const SimConfig& cfg) {
    cfg.validate();
    const double grid_step = cfg.mse_grid_step > 0.0 ? cfg.mse_grid_step : cfg.attempt / 50.0;
    const Matrix steady_factor = psd_sqrt(cfg.model.steady_covariance());
    // Shrinkage applied to a fresh reading; the age-dependent part of the
    // estimator is the deterministic propagation the trackers perform.
    const Matrix shrink = estimation::estimator_gain(cfg.model, cfg.q_w, 0.0);

    std::vector<PathTotals> totals(static_cast<std::size_t>(cfg.paths));
    const int workers = static_cast<int>(std::min<long>(cfg.threads, cfg.paths));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const long chunk = (cfg.paths + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = static_cast<long>(w) * chunk;
        const long hi = std::min<long>(lo + chunk, cfg.paths);
        pool.emplace_back([&, w, lo, hi]() {
            try {
                PathRunner runner(cfg, grid_step, steady_factor, shrink);
                for (long p = lo; p < hi; ++p) {
                    totals[static_cast<std::size_t>(p)] = runner.run(p);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    const std::size_t count = totals.size();
    std::vector<double> time(count), mse(count), aoi(count), delay(count), channel(count);
    for (std::size_t i = 0; i < count; ++i) {
        time[i] = totals[i].time;
        mse[i] = totals[i].mse;
        aoi[i] = totals[i].aoi;
        delay[i] = totals[i].delay;
        channel[i] = totals[i].channel;
    }
    SimResult res{};
    ratio_with_se(mse, time, &res.mse_mean, &res.mse_se);
    ratio_with_se(aoi, time, &res.aoi_mean, &res.aoi_se);
    ratio_with_se(delay, time, &res.mse_delay_mean, &res.mse_delay_se);
    ratio_with_se(channel, time, &res.mse_channel_mean, &res.mse_channel_se);
    res.cycles_observed = cfg.paths * cfg.horizon_cycles;
    return res;
}

} // namespace remon::montecarlo
