#include "reflkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "reflkit/errors.hpp"

namespace reflkit {

void SimConfig::validate() const {
    if (!drift.eval) throw std::invalid_argument("SimConfig: drift has no evaluator");
    // sigma == 0 is the deterministic limit, used heavily in tests.
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("SimConfig: sigma must be >= 0, got " + std::to_string(sigma));
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("SimConfig: delta must be > 0, got " + std::to_string(delta));
    }
    const double s = start();
    if (!std::isfinite(s) || !barrier.contains(s)) {
        throw std::invalid_argument("SimConfig: x0=" + std::to_string(s) +
                                    " outside the barrier domain");
    }
}

double sample_sup_with_drift(double drift_rate, double sigma, double delta, double w_increment,
                             double uniform) {
    if (!std::isfinite(drift_rate) || !std::isfinite(sigma) || !std::isfinite(delta) ||
        !std::isfinite(w_increment) || !std::isfinite(uniform)) {
        throw std::invalid_argument("sample_sup_with_drift: non-finite input");
    }
    if (!(delta > 0.0)) throw std::invalid_argument("sample_sup_with_drift: delta must be > 0");
    if (sigma < 0.0) throw std::invalid_argument("sample_sup_with_drift: sigma must be >= 0");
    if (!(uniform > 0.0 && uniform <= 1.0)) {
        throw std::invalid_argument("sample_sup_with_drift: uniform must lie in (0, 1]");
    }
    const double y = drift_rate * delta + sigma * w_increment;
    const double spread = -2.0 * sigma * sigma * delta * std::log(uniform);
    return 0.5 * (y + std::sqrt(y * y + spread));
}

StepResult step(double state, const SimConfig& cfg, const StepNoise& noise,
                std::size_t step_index) {
    const double b = cfg.drift(state);
    if (!std::isfinite(b)) {
        throw simulation_diverged(step_index, "non-finite drift at x=" + std::to_string(state));
    }
    const double displacement = b * cfg.delta + cfg.sigma * noise.w_increment;
    if (!std::isfinite(displacement)) {
        throw simulation_diverged(step_index, "non-finite displacement");
    }

    const double l = cfg.barrier.lower();
    const double a_sup =
        sample_sup_with_drift(-b, cfg.sigma, cfg.delta, -noise.w_increment, noise.u_lower);
    const double d_lower = std::max(0.0, a_sup - (state - l));

    double d_upper = 0.0;
    const auto u = cfg.barrier.upper();
    if (u && d_lower == 0.0) {
        const double b_sup =
            sample_sup_with_drift(b, cfg.sigma, cfg.delta, noise.w_increment, noise.u_upper);
        d_upper = std::max(0.0, b_sup + (state - *u));
    }

    double next = state + displacement + d_lower - d_upper;
    if (!std::isfinite(next)) throw simulation_diverged(step_index, "non-finite state");

    if (next < l) {
        if (l - next > kClampTolerance) {
            throw simulation_diverged(step_index,
                                      "state " + std::to_string(next) + " below lower barrier");
        }
        next = l;
    }
    if (u && next > *u) {
        if (next - *u > kClampTolerance) {
            throw simulation_diverged(step_index,
                                      "state " + std::to_string(next) + " above upper barrier");
        }
        next = *u;
    }
    return {next, d_lower, d_upper};
}

StepResult step(double state, const SimConfig& cfg, NoiseSource& noise, std::size_t step_index) {
    return step(state, cfg, noise.draw(cfg.delta), step_index);
}

namespace {

template <class NextNoise>
SamplePath run(const SimConfig& cfg, NextNoise&& next_noise) {
    cfg.validate();

    double state = cfg.start();
    for (std::size_t k = 0; k < cfg.burn_in; ++k) {
        state = step(state, cfg, next_noise(), k).next_state;
    }

    SamplePath path;
    path.delta = cfg.delta;
    path.sigma = cfg.sigma;
    path.seed = cfg.seed;
    path.barrier = cfg.barrier;
    const std::size_t points = cfg.n_steps + 1;
    path.times.resize(points);
    path.x.resize(points);
    path.l_reg.resize(points);
    path.r_reg.resize(points);

    path.times[0] = 0.0;
    path.x[0] = state;
    path.l_reg[0] = 0.0;
    path.r_reg[0] = 0.0;
    for (std::size_t k = 0; k < cfg.n_steps; ++k) {
        const StepResult r = step(state, cfg, next_noise(), cfg.burn_in + k);
        state = r.next_state;
        path.times[k + 1] = static_cast<double>(k + 1) * cfg.delta;
        path.x[k + 1] = state;
        path.l_reg[k + 1] = path.l_reg[k] + r.d_lower;
        path.r_reg[k + 1] = path.r_reg[k] + r.d_upper;
    }
    return path;
}

}  // namespace

SamplePath simulate_path(const SimConfig& cfg) {
    NoiseSource source(cfg.seed);
    return run(cfg, [&] { return source.draw(cfg.delta); });
}

SamplePath simulate_fine(const SimConfig& cfg, std::size_t refine) {
    if (refine < 1) throw std::invalid_argument("simulate_fine: refine must be >= 1");
    SimConfig fine = cfg;
    fine.delta = cfg.delta / static_cast<double>(refine);
    fine.n_steps = cfg.n_steps * refine;
    fine.burn_in = cfg.burn_in * refine;
    return simulate_path(fine);
}

SamplePath simulate_driven(const SimConfig& cfg, std::span<const StepNoise> noise) {
    if (noise.size() != cfg.burn_in + cfg.n_steps) {
        throw std::invalid_argument("simulate_driven: expected " +
                                    std::to_string(cfg.burn_in + cfg.n_steps) +
                                    " noise entries, got " + std::to_string(noise.size()));
    }
    std::size_t next = 0;
    return run(cfg, [&] { return noise[next++]; });
}

}  // namespace reflkit
