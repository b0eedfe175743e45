#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "reflkit/model.hpp"
#include "reflkit/rng.hpp"

namespace reflkit {

/// Out-of-domain overshoot absorbed by clamping; anything larger is an error.
inline constexpr double kClampTolerance = 1e-12;

struct SimConfig {
    DriftSpec drift;
    double sigma = 0.2;
    BarrierConfig barrier = BarrierConfig::two_sided(0.0, 3.0);
    std::size_t n_steps = 0;
    double delta = 0.01;
    std::optional<double> x0;  // defaults to barrier.default_start()
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;

    double start() const { return x0.value_or(barrier.default_start()); }
    void validate() const;
};

/// Randomness consumed by one step: the Brownian increment over [t, t + Delta]
/// and one uniform per barrier for the running-supremum draws.
struct StepNoise {
    double w_increment = 0.0;
    double u_lower = 1.0;
    double u_upper = 1.0;
};

struct StepResult {
    double next_state;
    double d_lower;
    double d_upper;
};

/// Draws StepNoise from a counter-based stream. Every step consumes both
/// uniforms, so the stream position never depends on which barrier was hit.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : rng_(seed) {}

    StepNoise draw(double delta) {
        StepNoise n;
        n.w_increment = std::sqrt(delta) * normal_(rng_);
        n.u_lower = uniform_open_closed(rng_);
        n.u_upper = uniform_open_closed(rng_);
        return n;
    }

private:
    CounterRng rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Running supremum over one step of s -> drift_rate * s + sigma * W_s, given
/// the endpoint W_delta = w_increment, by inverse transform of the
/// Brownian-bridge maximum:
///     M = (y + sqrt(y^2 - 2 sigma^2 delta ln U)) / 2,   y = drift_rate delta + sigma w.
double sample_sup_with_drift(double drift_rate, double sigma, double delta, double w_increment,
                             double uniform);

/// One Euler step with reflection. The lower regulator increment is
///     dL = max(0, A - (state - l)),  A = sup of the negated displacement,
/// and, in two-sided mode when dL == 0,
///     dR = max(0, B + (state - u)),  B = sup of the displacement.
/// Throws simulation_diverged (carrying `step_index`) on a non-finite state.
StepResult step(double state, const SimConfig& cfg, const StepNoise& noise,
                std::size_t step_index = 0);
StepResult step(double state, const SimConfig& cfg, NoiseSource& noise,
                std::size_t step_index = 0);

/// n_steps + 1 grid points after discarding burn_in steps. Deterministic in
/// cfg.seed.
SamplePath simulate_path(const SimConfig& cfg);

/// Same recursion with step Delta/refine over the same horizon, standing in
/// for a continuously observed path. refine == 1 reproduces simulate_path.
SamplePath simulate_fine(const SimConfig& cfg, std::size_t refine);

/// Path driven by caller-supplied noise (burn_in + n_steps entries). Lets
/// tests share one Brownian driver across refinements.
SamplePath simulate_driven(const SimConfig& cfg, std::span<const StepNoise> noise);

}  // namespace reflkit
