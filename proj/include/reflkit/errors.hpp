#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reflkit {

/// A simulated path left the representable range: non-finite state, or an
/// overshoot of the barrier domain larger than the floating-point clamp guard.
class simulation_diverged : public std::runtime_error {
public:
    simulation_diverged(std::size_t step_index, const std::string& what)
        : std::runtime_error(what + " (step " + std::to_string(step_index) + ")"),
          step_index_(step_index) {}

    std::size_t step_index() const noexcept { return step_index_; }

private:
    std::size_t step_index_;
};

/// The invariant-density normaliser diverges (one-sided model without an
/// integrable tail).
class model_not_ergodic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Asymptotic variance requested where the smoothed density F vanishes.
class undefined_variance : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A statistic was requested over an empty set (e.g. RASE with every grid
/// point undefined).
class no_data : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Wraps a failure inside a Monte Carlo loop with the replication index.
class replication_error : public std::runtime_error {
public:
    replication_error(std::size_t replication, const std::string& what)
        : std::runtime_error("replication " + std::to_string(replication) + ": " + what),
          replication_(replication) {}

    std::size_t replication() const noexcept { return replication_; }

private:
    std::size_t replication_;
};

}  // namespace reflkit
