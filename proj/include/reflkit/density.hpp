#pragma once

#include <cstddef>
#include <vector>

#include "reflkit/model.hpp"

namespace reflkit {

/// Sign of the exponent in pi(x) ∝ exp(∓(2/σ²) ∫_l^x b).
///
/// `published` uses exp(-(2/σ²) ∫ b), the closed form that solves
/// (σ²/2) π'' + (b π)' = 0. `stationary` uses exp(+(2/σ²) ∫ b), which solves
/// (σ²/2) π'' - (b π)' = 0, the forward equation of dX = b dt + σ dW with
/// reflection. That is the occupation density the simulator actually
/// produces.
enum class DensityConvention { published, stationary };

/// Invariant density of the reflected diffusion on [l, u] (or [l, inf)),
/// evaluated by quadrature. Immutable after construction.
///
/// The inner integral ∫_l^x b is tabulated at `quad_panels` panel nodes, each
/// panel integrated by adaptive Simpson. The normaliser is recomputed with
/// twice the panels and accepted when the two agree to 1e-8. Without an upper
/// barrier the domain is truncated at l + T, with T doubled until the tail
/// adds less than 1e-10 of the mass (at most 40 doublings; otherwise
/// model_not_ergodic).
class InvariantDensity {
public:
    InvariantDensity(DriftSpec drift, double sigma, BarrierConfig barrier,
                     std::size_t quad_panels = 1024,
                     DensityConvention convention = DensityConvention::published);

    /// ∫_l^x b(y) dy.
    double inner_integral(double x) const;

    /// Density at x; zero outside the barrier domain.
    double pi(double x) const;

    /// Kernel-smoothed density F(x) = ∫ K_h(y - x) π(y) dy over the barrier
    /// domain, i.e. ∫ K(r) π(x + r h) dr with π extended by zero.
    double f(const KernelSpec& kernel, double x) const;

    /// Asymptotic variance σ² / F(x). Throws undefined_variance when F(x) == 0.
    double sigma_asym(const KernelSpec& kernel, double x) const;

    /// Z = ∫ exp(∓(2/σ²) ∫_l^x b) dx; may overflow to inf where log_normalizer()
    /// is still finite.
    double normalizer() const;
    double log_normalizer() const noexcept { return log_z_; }

    /// u, or the truncation point l + T of the one-sided tail.
    double support_upper() const noexcept { return table_.nodes.back(); }

    const DriftSpec& drift() const noexcept { return drift_; }
    double sigma() const noexcept { return sigma_; }
    const BarrierConfig& barrier() const noexcept { return barrier_; }
    std::size_t quad_panels() const noexcept { return panels_; }
    DensityConvention convention() const noexcept { return convention_; }

private:
    struct Table {
        std::vector<double> nodes;
        std::vector<double> cumulative;
    };
    struct Built {
        Table table;
        double log_z;
    };

    double exponent(double inner) const noexcept { return exp_scale_ * inner; }
    double inner_from(const Table& t, double x) const;
    void extend(Table& t, double to, std::size_t panels) const;
    Built build(std::size_t panels) const;

    DriftSpec drift_;
    double sigma_;
    BarrierConfig barrier_;
    std::size_t panels_;
    DensityConvention convention_;
    double exp_scale_;

    Table table_;
    double log_z_ = 0.0;
};

}  // namespace reflkit
