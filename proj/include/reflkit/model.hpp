#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reflkit {

enum class BarrierMode { two_sided, one_sided_lower };

std::string_view to_string(BarrierMode mode);
/// Accepts "two_sided"/"two-sided" and "one_sided_lower"/"one-sided".
BarrierMode parse_barrier_mode(std::string_view text);

/// Reflecting barriers: [l, u] with 0 <= l < u < inf, or [l, inf).
class BarrierConfig {
public:
    static BarrierConfig two_sided(double lower, double upper);
    static BarrierConfig one_sided(double lower);

    double lower() const noexcept { return lower_; }
    std::optional<double> upper() const noexcept { return upper_; }
    BarrierMode mode() const noexcept {
        return upper_ ? BarrierMode::two_sided : BarrierMode::one_sided_lower;
    }
    bool contains(double x) const noexcept;

    /// Midpoint of [l, u], or l + 1 without an upper barrier.
    double default_start() const noexcept;

private:
    BarrierConfig(double lower, std::optional<double> upper) : lower_(lower), upper_(upper) {}

    double lower_;
    std::optional<double> upper_;
};

/// A drift function b(.) on the barrier domain. The Lipschitz constant is
/// metadata only; nothing downstream needs it numerically.
struct DriftSpec {
    std::string name;
    std::function<double(double)> eval;
    std::optional<double> lipschitz_bound;

    double operator()(double x) const { return eval(x); }
};

/// Cases from the numerical study:
///   1: sin(2 pi x) + 1.5 x
///   2: sqrt(1 + x^2)
///   3: 2 sqrt(x)
DriftSpec builtin_drift(int case_id);

DriftSpec constant_drift(double value);

/// True when |b(x)| <= tol at every grid point.
bool is_numerically_zero(const DriftSpec& drift, std::span<const double> grid, double tol = 1e-14);

/// Compact-support kernel K on [-1, 1] with bandwidth h; K_h(t) = K(t/h)/h.
struct KernelSpec {
    std::string name;
    std::function<double(double)> k_eval;
    double bandwidth = 1.0;

    double operator()(double t) const { return k_eval(t); }
    double scaled(double t) const { return k_eval(t / bandwidth) / bandwidth; }
};

KernelSpec epanechnikov(double bandwidth);
/// "epanechnikov", "biweight" or "triangular".
KernelSpec make_kernel(std::string_view name, double bandwidth);
std::vector<std::string> kernel_names();

/// Regular-grid record of (t_k, X_{t_k}, L_{t_k}, R_{t_k}).
struct SamplePath {
    double delta = 0.0;
    double sigma = 0.0;
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> l_reg;
    std::vector<double> r_reg;
    std::uint64_t seed = 0;
    BarrierConfig barrier = BarrierConfig::two_sided(0.0, 3.0);

    std::size_t size() const noexcept { return x.size(); }
};

/// Observation schedule (n, Delta, h) with the small epsilon that appears in
/// the rate conditions.
struct Schedule {
    std::size_t n = 0;
    double delta = 0.0;
    double h = 0.0;
    double epsilon = 0.01;

    void validate() const;
};

enum class Regime { discrete_consistency, discrete_normality };

/// Diagnoses whether each rate product moves in the required direction when
/// the schedule family (Delta = n^-a, h = n^-b, exponents read off `s`) goes
/// from n to 4n. One message per violated direction; never throws for a
/// well-formed schedule.
std::vector<std::string> validate_schedule(const Schedule& s, Regime regime);

}  // namespace reflkit
