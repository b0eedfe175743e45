#include "reflkit/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "reflkit/errors.hpp"
#include "reflkit/quadrature.hpp"

namespace reflkit {

namespace {

constexpr double kPanelTol = 1e-13;       // per unit length, relative to |b|
constexpr double kMassTol = 1e-14;        // absolute, integrand scaled to max 1 at the nodes
constexpr double kNormalizerTol = 1e-8;   // panel-doubling agreement
constexpr double kTailTol = 1e-10;        // one-sided tail share
constexpr int kMaxTailDoublings = 40;
constexpr int kMaxPanelDoublings = 6;
constexpr double kMaxExponentGrowth = 700.0;

}  // namespace

InvariantDensity::InvariantDensity(DriftSpec drift, double sigma, BarrierConfig barrier,
                                   std::size_t quad_panels, DensityConvention convention)
    : drift_(std::move(drift)),
      sigma_(sigma),
      barrier_(barrier),
      panels_(quad_panels),
      convention_(convention),
      exp_scale_(0.0) {
    if (!drift_.eval) throw std::invalid_argument("InvariantDensity: drift has no evaluator");
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) {
        throw std::invalid_argument("InvariantDensity: sigma must be > 0");
    }
    if (panels_ < 1) throw std::invalid_argument("InvariantDensity: quad_panels must be >= 1");
    const double scale = 2.0 / (sigma_ * sigma_);
    exp_scale_ = convention_ == DensityConvention::published ? -scale : scale;

    Built coarse = build(panels_);
    std::size_t panels = 2 * panels_;
    Built fine = build(panels);
    for (int i = 0; i < kMaxPanelDoublings &&
                    std::abs(std::expm1(coarse.log_z - fine.log_z)) > kNormalizerTol;
         ++i) {
        coarse = std::move(fine);
        panels *= 2;
        fine = build(panels);
    }
    table_ = std::move(fine.table);
    log_z_ = fine.log_z;
}

void InvariantDensity::extend(Table& t, double to, std::size_t panels) const {
    const double from = t.nodes.back();
    const double width = (to - from) / static_cast<double>(panels);
    double running = t.cumulative.back();
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = from + static_cast<double>(i) * width;
        const double b = (i + 1 == panels) ? to : from + static_cast<double>(i + 1) * width;
        const double magnitude =
            std::max({1.0, std::abs(drift_(a)), std::abs(drift_(0.5 * (a + b))), std::abs(drift_(b))});
        running += quad::adaptive_simpson(drift_.eval, a, b, kPanelTol * width * magnitude);
        t.nodes.push_back(b);
        t.cumulative.push_back(running);
    }
}

double InvariantDensity::inner_from(const Table& t, double x) const {
    const double l = barrier_.lower();
    if (x < l) throw std::invalid_argument("inner_integral: x below the lower barrier");
    const auto tol_for = [&](double a, double b) {
        const double magnitude = std::max({1.0, std::abs(drift_(a)), std::abs(drift_(b))});
        return kPanelTol * (b - a) * magnitude;
    };
    if (x >= t.nodes.back()) {
        const double last = t.nodes.back();
        if (x == last) return t.cumulative.back();
        return t.cumulative.back() + quad::composite_simpson(drift_.eval, last, x, 64, tol_for(last, x));
    }
    const auto it = std::upper_bound(t.nodes.begin(), t.nodes.end(), x);
    const auto j = static_cast<std::size_t>(std::distance(t.nodes.begin(), it)) - 1;
    if (x == t.nodes[j]) return t.cumulative[j];
    return t.cumulative[j] + quad::adaptive_simpson(drift_.eval, t.nodes[j], x, tol_for(t.nodes[j], x));
}

InvariantDensity::Built InvariantDensity::build(std::size_t panels) const {
    const double l = barrier_.lower();
    const auto u = barrier_.upper();

    Built out;
    out.table.nodes = {l};
    out.table.cumulative = {0.0};
    const double first_end = u ? *u : l + 1.0;
    extend(out.table, first_end, panels);

    double shift = -std::numeric_limits<double>::infinity();
    for (double c : out.table.cumulative) shift = std::max(shift, exponent(c));
    if (!std::isfinite(shift)) throw model_not_ergodic("invariant density: non-finite exponent");

    const Table& table = out.table;
    auto integrand = [&](double x) { return std::exp(exponent(inner_from(table, x)) - shift); };

    double z = quad::composite_simpson(integrand, l, first_end, panels, kMassTol);

    if (!u) {
        double span = first_end - l;
        bool converged = false;
        for (int k = 0; k < kMaxTailDoublings; ++k) {
            const double a = l + span;
            const double b = l + 2.0 * span;
            const std::size_t first_new = out.table.nodes.size();
            extend(out.table, b, panels);
            double peak = 0.0;
            for (std::size_t i = first_new; i < out.table.cumulative.size(); ++i) {
                const double growth = exponent(out.table.cumulative[i]) - shift;
                if (!(growth < kMaxExponentGrowth)) {
                    throw model_not_ergodic(
                        "invariant density: exp(-(2/sigma^2) int b) grows without bound; "
                        "the one-sided model has no integrable tail");
                }
                peak = std::max(peak, growth);
            }
            // The tail integrand can exceed the head's maximum by many orders.
            const double tail =
                quad::composite_simpson(integrand, a, b, panels, kMassTol * std::exp(peak));
            if (!std::isfinite(tail)) {
                throw model_not_ergodic("invariant density: non-finite tail mass");
            }
            z += tail;
            span *= 2.0;
            if (tail < kTailTol * z) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw model_not_ergodic("invariant density: normaliser did not stabilise after " +
                                    std::to_string(kMaxTailDoublings) + " tail doublings");
        }
    }

    if (!(z > 0.0) || !std::isfinite(z)) {
        throw model_not_ergodic("invariant density: normaliser is not positive and finite");
    }
    out.log_z = shift + std::log(z);
    return out;
}

double InvariantDensity::inner_integral(double x) const { return inner_from(table_, x); }

double InvariantDensity::pi(double x) const {
    if (!barrier_.contains(x)) return 0.0;
    return std::exp(exponent(inner_from(table_, x)) - log_z_);
}

double InvariantDensity::normalizer() const { return std::exp(log_z_); }

double InvariantDensity::f(const KernelSpec& kernel, double x) const {
    const double h = kernel.bandwidth;
    if (!(h > 0.0)) throw std::invalid_argument("f: bandwidth must be > 0");
    const double l = barrier_.lower();
    const auto u = barrier_.upper();
    const double r_lo = std::max(-1.0, (l - x) / h);
    const double r_hi = u ? std::min(1.0, (*u - x) / h) : 1.0;
    if (!(r_lo < r_hi)) return 0.0;

    auto integrand = [&](double r) {
        // Rounding can push x + r h just outside the domain at the clipped ends.
        double y = x + r * h;
        y = std::max(y, l);
        if (u) y = std::min(y, *u);
        return kernel(r) * pi(y);
    };

    // Split at 0 so kernels with a kink there (triangular) integrate cleanly.
    auto integrate = [&](double tol) {
        if (r_lo < 0.0 && r_hi > 0.0) {
            return quad::composite_simpson(integrand, r_lo, 0.0, 8, tol) +
                   quad::composite_simpson(integrand, 0.0, r_hi, 8, tol);
        }
        return quad::composite_simpson(integrand, r_lo, r_hi, 16, tol);
    };
    const double coarse = integrate(std::numeric_limits<double>::infinity());
    const double tol = 1e-12 * std::abs(coarse) + std::numeric_limits<double>::denorm_min();
    return std::max(0.0, integrate(tol));
}

double InvariantDensity::sigma_asym(const KernelSpec& kernel, double x) const {
    const double big_f = f(kernel, x);
    if (!(big_f > 0.0)) {
        throw undefined_variance("asymptotic variance undefined at x=" + std::to_string(x) +
                                 ": smoothed density F(x) is zero");
    }
    return sigma_ * sigma_ / big_f;
}

}  // namespace reflkit
