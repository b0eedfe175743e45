#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace reflkit::quad {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    // The relative floor stops refinement once rounding dominates the estimate.
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol ||
        std::abs(diff) <= 1e-15 * std::abs(left + right)) {
        return left + right + diff / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction; `tol` is absolute.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// `panels` equal Simpson panels, each refined adaptively until its share
/// of `tol` is met. Exact (up to rounding) for cubic integrands.
template <class F>
double composite_simpson(F&& f, double a, double b, std::size_t panels, double tol) {
    if (panels == 0) throw std::invalid_argument("composite_simpson: panels must be >= 1");
    if (a == b) return 0.0;
    const double width = (b - a) / static_cast<double>(panels);
    const double panel_tol = tol / static_cast<double>(panels);
    double sum = 0.0;
    double left = a;
    for (std::size_t i = 0; i < panels; ++i) {
        const double right = (i + 1 == panels) ? b : a + static_cast<double>(i + 1) * width;
        sum += adaptive_simpson(f, left, right, panel_tol);
        left = right;
    }
    return sum;
}

}  // namespace reflkit::quad
