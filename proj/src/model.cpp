#include "reflkit/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace reflkit {

std::string_view to_string(BarrierMode mode) {
    return mode == BarrierMode::two_sided ? "two_sided" : "one_sided_lower";
}

BarrierMode parse_barrier_mode(std::string_view text) {
    if (text == "two_sided" || text == "two-sided") return BarrierMode::two_sided;
    if (text == "one_sided_lower" || text == "one-sided" || text == "one_sided") {
        return BarrierMode::one_sided_lower;
    }
    throw std::invalid_argument("unknown barrier mode '" + std::string(text) + "'");
}

BarrierConfig BarrierConfig::two_sided(double lower, double upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || !(lower < upper)) {
        throw std::invalid_argument("two-sided barriers need 0 <= l < u < inf, got l=" +
                                    std::to_string(lower) + " u=" + std::to_string(upper));
    }
    return BarrierConfig(lower, upper);
}

BarrierConfig BarrierConfig::one_sided(double lower) {
    if (!std::isfinite(lower) || lower < 0.0) {
        throw std::invalid_argument("lower barrier must be finite and >= 0, got " +
                                    std::to_string(lower));
    }
    return BarrierConfig(lower, std::nullopt);
}

bool BarrierConfig::contains(double x) const noexcept {
    if (!(x >= lower_)) return false;
    return !upper_ || x <= *upper_;
}

double BarrierConfig::default_start() const noexcept {
    return upper_ ? 0.5 * (lower_ + *upper_) : lower_ + 1.0;
}

DriftSpec builtin_drift(int case_id) {
    switch (case_id) {
        case 1:
            return {"b1", [](double x) { return std::sin(2.0 * std::numbers::pi * x) + 1.5 * x; },
                    2.0 * std::numbers::pi + 1.5};
        case 2:
            return {"b2", [](double x) { return std::sqrt(1.0 + x * x); }, 1.0};
        case 3:
            // 2 sqrt(x) has unbounded slope at 0, so no Lipschitz constant.
            return {"b3", [](double x) { return 2.0 * std::sqrt(x); }, std::nullopt};
        default:
            throw std::invalid_argument("unknown drift case " + std::to_string(case_id) +
                                        " (expected 1, 2 or 3)");
    }
}

DriftSpec constant_drift(double value) {
    return {"const(" + std::to_string(value) + ")", [value](double) { return value; }, 0.0};
}

bool is_numerically_zero(const DriftSpec& drift, std::span<const double> grid, double tol) {
    for (double x : grid) {
        if (std::abs(drift(x)) > tol) return false;
    }
    return true;
}

namespace {

double epanechnikov_k(double t) { return std::abs(t) <= 1.0 ? 0.75 * (1.0 - t * t) : 0.0; }

double biweight_k(double t) {
    if (std::abs(t) > 1.0) return 0.0;
    const double s = 1.0 - t * t;
    return 0.9375 * s * s;
}

double triangular_k(double t) { return std::abs(t) <= 1.0 ? 1.0 - std::abs(t) : 0.0; }

void check_bandwidth(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("bandwidth must be positive, got " + std::to_string(h));
    }
}

}  // namespace

KernelSpec epanechnikov(double bandwidth) {
    check_bandwidth(bandwidth);
    return {"epanechnikov", epanechnikov_k, bandwidth};
}

KernelSpec make_kernel(std::string_view name, double bandwidth) {
    check_bandwidth(bandwidth);
    if (name == "epanechnikov") return {"epanechnikov", epanechnikov_k, bandwidth};
    if (name == "biweight") return {"biweight", biweight_k, bandwidth};
    if (name == "triangular") return {"triangular", triangular_k, bandwidth};
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::vector<std::string> kernel_names() { return {"epanechnikov", "biweight", "triangular"}; }

void Schedule::validate() const {
    if (n < 2) throw std::invalid_argument("schedule needs n >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("schedule needs delta > 0");
    if (!(h > 0.0)) throw std::invalid_argument("schedule needs h > 0");
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw std::invalid_argument("schedule needs 0 < epsilon < 1/2");
    }
}

std::vector<std::string> validate_schedule(const Schedule& s, Regime regime) {
    s.validate();

    const double log_n = std::log(static_cast<double>(s.n));
    const double delta_exp = -std::log(s.delta) / log_n;
    const double h_exp = -std::log(s.h) / log_n;
    const double eps = s.epsilon;

    enum class Direction { to_zero, to_infinity };
    struct Product {
        const char* name;
        Direction direction;
        std::function<double(double, double, double)> value;  // (m, delta, h)
    };

    std::vector<Product> products = {
        {"Δ", Direction::to_zero, [](double, double d, double) { return d; }},
        {"h", Direction::to_zero, [](double, double, double h) { return h; }},
        {"nΔ", Direction::to_infinity, [](double m, double d, double) { return m * d; }},
        {"Δ^{1/2−ε}h^{-1}", Direction::to_zero,
         [eps](double, double d, double h) { return std::pow(d, 0.5 - eps) / h; }},
    };
    if (regime == Regime::discrete_normality) {
        products.push_back({"nhΔ", Direction::to_infinity,
                            [](double m, double d, double h) { return m * h * d; }});
        products.push_back({"nh³Δ", Direction::to_zero,
                            [](double m, double d, double h) { return m * h * h * h * d; }});
        products.push_back({"nh^{-1}Δ^{2−ε}", Direction::to_zero, [eps](double m, double d, double h) {
                                return m / h * std::pow(d, 2.0 - eps);
                            }});
    }

    auto eval_at = [&](const Product& p, double m) {
        return p.value(m, std::pow(m, -delta_exp), std::pow(m, -h_exp));
    };

    std::vector<std::string> warnings;
    const double n = static_cast<double>(s.n);
    for (const auto& p : products) {
        const double now = eval_at(p, n);
        const double later = eval_at(p, 4.0 * n);
        if (p.direction == Direction::to_infinity && !(later > now)) {
            warnings.push_back(std::string(p.name) + " not →∞");
        } else if (p.direction == Direction::to_zero && !(later < now)) {
            warnings.push_back(std::string(p.name) + " not →0");
        }
    }
    return warnings;
}

}  // namespace reflkit
