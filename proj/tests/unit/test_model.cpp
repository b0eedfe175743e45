#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "reflkit/estimate.hpp"
#include "reflkit/model.hpp"

using namespace reflkit;

TEST_CASE("builtin drifts at reference points") {
    CHECK(builtin_drift(1)(0.0) == 0.0);
    CHECK(builtin_drift(2)(0.0) == 1.0);
    CHECK(builtin_drift(3)(1.0) == 2.0);
    CHECK_THROWS_AS(builtin_drift(0), std::invalid_argument);
    CHECK_THROWS_AS(builtin_drift(4), std::invalid_argument);
}

TEST_CASE("builtin drifts are finite and bounded by 6 on [0,3]") {
    for (int c = 1; c <= 3; ++c) {
        const auto b = builtin_drift(c);
        for (int i = 0; i <= 3000; ++i) {
            const double x = 3.0 * i / 3000.0;
            REQUIRE(std::isfinite(b(x)));
            CHECK(std::abs(b(x)) <= 6.0);
        }
    }
}

TEST_CASE("declared Lipschitz bounds hold on sampled difference quotients") {
    for (int c = 1; c <= 3; ++c) {
        const auto b = builtin_drift(c);
        if (!b.lipschitz_bound) {
            CHECK(c == 3);  // 2 sqrt(x) has unbounded slope at 0
            continue;
        }
        double worst = 0.0;
        for (int i = 0; i < 600; ++i) {
            for (int j = i + 1; j <= 600; j += 7) {
                const double x1 = 3.0 * i / 600.0;
                const double x2 = 3.0 * j / 600.0;
                worst = std::max(worst, std::abs(b(x1) - b(x2)) / (x2 - x1));
            }
        }
        CHECK(worst <= *b.lipschitz_bound);
    }
}

TEST_CASE("every kernel is a symmetric density on [-1,1]") {
    for (const auto& name : kernel_names()) {
        CAPTURE(name);
        const auto k = make_kernel(name, 1.0);
        const double mass = oracle::simpson([&](double t) { return k(t); }, -1.0, 1.0, 20000);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        for (int i = 0; i <= 100; ++i) {
            const double t = i / 100.0;
            CHECK(k(t) == k(-t));
        }
        CHECK(k(1.0 + 1e-12) == 0.0);
        CHECK(k(-1.5) == 0.0);
        CHECK(k(7.0) == 0.0);
    }
    CHECK_THROWS_AS(make_kernel("gaussian", 1.0), std::invalid_argument);
}

TEST_CASE("Epanechnikov values") {
    const auto k = epanechnikov(0.2);
    CHECK(kernel_eval(k, 0.0) == 0.75);
    CHECK(kernel_eval(k, 1.0) == 0.0);
    CHECK(kernel_eval(k, -1.0) == 0.0);
    CHECK(kernel_eval(k, 0.5) == 0.5625);
    CHECK(k.scaled(0.1) == doctest::Approx(0.5625 / 0.2));
}

TEST_CASE("barrier configurations") {
    const auto two = BarrierConfig::two_sided(0.0, 3.0);
    CHECK(two.mode() == BarrierMode::two_sided);
    CHECK(two.upper().value() == 3.0);
    CHECK(two.contains(0.0));
    CHECK(two.contains(3.0));
    CHECK_FALSE(two.contains(3.0001));
    CHECK(two.default_start() == 1.5);

    const auto one = BarrierConfig::one_sided(0.5);
    CHECK(one.mode() == BarrierMode::one_sided_lower);
    CHECK_FALSE(one.upper().has_value());
    CHECK(one.contains(1e9));
    CHECK_FALSE(one.contains(0.4));
    CHECK(one.default_start() == 1.5);

    CHECK_THROWS_AS(BarrierConfig::two_sided(3.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(BarrierConfig::two_sided(-1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(BarrierConfig::two_sided(0.0, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(BarrierConfig::one_sided(-0.1), std::invalid_argument);

    CHECK(parse_barrier_mode("two-sided") == BarrierMode::two_sided);
    CHECK(parse_barrier_mode("one_sided_lower") == BarrierMode::one_sided_lower);
    CHECK_THROWS_AS(parse_barrier_mode("upper"), std::invalid_argument);
}

TEST_CASE("zero-drift detection") {
    const std::vector<double> grid{0.5, 1.0, 2.0};
    CHECK(is_numerically_zero(constant_drift(0.0), grid));
    CHECK_FALSE(is_numerically_zero(constant_drift(1e-6), grid));
    CHECK_FALSE(is_numerically_zero(builtin_drift(1), grid));
}

namespace {
Schedule power_schedule(double a, double b, double eps = 0.01) {
    const std::size_t n = 1600;
    return {n, std::pow(1600.0, -a), std::pow(1600.0, -b), eps};
}
}  // namespace

TEST_CASE("schedule rate diagnostics") {
    CHECK(validate_schedule(power_schedule(2.0 / 3.0, 0.3), Regime::discrete_normality).empty());
    CHECK(validate_schedule(power_schedule(2.0 / 3.0, 0.15), Regime::discrete_consistency).empty());

    const auto w = validate_schedule(power_schedule(2.0, 0.3), Regime::discrete_consistency);
    REQUIRE(!w.empty());
    CHECK(std::find(w.begin(), w.end(), "nΔ not →∞") != w.end());

    // Wide bandwidth: h^3 decays too slowly for the bias term.
    const auto wide = validate_schedule(power_schedule(2.0 / 3.0, 0.1), Regime::discrete_normality);
    CHECK(std::find(wide.begin(), wide.end(), "nh³Δ not →0") != wide.end());

    // Deterministic and side-effect free.
    const auto s = power_schedule(0.5, 0.4);
    CHECK(validate_schedule(s, Regime::discrete_normality) == validate_schedule(s, Regime::discrete_normality));

    CHECK_THROWS_AS(validate_schedule({1, 0.1, 0.1, 0.01}, Regime::discrete_consistency), std::invalid_argument);
    CHECK_THROWS_AS(validate_schedule({100, 0.1, 0.1, 0.5}, Regime::discrete_consistency), std::invalid_argument);
    CHECK_THROWS_AS(validate_schedule({100, 0.0, 0.1, 0.01}, Regime::discrete_consistency), std::invalid_argument);
}
