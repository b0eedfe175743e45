#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "reflkit/density.hpp"
#include "reflkit/errors.hpp"

using namespace reflkit;

namespace {
const BarrierConfig kBox = BarrierConfig::two_sided(0.0, 3.0);
}

TEST_CASE("inner integral") {
    const InvariantDensity flat(constant_drift(1.5), 0.2, kBox);
    CHECK(flat.inner_integral(2.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(flat.inner_integral(0.0) == 0.0);

    const InvariantDensity root(builtin_drift(3), 0.2, kBox, 64);
    CHECK(std::abs(root.inner_integral(1.0) - 4.0 / 3.0) < 1e-10);

    for (int c = 1; c <= 3; ++c) {
        const InvariantDensity d(builtin_drift(c), 0.2, kBox);
        for (double x : {0.013, 0.5, 1.27, 2.2, 3.0}) {
            CHECK(d.inner_integral(x) == doctest::Approx(oracle::antiderivative(c, x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("uniform density for zero drift") {
    const InvariantDensity d(constant_drift(0.0), 0.2, kBox);
    for (double x : {0.0, 0.7, 1.5, 3.0}) CHECK(d.pi(x) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(d.pi(-0.1) == 0.0);
    CHECK(d.pi(3.1) == 0.0);

    const auto k = epanechnikov(0.1);
    CHECK(d.f(k, 1.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(d.f(k, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(d.f(k, 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(d.sigma_asym(k, 1.5) == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(d.sigma_asym(k, 0.0) == doctest::Approx(0.24).epsilon(1e-12));
}

TEST_CASE("constant drift has an exponential density") {
    // (2/σ²) c = 1 for c = 0.02, σ = 0.2.
    const double kappa = 1.0 / (1.0 - std::exp(-3.0));
    const InvariantDensity pub(constant_drift(0.02), 0.2, kBox);
    const InvariantDensity sta(constant_drift(0.02), 0.2, kBox, 1024, DensityConvention::stationary);
    for (int i = 0; i < 100; ++i) {
        const double x = 3.0 * (i + 0.5) / 100.0;
        CHECK(std::abs(pub.pi(x) - kappa * std::exp(-x)) < 1e-8);
        CHECK(std::abs(sta.pi(x) - kappa * std::exp(x - 3.0)) < 1e-8);
    }

    const InvariantDensity half(constant_drift(-0.02), 0.2, BarrierConfig::one_sided(0.0), 1024,
                                DensityConvention::stationary);
    for (double x : {0.0, 0.5, 2.0, 10.0}) CHECK(std::abs(half.pi(x) - std::exp(-x)) < 1e-8);
}

TEST_CASE("built-in densities integrate to one and match the closed form") {
    for (int c = 1; c <= 3; ++c) {
        for (auto conv : {DensityConvention::published, DensityConvention::stationary}) {
            CAPTURE(c);
            const double sign = conv == DensityConvention::published ? -1.0 : 1.0;
            const InvariantDensity d(builtin_drift(c), 0.2, kBox, 1024, conv);
            const double mass = oracle::simpson([&](double x) { return d.pi(x); }, 0.0, 3.0, 400000);
            CHECK(std::abs(mass - 1.0) < 1e-8);

            // Oracle density from the analytic antiderivative, shifted by its
            // maximum to stay in range.
            const double top = std::max(sign * 50.0 * oracle::antiderivative(c, 0.0),
                                        sign * 50.0 * oracle::antiderivative(c, 3.0));
            auto raw = [&](double x) { return std::exp(sign * 50.0 * oracle::antiderivative(c, x) - top); };
            const double z = oracle::simpson(raw, 0.0, 3.0, 400000);
            for (double x : {0.01, 0.1, 0.3, 1.0, 2.5, 2.99}) {
                const double want = raw(x) / z;
                if (want > 1e-200) CHECK(d.pi(x) == doctest::Approx(want).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("stationarity residual of both conventions") {
    const DriftSpec b{"smooth", [](double x) { return 0.02 + 0.01 * std::sin(x); }, 0.01};
    const double s2 = 0.04;
    const double eta = 1e-3;
    for (auto conv : {DensityConvention::published, DensityConvention::stationary}) {
        const double sign = conv == DensityConvention::published ? 1.0 : -1.0;
        const InvariantDensity d(b, 0.2, kBox, 512, conv);
        double worst = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double x = 3.0 * i / 51.0;
            const double pi2 = (d.pi(x + eta) - 2.0 * d.pi(x) + d.pi(x - eta)) / (eta * eta);
            const double bpi1 = (b(x + eta) * d.pi(x + eta) - b(x - eta) * d.pi(x - eta)) / (2.0 * eta);
            worst = std::max(worst, std::abs(0.5 * s2 * pi2 + sign * bpi1));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("smoothed density bounds and variance monotonicity") {
    for (int c = 1; c <= 3; ++c) {
        for (auto conv : {DensityConvention::published, DensityConvention::stationary}) {
            const InvariantDensity d(builtin_drift(c), 0.2, kBox, 1024, conv);
            double sup = 0.0;
            for (int i = 0; i <= 30000; ++i) sup = std::max(sup, d.pi(3.0 * i / 30000.0));
            const auto k = epanechnikov(0.15);
            std::vector<double> fs;
            for (int i = 0; i < 60; ++i) {
                const double x = 3.0 * (i + 0.5) / 60.0;
                const double f = d.f(k, x);
                CHECK(f >= 0.0);
                CHECK(f <= sup * (1.0 + 1e-12));
                if (f > 0.0) fs.push_back(f);
            }
            for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
                const double a = 0.04 / fs[i];
                const double bb = 0.04 / fs[i + 1];
                if (fs[i] < fs[i + 1]) CHECK(a > bb);
                if (fs[i] > fs[i + 1]) CHECK(a < bb);
            }
        }
    }
}

TEST_CASE("smoothed density tends to the density as h shrinks") {
    const InvariantDensity d(builtin_drift(2), 0.2, kBox);
    const double x = 1.5;
    const double e2 = std::abs(d.f(epanechnikov(1e-2), x) - d.pi(x));
    const double e3 = std::abs(d.f(epanechnikov(1e-3), x) - d.pi(x));
    // Second-order bias: the error ratio for a tenfold smaller h is about 100.
    MESSAGE("relative errors " << e2 / d.pi(x) << ", " << e3 / d.pi(x));
    CHECK(e3 < e2);
    CHECK(e2 / e3 == doctest::Approx(100.0).epsilon(0.2));
}

TEST_CASE("undefined variance where the density vanishes") {
    const InvariantDensity steep(constant_drift(50.0), 0.2, kBox);
    CHECK(steep.f(epanechnikov(0.1), 2.0) == 0.0);
    CHECK_THROWS_AS(steep.sigma_asym(epanechnikov(0.1), 2.0), undefined_variance);
    CHECK_NOTHROW(steep.sigma_asym(epanechnikov(0.1), 0.0));
}

TEST_CASE("one-sided domains") {
    const auto half = BarrierConfig::one_sided(0.0);
    const InvariantDensity d(builtin_drift(2), 0.2, half);
    const double mass = oracle::simpson([&](double x) { return d.pi(x); }, 0.0, d.support_upper(), 400000);
    CHECK(std::abs(mass - 1.0) < 1e-8);
    CHECK(d.pi(-1.0) == 0.0);

    CHECK_THROWS_AS(InvariantDensity(constant_drift(0.0), 0.2, half), model_not_ergodic);
    CHECK_THROWS_AS(InvariantDensity(builtin_drift(2), 0.2, half, 1024, DensityConvention::stationary),
                    model_not_ergodic);
}
