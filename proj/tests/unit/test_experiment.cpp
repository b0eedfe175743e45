#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "reflkit/errors.hpp"
#include "reflkit/experiment.hpp"
#include "reflkit/stats.hpp"

using namespace reflkit;

namespace {

EstimateResult with_values(std::vector<double> grid, std::vector<double> values) {
    EstimateResult r;
    r.grid = std::move(grid);
    for (double v : values) {
        r.values.push_back(v);
        r.undefined.push_back(std::isnan(v));
        r.denominators.push_back(std::isnan(v) ? 0.0 : 1.0);
        r.boundary.push_back(false);
    }
    return r;
}

ExperimentPlan small_plan(std::size_t reps) {
    ExperimentPlan p;
    p.n_replications = reps;
    p.n_list = {400};
    p.beta_list = {0.3};
    p.base_seed = 11;
    return p;
}

}  // namespace

TEST_CASE("RASE values") {
    const auto b = builtin_drift(1);
    const std::vector<double> grid{0.5, 1.0, 2.0};
    CHECK(rase(with_values(grid, {b(0.5), b(1.0), b(2.0)}), b) == 0.0);
    CHECK(rase(with_values(grid, {b(0.5) + 0.1, b(1.0) - 0.1, NAN}), b) == doctest::Approx(0.1));
    CHECK(rase(with_values({0.5, 1.0}, {b(0.5) + 0.3, b(1.0) - 0.4}), b) ==
          doctest::Approx(0.25 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(rase(with_values(grid, {NAN, NAN, NAN}), b), no_data);
}

TEST_CASE("two-replication summary matches hand statistics") {
    const auto s = run_cell(small_plan(2), 400, 0.3);
    REQUIRE(s.rase_values.size() == 2);
    const double a = s.rase_values[0], b = s.rase_values[1];
    CHECK(s.rase_mean == doctest::Approx((a + b) / 2));
    CHECK(s.rase_median == doctest::Approx((a + b) / 2));
    CHECK(s.rase_std == doctest::Approx(std::abs(a - b) / std::sqrt(2.0)));
    CHECK(s.rase_se == doctest::Approx(std::abs(a - b) / 2.0));
    CHECK(s.rase_mean >= 0.0);
    CHECK(s.h == doctest::Approx(bandwidth(400, 0.3)));
    CHECK(s.delta == doctest::Approx(delta_of_n(400)));
    CHECK(s.n_replications == 2);
}

TEST_CASE("cells are reproducible and independent of thread count") {
    auto plan = small_plan(24);
    plan.threads = 1;
    const auto one = run_cell(plan, 400, 0.3);
    plan.threads = 4;
    const auto four = run_cell(plan, 400, 0.3);
    CHECK(one.rase_values == four.rase_values);
    CHECK(one.rase_mean == four.rase_mean);
    CHECK(one.excluded_mean == four.excluded_mean);
    CHECK(run_cell(plan, 400, 0.3).rase_values == one.rase_values);
}

TEST_CASE("summary statistics are symmetric in the replications") {
    const auto s = run_cell(small_plan(30), 400, 0.3);
    auto shuffled = s.rase_values;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(5));
    CHECK(stats::median(shuffled) == s.rase_median);
    CHECK(stats::mean(shuffled) == doctest::Approx(s.rase_mean).epsilon(1e-14));
    CHECK(stats::sample_std(shuffled) == doctest::Approx(s.rase_std).epsilon(1e-12));
}

TEST_CASE("doubling N moves the mean by less than three standard errors") {
    const auto n1 = run_cell(small_plan(100), 400, 0.3);
    const auto n2 = run_cell(small_plan(200), 400, 0.3);
    // Replications 0..99 are shared, so the first 100 values coincide.
    CHECK(std::equal(n1.rase_values.begin(), n1.rase_values.end(), n2.rase_values.begin()));
    CHECK(std::abs(n2.rase_mean - n1.rase_mean) < 3.0 * n1.rase_std / std::sqrt(100.0));
}

TEST_CASE("continuous type with refine 1 equals discrete type") {
    auto plan = small_plan(10);
    const auto d = run_cell(plan, 400, 0.3);
    plan.estimator = EstimatorType::continuous;
    plan.refine = 1;
    const auto c = run_cell(plan, 400, 0.3);
    CHECK(c.rase_values == d.rase_values);
    CHECK(c.rase_mean == d.rase_mean);
    CHECK(c.excluded_mean == d.excluded_mean);
}

TEST_CASE("tables: cell count, failures and warnings") {
    ExperimentPlan plan;
    plan.n_replications = 2;
    const auto t = run_table(plan);
    CHECK(t.cells.size() == 18);
    CHECK(t.failures.empty());

    ExperimentPlan zero = small_plan(2);
    zero.custom_drift = constant_drift(0.0);
    const std::array modes{BarrierMode::two_sided};
    const auto z = run_table(zero, modes);
    REQUIRE(z.warnings.size() == 1);
    CHECK(z.cells.size() == 1);

    ExperimentPlan broken = small_plan(2);
    broken.custom_drift = DriftSpec{"nan", [](double) { return NAN; }, std::nullopt};
    broken.n_list = {400, 900};
    const auto f = run_table(broken, modes);
    CHECK(f.cells.empty());
    CHECK(f.failures.size() == 2);
    CHECK(f.failures[0].message.find("replication 0") != std::string::npos);

    ExperimentPlan bad = small_plan(2);
    bad.beta_list = {1.2};
    CHECK_THROWS_AS(run_table(bad), std::invalid_argument);
}

TEST_CASE("curve rows") {
    ExperimentPlan plan;
    const auto rows = curve(plan, 1600, 0.3, 42);
    REQUIRE(rows.size() == 300);
    const auto b = builtin_drift(1);
    for (const auto& r : rows) CHECK(r.truth == b(r.x));

    std::ostringstream a, c;
    write_curve_csv(a, rows, 42);
    write_curve_csv(c, curve(plan, 1600, 0.3, 42), 42);
    CHECK(a.str() == c.str());
    CHECK(a.str().rfind("# seed=42\nx,estimate,truth\n", 0) == 0);
    if (std::any_of(rows.begin(), rows.end(), [](const CurveRow& r) { return !r.estimate; })) {
        CHECK(a.str().find(",,") != std::string::npos);
    }
}

TEST_CASE("normality check bookkeeping") {
    NormalityConfig cfg;
    cfg.n_replications = 20;
    const auto rep = normality_check(cfg);
    CHECK(rep.used + rep.dropped == 20);
    CHECK(rep.z.size() == rep.used);
    CHECK(rep.h == doctest::Approx(bandwidth(1600, 0.3)));
    CHECK(rep.scale == doctest::Approx(std::sqrt(1600 * rep.h * rep.delta)));
    CHECK(rep.schedule_warnings.empty());
    CHECK(rep.ks_stat >= 0.0);
    CHECK(rep.ks_stat <= 1.0);

    cfg.x0 = 0.05;
    CHECK_THROWS_AS(normality_check(cfg), std::invalid_argument);

    std::ostringstream out;
    const std::array reports{rep};
    write_normality_csv(out, reports, 3);
    CHECK(out.str().rfind("# seed=3\ncase,x0,n,beta,mean_z,var_z,ks_stat,dropped\n2,1.5,1600,", 0) == 0);
}

TEST_CASE("summary CSV layout") {
    const auto s = run_cell(small_plan(3), 400, 0.3);
    std::ostringstream out;
    const std::array cells{s};
    write_summary_csv(out, cells, 11);
    CHECK(out.str().rfind("# seed=11\ncase,mode,n,beta,h,delta,rase_mean,rase_std,rase_median,excluded_mean,n_reps,rase_se\n"
                          "1,two_sided,400,",
                          0) == 0);
}
