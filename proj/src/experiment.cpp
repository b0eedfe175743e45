#include "reflkit/experiment.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "reflkit/errors.hpp"
#include "reflkit/parallel.hpp"
#include "reflkit/path_io.hpp"
#include "reflkit/rng.hpp"
#include "reflkit/simulate.hpp"
#include "reflkit/stats.hpp"

namespace reflkit {

void ExperimentPlan::validate() const {
    if (!custom_drift && (case_id < 1 || case_id > 3)) {
        throw std::invalid_argument("ExperimentPlan: unknown case " + std::to_string(case_id));
    }
    if (!(sigma > 0.0)) throw std::invalid_argument("ExperimentPlan: sigma must be > 0");
    if (n_list.empty() || beta_list.empty()) {
        throw std::invalid_argument("ExperimentPlan: n_list and beta_list must be non-empty");
    }
    for (auto n : n_list) {
        if (n < 2) throw std::invalid_argument("ExperimentPlan: every n must be >= 2");
    }
    for (double b : beta_list) {
        if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("ExperimentPlan: beta must lie in (0, 1)");
    }
    if (n_replications < 1) throw std::invalid_argument("ExperimentPlan: need >= 1 replication");
    if (grid_count < 1) throw std::invalid_argument("ExperimentPlan: grid_count must be >= 1");
    if (refine < 1) throw std::invalid_argument("ExperimentPlan: refine must be >= 1");
    if (!(lower < upper)) throw std::invalid_argument("ExperimentPlan: need lower < upper");
    (void)barrier();
    (void)make_kernel(kernel, 1.0);
}

DriftSpec ExperimentPlan::drift() const { return custom_drift ? *custom_drift : builtin_drift(case_id); }

BarrierConfig ExperimentPlan::barrier() const {
    return mode == BarrierMode::two_sided ? BarrierConfig::two_sided(lower, upper)
                                          : BarrierConfig::one_sided(lower);
}

std::vector<double> ExperimentPlan::grid() const { return midpoint_grid(lower, upper, grid_count); }

double rase(const EstimateResult& estimates, const DriftSpec& truth) {
    double ss = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < estimates.grid.size(); ++i) {
        if (estimates.undefined[i]) continue;
        const double err = estimates.values[i] - truth(estimates.grid[i]);
        ss += err * err;
        ++m;
    }
    if (m == 0) throw no_data("RASE: every grid point is undefined");
    return std::sqrt(ss / static_cast<double>(m));
}

std::uint64_t cell_key(int case_id, BarrierMode mode, std::size_t n) {
    std::uint64_t k = mix64(static_cast<std::uint64_t>(case_id) + 0x5851f42d4c957f2dULL);
    k = mix64(k ^ (mode == BarrierMode::two_sided ? 0x2ULL : 0x1ULL));
    return mix64(k ^ static_cast<std::uint64_t>(n));
}

namespace {

SimConfig replication_config(const DriftSpec& drift, double sigma, const BarrierConfig& barrier,
                             std::size_t n, std::uint64_t seed) {
    SimConfig cfg;
    cfg.drift = drift;
    cfg.sigma = sigma;
    cfg.barrier = barrier;
    cfg.n_steps = n;
    cfg.delta = delta_of_n(n);
    cfg.seed = seed;
    return cfg;
}

EstimateResult estimate_replication(const SimConfig& cfg, EstimatorType type, std::size_t refine,
                                    const KernelSpec& kernel, std::span<const double> grid) {
    if (type == EstimatorType::discrete) return nw_discrete(simulate_path(cfg), kernel, grid);
    return nw_continuous(simulate_fine(cfg, refine), kernel, grid);
}

}  // namespace

McSummary run_cell(const ExperimentPlan& plan, std::size_t n, double beta) {
    plan.validate();
    const double h = bandwidth(n, beta);
    const KernelSpec kernel = make_kernel(plan.kernel, h);
    const DriftSpec drift = plan.drift();
    const BarrierConfig barrier = plan.barrier();
    const std::vector<double> grid = plan.grid();
    const std::uint64_t cell = cell_key(plan.case_id, plan.mode, n);

    const std::size_t reps = plan.n_replications;
    std::vector<double> rases(reps);
    std::vector<double> excluded(reps);
    parallel_for(reps, plan.threads, [&](std::size_t r) {
        try {
            const SimConfig cfg =
                replication_config(drift, plan.sigma, barrier, n, stream_key(plan.base_seed, cell, r));
            const EstimateResult est = estimate_replication(cfg, plan.estimator, plan.refine, kernel, grid);
            rases[r] = rase(est, drift);
            excluded[r] = static_cast<double>(grid.size() - est.defined_count());
        } catch (const std::exception& e) {
            throw replication_error(r, e.what());
        }
    });

    McSummary s;
    s.case_id = plan.case_id;
    s.mode = plan.mode;
    s.n = n;
    s.beta = beta;
    s.h = h;
    s.delta = delta_of_n(n);
    s.rase_mean = stats::mean(rases);
    s.rase_std = stats::sample_std(rases);
    s.rase_se = s.rase_std / std::sqrt(static_cast<double>(reps));
    s.rase_median = stats::median(rases);
    s.excluded_mean = stats::mean(excluded);
    s.n_replications = reps;
    s.rase_values = std::move(rases);
    return s;
}

TableResult run_table(const ExperimentPlan& plan, std::span<const BarrierMode> modes) {
    plan.validate();
    TableResult out;
    if (plan.custom_drift) {
        const auto grid = plan.grid();
        if (is_numerically_zero(*plan.custom_drift, grid)) {
            out.warnings.push_back("drift '" + plan.custom_drift->name +
                                   "' is numerically zero on the estimation grid");
        }
    }
    for (BarrierMode mode : modes) {
        ExperimentPlan cell_plan = plan;
        cell_plan.mode = mode;
        for (std::size_t n : plan.n_list) {
            for (double beta : plan.beta_list) {
                try {
                    out.cells.push_back(run_cell(cell_plan, n, beta));
                } catch (const std::exception& e) {
                    out.failures.push_back({mode, n, beta, e.what()});
                }
            }
        }
    }
    return out;
}

TableResult run_table(const ExperimentPlan& plan) {
    constexpr std::array modes{BarrierMode::two_sided, BarrierMode::one_sided_lower};
    return run_table(plan, modes);
}

std::vector<CurveRow> curve(const ExperimentPlan& plan, std::size_t n, double beta,
                            std::uint64_t seed) {
    plan.validate();
    const KernelSpec kernel = make_kernel(plan.kernel, bandwidth(n, beta));
    const DriftSpec drift = plan.drift();
    const std::vector<double> grid = plan.grid();
    const SimConfig cfg = replication_config(drift, plan.sigma, plan.barrier(), n,
                                             stream_key(seed, cell_key(plan.case_id, plan.mode, n), 0));
    const EstimateResult est = estimate_replication(cfg, plan.estimator, plan.refine, kernel, grid);

    std::vector<CurveRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CurveRow row{grid[i], std::nullopt, drift(grid[i])};
        if (!est.undefined[i]) row.estimate = est.values[i];
        rows.push_back(row);
    }
    return rows;
}

NormalityReport normality_check(const NormalityConfig& cfg) {
    const DriftSpec drift = builtin_drift(cfg.case_id);
    const BarrierConfig barrier = cfg.mode == BarrierMode::two_sided
                                      ? BarrierConfig::two_sided(cfg.lower, cfg.upper)
                                      : BarrierConfig::one_sided(cfg.lower);
    if (cfg.n_replications < 1) throw std::invalid_argument("normality_check: need >= 1 replication");
    if (cfg.refine < 1) throw std::invalid_argument("normality_check: refine must be >= 1");
    const double h = bandwidth(cfg.n, cfg.beta);
    const double delta = delta_of_n(cfg.n);
    const KernelSpec kernel = make_kernel(cfg.kernel, h);

    const bool interior = cfg.x0 - barrier.lower() > h &&
                          (!barrier.upper() || *barrier.upper() - cfg.x0 > h);
    if (!interior) {
        throw std::invalid_argument("normality_check: x0 must be more than h from every barrier");
    }

    NormalityReport rep;
    rep.case_id = cfg.case_id;
    rep.x0 = cfg.x0;
    rep.n = cfg.n;
    rep.beta = cfg.beta;
    rep.h = h;
    rep.delta = delta;
    rep.estimator = cfg.estimator;
    rep.schedule_warnings =
        validate_schedule({cfg.n, delta, h, cfg.epsilon}, Regime::discrete_normality);

    const InvariantDensity density(drift, cfg.sigma, barrier, cfg.quad_panels, cfg.convention);
    rep.sigma_asym = density.sigma_asym(kernel, cfg.x0);
    // sqrt(n h Delta) for the discrete estimator, sqrt(T h) with T = n Delta for
    // the continuous one: the same number.
    rep.scale = std::sqrt(static_cast<double>(cfg.n) * h * delta);

    const std::uint64_t cell = cell_key(cfg.case_id, cfg.mode, cfg.n);
    const std::array<double, 1> grid{cfg.x0};
    const double truth = drift(cfg.x0);
    const double sd = std::sqrt(rep.sigma_asym);

    std::vector<double> z(cfg.n_replications, std::numeric_limits<double>::quiet_NaN());
    parallel_for(cfg.n_replications, cfg.threads, [&](std::size_t r) {
        try {
            const SimConfig sim =
                replication_config(drift, cfg.sigma, barrier, cfg.n, stream_key(cfg.base_seed, cell, r));
            const EstimateResult est = estimate_replication(sim, cfg.estimator, cfg.refine, kernel, grid);
            if (!est.undefined[0]) z[r] = rep.scale * (est.values[0] - truth) / sd;
        } catch (const std::exception& e) {
            throw replication_error(r, e.what());
        }
    });

    for (double v : z) {
        if (std::isnan(v)) {
            ++rep.dropped;
        } else {
            rep.z.push_back(v);
        }
    }
    rep.used = rep.z.size();
    if (rep.used == 0) throw no_data("normality_check: estimate undefined in every replication");
    rep.mean_z = stats::mean(rep.z);
    rep.var_z = stats::sample_variance(rep.z);
    rep.ks_stat = stats::ks_statistic_normal(rep.z);
    return rep;
}

void write_summary_csv(std::ostream& out, std::span<const McSummary> cells, std::uint64_t seed) {
    out << "# seed=" << seed << '\n';
    out << "case,mode,n,beta,h,delta,rase_mean,rase_std,rase_median,excluded_mean,n_reps,rase_se\n";
    for (const auto& c : cells) {
        out << c.case_id << ',' << to_string(c.mode) << ',' << c.n << ',' << format_double(c.beta)
            << ',' << format_double(c.h) << ',' << format_double(c.delta) << ','
            << format_double(c.rase_mean) << ',' << format_double(c.rase_std) << ','
            << format_double(c.rase_median) << ',' << format_double(c.excluded_mean) << ','
            << c.n_replications << ',' << format_double(c.rase_se) << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows, std::uint64_t seed) {
    out << "# seed=" << seed << '\n';
    out << "x,estimate,truth\n";
    for (const auto& r : rows) {
        out << format_double(r.x) << ',';
        if (r.estimate) out << format_double(*r.estimate);
        out << ',' << format_double(r.truth) << '\n';
    }
}

void write_normality_csv(std::ostream& out, std::span<const NormalityReport> reports,
                         std::uint64_t seed) {
    out << "# seed=" << seed << '\n';
    out << "case,x0,n,beta,mean_z,var_z,ks_stat,dropped\n";
    for (const auto& r : reports) {
        out << r.case_id << ',' << format_double(r.x0) << ',' << r.n << ',' << format_double(r.beta)
            << ',' << format_double(r.mean_z) << ',' << format_double(r.var_z) << ','
            << format_double(r.ks_stat) << ',' << r.dropped << '\n';
    }
}

}  // namespace reflkit
