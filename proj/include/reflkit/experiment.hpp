#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reflkit/density.hpp"
#include "reflkit/estimate.hpp"
#include "reflkit/model.hpp"

namespace reflkit {

/// Monte Carlo design. Delta = n^(-2/3) and h = n^(-beta) for every cell.
struct ExperimentPlan {
    int case_id = 1;
    std::optional<DriftSpec> custom_drift;  // overrides case_id when set
    BarrierMode mode = BarrierMode::two_sided;
    double sigma = 0.2;
    double lower = 0.0;
    double upper = 3.0;  // also the right end of the estimation grid in one-sided mode
    std::vector<std::size_t> n_list{400, 900, 1600};
    std::vector<double> beta_list{0.3, 0.2, 0.15};
    std::size_t n_replications = 1000;
    std::size_t grid_count = 300;
    EstimatorType estimator = EstimatorType::discrete;
    std::size_t refine = 10;  // continuous estimator only
    std::string kernel = "epanechnikov";
    std::uint64_t base_seed = 0;
    std::size_t threads = 0;  // 0 = machine parallelism; never affects results

    void validate() const;
    DriftSpec drift() const;
    BarrierConfig barrier() const;
    std::vector<double> grid() const;
};

struct McSummary {
    int case_id = 0;
    BarrierMode mode = BarrierMode::two_sided;
    std::size_t n = 0;
    double beta = 0.0;
    double h = 0.0;
    double delta = 0.0;
    double rase_mean = 0.0;
    double rase_std = 0.0;  // sample standard deviation over replications
    double rase_se = 0.0;   // standard error of rase_mean
    double rase_median = 0.0;
    double excluded_mean = 0.0;  // undefined grid points per replication
    std::size_t n_replications = 0;
    std::vector<double> rase_values;  // by replication index
};

/// Root of the mean squared error over the defined grid points.
/// Throws no_data when every point is undefined.
double rase(const EstimateResult& estimates, const DriftSpec& truth);

/// Stream identity shared by every bandwidth and estimator type of one
/// (case, mode, n) cell, so those columns are computed on common drivers.
std::uint64_t cell_key(int case_id, BarrierMode mode, std::size_t n);

/// N replications: simulate with stream (base_seed, cell, r), estimate on the
/// grid, take RASE. Bit-identical for any thread count. Failures are rethrown
/// as replication_error.
McSummary run_cell(const ExperimentPlan& plan, std::size_t n, double beta);

struct CellFailure {
    BarrierMode mode;
    std::size_t n;
    double beta;
    std::string message;
};

struct TableResult {
    std::vector<McSummary> cells;
    std::vector<CellFailure> failures;
    std::vector<std::string> warnings;
};

/// modes x n_list x beta_list. A failing cell is recorded and the run goes on.
TableResult run_table(const ExperimentPlan& plan, std::span<const BarrierMode> modes);
TableResult run_table(const ExperimentPlan& plan);  // both modes

struct CurveRow {
    double x;
    std::optional<double> estimate;  // empty where undefined
    double truth;
};

/// One replication (replication index 0 of the cell under `seed`) for
/// plotting the estimate against the true drift.
std::vector<CurveRow> curve(const ExperimentPlan& plan, std::size_t n, double beta,
                            std::uint64_t seed);

struct NormalityConfig {
    int case_id = 2;
    double x0 = 1.5;
    std::size_t n = 1600;
    double beta = 0.3;
    std::size_t n_replications = 500;
    std::uint64_t base_seed = 0;
    BarrierMode mode = BarrierMode::two_sided;
    double sigma = 0.2;
    double lower = 0.0;
    double upper = 3.0;
    EstimatorType estimator = EstimatorType::discrete;
    std::size_t refine = 10;
    std::string kernel = "epanechnikov";
    double epsilon = 0.01;
    DensityConvention convention = DensityConvention::published;
    std::size_t quad_panels = 1024;
    std::size_t threads = 0;
};

struct NormalityReport {
    int case_id = 0;
    double x0 = 0.0;
    std::size_t n = 0;
    double beta = 0.0;
    double h = 0.0;
    double delta = 0.0;
    EstimatorType estimator = EstimatorType::discrete;
    double sigma_asym = 0.0;  // σ² / F(x0)
    double scale = 0.0;       // sqrt(n h Delta) = sqrt(T h)
    double mean_z = 0.0;
    double var_z = 0.0;
    double ks_stat = 0.0;
    std::size_t dropped = 0;  // replications with an undefined estimate at x0
    std::size_t used = 0;
    std::vector<double> z;    // by replication index, dropped ones omitted
    std::vector<std::string> schedule_warnings;
};

/// Standardised errors z_r = scale (b_hat_r(x0) - b(x0)) / sqrt(Σ(x0)) over
/// the replications, summarised by mean, variance and the KS distance to
/// N(0, 1). x0 must be at least h away from every barrier.
NormalityReport normality_check(const NormalityConfig& cfg);

void write_summary_csv(std::ostream& out, std::span<const McSummary> cells, std::uint64_t seed);
void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows, std::uint64_t seed);
void write_normality_csv(std::ostream& out, std::span<const NormalityReport> reports,
                         std::uint64_t seed);

}  // namespace reflkit
