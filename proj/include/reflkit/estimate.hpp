#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reflkit/model.hpp"

namespace reflkit {

enum class EstimatorType { discrete, continuous };

std::string_view to_string(EstimatorType type);
EstimatorType parse_estimator_type(std::string_view text);

struct EstimateMeta {
    std::size_t n = 0;  // number of increments summed
    double delta = 0.0;
    double h = 0.0;
    std::string kernel;
    EstimatorType type = EstimatorType::discrete;
};

/// Per-grid-point Nadaraya-Watson drift estimates.
///
/// `denominators` holds Delta * sum_k K_h(X_k - x) (a time-weighted kernel
/// occupation, n Delta F_n(x)). Where it is zero the point is undefined and
/// the value is NaN. `boundary` marks points within h of a barrier, where the
/// kernel window is truncated.
struct EstimateResult {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> denominators;
    std::vector<bool> undefined;
    std::vector<bool> boundary;
    EstimateMeta meta;

    std::size_t defined_count() const;
};

/// Unscaled kernel K(t).
double kernel_eval(const KernelSpec& kernel, double t);

/// h = n^-beta; needs n >= 2 and beta in (0, 1).
double bandwidth(std::size_t n, double beta);

/// Delta = n^(-2/3).
double delta_of_n(std::size_t n);

/// Equally spaced cell midpoints lo + (i - 1/2)(hi - lo)/count, i = 1..count.
std::vector<double> midpoint_grid(double lo, double hi, std::size_t count);

/// Discretely observed estimator
///
///     b_n(x) = sum_k K_h(X_k - x) (dX_k - dL_k + dR_k) / (Delta sum_k K_h(X_k - x))
///
/// over forward increments k = 0..n-1. The dR term is absent without an upper
/// barrier. The regulator increments come from the path's L and R channels.
EstimateResult nw_discrete(const SamplePath& path, const KernelSpec& kernel,
                           std::span<const double> grid);

/// Continuously observed estimator, approximated by the left-endpoint
/// Riemann-Stieltjes sum over a fine path (see simulate_fine). On a path with
/// refine == 1 it coincides with nw_discrete.
EstimateResult nw_continuous(const SamplePath& fine_path, const KernelSpec& kernel,
                             std::span<const double> grid);

}  // namespace reflkit
