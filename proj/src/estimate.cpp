#include "reflkit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reflkit {

std::string_view to_string(EstimatorType type) {
    return type == EstimatorType::discrete ? "discrete" : "continuous";
}

EstimatorType parse_estimator_type(std::string_view text) {
    if (text == "discrete") return EstimatorType::discrete;
    if (text == "continuous") return EstimatorType::continuous;
    throw std::invalid_argument("unknown estimator type '" + std::string(text) + "'");
}

std::size_t EstimateResult::defined_count() const {
    return static_cast<std::size_t>(std::count(undefined.begin(), undefined.end(), false));
}

double kernel_eval(const KernelSpec& kernel, double t) { return kernel(t); }

double bandwidth(std::size_t n, double beta) {
    if (n < 2) throw std::invalid_argument("bandwidth: n must be >= 2");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("bandwidth: beta must lie in (0, 1)");
    return std::pow(static_cast<double>(n), -beta);
}

double delta_of_n(std::size_t n) {
    if (n < 1) throw std::invalid_argument("delta_of_n: n must be >= 1");
    return std::pow(static_cast<double>(n), -2.0 / 3.0);
}

std::vector<double> midpoint_grid(double lo, double hi, std::size_t count) {
    if (count == 0) throw std::invalid_argument("midpoint_grid: count must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("midpoint_grid: need lo < hi");
    std::vector<double> grid(count);
    const double width = (hi - lo) / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = lo + (static_cast<double>(i) + 0.5) * width;
    }
    return grid;
}

namespace {

EstimateResult nadaraya_watson(const SamplePath& path, const KernelSpec& kernel,
                               std::span<const double> grid, EstimatorType type) {
    if (path.size() < 2) throw std::invalid_argument("estimator: path needs at least 2 points");
    if (path.l_reg.size() != path.size() || path.r_reg.size() != path.size()) {
        throw std::invalid_argument("estimator: path channels have different lengths");
    }
    if (!(path.delta > 0.0)) throw std::invalid_argument("estimator: path delta must be > 0");
    const double h = kernel.bandwidth;
    if (!(h > 0.0)) throw std::invalid_argument("estimator: bandwidth must be > 0");
    for (double x : grid) {
        if (!path.barrier.contains(x)) {
            throw std::invalid_argument("estimator: grid point " + std::to_string(x) +
                                        " outside the barrier domain");
        }
    }

    const std::size_t n = path.size() - 1;
    const bool two_sided = path.barrier.upper().has_value();

    // Increments net of the regulators, with observations sorted by state so
    // each grid point only touches its kernel window.
    std::vector<double> increment(n);
    for (std::size_t k = 0; k < n; ++k) {
        double inc = (path.x[k + 1] - path.x[k]) - (path.l_reg[k + 1] - path.l_reg[k]);
        if (two_sided) inc += path.r_reg[k + 1] - path.r_reg[k];
        increment[k] = inc;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return path.x[a] < path.x[b]; });
    std::vector<double> sorted_x(n);
    for (std::size_t i = 0; i < n; ++i) sorted_x[i] = path.x[order[i]];

    EstimateResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    out.denominators.resize(grid.size());
    out.undefined.resize(grid.size());
    out.boundary.resize(grid.size());
    out.meta = {n, path.delta, h, kernel.name, type};

    const double l = path.barrier.lower();
    const auto u = path.barrier.upper();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double x = grid[g];
        auto it = std::lower_bound(sorted_x.begin(), sorted_x.end(), x - h);
        double numerator = 0.0;
        double weight = 0.0;
        for (auto i = static_cast<std::size_t>(it - sorted_x.begin());
             i < n && sorted_x[i] <= x + h; ++i) {
            const double w = kernel.scaled(sorted_x[i] - x);
            numerator += w * increment[order[i]];
            weight += w;
        }
        const double denominator = path.delta * weight;
        out.denominators[g] = denominator;
        out.undefined[g] = !(denominator > 0.0);
        out.values[g] = out.undefined[g] ? std::numeric_limits<double>::quiet_NaN()
                                         : numerator / denominator;
        out.boundary[g] = (x - l < h) || (u && *u - x < h);
    }
    return out;
}

}  // namespace

EstimateResult nw_discrete(const SamplePath& path, const KernelSpec& kernel,
                           std::span<const double> grid) {
    return nadaraya_watson(path, kernel, grid, EstimatorType::discrete);
}

EstimateResult nw_continuous(const SamplePath& fine_path, const KernelSpec& kernel,
                             std::span<const double> grid) {
    // Denominator sum_j K_h(X_{s_j} - x) ds with ds the fine step: the same
    // sums as the discrete estimator on the fine grid.
    return nadaraya_watson(fine_path, kernel, grid, EstimatorType::continuous);
}

}  // namespace reflkit
