#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "reflkit/density.hpp"
#include "reflkit/estimate.hpp"
#include "reflkit/experiment.hpp"
#include "reflkit/simulate.hpp"

namespace reflkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag, bad value or unknown config key. The message names the flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `--help` was requested; `text` is the rendered help.
struct HelpRequested {
    std::string text;
};

struct SimulateArgs {
    SimConfig sim;
    int case_id = 1;
    std::size_t refine = 1;
};

struct DensityArgs {
    int case_id = 1;
    double sigma = 0.2;
    BarrierConfig barrier = BarrierConfig::two_sided(0.0, 3.0);
    std::vector<double> grid;
    double h = 0.0;
    std::string kernel = "epanechnikov";
    std::size_t panels = 1024;
    DensityConvention convention = DensityConvention::published;
};

struct EstimateArgs {
    std::string path_file;
    std::optional<double> h;  // else n^-beta with n the number of increments
    double beta = 0.3;
    std::string kernel = "epanechnikov";
    std::vector<double> grid;
    EstimatorType type = EstimatorType::discrete;
    std::optional<BarrierMode> mode;
    std::optional<double> lower;
    std::optional<double> upper;
};

struct ExperimentArgs {
    ExperimentPlan plan;
    std::vector<BarrierMode> modes;
    bool curve = false;
};

struct NormalityArgs {
    NormalityConfig cfg;
};

/// Validated invocation: one subcommand with its module-level parameters.
struct RunConfig {
    std::string subcommand;
    std::variant<SimulateArgs, DensityArgs, EstimateArgs, ExperimentArgs, NormalityArgs> args;
    std::string out;
    std::uint64_t seed = 0;
};

/// Parses `args` (without the program name). `--config <file>` reads
/// `key = value` lines (`#` comments); flags given on the command line take
/// precedence. Throws UsageError or HelpRequested.
RunConfig parse(const std::vector<std::string>& args);

/// Executes a validated config and writes its CSV to cfg.out (removed again on
/// failure). Prints a one-line summary to `log`. Throws on runtime errors.
void run(const RunConfig& cfg, std::ostream& log);

/// parse + run with exit codes: 0 success, 1 runtime error, 2 usage error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reflkit::cli
