#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "reflkit/path_io.hpp"

namespace reflkit::cli {

namespace {

// Raw flag values, bound directly to CLI11 before conversion into module types.
struct Raw {
    int case_id = 1;
    std::string mode = "two-sided";
    double sigma = 0.2;
    double lower = 0.0;
    double upper = 3.0;
    std::size_t n = 1600;
    std::vector<std::size_t> n_list{400, 900, 1600};
    std::vector<double> beta_list{0.3, 0.2, 0.15};
    double beta = 0.3;
    double delta = 0.0;
    double x0 = 0.0;
    std::size_t burn_in = 0;
    std::size_t refine = 1;
    std::size_t grid_count = 300;
    double grid_min = 0.0;
    double grid_max = 3.0;
    double h = 0.0;
    std::string kernel = "epanechnikov";
    std::size_t panels = 1024;
    std::string convention = "published";
    std::string type = "discrete";
    std::size_t reps = 1000;
    double epsilon = 0.01;
    bool curve = false;
    std::string path_file;
    std::string config;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
};

struct Commands {
    CLI::App* simulate;
    CLI::App* density;
    CLI::App* estimate;
    CLI::App* experiment;
    CLI::App* normality;
};

// One set of raw values per subcommand, so --help shows each one's defaults.
struct RawSet {
    Raw simulate;
    Raw density;
    Raw estimate;
    Raw experiment;
    Raw normality;

    RawSet() {
        experiment.refine = 10;
        normality.case_id = 2;
        normality.x0 = 1.5;
        normality.reps = 500;
        normality.refine = 10;
        density.h = bandwidth(1600, 0.3);
    }
};

const std::vector<std::string> kModes{"two-sided", "one-sided"};
const std::vector<std::string> kTypes{"discrete", "continuous"};
const std::vector<std::string> kConventions{"published", "stationary"};

void add_common(CLI::App* sub, Raw& raw) {
    sub->add_option("--config", raw.config, "file of 'key = value' lines; command-line flags win");
    sub->add_option("--out", raw.out, "output CSV file")->required();
    sub->add_option("--seed", raw.seed, "base seed (echoed as the first output line)");
}

void add_model(CLI::App* sub, Raw& raw, bool with_both) {
    sub->add_option("--case", raw.case_id, "drift case: 1 sin(2πx)+1.5x, 2 sqrt(1+x²), 3 2sqrt(x)")
        ->check(CLI::Range(1, 3));
    auto modes = kModes;
    if (with_both) modes.push_back("both");
    sub->add_option("--mode", raw.mode, "barriers")->check(CLI::IsMember(modes));
    sub->add_option("--sigma", raw.sigma, "diffusion coefficient (state units / sqrt(time))")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--lower", raw.lower, "lower barrier l (state units)");
    sub->add_option("--upper", raw.upper,
                    "upper barrier u (state units); right end of the grid when one-sided");
}

Commands build(CLI::App& app, RawSet& rs) {
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    app.option_defaults()->always_capture_default();
    Commands c{};

    Raw* r = &rs.simulate;
    c.simulate = app.add_subcommand("simulate", "simulate one reflected path and write t,x,l_reg,r_reg");
    add_model(c.simulate, *r, false);
    c.simulate->add_option("--n", r->n, "number of steps")->check(CLI::PositiveNumber);
    c.simulate->add_option("--delta", r->delta, "step size (time units)")
        ->default_str("n^(-2/3)")
        ->check(CLI::PositiveNumber);
    c.simulate->add_option("--x0", r->x0, "start state")
        ->default_str("(l+u)/2, or l+1 one-sided");
    c.simulate->add_option("--burn-in", r->burn_in, "steps discarded before recording");
    c.simulate->add_option("--refine", r->refine, "substeps per step (fine path)")
        ->check(CLI::PositiveNumber);
    add_common(c.simulate, *r);

    r = &rs.density;
    c.density = app.add_subcommand("density", "invariant density, smoothed density and asymptotic variance on a grid");
    add_model(c.density, *r, false);
    c.density->add_option("--grid,--grid-count", r->grid_count, "grid points (cell midpoints)")
        ->check(CLI::PositiveNumber);
    c.density->add_option("--grid-min", r->grid_min, "grid start")->default_str("lower");
    c.density->add_option("--grid-max", r->grid_max, "grid end")->default_str("upper");
    c.density->add_option("--h", r->h, "bandwidth (state units), 1600^(-0.3) by default")
        ->check(CLI::PositiveNumber);
    c.density->add_option("--kernel", r->kernel, "kernel")->check(CLI::IsMember(kernel_names()));
    c.density->add_option("--panels", r->panels, "quadrature panels")->check(CLI::PositiveNumber);
    c.density->add_option("--convention", r->convention,
                          "density sign: published exp(-2/σ² ∫b) or stationary exp(+2/σ² ∫b)")
        ->check(CLI::IsMember(kConventions));
    add_common(c.density, *r);

    r = &rs.estimate;
    c.estimate = app.add_subcommand("estimate", "drift estimate from a path CSV");
    c.estimate->add_option("--path", r->path_file, "path CSV written by 'simulate'")->required();
    c.estimate->add_option("--h", r->h, "bandwidth (state units)")
        ->default_str("n^(-beta), n = increments in the path")
        ->check(CLI::PositiveNumber);
    c.estimate->add_option("--beta", r->beta, "bandwidth exponent, used without --h")
        ->check(CLI::Range(0.0, 1.0));
    c.estimate->add_option("--kernel", r->kernel, "kernel")->check(CLI::IsMember(kernel_names()));
    c.estimate->add_option("--type", r->type, "estimator type")->check(CLI::IsMember(kTypes));
    c.estimate->add_option("--grid,--grid-count", r->grid_count, "grid points (cell midpoints)")
        ->check(CLI::PositiveNumber);
    c.estimate->add_option("--grid-min", r->grid_min, "grid start")->default_str("lower");
    c.estimate->add_option("--grid-max", r->grid_max, "grid end")->default_str("upper");
    c.estimate->add_option("--mode", r->mode, "override the barrier mode stored in the path")
        ->check(CLI::IsMember(kModes));
    c.estimate->add_option("--lower", r->lower, "override the lower barrier");
    c.estimate->add_option("--upper", r->upper, "override the upper barrier");
    c.estimate->add_option("--config", r->config, "file of 'key = value' lines; command-line flags win");
    c.estimate->add_option("--out", r->out, "output CSV file")->required();

    r = &rs.experiment;
    c.experiment = app.add_subcommand("experiment", "Monte Carlo RASE table over n and beta");
    add_model(c.experiment, *r, true);
    c.experiment->get_option("--mode")->default_str("both");
    c.experiment->add_option("--n", r->n_list, "sample sizes (comma separated)")->delimiter(',');
    c.experiment->add_option("--beta", r->beta_list, "bandwidth exponents h = n^-beta")->delimiter(',');
    c.experiment->add_option("--reps", r->reps, "replications per cell")->check(CLI::PositiveNumber);
    c.experiment->add_option("--grid,--grid-count", r->grid_count, "grid points on [lower, upper]")
        ->check(CLI::PositiveNumber);
    c.experiment->add_option("--type", r->type, "estimator type")->check(CLI::IsMember(kTypes));
    c.experiment->add_option("--refine", r->refine, "substeps per step, continuous type")
        ->check(CLI::PositiveNumber);
    c.experiment->add_option("--kernel", r->kernel, "kernel")->check(CLI::IsMember(kernel_names()));
    c.experiment->add_flag("--curve", r->curve,
                           "write x,estimate,truth for one replication at the first n and beta");
    c.experiment->add_option("--threads", r->threads, "worker threads, 0 = all cores (results do not depend on it)");
    add_common(c.experiment, *r);

    r = &rs.normality;
    c.normality = app.add_subcommand("normality", "standardised errors at one point against N(0,1)");
    add_model(c.normality, *r, false);
    c.normality->add_option("--x0", r->x0, "evaluation point (state units)");
    c.normality->add_option("--n", r->n, "sample size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
    c.normality->add_option("--beta", r->beta, "bandwidth exponent h = n^-beta")
        ->check(CLI::Range(0.0, 1.0));
    c.normality->add_option("--reps", r->reps, "replications")->check(CLI::PositiveNumber);
    c.normality->add_option("--type", r->type, "estimator type")->check(CLI::IsMember(kTypes));
    c.normality->add_option("--refine", r->refine, "substeps per step, continuous type")
        ->check(CLI::PositiveNumber);
    c.normality->add_option("--kernel", r->kernel, "kernel")->check(CLI::IsMember(kernel_names()));
    c.normality->add_option("--epsilon", r->epsilon, "rate-condition epsilon")
        ->check(CLI::Range(0.0, 0.5));
    c.normality->add_option("--convention", r->convention, "density sign used for the variance")
        ->check(CLI::IsMember(kConventions));
    c.normality->add_option("--panels", r->panels, "quadrature panels")->check(CLI::PositiveNumber);
    c.normality->add_option("--threads", r->threads, "worker threads, 0 = all cores (results do not depend on it)");
    add_common(c.normality, *r);
    return c;
}

std::string trim(std::string s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Appends `--key=value` for every config line whose key was not given on the
// command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const CLI::App& app) {
    std::string file;
    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (sub_pos == args.size() && app.get_subcommand_no_throw(args[i]) != nullptr) sub_pos = i;
        if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
    }
    if (file.empty() || sub_pos == args.size()) return args;
    const CLI::App* sub = app.get_subcommand_no_throw(args[sub_pos]);

    std::ifstream in(file);
    if (!in) throw UsageError("--config: cannot open '" + file + "'");

    std::set<std::string> given;
    for (const auto& a : args) {
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
    }

    std::vector<std::string> merged = args;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--config " + file + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        const std::string flag = "--" + key;
        if (key == "config" || sub->get_option_no_throw(flag) == nullptr) {
            throw UsageError("--config " + file + ": unknown key '" + key + "' for '" + sub->get_name() + "'");
        }
        if (!given.count(flag)) merged.push_back(flag + "=" + value);
    }
    return merged;
}

bool given(const CLI::App* sub, const char* flag) { return sub->get_option(flag)->count() > 0; }

BarrierConfig barrier_of(BarrierMode mode, double lower, double upper) {
    return mode == BarrierMode::two_sided ? BarrierConfig::two_sided(lower, upper)
                                          : BarrierConfig::one_sided(lower);
}

std::vector<double> grid_of(const CLI::App* sub, const Raw& raw) {
    const double lo = given(sub, "--grid-min") ? raw.grid_min : raw.lower;
    const double hi = given(sub, "--grid-max") ? raw.grid_max : raw.upper;
    if (!(lo < hi)) throw std::invalid_argument("--grid-min must be below --grid-max");
    return midpoint_grid(lo, hi, raw.grid_count);
}

RunConfig convert(const Commands& c, const RawSet& rs) {
    const CLI::App* subs[] = {c.simulate, c.density, c.estimate, c.experiment, c.normality};
    const Raw* raws[] = {&rs.simulate, &rs.density, &rs.estimate, &rs.experiment, &rs.normality};
    std::size_t which = 0;
    while (!subs[which]->parsed()) ++which;
    const Raw& raw = *raws[which];
    RunConfig cfg;
    cfg.out = raw.out;
    cfg.seed = raw.seed;

    if (c.simulate->parsed()) {
        cfg.subcommand = "simulate";
        SimulateArgs a;
        a.case_id = raw.case_id;
        a.refine = raw.refine;
        a.sim.drift = builtin_drift(raw.case_id);
        a.sim.sigma = raw.sigma;
        a.sim.barrier = barrier_of(parse_barrier_mode(raw.mode), raw.lower, raw.upper);
        a.sim.n_steps = raw.n;
        a.sim.delta = given(c.simulate, "--delta") ? raw.delta : delta_of_n(raw.n);
        if (given(c.simulate, "--x0")) a.sim.x0 = raw.x0;
        a.sim.seed = raw.seed;
        a.sim.burn_in = raw.burn_in;
        a.sim.validate();
        cfg.args = a;
    } else if (c.density->parsed()) {
        cfg.subcommand = "density";
        DensityArgs a;
        a.case_id = raw.case_id;
        a.sigma = raw.sigma;
        if (!(raw.sigma > 0.0)) throw std::invalid_argument("--sigma must be > 0 for the density");
        a.barrier = barrier_of(parse_barrier_mode(raw.mode), raw.lower, raw.upper);
        a.grid = grid_of(c.density, raw);
        a.h = raw.h;
        a.kernel = raw.kernel;
        a.panels = raw.panels;
        a.convention = raw.convention == "stationary" ? DensityConvention::stationary
                                                      : DensityConvention::published;
        cfg.args = a;
    } else if (c.estimate->parsed()) {
        cfg.subcommand = "estimate";
        EstimateArgs a;
        a.path_file = raw.path_file;
        if (given(c.estimate, "--h")) a.h = raw.h;
        a.beta = raw.beta;
        a.kernel = raw.kernel;
        a.type = parse_estimator_type(raw.type);
        if (given(c.estimate, "--mode")) a.mode = parse_barrier_mode(raw.mode);
        if (given(c.estimate, "--lower")) a.lower = raw.lower;
        if (given(c.estimate, "--upper")) a.upper = raw.upper;
        a.grid = grid_of(c.estimate, raw);
        cfg.args = a;
    } else if (c.experiment->parsed()) {
        cfg.subcommand = "experiment";
        ExperimentArgs a;
        a.plan.case_id = raw.case_id;
        a.plan.sigma = raw.sigma;
        a.plan.lower = raw.lower;
        a.plan.upper = raw.upper;
        a.plan.n_list = raw.n_list;
        a.plan.beta_list = raw.beta_list;
        a.plan.n_replications = raw.reps;
        a.plan.grid_count = raw.grid_count;
        a.plan.estimator = parse_estimator_type(raw.type);
        a.plan.refine = raw.refine;
        a.plan.kernel = raw.kernel;
        a.plan.base_seed = raw.seed;
        a.plan.threads = raw.threads;
        a.curve = raw.curve;
        const std::string mode = given(c.experiment, "--mode") ? raw.mode : "both";
        if (mode == "both") {
            if (a.curve) throw std::invalid_argument("--curve needs a single --mode");
            a.modes = {BarrierMode::two_sided, BarrierMode::one_sided_lower};
        } else {
            a.modes = {parse_barrier_mode(mode)};
        }
        a.plan.mode = a.modes.front();
        a.plan.validate();
        cfg.args = a;
    } else {
        cfg.subcommand = "normality";
        NormalityArgs a;
        auto& n = a.cfg;
        n.case_id = raw.case_id;
        n.x0 = raw.x0;
        n.n = raw.n;
        n.beta = raw.beta;
        n.n_replications = raw.reps;
        n.base_seed = raw.seed;
        n.mode = parse_barrier_mode(raw.mode);
        n.sigma = raw.sigma;
        if (!(raw.sigma > 0.0)) throw std::invalid_argument("--sigma must be > 0");
        n.lower = raw.lower;
        n.upper = raw.upper;
        n.estimator = parse_estimator_type(raw.type);
        n.refine = raw.refine;
        n.kernel = raw.kernel;
        n.epsilon = raw.epsilon;
        n.convention = raw.convention == "stationary" ? DensityConvention::stationary
                                                      : DensityConvention::published;
        n.quad_panels = raw.panels;
        n.threads = raw.threads;
        const auto barrier = barrier_of(n.mode, n.lower, n.upper);
        const double h = bandwidth(n.n, n.beta);
        if (!(n.x0 - barrier.lower() > h && (!barrier.upper() || *barrier.upper() - n.x0 > h))) {
            throw std::invalid_argument("--x0 must lie more than h = " + format_double(h) +
                                        " inside the barriers");
        }
        cfg.args = a;
    }
    return cfg;
}

// Writes through a temporary file so a failed run leaves nothing at `out`.
template <class Writer>
void write_atomically(const std::string& out, Writer&& writer) {
    const std::filesystem::path target(out);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    try {
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
            writer(f);
            f.flush();
            if (!f) throw std::runtime_error("write to '" + out + "' failed");
        }
        std::filesystem::rename(tmp, target);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

std::size_t run_simulate(const RunConfig& cfg, const SimulateArgs& a) {
    const SamplePath path = a.refine == 1 ? simulate_path(a.sim) : simulate_fine(a.sim, a.refine);
    write_atomically(cfg.out, [&](std::ostream& o) { write_path_csv(o, path); });
    return path.size();
}

std::size_t run_density(const RunConfig& cfg, const DensityArgs& a) {
    const InvariantDensity density(builtin_drift(a.case_id), a.sigma, a.barrier, a.panels, a.convention);
    const KernelSpec kernel = make_kernel(a.kernel, a.h);
    std::ostringstream body;
    body << "# seed=" << cfg.seed << '\n' << "x,pi,f,sigma_asym\n";
    for (double x : a.grid) {
        const double f = density.f(kernel, x);
        body << format_double(x) << ',' << format_double(density.pi(x)) << ',' << format_double(f) << ',';
        if (f > 0.0) body << format_double(a.sigma * a.sigma / f);
        body << '\n';
    }
    write_atomically(cfg.out, [&](std::ostream& o) { o << body.str(); });
    return a.grid.size();
}

std::size_t run_estimate(const RunConfig& cfg, const EstimateArgs& a, std::uint64_t& seed_out) {
    std::ifstream in(a.path_file);
    if (!in) throw std::runtime_error("cannot open path file '" + a.path_file + "'");
    SamplePath path = read_path_csv(in);
    if (a.mode || a.lower || a.upper) {
        const BarrierMode mode = a.mode.value_or(path.barrier.mode());
        const double lower = a.lower.value_or(path.barrier.lower());
        const double upper = a.upper.value_or(path.barrier.upper().value_or(3.0));
        path.barrier = barrier_of(mode, lower, upper);
    }
    seed_out = path.seed;
    if (path.size() < 2) throw std::runtime_error("path has fewer than two points");
    const double h = a.h.value_or(bandwidth(path.size() - 1, a.beta));
    const KernelSpec kernel = make_kernel(a.kernel, h);
    const EstimateResult est = a.type == EstimatorType::discrete ? nw_discrete(path, kernel, a.grid)
                                                                 : nw_continuous(path, kernel, a.grid);
    write_atomically(cfg.out, [&](std::ostream& o) {
        o << "# seed=" << path.seed << '\n' << "x,estimate,denominator,undefined,boundary\n";
        for (std::size_t i = 0; i < est.grid.size(); ++i) {
            o << format_double(est.grid[i]) << ',';
            if (!est.undefined[i]) o << format_double(est.values[i]);
            o << ',' << format_double(est.denominators[i]) << ',' << (est.undefined[i] ? 1 : 0) << ','
              << (est.boundary[i] ? 1 : 0) << '\n';
        }
    });
    return est.grid.size();
}

std::size_t run_experiment(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& log) {
    if (a.curve) {
        const auto rows = curve(a.plan, a.plan.n_list.front(), a.plan.beta_list.front(), cfg.seed);
        write_atomically(cfg.out, [&](std::ostream& o) { write_curve_csv(o, rows, cfg.seed); });
        return 1;
    }
    const TableResult table = run_table(a.plan, a.modes);
    for (const auto& w : table.warnings) log << "warning: " << w << '\n';
    for (const auto& f : table.failures) {
        log << "cell failed: mode=" << to_string(f.mode) << " n=" << f.n
            << " beta=" << format_double(f.beta) << ": " << f.message << '\n';
    }
    if (table.cells.empty()) throw std::runtime_error("every cell failed");
    write_atomically(cfg.out, [&](std::ostream& o) { write_summary_csv(o, table.cells, cfg.seed); });
    if (!table.failures.empty()) {
        throw std::runtime_error(std::to_string(table.failures.size()) +
                                 " cell(s) failed; the table holds the others");
    }
    return table.cells.size();
}

std::size_t run_normality(const RunConfig& cfg, const NormalityArgs& a, std::ostream& log) {
    const NormalityReport rep = normality_check(a.cfg);
    for (const auto& w : rep.schedule_warnings) log << "warning: schedule: " << w << '\n';
    log << "normality: mean_z=" << format_double(rep.mean_z) << " var_z=" << format_double(rep.var_z)
        << " ks=" << format_double(rep.ks_stat) << " dropped=" << rep.dropped << '\n';
    const std::array<NormalityReport, 1> reports{rep};
    write_atomically(cfg.out, [&](std::ostream& o) { write_normality_csv(o, reports, cfg.seed); });
    return 1;
}

}  // namespace

RunConfig parse(const std::vector<std::string>& args) {
    CLI::App app{"Drift estimation for reflected diffusions", "reflkit"};
    RawSet raws;
    const Commands c = build(app, raws);

    std::vector<std::string> merged = merge_config(args, app);
    std::reverse(merged.begin(), merged.end());
    try {
        app.parse(merged);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    try {
        return convert(c, raws);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void run(const RunConfig& cfg, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t seed = cfg.seed;
    std::size_t count = 0;
    std::string unit = "rows";
    if (const auto* a = std::get_if<SimulateArgs>(&cfg.args)) {
        count = run_simulate(cfg, *a);
        unit = "points";
    } else if (const auto* a = std::get_if<DensityArgs>(&cfg.args)) {
        count = run_density(cfg, *a);
    } else if (const auto* a = std::get_if<EstimateArgs>(&cfg.args)) {
        count = run_estimate(cfg, *a, seed);
    } else if (const auto* a = std::get_if<ExperimentArgs>(&cfg.args)) {
        count = run_experiment(cfg, *a, log);
        unit = a->curve ? "curve" : "cells";
    } else {
        count = run_normality(cfg, std::get<NormalityArgs>(cfg.args), log);
        unit = "cells";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log << cfg.subcommand << ": " << count << ' ' << unit << ", " << std::fixed << std::setprecision(2)
        << secs << " s, seed=" << seed << '\n';
    log.unsetf(std::ios::floatfield);
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for the flag list.\n";
        return kExitUsage;
    }
    try {
        run(cfg, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace reflkit::cli
