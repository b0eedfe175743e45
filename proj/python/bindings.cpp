#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "reflkit/density.hpp"
#include "reflkit/errors.hpp"
#include "reflkit/estimate.hpp"
#include "reflkit/experiment.hpp"
#include "reflkit/simulate.hpp"

namespace py = pybind11;
using namespace reflkit;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<bool> to_array(const std::vector<bool>& v) {
    py::array_t<bool> out(v.size());
    auto m = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) m(i) = v[i];
    return out;
}

BarrierConfig barrier_of(const std::string& mode, double lower, double upper) {
    return parse_barrier_mode(mode) == BarrierMode::two_sided ? BarrierConfig::two_sided(lower, upper)
                                                              : BarrierConfig::one_sided(lower);
}

// An int selects a built-in case; a callable is wrapped as a custom drift.
DriftSpec drift_of(const py::object& drift) {
    if (py::isinstance<py::int_>(drift)) return builtin_drift(drift.cast<int>());
    auto fn = drift.cast<std::function<double(double)>>();
    return DriftSpec{"python", std::move(fn), std::nullopt};
}

std::vector<double> grid_or_default(const std::optional<std::vector<double>>& grid, const BarrierConfig& b) {
    if (grid) return *grid;
    return midpoint_grid(b.lower(), b.upper().value_or(3.0), 300);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reflected diffusions: simulation, drift estimation, invariant density, Monte Carlo cells";

    py::register_exception<simulation_diverged>(m, "SimulationDiverged", PyExc_RuntimeError);
    py::register_exception<model_not_ergodic>(m, "ModelNotErgodic", PyExc_RuntimeError);
    py::register_exception<undefined_variance>(m, "UndefinedVariance", PyExc_ValueError);
    py::register_exception<no_data>(m, "NoData", PyExc_RuntimeError);

    m.def("drift", [](int case_id, double x) { return builtin_drift(case_id)(x); }, py::arg("case"), py::arg("x"));
    m.def("bandwidth", &bandwidth, py::arg("n"), py::arg("beta"));
    m.def("delta_of_n", &delta_of_n, py::arg("n"));
    m.def("midpoint_grid", &midpoint_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));

    py::class_<SamplePath>(m, "SamplePath")
        .def_property_readonly("t", [](const SamplePath& p) { return to_array(p.times); })
        .def_property_readonly("x", [](const SamplePath& p) { return to_array(p.x); })
        .def_property_readonly("l_reg", [](const SamplePath& p) { return to_array(p.l_reg); })
        .def_property_readonly("r_reg", [](const SamplePath& p) { return to_array(p.r_reg); })
        .def_readonly("delta", &SamplePath::delta)
        .def_readonly("sigma", &SamplePath::sigma)
        .def_readonly("seed", &SamplePath::seed)
        .def_property_readonly("mode", [](const SamplePath& p) { return std::string(to_string(p.barrier.mode())); })
        .def("__len__", &SamplePath::size);

    m.def(
        "simulate",
        [](const py::object& drift, std::size_t n_steps, std::optional<double> delta, double sigma,
           const std::string& mode, double lower, double upper, std::optional<double> x0, std::uint64_t seed,
           std::size_t burn_in, std::size_t refine) {
            SimConfig cfg;
            cfg.drift = drift_of(drift);
            cfg.sigma = sigma;
            cfg.barrier = barrier_of(mode, lower, upper);
            cfg.n_steps = n_steps;
            cfg.delta = delta.value_or(delta_of_n(n_steps));
            cfg.x0 = x0;
            cfg.seed = seed;
            cfg.burn_in = burn_in;
            return refine == 1 ? simulate_path(cfg) : simulate_fine(cfg, refine);
        },
        py::arg("drift") = 1, py::arg("n_steps") = 1600, py::arg("delta") = py::none(), py::arg("sigma") = 0.2,
        py::arg("mode") = "two-sided", py::arg("lower") = 0.0, py::arg("upper") = 3.0, py::arg("x0") = py::none(),
        py::arg("seed") = 0, py::arg("burn_in") = 0, py::arg("refine") = 1,
        "Simulate one reflected path; `drift` is a case number or a callable.");

    py::class_<EstimateResult>(m, "EstimateResult")
        .def_property_readonly("grid", [](const EstimateResult& r) { return to_array(r.grid); })
        .def_property_readonly("values", [](const EstimateResult& r) { return to_array(r.values); })
        .def_property_readonly("denominators", [](const EstimateResult& r) { return to_array(r.denominators); })
        .def_property_readonly("undefined", [](const EstimateResult& r) { return to_array(r.undefined); })
        .def_property_readonly("boundary", [](const EstimateResult& r) { return to_array(r.boundary); })
        .def_property_readonly("h", [](const EstimateResult& r) { return r.meta.h; })
        .def("defined_count", &EstimateResult::defined_count);

    m.def(
        "estimate",
        [](const SamplePath& path, double h, std::optional<std::vector<double>> grid, const std::string& kernel,
           const std::string& type) {
            const auto k = make_kernel(kernel, h);
            const auto g = grid_or_default(grid, path.barrier);
            return parse_estimator_type(type) == EstimatorType::discrete ? nw_discrete(path, k, g)
                                                                         : nw_continuous(path, k, g);
        },
        py::arg("path"), py::arg("h"), py::arg("grid") = py::none(), py::arg("kernel") = "epanechnikov",
        py::arg("type") = "discrete",
        "Nadaraya-Watson drift estimate on a grid (default: 300 midpoints of [l, u]).");

    py::class_<InvariantDensity>(m, "InvariantDensity")
        .def(py::init([](const py::object& drift, double sigma, const std::string& mode, double lower, double upper,
                         std::size_t panels, const std::string& convention) {
                 const auto conv = convention == "stationary" ? DensityConvention::stationary
                                                              : DensityConvention::published;
                 if (convention != "stationary" && convention != "published") {
                     throw std::invalid_argument("convention must be 'published' or 'stationary'");
                 }
                 return InvariantDensity(drift_of(drift), sigma, barrier_of(mode, lower, upper), panels, conv);
             }),
             py::arg("drift") = 1, py::arg("sigma") = 0.2, py::arg("mode") = "two-sided", py::arg("lower") = 0.0,
             py::arg("upper") = 3.0, py::arg("panels") = 1024, py::arg("convention") = "published")
        .def("pi", [](const InvariantDensity& d, double x) { return d.pi(x); }, py::arg("x"))
        .def(
            "pi",
            [](const InvariantDensity& d, py::array_t<double, py::array::c_style | py::array::forcecast> xs) {
                py::array_t<double> out(xs.request().shape);
                const double* in = xs.data();
                double* o = out.mutable_data();
                for (py::ssize_t i = 0; i < xs.size(); ++i) o[i] = d.pi(in[i]);
                return out;
            },
            py::arg("x"))
        .def("inner_integral", &InvariantDensity::inner_integral, py::arg("x"))
        .def(
            "f",
            [](const InvariantDensity& d, double x, double h, const std::string& kernel) {
                return d.f(make_kernel(kernel, h), x);
            },
            py::arg("x"), py::arg("h"), py::arg("kernel") = "epanechnikov")
        .def(
            "sigma_asym",
            [](const InvariantDensity& d, double x, double h, const std::string& kernel) {
                return d.sigma_asym(make_kernel(kernel, h), x);
            },
            py::arg("x"), py::arg("h"), py::arg("kernel") = "epanechnikov")
        .def_property_readonly("log_normalizer", &InvariantDensity::log_normalizer)
        .def_property_readonly("support_upper", &InvariantDensity::support_upper);

    py::class_<McSummary>(m, "McSummary")
        .def_readonly("case", &McSummary::case_id)
        .def_property_readonly("mode", [](const McSummary& s) { return std::string(to_string(s.mode)); })
        .def_readonly("n", &McSummary::n)
        .def_readonly("beta", &McSummary::beta)
        .def_readonly("h", &McSummary::h)
        .def_readonly("delta", &McSummary::delta)
        .def_readonly("rase_mean", &McSummary::rase_mean)
        .def_readonly("rase_std", &McSummary::rase_std)
        .def_readonly("rase_se", &McSummary::rase_se)
        .def_readonly("rase_median", &McSummary::rase_median)
        .def_readonly("excluded_mean", &McSummary::excluded_mean)
        .def_readonly("n_replications", &McSummary::n_replications)
        .def_property_readonly("rase_values", [](const McSummary& s) { return to_array(s.rase_values); });

    m.def(
        "run_cell",
        [](int case_id, const std::string& mode, std::size_t n, double beta, std::size_t reps, std::uint64_t seed,
           const std::string& type, std::size_t refine, std::size_t threads) {
            ExperimentPlan plan;
            plan.case_id = case_id;
            plan.mode = parse_barrier_mode(mode);
            plan.n_replications = reps;
            plan.base_seed = seed;
            plan.estimator = parse_estimator_type(type);
            plan.refine = refine;
            plan.threads = threads;
            py::gil_scoped_release release;
            return run_cell(plan, n, beta);
        },
        py::arg("case") = 1, py::arg("mode") = "two-sided", py::arg("n") = 400, py::arg("beta") = 0.3,
        py::arg("reps") = 100, py::arg("seed") = 0, py::arg("type") = "discrete", py::arg("refine") = 10,
        py::arg("threads") = 0, "RASE statistics of one (case, mode, n, beta) cell.");

    py::class_<NormalityReport>(m, "NormalityReport")
        .def_readonly("h", &NormalityReport::h)
        .def_readonly("delta", &NormalityReport::delta)
        .def_readonly("sigma_asym", &NormalityReport::sigma_asym)
        .def_readonly("scale", &NormalityReport::scale)
        .def_readonly("mean_z", &NormalityReport::mean_z)
        .def_readonly("var_z", &NormalityReport::var_z)
        .def_readonly("ks_stat", &NormalityReport::ks_stat)
        .def_readonly("dropped", &NormalityReport::dropped)
        .def_readonly("used", &NormalityReport::used)
        .def_readonly("schedule_warnings", &NormalityReport::schedule_warnings)
        .def_property_readonly("z", [](const NormalityReport& r) { return to_array(r.z); });

    m.def(
        "normality_check",
        [](int case_id, double x0, std::size_t n, double beta, std::size_t reps, std::uint64_t seed,
           const std::string& type, std::size_t refine, const std::string& convention, std::size_t threads) {
            NormalityConfig cfg;
            cfg.case_id = case_id;
            cfg.x0 = x0;
            cfg.n = n;
            cfg.beta = beta;
            cfg.n_replications = reps;
            cfg.base_seed = seed;
            cfg.estimator = parse_estimator_type(type);
            cfg.refine = refine;
            cfg.convention = convention == "stationary" ? DensityConvention::stationary
                                                        : DensityConvention::published;
            cfg.threads = threads;
            py::gil_scoped_release release;
            return normality_check(cfg);
        },
        py::arg("case") = 2, py::arg("x0") = 1.5, py::arg("n") = 1600, py::arg("beta") = 0.3, py::arg("reps") = 500,
        py::arg("seed") = 0, py::arg("type") = "discrete", py::arg("refine") = 10,
        py::arg("convention") = "published", py::arg("threads") = 0);
}
