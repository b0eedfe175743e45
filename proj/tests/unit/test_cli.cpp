#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "doctest.h"

using namespace reflkit;
using namespace reflkit::cli;

namespace {

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = main_entry(args, out, err);
    if (err_text) *err_text = err.str();
    return rc;
}

}  // namespace

TEST_CASE("parse an experiment invocation") {
    const auto cfg = parse({"experiment", "--case", "1", "--mode", "two-sided", "--reps", "200", "--seed", "42",
                            "--out", "t1.csv"});
    CHECK(cfg.subcommand == "experiment");
    CHECK(cfg.out == "t1.csv");
    CHECK(cfg.seed == 42);
    const auto& a = std::get<ExperimentArgs>(cfg.args);
    CHECK(a.plan.n_replications == 200);
    CHECK(a.plan.base_seed == 42);
    CHECK(a.modes == std::vector<BarrierMode>{BarrierMode::two_sided});
    CHECK(a.plan.n_list == std::vector<std::size_t>{400, 900, 1600});

    const auto both = parse({"experiment", "--n", "400,900", "--out", "x.csv"});
    CHECK(std::get<ExperimentArgs>(both.args).modes.size() == 2);
    CHECK(std::get<ExperimentArgs>(both.args).plan.n_list == std::vector<std::size_t>{400, 900});
}

TEST_CASE("usage errors name the flag") {
    try {
        parse({"experiment", "--case", "4", "--out", "x.csv"});
        FAIL("expected a usage error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("--case") != std::string::npos);
    }
    CHECK_THROWS_AS(parse({"experiment", "--bogus", "1", "--out", "x.csv"}), UsageError);
    CHECK_THROWS_AS(parse({"experiment", "--beta", "1.5", "--out", "x.csv"}), UsageError);
    CHECK_THROWS_AS(parse({"simulate", "--case", "1"}), UsageError);  // --out missing
    CHECK_THROWS_AS(parse({"normality", "--x0", "0.01", "--out", "x.csv"}), UsageError);
    CHECK_THROWS_AS(parse({"simulate", "--lower", "3", "--upper", "1", "--out", "x.csv"}), UsageError);
    CHECK_THROWS_AS(parse({}), UsageError);
    CHECK(invoke({"experiment", "--case", "4", "--out", "x.csv"}) == kExitUsage);
}

TEST_CASE("config file values yield to the command line") {
    {
        std::ofstream f("plan.cfg");
        f << "# desk run\nreps = 80\ncase = 2\nn = 400, 900\n\nbeta = 0.3  # only one\n";
    }
    const auto cfg = parse({"experiment", "--config", "plan.cfg", "--reps", "50", "--out", "x.csv"});
    const auto& a = std::get<ExperimentArgs>(cfg.args);
    CHECK(a.plan.n_replications == 50);
    CHECK(a.plan.case_id == 2);
    CHECK(a.plan.n_list == std::vector<std::size_t>{400, 900});
    CHECK(a.plan.beta_list == std::vector<double>{0.3});

    {
        std::ofstream f("bad.cfg");
        f << "reps = 10\nwidth = 3\n";
    }
    try {
        parse({"experiment", "--config", "bad.cfg", "--out", "x.csv"});
        FAIL("expected a usage error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("width") != std::string::npos);
    }
    CHECK_THROWS_AS(parse({"experiment", "--config", "missing.cfg", "--out", "x.csv"}), UsageError);
}

TEST_CASE("help lists flags with defaults") {
    for (const char* sub : {"simulate", "density", "estimate", "experiment", "normality"}) {
        try {
            parse({sub, "--help"});
            FAIL("expected help");
        } catch (const HelpRequested& h) {
            CHECK(h.text.find("--out") != std::string::npos);
            CHECK(h.text.find("--config") != std::string::npos);
        }
    }
    std::ostringstream out, err;
    CHECK(main_entry({"normality", "--help"}, out, err) == kExitOk);
    CHECK(out.str().find("--reps") != std::string::npos);
    CHECK(out.str().find("[500]") != std::string::npos);
}

TEST_CASE("simulate output is byte-identical on rerun") {
    const std::vector<std::string> args{"simulate", "--case", "2", "--n", "100", "--delta", "0.01", "--seed", "7",
                                        "--out", "p.csv"};
    REQUIRE(invoke(args) == kExitOk);
    const auto first = slurp("p.csv");
    REQUIRE(invoke(args) == kExitOk);
    CHECK(slurp("p.csv") == first);
    CHECK(first.rfind("# seed=7\n", 0) == 0);
    CHECK(first.find("t,x,l_reg,r_reg\n") != std::string::npos);

    REQUIRE(invoke({"estimate", "--path", "p.csv", "--h", "0.2", "--out", "e.csv"}) == kExitOk);
    const auto est = slurp("e.csv");
    CHECK(est.rfind("# seed=7\nx,estimate,denominator,undefined,boundary\n", 0) == 0);
}

TEST_CASE("density schema") {
    std::string err;
    REQUIRE(invoke({"density", "--case", "1", "--grid", "300", "--out", "d.csv"}, &err) == kExitOk);
    CHECK(err.find("density: 300 rows") != std::string::npos);
    CHECK(err.find("seed=0") != std::string::npos);
    std::istringstream in(slurp("d.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "# seed=0");
    std::getline(in, line);
    CHECK(line == "x,pi,f,sigma_asym");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 300);
}

TEST_CASE("normality dispatch") {
    REQUIRE(invoke({"normality", "--case", "2", "--x0", "1.5", "--n", "1600", "--beta", "0.3", "--reps", "40",
                    "--out", "n.csv"}) == kExitOk);
    const auto text = slurp("n.csv");
    CHECK(text.rfind("# seed=0\ncase,x0,n,beta,mean_z,var_z,ks_stat,dropped\n2,1.5,1600,", 0) == 0);
}

TEST_CASE("runtime failures exit 1 and leave no output") {
    std::filesystem::remove("gone.csv");
    CHECK(invoke({"estimate", "--path", "does-not-exist.csv", "--out", "gone.csv"}) == kExitRuntime);
    CHECK_FALSE(std::filesystem::exists("gone.csv"));
    CHECK_FALSE(std::filesystem::exists("gone.csv.partial"));

    // With the stationary sign the case-2 density on [0, inf) cannot be normalised.
    CHECK(invoke({"density", "--case", "2", "--mode", "one-sided", "--convention", "stationary", "--out",
                  "gone.csv"}) == kExitRuntime);
    CHECK_FALSE(std::filesystem::exists("gone.csv"));
}

TEST_CASE("experiment output does not depend on the thread count") {
    const std::vector<std::string> base{"experiment", "--n", "400", "--beta", "0.3,0.2", "--reps", "12", "--seed", "5"};
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1", "--out", "a.csv"});
    b.insert(b.end(), {"--threads", "3", "--out", "b.csv"});
    REQUIRE(invoke(a) == kExitOk);
    REQUIRE(invoke(b) == kExitOk);
    CHECK(slurp("a.csv") == slurp("b.csv"));
}
