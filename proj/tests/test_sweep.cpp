#include "spinchain/sweep.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

using namespace spinchain;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "spinchain-tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    fs::remove(manifest_path_for(p));
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream      in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// CSV text with the wall-time column removed.
std::string numeric_fields(const fs::path &p) {
    std::istringstream in(slurp(p));
    std::string        out, line;
    while(std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

SweepConfig small_config(Backend mode, std::vector<int> ns, double lo, double hi, double step, const fs::path &out) {
    SweepConfig cfg;
    cfg.mode        = mode;
    cfg.n_list      = std::move(ns);
    cfg.p_min       = lo;
    cfg.p_max       = hi;
    cfg.p_step      = step;
    cfg.output_path = out;
    return cfg;
}

} // namespace

TEST_CASE("grids") {
    const auto g = uniform_grid(0.5, 1.2, 0.01);
    CHECK(g.size() == 71);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == 1.2);
    CHECK(g[35] == 0.85);
    CHECK(uniform_grid(0.85, 0.85, 0.01).size() == 1);

    const auto d = default_grid();
    CHECK(d.size() == 71 + 50 - 10);
    CHECK(std::is_sorted(d.begin(), d.end()));
    CHECK(std::count(d.begin(), d.end(), 0.802) == 1);
    CHECK(std::count(d.begin(), d.end(), 0.85) == 1);
    CHECK(std::count(d.begin(), d.end(), 0.95) == 1);
    CHECK(std::count(d.begin(), d.end(), 0.951) == 0);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.85) == "0.85");
    CHECK(format_double(-49.7992895269481) == "-49.7992895269");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(record_key(40, 0.8500000000001) == "40,0.85");
}

TEST_CASE("configuration validation") {
    SweepConfig cfg;
    cfg.validate();
    cfg.n_list = {7};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg        = {};
    cfg.mode   = Backend::kEd;
    cfg.n_list = {14};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg       = {};
    cfg.delta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg       = {};
    cfg.p_min = 0.9;
    CHECK_THROWS_AS(cfg.validate(), ConfigError); // range given partially
    cfg.p_max  = 0.8;
    cfg.p_step = 0.01;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.p_max  = 1.0;
    cfg.p_step = -0.01;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg         = {};
    cfg.workers = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg        = {};
    cfg.dmrg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("exact-diagonalization sweep over the standard window") {
    const auto out     = scratch("ed8.csv");
    const auto cfg     = small_config(Backend::kEd, {8}, 0.5, 1.2, 0.01, out);
    const auto outcome = run_sweep(cfg);
    CHECK(outcome.exit_code() == 0);
    CHECK(outcome.records.size() == 71);
    CHECK(outcome.computed == 71);
    const auto rows = read_dataset(out);
    REQUIRE(rows.size() == 71);
    for(const auto &r : rows) {
        CHECK_FALSE(r.failed);
        CHECK(r.n == 8);
        CHECK(r.fidelity > 0.0);
        CHECK(r.fidelity <= 1.0);
        CHECK(r.susceptibility >= 0.0);
        CHECK(r.entropy_pair >= 0.0);
        CHECK(r.entropy_pair <= 2.0 * std::log2(3.0));
        CHECK(r.max_discarded_weight == 0.0);
        CHECK(r.sweeps_run == 0);
        CHECK(std::abs(r.susceptibility - 2.0 * (1.0 - r.fidelity) / (8 * 1e-6)) < 1e-3);
    }
    CHECK(slurp(out).rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("single-point grid still fills the derivative fields") {
    const auto out     = scratch("single.csv");
    const auto cfg     = small_config(Backend::kDmrg, {6}, 0.85, 0.85, 0.01, out);
    const auto outcome = run_sweep(cfg);
    REQUIRE(outcome.records.size() == 1);
    const auto &r = outcome.records[0];
    CHECK_FALSE(r.failed);
    CHECK(std::isfinite(r.de_dp));
    CHECK(r.de_dp != 0.0);
    CHECK(std::isfinite(r.susceptibility));
    CHECK(outcome.solves.size() == 3);
}

TEST_CASE("identical runs give identical numbers") {
    const auto a = scratch("det_a.csv"), b = scratch("det_b.csv");
    auto       cfg = small_config(Backend::kDmrg, {8, 6}, 0.80, 0.86, 0.02, a);
    run_sweep(cfg);
    cfg.output_path = b;
    run_sweep(cfg);
    CHECK(numeric_fields(a) == numeric_fields(b));
}

TEST_CASE("records come out once each in (N, p) order") {
    const auto out     = scratch("order.csv");
    auto       cfg     = small_config(Backend::kDmrg, {8, 4, 6}, 0.8, 0.9, 0.02, out);
    cfg.workers        = 3;
    const auto outcome = run_sweep(cfg);
    const auto rows    = read_dataset(out);
    REQUIRE(rows.size() == 18);
    std::set<std::string> keys;
    for(std::size_t k = 0; k < rows.size(); ++k) {
        keys.insert(record_key(rows[k].n, rows[k].p));
        if(k > 0) {
            const bool ordered = rows[k - 1].n < rows[k].n || (rows[k - 1].n == rows[k].n && rows[k - 1].p < rows[k].p);
            CHECK(ordered);
        }
    }
    CHECK(keys.size() == 18);
    CHECK(outcome.exit_code() == 0);
}

TEST_CASE("resume computes only the missing points") {
    const auto out = scratch("resume.csv");
    auto       cfg = small_config(Backend::kEd, {6, 8}, 0.80, 0.90, 0.01, out);
    run_sweep(cfg);
    const std::string full = numeric_fields(out);

    // drop three rows and damage nothing else
    std::istringstream in(slurp(out));
    std::string        line, partial;
    for(int k = 0; std::getline(in, line); ++k)
        if(k != 2 && k != 7 && k != 15) partial += line + "\n";
    std::ofstream(out, std::ios::trunc) << partial;

    cfg.resume         = true;
    const auto outcome = run_sweep(cfg);
    CHECK(outcome.computed == 3);
    CHECK(outcome.records.size() == 22);
    CHECK(numeric_fields(out) == full);

    const auto again = run_sweep(cfg);
    CHECK(again.computed == 0);
}

TEST_CASE("failed points are recorded and reported") {
    const auto out = scratch("fail.csv");
    auto       cfg = small_config(Backend::kEd, {8}, 0.8, 0.82, 0.01, out);
    cfg.ed.max_iter    = 2;
    const auto outcome = run_sweep(cfg);
    CHECK(outcome.failed == 3);
    CHECK(outcome.exit_code() == 1);
    const auto rows = read_dataset(out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].failed);
    const auto manifest = nlohmann::json::parse(slurp(outcome.manifest_path));
    CHECK(manifest["failures"].size() == 3);
}

TEST_CASE("manifest documents the run") {
    const auto out     = scratch("manifest.csv");
    auto       cfg     = small_config(Backend::kDmrg, {6}, 0.84, 0.86, 0.01, out);
    cfg.oracle_check   = true;
    const auto outcome = run_sweep(cfg);
    const auto m       = nlohmann::json::parse(slurp(outcome.manifest_path));
    for(const char *key : {"format", "version", "config", "conventions", "records", "failures", "truncation_threshold",
                           "truncation_flagged", "solves", "oracle_check"})
        CHECK(m.contains(key));
    CHECK(m["version"] == kVersion);
    CHECK(m["config"]["dmrg"]["seed"] == 1);
    CHECK(m["config"]["ed"]["seed"] == cfg.ed.seed);
    CHECK(m["records"] == 3);
    CHECK(m["oracle_check"]["passed"] == true);
    CHECK(m["truncation_flagged"].empty());
    CHECK(outcome.exit_code() == 0);
}

TEST_CASE("truncation above the threshold is flagged") {
    const auto out     = scratch("flag.csv");
    auto       cfg     = small_config(Backend::kDmrg, {12}, 1.0, 1.0, 0.01, out);
    cfg.dmrg.m         = 6;
    const auto outcome = run_sweep(cfg);
    CHECK(outcome.truncation_flagged.size() == 1);
    auto m = nlohmann::json::parse(slurp(outcome.manifest_path));
    CHECK(m["truncation_flagged"].size() == 1);
    CHECK(outcome.records[0].max_discarded_weight >= kTruncationThreshold);

    // flags survive a resumed run that computes nothing
    cfg.resume = true;
    CHECK(run_sweep(cfg).computed == 0);
    m = nlohmann::json::parse(slurp(outcome.manifest_path));
    CHECK(m["truncation_flagged"].size() == 1);
}

TEST_CASE("oracle verification") {
    SweepConfig cfg;
    cfg.n_list = {8};
    cfg.p_min  = 0.80;
    cfg.p_max  = 0.89;
    cfg.p_step = 0.01;
    const auto report = verify_against_oracle(cfg);
    CHECK(report.passed);
    CHECK(report.points.size() == 10);
    CHECK(report.max_energy_dev < kOracleTolerance);
    CHECK(report.max_fidelity_dev < kOracleTolerance);
    CHECK(report.max_entropy_dev < kOracleTolerance);

    cfg.n_list = {2};
    const auto tiny = verify_against_oracle(cfg);
    CHECK(tiny.passed);
    CHECK(tiny.max_energy_dev < 1e-12);
    CHECK(tiny.max_fidelity_dev < 1e-12);
    CHECK(tiny.max_entropy_dev < 1e-12);

    cfg.n_list = {14};
    CHECK_THROWS_AS(verify_against_oracle(cfg), CapExceededError);
}

TEST_CASE("malformed datasets name the offending line") {
    const auto out = scratch("bad.csv");
    std::ofstream(out) << kCsvHeader << "\n8,0.8,0.001,1,1,0,0,0,0,0,0.1\n8,0.81,oops\n";
    try {
        read_dataset(out);
        FAIL("expected an error");
    } catch(const std::runtime_error &e) { CHECK(std::string(e.what()).find(":3:") != std::string::npos); }
    std::ofstream(out, std::ios::trunc) << "N,p\n";
    CHECK_THROWS_AS(read_dataset(out), std::runtime_error);
}

#ifdef SPINCHAIN_SWEEP_EXE
TEST_CASE("command line exit codes") {
    const auto  out = scratch("cli.csv");
    const std::string exe = SPINCHAIN_SWEEP_EXE;
    auto run = [&](const std::string &args) {
        const int status = std::system((exe + " " + args + " -q --output " + out.string() + " 2>/dev/null").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("--mode ed --n 6 --p-min 0.8 --p-max 0.82 --p-step 0.01") == 0);
    CHECK(read_dataset(out).size() == 3);
    CHECK(run("--mode ed --n 14 --p-min 0.8 --p-max 0.82 --p-step 0.01") == 2);
    CHECK(run("--n 7") == 2);
    CHECK(run("--p-min 0.9 --p-max 0.8 --p-step 0.01 --n 4") == 2);
    CHECK(run("--mode nonsense") == 2);
    CHECK(run("--n 4 --p-min 0.8 --p-max 0.8 --p-step 0.01 --paper-protocol --m 20") == 0);
}
#endif
