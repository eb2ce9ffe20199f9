#include "spinchain/sweep.hpp"

#include "spinchain/observables.hpp"

#include <json.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

namespace spinchain {

namespace {
    double round12(double x) { return std::round(x * 1e12) / 1e12; }

    const char *backend_name(Backend b) { return b == Backend::kEd ? "ed" : "dmrg"; }

    const char *initial_state_name(InitialState s) { return s == InitialState::kRandom ? "random" : "symmetric_product"; }
} // namespace

std::vector<double> uniform_grid(double p_min, double p_max, double p_step) {
    if(!(p_step > 0.0)) throw ConfigError("p_step must be positive");
    if(p_max < p_min) throw ConfigError("p_max must not be below p_min");
    const auto          count = static_cast<long>(std::floor((p_max - p_min) / p_step + 1e-9));
    std::vector<double> out;
    for(long k = 0; k <= count; ++k) out.push_back(round12(p_min + static_cast<double>(k) * p_step));
    return out;
}

std::vector<double> default_grid() {
    std::set<double> pts;
    for(double p : uniform_grid(0.50, 1.20, 0.01)) pts.insert(p);
    for(double p : uniform_grid(0.80, 0.90, 0.002)) pts.insert(p);
    // merge values that differ only by rounding noise
    std::vector<double> out;
    for(double p : pts)
        if(out.empty() || p - out.back() > 1e-9) out.push_back(p);
    return out;
}

void SweepConfig::validate() const {
    if(n_list.empty()) throw ConfigError("at least one chain length is required");
    for(int n : n_list) {
        if(n < 2 || n % 2 != 0) throw ConfigError("chain lengths must be even and >= 2, got " + std::to_string(n));
        if(mode == Backend::kEd && n > ed.ed_cap)
            throw ConfigError("N=" + std::to_string(n) + " exceeds the exact-diagonalization cap " + std::to_string(ed.ed_cap));
    }
    const bool any = p_min || p_max || p_step;
    if(any && !(p_min && p_max && p_step)) throw ConfigError("--p-min, --p-max and --p-step must be given together");
    if(any) {
        if(!std::isfinite(*p_min) || !std::isfinite(*p_max)) throw ConfigError("grid bounds must be finite");
        if(*p_min > *p_max) throw ConfigError("p_min must not exceed p_max");
        if(!(*p_step > 0.0)) throw ConfigError("p_step must be positive");
    }
    if(!(delta > 0.0)) throw ConfigError("delta must be positive");
    if(workers < 1) throw ConfigError("workers must be >= 1");
    if(output_path.empty()) throw ConfigError("an output path is required");
    try {
        dmrg.validate();
    } catch(const std::invalid_argument &e) { throw ConfigError(e.what()); }
}

std::vector<double> SweepConfig::grid() const {
    if(p_min && p_max && p_step) return uniform_grid(*p_min, *p_max, *p_step);
    return default_grid();
}

std::string format_double(double v) {
    if(std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string record_key(int n, double p) { return std::to_string(n) + "," + format_double(p); }

std::string format_record(const SweepRecord &r) {
    std::string line = std::to_string(r.n);
    for(double v : {r.p, r.delta, r.energy, r.fidelity, r.susceptibility, r.entropy_pair, r.de_dp, r.max_discarded_weight}) {
        line += ',';
        line += format_double(v);
    }
    line += ',';
    line += std::to_string(r.sweeps_run);
    line += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_time_s);
    line += buf;
    return line;
}

std::vector<SweepRecord> read_dataset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if(!in) throw std::runtime_error("cannot open dataset " + path.string());
    std::string line;
    if(!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error(path.string() + ":1: unexpected CSV header");
    std::vector<SweepRecord> out;
    for(int lineno = 2; std::getline(in, line); ++lineno) {
        if(line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream        ss(line);
        for(std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if(f.size() != 11) throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected 11 fields");
        try {
            SweepRecord r;
            std::size_t used = 0;
            auto        num  = [&](const std::string &s) {
                const double v = std::stod(s, &used);
                if(used != s.size()) throw std::invalid_argument(s);
                return v;
            };
            r.n                    = std::stoi(f[0]);
            r.p                    = num(f[1]);
            r.delta                = num(f[2]);
            r.energy               = num(f[3]);
            r.fidelity             = num(f[4]);
            r.susceptibility       = num(f[5]);
            r.entropy_pair         = num(f[6]);
            r.de_dp                = num(f[7]);
            r.max_discarded_weight = num(f[8]);
            r.sweeps_run           = std::stoi(f[9]);
            r.wall_time_s          = num(f[10]);
            r.failed               = std::isnan(r.energy) || std::isnan(r.fidelity) || std::isnan(r.entropy_pair);
            out.push_back(r);
        } catch(const std::exception &) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": malformed record");
        }
    }
    return out;
}

namespace {

    struct Solution {
        double                                   energy        = 0.0;
        double                                   entropy       = 0.0;
        double                                   max_discarded = 0.0;
        int                                      sweeps        = 0;
        bool                                     failed        = false;
        std::string                              error;
        std::variant<std::monostate, Mps, EdGroundState> state;
    };

    double state_fidelity(const Solution &a, const Solution &b) {
        if(const auto *ma = std::get_if<Mps>(&a.state)) return fidelity(*ma, std::get<Mps>(b.state));
        return fidelity(std::get<EdGroundState>(a.state), std::get<EdGroundState>(b.state));
    }

    SweepRecord failed_record(int n, double p, double delta, std::string error) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        SweepRecord  r;
        r.n     = n;
        r.p     = p;
        r.delta = delta;
        r.energy = r.fidelity = r.susceptibility = r.entropy_pair = r.de_dp = r.max_discarded_weight = nan;
        r.failed = true;
        r.error  = std::move(error);
        return r;
    }

} // namespace

ChainResult compute_chain(const SweepConfig &cfg, Backend backend, int n, std::span<const double> ps,
                          const std::function<void(std::size_t, const SweepRecord &)> &on_record) {
    ChainResult out;
    if(ps.empty()) return out;
    const double delta = cfg.delta;

    std::vector<double> pts;
    for(double p : ps)
        for(double q : {p - delta, p, p + delta}) pts.push_back(round12(q));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a - b) < 1e-10; }), pts.end());
    auto index_of = [&](double q) {
        const auto it = std::lower_bound(pts.begin(), pts.end(), round12(q) - 1e-10);
        return static_cast<std::size_t>(it - pts.begin());
    };

    struct Need {
        std::size_t minus, centre, plus;
    };
    std::vector<Need> needs;
    for(double p : ps) needs.push_back({index_of(p - delta), index_of(p), index_of(p + delta)});

    std::map<std::size_t, Solution> live;
    std::optional<Mps>              previous;
    std::size_t                     next_record = 0;
    auto                            clock_start = std::chrono::steady_clock::now();

    for(std::size_t j = 0; j < pts.size(); ++j) {
        Solution        sol;
        SolveDiagnostic diag;
        diag.n = n;
        diag.p = pts[j];
        try {
            const ModelParams params(ChainLength(n), pts[j]);
            if(backend == Backend::kDmrg) {
                auto res = previous ? warm_started_ground_state(params, *previous, cfg.dmrg) : dmrg_ground_state(params, cfg.dmrg);
                sol.energy             = res.report.energy;
                sol.max_discarded      = res.report.max_discarded_weight;
                sol.sweeps             = res.report.sweeps_run;
                sol.entropy            = central_pair_entropy(res.state);
                diag.converged         = res.report.converged;
                diag.lanczos_failures  = res.report.lanczos_failures;
                diag.flip_parity       = res.report.flip_parity;
                previous               = res.state;
                sol.state              = std::move(res.state);
            } else {
                auto gs     = ed_ground_state(params, 0, cfg.ed);
                sol.energy  = gs.energy;
                sol.entropy = central_pair_entropy(gs);
                sol.state   = std::move(gs);
            }
        } catch(const std::exception &e) {
            sol.failed = true;
            sol.error  = e.what();
            diag.error = e.what();
        }
        diag.sweeps_run           = sol.sweeps;
        diag.max_discarded_weight = sol.max_discarded;
        diag.energy               = sol.energy;
        out.solves.push_back(diag);
        live.emplace(j, std::move(sol));

        while(next_record < needs.size() && needs[next_record].plus <= j) {
            const auto  &need = needs[next_record];
            const double p    = ps[next_record];
            const auto  &sm   = live.at(need.minus);
            const auto  &s0   = live.at(need.centre);
            const auto  &sp   = live.at(need.plus);
            SweepRecord  rec;
            if(sm.failed || s0.failed || sp.failed) {
                rec = failed_record(n, p, delta, !s0.failed ? (!sm.failed ? sp.error : sm.error) : s0.error);
            } else {
                try {
                    rec.n                    = n;
                    rec.p                    = p;
                    rec.delta                = delta;
                    rec.energy               = s0.energy;
                    rec.fidelity             = state_fidelity(s0, sp);
                    rec.susceptibility       = fidelity_susceptibility(rec.fidelity, delta, n);
                    rec.entropy_pair         = s0.entropy;
                    rec.de_dp                = entropy_derivative(sm.entropy, sp.entropy, delta);
                    rec.max_discarded_weight = std::max({sm.max_discarded, s0.max_discarded, sp.max_discarded});
                    rec.sweeps_run           = s0.sweeps;
                } catch(const std::exception &e) { rec = failed_record(n, p, delta, e.what()); }
            }
            const auto now  = std::chrono::steady_clock::now();
            rec.wall_time_s = std::chrono::duration<double>(now - clock_start).count();
            clock_start     = now;
            if(on_record) on_record(next_record, rec);
            out.records.push_back(std::move(rec));
            ++next_record;
            // drop states no later record can use
            const std::size_t keep_from = next_record < needs.size() ? needs[next_record].minus : pts.size();
            for(auto it = live.begin(); it != live.end() && it->first < keep_from;) it = live.erase(it);
        }
    }
    return out;
}

VerificationReport verify_against_oracle(const SweepConfig &cfg) {
    for(int n : cfg.n_list)
        if(n > cfg.ed.ed_cap) throw CapExceededError(n, cfg.ed.ed_cap);
    VerificationReport  report;
    bool                clean = true;
    const auto          ps    = cfg.grid();
    for(int n : cfg.n_list) {
        const auto dm = compute_chain(cfg, Backend::kDmrg, n, ps);
        const auto ed = compute_chain(cfg, Backend::kEd, n, ps);
        for(std::size_t k = 0; k < ps.size(); ++k) {
            const auto &a = dm.records[k];
            const auto &b = ed.records[k];
            if(a.failed || b.failed) {
                clean = false;
                continue;
            }
            OracleComparison c;
            c.n            = n;
            c.p            = ps[k];
            c.energy_dev   = std::abs(a.energy - b.energy);
            c.fidelity_dev = std::abs(a.fidelity - b.fidelity);
            c.entropy_dev  = std::abs(a.entropy_pair - b.entropy_pair);
            report.max_energy_dev   = std::max(report.max_energy_dev, c.energy_dev);
            report.max_fidelity_dev = std::max(report.max_fidelity_dev, c.fidelity_dev);
            report.max_entropy_dev  = std::max(report.max_entropy_dev, c.entropy_dev);
            report.points.push_back(c);
        }
    }
    report.passed = clean && report.max_energy_dev < kOracleTolerance && report.max_fidelity_dev < kOracleTolerance &&
                    report.max_entropy_dev < kOracleTolerance;
    return report;
}

int SweepOutcome::exit_code() const {
    if(failed > 0) return 1;
    if(oracle && !oracle->passed) return 1;
    return 0;
}

std::filesystem::path manifest_path_for(const std::filesystem::path &output) {
    auto p = output;
    p += ".manifest.json";
    return p;
}

namespace {

    void write_dataset(const std::filesystem::path &path, const std::vector<std::string> &lines) {
        const auto    tmp = std::filesystem::path(path.string() + ".tmp");
        std::ofstream out(tmp, std::ios::trunc);
        if(!out) throw std::runtime_error("cannot write " + tmp.string());
        out << kCsvHeader << '\n';
        for(const auto &l : lines) out << l << '\n';
        out.close();
        if(!out) throw std::runtime_error("failed writing " + tmp.string());
        std::filesystem::rename(tmp, path);
    }

    nlohmann::json config_json(const SweepConfig &cfg) {
        nlohmann::json j;
        j["mode"]         = backend_name(cfg.mode);
        j["n"]            = cfg.n_list;
        j["grid"]         = (cfg.p_min && cfg.p_max && cfg.p_step)
                                ? nlohmann::json{{"kind", "uniform"}, {"p_min", *cfg.p_min}, {"p_max", *cfg.p_max}, {"p_step", *cfg.p_step}}
                                : nlohmann::json{{"kind", "default"}, {"coarse", {0.50, 1.20, 0.01}}, {"fine", {0.80, 0.90, 0.002}}};
        j["delta"]        = cfg.delta;
        j["workers"]      = cfg.workers;
        j["oracle_check"] = cfg.oracle_check;
        j["resume"]       = cfg.resume;
        j["output"]       = cfg.output_path.string();
        j["dmrg"]         = {{"m", cfg.dmrg.m},
                             {"max_sweeps", cfg.dmrg.max_sweeps},
                             {"energy_tol", cfg.dmrg.energy_tol},
                             {"lanczos_tol", cfg.dmrg.lanczos_tol},
                             {"lanczos_max_iter", cfg.dmrg.lanczos_max_iter},
                             {"seed", cfg.dmrg.seed},
                             {"initial_state", initial_state_name(cfg.dmrg.initial_state)},
                             {"random_chi0", cfg.dmrg.random_chi0},
                             {"flip_penalty", cfg.dmrg.flip_penalty}};
        j["ed"]           = {{"tol", cfg.ed.tol}, {"max_iter", cfg.ed.max_iter}, {"seed", cfg.ed.seed}, {"cap", cfg.ed.ed_cap}};
        return j;
    }

    nlohmann::json diag_json(const SolveDiagnostic &d) {
        nlohmann::json j = {{"N", d.n},
                            {"p", d.p},
                            {"energy", d.energy},
                            {"sweeps_run", d.sweeps_run},
                            {"converged", d.converged},
                            {"lanczos_failures", d.lanczos_failures},
                            {"max_discarded_weight", d.max_discarded_weight}};
        if(d.flip_parity) j["flip_parity"] = *d.flip_parity;
        if(!d.error.empty()) j["error"] = d.error;
        return j;
    }

    void write_manifest(const SweepConfig &cfg, const SweepOutcome &outcome) {
        nlohmann::json m;
        m["format"]      = "spinchain-sweep-manifest/1";
        m["version"]     = kVersion;
        m["eigen"]       = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                     std::to_string(EIGEN_MINOR_VERSION);
        m["config"]      = config_json(cfg);
        m["conventions"] = {{"fidelity", "forward pair: F(p) = |<psi(p)|psi(p + delta)>|"},
                            {"susceptibility", "S = 2 (1 - F) / (N delta^2) at fixed delta"},
                            {"entropy_pair", "von Neumann entropy in bits of sites (N/2, N/2 + 1)"},
                            {"dE_dp", "central difference (E(p + delta) - E(p - delta)) / (2 delta)"},
                            {"float_format", "%.12g"},
                            {"local_basis", "m = +1, 0, -1"},
                            {"sector", "Sz_tot = 0, even under the global spin flip m -> -m"}};
        m["records"]               = outcome.records.size();
        m["computed"]              = outcome.computed;
        m["truncation_threshold"]  = kTruncationThreshold;
        m["truncation_flagged"]    = nlohmann::json::array();
        for(const auto &r : outcome.truncation_flagged)
            m["truncation_flagged"].push_back({{"N", r.n}, {"p", r.p}, {"max_discarded_weight", r.max_discarded_weight}});
        m["failures"] = nlohmann::json::array();
        for(const auto &r : outcome.records)
            if(r.failed) m["failures"].push_back({{"N", r.n}, {"p", r.p}, {"error", r.error.empty() ? "failed in an earlier run" : r.error}});
        m["solves"] = nlohmann::json::array();
        for(const auto &d : outcome.solves) m["solves"].push_back(diag_json(d));
        if(outcome.oracle) {
            const auto &o = *outcome.oracle;
            m["oracle_check"] = {{"tolerance", kOracleTolerance},
                                 {"max_energy_dev", o.max_energy_dev},
                                 {"max_fidelity_dev", o.max_fidelity_dev},
                                 {"max_entropy_dev", o.max_entropy_dev},
                                 {"points", o.points.size()},
                                 {"passed", o.passed}};
        }
        std::ofstream out(outcome.manifest_path, std::ios::trunc);
        if(!out) throw std::runtime_error("cannot write " + outcome.manifest_path.string());
        out << m.dump(2) << '\n';
    }

    struct Job {
        int                 n;
        std::vector<double> ps;
        std::size_t         first_slot; // slot of ps[0] in the list of points to compute
    };

} // namespace

SweepOutcome run_sweep(const SweepConfig &cfg, const ProgressSink &progress) {
    cfg.validate();
    const auto ps = cfg.grid();

    std::vector<int> ns = cfg.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::map<std::string, std::string> existing; // key -> CSV line
    std::map<std::string, SweepRecord> existing_records;
    if(cfg.resume && std::filesystem::exists(cfg.output_path)) {
        for(const auto &r : read_dataset(cfg.output_path)) {
            if(r.failed) continue;
            const auto key        = record_key(r.n, r.p);
            existing[key]         = format_record(r);
            existing_records[key] = r;
        }
    }

    // points still to compute, in canonical order, grouped into warm-start chains
    std::vector<Job> jobs;
    std::size_t      total = 0;
    for(int n : ns) {
        std::vector<double> missing;
        for(double p : ps)
            if(!existing.count(record_key(n, p))) missing.push_back(p);
        if(missing.empty()) continue;
        const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), missing.size());
        const std::size_t base = missing.size() / chunks, extra = missing.size() % chunks;
        std::size_t       at   = 0;
        for(std::size_t c = 0; c < chunks; ++c) {
            const std::size_t len = base + (c < extra ? 1 : 0);
            jobs.push_back({n, std::vector<double>(missing.begin() + static_cast<std::ptrdiff_t>(at),
                                                   missing.begin() + static_cast<std::ptrdiff_t>(at + len)),
                            total});
            at += len;
            total += len;
        }
    }

    std::vector<std::string> lines;
    for(int n : ns)
        for(double p : ps)
            if(auto it = existing.find(record_key(n, p)); it != existing.end()) lines.push_back(it->second);
    write_dataset(cfg.output_path, lines);

    std::vector<std::optional<SweepRecord>> slots(total);
    std::vector<std::vector<SolveDiagnostic>> job_solves(jobs.size());
    std::mutex                                mutex;
    std::condition_variable                   ready;
    std::atomic<std::size_t>                  next_job{0};

    auto worker = [&]() {
        for(std::size_t j; (j = next_job.fetch_add(1)) < jobs.size();) {
            const auto &job = jobs[j];
            auto        sink = [&](std::size_t k, const SweepRecord &r) {
                std::lock_guard lock(mutex);
                slots[job.first_slot + k] = r;
                ready.notify_all();
            };
            try {
                auto res = compute_chain(cfg, cfg.mode, job.n, job.ps, sink);
                std::lock_guard lock(mutex);
                job_solves[j] = std::move(res.solves);
            } catch(const std::exception &e) {
                std::lock_guard lock(mutex);
                for(std::size_t k = 0; k < job.ps.size(); ++k)
                    if(!slots[job.first_slot + k]) slots[job.first_slot + k] = failed_record(job.n, job.ps[k], cfg.delta, e.what());
                ready.notify_all();
            }
        }
    };
    std::vector<std::thread> pool;
    for(int w = 0; w < std::min<int>(cfg.workers, static_cast<int>(jobs.size())); ++w) pool.emplace_back(worker);

    // ordered write-back
    {
        std::ofstream append(cfg.output_path, std::ios::app);
        for(std::size_t k = 0; k < total; ++k) {
            SweepRecord rec;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return slots[k].has_value(); });
                rec = *slots[k];
            }
            append << format_record(rec) << '\n';
            append.flush();
            if(progress) {
                char buf[256];
                if(rec.failed)
                    std::snprintf(buf, sizeof buf, "[%zu/%zu] N=%d p=%s FAILED: %s", k + 1, total, rec.n, format_double(rec.p).c_str(),
                                  rec.error.c_str());
                else
                    std::snprintf(buf, sizeof buf, "[%zu/%zu] N=%d p=%s E=%.10f F=%.12f S=%.6f E_pair=%.6f dE/dp=%.6f dw=%.2e (%.1fs)",
                                  k + 1, total, rec.n, format_double(rec.p).c_str(), rec.energy, rec.fidelity, rec.susceptibility,
                                  rec.entropy_pair, rec.de_dp, rec.max_discarded_weight, rec.wall_time_s);
                progress(buf);
            }
        }
    }
    for(auto &t : pool) t.join();

    SweepOutcome outcome;
    outcome.computed      = total;
    outcome.manifest_path = manifest_path_for(cfg.output_path);
    std::map<std::string, SweepRecord> fresh;
    for(auto &s : slots) fresh[record_key(s->n, s->p)] = *s;
    lines.clear();
    for(int n : ns)
        for(double p : ps) {
            const auto key = record_key(n, p);
            if(auto it = fresh.find(key); it != fresh.end()) {
                outcome.records.push_back(it->second);
                lines.push_back(format_record(it->second));
            } else {
                outcome.records.push_back(existing_records.at(key));
                lines.push_back(existing.at(key));
            }
        }
    write_dataset(cfg.output_path, lines);

    for(const auto &r : outcome.records) {
        outcome.failed += r.failed ? 1 : 0;
        if(!r.failed && r.max_discarded_weight >= kTruncationThreshold) outcome.truncation_flagged.push_back(r);
    }
    for(auto &js : job_solves)
        for(auto &d : js) outcome.solves.push_back(std::move(d));

    if(cfg.oracle_check && cfg.mode == Backend::kDmrg) {
        VerificationReport report;
        bool               clean = true;
        for(int n : ns) {
            if(n > cfg.ed.ed_cap) continue;
            const auto ed = compute_chain(cfg, Backend::kEd, n, ps);
            for(std::size_t k = 0; k < ps.size(); ++k) {
                const auto &b  = ed.records[k];
                const auto  it = std::find_if(outcome.records.begin(), outcome.records.end(),
                                              [&](const SweepRecord &r) { return r.n == n && record_key(n, r.p) == record_key(n, ps[k]); });
                if(b.failed || it == outcome.records.end() || it->failed) {
                    clean = false;
                    continue;
                }
                OracleComparison c{n, ps[k], std::abs(it->energy - b.energy), std::abs(it->fidelity - b.fidelity),
                                   std::abs(it->entropy_pair - b.entropy_pair)};
                report.max_energy_dev   = std::max(report.max_energy_dev, c.energy_dev);
                report.max_fidelity_dev = std::max(report.max_fidelity_dev, c.fidelity_dev);
                report.max_entropy_dev  = std::max(report.max_entropy_dev, c.entropy_dev);
                report.points.push_back(c);
            }
        }
        report.passed = clean && report.max_energy_dev < kOracleTolerance && report.max_fidelity_dev < kOracleTolerance &&
                        report.max_entropy_dev < kOracleTolerance;
        outcome.oracle = report;
    }

    write_manifest(cfg, outcome);
    return outcome;
}

} // namespace spinchain
