#pragma once

#include "spinchain/dmrg.hpp"
#include "spinchain/ed.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinchain {

inline constexpr const char *kVersion = "1.0.0";

/// Exact CSV header of sweep datasets.
inline constexpr const char *kCsvHeader =
    "N,p,delta,energy,fidelity,susceptibility,entropy_pair,dE_dp,max_discarded_weight,sweeps_run,wall_time_s";

/// Truncation level the solver is expected to stay under at m = 70.
inline constexpr double kTruncationThreshold = 1e-10;

/// Oracle agreement required by verify_against_oracle.
inline constexpr double kOracleTolerance = 1e-7;

enum class Backend { kEd, kDmrg };

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
    Backend          mode = Backend::kDmrg;
    std::vector<int> n_list{40, 60, 80};
    /// Unset range means the default grid (see default_grid()).
    std::optional<double> p_min;
    std::optional<double> p_max;
    std::optional<double> p_step;
    double                delta = 0.001;
    DmrgConfig            dmrg;
    EdOptions             ed;
    bool                  oracle_check = false;
    std::filesystem::path output_path  = "sweep.csv";
    int                   workers      = 1;
    bool                  resume       = false;

    /// Throws ConfigError.
    void                validate() const;
    std::vector<double> grid() const;
};

/// p in [0.50, 1.20] step 0.01, refined to step 0.002 inside [0.80, 0.90].
std::vector<double> default_grid();

/// p_min, p_min + step, ... up to p_max inclusive, each rounded to 12 decimals.
/// p_min == p_max gives the single point.
std::vector<double> uniform_grid(double p_min, double p_max, double p_step);

struct SweepRecord {
    int    n                    = 0;
    double p                    = 0.0;
    double delta                = 0.0;
    double energy               = 0.0;
    double fidelity             = 0.0;
    double susceptibility       = 0.0;
    double entropy_pair         = 0.0;
    double de_dp                = 0.0;
    double max_discarded_weight = 0.0;
    int    sweeps_run           = 0;
    double wall_time_s          = 0.0;
    bool   failed               = false;
    std::string error;
};

/// Per-solve diagnostics (one entry per distinct p solved, including p +/- delta).
struct SolveDiagnostic {
    int    n                    = 0;
    double p                    = 0.0;
    int    sweeps_run           = 0;
    bool   converged            = true;
    int    lanczos_failures     = 0;
    double max_discarded_weight = 0.0;
    double energy               = 0.0;
    /// <P> under the global spin flip, DMRG solves only.
    std::optional<double> flip_parity;
    std::string error;
};

struct ChainResult {
    std::vector<SweepRecord>     records;
    std::vector<SolveDiagnostic> solves;
};

/// Computes the records of one chain length over `ps` (ascending). Solves at p - delta, p and
/// p + delta are shared between neighbouring grid points; DMRG solves are warm-started from the
/// previous solve. `on_record` fires as soon as each record is complete.
ChainResult compute_chain(const SweepConfig &cfg, Backend backend, int n, std::span<const double> ps,
                          const std::function<void(std::size_t, const SweepRecord &)> &on_record = {});

/// One CSV line (no newline), floats with 12 significant digits.
std::string format_record(const SweepRecord &r);
/// Key of a grid point as written in the CSV, e.g. "40,0.85".
std::string record_key(int n, double p);
std::string format_double(double v);

/// Rows of an existing dataset. Throws std::runtime_error on a header mismatch or malformed line.
std::vector<SweepRecord> read_dataset(const std::filesystem::path &path);

struct OracleComparison {
    int    n              = 0;
    double p              = 0.0;
    double energy_dev     = 0.0;
    double fidelity_dev   = 0.0;
    double entropy_dev    = 0.0;
};

struct VerificationReport {
    double                        max_energy_dev   = 0.0;
    double                        max_fidelity_dev = 0.0;
    double                        max_entropy_dev  = 0.0;
    std::vector<OracleComparison> points;
    bool                          passed = false;
};

/// Runs DMRG and ED on the configured grid and compares energy, fidelity and central-pair
/// entropy. Throws CapExceededError when any N exceeds the ED cap.
VerificationReport verify_against_oracle(const SweepConfig &cfg);

struct SweepOutcome {
    std::vector<SweepRecord>          records; // full dataset in (N, p) order, including resumed rows
    std::vector<SolveDiagnostic>      solves;
    std::size_t                       computed = 0;
    std::size_t                       failed   = 0;
    /// Records (resumed ones included) whose max_discarded_weight reaches kTruncationThreshold.
    std::vector<SweepRecord>          truncation_flagged;
    std::optional<VerificationReport> oracle;
    std::filesystem::path             manifest_path;

    int exit_code() const;
};

using ProgressSink = std::function<void(const std::string &)>;

/// Runs the whole scan: writes the CSV (ordered write-back while workers run) and the manifest
/// `<output>.manifest.json`.
SweepOutcome run_sweep(const SweepConfig &cfg, const ProgressSink &progress = {});

std::filesystem::path manifest_path_for(const std::filesystem::path &output);

} // namespace spinchain
