#pragma once

#include "spinchain/model.hpp"
#include "spinchain/mps.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spinchain {

enum class InitialState {
    /// |0 0 ... 0>: zero magnetization and even under the global spin flip, the sector of the
    /// true ground state.
    kSymmetricProduct,
    /// Seeded random MPS with bond dimension `random_chi0`.
    kRandom,
};

struct DmrgConfig {
    int           m                = 70;
    int           max_sweeps       = 20;
    double        energy_tol       = 1e-10;
    double        lanczos_tol      = 1e-12;
    int           lanczos_max_iter = 200;
    std::uint64_t seed             = 1;
    InitialState  initial_state    = InitialState::kSymmetricProduct;
    int           random_chi0      = 8;
    /// Weight of the (1 - P)/2 term added to H, P the global spin flip. It keeps the sweeps in
    /// the flip-even sector where the flip-odd partner (Neel cat, edge triplet) is degenerate
    /// to roundoff and truncation would otherwise favour a broken mixture. 0 disables it.
    double flip_penalty = 1.0;
    /// Abort when the energy rises by more than this between sweeps.
    double rise_abort = 1e-6;
    /// Start from this state instead of `initial_state`.
    std::optional<Mps> warm_start;

    static constexpr int kPaperSweeps = 3;

    /// Fixed three sweeps at m = 70, convergence reported but not required.
    static DmrgConfig paper_protocol();

    void validate() const;
};

struct DmrgReport {
    double              energy = 0.0;
    std::vector<double> energies_per_sweep;
    /// Largest discarded weight of any truncation in the final sweep.
    double max_discarded_weight = 0.0;
    int    sweeps_run           = 0;
    bool   converged            = false;
    int    lanczos_failures     = 0;
    long   lanczos_iterations   = 0; // matrix-vector products over the whole run
    /// <P> of the final state, 1 in the flip-even sector.
    double flip_parity = 0.0;
};

struct DmrgResult {
    Mps        state; // canonical at site 0, normalized
    DmrgReport report;
};

class DmrgError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two-site finite-system DMRG. Each sweep goes left to right then back; the energy is the
/// effective-problem eigenvalue at the last step of the sweep.
DmrgResult dmrg_ground_state(const ModelParams &params, const DmrgConfig &cfg);

/// Same as dmrg_ground_state, seeded with `previous` (typically the solution at a nearby p).
DmrgResult warm_started_ground_state(const ModelParams &params, const Mps &previous, DmrgConfig cfg);

/// Full <psi|H|psi> through the MPO.
double energy_expectation(const Mps &psi, const ModelParams &params);

struct MagnetizationStats {
    double mean     = 0.0;
    double variance = 0.0;
};

/// <Sz_tot> and <Sz_tot^2> - <Sz_tot>^2.
MagnetizationStats total_magnetization(const Mps &psi);

} // namespace spinchain
