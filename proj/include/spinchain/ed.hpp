#pragma once

#include "spinchain/lanczos.hpp"
#include "spinchain/model.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace spinchain {

/// Configurations of N spin-1 sites with fixed total Sz, as base-3 codes in ascending order.
/// Digit k of a site is its local basis index (0 -> m=+1, 1 -> 0, 2 -> -1); site 0 is most significant.
struct SectorBasis {
    int                                            n        = 0;
    int                                            sz_total = 0;
    std::vector<std::int64_t>                      states;
    std::unordered_map<std::int64_t, std::int64_t> index;

    std::int64_t size() const { return static_cast<std::int64_t>(states.size()); }
    /// Local basis index of `site` in configuration `code`.
    int digit(std::int64_t code, int site) const;
};

SectorBasis build_sector_basis(int n, int sz_total, int ed_cap = kDefaultEdCap);

/// Lanczos did not reach its residual tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string &what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

  private:
    double residual_;
    int    iterations_;
};

struct EdOptions {
    double       tol      = 1e-12;
    int          max_iter = 500;
    std::uint64_t seed     = 20240917;
    int          ed_cap   = kDefaultEdCap;
};

struct EdGroundState {
    std::shared_ptr<const SectorBasis> basis;
    double                             energy = 0.0;
    Eigen::VectorXd                    amplitudes;
    double                             residual   = 0.0;
    int                                iterations = 0;
};

/// Hamiltonian restricted to a magnetization sector, in the sector's basis order.
SparseMatrix sector_hamiltonian(const ModelParams &params, const SectorBasis &basis);

/// Lowest eigenpair in the sector. The Lanczos start vector is a seeded pseudo-random vector
/// symmetrized under the global spin flip m -> -m, so for sz_total = 0 the search stays in the
/// flip-even subspace that holds the nondegenerate ground state; the sign is fixed so that the
/// largest-magnitude amplitude is positive.
EdGroundState ed_ground_state(const ModelParams &params, int sz_total = 0, const EdOptions &opts = {});

/// |<a|b>|
double ed_overlap(const EdGroundState &a, const EdGroundState &b);

/// Reduced density matrix on `sites` (ascending, distinct), of dimension 3^|sites|.
/// Row index is the base-3 code of the kept sites, first kept site most significant.
Eigen::MatrixXd ed_reduced_density_matrix(const EdGroundState &state, std::span<const int> sites);

/// Reduced density matrix of the adjacent pair (i, i + 1), sites 0-based.
Eigen::MatrixXd ed_pair_rdm(const EdGroundState &state, int i);

/// Expands a sector vector into the full 3^N space.
Eigen::VectorXd ed_to_dense(const EdGroundState &state);

} // namespace spinchain
