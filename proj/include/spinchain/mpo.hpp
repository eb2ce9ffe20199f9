#pragma once

#include "spinchain/model.hpp"
#include "spinchain/mps.hpp"

#include <Eigen/Core>

#include <vector>

namespace spinchain {

/// Nonzero block W[left][right] = op of a site's operator-valued matrix; op(bra, ket).
struct MpoTerm {
    int             left;
    int             right;
    Eigen::Matrix3d op;
};

/// Matrix-product operator with a uniform bond dimension. The boundary vectors select a
/// single index: `left_boundary` on bond 0 and `right_boundary` on bond N.
struct Mpo {
    int                               bond_dim       = 0;
    int                               left_boundary  = 0;
    int                               right_boundary = 0;
    std::vector<std::vector<MpoTerm>> sites;

    int size() const { return static_cast<int>(sites.size()); }
};

/// Finite-state-machine MPO of the open chain, bond dimension 5:
/// index 4 = nothing placed yet, 1..3 = pending S-, S+, Sz partner, 0 = bond completed.
Mpo hamiltonian_mpo(const ModelParams &params);

/// Hamiltonian plus (penalty / 2)(1 - P), P the global spin flip m -> -m. Bond dimension 6:
/// index 5 carries the flip string from site 0 to site N - 1.
Mpo flip_penalized_hamiltonian_mpo(const ModelParams &params, double penalty);

/// Global spin flip P = prod_i X_i with X|m> = |-m>, bond dimension 1.
Mpo flip_mpo(int n);

/// Sum_i Sz_i and (Sum_i Sz_i)^2.
Mpo total_sz_mpo(int n);
Mpo total_sz_squared_mpo(int n);

/// <psi|O|psi> / <psi|psi>.
double expectation(const Mps &psi, const Mpo &op);

/// Dense 3^N matrix of an MPO, for cross-checks at small N.
Eigen::MatrixXd mpo_to_dense(const Mpo &op, int cap = 8);

} // namespace spinchain
