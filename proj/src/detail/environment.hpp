#pragma once

#include "spinchain/mpo.hpp"

#include <vector>

namespace spinchain::detail {

// Partial contraction <psi| W ... W |psi> over a block of sites, one (bra x ket) matrix per
// MPO bond index. Inactive indices are identically zero and skipped.
struct Environment {
    std::vector<Eigen::MatrixXd> blocks;
    std::vector<bool>            active;

    Eigen::Index dim() const;
};

Environment boundary_environment(int mpo_bond_dim, int index);

// Absorbs site tensor `a` (left- or right-moving) into the environment.
Environment extend_left(const Environment &env, const SiteTensor &a, const std::vector<MpoTerm> &w, int mpo_bond_dim);
Environment extend_right(const Environment &env, const SiteTensor &b, const std::vector<MpoTerm> &w, int mpo_bond_dim);

} // namespace spinchain::detail
