#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>

namespace spinchain {

/// y = A x for a real symmetric operator.
using LinearOperator = std::function<void(const Eigen::VectorXd &x, Eigen::VectorXd &y)>;

struct LanczosOptions {
    /// Stop once the Ritz residual ||A v - theta v|| drops below tol * max(1, |theta|).
    double tol            = 1e-12;
    int    max_iter       = 200;
    bool   true_residual  = false; // spend one extra matvec to measure the final residual
};

struct LanczosResult {
    double          value = 0.0;
    Eigen::VectorXd vector;
    double          residual   = 0.0;
    int             iterations = 0;
    bool            converged  = false;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization.
/// The Krylov space is built from `start`, so components orthogonal to it stay out
/// of the result up to roundoff. A breakdown (invariant subspace) counts as converged.
LanczosResult lanczos_lowest(const LinearOperator &op, const Eigen::VectorXd &start, const LanczosOptions &opts = {});

} // namespace spinchain
