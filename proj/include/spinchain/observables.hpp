#pragma once

#include "spinchain/ed.hpp"
#include "spinchain/mps.hpp"

#include <Eigen/Core>

#include <span>

namespace spinchain {

/// Ground-state fidelity |<a|b>| of two normalized pure states.
double fidelity(const Mps &a, const Mps &b);
double fidelity(const EdGroundState &a, const EdGroundState &b);

/// Finite-delta fidelity susceptibility per site, 2 (1 - F) / (N delta^2).
double fidelity_susceptibility(double fidelity, double delta, int n);

/// Eigenvalues of rho in [-1e-12, 0) are treated as zero; more negative ones throw.
inline constexpr double kNegativeEigenvalueClamp = 1e-12;
/// Eigenvalues below this contribute nothing to the entropy sum.
inline constexpr double kEntropyEigenvalueFloor = 1e-15;

/// -Tr(rho log2 rho) in bits.
double von_neumann_entropy(const Eigen::MatrixXd &rho);

/// Entropy of the two central sites (N/2, N/2 + 1), counted from 1, i.e. 0-based (N/2 - 1, N/2).
double central_pair_entropy(const Mps &psi);
double central_pair_entropy(const EdGroundState &state);

/// Central difference (E(p + delta) - E(p - delta)) / (2 delta).
double entropy_derivative(double e_minus, double e_plus, double delta);

struct Peak {
    double      x       = 0.0;
    double      y       = 0.0;
    std::size_t index   = 0;     // grid index of the largest sample
    bool        at_edge = false; // maximum on the first or last grid point, no refinement done
};

/// Largest sample of ys, refined by the parabola through it and its two neighbours.
/// Needs at least three points and strictly increasing xs.
Peak find_peak(std::span<const double> xs, std::span<const double> ys);

/// Index of the smallest sample (the fidelity valley).
std::size_t find_valley_index(std::span<const double> ys);

} // namespace spinchain
