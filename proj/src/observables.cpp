#include "spinchain/observables.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinchain {

double fidelity(const Mps &a, const Mps &b) {
    if(a.size() != b.size()) throw std::invalid_argument("fidelity of states on different chain lengths");
    return std::min(1.0, std::abs(inner_product(a, b)));
}

double fidelity(const EdGroundState &a, const EdGroundState &b) { return std::min(1.0, ed_overlap(a, b)); }

double fidelity_susceptibility(double fidelity, double delta, int n) {
    if(!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::domain_error("fidelity must lie in [0, 1]");
    if(!(delta > 0.0)) throw std::domain_error("delta must be positive");
    if(n < 1) throw std::domain_error("chain length must be positive");
    return 2.0 * (1.0 - fidelity) / (n * delta * delta);
}

double von_neumann_entropy(const Eigen::MatrixXd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    double                                         s = 0.0;
    for(Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double lambda = es.eigenvalues()(k);
        if(lambda < -kNegativeEigenvalueClamp)
            throw std::domain_error("density matrix has a negative eigenvalue " + std::to_string(lambda));
        if(lambda < kEntropyEigenvalueFloor) continue;
        s -= lambda * std::log2(lambda);
    }
    return s;
}

namespace {
    int central_site(int n) {
        if(n < 2 || n % 2 != 0) throw std::invalid_argument("central pair needs an even chain length");
        return n / 2 - 1;
    }
} // namespace

double central_pair_entropy(const Mps &psi) { return von_neumann_entropy(pair_rdm(psi, central_site(psi.size()))); }

double central_pair_entropy(const EdGroundState &state) {
    return von_neumann_entropy(ed_pair_rdm(state, central_site(state.basis->n)));
}

double entropy_derivative(double e_minus, double e_plus, double delta) {
    if(!(delta > 0.0)) throw std::domain_error("delta must be positive");
    return (e_plus - e_minus) / (2.0 * delta);
}

Peak find_peak(std::span<const double> xs, std::span<const double> ys) {
    if(xs.size() != ys.size()) throw std::invalid_argument("find_peak: xs and ys differ in length");
    if(xs.size() < 3) throw std::invalid_argument("find_peak needs at least three points");
    for(std::size_t k = 1; k < xs.size(); ++k)
        if(!(xs[k] > xs[k - 1])) throw std::invalid_argument("find_peak: grid must be strictly increasing");

    const auto it = std::max_element(ys.begin(), ys.end());
    Peak       peak;
    peak.index = static_cast<std::size_t>(it - ys.begin());
    peak.x     = xs[peak.index];
    peak.y     = *it;
    if(peak.index == 0 || peak.index + 1 == xs.size()) {
        peak.at_edge = true;
        return peak;
    }
    const double x0 = xs[peak.index - 1], x1 = xs[peak.index], x2 = xs[peak.index + 1];
    const double y0 = ys[peak.index - 1], y1 = ys[peak.index], y2 = ys[peak.index + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if(den == 0.0) return peak;
    const double x = x1 - 0.5 * num / den;
    // Lagrange form of the same parabola
    const double y = y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) + y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
                     y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    peak.x = x;
    peak.y = y;
    return peak;
}

std::size_t find_valley_index(std::span<const double> ys) {
    if(ys.empty()) throw std::invalid_argument("find_valley_index on an empty series");
    return static_cast<std::size_t>(std::min_element(ys.begin(), ys.end()) - ys.begin());
}

} // namespace spinchain
