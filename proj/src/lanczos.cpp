#include "spinchain/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace spinchain {

namespace {
    // Solves the tridiagonal system (sub, diag, sup) x = rhs in place by Gaussian
    // elimination with partial pivoting; the same scheme as LAPACK dgtsv.
    void tridiagonal_solve(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                           Eigen::VectorXd &rhs) {
        const std::size_t   m = diag.size();
        std::vector<double> sup2(m, 0.0);
        const double        tiny = 1e-300;
        for(std::size_t i = 0; i + 1 < m; ++i) {
            if(std::abs(diag[i]) >= std::abs(sub[i])) {
                if(std::abs(diag[i]) < tiny) diag[i] = tiny;
                const double f = sub[i] / diag[i];
                diag[i + 1] -= f * sup[i];
                rhs(i + 1) -= f * rhs(i);
            } else {
                const double f = diag[i] / sub[i];
                diag[i]        = sub[i];
                const double t = diag[i + 1];
                diag[i + 1]    = sup[i] - f * t;
                if(i + 2 < m) {
                    sup2[i]    = sup[i + 1];
                    sup[i + 1] = -f * sup2[i];
                }
                sup[i] = t;
                std::swap(rhs(i), rhs(i + 1));
                rhs(i + 1) -= f * rhs(i);
            }
        }
        if(std::abs(diag[m - 1]) < tiny) diag[m - 1] = tiny;
        for(std::size_t k = m; k-- > 0;) {
            double v = rhs(k);
            if(k + 1 < m) v -= sup[k] * rhs(k + 1);
            if(k + 2 < m) v -= sup2[k] * rhs(k + 2);
            rhs(k) = v / diag[k];
        }
    }

    // Eigenvector of the symmetric tridiagonal (alpha, beta) for eigenvalue theta by inverse iteration.
    Eigen::VectorXd tridiagonal_eigenvector(const std::vector<double> &alpha, const std::vector<double> &beta,
                                            std::size_t m, double theta) {
        Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
        if(m == 1) return x;
        double scale = 0.0;
        for(std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(alpha[i]));
        for(std::size_t i = 0; i + 1 < m; ++i) scale = std::max(scale, std::abs(beta[i]));
        const double        shift = theta - 1e-14 * std::max(scale, 1.0);
        std::vector<double> diag(m), off(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(m - 1));
        for(std::size_t i = 0; i < m; ++i) diag[i] = alpha[i] - shift;
        for(int it = 0; it < 3; ++it) {
            tridiagonal_solve(off, diag, off, x);
            x.normalize();
        }
        return x;
    }
} // namespace

LanczosResult lanczos_lowest(const LinearOperator &op, const Eigen::VectorXd &start, const LanczosOptions &opts) {
    const Eigen::Index n     = start.size();
    const double       snorm = start.norm();
    if(n == 0 || !(snorm > 0.0)) throw std::invalid_argument("lanczos start vector must be nonzero");

    const int kmax = static_cast<int>(std::min<Eigen::Index>(opts.max_iter, n));

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(kmax);
    basis.push_back(start / snorm);

    std::vector<double> alpha;
    std::vector<double> beta; // beta[k] couples basis[k] and basis[k+1]
    Eigen::VectorXd     w(n);

    LanczosResult                                  res;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    Eigen::VectorXd                                ritz; // lowest Ritz vector in Krylov coordinates

    for(int k = 0; k < kmax; ++k) {
        op(basis[k], w);
        const double a = basis[k].dot(w);
        alpha.push_back(a);
        w -= a * basis[k];
        if(k > 0) w -= beta[k - 1] * basis[k - 1];
        // two passes of classical Gram-Schmidt against the whole basis
        for(int pass = 0; pass < 2; ++pass)
            for(const auto &q : basis) w -= q.dot(w) * q;
        const double b = w.norm();

        const int       m = k + 1;
        Eigen::VectorXd diag(m), off(std::max(m - 1, 1));
        for(int i = 0; i < m; ++i) diag(i) = alpha[i];
        for(int i = 0; i + 1 < m; ++i) off(i) = beta[i];
        tri.computeFromTridiagonal(diag, off.head(std::max(m - 1, 0)), Eigen::EigenvaluesOnly);
        const double theta = tri.eigenvalues()(0);
        ritz               = tridiagonal_eigenvector(alpha, beta, static_cast<std::size_t>(m), theta);

        res.value      = theta;
        res.iterations = m;
        res.residual   = b * std::abs(ritz(m - 1));

        const double scale     = std::max(1.0, std::abs(theta));
        const bool   breakdown = b <= 1e-14 * std::max(scale, std::abs(a));
        if(breakdown || res.residual <= opts.tol * scale) {
            res.converged = true;
            break;
        }
        if(m == kmax) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }

    res.vector = Eigen::VectorXd::Zero(n);
    for(Eigen::Index i = 0; i < ritz.size(); ++i) res.vector += ritz(i) * basis[i];
    res.vector.normalize();

    if(opts.true_residual) {
        op(res.vector, w);
        res.value    = res.vector.dot(w);
        res.residual = (w - res.value * res.vector).norm();
    }
    return res;
}

} // namespace spinchain
