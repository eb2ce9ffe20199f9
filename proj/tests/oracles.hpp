// Brute-force references for the unit tests. Nothing here calls into the library, so a
// shared mistake cannot make both sides agree.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cd       = std::complex<double>;
using CMatrix  = Eigen::MatrixXcd;
using CMatrix3 = Eigen::Matrix3cd;

struct Spin1 {
    CMatrix3 x, y, z, id;
};

// Textbook spin-1 matrices in the basis (m = +1, 0, -1).
inline Spin1 spin1() {
    const double s = 1.0 / std::sqrt(2.0);
    const cd     i(0.0, 1.0);
    Spin1        o;
    o.x << 0, s, 0, s, 0, s, 0, s, 0;
    o.y << 0, -i * s, 0, i * s, 0, -i * s, 0, i * s, 0;
    o.z << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    o.id = CMatrix3::Identity();
    return o;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for(Eigen::Index i = 0; i < a.rows(); ++i)
        for(Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// op acting on site i of n (site 0 leftmost / most significant).
inline CMatrix on_site(const CMatrix3 &op, int i, int n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for(int k = 0; k < n; ++k) out = kron(out, k == i ? CMatrix(op) : CMatrix(CMatrix3::Identity()));
    return out;
}

// J sum_i [Sx Sx + Sy Sy + Delta Sz Sz] on an open chain.
inline CMatrix xxz_delta(int n, double j, double delta) {
    const auto s   = spin1();
    const auto dim = static_cast<Eigen::Index>(std::pow(3, n));
    CMatrix    h   = CMatrix::Zero(dim, dim);
    for(int i = 0; i + 1 < n; ++i)
        h += j * (on_site(s.x, i, n) * on_site(s.x, i + 1, n) + on_site(s.y, i, n) * on_site(s.y, i + 1, n) +
                  delta * on_site(s.z, i, n) * on_site(s.z, i + 1, n));
    return h;
}

// sum_i [p (Sx Sx + Sy Sy) + Sz Sz] on an open chain.
inline CMatrix xxz_p(int n, double p) {
    const auto s   = spin1();
    const auto dim = static_cast<Eigen::Index>(std::pow(3, n));
    CMatrix    h   = CMatrix::Zero(dim, dim);
    for(int i = 0; i + 1 < n; ++i)
        h += p * (on_site(s.x, i, n) * on_site(s.x, i + 1, n) + on_site(s.y, i, n) * on_site(s.y, i + 1, n)) +
             on_site(s.z, i, n) * on_site(s.z, i + 1, n);
    return h;
}

inline Eigen::VectorXd spectrum(const Eigen::MatrixXd &h) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

// Reduced density matrix of the sites in `keep` (ascending) for a real state on n spin-1 sites,
// kept sites ordered as in the chain. Plain loop over all amplitudes.
inline Eigen::MatrixXd partial_trace(const Eigen::VectorXd &psi, int n, const std::vector<int> &keep) {
    auto digit = [n](std::int64_t code, int site) {
        for(int k = n - 1; k > site; --k) code /= 3;
        return static_cast<int>(code % 3);
    };
    const int    nk  = static_cast<int>(keep.size());
    std::int64_t dim = 1;
    for(int k = 0; k < nk; ++k) dim *= 3;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
    const auto      total = psi.size();
    for(std::int64_t a = 0; a < total; ++a)
        for(std::int64_t b = 0; b < total; ++b) {
            bool same_env = true;
            for(int s = 0; s < n && same_env; ++s) {
                bool kept = false;
                for(int k : keep) kept = kept || k == s;
                if(!kept && digit(a, s) != digit(b, s)) same_env = false;
            }
            if(!same_env) continue;
            std::int64_t ia = 0, ib = 0;
            for(int k : keep) {
                ia = 3 * ia + digit(a, k);
                ib = 3 * ib + digit(b, k);
            }
            rho(ia, ib) += psi(a) * psi(b);
        }
    return rho;
}

} // namespace oracle
