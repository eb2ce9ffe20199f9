#include "spinchain/model.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace spinchain {

CapExceededError::CapExceededError(int n, int cap)
    : std::runtime_error("chain length " + std::to_string(n) + " exceeds the exact-diagonalization cap " +
                         std::to_string(cap)),
      n_(n), cap_(cap) {}

ChainLength::ChainLength(int n) : n_(n) {
    if(n < 2 || n % 2 != 0) throw std::invalid_argument("chain length must be even and >= 2, got " + std::to_string(n));
}

ModelParams::ModelParams(ChainLength n_, double p_) : n(n_), p(p_) {
    if(!std::isfinite(p)) throw std::invalid_argument("anisotropy p must be finite");
}

LocalOps spin1_operators() {
    LocalOps ops;
    const double r2 = std::sqrt(2.0);
    // <m+1|S+|m> = sqrt(2 - m(m+1)); rows/cols ordered (+1, 0, -1)
    ops.s_plus << 0, r2, 0,
                  0, 0, r2,
                  0, 0, 0;
    ops.s_minus = ops.s_plus.transpose();
    ops.s_z     = Eigen::Vector3d(1.0, 0.0, -1.0).asDiagonal();
    ops.id      = Eigen::Matrix3d::Identity();
    return ops;
}

namespace {
    Eigen::Matrix<double, 9, 9> kron3(const Eigen::Matrix3d &a, const Eigen::Matrix3d &b) {
        Eigen::Matrix<double, 9, 9> out;
        for(int i = 0; i < 3; ++i)
            for(int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
        return out;
    }
} // namespace

Eigen::Matrix<double, 9, 9> bond_hamiltonian(double p) {
    const auto ops = spin1_operators();
    return 0.5 * p * (kron3(ops.s_plus, ops.s_minus) + kron3(ops.s_minus, ops.s_plus)) + kron3(ops.s_z, ops.s_z);
}

std::int64_t pow3(int n) {
    std::int64_t r = 1;
    for(int i = 0; i < n; ++i) r *= 3;
    return r;
}

SparseMatrix full_hamiltonian(const ModelParams &params, int ed_cap) {
    const int n = params.size();
    if(n > ed_cap) throw CapExceededError(n, ed_cap);

    const auto         h   = bond_hamiltonian(params.p);
    const std::int64_t dim = pow3(n);

    std::vector<std::int64_t> place(n);
    for(int i = 0; i < n; ++i) place[i] = pow3(n - 1 - i);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(n));
    std::vector<int> digits(n);
    for(std::int64_t code = 0; code < dim; ++code) {
        std::int64_t rest = code;
        for(int i = n - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        double diag = 0.0;
        for(int i = 0; i + 1 < n; ++i) {
            const int col = 3 * digits[i] + digits[i + 1];
            diag += h(col, col);
            for(int row = 0; row < 9; ++row) {
                if(row == col || h(row, col) == 0.0) continue;
                const std::int64_t target = code + (row / 3 - digits[i]) * place[i] + (row % 3 - digits[i + 1]) * place[i + 1];
                triplets.emplace_back(static_cast<int>(target), static_cast<int>(code), h(row, col));
            }
        }
        if(diag != 0.0) triplets.emplace_back(static_cast<int>(code), static_cast<int>(code), diag);
    }
    SparseMatrix out(dim, dim);
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

} // namespace spinchain
