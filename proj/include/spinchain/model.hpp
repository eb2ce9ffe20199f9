#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <stdexcept>

namespace spinchain {

/// Local dimension of a spin-1 site. Basis order is (m = +1, 0, -1).
inline constexpr int kLocalDim = 3;

/// Largest chain length accepted by the full-matrix and exact-diagonalization paths.
inline constexpr int kDefaultEdCap = 12;

/// Thrown when a dense or sparse full-space construction would exceed the size cap.
class CapExceededError : public std::runtime_error {
  public:
    CapExceededError(int n, int cap);
    int n() const { return n_; }
    int cap() const { return cap_; }

  private:
    int n_;
    int cap_;
};

/// Magnetic quantum number of local basis index k (0 -> +1, 1 -> 0, 2 -> -1).
constexpr int local_m(int k) { return 1 - k; }
constexpr int local_index(int m) { return 1 - m; }

/// Number of sites of an open chain. Always even and at least 2 so that the
/// central pair (N/2, N/2+1) exists.
class ChainLength {
  public:
    explicit ChainLength(int n);
    int value() const { return n_; }
    operator int() const { return n_; }

  private:
    int n_;
};

/// Open anisotropic spin-1 chain H = J sum_i [p (SxSx + SySy) + SzSz], J = 1, p = 1/Delta.
struct ModelParams {
    ChainLength n;
    double      p;

    static constexpr double kCoupling = 1.0;

    ModelParams(ChainLength n_, double p_);
    int size() const { return n.value(); }
};

struct LocalOps {
    Eigen::Matrix3d s_plus;
    Eigen::Matrix3d s_minus;
    Eigen::Matrix3d s_z;
    Eigen::Matrix3d id;
};

LocalOps spin1_operators();

/// Two-site term (p/2)(S+ S- + S- S+) + Sz Sz on the 9-dim pair space, row index 3*s1 + s2.
Eigen::Matrix<double, 9, 9> bond_hamiltonian(double p);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Full 3^N sparse Hamiltonian. Site 0 is the most significant base-3 digit.
SparseMatrix full_hamiltonian(const ModelParams &params, int ed_cap = kDefaultEdCap);

/// 3^n, for n small enough to fit.
std::int64_t pow3(int n);

} // namespace spinchain
