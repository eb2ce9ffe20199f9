#pragma once

#include "spinchain/model.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace spinchain {

/// One MPS site: a[sigma] is the (left bond x right bond) matrix for local state sigma.
using SiteTensor = std::array<Eigen::MatrixXd, kLocalDim>;

/// Open-boundary matrix-product state with real tensors.
class Mps {
  public:
    Mps() = default;
    explicit Mps(std::vector<SiteTensor> tensors);

    int size() const { return static_cast<int>(tensors_.size()); }
    /// Dimension of bond b in [0, N]; bonds 0 and N are the trivial boundaries.
    int              bond_dim(int b) const;
    std::vector<int> bond_dims() const;
    int              max_bond_dim() const;

    const SiteTensor &site(int i) const { return tensors_.at(static_cast<std::size_t>(i)); }
    /// Mutable access drops the canonical-form marker.
    SiteTensor &site(int i) {
        center_.reset();
        return tensors_.at(static_cast<std::size_t>(i));
    }

    std::optional<int> canonical_center() const { return center_; }
    void               set_canonical_center(std::optional<int> c) { center_ = c; }

    /// Running sum of discarded density-matrix weight over the state's history.
    double cum_truncation() const { return cum_truncation_; }
    void   add_truncation(double w) { cum_truncation_ += w; }

    /// Throws if neighbouring bond dimensions disagree or boundary bonds are not 1.
    void validate() const;

  private:
    std::vector<SiteTensor> tensors_;
    std::optional<int>      center_;
    double                  cum_truncation_ = 0.0;
};

/// Product state with site i in local basis state local[i].
Mps product_state(std::span<const int> local);

/// Normalized random state with bonds min(chi0, 3^min(b, N-b)), reproducible from the seed.
Mps random_mps(const ModelParams &params, int chi0, std::uint64_t seed);

/// <a|b> by left-to-right transfer-matrix contraction.
double inner_product(const Mps &a, const Mps &b);
double norm(const Mps &psi);

/// Mixed-canonical form around `center` via QR sweeps. The represented vector is unchanged.
Mps canonicalize(Mps psi, int center);

/// Canonicalizes (keeping an existing center) and scales to unit norm.
Mps normalize(Mps psi);

/// Left/right isometry check, max |A^T A - I| (left) or |B B^T - I| (right) entry.
double left_isometry_error(const SiteTensor &a);
double right_isometry_error(const SiteTensor &a);

struct TruncationReport {
    double discarded_weight = 0.0; // sum of dropped sigma^2 over sum of all sigma^2
    int    kept             = 0;
    int    bond             = -1;
};

struct SvdSplit {
    Eigen::MatrixXd  left;            // rows x kept, orthonormal columns
    Eigen::VectorXd  singular_values; // descending, kept only
    Eigen::MatrixXd  right;           // kept x cols, orthonormal rows
    TruncationReport report;
};

/// Singular values below this (relative to the largest) are always dropped.
inline constexpr double kSingularValueCutoff = 1e-14;

/// Keeps at most m singular triplets of theta. A near-degenerate multiplet straddling the cut
/// is dropped as a whole. Throws std::invalid_argument on an all-zero input.
SvdSplit svd_truncate(const Eigen::MatrixXd &theta, int m);

/// Reduced density matrix of sites (i, i + 1), 0-based, index 3*s_i + s_{i+1}.
Eigen::Matrix<double, 9, 9> pair_rdm(const Mps &psi, int i);

/// Reduced density matrix of site i.
Eigen::Matrix3d site_rdm(const Mps &psi, int i);

/// Full 3^N amplitude vector, site 0 most significant. Only for small N.
Eigen::VectorXd to_dense(const Mps &psi, int cap = kDefaultEdCap);

/// Binary checkpoint: uint64 N, N+1 uint64 bond dimensions, then each site's tensor in
/// row-major (left, physical, right) order as float64. Everything little-endian.
void save_mps(const Mps &psi, std::ostream &out);
Mps  load_mps(std::istream &in);

} // namespace spinchain
