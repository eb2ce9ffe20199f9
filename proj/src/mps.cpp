#include "spinchain/mps.hpp"

#include "detail/random.hpp"
#include "detail/stacking.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spinchain {

Mps::Mps(std::vector<SiteTensor> tensors) : tensors_(std::move(tensors)) { validate(); }

int Mps::bond_dim(int b) const {
    if(b < 0 || b > size()) throw std::out_of_range("bond index out of range");
    if(b == size()) return static_cast<int>(tensors_.back()[0].cols());
    return static_cast<int>(tensors_[static_cast<std::size_t>(b)][0].rows());
}

std::vector<int> Mps::bond_dims() const {
    std::vector<int> dims(static_cast<std::size_t>(size()) + 1);
    for(int b = 0; b <= size(); ++b) dims[static_cast<std::size_t>(b)] = bond_dim(b);
    return dims;
}

int Mps::max_bond_dim() const {
    const auto dims = bond_dims();
    return *std::max_element(dims.begin(), dims.end());
}

void Mps::validate() const {
    if(tensors_.empty()) throw std::invalid_argument("MPS needs at least one site");
    for(std::size_t i = 0; i < tensors_.size(); ++i) {
        const auto &a = tensors_[i];
        for(int s = 1; s < kLocalDim; ++s)
            if(a[s].rows() != a[0].rows() || a[s].cols() != a[0].cols())
                throw std::invalid_argument("inconsistent physical slices at site " + std::to_string(i));
        if(i + 1 < tensors_.size() && a[0].cols() != tensors_[i + 1][0].rows())
            throw std::invalid_argument("bond mismatch between sites " + std::to_string(i) + " and " + std::to_string(i + 1));
    }
    if(tensors_.front()[0].rows() != 1 || tensors_.back()[0].cols() != 1)
        throw std::invalid_argument("boundary bonds must have dimension 1");
}

Mps product_state(std::span<const int> local) {
    std::vector<SiteTensor> t(local.size());
    for(std::size_t i = 0; i < local.size(); ++i) {
        if(local[i] < 0 || local[i] >= kLocalDim) throw std::invalid_argument("local state index out of range");
        for(int s = 0; s < kLocalDim; ++s) t[i][s] = Eigen::MatrixXd::Constant(1, 1, s == local[i] ? 1.0 : 0.0);
    }
    Mps psi(std::move(t));
    psi.set_canonical_center(0);
    return psi;
}

Mps random_mps(const ModelParams &params, int chi0, std::uint64_t seed) {
    if(chi0 < 1) throw std::invalid_argument("initial bond dimension must be >= 1");
    const int           n = params.size();
    std::vector<int>    dims(static_cast<std::size_t>(n) + 1);
    for(int b = 0; b <= n; ++b) {
        const int edge = std::min(b, n - b);
        // 3^edge saturates quickly; stop multiplying once chi0 is reached
        int full = 1;
        for(int k = 0; k < edge && full < chi0; ++k) full *= kLocalDim;
        dims[static_cast<std::size_t>(b)] = std::min(chi0, full);
    }
    detail::SplitMix64      rng(seed);
    std::vector<SiteTensor> t(static_cast<std::size_t>(n));
    for(int i = 0; i < n; ++i)
        for(int s = 0; s < kLocalDim; ++s) {
            auto &m = t[static_cast<std::size_t>(i)][s];
            m.resize(dims[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(i) + 1]);
            for(Eigen::Index c = 0; c < m.cols(); ++c)
                for(Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.uniform(-1.0, 1.0);
        }
    return normalize(canonicalize(Mps(std::move(t)), 0));
}

double inner_product(const Mps &a, const Mps &b) {
    if(a.size() != b.size()) throw std::invalid_argument("inner product of states with different lengths");
    Eigen::MatrixXd env = Eigen::MatrixXd::Ones(1, 1);
    for(int i = 0; i < a.size(); ++i) {
        const auto &ai = a.site(i);
        const auto &bi = b.site(i);
        if(ai[0].rows() != env.rows() || bi[0].rows() != env.cols())
            throw std::invalid_argument("inner product: bond shape mismatch at site " + std::to_string(i));
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(ai[0].cols(), bi[0].cols());
        for(int s = 0; s < kLocalDim; ++s) next.noalias() += ai[s].transpose() * (env * bi[s]);
        env = std::move(next);
    }
    return env(0, 0);
}

double norm(const Mps &psi) { return std::sqrt(std::max(0.0, inner_product(psi, psi))); }

namespace {
    // Thin QR with a nonnegative diagonal in R.
    void thin_qr(const Eigen::MatrixXd &m, Eigen::MatrixXd &q, Eigen::MatrixXd &r) {
        const Eigen::Index                    k = std::min(m.rows(), m.cols());
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
        r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        for(Eigen::Index j = 0; j < k; ++j)
            if(r(j, j) < 0) {
                r.row(j) *= -1.0;
                q.col(j) *= -1.0;
            }
    }
} // namespace

Mps canonicalize(Mps psi, int center) {
    const int n = psi.size();
    if(center < 0 || center >= n) throw std::out_of_range("canonical center out of range");
    const double truncation = psi.cum_truncation();
    std::vector<SiteTensor> t(static_cast<std::size_t>(n));
    for(int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = psi.site(i);

    Eigen::MatrixXd q, r;
    for(int i = 0; i < center; ++i) {
        auto &a = t[static_cast<std::size_t>(i)];
        thin_qr(detail::stack_left(a), q, r);
        a = detail::unstack_left(q, a[0].rows());
        for(auto &next : t[static_cast<std::size_t>(i) + 1]) next = r * next;
    }
    for(int i = n - 1; i > center; --i) {
        auto &a = t[static_cast<std::size_t>(i)];
        thin_qr(detail::stack_right(a).transpose(), q, r);
        a = detail::unstack_right(q.transpose(), a[0].cols());
        for(auto &prev : t[static_cast<std::size_t>(i) - 1]) prev = prev * r.transpose();
    }
    Mps out(std::move(t));
    out.set_canonical_center(center);
    out.add_truncation(truncation);
    return out;
}

Mps normalize(Mps psi) {
    const int c   = psi.canonical_center().value_or(0);
    Mps       out = psi.canonical_center() ? std::move(psi) : canonicalize(std::move(psi), c);
    double    sq  = 0.0;
    for(const auto &m : out.site(c)) sq += m.squaredNorm();
    if(!(sq > 0.0)) throw std::invalid_argument("cannot normalize the zero state");
    const double inv = 1.0 / std::sqrt(sq);
    for(auto &m : out.site(c)) m *= inv;
    out.set_canonical_center(c);
    return out;
}

double left_isometry_error(const SiteTensor &a) {
    const Eigen::MatrixXd m = detail::stack_left(a);
    return (m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

double right_isometry_error(const SiteTensor &a) {
    const Eigen::MatrixXd m = detail::stack_right(a);
    return (m * m.transpose() - Eigen::MatrixXd::Identity(m.rows(), m.rows())).cwiseAbs().maxCoeff();
}

SvdSplit svd_truncate(const Eigen::MatrixXd &theta, int m) {
    if(m < 1) throw std::invalid_argument("bond dimension must be >= 1");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd         &sv    = svd.singularValues();
    const double                   total = sv.squaredNorm();
    if(!(total > 0.0)) throw std::invalid_argument("cannot truncate an all-zero matrix");

    Eigen::Index keep = 0;
    while(keep < sv.size() && sv(keep) > kSingularValueCutoff * sv(0)) ++keep;
    if(keep > m) {
        keep = m;
        // do not split a multiplet across the cut
        while(keep > 1 && sv(keep) >= sv(keep - 1) * (1.0 - 1e-8)) --keep;
    }
    keep = std::max<Eigen::Index>(keep, 1);

    SvdSplit out;
    out.left            = svd.matrixU().leftCols(keep);
    out.singular_values = sv.head(keep);
    out.right           = svd.matrixV().leftCols(keep).transpose();
    double discarded    = 0.0;
    for(Eigen::Index j = keep; j < sv.size(); ++j) discarded += sv(j) * sv(j);
    out.report.discarded_weight = discarded / total;
    out.report.kept             = static_cast<int>(keep);
    return out;
}

Eigen::Matrix<double, 9, 9> pair_rdm(const Mps &psi, int i) {
    if(i < 0 || i + 1 >= psi.size()) throw std::out_of_range("pair index out of range");
    const Mps  local = psi.canonical_center() == i ? psi : canonicalize(psi, i);
    const auto &a    = local.site(i);
    const auto &b    = local.site(i + 1);

    std::array<Eigen::MatrixXd, 9> theta;
    for(int s1 = 0; s1 < 3; ++s1)
        for(int s2 = 0; s2 < 3; ++s2) theta[3 * s1 + s2].noalias() = a[s1] * b[s2];
    Eigen::Matrix<double, 9, 9> rho;
    for(int r = 0; r < 9; ++r)
        for(int c = r; c < 9; ++c) rho(r, c) = rho(c, r) = theta[r].cwiseProduct(theta[c]).sum();
    return rho / rho.trace();
}

Eigen::Matrix3d site_rdm(const Mps &psi, int i) {
    if(i < 0 || i >= psi.size()) throw std::out_of_range("site index out of range");
    const Mps  local = psi.canonical_center() == i ? psi : canonicalize(psi, i);
    const auto &a    = local.site(i);
    Eigen::Matrix3d rho;
    for(int r = 0; r < 3; ++r)
        for(int c = r; c < 3; ++c) rho(r, c) = rho(c, r) = a[r].cwiseProduct(a[c]).sum();
    return rho / rho.trace();
}

Eigen::VectorXd to_dense(const Mps &psi, int cap) {
    if(psi.size() > cap) throw CapExceededError(psi.size(), cap);
    // rows: configurations of the sites contracted so far; cols: open right bond
    Eigen::MatrixXd acc = Eigen::MatrixXd::Ones(1, 1);
    for(int i = 0; i < psi.size(); ++i) {
        const auto     &a = psi.site(i);
        Eigen::MatrixXd next(acc.rows() * kLocalDim, a[0].cols());
        for(Eigen::Index row = 0; row < acc.rows(); ++row)
            for(int s = 0; s < kLocalDim; ++s) next.row(row * kLocalDim + s).noalias() = acc.row(row) * a[s];
        acc = std::move(next);
    }
    return acc.col(0);
}

namespace {
    template<typename T>
    void write_le(std::ostream &out, T value) {
        auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
        if constexpr(std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
        out.write(bytes.data(), sizeof(T));
    }

    template<typename T>
    T read_le(std::istream &in) {
        std::array<char, sizeof(T)> bytes{};
        if(!in.read(bytes.data(), sizeof(T))) throw std::runtime_error("truncated MPS checkpoint");
        if constexpr(std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
} // namespace

void save_mps(const Mps &psi, std::ostream &out) {
    write_le<std::uint64_t>(out, static_cast<std::uint64_t>(psi.size()));
    for(int d : psi.bond_dims()) write_le<std::uint64_t>(out, static_cast<std::uint64_t>(d));
    for(int i = 0; i < psi.size(); ++i) {
        const auto &a = psi.site(i);
        for(Eigen::Index l = 0; l < a[0].rows(); ++l)
            for(int s = 0; s < kLocalDim; ++s)
                for(Eigen::Index r = 0; r < a[0].cols(); ++r) write_le<double>(out, a[s](l, r));
    }
    if(!out) throw std::runtime_error("failed to write MPS checkpoint");
}

Mps load_mps(std::istream &in) {
    const auto n = read_le<std::uint64_t>(in);
    if(n == 0 || n > 100000) throw std::runtime_error("implausible site count in MPS checkpoint");
    std::vector<Eigen::Index> dims(n + 1);
    for(auto &d : dims) {
        const auto v = read_le<std::uint64_t>(in);
        if(v == 0 || v > 1000000) throw std::runtime_error("implausible bond dimension in MPS checkpoint");
        d = static_cast<Eigen::Index>(v);
    }
    std::vector<SiteTensor> t(n);
    for(std::size_t i = 0; i < n; ++i) {
        for(auto &m : t[i]) m.resize(dims[i], dims[i + 1]);
        for(Eigen::Index l = 0; l < dims[i]; ++l)
            for(int s = 0; s < kLocalDim; ++s)
                for(Eigen::Index r = 0; r < dims[i + 1]; ++r) t[i][s](l, r) = read_le<double>(in);
    }
    return Mps(std::move(t));
}

} // namespace spinchain
