#include "spinchain/ed.hpp"

#include "detail/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace spinchain {

int SectorBasis::digit(std::int64_t code, int site) const {
    for(int k = n - 1; k > site; --k) code /= 3;
    return static_cast<int>(code % 3);
}

SectorBasis build_sector_basis(int n, int sz_total, int ed_cap) {
    if(n < 1) throw std::invalid_argument("sector basis needs at least one site");
    if(n > ed_cap) throw CapExceededError(n, ed_cap);
    if(std::abs(sz_total) > n) throw std::invalid_argument("|sz_total| exceeds the number of sites");

    SectorBasis basis;
    basis.n        = n;
    basis.sz_total = sz_total;
    const std::int64_t dim = pow3(n);
    for(std::int64_t code = 0; code < dim; ++code) {
        std::int64_t rest = code;
        int          sz   = 0;
        for(int i = 0; i < n; ++i) {
            sz += local_m(static_cast<int>(rest % 3));
            rest /= 3;
        }
        if(sz == sz_total) basis.states.push_back(code);
    }
    basis.index.reserve(basis.states.size());
    for(std::size_t k = 0; k < basis.states.size(); ++k) basis.index.emplace(basis.states[k], static_cast<std::int64_t>(k));
    return basis;
}

SparseMatrix sector_hamiltonian(const ModelParams &params, const SectorBasis &basis) {
    const int n = params.size();
    if(basis.n != n) throw std::invalid_argument("sector basis and model disagree on the chain length");
    const auto h = bond_hamiltonian(params.p);

    std::vector<std::int64_t> place(n);
    for(int i = 0; i < n; ++i) place[i] = pow3(n - 1 - i);

    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<int>                    digits(n);
    for(std::int64_t col_idx = 0; col_idx < basis.size(); ++col_idx) {
        const std::int64_t code = basis.states[col_idx];
        std::int64_t       rest = code;
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
                triplets.emplace_back(static_cast<int>(basis.index.at(target)), static_cast<int>(col_idx), h(row, col));
            }
        }
        if(diag != 0.0) triplets.emplace_back(static_cast<int>(col_idx), static_cast<int>(col_idx), diag);
    }
    SparseMatrix out(basis.size(), basis.size());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

namespace {
    std::int64_t flip_code(std::int64_t code, int n) {
        std::int64_t out = 0, place = 1;
        for(int i = 0; i < n; ++i) {
            out += (2 - code % 3) * place;
            code /= 3;
            place *= 3;
        }
        return out;
    }
} // namespace

EdGroundState ed_ground_state(const ModelParams &params, int sz_total, const EdOptions &opts) {
    auto basis = std::make_shared<const SectorBasis>(build_sector_basis(params.size(), sz_total, opts.ed_cap));
    if(basis->size() == 0) throw std::invalid_argument("empty magnetization sector");
    const SparseMatrix h = sector_hamiltonian(params, *basis);

    detail::SplitMix64 rng(opts.seed);
    Eigen::VectorXd    start(basis->size());
    for(Eigen::Index k = 0; k < start.size(); ++k) start(k) = rng.uniform(-1.0, 1.0);
    if(sz_total == 0) {
        Eigen::VectorXd sym(start.size());
        for(Eigen::Index k = 0; k < start.size(); ++k)
            sym(k) = start(k) + start(basis->index.at(flip_code(basis->states[k], basis->n)));
        start = sym;
    }

    LanczosOptions lo;
    lo.tol           = opts.tol;
    lo.max_iter      = opts.max_iter;
    lo.true_residual = true;
    const auto res   = lanczos_lowest([&h](const Eigen::VectorXd &x, Eigen::VectorXd &y) { y.noalias() = h * x; }, start, lo);
    if(!res.converged)
        throw ConvergenceError("exact diagonalization did not converge, residual " + std::to_string(res.residual),
                               res.residual, res.iterations);

    EdGroundState gs;
    gs.basis      = basis;
    gs.energy     = res.value;
    gs.amplitudes = res.vector;
    gs.residual   = res.residual;
    gs.iterations = res.iterations;
    Eigen::Index imax = 0;
    gs.amplitudes.cwiseAbs().maxCoeff(&imax);
    if(gs.amplitudes(imax) < 0) gs.amplitudes = -gs.amplitudes;
    return gs;
}

double ed_overlap(const EdGroundState &a, const EdGroundState &b) {
    if(!a.basis || !b.basis || a.basis->n != b.basis->n || a.basis->sz_total != b.basis->sz_total ||
       a.amplitudes.size() != b.amplitudes.size())
        throw std::invalid_argument("overlap of states in different sector bases");
    return std::abs(a.amplitudes.dot(b.amplitudes));
}

Eigen::MatrixXd ed_reduced_density_matrix(const EdGroundState &state, std::span<const int> sites) {
    const SectorBasis &basis = *state.basis;
    const int          n     = basis.n;
    std::vector<bool>  kept(n, false);
    for(std::size_t k = 0; k < sites.size(); ++k) {
        if(sites[k] < 0 || sites[k] >= n) throw std::out_of_range("site index out of range");
        if(k > 0 && sites[k] <= sites[k - 1]) throw std::invalid_argument("sites must be ascending and distinct");
        kept[sites[k]] = true;
    }
    const int dim = static_cast<int>(pow3(static_cast<int>(sites.size())));

    // environment configuration -> (kept code, amplitude) pairs
    std::map<std::int64_t, std::vector<std::pair<int, double>>> groups;
    for(std::int64_t k = 0; k < basis.size(); ++k) {
        std::int64_t code = basis.states[k];
        std::int64_t env = 0, env_place = 1;
        int          sys = 0, sys_place = 1;
        for(int i = n - 1; i >= 0; --i) {
            const int d = static_cast<int>(code % 3);
            code /= 3;
            if(kept[i]) {
                sys += d * sys_place;
                sys_place *= 3;
            } else {
                env += d * env_place;
                env_place *= 3;
            }
        }
        groups[env].emplace_back(sys, state.amplitudes(k));
    }
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
    for(const auto &[env, entries] : groups)
        for(const auto &[r, ar] : entries)
            for(const auto &[c, ac] : entries) rho(r, c) += ar * ac;
    return rho;
}

Eigen::MatrixXd ed_pair_rdm(const EdGroundState &state, int i) {
    if(i < 0 || i + 1 >= state.basis->n) throw std::out_of_range("pair index out of range");
    const int sites[2] = {i, i + 1};
    return ed_reduced_density_matrix(state, sites);
}

Eigen::VectorXd ed_to_dense(const EdGroundState &state) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(pow3(state.basis->n));
    for(std::int64_t k = 0; k < state.basis->size(); ++k) out(state.basis->states[k]) = state.amplitudes(k);
    return out;
}

} // namespace spinchain
