#include "spinchain/mpo.hpp"

#include "detail/environment.hpp"
#include "detail/stacking.hpp"

#include <stdexcept>

namespace spinchain {

namespace detail {

    Eigen::Index Environment::dim() const {
        for(std::size_t b = 0; b < blocks.size(); ++b)
            if(active[b]) return blocks[b].rows();
        return 0;
    }

    Environment boundary_environment(int mpo_bond_dim, int index) {
        Environment env;
        env.blocks.assign(static_cast<std::size_t>(mpo_bond_dim), Eigen::MatrixXd::Zero(1, 1));
        env.active.assign(static_cast<std::size_t>(mpo_bond_dim), false);
        env.blocks[static_cast<std::size_t>(index)](0, 0) = 1.0;
        env.active[static_cast<std::size_t>(index)]       = true;
        return env;
    }

    Environment extend_left(const Environment &env, const SiteTensor &a, const std::vector<MpoTerm> &w, int mpo_bond_dim) {
        const auto        w_dim = static_cast<std::size_t>(mpo_bond_dim);
        const Eigen::Index cl   = a[0].rows();
        const Eigen::Index cr   = a[0].cols();

        std::vector<std::array<Eigen::MatrixXd, kLocalDim>> x(w_dim);
        std::vector<Eigen::MatrixXd>                         y(w_dim);
        for(const auto &t : w) {
            const auto b = static_cast<std::size_t>(t.left);
            if(!env.active[b]) continue;
            if(x[b][0].size() == 0)
                for(int s = 0; s < kLocalDim; ++s) x[b][s].noalias() = env.blocks[b] * a[s];
            auto &acc = y[static_cast<std::size_t>(t.right)];
            if(acc.size() == 0) acc = Eigen::MatrixXd::Zero(kLocalDim * cl, cr);
            for(int s = 0; s < kLocalDim; ++s)
                for(int sp = 0; sp < kLocalDim; ++sp)
                    if(t.op(s, sp) != 0.0) acc.middleRows(s * cl, cl) += t.op(s, sp) * x[b][sp];
        }
        const Eigen::MatrixXd a_stack = stack_left(a);
        Environment           out;
        out.blocks.assign(w_dim, Eigen::MatrixXd::Zero(cr, cr));
        out.active.assign(w_dim, false);
        for(std::size_t b = 0; b < w_dim; ++b) {
            if(y[b].size() == 0) continue;
            out.blocks[b].noalias() = a_stack.transpose() * y[b];
            out.active[b]           = true;
        }
        return out;
    }

    Environment extend_right(const Environment &env, const SiteTensor &b, const std::vector<MpoTerm> &w, int mpo_bond_dim) {
        const auto        w_dim = static_cast<std::size_t>(mpo_bond_dim);
        const Eigen::Index cl   = b[0].rows();
        const Eigen::Index cr   = b[0].cols();

        std::vector<std::array<Eigen::MatrixXd, kLocalDim>> x(w_dim);
        std::vector<Eigen::MatrixXd>                         y(w_dim);
        for(const auto &t : w) {
            const auto r = static_cast<std::size_t>(t.right);
            if(!env.active[r]) continue;
            if(x[r][0].size() == 0)
                for(int s = 0; s < kLocalDim; ++s) x[r][s].noalias() = env.blocks[r] * b[s].transpose();
            auto &acc = y[static_cast<std::size_t>(t.left)];
            if(acc.size() == 0) acc = Eigen::MatrixXd::Zero(kLocalDim * cr, cl);
            for(int s = 0; s < kLocalDim; ++s)
                for(int sp = 0; sp < kLocalDim; ++sp)
                    if(t.op(s, sp) != 0.0) acc.middleRows(s * cr, cr) += t.op(s, sp) * x[r][sp];
        }
        const Eigen::MatrixXd b_stack = stack_right(b);
        Environment           out;
        out.blocks.assign(w_dim, Eigen::MatrixXd::Zero(cl, cl));
        out.active.assign(w_dim, false);
        for(std::size_t l = 0; l < w_dim; ++l) {
            if(y[l].size() == 0) continue;
            out.blocks[l].noalias() = b_stack * y[l];
            out.active[l]           = true;
        }
        return out;
    }

} // namespace detail

Mpo hamiltonian_mpo(const ModelParams &params) {
    const auto ops = spin1_operators();
    const int  n   = params.size();
    Mpo        mpo;
    mpo.bond_dim       = 5;
    mpo.left_boundary  = 4;
    mpo.right_boundary = 0;
    mpo.sites.resize(static_cast<std::size_t>(n));
    const double half_p = 0.5 * params.p;
    for(auto &w : mpo.sites) {
        w = {
            {4, 4, ops.id},
            {4, 1, half_p * ops.s_plus},
            {4, 2, half_p * ops.s_minus},
            {4, 3, ops.s_z},
            {1, 0, ops.s_minus},
            {2, 0, ops.s_plus},
            {3, 0, ops.s_z},
            {0, 0, ops.id},
        };
    }
    return mpo;
}

namespace {

    Eigen::Matrix3d local_flip() {
        Eigen::Matrix3d x = Eigen::Matrix3d::Zero();
        x(0, 2) = x(1, 1) = x(2, 0) = 1.0;
        return x;
    }

} // namespace

Mpo flip_penalized_hamiltonian_mpo(const ModelParams &params, double penalty) {
    Mpo        mpo = hamiltonian_mpo(params);
    const auto ops = spin1_operators();
    const auto x   = local_flip();
    const int  n   = mpo.size();
    mpo.bond_dim   = 6;
    auto &first    = mpo.sites.front();
    first.push_back({4, 0, 0.5 * penalty * ops.id});
    first.push_back({4, 5, -0.5 * penalty * x});
    for(int i = 1; i + 1 < n; ++i) mpo.sites[static_cast<std::size_t>(i)].push_back({5, 5, x});
    mpo.sites.back().push_back({5, 0, x});
    return mpo;
}

Mpo flip_mpo(int n) {
    Mpo mpo;
    mpo.bond_dim       = 1;
    mpo.left_boundary  = 0;
    mpo.right_boundary = 0;
    mpo.sites.assign(static_cast<std::size_t>(n), {{0, 0, local_flip()}});
    return mpo;
}

Mpo total_sz_mpo(int n) {
    const auto ops = spin1_operators();
    Mpo        mpo;
    mpo.bond_dim       = 2;
    mpo.left_boundary  = 1;
    mpo.right_boundary = 0;
    mpo.sites.assign(static_cast<std::size_t>(n), {{1, 1, ops.id}, {1, 0, ops.s_z}, {0, 0, ops.id}});
    return mpo;
}

Mpo total_sz_squared_mpo(int n) {
    const auto ops = spin1_operators();
    Mpo        mpo;
    mpo.bond_dim       = 3;
    mpo.left_boundary  = 2;
    mpo.right_boundary = 0;
    mpo.sites.assign(static_cast<std::size_t>(n), {{2, 2, ops.id},
                                                   {2, 1, 2.0 * ops.s_z},
                                                   {2, 0, ops.s_z * ops.s_z},
                                                   {1, 1, ops.id},
                                                   {1, 0, ops.s_z},
                                                   {0, 0, ops.id}});
    return mpo;
}

double expectation(const Mps &psi, const Mpo &op) {
    if(psi.size() != op.size()) throw std::invalid_argument("MPS and MPO lengths differ");
    auto env = detail::boundary_environment(op.bond_dim, op.left_boundary);
    for(int i = 0; i < psi.size(); ++i) env = detail::extend_left(env, psi.site(i), op.sites[static_cast<std::size_t>(i)], op.bond_dim);
    const auto r = static_cast<std::size_t>(op.right_boundary);
    if(!env.active[r]) return 0.0;
    return env.blocks[r](0, 0) / inner_product(psi, psi);
}

Eigen::MatrixXd mpo_to_dense(const Mpo &op, int cap) {
    if(op.size() > cap) throw CapExceededError(op.size(), cap);
    // acc[b] is the dense operator on the sites so far with open right MPO index b
    std::vector<Eigen::MatrixXd> acc(static_cast<std::size_t>(op.bond_dim));
    acc[static_cast<std::size_t>(op.left_boundary)] = Eigen::MatrixXd::Ones(1, 1);
    for(const auto &w : op.sites) {
        std::vector<Eigen::MatrixXd> next(static_cast<std::size_t>(op.bond_dim));
        for(const auto &t : w) {
            const auto &prev = acc[static_cast<std::size_t>(t.left)];
            if(prev.size() == 0) continue;
            Eigen::MatrixXd kron(prev.rows() * kLocalDim, prev.cols() * kLocalDim);
            for(Eigen::Index r = 0; r < prev.rows(); ++r)
                for(Eigen::Index c = 0; c < prev.cols(); ++c) kron.block<kLocalDim, kLocalDim>(r * kLocalDim, c * kLocalDim) = prev(r, c) * t.op;
            auto &dst = next[static_cast<std::size_t>(t.right)];
            if(dst.size() == 0) dst = kron;
            else dst += kron;
        }
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(op.right_boundary)];
}

} // namespace spinchain
