#include "spinchain/dmrg.hpp"

#include "spinchain/lanczos.hpp"
#include "spinchain/mpo.hpp"

#include "detail/environment.hpp"
#include "detail/stacking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace spinchain {

DmrgConfig DmrgConfig::paper_protocol() {
    DmrgConfig cfg;
    cfg.m          = 70;
    cfg.max_sweeps = kPaperSweeps;
    return cfg;
}

void DmrgConfig::validate() const {
    if(m < 1) throw std::invalid_argument("bond dimension m must be >= 1");
    if(max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
    if(!(energy_tol > 0.0) || !(lanczos_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if(lanczos_max_iter < 1) throw std::invalid_argument("lanczos_max_iter must be >= 1");
    if(random_chi0 < 1) throw std::invalid_argument("random_chi0 must be >= 1");
    if(!(flip_penalty >= 0.0)) throw std::invalid_argument("flip_penalty must be >= 0");
}

namespace {

    using detail::Environment;

    struct PairEntry {
        int    a;     // left MPO index
        int    c;     // right MPO index
        int    s_out; // 3 * sigma1 + sigma2 (bra)
        int    s_in;  // 3 * sigma1 + sigma2 (ket)
        double value;
    };

    // Nonzero entries of sum_b W1[a][b] (x) W2[b][c].
    std::vector<PairEntry> pair_terms(const std::vector<MpoTerm> &w1, const std::vector<MpoTerm> &w2) {
        std::map<std::tuple<int, int, int, int>, double> acc;
        for(const auto &t1 : w1)
            for(const auto &t2 : w2) {
                if(t1.right != t2.left) continue;
                for(int o1 = 0; o1 < 3; ++o1)
                    for(int i1 = 0; i1 < 3; ++i1) {
                        if(t1.op(o1, i1) == 0.0) continue;
                        for(int o2 = 0; o2 < 3; ++o2)
                            for(int i2 = 0; i2 < 3; ++i2) {
                                if(t2.op(o2, i2) == 0.0) continue;
                                acc[{t1.left, t2.right, 3 * o1 + o2, 3 * i1 + i2}] += t1.op(o1, i1) * t2.op(o2, i2);
                            }
                    }
            }
        std::vector<PairEntry> out;
        for(const auto &[key, v] : acc)
            if(v != 0.0) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), v});
        return out;
    }

    // H_eff acting on the two-site wavefunction stored as the (3 cl x 3 cr) matrix whose
    // block (s1, s2) is theta[s1 s2], flattened column-major.
    class EffectiveHamiltonian {
      public:
        EffectiveHamiltonian(const Environment &left, const Environment &right, const std::vector<PairEntry> &terms)
            : cl_(left.dim()), cr_(right.dim()) {
            std::vector<int> a_slot(left.blocks.size(), -1), c_slot(right.blocks.size(), -1);
            int              na = 0, nc = 0;
            for(const auto &e : terms) {
                if(!left.active[static_cast<std::size_t>(e.a)] || !right.active[static_cast<std::size_t>(e.c)]) continue;
                if(a_slot[static_cast<std::size_t>(e.a)] < 0) a_slot[static_cast<std::size_t>(e.a)] = na++;
                if(c_slot[static_cast<std::size_t>(e.c)] < 0) c_slot[static_cast<std::size_t>(e.c)] = nc++;
                entries_.push_back({a_slot[static_cast<std::size_t>(e.a)], c_slot[static_cast<std::size_t>(e.c)], e.s_out, e.s_in, e.value});
            }
            l_stack_.resize(na * cl_, cl_);
            r_stack_t_.resize(nc * cr_, cr_);
            for(std::size_t a = 0; a < a_slot.size(); ++a)
                if(a_slot[a] >= 0) l_stack_.middleRows(a_slot[a] * cl_, cl_) = left.blocks[a];
            for(std::size_t c = 0; c < c_slot.size(); ++c)
                if(c_slot[c] >= 0) r_stack_t_.middleRows(c_slot[c] * cr_, cr_) = right.blocks[c].transpose();
            for(auto &m : m1_) m.resize(na * cl_, 3 * cr_);
            z_.resize(9 * cl_, nc * cr_);
            out_.resize(9 * cl_, cr_);
        }

        Eigen::Index dim() const { return 9 * cl_ * cr_; }

        void apply(const Eigen::VectorXd &x, Eigen::VectorXd &y) {
            Eigen::Map<const Eigen::MatrixXd> theta(x.data(), 3 * cl_, 3 * cr_);
            for(int s1 = 0; s1 < 3; ++s1) m1_[s1].noalias() = l_stack_ * theta.middleRows(s1 * cl_, cl_);
            z_.setZero();
            for(const auto &e : entries_) {
                const int s1 = e.s_in / 3, s2 = e.s_in % 3;
                z_.block(e.s_out * cl_, e.c * cr_, cl_, cr_) += e.value * m1_[s1].block(e.a * cl_, s2 * cr_, cl_, cr_);
            }
            out_.noalias() = z_ * r_stack_t_;
            y.resize(x.size());
            Eigen::Map<Eigen::MatrixXd> res(y.data(), 3 * cl_, 3 * cr_);
            for(int s = 0; s < 9; ++s) res.block((s / 3) * cl_, (s % 3) * cr_, cl_, cr_) = out_.middleRows(s * cl_, cl_);
        }

      private:
        Eigen::Index                   cl_;
        Eigen::Index                   cr_;
        std::vector<PairEntry>         entries_; // a, c remapped to stack slots
        Eigen::MatrixXd                l_stack_;
        Eigen::MatrixXd                r_stack_t_;
        std::array<Eigen::MatrixXd, 3> m1_;
        Eigen::MatrixXd                z_;
        Eigen::MatrixXd                out_;
    };

    Mps initial_state(const ModelParams &params, const DmrgConfig &cfg) {
        if(cfg.warm_start) {
            if(cfg.warm_start->size() != params.size()) throw std::invalid_argument("warm-start state has the wrong length");
            return normalize(canonicalize(*cfg.warm_start, 0));
        }
        if(cfg.initial_state == InitialState::kRandom) return random_mps(params, cfg.random_chi0, cfg.seed);
        const std::vector<int> zeros(static_cast<std::size_t>(params.size()), local_index(0));
        return product_state(zeros);
    }

    class Solver {
      public:
        Solver(const ModelParams &params, const DmrgConfig &cfg)
            : cfg_(cfg), mpo_(cfg.flip_penalty > 0.0 ? flip_penalized_hamiltonian_mpo(params, cfg.flip_penalty) : hamiltonian_mpo(params)), n_(params.size()) {
            Mps psi = initial_state(params, cfg);
            for(int i = 0; i < n_; ++i) tensors_.push_back(psi.site(i));
            truncation_ = psi.cum_truncation();
            for(int i = 0; i + 1 < n_; ++i)
                terms_.push_back(pair_terms(mpo_.sites[static_cast<std::size_t>(i)], mpo_.sites[static_cast<std::size_t>(i) + 1]));

            left_.resize(static_cast<std::size_t>(n_) + 1);
            right_.resize(static_cast<std::size_t>(n_) + 1);
            left_[0]                                 = detail::boundary_environment(mpo_.bond_dim, mpo_.left_boundary);
            right_[static_cast<std::size_t>(n_)]     = detail::boundary_environment(mpo_.bond_dim, mpo_.right_boundary);
            for(int i = n_ - 1; i >= 1; --i) update_right(i);
        }

        DmrgResult run() {
            DmrgReport report;
            double     previous = 0.0;
            bool       have_previous = false;
            for(int sweep = 1; sweep <= cfg_.max_sweeps; ++sweep) {
                sweep_max_discarded_ = 0.0;
                double energy        = 0.0;
                for(int i = 0; i + 1 < n_; ++i) {
                    const double e = optimize_bond(i, true);
                    if(!have_previous) {
                        previous      = initial_energy_;
                        have_previous = true;
                    }
                    energy = e;
                }
                for(int i = n_ - 2; i >= 0; --i) energy = optimize_bond(i, false);

                report.energies_per_sweep.push_back(energy);
                report.sweeps_run           = sweep;
                report.energy               = energy;
                report.max_discarded_weight = sweep_max_discarded_;
                const double change         = energy - previous;
                if(change > cfg_.rise_abort)
                    throw DmrgError("DMRG energy rose by " + std::to_string(change) + " in sweep " + std::to_string(sweep));
                previous = energy;
                if(std::abs(change) < cfg_.energy_tol) {
                    report.converged = true;
                    break;
                }
            }
            report.lanczos_failures   = lanczos_failures_;
            report.lanczos_iterations = lanczos_iterations_;

            Mps state(std::move(tensors_));
            state.set_canonical_center(0);
            state.add_truncation(truncation_);
            state              = normalize(std::move(state));
            report.flip_parity = expectation(state, flip_mpo(n_));
            return {std::move(state), report};
        }

      private:
        double optimize_bond(int i, bool moving_right) {
            const auto   si = static_cast<std::size_t>(i);
            auto        &a  = tensors_[si];
            auto        &b  = tensors_[si + 1];
            const auto   cl = a[0].rows();
            const auto   cr = b[0].cols();

            Eigen::MatrixXd theta = detail::stack_left(a) * detail::stack_right(b);
            Eigen::VectorXd start = Eigen::Map<const Eigen::VectorXd>(theta.data(), theta.size());

            EffectiveHamiltonian heff(left_[si], right_[si + 2], terms_[si]);
            LinearOperator       op = [&heff](const Eigen::VectorXd &x, Eigen::VectorXd &y) { heff.apply(x, y); };

            if(first_step_) {
                Eigen::VectorXd hx;
                op(start, hx);
                initial_energy_ = start.dot(hx) / start.squaredNorm();
                first_step_     = false;
            }

            LanczosOptions lo;
            lo.tol      = cfg_.lanczos_tol;
            lo.max_iter = cfg_.lanczos_max_iter;
            auto res    = lanczos_lowest(op, start, lo);
            if(!res.converged) ++lanczos_failures_;
            lanczos_iterations_ += res.iterations;

            Eigen::Map<const Eigen::MatrixXd> opt(res.vector.data(), 3 * cl, 3 * cr);
            auto split = svd_truncate(opt, cfg_.m);
            split.singular_values.normalize();
            sweep_max_discarded_ = std::max(sweep_max_discarded_, split.report.discarded_weight);
            truncation_ += split.report.discarded_weight;

            if(moving_right) {
                a = detail::unstack_left(split.left, cl);
                b = detail::unstack_right(split.singular_values.asDiagonal() * split.right, cr);
                left_[si + 1] = detail::extend_left(left_[si], a, mpo_.sites[si], mpo_.bond_dim);
            } else {
                a = detail::unstack_left(split.left * split.singular_values.asDiagonal(), cl);
                b = detail::unstack_right(split.right, cr);
                update_right(i + 1);
            }
            return res.value;
        }

        void update_right(int i) {
            const auto si = static_cast<std::size_t>(i);
            right_[si]    = detail::extend_right(right_[si + 1], tensors_[si], mpo_.sites[si], mpo_.bond_dim);
        }

        DmrgConfig                          cfg_;
        Mpo                                 mpo_;
        int                                 n_;
        std::vector<SiteTensor>             tensors_;
        std::vector<std::vector<PairEntry>> terms_;
        std::vector<Environment>            left_;
        std::vector<Environment>            right_;
        double                              truncation_          = 0.0;
        double                              sweep_max_discarded_ = 0.0;
        double                              initial_energy_      = 0.0;
        bool                                first_step_          = true;
        int                                 lanczos_failures_    = 0;
        long                                lanczos_iterations_  = 0;
    };

} // namespace

DmrgResult dmrg_ground_state(const ModelParams &params, const DmrgConfig &cfg) {
    cfg.validate();
    Solver solver(params, cfg);
    return solver.run();
}

DmrgResult warm_started_ground_state(const ModelParams &params, const Mps &previous, DmrgConfig cfg) {
    if(previous.size() != params.size()) throw std::invalid_argument("warm-start state has the wrong length");
    cfg.warm_start = previous;
    return dmrg_ground_state(params, cfg);
}

double energy_expectation(const Mps &psi, const ModelParams &params) { return expectation(psi, hamiltonian_mpo(params)); }

MagnetizationStats total_magnetization(const Mps &psi) {
    MagnetizationStats st;
    st.mean     = expectation(psi, total_sz_mpo(psi.size()));
    st.variance = expectation(psi, total_sz_squared_mpo(psi.size())) - st.mean * st.mean;
    return st;
}

} // namespace spinchain
