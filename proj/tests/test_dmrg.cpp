#include "spinchain/dmrg.hpp"
#include "spinchain/ed.hpp"
#include "spinchain/observables.hpp"

#include <doctest.h>

#include <cmath>

using namespace spinchain;

TEST_CASE("two-site singlet is exact") {
    for(int m : {1, 3, 70}) {
        DmrgConfig cfg;
        cfg.m        = m;
        const auto r = dmrg_ground_state(ModelParams(ChainLength(2), 1.0), cfg);
        CAPTURE(m);
        CHECK(std::abs(r.report.energy + 2.0) < 1e-10);
    }
}

TEST_CASE("energies agree with exact diagonalization and stay variational") {
    for(int n : {4, 6, 8, 10})
        for(double p : {0.2, 0.85, 1.1}) {
            const ModelParams params(ChainLength(n), p);
            const auto        r  = dmrg_ground_state(params, DmrgConfig{});
            const double      e0 = ed_ground_state(params).energy;
            CAPTURE(n);
            CAPTURE(p);
            CHECK(r.report.converged);
            CHECK(r.report.energy >= e0 - 1e-9);
            CHECK(std::abs(r.report.energy - e0) < 1e-9);
            CHECK(std::abs(energy_expectation(r.state, params) - e0) < 1e-9);
            for(std::size_t k = 1; k < r.report.energies_per_sweep.size(); ++k)
                CHECK(r.report.energies_per_sweep[k] <= r.report.energies_per_sweep[k - 1] + 1e-12);
        }
}

TEST_CASE("state is normalized, canonical at the left end and has zero magnetization") {
    const auto r = dmrg_ground_state(ModelParams(ChainLength(8), 0.85), DmrgConfig{});
    CHECK(r.state.canonical_center() == 0);
    CHECK(std::abs(norm(r.state) - 1.0) < 1e-12);
    for(int i = 1; i < 8; ++i) CHECK(right_isometry_error(r.state.site(i)) < 1e-10);
    const auto mz = total_magnetization(r.state);
    CHECK(std::abs(mz.mean) < 1e-8);
    CHECK(mz.variance < 1e-8);
}

TEST_CASE("random start reaches the same ground state") {
    DmrgConfig cfg;
    cfg.initial_state = InitialState::kRandom;
    cfg.seed          = 5;
    const ModelParams params(ChainLength(8), 1.0);
    const auto        r  = dmrg_ground_state(params, cfg);
    const auto        ed = ed_ground_state(params);
    CHECK(std::abs(r.report.energy - ed.energy) < 1e-9);
    CHECK(std::abs(central_pair_entropy(r.state) - central_pair_entropy(ed)) < 1e-7);
}

TEST_CASE("flip penalty keeps random starts in the flip-even sector") {
    DmrgConfig cfg;
    cfg.initial_state = InitialState::kRandom;
    for(double p : {0.2, 1.0}) {
        const ModelParams params(ChainLength(8), p);
        const auto        ed = ed_ground_state(params);
        for(std::uint64_t seed : {3, 11}) {
            cfg.seed     = seed;
            const auto r = dmrg_ground_state(params, cfg);
            CAPTURE(p);
            CAPTURE(seed);
            CHECK(std::abs(r.report.flip_parity - 1.0) < 1e-8);
            CHECK(std::abs(r.report.energy - ed.energy) < 1e-9);
            CHECK(std::abs(central_pair_entropy(r.state) - central_pair_entropy(ed)) < 1e-7);
        }
    }
    DmrgConfig off;
    off.flip_penalty = 0.0;
    const auto r     = dmrg_ground_state(ModelParams(ChainLength(8), 0.85), off);
    CHECK(std::abs(r.report.flip_parity - 1.0) < 1e-8); // the product start is already even
    off.flip_penalty = -1.0;
    CHECK_THROWS_AS(off.validate(), std::invalid_argument);
}

TEST_CASE("warm start converges to the cold-start state in fewer sweeps") {
    const ModelParams a(ChainLength(16), 0.85), b(ChainLength(16), 0.86);
    const auto        first = dmrg_ground_state(a, DmrgConfig{});
    const auto        cold  = dmrg_ground_state(b, DmrgConfig{});
    const auto        warm  = warm_started_ground_state(b, first.state, DmrgConfig{});
    CHECK(std::abs(cold.report.energy - warm.report.energy) < 1e-9);
    CHECK(std::abs(fidelity(cold.state, warm.state) - 1.0) < 1e-9);
    CHECK(warm.report.sweeps_run < cold.report.sweeps_run);
    CHECK_THROWS_AS(warm_started_ground_state(ModelParams(ChainLength(8), 1.0), first.state, DmrgConfig{}),
                    std::invalid_argument);
}

TEST_CASE("energy decreases with bond dimension") {
    const ModelParams params(ChainLength(20), 0.85);
    double            e[3];
    int               k = 0;
    for(int m : {30, 50, 70}) {
        DmrgConfig cfg;
        cfg.m    = m;
        e[k++]   = dmrg_ground_state(params, cfg).report.energy;
    }
    CHECK(e[1] <= e[0] + 1e-12);
    CHECK(e[2] <= e[1] + 1e-12);
    CHECK(std::abs(e[2] - e[1]) < std::abs(e[1] - e[0]));
}

TEST_CASE("truncation is reported") {
    DmrgConfig cfg;
    cfg.m        = 4;
    const auto r = dmrg_ground_state(ModelParams(ChainLength(12), 1.0), cfg);
    CHECK(r.report.max_discarded_weight > 0.0);
    CHECK(r.report.max_discarded_weight < 1.0);
    CHECK(r.state.max_bond_dim() <= 4);
    CHECK(r.state.cum_truncation() > 0.0);
}

TEST_CASE("paper protocol runs at most three sweeps") {
    const auto cfg = DmrgConfig::paper_protocol();
    CHECK(cfg.m == 70);
    CHECK(cfg.max_sweeps == 3);
    const auto r = dmrg_ground_state(ModelParams(ChainLength(10), 0.85), cfg);
    CHECK(r.report.sweeps_run <= 3);
}

TEST_CASE("configuration validation") {
    DmrgConfig cfg;
    cfg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg            = {};
    cfg.max_sweeps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg             = {};
    cfg.energy_tol  = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(dmrg_ground_state(ModelParams(ChainLength(4), 1.0), cfg), std::invalid_argument);
}
