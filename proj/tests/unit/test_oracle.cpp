#include <doctest.h>

#include <cmath>

#include "coolsim/oracle.hpp"

using namespace coolsim;

namespace {

const SpectralDensity kFig2{1e-5, 5.0, 1.0};

PhysicalParams fig_defaults() {
    PhysicalParams p;
    p.delta_c = delta_c_for_target(1.0, p, 0.05);
    return p;
}

// trajectory with zero coupling so the fluctuation layer decouples
MeanFieldTrajectory decoupled_traj(double delta_eff, double kappa,
                                   const TimeGrid& grid) {
    PhysicalParams p;
    p.g0 = 0.0;
    p.delta_c = delta_eff;
    return build_envelope_trajectory(p, KappaSchedule::constant(kappa), grid, delta_eff);
}

}  // namespace

TEST_CASE("discretize_bath: midpoint rule basics") {
    const DiscretizedBath bath = discretize_bath(kFig2, 2.0, 1);
    REQUIRE(bath.K == 1);
    CHECK(bath.omegas[0] == doctest::Approx(1.0));
    CHECK(bath.couplings[0] * bath.couplings[0] ==
          doctest::Approx(kFig2(1.0) * 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(discretize_bath(kFig2, -1.0, 4), std::invalid_argument);
}

TEST_CASE("discretize_bath: coupling weight matches the spectral weight") {
    const DiscretizedBath bath = discretize_bath(kFig2, 200.0, 600);
    CHECK(bath.coupling_weight() ==
          doctest::Approx(kFig2.total_weight()).epsilon(1e-3));
    CHECK(bath.recurrence_time() == doctest::Approx(2.0 * M_PI * 600.0 / 200.0));
}

TEST_CASE("discrete kernel reconstruction converges as K grows") {
    // rel L2 error over [0, 70] at fixed omega_max; K chosen so the first
    // revival (t ~ 2 pi K / omega_max) stays outside the window, where the
    // midpoint error is in its smooth O(dw^2) regime
    auto rel_l2 = [&](std::size_t K) {
        const DiscretizedBath bath = discretize_bath(kFig2, 200.0, K);
        double num = 0.0, den = 0.0;
        for (double t = 0.0; t <= 70.0; t += 0.05) {
            const double exact = memory_kernel_imag(kFig2, t);
            const double disc = discretized_memory_kernel(bath, t).imag();
            num += (disc - exact) * (disc - exact);
            den += exact * exact;
        }
        return std::sqrt(num / den);
    };
    const double e1 = rel_l2(2400);
    const double e2 = rel_l2(4800);
    CHECK(e1 / e2 >= 2.0);
    CHECK(e2 < 1e-3);
}

TEST_CASE("free evolution preserves all occupancies") {
    PhysicalParams p = fig_defaults();
    p.g0 = 0.0;
    p.eta = 0.0;
    p.c1 = complexd(5.0, 0.0);
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 10.0);
    const MeanFieldTrajectory traj = decoupled_traj(1.0, 0.05, grid);
    const DiscretizedBath bath = discretize_bath({0.0, 5.0, 1.0}, 25.0, 8);  // V = 0
    const OracleRun run = evolve_moments(p, KappaSchedule::constant(0.05), bath, traj,
                                         2, {});
    for (double nb : run.Nb) CHECK(nb == doctest::Approx(100.0).epsilon(1e-12));
    for (double r : run.hermiticity_residual) CHECK(r < 1e-12);
}

TEST_CASE("decoupled cross correlation decays with the closed form") {
    // G = 0, V = 0: <da db>(t) = c2 exp(-(i(delta + w_m) + kappa/2) t)
    PhysicalParams p = fig_defaults();
    p.g0 = 0.0;
    p.eta = 0.0;
    p.c2 = complexd(3.0, -1.0);
    const double kappa = 0.05;
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 10.0);
    const MeanFieldTrajectory traj = decoupled_traj(1.0, kappa, grid);
    const DiscretizedBath bath = discretize_bath({0.0, 5.0, 1.0}, 25.0, 4);
    const OracleRun run = evolve_moments(p, KappaSchedule::constant(kappa), bath, traj,
                                         2, {});
    for (std::size_t i = 0; i < run.times.size(); i += 4) {
        const double t = run.times[i];
        const complexd expected =
            p.c2 * std::exp(complexd(-0.5 * kappa, -(1.0 + 1.0)) * t);
        CHECK(std::abs(run.corr_ab[i] - expected) < 1e-7 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("initial extraction: N_b = m0 and <da^dag db> = conj(c1)") {
    PhysicalParams p = fig_defaults();
    p.c1 = complexd(7.0, 2.0);
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 1.0);
    const MeanFieldTrajectory traj = decoupled_traj(1.0, 0.05, grid);
    const DiscretizedBath bath = discretize_bath(kFig2, 25.0, 16);
    OracleOptions opts;
    opts.snapshot_times = {0.0};
    const OracleRun run = evolve_moments(p, KappaSchedule::constant(0.05), bath, traj,
                                         2, opts);
    CHECK(run.Nb.front() == doctest::Approx(100.0));
    CHECK(std::abs(run.corr_adag_b.front() - std::conj(p.c1)) < 1e-14);

    REQUIRE(run.snapshots.size() == 1);
    const PhononSeries nb = extract_Nb(run.snapshots);
    CHECK(nb.Nb.front() == doctest::Approx(100.0));
    const auto ab = extract_correlations(run.snapshots, OracleCorrelation::ADagB);
    CHECK(std::abs(ab.front() - std::conj(p.c1)) < 1e-14);
    CHECK_THROWS_AS(extract_Nb({}), std::invalid_argument);
}

TEST_CASE("weak bath keeps a decoupled thermal oscillator near m0") {
    PhysicalParams p = fig_defaults();
    p.g0 = 0.0;  // G = 0, bath on, m_k = m0
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 20.0);
    const MeanFieldTrajectory traj = decoupled_traj(1.0, 0.05, grid);
    const DiscretizedBath bath = discretize_bath(kFig2, 25.0, 64);
    const OracleRun run = evolve_moments(p, KappaSchedule::constant(0.05), bath, traj,
                                         2, {});
    for (double nb : run.Nb) {
        CHECK(nb > 100.0 * (1.0 - 0.01));
        CHECK(nb < 100.0 * (1.0 + 0.01));
    }
}

TEST_CASE("Gaussian positivity holds along a physical evolution") {
    PhysicalParams p = fig_defaults();
    p.c1 = complexd(0.0, 0.0);  // physical initial data
    const KappaSchedule sched = KappaSchedule::constant(0.05);
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 8.0);
    const MeanFieldTrajectory traj = build_envelope_trajectory(p, sched, grid, 1.0);
    const DiscretizedBath bath = discretize_bath(kFig2, 25.0, 24);
    OracleOptions opts;
    for (int i = 0; i < 10; ++i) opts.snapshot_times.push_back(0.8 * i);
    const OracleRun run = evolve_moments(p, sched, bath, traj, 2, opts);
    REQUIRE(run.snapshots.size() == 10);
    for (const MomentState& st : run.snapshots)
        CHECK(min_symplectic_eigenvalue(st) >= -1e-8);
}

TEST_CASE("oracle without bath matches solve_ML exactly") {
    // eta = 0 removes the discretization error entirely: the oracle and the
    // kernel-path fundamental solution solve the same closed model
    PhysicalParams p = fig_defaults();
    p.eta = 0.0;
    const KappaSchedule sched = KappaSchedule::constant(0.05);
    const TimeGrid grid = TimeGrid::from_t_max(2.5e-3, 15.0);
    const MeanFieldTrajectory traj = build_envelope_trajectory(p, sched, grid, 1.0);
    const DiscretizedBath bath = discretize_bath({0.0, 5.0, 1.0}, 25.0, 2);

    const KernelTable table = KernelTable::build({0.0, 5.0, 1.0}, p.occupation, grid,
                                                 false);
    const PropagatorPair pair = solve_ML(traj, table);
    const OracleFundamental fund = oracle_fundamental(sched, bath, traj, 2, 20);

    double worst = 0.0;
    for (std::size_t i = 0; i < fund.times.size(); ++i) {
        const std::size_t j = grid.index_of(fund.times[i]);
        worst = std::max(worst, std::abs(pair.M[j] - fund.M[i]));
        worst = std::max(worst, std::abs(pair.L[j] - fund.L[i]));
    }
    CHECK(worst < 5e-4);  // trapezoid vs RK4 discretization difference
}

TEST_CASE("variant fast path matches a direct correlated evolution") {
    PhysicalParams p = fig_defaults();
    p.c1 = complexd(40.0, 5.0);
    p.c2 = complexd(-10.0, 2.0);
    const KappaSchedule sched = KappaSchedule::constant(0.05);
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 10.0);
    const MeanFieldTrajectory traj = build_envelope_trajectory(p, sched, grid, 1.0);
    const DiscretizedBath bath = discretize_bath(kFig2, 25.0, 32);

    OracleOptions opts;
    opts.output_stride = 50;
    const OracleRun direct = evolve_moments(p, sched, bath, traj, 2, opts);
    const auto variants =
        oracle_nb_variants(p, sched, bath, traj, 2, {{p.c1, p.c2}}, opts);
    REQUIRE(variants.size() == 1);
    REQUIRE(variants[0].size() == direct.Nb.size());
    for (std::size_t i = 0; i < direct.Nb.size(); ++i)
        CHECK(variants[0][i] ==
              doctest::Approx(direct.Nb[i]).epsilon(1e-8).scale(1.0 + std::abs(direct.Nb[i])));
}

TEST_CASE("oracle rejects invalid strides") {
    const PhysicalParams p = fig_defaults();
    const TimeGrid grid = TimeGrid::from_t_max(5e-3, 1.0);
    const MeanFieldTrajectory traj = decoupled_traj(1.0, 0.05, grid);
    const DiscretizedBath bath = discretize_bath(kFig2, 25.0, 4);
    CHECK_THROWS_AS(
        evolve_moments(p, KappaSchedule::constant(0.05), bath, traj, 3, {}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        evolve_moments(p, KappaSchedule::constant(0.05), bath, traj, 1, {}),
        std::invalid_argument);
}
