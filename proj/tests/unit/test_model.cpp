#include <doctest.h>

#include <random>

#include "coolsim/model.hpp"

using namespace coolsim;

namespace {

PhysicalParams fig2_defaults() {
    PhysicalParams p;  // defaults are the published operating point
    p.delta_c = 1.075;  // close to the resolved sideband value; exact value immaterial here
    return p;
}

}  // namespace

TEST_CASE("validate_params accepts the default operating point") {
    const PhysicalParams p = fig2_defaults();
    const KappaSchedule sched = KappaSchedule::constant(0.05);
    const TimeGrid grid{1e-3, 30000};
    const ValidationReport rep = validate_params(p, sched, grid);
    CHECK(rep.ok());
}

TEST_CASE("validate_params flags sign violations") {
    PhysicalParams p = fig2_defaults();
    p.eta = -1.0;
    const ValidationReport rep =
        validate_params(p, KappaSchedule::constant(0.05), TimeGrid{1e-3, 1000});
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("eta") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_params flags a degenerate grid") {
    const ValidationReport rep = validate_params(
        fig2_defaults(), KappaSchedule::constant(0.05), TimeGrid{0.0, 1000});
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("dt") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_params warns when the grid under-resolves the kernels") {
    const PhysicalParams p = fig2_defaults();
    const ValidationReport rep = validate_params(
        p, KappaSchedule::constant(0.05), TimeGrid{0.05, 1000});
    CHECK(rep.ok());  // resolution issues warn, they do not block
    CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("validate_params rejects misaligned switch times") {
    const PhysicalParams p = fig2_defaults();
    const KappaSchedule sched = KappaSchedule::step(0.05, 17.1507, 1.0);
    const ValidationReport rep = validate_params(p, sched, TimeGrid{1e-2, 3000});
    CHECK_FALSE(rep.ok());
}

TEST_CASE("kappa_at: piecewise-constant, right-continuous") {
    const KappaSchedule single = KappaSchedule::constant(0.05);
    CHECK(kappa_at(single, 10.0) == doctest::Approx(0.05));

    const KappaSchedule sw = KappaSchedule::step(0.05, 17.15, 1.0);
    CHECK(kappa_at(sw, 17.15) == doctest::Approx(1.0));   // right-continuous
    CHECK(kappa_at(sw, 17.1499) == doctest::Approx(0.05));
    CHECK_THROWS_AS(kappa_at(sw, -1.0), std::domain_error);
}

TEST_CASE("kappa_at agrees with a brute-force segment scan") {
    const KappaSchedule sched{{{0.0, 0.05}, {3.5, 0.7}, {10.25, 0.0}, {40.0, 1.0}}};
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 80.0);
    for (int i = 0; i < 10000; ++i) {
        const double t = dist(rng);
        double expected = sched.segments.front().kappa;
        for (const auto& seg : sched.segments)
            if (seg.start_time <= t) expected = seg.kappa;
        CHECK(kappa_at(sched, t) == expected);
    }
}

TEST_CASE("kappa_integral matches piecewise sums") {
    const KappaSchedule sw = KappaSchedule::step(0.05, 10.0, 1.0);
    CHECK(kappa_integral(sw, 5.0) == doctest::Approx(0.25));
    CHECK(kappa_integral(sw, 10.0) == doctest::Approx(0.5));
    CHECK(kappa_integral(sw, 12.0) == doctest::Approx(0.5 + 2.0));
}

TEST_CASE("TimeGrid is index-based and rejects off-grid times") {
    const TimeGrid grid{1e-3, 100000};
    CHECK(grid.time(17150) == doctest::Approx(17.15).epsilon(1e-15));
    CHECK(grid.index_of(17.15) == 17150);
    CHECK(grid.is_aligned(42.0));
    CHECK_FALSE(grid.is_aligned(42.00042));
    CHECK_THROWS_AS(grid.index_of(42.00042), std::out_of_range);
}

TEST_CASE("gaussian_physicality: uncorrelated thermal x vacuum passes") {
    const PhysicalityReport rep = gaussian_physicality(0.0, 100.0, 0.0, 0.0);
    CHECK(rep.all_ok());
}

TEST_CASE("gaussian_physicality: c1 = 100 with n0 = 0 violates Cauchy-Schwarz") {
    // the published operating point for the fastest cooling run; flagged but
    // allowed (moment dynamics stay linear)
    const PhysicalityReport rep = gaussian_physicality(0.0, 100.0, 100.0, 0.0);
    CHECK_FALSE(rep.cs_c1_ok);
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("gaussian_physicality: moderate correlation passes Cauchy-Schwarz") {
    const PhysicalityReport rep = gaussian_physicality(100.0, 100.0, 50.0, 0.0);
    CHECK(rep.cs_c1_ok);  // 2500 <= 10^4
    CHECK(rep.cs_c2_ok);
}

TEST_CASE("gaussian_physicality is invariant under joint phase rotation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.0, 30.0);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    for (int trial = 0; trial < 50; ++trial) {
        const double n0 = mag(rng), m0 = mag(rng);
        const complexd c1 = std::polar(mag(rng), ang(rng));
        const complexd c2 = std::polar(mag(rng), ang(rng));
        const PhysicalityReport base = gaussian_physicality(n0, m0, c1, c2);
        const double theta = ang(rng);
        const complexd rot = std::polar(1.0, theta);
        const PhysicalityReport rotated = gaussian_physicality(n0, m0, c1 * rot, c2 * rot);
        CHECK(base.cs_c1_ok == rotated.cs_c1_ok);
        CHECK(base.cs_c2_ok == rotated.cs_c2_ok);
        CHECK(rotated.min_eigenvalue ==
              doctest::Approx(base.min_eigenvalue).epsilon(1e-9).scale(1.0 + n0 + m0));
    }
}

TEST_CASE("occupation: flat and Bose-Einstein") {
    const Occupation flat = Occupation::flat(100.0);
    CHECK(flat.n_bar(3.0) == 100.0);
    const Occupation be = Occupation::bose_einstein(2.0);
    CHECK(be.n_bar(1.0) == doctest::Approx(1.0 / std::expm1(0.5)));
    CHECK(be.n_bar(50.0) < 2e-11);
}
