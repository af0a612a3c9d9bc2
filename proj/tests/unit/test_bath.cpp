#include <doctest.h>

#include <cmath>
#include <random>

#include "coolsim/bath.hpp"
#include "coolsim/quadrature.hpp"

using namespace coolsim;

namespace {

const SpectralDensity kFig2{1e-5, 5.0, 1.0};

}  // namespace

TEST_CASE("spectral density: closed values") {
    CHECK(kFig2(0.0) == 0.0);
    // eta * w * e^{-w/w_l} at w = w_l: 1e-5 * 5 * e^-1
    CHECK(kFig2(5.0) == doctest::Approx(1.8393972058572117e-05).epsilon(1e-14));
    const SpectralDensity super{1.0, 1.0, 2.0};
    CHECK(super(2.0) == doctest::Approx(0.5413411329464508).epsilon(1e-14));
    CHECK_THROWS_AS(kFig2(-1.0), std::domain_error);
}

TEST_CASE("spectral density total weight: eta w_l^2 Gamma(s+1)") {
    CHECK(kFig2.total_weight() == doctest::Approx(2.5e-4).epsilon(1e-14));
    QuadratureOptions opts;  // cross-check by quadrature
    const auto r = integrate_adaptive([&](double w) { return kFig2(w); }, 0.0,
                                      kFig2.quadrature_omega_max());
    CHECK(r.value == doctest::Approx(kFig2.total_weight()).epsilon(1e-10));
}

TEST_CASE("memory kernel: zero at t = 0 and purely imaginary closed form") {
    CHECK(std::abs(memory_kernel(kFig2, 0.0)) == 0.0);
    // s = 1 closed form 4 eta w_l^3 t / (1 + w_l^2 t^2)^2 at t = 1
    const complexd f1 = memory_kernel(kFig2, 1.0);
    CHECK(f1.real() == 0.0);
    CHECK(f1.imag() == doctest::Approx(7.396449704142012e-06).epsilon(1e-12));
    CHECK_THROWS_AS(memory_kernel(kFig2, -0.5), std::domain_error);
}

TEST_CASE("memory kernel: closed form vs adaptive quadrature, s in {0.5, 1, 2}") {
    // sample times chosen away from the zeros of sin((s+1) atan(w_l t))
    const double times[] = {0.05, 0.2, 0.7, 1.3, 3.7, 10.0, 31.0, 100.0};
    for (double s : {0.5, 1.0, 2.0}) {
        const SpectralDensity sd{1e-5, 5.0, s};
        for (double t : times) {
            const double closed = memory_kernel_imag(sd, t);
            const complexd quad = memory_kernel_quadrature(sd, t, 1e-13);
            CHECK(std::abs(quad.real()) <= 1e-20);
            CHECK(quad.imag() ==
                  doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("memory kernel quadrature real part vanishes on sampled times") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(0.0, 20.0);
    for (int i = 0; i < 25; ++i) {
        const double t = dist(rng);
        const complexd f = memory_kernel_quadrature(kFig2, t, 1e-11);
        CHECK(std::abs(f.real()) <= 1e-14 * (std::abs(f.imag()) + 1e-12));
    }
}

TEST_CASE("thermal kernel: equal times, flat occupation") {
    // integral J (1 + 2 m_k) = eta w_l^2 Gamma(s+1) (1 + 2 m_k) = 0.05025
    const complexd v = thermal_kernel_flat(kFig2, 100.0, 0.0);
    CHECK(v.real() == doctest::Approx(0.05025).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0));
    const complexd q = thermal_kernel(kFig2, Occupation::flat(100.0), 3.0, 3.0, 1e-12);
    CHECK(q.real() == doctest::Approx(0.05025).epsilon(1e-9));
}

TEST_CASE("thermal kernel: Hermitian in the time difference") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 8.0);
    const Occupation occ = Occupation::flat(100.0);
    for (int i = 0; i < 8; ++i) {
        const double t1 = dist(rng), t2 = dist(rng);
        const complexd a = thermal_kernel(kFig2, occ, t1, t2, 1e-11);
        const complexd b = thermal_kernel(kFig2, occ, t2, t1, 1e-11);
        CHECK(b.real() == doctest::Approx(a.real()).epsilon(1e-8));
        CHECK(b.imag() == doctest::Approx(-a.imag()).epsilon(1e-8));
    }
}

TEST_CASE("thermal kernel: translation invariance (stationarity)") {
    const Occupation occ = Occupation::flat(7.0);
    const complexd a = thermal_kernel(kFig2, occ, 4.0, 1.5, 1e-11);
    const complexd b = thermal_kernel(kFig2, occ, 6.5, 4.0, 1e-11);
    CHECK(b.real() == doctest::Approx(a.real()).epsilon(1e-8));
    CHECK(b.imag() == doctest::Approx(a.imag()).epsilon(1e-8));
}

TEST_CASE("thermal kernel ties to the memory kernel at zero occupation") {
    // Im integral J e^{-iwt} = -Im f(t)/2
    for (double t : {0.3, 1.0, 2.5}) {
        const complexd q = thermal_kernel(kFig2, Occupation::flat(0.0), t, 0.0, 1e-12);
        CHECK(q.imag() == doctest::Approx(-0.5 * memory_kernel_imag(kFig2, t))
                              .epsilon(1e-8));
        const complexd cf = vacuum_kernel(kFig2, t);
        CHECK(q.real() == doctest::Approx(cf.real()).epsilon(1e-9));
        CHECK(q.imag() == doctest::Approx(cf.imag()).epsilon(1e-9));
    }
}

TEST_CASE("thermal kernel: flat closed form vs quadrature off the diagonal") {
    const Occupation occ = Occupation::flat(100.0);
    for (double d : {0.1, 0.8, 2.0, 5.0}) {
        const complexd closed = thermal_kernel_flat(kFig2, 100.0, d);
        const complexd quad = thermal_kernel(kFig2, occ, d, 0.0, 1e-12);
        CHECK(quad.real() == doctest::Approx(closed.real()).epsilon(1e-8));
        CHECK(quad.imag() == doctest::Approx(closed.imag()).epsilon(1e-8));
    }
}

TEST_CASE("thermal kernel: Bose-Einstein series vs quadrature") {
    const Occupation occ = Occupation::bose_einstein(20.0);
    for (double d : {0.0, 0.4, 1.7, 6.0}) {
        const complexd series = thermal_kernel_bose(kFig2, 20.0, d);
        const complexd quad = thermal_kernel(kFig2, occ, d, 0.0, 1e-12);
        CHECK(series.real() == doctest::Approx(quad.real()).epsilon(1e-7));
        CHECK(series.imag() == doctest::Approx(quad.imag()).epsilon(1e-7));
    }
}

TEST_CASE("kernel table: invariants on the difference grid") {
    const TimeGrid grid{1e-2, 500};
    const KernelTable table = KernelTable::build(kFig2, Occupation::flat(100.0), grid);
    CHECK(table.f_imag(0) == 0.0);
    for (std::size_t d = 0; d < grid.size(); d += 37)
        CHECK(table.f(d).real() == 0.0);
    // f_th(-d) = conj(f_th(d))
    const complexd plus = table.f_th(11);
    const complexd minus = table.f_th(-11);
    CHECK(minus.real() == plus.real());
    CHECK(minus.imag() == -plus.imag());
    // table matches the single-evaluation op
    const complexd direct = thermal_kernel(kFig2, Occupation::flat(100.0),
                                           grid.time(11), 0.0, 1e-12);
    CHECK(plus.real() == doctest::Approx(direct.real()).epsilon(1e-8));
    CHECK(plus.imag() == doctest::Approx(direct.imag()).epsilon(1e-8));
}
