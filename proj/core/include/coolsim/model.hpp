// model.hpp — Physical parameters, dissipation schedules, time grid and
// state-physicality diagnostics for the optomechanical cooling simulator.
//
// Everything is expressed in units of the mechanical frequency: omega_m = 1,
// time in 1/omega_m, hbar = k_B = 1.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace coolsim {

using complexd = std::complex<double>;

// ----------------------------- bath occupation ------------------------------

struct Occupation {
    enum class Kind { Flat, BoseEinstein };

    Kind kind{Kind::Flat};
    double m_k{0.0};        // flat occupation value
    double temperature{0.0};  // Bose-Einstein temperature (units of omega_m)

    static Occupation flat(double value) { return {Kind::Flat, value, 0.0}; }
    static Occupation bose_einstein(double T) { return {Kind::BoseEinstein, 0.0, T}; }

    // mean occupation at frequency omega > 0
    double n_bar(double omega) const;
};

// ------------------------------- parameters ---------------------------------

// All model constants. delta_c is the resolved bare detuning; helpers in
// meanfield.hpp derive it from a target effective detuning when requested.
struct PhysicalParams {
    double omega_m{1.0};    // mechanical frequency, fixed to 1 (the unit)
    double delta_c{1.0};    // bare detuning
    double g0{5e-4};        // single-photon optomechanical coupling
    double drive_E{388.0};  // drive amplitude
    double eta{1e-5};       // bath coupling strength
    double omega_l{5.0};    // bath cutoff frequency
    double s_exponent{1.0};  // Ohmicity exponent (1 = Ohmic)
    Occupation occupation{Occupation::flat(100.0)};
    double n0{0.0};    // initial cavity fluctuation occupancy
    double m0{100.0};  // initial mechanical occupancy
    complexd c1{0.0, 0.0};  // initial <db^dag da>
    complexd c2{0.0, 0.0};  // initial <db da>
    complexd alpha0{100.0, 0.0};  // initial cavity mean field
    complexd beta0{100.0, 0.0};   // initial mechanical mean field
};

// ------------------------------ kappa schedule -------------------------------

// Piecewise-constant, right-continuous cavity loss rate. The first segment
// starts at t = 0; kappa(t) is the value of the last segment with
// start_time <= t.
struct KappaSchedule {
    struct Segment {
        double start_time{0.0};
        double kappa{0.05};
    };

    std::vector<Segment> segments{{0.0, 0.05}};

    static KappaSchedule constant(double kappa) { return {{{0.0, kappa}}}; }
    static KappaSchedule step(double kappa_lo, double t_switch, double kappa_hi) {
        return {{{0.0, kappa_lo}, {t_switch, kappa_hi}}};
    }

    bool equals(const KappaSchedule& other) const;
};

// t >= 0; throws std::domain_error otherwise
double kappa_at(const KappaSchedule& sched, double t);

// exact integral of kappa over [0, t]
double kappa_integral(const KappaSchedule& sched, double t);

// --------------------------------- time grid --------------------------------

// Uniform grid t_j = j*dt, j = 0..n_steps. Index-based so there is no
// accumulation drift.
struct TimeGrid {
    double dt{1e-3};
    std::size_t n_steps{1};

    std::size_t size() const { return n_steps + 1; }
    double time(std::size_t j) const { return static_cast<double>(j) * dt; }
    double t_max() const { return time(n_steps); }

    // index of a grid-aligned time; throws std::out_of_range if t is not
    // on the grid (no interpolation is provided)
    std::size_t index_of(double t, double tol = 1e-9) const;

    bool is_aligned(double t, double tol = 1e-9) const;

    static TimeGrid from_t_max(double dt, double t_max) {
        return {dt, static_cast<std::size_t>(std::llround(t_max / dt))};
    }
};

// -------------------------------- validation --------------------------------

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

// Report-style invariant check; empty violation list means runnable.
// Warnings flag grid resolution risks (dt * omega_l > 0.1, or dt times the
// expected peak |Delta_c'| > 0.1).
ValidationReport validate_params(const PhysicalParams& p, const KappaSchedule& sched,
                                 const TimeGrid& grid);

// ------------------------------- physicality ---------------------------------

// Checks that (n0, m0, c1, c2) can belong to a legal two-mode Gaussian state:
// Cauchy-Schwarz bounds on the cross moments plus the uncertainty condition
// sigma + (i/2) Omega >= 0 on the covariance matrix assembled with all other
// second moments zero. Failure does not block a simulation (the moment
// dynamics stay well defined); callers surface it as a warning.
struct PhysicalityReport {
    bool cs_c1_ok{true};          // |c1|^2 <= n0*m0
    bool cs_c2_ok{true};          // |c2|^2 <= min((n0+1)*m0, n0*(m0+1))
    bool uncertainty_ok{true};    // sigma + (i/2) Omega positive semidefinite
    double cs_c1_margin{0.0};     // n0*m0 - |c1|^2
    double cs_c2_margin{0.0};     // min bound - |c2|^2
    double min_eigenvalue{0.0};   // smallest eigenvalue of sigma + (i/2) Omega

    bool all_ok() const { return cs_c1_ok && cs_c2_ok && uncertainty_ok; }
};

PhysicalityReport gaussian_physicality(double n0, double m0, complexd c1, complexd c2);

}  // namespace coolsim
