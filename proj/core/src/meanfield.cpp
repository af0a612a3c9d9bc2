// meanfield.cpp — predictor-corrector Volterra integration of the mean field

#include "coolsim/meanfield.hpp"

#include <cmath>

namespace coolsim {

namespace {

// trapezoid weight for node k on [0, t_j]
inline double trap_w(std::size_t k, std::size_t j, double dt) {
    return (k == 0 || k == j) ? 0.5 * dt : dt;
}

struct SegmentedKappa {
    const KappaSchedule& sched;
    const TimeGrid& grid;

    // step j (from t_j to t_{j+1}) lies fully inside one segment because
    // switch times are grid-aligned; kappa is the right-continuous value at t_j
    double at_step(std::size_t j) const { return kappa_at(sched, grid.time(j)); }
};

}  // namespace

MeanFieldTrajectory solve_meanfield(const PhysicalParams& p, const KappaSchedule& sched,
                                    const TimeGrid& grid, const MeanFieldOptions& opts) {
    const std::size_t n = grid.size();
    const double dt = grid.dt;
    const complexd I(0.0, 1.0);

    MeanFieldTrajectory traj;
    traj.grid = grid;
    traj.schedule = sched;
    traj.omega_m = p.omega_m;
    traj.g0 = p.g0;
    traj.delta_c = p.delta_c;
    traj.alpha.resize(n);
    traj.beta.resize(n);

    const SpectralDensity sd = SpectralDensity::from_params(p);
    std::vector<double> phi;  // Im f on the difference grid
    const bool with_bath = p.eta != 0.0;
    if (with_bath) {
        phi.resize(n);
        for (std::size_t d = 0; d < n; ++d) phi[d] = memory_kernel_imag(sd, grid.time(d));
    }

    std::vector<double> bsum(n);  // beta + conj(beta), real
    traj.alpha[0] = p.alpha0;
    traj.beta[0] = p.beta0;
    bsum[0] = 2.0 * std::real(p.beta0);

    const SegmentedKappa kap{sched, grid};

    // memory integral at the current node, reused across the step
    double conv = 0.0;  // Im part of the integral (the kernel is i*phi)

    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double kappa = kap.at_step(j);
        const complexd a = traj.alpha[j];
        const complexd b = traj.beta[j];

        const complexd ra = -(I * p.delta_c + 0.5 * kappa) * a + I * p.g0 * a * bsum[j] +
                            p.drive_E;
        const complexd rb = -I * p.omega_m * b + I * p.g0 * std::norm(a) + I * conv;

        // memory integral at t_{j+1}; the new endpoint enters with f(0) = 0 so
        // only known history contributes
        double conv1 = 0.0;
        if (with_bath) {
            for (std::size_t k = 0; k <= j; ++k)
                conv1 += trap_w(k, j + 1, dt) * phi[j + 1 - k] * bsum[k];
        }

        // Euler predictor, then iterate the trapezoid corrector
        complexd a1 = a + dt * ra;
        complexd b1 = b + dt * rb;
        for (int it = 0; it < opts.max_corrector_iters; ++it) {
            const complexd ra1 = -(I * p.delta_c + 0.5 * kappa) * a1 +
                                 I * p.g0 * a1 * (2.0 * std::real(b1)) +
                                 p.drive_E;
            const complexd rb1 =
                -I * p.omega_m * b1 + I * p.g0 * std::norm(a1) + I * conv1;
            const complexd a_next = a + 0.5 * dt * (ra + ra1);
            const complexd b_next = b + 0.5 * dt * (rb + rb1);
            const double delta = std::abs(a_next - a1) + std::abs(b_next - b1);
            a1 = a_next;
            b1 = b_next;
            if (delta < opts.corrector_tol * (1.0 + std::abs(a1) + std::abs(b1))) break;
        }

        if (!std::isfinite(std::real(a1)) || !std::isfinite(std::imag(a1)) ||
            !std::isfinite(std::real(b1)) || !std::isfinite(std::imag(b1)))
            throw DivergenceError("solve_meanfield: non-finite value", j + 1);

        traj.alpha[j + 1] = a1;
        traj.beta[j + 1] = b1;
        bsum[j + 1] = 2.0 * std::real(b1);
        conv = conv1;
    }

    // derived series
    traj.G.resize(n);
    traj.delta_eff.resize(n);
    traj.P.resize(n);
    traj.kappa_cum.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        traj.G[j] = p.g0 * traj.alpha[j];
        traj.delta_eff[j] = p.delta_c - p.g0 * bsum[j];
        traj.kappa_cum[j] = kappa_integral(sched, grid.time(j));
    }
    traj.P[0] = complexd(0.0, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double im = 0.5 * dt * (traj.delta_eff[j] + traj.delta_eff[j + 1]);
        traj.P[j + 1] = traj.P[j] + complexd(0.0, im);
    }
    for (std::size_t j = 0; j < n; ++j) traj.P[j] += 0.5 * traj.kappa_cum[j];

    return traj;
}

complexd phase_u(const MeanFieldTrajectory& traj, double t1, double t2) {
    return traj.u(traj.grid.index_of(t1), traj.grid.index_of(t2));
}

complexd phase_u1_index(const MeanFieldTrajectory& traj, std::size_t i) {
    return -traj.P[i] - complexd(0.0, traj.omega_m * traj.grid.time(i));
}

complexd phase_u2_index(const MeanFieldTrajectory& traj, std::size_t i) {
    return -traj.P[i] + complexd(0.0, traj.omega_m * traj.grid.time(i));
}

complexd phase_u1(const MeanFieldTrajectory& traj, double t) {
    return phase_u1_index(traj, traj.grid.index_of(t));
}

complexd phase_u2(const MeanFieldTrajectory& traj, double t) {
    return phase_u2_index(traj, traj.grid.index_of(t));
}

double meanfield_residual(const MeanFieldTrajectory& traj, const PhysicalParams& p) {
    const TimeGrid& grid = traj.grid;
    const std::size_t n = grid.size();
    const double dt = grid.dt;
    const complexd I(0.0, 1.0);
    const SpectralDensity sd = SpectralDensity::from_params(p);
    const bool with_bath = p.eta != 0.0;

    std::vector<double> phi;
    if (with_bath) {
        phi.resize(n);
        for (std::size_t d = 0; d < n; ++d) phi[d] = memory_kernel_imag(sd, grid.time(d));
    }
    std::vector<double> bsum(n);
    for (std::size_t j = 0; j < n; ++j) bsum[j] = 2.0 * std::real(traj.beta[j]);

    auto rhs = [&](std::size_t j, double kappa, complexd& ra, complexd& rb) {
        double conv = 0.0;
        if (with_bath)
            for (std::size_t k = 0; k <= j; ++k)
                conv += trap_w(k, j, dt) * phi[j - k] * bsum[k];
        ra = -(I * p.delta_c + 0.5 * kappa) * traj.alpha[j] +
             I * p.g0 * traj.alpha[j] * bsum[j] + p.drive_E;
        rb = -I * p.omega_m * traj.beta[j] + I * p.g0 * std::norm(traj.alpha[j]) +
             I * conv;
    };

    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double kappa = kappa_at(traj.schedule, grid.time(j));
        complexd ra0, rb0, ra1, rb1;
        rhs(j, kappa, ra0, rb0);
        rhs(j + 1, kappa, ra1, rb1);
        const complexd res_a =
            (traj.alpha[j + 1] - traj.alpha[j]) / dt - 0.5 * (ra0 + ra1);
        const complexd res_b = (traj.beta[j + 1] - traj.beta[j]) / dt - 0.5 * (rb0 + rb1);
        worst = std::max({worst, std::abs(res_a), std::abs(res_b)});
    }
    return worst;
}

MeanFieldSteadyState meanfield_steady_state(const PhysicalParams& p, double kappa0) {
    const complexd I(0.0, 1.0);
    const double bath_shift =
        4.0 * p.eta * p.omega_l * std::tgamma(std::max(p.s_exponent, 1e-12));
    double b = std::real(p.beta0);
    for (int it = 0; it < 10000; ++it) {
        const complexd a = p.drive_E / (I * (p.delta_c - 2.0 * p.g0 * b) + 0.5 * kappa0);
        const double b_new = p.g0 * std::norm(a) / (p.omega_m - bath_shift);
        const double next = 0.5 * (b + b_new);
        if (std::abs(next - b) < 1e-12 * (1.0 + std::abs(next))) {
            b = next;
            break;
        }
        b = next;
    }
    MeanFieldSteadyState ss;
    ss.beta_ss = b;
    ss.delta_eff_ss = p.delta_c - 2.0 * p.g0 * b;
    ss.alpha_ss = p.drive_E / (I * ss.delta_eff_ss + 0.5 * kappa0);
    return ss;
}

MeanFieldTrajectory build_envelope_trajectory(const PhysicalParams& p,
                                              const KappaSchedule& sched,
                                              const TimeGrid& grid,
                                              double delta_eff_target) {
    MeanFieldTrajectory traj;
    traj.grid = grid;
    traj.schedule = sched;
    traj.omega_m = p.omega_m;
    traj.g0 = p.g0;
    traj.delta_c = p.delta_c;

    const std::size_t n = grid.size();
    traj.alpha.resize(n);
    traj.beta.resize(n);
    traj.G.resize(n);
    traj.delta_eff.resize(n);
    traj.P.resize(n);
    traj.kappa_cum.resize(n);

    const complexd I(0.0, 1.0);
    const double beta_bar = p.g0 != 0.0
                                ? (p.delta_c - delta_eff_target) / (2.0 * p.g0)
                                : 0.0;

    // per-segment complex relaxation of alpha toward the driven response
    // E / (i delta_eff + kappa/2) at rate kappa/2; the start value sits on
    // the initial response ray with the configured magnitude
    const double kappa_first = sched.segments.front().kappa;
    const complexd pole0(0.5 * kappa_first, delta_eff_target);
    complexd alpha = p.drive_E / pole0;
    if (std::abs(alpha) > 0.0) alpha *= std::abs(p.alpha0) / std::abs(alpha);

    std::size_t seg = 0;
    double kappa_seg = kappa_first;
    complexd target = p.drive_E / pole0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = grid.time(j);
        while (seg + 1 < sched.segments.size() &&
               sched.segments[seg + 1].start_time <= t) {
            ++seg;
            kappa_seg = sched.segments[seg].kappa;
            target = p.drive_E / complexd(0.5 * kappa_seg, delta_eff_target);
        }
        traj.alpha[j] = alpha;
        traj.beta[j] = beta_bar;
        traj.G[j] = p.g0 * alpha;
        traj.delta_eff[j] = delta_eff_target;
        traj.kappa_cum[j] = kappa_integral(sched, t);
        alpha = target + (alpha - target) * std::exp(-0.5 * kappa_seg * grid.dt);
    }

    traj.P[0] = complexd(0.0, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j)
        traj.P[j + 1] =
            traj.P[j] + complexd(0.0, 0.5 * grid.dt * (traj.delta_eff[j] +
                                                       traj.delta_eff[j + 1]));
    for (std::size_t j = 0; j < n; ++j) traj.P[j] += 0.5 * traj.kappa_cum[j];
    return traj;
}

double delta_c_for_target(double delta_eff_target, const PhysicalParams& p,
                          double kappa0) {
    const complexd I(0.0, 1.0);
    const double bath_shift =
        4.0 * p.eta * p.omega_l * std::tgamma(std::max(p.s_exponent, 1e-12));
    const complexd a = p.drive_E / (I * delta_eff_target + 0.5 * kappa0);
    const double b = p.g0 * std::norm(a) / (p.omega_m - bath_shift);
    return delta_eff_target + 2.0 * p.g0 * b;
}

}  // namespace coolsim
