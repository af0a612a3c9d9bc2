// propagator.cpp — solves the coupled Volterra system for (M, L)

#include "coolsim/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace coolsim {

namespace {

inline double trap_w(std::size_t k, std::size_t j, double dt) {
    return (k == 0 || k == j) ? 0.5 * dt : dt;
}

// tables for the fast kernel evaluation
//   F(t_j, tau_k) = i * (phi[j-k] - 2 Im(c_j X_k))
// with c_j = conj(G_j) e^{-P_j} and X_k = G_k e^{P_k}
struct FTables {
    std::vector<complexd> c;
    std::vector<complexd> X;
    bool with_g{false};

    explicit FTables(const MeanFieldTrajectory& traj) {
        const std::size_t n = traj.grid.size();
        c.resize(n);
        X.resize(n);
        double gmax = 0.0;
        for (std::size_t j = 0; j < n; ++j) gmax = std::max(gmax, std::abs(traj.G[j]));
        with_g = gmax > 0.0;
        if (!with_g) return;
        if (traj.kappa_cum.back() > 1200.0)
            throw std::overflow_error(
                "solve_ML: integral of kappa too large for the phase tables");
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = std::conj(traj.G[j]) * std::exp(-traj.P[j]);
            X[j] = traj.G[j] * std::exp(traj.P[j]);
        }
    }

    inline double g(const std::vector<double>& phi, std::size_t j, std::size_t k) const {
        double v = phi.empty() ? 0.0 : phi[j - k];
        if (with_g) {
            const complexd& cj = c[j];
            const complexd& xk = X[k];
            v -= 2.0 * (cj.real() * xk.imag() + cj.imag() * xk.real());
        }
        return v;
    }
};

}  // namespace

complexd F_kernel(const MeanFieldTrajectory& traj, const KernelTable& table,
                  std::size_t i_t, std::size_t i_tau) {
    if (i_tau > i_t) throw std::domain_error("F_kernel: tau must be <= t");
    const complexd f = table.f(i_t - i_tau);
    const complexd eu = std::exp(traj.u(i_t, i_tau));
    const complexd cross = std::conj(traj.G[i_t]) * traj.G[i_tau] * eu;
    return f - (cross - std::conj(cross));
}

complexd F_kernel(const MeanFieldTrajectory& traj, const SpectralDensity& sd, double t,
                  double tau) {
    const std::size_t i_t = traj.grid.index_of(t);
    const std::size_t i_tau = traj.grid.index_of(tau);
    if (i_tau > i_t) throw std::domain_error("F_kernel: tau must be <= t");
    const complexd f = memory_kernel(sd, t - tau);
    const complexd eu = std::exp(traj.u(i_t, i_tau));
    const complexd cross = std::conj(traj.G[i_t]) * traj.G[i_tau] * eu;
    return f - (cross - std::conj(cross));
}

PropagatorPair solve_ML(const MeanFieldTrajectory& traj, const KernelTable& table,
                        const PropagatorOptions& opts) {
    const TimeGrid& grid = traj.grid;
    const std::size_t n = grid.size();
    const double dt = grid.dt;
    const double wm = traj.omega_m;
    const complexd I(0.0, 1.0);

    PropagatorPair pair;
    pair.grid = grid;
    pair.M.assign(n, complexd(0.0, 0.0));
    pair.L.assign(n, complexd(0.0, 0.0));
    pair.M[0] = complexd(1.0, 0.0);

    const std::vector<double>& phi_full = table.f_imag_values();
    std::vector<double> phi;
    bool with_f = false;
    for (double v : phi_full)
        if (v != 0.0) { with_f = true; break; }
    if (with_f) phi = phi_full;

    FTables tabs(traj);
    const bool any_kernel = with_f || tabs.with_g;

    std::vector<complexd> S(n);  // M + L
    S[0] = pair.M[0] + pair.L[0];

    complexd conv(0.0, 0.0);  // sum_k w_k g(j,k) S_k at the current node

    for (std::size_t j = 0; j + 1 < n; ++j) {
        const complexd m = pair.M[j];
        const complexd l = pair.L[j];

        const complexd rm = -I * wm * m + I * conv;
        const complexd rl = I * wm * l - I * conv;

        complexd conv1(0.0, 0.0);
        if (any_kernel) {
            // node j+1 enters with F(t,t) = 0, so only history contributes
            double acc_re = 0.0, acc_im = 0.0;
            for (std::size_t k = 0; k <= j; ++k) {
                const double g = tabs.g(phi, j + 1, k);
                const double w = trap_w(k, j + 1, dt) * g;
                acc_re += w * S[k].real();
                acc_im += w * S[k].imag();
            }
            conv1 = complexd(acc_re, acc_im);
        }

        complexd m1 = m + dt * rm;
        complexd l1 = l + dt * rl;
        for (int it = 0; it < opts.max_corrector_iters; ++it) {
            const complexd rm1 = -I * wm * m1 + I * conv1;
            const complexd rl1 = I * wm * l1 - I * conv1;
            const complexd m_next = m + 0.5 * dt * (rm + rm1);
            const complexd l_next = l + 0.5 * dt * (rl + rl1);
            const double delta = std::abs(m_next - m1) + std::abs(l_next - l1);
            m1 = m_next;
            l1 = l_next;
            if (delta < opts.corrector_tol * (1.0 + std::abs(m1) + std::abs(l1))) break;
        }

        if (!std::isfinite(std::real(m1)) || !std::isfinite(std::imag(m1)) ||
            !std::isfinite(std::real(l1)) || !std::isfinite(std::imag(l1)))
            throw DivergenceError("solve_ML: non-finite value", j + 1);

        pair.M[j + 1] = m1;
        pair.L[j + 1] = l1;
        S[j + 1] = m1 + l1;
        conv = conv1;
    }
    return pair;
}

MLResiduals ml_residuals_for(const std::vector<complexd>& M,
                             const std::vector<complexd>& L,
                             const MeanFieldTrajectory& traj, const KernelTable& table,
                             double omega_m_sign) {
    const TimeGrid& grid = traj.grid;
    const std::size_t n = grid.size();
    const double dt = grid.dt;
    const double wm = traj.omega_m;
    const complexd I(0.0, 1.0);

    const std::vector<double>& phi = table.f_imag_values();
    FTables tabs(traj);

    std::vector<complexd> S(n);
    for (std::size_t k = 0; k < n; ++k) S[k] = M[k] + L[k];

    auto conv_at = [&](std::size_t j) {
        complexd acc(0.0, 0.0);
        for (std::size_t k = 0; k <= j; ++k)
            acc += trap_w(k, j, dt) * tabs.g(phi, j, k) * S[k];
        return acc;
    };

    MLResiduals res;
    complexd conv0 = conv_at(0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const complexd conv1 = conv_at(j + 1);
        const complexd rm0 = -I * wm * M[j] + I * conv0;
        const complexd rm1 = -I * wm * M[j + 1] + I * conv1;
        const complexd rl0 = omega_m_sign * I * wm * L[j] - I * conv0;
        const complexd rl1 = omega_m_sign * I * wm * L[j + 1] - I * conv1;
        res.res_M = std::max(res.res_M,
                             std::abs((M[j + 1] - M[j]) / dt - 0.5 * (rm0 + rm1)));
        res.res_L = std::max(res.res_L,
                             std::abs((L[j + 1] - L[j]) / dt - 0.5 * (rl0 + rl1)));
        conv0 = conv1;
    }
    return res;
}

MLResiduals ml_residuals(const PropagatorPair& pair, const MeanFieldTrajectory& traj,
                         const KernelTable& table) {
    return ml_residuals_for(pair.M, pair.L, traj, table, 1.0);
}

}  // namespace coolsim
