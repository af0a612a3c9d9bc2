// moments.cpp — phonon-number assembly

#include "coolsim/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "coolsim/detail/fft.hpp"

namespace coolsim {

namespace {

inline double trap_w(std::size_t k, std::size_t j, double dt) {
    return (k == 0 || k == j) ? 0.5 * dt : dt;
}

// shared read-only tables for one assembly
struct AssemblyTables {
    std::vector<complexd> A1;  // G e^{-P*}
    std::vector<complexd> A2;  // G* e^{-P}  (= conj(A1))
    std::vector<double> H;     // int_0^t kappa e^{2 Re P}
    const std::vector<complexd>* fth{nullptr};

    AssemblyTables(const MeanFieldTrajectory& traj, const KernelTable& table) {
        const std::size_t n = traj.grid.size();
        const double dt = traj.grid.dt;
        if (traj.kappa_cum.back() > 600.0)
            throw std::overflow_error(
                "assemble_Nb: integral of kappa too large for the noise tables");
        A1.resize(n);
        A2.resize(n);
        H.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const complexd em = std::exp(-traj.P[k]);
            A1[k] = traj.G[k] * std::conj(em);
            A2[k] = std::conj(traj.G[k]) * em;
        }
        H[0] = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double kap = kappa_at(traj.schedule, traj.grid.time(k));
            H[k + 1] = H[k] + kap * 0.5 * dt *
                                  (std::exp(traj.kappa_cum[k]) +
                                   std::exp(traj.kappa_cum[k + 1]));
        }
        fth = &table.f_th_values();
    }
};

void run_pool(unsigned workers, std::size_t jobs,
              const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads = std::min<unsigned>(workers, std::thread::hardware_concurrency());
    for (unsigned t = 1; t < std::max(1u, nthreads); ++t) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
}

}  // namespace

complexd f1_kernel(const MeanFieldTrajectory& traj, double n0, std::size_t i1,
                   std::size_t i2) {
    const complexd e1 = std::exp(-traj.P[i1]);          // e^{u(t1,0)}
    const complexd e2 = std::exp(-traj.P[i2]);
    return (n0 + 1.0) * std::conj(traj.G[i1]) * traj.G[i2] * e1 * std::conj(e2) +
           n0 * traj.G[i1] * std::conj(traj.G[i2]) * std::conj(e1) * e2;
}

complexd f2_kernel(const MeanFieldTrajectory& traj, std::size_t i1, std::size_t i2) {
    const std::size_t m = std::min(i1, i2);
    const double dt = traj.grid.dt;
    // H(min) by trapezoid with the segment value of kappa on each step
    double h = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double kap = kappa_at(traj.schedule, traj.grid.time(k));
        h += kap * 0.5 * dt *
             (std::exp(traj.kappa_cum[k]) + std::exp(traj.kappa_cum[k + 1]));
    }
    const complexd g1 = traj.G[i1] * std::conj(std::exp(-traj.P[i1]));
    const complexd g2 = traj.G[i2] * std::conj(std::exp(-traj.P[i2]));
    return std::conj(g1) * g2 * h;
}

complexd f_ini_kernel(const MeanFieldTrajectory& traj, complexd c1, complexd c2,
                      std::size_t i) {
    const complexd em = std::exp(-traj.P[i]);
    return std::conj(traj.G[i]) * em * c1 + traj.G[i] * std::conj(em) * std::conj(c2);
}

PhononSeries assemble_Nb(const PropagatorPair& pair, const MeanFieldTrajectory& traj,
                         const PhysicalParams& p, const KernelTable& table,
                         const AssembleOptions& opts) {
    const TimeGrid& grid = traj.grid;
    if (pair.grid.dt != grid.dt || pair.grid.n_steps != grid.n_steps)
        throw std::invalid_argument("assemble_Nb: propagator and trajectory grids differ");
    if (!table.has_thermal() && p.eta != 0.0)
        throw std::invalid_argument("assemble_Nb: kernel table lacks the thermal table");

    const std::size_t n = grid.size();
    const double dt = grid.dt;
    std::size_t stride = opts.output_stride;
    if (stride == 0) {
        stride = static_cast<std::size_t>(std::llround(0.25 / dt));
        if (stride == 0) stride = 1;
    }

    PhononSeries out;
    out.dt = dt;
    for (std::size_t j = 0; j < n; j += stride) out.indices.push_back(j);
    if (out.indices.back() != n - 1) out.indices.push_back(n - 1);
    const std::size_t n_out = out.indices.size();
    out.times.resize(n_out);
    out.Nb.resize(n_out);
    out.imag_residual.resize(n_out);
    out.has_components = opts.with_components;
    if (out.has_components) {
        out.comp_initial.resize(n_out);
        out.comp_vacuum.resize(n_out);
        out.comp_f1.resize(n_out);
        out.comp_f2.resize(n_out);
        out.comp_fth.resize(n_out);
        out.comp_fini.resize(n_out);
    }

    const AssemblyTables tabs(traj, table);
    const complexd I(0.0, 1.0);
    const bool with_bath = p.eta != 0.0 && table.has_thermal();

    auto job = [&](std::size_t slot) {
        const std::size_t nn = out.indices[slot];
        out.times[slot] = grid.time(nn);

        const complexd Mn = pair.M[nn];
        const complexd Ln = pair.L[nn];
        const double hom_init = (std::norm(Mn) + std::norm(Ln)) * p.m0;
        const double hom_vac = std::norm(Ln);

        double f1_term = 0.0, f2_term = 0.0, fth_term = 0.0, fini_term = 0.0;
        double resid = 0.0;

        if (nn > 0) {
            std::vector<complexd> Wt(nn + 1);
            for (std::size_t k = 0; k <= nn; ++k) {
                const std::size_t r = nn - k;
                Wt[k] = trap_w(k, nn, dt) * (pair.M[r] - std::conj(pair.L[r]));
            }

            // separable f1 term
            complexd J1(0.0, 0.0), J2(0.0, 0.0);
            for (std::size_t k = 0; k <= nn; ++k) {
                J1 += Wt[k] * tabs.A1[k];
                J2 += Wt[k] * tabs.A2[k];
            }
            f1_term = (p.n0 + 1.0) * std::norm(J1) + p.n0 * std::norm(J2);

            // f2 term via cumulative sums over the kappa integral
            {
                complexd inner(0.0, 0.0), off(0.0, 0.0);
                double diag = 0.0;
                for (std::size_t k = 0; k <= nn; ++k) {
                    const complexd v = Wt[k] * tabs.A1[k];
                    off += std::conj(v) * inner;
                    diag += std::norm(v) * tabs.H[k];
                    inner += v * tabs.H[k];
                }
                const complexd f2c = off + std::conj(off) + diag;
                f2_term = f2c.real();
                resid += std::abs(f2c.imag());
            }

            // stationary thermal term as a Toeplitz form
            if (with_bath) {
                const std::vector<complexd> C = detail::autocorrelation(Wt);
                const std::vector<complexd>& T = *tabs.fth;
                complexd acc = T[0] * std::conj(C[0]);
                for (std::size_t d = 1; d <= nn; ++d)
                    acc += T[d] * std::conj(C[d]) + std::conj(T[d]) * C[d];
                fth_term = acc.real();
                resid += std::abs(acc.imag());
            }

            // initial-correlation cross terms
            if (p.c1 != complexd(0.0, 0.0) || p.c2 != complexd(0.0, 0.0)) {
                complexd Ic(0.0, 0.0), Ic2(0.0, 0.0);
                for (std::size_t k = 0; k <= nn; ++k) {
                    const complexd fi =
                        tabs.A2[k] * p.c1 + tabs.A1[k] * std::conj(p.c2);
                    Ic += Wt[k] * fi;
                    Ic2 += Wt[k] * std::conj(fi);
                }
                fini_term = 2.0 * std::real(std::conj(Mn) * (I * Ic)) +
                            2.0 * std::real(Ln * (I * Ic2));
            }
        }

        out.Nb[slot] = hom_init + hom_vac + f1_term + f2_term + fth_term + fini_term;
        out.imag_residual[slot] = resid;
        if (out.has_components) {
            out.comp_initial[slot] = hom_init;
            out.comp_vacuum[slot] = hom_vac;
            out.comp_f1[slot] = f1_term;
            out.comp_f2[slot] = f2_term;
            out.comp_fth[slot] = fth_term;
            out.comp_fini[slot] = fini_term;
        }
    };

    run_pool(opts.workers, n_out, job);
    return out;
}

}  // namespace coolsim
