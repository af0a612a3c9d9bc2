// moments.hpp — assembles the phonon-number series N_b(t) from the propagator
// pair, the mean-field tables and the reservoir kernels.
//
// All noise kernels are re-derived from the Heisenberg-picture source
// operators and are positive-type correlation kernels (sign convention:
// each kernel equals minus the autocorrelation of the corresponding
// anti-Hermitian source):
//
//   f1(t1,t2)  = (n0+1) G*(t1)G(t2) e^{u(t1,0)+u*(t2,0)}
//              +  n0    G(t1)G*(t2) e^{u*(t1,0)+u(t2,0)}      (initial photons)
//   f2(t1,t2)  = G*(t1)G(t2) int_0^min kappa(s) e^{u(t1,s)+u*(t2,s)} ds
//                                                             (vacuum input)
//   f_th       = stationary thermal kernel (bath.hpp)
//   f_ini(t)   = G*(t) e^{u(t,0)} c1 + G(t) e^{u*(t,0)} c2*   (initial correlations)
//
// With W_t(tau) = M(t-tau) - L*(t-tau) the assembled series reads
//
//   N_b(t) = (|M|^2 + |L|^2) m0 + |L|^2
//          + int int W_t*(t1) W_t(t2) [f1 + f2 + f_th](t1,t2) dt1 dt2
//          + 2 Re[ M*(t) int W_t(tau) i f_ini(tau)  dtau ]
//          + 2 Re[ L(t)  int W_t(tau) i f_ini*(tau) dtau ].
//
// The f1 and f_ini terms are separable (products of 1-D integrals), f2
// reduces to cumulative sums, and the stationary f_th term is evaluated as a
// Toeplitz form via FFT autocorrelation, so each output time costs O(N log N).

#pragma once

#include <cstddef>
#include <vector>

#include "coolsim/bath.hpp"
#include "coolsim/meanfield.hpp"
#include "coolsim/propagator.hpp"

namespace coolsim {

struct PhononSeries {
    double dt{0.0};  // underlying grid step
    std::vector<std::size_t> indices;
    std::vector<double> times;
    std::vector<double> Nb;
    std::vector<double> imag_residual;

    // optional per-source breakdown
    bool has_components{false};
    std::vector<double> comp_initial;  // (|M|^2 + |L|^2) m0
    std::vector<double> comp_vacuum;   // |L|^2
    std::vector<double> comp_f1;
    std::vector<double> comp_f2;
    std::vector<double> comp_fth;
    std::vector<double> comp_fini;

    std::size_t size() const { return indices.size(); }
};

struct AssembleOptions {
    std::size_t output_stride{0};  // 0 = every round(0.25/dt) steps
    bool with_components{true};
    unsigned workers{1};
};

// noise kernels at grid-aligned indices (exposed for tests and diagnostics)
complexd f1_kernel(const MeanFieldTrajectory& traj, double n0, std::size_t i1,
                   std::size_t i2);
complexd f2_kernel(const MeanFieldTrajectory& traj, std::size_t i1, std::size_t i2);
complexd f_ini_kernel(const MeanFieldTrajectory& traj, complexd c1, complexd c2,
                      std::size_t i);

PhononSeries assemble_Nb(const PropagatorPair& pair, const MeanFieldTrajectory& traj,
                         const PhysicalParams& p, const KernelTable& table,
                         const AssembleOptions& opts = {});

}  // namespace coolsim
