// propagator.hpp — fundamental-solution pair (M, L) of the mechanical
// fluctuation dynamics. The pair expresses db(t) = M(t) db(0) + L*(t) db^dag(0)
// plus a noise term, and obeys the coupled Volterra system
//
//   dM/dt = -i w_m M + int_0^t F(t,tau) [M(tau) + L(tau)] dtau
//   dL/dt = +i w_m L + int_0^t F*(t,tau) [M(tau) + L(tau)] dtau
//
// with M(0) = 1, L(0) = 0. F is the radiation-pressure-dressed memory kernel
//
//   F(t,tau) = f(t-tau) - [G*(t) G(tau) e^{u(t,tau)} - G(t) G*(tau) e^{u*(t,tau)}]
//
// evaluated lazily from the stored mean-field tables (F is purely imaginary).

#pragma once

#include <vector>

#include "coolsim/bath.hpp"
#include "coolsim/meanfield.hpp"

namespace coolsim {

struct PropagatorPair {
    TimeGrid grid;
    std::vector<complexd> M;
    std::vector<complexd> L;
};

// F(t_i, tau_k); requires k <= i (throws std::domain_error otherwise)
complexd F_kernel(const MeanFieldTrajectory& traj, const KernelTable& table,
                  std::size_t i_t, std::size_t i_tau);

// convenience overload building a throwaway kernel row (test use)
complexd F_kernel(const MeanFieldTrajectory& traj, const SpectralDensity& sd, double t,
                  double tau);

struct PropagatorOptions {
    double corrector_tol{1e-13};
    int max_corrector_iters{12};
};

PropagatorPair solve_ML(const MeanFieldTrajectory& traj, const KernelTable& table,
                        const PropagatorOptions& opts = {});

// discrete residuals of the implemented pair (diagnostics for tests);
// returns {max residual of the M equation, max residual of the L equation}
struct MLResiduals {
    double res_M{0.0};
    double res_L{0.0};
};
MLResiduals ml_residuals(const PropagatorPair& pair, const MeanFieldTrajectory& traj,
                         const KernelTable& table);

// residuals of an arbitrary candidate pair under the same discretization
MLResiduals ml_residuals_for(const std::vector<complexd>& M,
                             const std::vector<complexd>& L,
                             const MeanFieldTrajectory& traj, const KernelTable& table,
                             double omega_m_sign = 1.0);

}  // namespace coolsim
