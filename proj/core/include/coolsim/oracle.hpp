// oracle.hpp — brute-force validator for the kernel path. The reservoir is
// discretized into K explicit modes and the exact closed linear system for
// all first and second moments of the (2+K)-mode Gaussian network is
// integrated with a fixed-step classic 4th-order method.
//
// The oracle consumes the same mean-field trajectory as the kernel path, so a
// disagreement isolates to the fluctuation machinery. The discretized bath
// induces revivals at t ~ 2 pi / delta_omega; comparisons should stay below
// half that horizon unless the bath coupling is weak enough not to matter.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

#include "coolsim/bath.hpp"
#include "coolsim/meanfield.hpp"
#include "coolsim/moments.hpp"

namespace coolsim {

// ------------------------------ bath discretization --------------------------

struct DiscretizedBath {
    std::size_t K{0};
    double omega_max{0.0};
    std::vector<double> omegas;     // midpoint grid (j - 1/2) * delta_omega
    std::vector<double> couplings;  // V_j = sqrt(J(omega_j) * delta_omega)

    double delta_omega() const { return omega_max / static_cast<double>(K); }
    double recurrence_time() const {
        return 2.0 * 3.141592653589793238462643383279502884 / delta_omega();
    }
    // sum of V_j^2; approximates the total spectral weight
    double coupling_weight() const;
};

DiscretizedBath discretize_bath(const SpectralDensity& sd, double omega_max,
                                std::size_t K);

// discrete-sum reconstruction of the memory kernel, 2i sum_k V_k^2 sin(w_k t)
complexd discretized_memory_kernel(const DiscretizedBath& bath, double t);

// --------------------------------- moment state ------------------------------

// Plain second moments <z_i z_j> of the doubled operator vector
// z = (a, b, b_1..b_K, a^dag, b^dag, b_1^dag ..); mode order: cavity,
// mechanics, bath. Means are carried separately (zero for the fluctuation
// problem, unit seeds for fundamental-solution extraction).
struct MomentState {
    double t{0.0};
    std::size_t n_modes{0};  // 2 + K
    Eigen::VectorXcd means;
    Eigen::MatrixXcd sigma;  // (2n) x (2n)

    complexd plain(std::size_t i, std::size_t j) const { return sigma(i, j); }
    // <z_i^dag z_j>
    complexd normal(std::size_t i, std::size_t j) const {
        return sigma(n_modes + i, j);
    }
    // <z_i z_j>
    complexd anomalous(std::size_t i, std::size_t j) const { return sigma(i, j); }
    double occupancy(std::size_t i) const { return std::real(normal(i, i)); }
};

// smallest eigenvalue of sigma_cov + (i/2) Omega in the quadrature basis;
// >= 0 (up to tolerance) for a physical Gaussian state
double min_symplectic_eigenvalue(const MomentState& state);

// ---------------------------------- evolution --------------------------------

struct OracleOptions {
    std::size_t output_stride{25};        // in oracle steps
    std::vector<double> snapshot_times{};  // full MomentState copies
};

struct OracleRun {
    std::vector<double> times;
    std::vector<double> Nb;
    std::vector<double> Na;
    std::vector<complexd> corr_adag_b;  // <da^dag db>
    std::vector<complexd> corr_ab;      // <da db>
    std::vector<double> hermiticity_residual;
    std::vector<MomentState> snapshots;
};

// Full second-moment evolution. The oracle grid is traj_stride mean-field
// steps per oracle step (traj_stride must be even so RK4 midpoints land on
// the fine grid); initial moments come from p (n0, m0, c1, c2) and the bath
// occupation evaluated at the discrete mode frequencies.
OracleRun evolve_moments(const PhysicalParams& p, const KappaSchedule& sched,
                         const DiscretizedBath& bath, const MeanFieldTrajectory& traj,
                         std::size_t traj_stride, const OracleOptions& opts = {});

// column extraction over stored snapshot series
PhononSeries extract_Nb(const std::vector<MomentState>& states);

enum class OracleCorrelation { ADagB, AB, ADagBk, BDagBk };
std::vector<complexd> extract_correlations(const std::vector<MomentState>& states,
                                           OracleCorrelation which, std::size_t k = 0);

// ----------------------- fundamental solution + variants ---------------------

// b-row entries of the fundamental matrix (from unit-seed mean evolutions):
// M(t) = Phi_{b,b}, L(t) = conj(Phi_{b,b^dag}), phi_a = Phi_{b,a},
// phi_adag = Phi_{b,a^dag}
struct OracleFundamental {
    std::vector<double> times;
    std::vector<complexd> M;
    std::vector<complexd> L;
    std::vector<complexd> phi_a;
    std::vector<complexd> phi_adag;
};

OracleFundamental oracle_fundamental(const KappaSchedule& sched,
                                     const DiscretizedBath& bath,
                                     const MeanFieldTrajectory& traj,
                                     std::size_t traj_stride,
                                     std::size_t output_stride = 25);

// N_b(t) for several (c1, c2) pairs sharing one base evolution: the
// correlation difference is a rank-4 correction evolving through the
// fundamental columns, so each extra pair is nearly free.
std::vector<std::vector<double>> oracle_nb_variants(
    const PhysicalParams& p, const KappaSchedule& sched, const DiscretizedBath& bath,
    const MeanFieldTrajectory& traj, std::size_t traj_stride,
    const std::vector<std::pair<complexd, complexd>>& correlations,
    const OracleOptions& opts = {});

}  // namespace coolsim
