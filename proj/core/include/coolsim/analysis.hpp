// analysis.hpp — cooling diagnostics and experiment drivers: the
// correlation-sourced cooling rate nu_i, its cumulative N_cl, instantaneous
// minimum detection, the kappa-switch driver and (c1, c2) scans.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coolsim/meanfield.hpp"
#include "coolsim/moments.hpp"

namespace coolsim {

// Two sign/pairing conventions for the correlation-sourced cooling rate are
// kept for auditability. Convention A is derived from the second-moment
// equations (the c1 channel decays with u2 and is resonant on the red
// sideband); convention B is the literal printed combination. The default is
// the one that reproduces the published sign structure (positive main lobe in
// N_cl/c1, negative main lobe in N_cl/c2).
enum class NuConvention { A, B };

constexpr NuConvention kDefaultNuConvention = NuConvention::A;

// nu_i at a grid index; positive values accelerate cooling
double nu_i(const MeanFieldTrajectory& traj, complexd c1, complexd c2, std::size_t i,
            NuConvention conv = kDefaultNuConvention);

std::vector<double> nu_i_series(const MeanFieldTrajectory& traj, complexd c1,
                                complexd c2, NuConvention conv = kDefaultNuConvention);

// N_cl(t) = cumulative trapezoid of nu_i on the trajectory grid
std::vector<double> N_cl_series(const MeanFieldTrajectory& traj, complexd c1,
                                complexd c2, NuConvention conv = kDefaultNuConvention);

// centered finite differences of a sampled series (one-sided at the ends);
// requires at least 3 points
std::vector<double> cooling_rate_numeric(const std::vector<double>& times,
                                         const std::vector<double>& values);

struct InstantMinimum {
    double t_min{0.0};
    double nb_min{0.0};
    std::size_t slot{0};       // index into the series
    double t_refined{0.0};     // parabolic refinement through the argmin
    double nb_refined{0.0};
};

// grid argmin of Nb within [t_a, t_b]; ties break toward earlier times
InstantMinimum find_instant_min(const PhononSeries& series, double t_a, double t_b);

struct SteadyStateEstimate {
    double tail_mean{0.0};
    double tail_min{0.0};
    double tail_max{0.0};
    bool flat{false};  // (max - min) over the tail < 5% of the mean
};

// tail statistics over the final fraction (default 10%) of the series
SteadyStateEstimate steady_state_estimate(const PhononSeries& series,
                                          double tail_fraction = 0.1);

struct CoolingReport {
    PhononSeries Nb;
    std::vector<double> nu;  // dNb/dt at the output times
    std::vector<double> nu_i;
    std::vector<double> Ncl;
    InstantMinimum minimum;
    SteadyStateEstimate steady;
    PhysicalParams params_echo;
    KappaSchedule schedule_echo;
    PhysicalityReport physicality;
};

struct PipelineOptions {
    AssembleOptions assemble{};
    NuConvention nu_convention{kDefaultNuConvention};
    double min_window_lo{5.0};  // window for the instantaneous minimum
    double min_window_hi{0.0};  // 0 = end of run
    TrajectoryModel trajectory{TrajectoryModel::StationaryEnvelope};
    // steady-state effective detuning for the envelope model; 0 = derive the
    // self-consistent value from delta_c via the fixed point
    double delta_eff_target{0.0};
};

// drive tables for the configured trajectory model
MeanFieldTrajectory make_trajectory(const PhysicalParams& p, const KappaSchedule& sched,
                                    const TimeGrid& grid, const PipelineOptions& opts);

// full pipeline: validate -> kernels -> mean field -> (M, L) -> N_b -> report
CoolingReport run_pipeline(const PhysicalParams& p, const KappaSchedule& sched,
                           const TimeGrid& grid, const PipelineOptions& opts = {});

// pipeline with the two-segment schedule [(0, kappa of sched), (t_switch, kappa_hi)]
CoolingReport run_qswitch(const PhysicalParams& p, const TimeGrid& grid,
                          double kappa_base, double t_switch, double kappa_hi,
                          const PipelineOptions& opts = {});

struct ScanRow {
    complexd c1;
    complexd c2;
    double t_min{0.0};
    double nb_min{0.0};
    double nb_steady{0.0};
};

struct ScanTable {
    std::vector<ScanRow> rows;
    std::size_t pareto_best{0};  // earliest t_min, then lowest nb_min
};

// one pipeline run per (c1, c2); the mean field, kernel tables and (M, L)
// are computed once and shared (they do not depend on the correlations)
ScanTable scan_correlations(const PhysicalParams& p, const KappaSchedule& sched,
                            const TimeGrid& grid, const std::vector<complexd>& c1_values,
                            const std::vector<complexd>& c2_values,
                            const PipelineOptions& opts = {});

}  // namespace coolsim
