// coolsim.cpp — command-line surface: config ingestion, pipeline
// orchestration and figure-data emission.
//
// Exit codes: 0 ok, 2 config/validation error, 3 numerical divergence,
// 4 oracle tolerance breach.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "coolsim/io.hpp"
#include "coolsim/oracle.hpp"

namespace fs = std::filesystem;
using namespace coolsim;
using nlohmann::ordered_json;

namespace {

struct CliArgs {
    std::string config_path;
    std::string mode;
    std::string out_dir;
    std::string nu_convention;
    std::string trajectory;
    int workers{-1};
    double dt{-1.0};
    double t_max{-1.0};
    double c1{std::nan("")};
    double c2{std::nan("")};
};

unsigned resolve_workers(const RunConfig& config, int cli_workers) {
    if (cli_workers >= 0) return static_cast<unsigned>(cli_workers);
    if (config.workers > 0) return config.workers;
    if (const char* env = std::getenv("COOLSIM_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

ordered_json physicality_json(const PhysicalityReport& rep) {
    return {{"cs_c1_ok", rep.cs_c1_ok},
            {"cs_c2_ok", rep.cs_c2_ok},
            {"uncertainty_ok", rep.uncertainty_ok},
            {"min_eigenvalue", rep.min_eigenvalue},
            {"flagged", !rep.all_ok()}};
}

ordered_json minimum_json(const InstantMinimum& m) {
    return {{"t_min", m.t_min},
            {"nb_min", m.nb_min},
            {"t_refined", m.t_refined},
            {"nb_refined", m.nb_refined}};
}

ordered_json steady_json(const SteadyStateEstimate& s) {
    return {{"tail_mean", s.tail_mean},
            {"tail_min", s.tail_min},
            {"tail_max", s.tail_max},
            {"flat", s.flat}};
}

void write_report(const fs::path& dir, const RunConfig& config,
                  const std::vector<std::string>& warnings, ordered_json results,
                  double seconds) {
    ordered_json rep;
    rep["mode"] = to_string(config.mode);
    rep["config"] = resolved_json(config);
    rep["validation_warnings"] = warnings;
    rep["physicality"] = physicality_json(gaussian_physicality(
        config.params.n0, config.params.m0, config.params.c1, config.params.c2));
    rep["results"] = std::move(results);
    rep["timing_seconds"] = seconds;  // volatile field, excluded from byte-identity
    write_text_file((dir / "report.json").string(), rep.dump(2) + "\n");
}

PipelineOptions pipeline_options(const RunConfig& config, unsigned workers) {
    PipelineOptions opts;
    opts.assemble.output_stride = config.output.stride;
    opts.assemble.with_components = config.output.components;
    opts.assemble.workers = workers;
    opts.nu_convention = config.nu_convention;
    opts.trajectory = config.trajectory;
    if (!config.delta_c_given) opts.delta_eff_target = config.delta_eff_target;
    return opts;
}

int cmd_run(const RunConfig& config, const fs::path& out,
            const std::vector<std::string>& warnings, unsigned workers) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoolingReport rep = run_pipeline(config.params, config.schedule, config.grid,
                                           pipeline_options(config, workers));
    const MeanFieldTrajectory traj = make_trajectory(
        config.params, config.schedule, config.grid, pipeline_options(config, workers));
    std::size_t mf_stride = config.output.stride;
    if (mf_stride == 0)
        mf_stride = std::max<std::size_t>(1, std::llround(0.25 / config.grid.dt));
    write_meanfield_csv((out / "meanfield.csv").string(), traj, mf_stride);
    write_nb_csv((out / "nb.csv").string(), rep);
    double resid = 0.0;
    for (double r : rep.Nb.imag_residual) resid = std::max(resid, r);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json results;
    results["minimum"] = minimum_json(rep.minimum);
    results["steady"] = steady_json(rep.steady);
    results["nb_final"] = rep.Nb.Nb.back();
    results["imag_residual_max"] = resid;
    write_report(out, config, warnings, std::move(results), secs);
    return 0;
}

int cmd_ncl(const RunConfig& config, const fs::path& out,
            const std::vector<std::string>& warnings, unsigned /*workers*/) {
    const auto t0 = std::chrono::steady_clock::now();
    const MeanFieldTrajectory traj = make_trajectory(
        config.params, config.schedule, config.grid, pipeline_options(config, 1));

    const double cn1 = config.params.c1.real() != 0.0 ? config.params.c1.real() : 1.0;
    const double cn2 = config.params.c2.real() != 0.0 ? config.params.c2.real() : 1.0;
    const auto conv = config.nu_convention;
    std::vector<double> nu1 = nu_i_series(traj, cn1, 0.0, conv);
    std::vector<double> ncl1 = N_cl_series(traj, cn1, 0.0, conv);
    std::vector<double> nu2 = nu_i_series(traj, 0.0, cn2, conv);
    std::vector<double> ncl2 = N_cl_series(traj, 0.0, cn2, conv);

    std::size_t stride = config.output.stride;
    if (stride == 0) stride = std::max<std::size_t>(1, std::llround(0.25 / config.grid.dt));
    std::vector<double> t, a, b, c, d;
    for (std::size_t j = 0; j < traj.grid.size(); j += stride) {
        t.push_back(traj.grid.time(j));
        a.push_back(nu1[j] / cn1);
        b.push_back(ncl1[j] / cn1);
        c.push_back(nu2[j] / cn2);
        d.push_back(ncl2[j] / cn2);
    }
    write_csv((out / "ncl.csv").string(),
              {"t", "nu_i_over_c1", "N_cl_over_c1", "nu_i_over_c2", "N_cl_over_c2"},
              {&t, &a, &b, &c, &d});

    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] > b[imax]) imax = i;
        if (d[i] < d[imin]) imin = i;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json results;
    results["ncl_over_c1_max"] = {{"t", t[imax]}, {"value", b[imax]}};
    results["ncl_over_c2_min"] = {{"t", t[imin]}, {"value", d[imin]}};
    write_report(out, config, warnings, std::move(results), secs);
    return 0;
}

int cmd_scan(const RunConfig& config, const fs::path& out,
             const std::vector<std::string>& warnings, unsigned workers) {
    const auto t0 = std::chrono::steady_clock::now();
    const ScanTable table =
        scan_correlations(config.params, config.schedule, config.grid,
                          config.scan.c1_values, config.scan.c2_values,
                          pipeline_options(config, workers));
    write_scan_csv((out / "scan.csv").string(), table);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const ScanRow& best = table.rows[table.pareto_best];
    ordered_json results;
    results["rows"] = table.rows.size();
    results["pareto_best"] = {{"index", table.pareto_best},
                              {"c1", {best.c1.real(), best.c1.imag()}},
                              {"c2", {best.c2.real(), best.c2.imag()}},
                              {"t_min", best.t_min},
                              {"nb_min", best.nb_min}};
    write_report(out, config, warnings, std::move(results), secs);
    return 0;
}

int cmd_qswitch(const RunConfig& config, const fs::path& out,
                const std::vector<std::string>& warnings, unsigned workers) {
    const auto t0 = std::chrono::steady_clock::now();
    const double kappa_base = config.schedule.segments.front().kappa;
    const PipelineOptions opts = pipeline_options(config, workers);
    const CoolingReport switched =
        run_qswitch(config.params, config.grid, kappa_base, config.qswitch.t_switch,
                    config.qswitch.kappa_hi, opts);
    const CoolingReport baseline = run_pipeline(
        config.params, KappaSchedule::constant(kappa_base), config.grid, opts);

    write_csv((out / "qswitch.csv").string(), {"t", "N_b", "N_b_unswitched"},
              {&switched.Nb.times, &switched.Nb.Nb, &baseline.Nb.Nb});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json results;
    results["switched"] = {{"minimum", minimum_json(switched.minimum)},
                           {"steady", steady_json(switched.steady)}};
    results["unswitched"] = {{"minimum", minimum_json(baseline.minimum)},
                             {"steady", steady_json(baseline.steady)}};
    write_report(out, config, warnings, std::move(results), secs);
    return 0;
}

int cmd_oracle_compare(const RunConfig& config, const fs::path& out,
                       const std::vector<std::string>& warnings, unsigned workers) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t stride = config.oracle.traj_stride;
    const double dt_oracle = config.grid.dt * static_cast<double>(stride);
    std::size_t out_stride_oracle =
        std::max<std::size_t>(1, std::llround(0.25 / dt_oracle));

    PipelineOptions opts = pipeline_options(config, workers);
    opts.assemble.output_stride = out_stride_oracle * stride;
    const CoolingReport rep =
        run_pipeline(config.params, config.schedule, config.grid, opts);

    const SpectralDensity sd = SpectralDensity::from_params(config.params);
    const DiscretizedBath bath = discretize_bath(
        sd, config.oracle.omega_max_factor * config.params.omega_l, config.oracle.K);
    const MeanFieldTrajectory traj = make_trajectory(
        config.params, config.schedule, config.grid, opts);
    OracleOptions oopts;
    oopts.output_stride = out_stride_oracle;
    const OracleRun oracle =
        evolve_moments(config.params, config.schedule, bath, traj, stride, oopts);

    const std::size_t n = std::min(rep.Nb.size(), oracle.times.size());
    std::vector<double> t(n), nk(n), no(n), rd(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = oracle.times[i];
        nk[i] = rep.Nb.Nb[i];
        no[i] = oracle.Nb[i];
        rd[i] = std::abs(nk[i] - no[i]) / (1.0 + no[i]);
        worst = std::max(worst, rd[i]);
    }
    write_csv((out / "oracle_diff.csv").string(),
              {"t", "N_b_kernel", "N_b_oracle", "abs_rel_diff"}, {&t, &nk, &no, &rd});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst <= config.oracle.tolerance;
    ordered_json results;
    results["max_abs_rel_diff"] = worst;
    results["tolerance"] = config.oracle.tolerance;
    results["pass"] = pass;
    results["recurrence_time"] = bath.recurrence_time();
    write_report(out, config, warnings, std::move(results), secs);
    return pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coolsim: sideband-cooling dynamics of a mechanical oscillator in a "
                 "non-Markovian reservoir"};
    CliArgs args;
    app.add_option("--config", args.config_path, "JSON config file");
    app.add_option("--mode", args.mode, "run | ncl | scan | qswitch | oracle-compare");
    app.add_option("--out", args.out_dir, "output directory (default '.')");
    app.add_option("--workers", args.workers, "worker threads (default: machine)");
    app.add_option("--dt", args.dt, "grid step override");
    app.add_option("--t-max", args.t_max, "horizon override");
    app.add_option("--c1", args.c1, "real c1 override");
    app.add_option("--c2", args.c2, "real c2 override");
    app.add_option("--nu-i-convention", args.nu_convention, "a | b");
    app.add_option("--trajectory", args.trajectory,
                   "envelope | ode (mean-field drive model)");
    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    try {
        config = args.config_path.empty() ? default_config()
                                          : load_config_file(args.config_path);
        if (args.dt > 0.0 || args.t_max > 0.0) {
            const double dt = args.dt > 0.0 ? args.dt : config.grid.dt;
            const double tm = args.t_max > 0.0 ? args.t_max : config.grid.t_max();
            config.grid = TimeGrid::from_t_max(dt, tm);
        }
        if (!std::isnan(args.c1)) config.params.c1 = complexd(args.c1, 0.0);
        if (!std::isnan(args.c2)) config.params.c2 = complexd(args.c2, 0.0);
        if (!args.mode.empty()) config.mode = run_mode_from_string(args.mode);
        if (!args.nu_convention.empty()) {
            if (args.nu_convention == "a") config.nu_convention = NuConvention::A;
            else if (args.nu_convention == "b") config.nu_convention = NuConvention::B;
            else throw ConfigError("--nu-i-convention must be a or b");
        }
        if (!args.trajectory.empty()) {
            if (args.trajectory == "ode") config.trajectory = TrajectoryModel::FullOde;
            else if (args.trajectory == "envelope")
                config.trajectory = TrajectoryModel::StationaryEnvelope;
            else throw ConfigError("--trajectory must be envelope or ode");
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const ValidationReport validation =
        validate_params(config.params, config.schedule, config.grid);
    if (!validation.ok()) {
        std::cerr << "invalid configuration:\n";
        for (const auto& v : validation.violations) std::cerr << "  - " << v << "\n";
        return 2;
    }
    for (const auto& w : validation.warnings) std::cerr << "warning: " << w << "\n";

    const PhysicalityReport phys = gaussian_physicality(
        config.params.n0, config.params.m0, config.params.c1, config.params.c2);
    if (!phys.all_ok())
        std::cerr << "WARNING: initial (n0, m0, c1, c2) are not a legal two-mode "
                     "Gaussian state; the linear moment dynamics remain well-defined "
                     "and the run proceeds\n";

    const fs::path out = args.out_dir.empty() ? fs::path(config.output.dir)
                                              : fs::path(args.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (!fs::exists(out)) {
        std::cerr << "cannot create output directory: " << out << "\n";
        return 2;
    }

    const unsigned workers = resolve_workers(config, args.workers);

    try {
        switch (config.mode) {
            case RunMode::Run:
                return cmd_run(config, out, validation.warnings, workers);
            case RunMode::Ncl:
                return cmd_ncl(config, out, validation.warnings, workers);
            case RunMode::Scan:
                return cmd_scan(config, out, validation.warnings, workers);
            case RunMode::QSwitch:
                return cmd_qswitch(config, out, validation.warnings, workers);
            case RunMode::OracleCompare:
                return cmd_oracle_compare(config, out, validation.warnings, workers);
        }
    } catch (const DivergenceError& e) {
        std::cerr << "numerical divergence at step " << e.step() << ": " << e.what()
                  << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid run: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
