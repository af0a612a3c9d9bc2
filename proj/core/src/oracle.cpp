// oracle.cpp — finite-bath covariance oracle

#include "coolsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace coolsim {

namespace {

constexpr complexd kI(0.0, 1.0);

// generator of the doubled first-moment system; rank-structured application
// (diagonal + three rank-1 couplings) keeps the Lyapunov derivative at
// O(n^2 + K n) per stage
class Generator {
public:
    Generator(const DiscretizedBath& bath, double omega_m)
        : K_(bath.K), n_(bath.K + 2), m_(2 * (bath.K + 2)) {
        V_ = Eigen::VectorXcd(K_);
        for (std::size_t k = 0; k < K_; ++k) V_(k) = bath.couplings[k];
        d0_ = Eigen::VectorXcd(m_);
        for (std::size_t k = 0; k < K_; ++k) {
            d0_(2 + k) = -kI * bath.omegas[k];
            d0_(n_ + 2 + k) = kI * bath.omegas[k];
        }
        d0_(1) = -kI * omega_m;
        d0_(n_ + 1) = kI * omega_m;
        d0_(0) = 0.0;
        d0_(n_) = 0.0;
    }

    std::size_t doubled_dim() const { return m_; }
    std::size_t n_modes() const { return n_; }

    struct Coeffs {
        complexd G;
        double delta_eff;
        double kappa;
    };

    void diag(const Coeffs& c, Eigen::VectorXcd& d) const {
        d = d0_;
        d(0) = -kI * c.delta_eff - 0.5 * c.kappa;
        d(n_) = kI * c.delta_eff - 0.5 * c.kappa;
    }

    // out = A y
    void apply(const Coeffs& c, const Eigen::VectorXcd& d, const Eigen::VectorXcd& y,
               Eigen::VectorXcd& out) const {
        const std::size_t n = n_;
        out = d.cwiseProduct(y);
        const complexd g = c.G;
        const complexd gc = std::conj(c.G);
        const complexd rs = y(1) + y(n + 1);
        out(0) += kI * g * rs;
        out(n) += -kI * gc * rs;
        const complexd bathsum =
            V_.dot(y.segment(2, K_)) + V_.dot(y.segment(n + 2, K_));
        const complexd rq = kI * g * y(n) + kI * gc * y(0) - kI * bathsum;
        out(1) += rq;
        out(n + 1) -= rq;
        out.segment(2, K_) += (-kI * rs) * V_;
        out.segment(n + 2, K_) += (kI * rs) * V_;
    }

    // out = A S + S A^T (+ kappa in the (a, a^dag) slot when with_noise)
    void lyapunov(const Coeffs& c, const Eigen::VectorXcd& d, const Eigen::MatrixXcd& S,
                  Eigen::MatrixXcd& out, bool with_noise) const {
        const auto n = static_cast<Eigen::Index>(n_);
        const auto K = static_cast<Eigen::Index>(K_);
        const auto m = static_cast<Eigen::Index>(m_);
        const complexd g = c.G;
        const complexd gc = std::conj(c.G);

        for (Eigen::Index j = 0; j < m; ++j)
            out.col(j) = (d.array() + d(j)) * S.col(j).array();

        // A S rank parts
        const Eigen::RowVectorXcd rs = S.row(1) + S.row(n + 1);
        out.row(0) += kI * g * rs;
        out.row(n) += -kI * gc * rs;
        const Eigen::RowVectorXcd rq =
            kI * g * S.row(n) + kI * gc * S.row(0) -
            kI * (V_.transpose() * S.middleRows(2, K) +
                  V_.transpose() * S.middleRows(n + 2, K));
        out.row(1) += rq;
        out.row(n + 1) -= rq;
        out.middleRows(2, K).noalias() += (-kI * V_) * rs;
        out.middleRows(n + 2, K).noalias() += (kI * V_) * rs;

        // S A^T rank parts
        const Eigen::VectorXcd cs = S.col(1) + S.col(n + 1);
        out.col(0) += kI * g * cs;
        out.col(n) += -kI * gc * cs;
        const Eigen::VectorXcd cq =
            kI * g * S.col(n) + kI * gc * S.col(0) -
            kI * (S.middleCols(2, K) * V_ + S.middleCols(n + 2, K) * V_);
        out.col(1) += cq;
        out.col(n + 1) -= cq;
        out.middleCols(2, K).noalias() += cs * (-kI * V_).transpose();
        out.middleCols(n + 2, K).noalias() += cs * (kI * V_).transpose();

        if (with_noise) out(0, n) += c.kappa;
    }

private:
    std::size_t K_, n_, m_;
    Eigen::VectorXcd V_;
    Eigen::VectorXcd d0_;
};

struct StagePlan {
    const MeanFieldTrajectory& traj;
    const KappaSchedule& sched;
    std::size_t stride;

    Generator::Coeffs at(std::size_t fine_idx, double kappa_step) const {
        return {traj.G[fine_idx], traj.delta_eff[fine_idx], kappa_step};
    }

    double kappa_for_step(std::size_t oracle_step) const {
        return kappa_at(sched, traj.grid.time(oracle_step * stride));
    }
};

void check_stride(const MeanFieldTrajectory& traj, std::size_t stride) {
    if (stride < 2 || stride % 2 != 0)
        throw std::invalid_argument("oracle: traj_stride must be even and >= 2");
    if (traj.grid.n_steps % stride != 0)
        throw std::invalid_argument("oracle: trajectory length must divide traj_stride");
}

}  // namespace

double DiscretizedBath::coupling_weight() const {
    double acc = 0.0;
    for (double v : couplings) acc += v * v;
    return acc;
}

DiscretizedBath discretize_bath(const SpectralDensity& sd, double omega_max,
                                std::size_t K) {
    if (!(omega_max > 0.0) || K < 1)
        throw std::invalid_argument("discretize_bath: need omega_max > 0 and K >= 1");
    DiscretizedBath bath;
    bath.K = K;
    bath.omega_max = omega_max;
    bath.omegas.resize(K);
    bath.couplings.resize(K);
    const double dw = omega_max / static_cast<double>(K);
    for (std::size_t j = 0; j < K; ++j) {
        const double w = (static_cast<double>(j) + 0.5) * dw;
        bath.omegas[j] = w;
        bath.couplings[j] = std::sqrt(sd(w) * dw);
    }
    return bath;
}

complexd discretized_memory_kernel(const DiscretizedBath& bath, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < bath.K; ++k)
        acc += bath.couplings[k] * bath.couplings[k] * std::sin(bath.omegas[k] * t);
    return {0.0, 2.0 * acc};
}

double min_symplectic_eigenvalue(const MomentState& state) {
    const auto n = static_cast<Eigen::Index>(state.n_modes);
    const Eigen::Index m = 2 * n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        U(2 * i, i) = inv_sqrt2;
        U(2 * i, n + i) = inv_sqrt2;
        U(2 * i + 1, i) = -kI * inv_sqrt2;
        U(2 * i + 1, n + i) = kI * inv_sqrt2;
    }
    const Eigen::MatrixXcd plain = U * state.sigma * U.transpose();
    Eigen::MatrixXcd sym = 0.5 * (plain + plain.transpose());

    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        omega(2 * i, 2 * i + 1) = 1.0;
        omega(2 * i + 1, 2 * i) = -1.0;
    }
    Eigen::MatrixXcd test = sym + 0.5 * kI * omega;
    test = 0.5 * (test + test.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test);
    return es.eigenvalues().minCoeff();
}

OracleRun evolve_moments(const PhysicalParams& p, const KappaSchedule& sched,
                         const DiscretizedBath& bath, const MeanFieldTrajectory& traj,
                         std::size_t traj_stride, const OracleOptions& opts) {
    check_stride(traj, traj_stride);
    const Generator gen(bath, p.omega_m);
    const std::size_t n = gen.n_modes();
    const auto m = static_cast<Eigen::Index>(gen.doubled_dim());
    const std::size_t n_steps = traj.grid.n_steps / traj_stride;
    const double h = traj.grid.dt * static_cast<double>(traj_stride);

    Eigen::MatrixXcd sig = Eigen::MatrixXcd::Zero(m, m);
    sig(0, n) = p.n0 + 1.0;
    sig(n, 0) = p.n0;
    sig(1, n + 1) = p.m0 + 1.0;
    sig(n + 1, 1) = p.m0;
    sig(n + 1, 0) = sig(0, n + 1) = p.c1;
    sig(n, 1) = sig(1, n) = std::conj(p.c1);
    sig(1, 0) = sig(0, 1) = p.c2;
    sig(n + 1, n) = sig(n, n + 1) = std::conj(p.c2);
    for (std::size_t k = 0; k < bath.K; ++k) {
        const double mk = p.occupation.n_bar(bath.omegas[k]);
        sig(2 + k, n + 2 + k) = mk + 1.0;
        sig(n + 2 + k, 2 + k) = mk;
    }

    const StagePlan plan{traj, sched, traj_stride};

    OracleRun run;
    auto record = [&](std::size_t step) {
        run.times.push_back(traj.grid.time(step * traj_stride));
        run.Nb.push_back(std::real(sig(n + 1, 1)));
        run.Na.push_back(std::real(sig(n, 0)));
        run.corr_adag_b.push_back(sig(n, 1));
        run.corr_ab.push_back(sig(0, 1));
        run.hermiticity_residual.push_back(std::abs(std::imag(sig(n + 1, 1))));
    };
    auto maybe_snapshot = [&](std::size_t step) {
        const double t = traj.grid.time(step * traj_stride);
        for (double ts : opts.snapshot_times) {
            if (std::abs(ts - t) < 0.5 * h) {
                MomentState st;
                st.t = t;
                st.n_modes = n;
                st.means = Eigen::VectorXcd::Zero(m);
                st.sigma = sig;
                run.snapshots.push_back(std::move(st));
                break;
            }
        }
    };

    const std::size_t stride_out = std::max<std::size_t>(1, opts.output_stride);
    record(0);
    maybe_snapshot(0);

    Eigen::MatrixXcd k_stage(m, m), acc(m, m), tmp(m, m);
    Eigen::VectorXcd d(m);

    for (std::size_t step = 0; step < n_steps; ++step) {
        const double kap = plan.kappa_for_step(step);
        const std::size_t base = step * traj_stride;
        const std::size_t mid = base + traj_stride / 2;
        const std::size_t end = base + traj_stride;

        const auto c1 = plan.at(base, kap);
        const auto c2 = plan.at(mid, kap);
        const auto c3 = plan.at(end, kap);

        gen.diag(c1, d);
        gen.lyapunov(c1, d, sig, k_stage, true);  // k1
        acc = k_stage;
        tmp = sig + (0.5 * h) * k_stage;

        gen.diag(c2, d);
        gen.lyapunov(c2, d, tmp, k_stage, true);  // k2
        acc += 2.0 * k_stage;
        tmp = sig + (0.5 * h) * k_stage;

        gen.lyapunov(c2, d, tmp, k_stage, true);  // k3
        acc += 2.0 * k_stage;
        tmp = sig + h * k_stage;

        gen.diag(c3, d);
        gen.lyapunov(c3, d, tmp, k_stage, true);  // k4
        acc += k_stage;

        sig += (h / 6.0) * acc;

        if (!std::isfinite(std::real(sig(n + 1, 1))))
            throw DivergenceError("evolve_moments: non-finite value", step + 1);

        const std::size_t s1 = step + 1;
        if (s1 % stride_out == 0 || s1 == n_steps) record(s1);
        maybe_snapshot(s1);
    }
    return run;
}

PhononSeries extract_Nb(const std::vector<MomentState>& states) {
    if (states.empty()) throw std::invalid_argument("extract_Nb: no states");
    PhononSeries out;
    out.dt = states.size() > 1 ? states[1].t - states[0].t : 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        out.indices.push_back(i);
        out.times.push_back(states[i].t);
        const complexd nb = states[i].normal(1, 1);
        out.Nb.push_back(std::real(nb));
        out.imag_residual.push_back(std::abs(std::imag(nb)));
    }
    return out;
}

std::vector<complexd> extract_correlations(const std::vector<MomentState>& states,
                                           OracleCorrelation which, std::size_t k) {
    if (states.empty()) throw std::invalid_argument("extract_correlations: no states");
    std::vector<complexd> out;
    out.reserve(states.size());
    for (const auto& st : states) {
        switch (which) {
            case OracleCorrelation::ADagB: out.push_back(st.normal(0, 1)); break;
            case OracleCorrelation::AB: out.push_back(st.anomalous(0, 1)); break;
            case OracleCorrelation::ADagBk: out.push_back(st.normal(0, 2 + k)); break;
            case OracleCorrelation::BDagBk: out.push_back(st.normal(1, 2 + k)); break;
        }
    }
    return out;
}

OracleFundamental oracle_fundamental(const KappaSchedule& sched,
                                     const DiscretizedBath& bath,
                                     const MeanFieldTrajectory& traj,
                                     std::size_t traj_stride,
                                     std::size_t output_stride) {
    check_stride(traj, traj_stride);
    const Generator gen(bath, traj.omega_m);
    const std::size_t n = gen.n_modes();
    const auto m = static_cast<Eigen::Index>(gen.doubled_dim());
    const std::size_t n_steps = traj.grid.n_steps / traj_stride;
    const double h = traj.grid.dt * static_cast<double>(traj_stride);
    const StagePlan plan{traj, sched, traj_stride};

    // seed columns: b, b^dag, a, a^dag
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(m, 4);
    Y(1, 0) = 1.0;
    Y(n + 1, 1) = 1.0;
    Y(0, 2) = 1.0;
    Y(n, 3) = 1.0;

    OracleFundamental out;
    auto record = [&](std::size_t step) {
        out.times.push_back(traj.grid.time(step * traj_stride));
        out.M.push_back(Y(1, 0));
        out.L.push_back(std::conj(Y(1, 1)));
        out.phi_a.push_back(Y(1, 2));
        out.phi_adag.push_back(Y(1, 3));
    };
    const std::size_t stride_out = std::max<std::size_t>(1, output_stride);
    record(0);

    Eigen::VectorXcd d(m), k_stage(m), acc(m), tmp(m);
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double kap = plan.kappa_for_step(step);
        const std::size_t base = step * traj_stride;
        const auto c1 = plan.at(base, kap);
        const auto c2 = plan.at(base + traj_stride / 2, kap);
        const auto c3 = plan.at(base + traj_stride, kap);

        for (int col = 0; col < 4; ++col) {
            Eigen::VectorXcd y = Y.col(col);
            gen.diag(c1, d);
            gen.apply(c1, d, y, k_stage);
            acc = k_stage;
            tmp = y + (0.5 * h) * k_stage;
            gen.diag(c2, d);
            gen.apply(c2, d, tmp, k_stage);
            acc += 2.0 * k_stage;
            tmp = y + (0.5 * h) * k_stage;
            gen.apply(c2, d, tmp, k_stage);
            acc += 2.0 * k_stage;
            tmp = y + h * k_stage;
            gen.diag(c3, d);
            gen.apply(c3, d, tmp, k_stage);
            acc += k_stage;
            Y.col(col) = y + (h / 6.0) * acc;
        }

        const std::size_t s1 = step + 1;
        if (s1 % stride_out == 0 || s1 == n_steps) record(s1);
    }
    return out;
}

std::vector<std::vector<double>> oracle_nb_variants(
    const PhysicalParams& p, const KappaSchedule& sched, const DiscretizedBath& bath,
    const MeanFieldTrajectory& traj, std::size_t traj_stride,
    const std::vector<std::pair<complexd, complexd>>& correlations,
    const OracleOptions& opts) {
    PhysicalParams base = p;
    base.c1 = complexd(0.0, 0.0);
    base.c2 = complexd(0.0, 0.0);
    const OracleRun run0 = evolve_moments(base, sched, bath, traj, traj_stride, opts);
    const OracleFundamental fund = oracle_fundamental(
        sched, bath, traj, traj_stride, std::max<std::size_t>(1, opts.output_stride));
    if (fund.times.size() != run0.times.size())
        throw std::logic_error("oracle_nb_variants: output grids differ");

    std::vector<std::vector<double>> out;
    out.reserve(correlations.size());
    for (const auto& [c1, c2] : correlations) {
        std::vector<double> nb = run0.Nb;
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const complexd M = fund.M[i];
            const complexd Lc = std::conj(fund.L[i]);  // Phi_{b, b^dag}
            const complexd fa = fund.phi_a[i];
            const complexd fad = fund.phi_adag[i];
            nb[i] += 2.0 * std::real(c1 * (std::conj(M) * fa + std::conj(fad) * Lc)) +
                     2.0 * std::real(c2 * (std::conj(Lc) * fa + std::conj(fad) * M));
        }
        out.push_back(std::move(nb));
    }
    return out;
}

}  // namespace coolsim
