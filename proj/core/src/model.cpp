// model.cpp — parameter validation, kappa schedule evaluation, physicality

#include "coolsim/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coolsim {

double Occupation::n_bar(double omega) const {
    if (kind == Kind::Flat) return m_k;
    if (omega <= 0.0) throw std::domain_error("Occupation::n_bar: omega must be > 0");
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

bool KappaSchedule::equals(const KappaSchedule& other) const {
    if (segments.size() != other.segments.size()) return false;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].start_time != other.segments[i].start_time) return false;
        if (segments[i].kappa != other.segments[i].kappa) return false;
    }
    return true;
}

double kappa_at(const KappaSchedule& sched, double t) {
    if (t < 0.0) throw std::domain_error("kappa_at: t must be >= 0");
    if (sched.segments.empty()) throw std::invalid_argument("kappa_at: empty schedule");
    double value = sched.segments.front().kappa;
    for (const auto& seg : sched.segments) {
        if (seg.start_time <= t) value = seg.kappa;
        else break;
    }
    return value;
}

double kappa_integral(const KappaSchedule& sched, double t) {
    if (t < 0.0) throw std::domain_error("kappa_integral: t must be >= 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < sched.segments.size(); ++i) {
        const double a = sched.segments[i].start_time;
        if (a >= t) break;
        const double b = (i + 1 < sched.segments.size())
                             ? std::min(sched.segments[i + 1].start_time, t)
                             : t;
        if (b > a) acc += sched.segments[i].kappa * (b - a);
    }
    return acc;
}

std::size_t TimeGrid::index_of(double t, double tol) const {
    const double x = t / dt;
    const double r = std::round(x);
    if (std::abs(x - r) > tol * std::max(1.0, std::abs(x)) || r < 0.0 ||
        r > static_cast<double>(n_steps)) {
        std::ostringstream os;
        os << "TimeGrid::index_of: t = " << t << " is not a grid point (dt = " << dt << ")";
        throw std::out_of_range(os.str());
    }
    return static_cast<std::size_t>(r);
}

bool TimeGrid::is_aligned(double t, double tol) const {
    const double x = t / dt;
    const double r = std::round(x);
    return std::abs(x - r) <= tol * std::max(1.0, std::abs(x)) && r >= 0.0 &&
           r <= static_cast<double>(n_steps);
}

ValidationReport validate_params(const PhysicalParams& p, const KappaSchedule& sched,
                                 const TimeGrid& grid) {
    ValidationReport rep;
    auto violate = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    if (p.omega_m != 1.0) violate("omega_m = 1 (all quantities in units of omega_m)");
    if (!(p.eta >= 0.0)) violate("eta >= 0");
    if (!(p.omega_l > 0.0)) violate("omega_l > 0");
    if (!(p.s_exponent > 0.0)) violate("s_exponent > 0");
    if (!(p.m0 >= 0.0)) violate("m0 >= 0");
    if (!(p.n0 >= 0.0)) violate("n0 >= 0");
    if (!(p.drive_E >= 0.0)) violate("drive_E >= 0");
    if (p.occupation.kind == Occupation::Kind::Flat && !(p.occupation.m_k >= 0.0))
        violate("occupation m_k >= 0");
    if (p.occupation.kind == Occupation::Kind::BoseEinstein && !(p.occupation.temperature >= 0.0))
        violate("occupation temperature >= 0");

    if (sched.segments.empty()) {
        violate("schedule has at least one segment");
    } else {
        if (sched.segments.front().start_time != 0.0)
            violate("first schedule segment starts at t = 0");
        for (std::size_t i = 0; i < sched.segments.size(); ++i) {
            if (!(sched.segments[i].kappa >= 0.0)) violate("kappa >= 0 in every segment");
            if (i > 0 && !(sched.segments[i].start_time > sched.segments[i - 1].start_time))
                violate("schedule start_times strictly increasing");
        }
        for (std::size_t i = 1; i < sched.segments.size(); ++i) {
            const double ts = sched.segments[i].start_time;
            if (ts <= grid.t_max() && !grid.is_aligned(ts))
                violate("schedule switch times must be grid-aligned");
        }
    }

    if (!(grid.dt > 0.0)) violate("dt > 0");
    if (grid.n_steps < 1) violate("n_steps >= 1");

    if (rep.ok()) {
        if (grid.dt * p.omega_l > 0.1) {
            std::ostringstream os;
            os << "dt*omega_l = " << grid.dt * p.omega_l
               << " > 0.1: grid may under-resolve the bath kernel";
            rep.warnings.push_back(os.str());
        }
        // crude bound on the largest effective detuning the run will see
        const double beta_scale =
            std::max(std::abs(p.beta0),
                     p.g0 * p.drive_E * p.drive_E / (p.omega_m * p.omega_m));
        const double max_delta_eff = std::abs(p.delta_c) + 2.0 * std::abs(p.g0) * beta_scale;
        if (grid.dt * max_delta_eff > 0.1) {
            std::ostringstream os;
            os << "dt*max|Delta_c'| ~ " << grid.dt * max_delta_eff
               << " > 0.1: grid may under-resolve the cavity rotation";
            rep.warnings.push_back(os.str());
        }
    }
    return rep;
}

PhysicalityReport gaussian_physicality(double n0, double m0, complexd c1, complexd c2) {
    if (n0 < 0.0 || m0 < 0.0)
        throw std::domain_error("gaussian_physicality: n0, m0 must be >= 0");

    PhysicalityReport rep;
    rep.cs_c1_margin = n0 * m0 - std::norm(c1);
    rep.cs_c1_ok = rep.cs_c1_margin >= -1e-12 * (1.0 + n0 * m0);
    const double c2_bound = std::min((n0 + 1.0) * m0, n0 * (m0 + 1.0));
    rep.cs_c2_margin = c2_bound - std::norm(c2);
    rep.cs_c2_ok = rep.cs_c2_margin >= -1e-12 * (1.0 + c2_bound);

    // Covariance matrix of the quadratures (x_a, p_a, x_b, p_b) with
    // x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); all second
    // moments other than n0, m0, c1, c2 vanish.
    const complexd I(0.0, 1.0);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = n0 + 0.5;
    m(1, 1) = n0 + 0.5;
    m(2, 2) = m0 + 0.5;
    m(3, 3) = m0 + 0.5;

    // cross-mode block from <a b^dag> = c1 (operators commute) and <a b> = c2
    m(0, 2) = m(2, 0) = std::real(c1 + c2);  // <x_a x_b>
    m(0, 3) = m(3, 0) = std::imag(c2 - c1);  // <x_a p_b>
    m(1, 2) = m(2, 1) = std::imag(c1 + c2);  // <p_a x_b>
    m(1, 3) = m(3, 1) = std::real(c1 - c2);  // <p_a p_b>

    Eigen::Matrix4cd omega = Eigen::Matrix4cd::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;

    const Eigen::Matrix4cd test = m + 0.5 * I * omega;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(test);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.uncertainty_ok = rep.min_eigenvalue >= -1e-9 * (1.0 + n0 + m0);
    return rep;
}

}  // namespace coolsim
