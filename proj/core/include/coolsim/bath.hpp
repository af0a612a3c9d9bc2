// bath.hpp — spectral density and the two reservoir kernels: the memory
// kernel f(t) driving the mechanics and the stationary thermal noise kernel
// f_th(tau1 - tau2).
//
// Conventions (see also moments.hpp): kernels are defined so that they are
// positive-type correlation kernels of Hermitian noise sources,
//   f(t)        = 2i * integral J(w) sin(w t) dw           (purely imaginary)
//   f_th(dt)    = integral J(w) [(nbar+1) e^{-i w dt} + nbar e^{+i w dt}] dw
// The closed Gamma-function forms are the production path; quadrature backs
// them in tests and for Bose-Einstein occupations.

#pragma once

#include <vector>

#include "coolsim/model.hpp"

namespace coolsim {

// ------------------------------ spectral density -----------------------------

// Ohmic family J(w) = eta * w * (w/w_l)^(s-1) * exp(-w/w_l).
struct SpectralDensity {
    double eta{1e-5};
    double omega_l{5.0};
    double s_exponent{1.0};

    static SpectralDensity from_params(const PhysicalParams& p) {
        return {p.eta, p.omega_l, p.s_exponent};
    }

    // J(w); w >= 0 (throws std::domain_error otherwise)
    double operator()(double omega) const;

    // integral of J over [0, inf) = eta * w_l^2 * Gamma(s+1)
    double total_weight() const;

    // truncation point for frequency quadrature; the exponential weight is
    // below 1e-17 there
    double quadrature_omega_max() const { return omega_l * (40.0 + 10.0 * s_exponent); }
};

double spectral_density(const SpectralDensity& sd, double omega);

// ------------------------------- memory kernel -------------------------------

// closed form f(t) = 2i eta w_l^2 Gamma(s+1) sin((s+1) atan(w_l t)) /
//                    (1 + w_l^2 t^2)^((s+1)/2); t >= 0
complexd memory_kernel(const SpectralDensity& sd, double t);

// Im f(t) as a real number (f is purely imaginary)
double memory_kernel_imag(const SpectralDensity& sd, double t);

// defining integral evaluated by adaptive quadrature (test / validation path)
complexd memory_kernel_quadrature(const SpectralDensity& sd, double t,
                                  double rel_tol = 1e-12);

// ------------------------------- thermal kernel ------------------------------

// vacuum part integral J(w) e^{-i w dt} dw in closed form
complexd vacuum_kernel(const SpectralDensity& sd, double dt_diff);

// f_th by adaptive quadrature for an arbitrary occupation; tau1, tau2 >= 0
complexd thermal_kernel(const SpectralDensity& sd, const Occupation& occ, double tau1,
                        double tau2, double rel_tol = 1e-10);

// closed form for flat occupation
complexd thermal_kernel_flat(const SpectralDensity& sd, double m_k, double dt_diff);

// Bose-Einstein occupation via the exponential series with an integral tail
// correction (used to build tables without per-entry quadrature)
complexd thermal_kernel_bose(const SpectralDensity& sd, double temperature,
                             double dt_diff);

// -------------------------------- kernel tables ------------------------------

// Kernels sampled on the difference grid dt*d, d = 0..n_steps. f(0) = 0 and
// Re f = 0 hold by construction; f_th(-d) = conj(f_th(d)).
class KernelTable {
public:
    KernelTable() = default;

    static KernelTable build(const SpectralDensity& sd, const Occupation& occ,
                             const TimeGrid& grid, bool with_thermal = true);

    const TimeGrid& grid() const { return grid_; }

    bool has_thermal() const { return !f_th_.empty(); }

    double f_imag(std::size_t d) const { return f_imag_[d]; }
    complexd f(std::size_t d) const { return {0.0, f_imag_[d]}; }

    // signed difference index
    complexd f_th(long d) const {
        return d >= 0 ? f_th_[static_cast<std::size_t>(d)]
                      : std::conj(f_th_[static_cast<std::size_t>(-d)]);
    }

    const std::vector<double>& f_imag_values() const { return f_imag_; }
    const std::vector<complexd>& f_th_values() const { return f_th_; }

private:
    TimeGrid grid_{};
    std::vector<double> f_imag_;
    std::vector<complexd> f_th_;
};

}  // namespace coolsim
