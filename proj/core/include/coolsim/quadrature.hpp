// quadrature.hpp — adaptive Gauss-Kronrod integration for the bath integrals.
//
// G7/K15 panels with recursive bisection. Evaluation points and accumulation
// are long double so that strongly oscillatory integrands (frequency
// integrals at large t, where the result sits many orders below the positive
// mass) keep enough headroom against cancellation.

#pragma once

#include <functional>

namespace coolsim {

struct QuadratureResult {
    double value{0.0};
    double error_estimate{0.0};
    long evaluations{0};
    bool converged{true};
};

struct QuadratureOptions {
    double abs_tol{0.0};
    double rel_tol{1e-10};
    int max_depth{28};
    // panels are pre-split so that no initial panel spans more than
    // max_panel_phase radians of the fastest oscillation (0 = no pre-split)
    double oscillation_rate{0.0};
    double max_panel_phase{2.0};
};

// integrate f over the finite interval [a, b]
using Integrand = std::function<long double(long double)>;

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts = {});

}  // namespace coolsim
