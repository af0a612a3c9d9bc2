// quadrature.cpp — adaptive G7/K15 panels

#include "coolsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coolsim {

namespace {

// Kronrod-15 abscissae on [-1, 1] (positive half) and weights; the Gauss-7
// rule shares the odd-indexed nodes.
constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct PanelResult {
    long double kronrod;
    long double gauss;
};

PanelResult panel_gk15(const Integrand& f, double a, double b) {
    const long double c = 0.5L * (static_cast<long double>(a) + b);
    const long double h = 0.5L * (static_cast<long double>(b) - a);
    long double resk = 0.0L, resg = 0.0L;
    const long double fc = f(c);
    resk += kWgk[7] * fc;
    resg += kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const long double x = h * kXgk[i];
        const long double f1 = f(c - x);
        const long double f2 = f(c + x);
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    return {resk * h, resg * h};
}

struct Worker {
    const Integrand& f;
    const QuadratureOptions& opts;
    long evaluations{0};
    bool converged{true};
    long double total_err{0.0L};

    long double integrate(double a, double b, long double panel_scale, int depth) {
        const PanelResult r = panel_gk15(f, a, b);
        evaluations += 15;
        const long double err = std::abs(r.kronrod - r.gauss);
        const long double tol =
            std::max(static_cast<long double>(opts.abs_tol),
                     static_cast<long double>(opts.rel_tol) *
                         std::max(std::abs(r.kronrod), panel_scale));
        if (err <= tol || depth >= opts.max_depth) {
            if (err > tol) converged = false;
            total_err += err;
            return r.kronrod;
        }
        const double m = 0.5 * (a + b);
        return integrate(a, m, panel_scale, depth + 1) +
               integrate(m, b, panel_scale, depth + 1);
    }
};

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts) {
    QuadratureResult out;
    if (!(b > a)) return out;

    // initial partition: bound the oscillation phase per panel
    std::vector<double> edges{a};
    if (opts.oscillation_rate > 0.0 && opts.max_panel_phase > 0.0) {
        const double max_len = opts.max_panel_phase / opts.oscillation_rate;
        const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
        for (int i = 1; i < n; ++i)
            edges.push_back(a + (b - a) * static_cast<double>(i) / n);
    }
    edges.push_back(b);

    // first pass to set the global scale for relative tolerance
    long double scale = 0.0L;
    std::vector<PanelResult> first(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        first[i] = panel_gk15(f, edges[i], edges[i + 1]);
        scale += std::abs(first[i].kronrod);
    }

    Worker w{f, opts};
    w.evaluations = static_cast<long>(15 * (edges.size() - 1));
    long double acc = 0.0L;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc += w.integrate(edges[i], edges[i + 1], scale, 0);

    out.value = static_cast<double>(acc);
    out.error_estimate = static_cast<double>(w.total_err);
    out.evaluations = w.evaluations;
    out.converged = w.converged;
    return out;
}

}  // namespace coolsim
