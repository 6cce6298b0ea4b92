#ifndef ZPD_QUAD_HPP_
#define ZPD_QUAD_HPP_

// Deterministic adaptive numerical integration. A globally adaptive
// bisection scheme compares nested Gauss-Legendre rules (12 vs 25 points)
// per panel and splits the worst panel until the summed error estimate
// meets the requested tolerance. Semi-infinite integrals of exponentially
// decaying integrands are truncated at a cutoff derived from the caller's
// decay scale, with the tail bound folded into the reported error.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "zpd/errors.hpp"

namespace zpd {

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated bound on the absolute error
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on P_n (machine precision, no coefficient tables).
inline const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static const auto make = [](int m) {
        std::vector<std::pair<double, double>> nw(m);
        for (int i = 0; i < m; ++i) {
            // Chebyshev initial guess, then Newton on P_m(x) = 0.
            double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return nw;
    };
    static const std::vector<std::pair<double, double>> g12 = make(12);
    static const std::vector<std::pair<double, double>> g25 = make(25);
    return n == 12 ? g12 : g25;
}

template <class F>
inline QuadResult panel_estimate(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double coarse = 0.0, fine = 0.0;
    for (const auto& [x, w] : gauss_legendre(12)) coarse += w * f(mid + half * x);
    for (const auto& [x, w] : gauss_legendre(25)) {
        const double v = f(mid + half * x);
        if (!std::isfinite(v)) throw DomainError("integrate: integrand is not finite at x = " +
                                                 std::to_string(mid + half * x));
        fine += w * v;
    }
    coarse *= half;
    fine *= half;
    return {fine, std::fabs(fine - coarse)};
}

}  // namespace detail

/// Adaptive integral of f over the finite interval [a, b].
template <class F>
QuadResult integrate_finite(F&& f, double a, double b, QuadSpec spec = {}) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate_finite: endpoints must be finite");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1)
        throw DomainError("integrate_finite: invalid QuadSpec");
    if (a == b) return {0.0, 0.0};
    const double sign = (b >= a) ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);

    struct Segment {
        double a, b, value, error;
        bool operator<(const Segment& o) const { return error < o.error; }
    };
    std::priority_queue<Segment> segs;
    auto first = detail::panel_estimate(f, a, b);
    segs.push({a, b, first.value, first.error});
    double total = first.value, total_err = first.error;

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (++splits > spec.max_subdivisions)
            throw ConvergenceError("integrate_finite: tolerance not met after " +
                                   std::to_string(spec.max_subdivisions) + " subdivisions");
        const Segment worst = segs.top();
        segs.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::panel_estimate(f, worst.a, mid);
        auto right = detail::panel_estimate(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        segs.push({worst.a, mid, left.value, left.error});
        segs.push({mid, worst.b, right.value, right.error});
    }
    return {sign * total, total_err};
}

/// Integral of f over [a, inf) for integrands with (at least) exponential
/// decay |f(t)| <~ M e^{-decay_scale * t} beyond some point. The domain is
/// truncated where the sampled envelope bound drops below abs_tol and the
/// closed-form tail bound M/decay_scale is added to the error estimate.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, double decay_scale, QuadSpec spec = {}) {
    if (!(decay_scale > 0.0)) throw DomainError("integrate_semi_infinite: decay_scale must be positive");
    if (!(std::isfinite(a))) throw DomainError("integrate_semi_infinite: lower endpoint must be finite");

    const double step = std::max(5.0 / decay_scale, 1.0);
    double cutoff = a + std::max(30.0 / decay_scale, 10.0);
    auto envelope = [&](double u) {
        double m = 0.0;
        for (int i = 0; i < 4; ++i) m = std::max(m, std::fabs(f(u + 0.25 * i * step)));
        return m;
    };
    int grow = 0;
    while (envelope(cutoff) / decay_scale > 0.5 * spec.abs_tol) {
        cutoff += step * (1 << std::min(grow / 8, 6));
        if (++grow > 400)
            throw ConvergenceError("integrate_semi_infinite: integrand tail decays too slowly for the given "
                                   "decay_scale (cutoff search exceeded)");
    }
    const double tail_bound = envelope(cutoff) / decay_scale;
    QuadResult r = integrate_finite(f, a, cutoff, spec);
    r.error += tail_bound;
    return r;
}

}  // namespace zpd

#endif  // ZPD_QUAD_HPP_
