#ifndef ZPD_TESTS_ORACLES_HPP_
#define ZPD_TESTS_ORACLES_HPP_

// Test-only oracles: independent numerical routes (integral representations,
// power series, finite differences, oscillatory quadrature, rejection
// sampling) used to cross-check the library. Nothing here may call the
// implementation path it is checking.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "zpd/model.hpp"
#include "zpd/quad.hpp"

namespace oracles {

// K_n(x) = int_0^inf e^{-x cosh v} cosh(n v) dv, evaluated in log space so
// the large-n / small-x peak does not overflow.
inline double kn_integral(int n, double x) {
    auto log_f = [n, x](double v) {
        const double c = std::cosh(n * v);
        const double log_cosh_nv = (c < 1e306) ? std::log(c) : n * v - std::numbers::ln2;
        return -x * std::cosh(v) + log_cosh_nv;
    };
    const double v_peak = std::asinh(n / x);
    const double log_peak = log_f(v_peak);
    double hi = v_peak;
    while (log_f(hi) > log_peak - 46.0) hi += 0.5;
    auto g = [&](double v) { return std::exp(log_f(v) - log_peak); };
    const auto r = zpd::integrate_finite(g, 0.0, hi, {1e-13, 1e-300, 4000});
    return std::exp(log_peak) * r.value;
}

// K_0(x) = int_1^inf e^{-x t} / sqrt(t^2 - 1) dt; substitution t = 1 + s^2
// removes the endpoint singularity.
inline double k0_sqrt_integral(double x) {
    auto f = [x](double s) { return 2.0 * std::exp(-x * s * s) / std::sqrt(s * s + 2.0); };
    const double cutoff = std::sqrt(46.0 / x) + 1.0;
    const auto r = zpd::integrate_finite(f, 0.0, cutoff, {1e-13, 1e-300, 4000});
    return std::exp(-x) * r.value;
}

// K_1(x) = x int_1^inf e^{-x t} sqrt(t^2 - 1) dt, same substitution.
inline double k1_sqrt_integral(double x) {
    auto f = [x](double s) { return 2.0 * std::exp(-x * s * s) * s * s * std::sqrt(s * s + 2.0); };
    const double cutoff = std::sqrt(60.0 / x) + 1.0;
    const auto r = zpd::integrate_finite(f, 0.0, cutoff, {1e-13, 1e-300, 4000});
    return x * std::exp(-x) * r.value;
}

// I_0(x) = (1/pi) int_0^pi e^{x cos t} dt (integral representation).
inline double i0_integral(double x) {
    const auto r = zpd::integrate_finite([x](double t) { return std::exp(x * std::cos(t)); }, 0.0,
                                         std::numbers::pi, {1e-13, 1e-300, 4000});
    return r.value / std::numbers::pi;
}

// Power series I_nu(x) = sum_k (x/2)^{2k+nu} / (k! (k+nu)!), nu in {0, 1}.
inline double i_series(int nu, double x) {
    const double h = 0.25 * x * x;
    double term = (nu == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= h / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// k-th derivative at x by central differences with three-level Richardson
// extrapolation (error O(h^6)).
inline double central_derivative(const std::function<double(double)>& f, double x, int k, double h) {
    auto delta = [&](double hh) {
        double s = 0.0, binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j) binom = binom * (k - j + 1) / j;
            s += ((j % 2 == 0) ? 1.0 : -1.0) * binom * f(x + (0.5 * k - j) * hh);
        }
        return s / std::pow(hh, k);
    };
    const double d1 = delta(h), d2 = delta(0.5 * h), d3 = delta(0.25 * h);
    const double r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

// Double-quadrature oracle for the conditioned-CF integral (L = 1 route):
//   Psi(w1, w2) = 1/(pi sx^2) int_0^inf int_0^{2pi} t exp(-t^2/sx^2
//     + j (sy |mu| / sx)(w1 cos e + w2 sin e) t^2
//     - (sy^2/4)(1-|mu|^2)(w1^2+w2^2) t^2) dphi dt
inline zpd::Complex cf_double_quadrature(const zpd::ModelParams& p, double w1, double w2) {
    const double sx2 = p.sigma_x * p.sigma_x;
    const double alpha = 1.0 / sx2 + 0.25 * p.sigma_y * p.sigma_y * p.mu_deficit() * (w1 * w1 + w2 * w2);
    const double beta =
        p.sigma_y * p.mu_abs / p.sigma_x * (w1 * std::cos(p.epsilon) + w2 * std::sin(p.epsilon));
    const zpd::QuadSpec spec{1e-11, 1e-14, 4000};
    auto run = [&](bool imag_part) {
        auto f = [&](double t) {
            auto over_phi = [&](double) {  // integrand is phi-free; integrate it literally anyway
                const double mag = t * std::exp(-alpha * t * t);
                return mag * (imag_part ? std::sin(beta * t * t) : std::cos(beta * t * t));
            };
            return zpd::integrate_finite(over_phi, 0.0, 2.0 * std::numbers::pi, spec).value;
        };
        return zpd::integrate_semi_infinite(f, 0.0, alpha, spec).value / (std::numbers::pi * sx2);
    };
    return {run(false), run(true)};
}

// Oscillatory Hankel-type integral int_0^inf u J0(u a) / (B^2 + u^2)^L du,
// split at the zeros of J0(u a) and summed with an averaging (Euler-type)
// acceleration of the alternating partial sums.
inline double hankel_nicholson_quadrature(double a, double big_b, int big_l) {
    auto integrand = [=](double u) {
        return u * std::cyl_bessel_j(0.0, u * a) / std::pow(big_b * big_b + u * u, big_l);
    };
    // McMahon approximation of the J0 zeros is plenty for panel splitting.
    auto j0_zero = [](int k) {
        const double beta = (k - 0.25) * std::numbers::pi;
        return beta + 1.0 / (8.0 * beta);
    };
    const int panels = 48;
    std::vector<double> partial;
    partial.reserve(panels);
    double acc = 0.0, prev = 0.0;
    const zpd::QuadSpec spec{1e-12, 1e-16, 4000};
    for (int k = 1; k <= panels; ++k) {
        const double edge = j0_zero(k) / a;
        acc += zpd::integrate_finite(integrand, prev, edge, spec).value;
        prev = edge;
        partial.push_back(acc);
    }
    // repeated averaging of the tail of partial sums
    std::vector<double> row(partial.end() - 32, partial.end());
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return row[0];
}

// Truncated 2-D inverse-CF integral (iterated adaptive panels).
inline double cf_inversion(const zpd::ModelParams& p, double z_r, double z_i, double cutoff,
                           const std::function<zpd::Complex(double, double)>& cf) {
    const zpd::QuadSpec inner{1e-8, 1e-11, 4000}, outer{1e-7, 1e-10, 4000};
    auto outer_f = [&](double w1) {
        auto inner_f = [&](double w2) {
            const zpd::Complex v = cf(w1, w2) * std::exp(zpd::Complex(0.0, -(w1 * z_r + w2 * z_i)));
            return v.real();
        };
        return zpd::integrate_finite(inner_f, -cutoff, cutoff, inner).value;
    };
    const double two_pi = 2.0 * std::numbers::pi;
    return zpd::integrate_finite(outer_f, -cutoff, cutoff, outer).value / (two_pi * two_pi);
}

// Rejection sampler from an arbitrary bounded density on [lo, hi].
inline std::vector<double> rejection_sample(const std::function<double(double)>& pdf, double lo, double hi,
                                            std::size_t n, std::uint64_t seed) {
    double peak = 0.0;
    for (int i = 0; i <= 2000; ++i) peak = std::max(peak, pdf(lo + (hi - lo) * i / 2000.0));
    peak *= 1.10;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ux(lo, hi), uy(0.0, peak);
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double x = ux(gen);
        if (uy(gen) <= pdf(x)) out.push_back(x);
    }
    return out;
}

}  // namespace oracles

#endif  // ZPD_TESTS_ORACLES_HPP_
