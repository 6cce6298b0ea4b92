#ifndef ZPD_PDFS_HPP_
#define ZPD_PDFS_HPP_

// Analytic distribution evaluators for Z = sum_{l=1}^{L} X_l * Y_l with
// correlated zero-mean complex Gaussian pairs (X_l, Y_l):
//   - joint characteristic function of (Z_R, Z_I)
//   - corrected joint PDF (Cartesian and polar)
//   - corrected amplitude PDF and the legacy variance-independent one
//   - phase PDF, three routes: exact (jet-extracted derivative of the
//     closed-form kernel), direct quadrature, and the elementary-series
//     approximation valid for L >= 2.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "zpd/errors.hpp"
#include "zpd/jets.hpp"
#include "zpd/model.hpp"
#include "zpd/quad.hpp"
#include "zpd/specfun.hpp"

namespace zpd {

// ---------------------------------------------------------------------------
// Characteristic function
// ---------------------------------------------------------------------------

/// Joint CF of (Z_R, Z_I) at real frequencies (w1, w2):
///   Psi(j w1, j w2) = [ N / ((w1 - j k cos e)^2 + (w2 - j k sin e)^2 + C) ]^L
/// with k = 2|mu|/(s(1-|mu|^2)), N = 4/(s^2(1-|mu|^2)), C = 4/(s^2(1-|mu|^2)^2),
/// s = sigma_x*sigma_y. The squares are expanded using C - k^2 = N, so the
/// origin value is exactly 1 and there is no cancellation as |mu| -> 1.
inline Complex joint_cf(const ModelParams& p, double w1, double w2) {
    const double s = p.sigma_prod();
    const double m2 = p.mu_deficit();
    const double k = 2.0 * p.mu_abs / (s * m2);
    const double big_n = 4.0 / (s * s * m2);
    const Complex shift(w1 * w1 + w2 * w2,
                        -2.0 * k * (w1 * std::cos(p.epsilon) + w2 * std::sin(p.epsilon)));
    const Complex base = big_n / (big_n + shift);
    Complex out(1.0, 0.0);
    for (int i = 0; i < p.big_l; ++i) out *= base;  // integer power, exact at L moderate
    return out;
}

// ---------------------------------------------------------------------------
// Joint PDFs
// ---------------------------------------------------------------------------

namespace detail {

// log of the positive factor r^{L-1} K_{L-1}(b r) e^{exponent}, assembled in
// log space: r^L K_{L-1} under/overflows around L = 10 at moderate r.
inline double log_joint_radial(const ModelParams& p, double rho, double exponent_term) {
    const double s = p.sigma_prod();
    const double m2 = p.mu_deficit();
    const double b = 2.0 / (s * m2);
    const int l = p.big_l;
    double lg = std::numbers::ln2 - std::log(std::numbers::pi) - std::lgamma(static_cast<double>(l)) -
                (l + 1) * std::log(s) - std::log(m2);
    lg += (l - 1) * std::log(rho);
    lg += exponent_term - b * rho + std::log(bessel_kn_scaled(l - 1, b * rho));
    return lg;
}

}  // namespace detail

/// Corrected joint PDF of (Z_R, Z_I). For L = 1 the density has a log
/// singularity at the origin, so the exact origin is a DomainError there;
/// for L >= 2 the finite limit is returned.
inline double joint_pdf(const ModelParams& p, double z_r, double z_i) {
    const double rho = std::hypot(z_r, z_i);
    const double s = p.sigma_prod();
    const double m2 = p.mu_deficit();
    if (rho == 0.0) {
        if (p.big_l == 1)
            throw DomainError("joint_pdf: density diverges (log singularity) at the origin for L = 1");
        // limit of rho^{L-1} K_{L-1}(b rho): Gamma(L-1)/2 * (s m2)^{L-1}
        return std::exp((p.big_l - 2) * std::log(m2) - std::log(std::numbers::pi) -
                        std::log(static_cast<double>(p.big_l - 1)) - 2.0 * std::log(s));
    }
    const double exponent = 2.0 * p.mu_abs * (z_r * std::cos(p.epsilon) + z_i * std::sin(p.epsilon)) / (s * m2);
    return std::exp(detail::log_joint_radial(p, rho, exponent));
}

/// Joint PDF of amplitude R and phase Theta; equals r * joint_pdf at the
/// Cartesian image (polar Jacobian). r = 0 allowed only for L >= 2.
inline double joint_pdf_polar(const ModelParams& p, double r, double theta) {
    if (r < 0.0) throw DomainError("joint_pdf_polar: r must be nonnegative");
    if (r == 0.0) {
        if (p.big_l == 1) throw DomainError("joint_pdf_polar: r = 0 is excluded for L = 1");
        return 0.0;
    }
    const double s = p.sigma_prod();
    const double m2 = p.mu_deficit();
    const double exponent = 2.0 * p.mu_abs * r * std::cos(theta - p.epsilon) / (s * m2);
    return std::exp(detail::log_joint_radial(p, r, exponent) + std::log(r));
}

/// Joint PDF implied by the legacy (variance-independent) formula, i.e. the
/// density whose phase integral gives the legacy amplitude PDF. Used for the
/// side-by-side 2-D comparison grids.
inline double joint_pdf_legacy(const ModelParams& p, double z_r, double z_i) {
    const double rho = std::hypot(z_r, z_i);
    const double m2 = p.mu_deficit();
    const int l = p.big_l;
    if (rho == 0.0) {
        if (l == 1) throw DomainError("joint_pdf_legacy: density diverges at the origin for L = 1");
        // limit of rho^{L-1} K_{L-1}(rho): Gamma(L-1)/2 * 2^{L-1}
        return std::exp(l * std::log(m2) - std::log(std::numbers::pi) - 2.0 * std::numbers::ln2 -
                        std::log(static_cast<double>(l - 1)));
    }
    const double exponent = p.mu_abs * (z_r * std::cos(p.epsilon) + z_i * std::sin(p.epsilon));
    double lg = l * std::log(m2) - std::log(std::numbers::pi) - l * std::numbers::ln2 -
                std::lgamma(static_cast<double>(l));
    lg += (l - 1) * std::log(rho) + exponent - rho + std::log(bessel_kn_scaled(l - 1, rho));
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Amplitude PDFs
// ---------------------------------------------------------------------------

/// Corrected amplitude PDF
///   f_R(r) = 4 r^L / (Gamma(L) s^{L+1} (1-|mu|^2))
///            * I0(2|mu| r / (s(1-|mu|^2))) * K_{L-1}(2 r / (s(1-|mu|^2))).
/// Evaluated in log space; f_R(0) = 0 for every L >= 1 (the r^L factor
/// dominates the K_{L-1} singularity).
inline double amplitude_pdf(const ModelParams& p, double r) {
    if (r < 0.0) throw DomainError("amplitude_pdf: r must be nonnegative");
    if (r == 0.0) return 0.0;
    const double s = p.sigma_prod();
    const double m2 = p.mu_deficit();
    const double b = 2.0 / (s * m2);
    const int l = p.big_l;
    double lg = 2.0 * std::numbers::ln2 + l * std::log(r) - std::lgamma(static_cast<double>(l)) -
                (l + 1) * std::log(s) - std::log(m2);
    // I0(mu b r) K_{L-1}(b r) = i0_scaled * kn_scaled * e^{-(1-mu) b r}
    lg += std::log(bessel_i0_scaled(p.mu_abs * b * r)) + std::log(bessel_kn_scaled(l - 1, b * r));
    lg -= (1.0 - p.mu_abs) * b * r;
    return std::exp(lg);
}

/// Legacy amplitude PDF
///   f(r) = (1-|mu|^2)^L r^L / (2^{L-1} (L-1)!) * I0(|mu| r) * K_{L-1}(r).
/// Intentionally reproduces the superseded formula: note the absence of
/// sigma_x, sigma_y.
inline double amplitude_pdf_legacy(const ModelParams& p, double r) {
    if (r < 0.0) throw DomainError("amplitude_pdf_legacy: r must be nonnegative");
    if (r == 0.0) return 0.0;
    const double m2 = p.mu_deficit();
    const int l = p.big_l;
    double lg = l * std::log(m2) + l * std::log(r) - (l - 1) * std::numbers::ln2 -
                std::lgamma(static_cast<double>(l));
    lg += std::log(bessel_i0_scaled(p.mu_abs * r)) + std::log(bessel_kn_scaled(l - 1, r));
    lg -= (1.0 - p.mu_abs) * r;
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Phase PDFs
// ---------------------------------------------------------------------------

/// Exact phase PDF via the (L-1)-th derivative at c = 1 of
///   h(c) = 1/(c - D^2) + D (c - D^2)^{-3/2} arccos(-D / sqrt(c)),
/// D = |mu| cos(theta - epsilon):
///   f_Theta(theta) = (1-|mu|^2)^L (-1)^{L-1} / (2 pi Gamma(L)) * h^(L-1)(1).
/// The derivative is extracted from jet arithmetic; the Gamma(L) factor
/// cancels against the k! in the derivative, so the result is assembled from
/// the jet coefficient directly.
inline double phase_pdf_exact(const ModelParams& p, double theta) {
    const int l = p.big_l;
    const double d = d_of_theta(p, theta);
    const int order = l - 1;
    const TaylorJet c = TaylorJet::variable(order);
    const TaylorJet w = c - d * d;  // constant term 1 - D^2 > 0
    TaylorJet h = jet_pow(w, -1.0);
    if (d != 0.0) h = h + d * (jet_pow(w, -1.5) * jet_arccos_inv_sqrt(d, order));
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    const double value = std::pow(p.mu_deficit(), l) * sign * h[order] / (2.0 * std::numbers::pi);
    return value;
}

/// Phase PDF by direct semi-infinite quadrature of
///   f_Theta(theta) = (1-|mu|^2)^L / (pi 2^L Gamma(L))
///                    * int_0^inf t^L e^{D t} K_{L-1}(t) dt.
/// Serves as the independent oracle for the other two phase routes.
inline double phase_pdf_quadrature(const ModelParams& p, double theta, QuadSpec spec = {}) {
    const int l = p.big_l;
    const double d = d_of_theta(p, theta);
    const double pref = std::exp(l * std::log(0.5 * p.mu_deficit()) - std::lgamma(static_cast<double>(l))) /
                        std::numbers::pi;
    auto integrand = [l, d](double t) {
        if (t <= 0.0) return 0.0;
        // t^L e^{Dt} K_{L-1}(t) = exp(L log t + (D-1) t) * kn_scaled
        return std::exp(l * std::log(t) + (d - 1.0) * t) * bessel_kn_scaled(l - 1, t);
    };
    const QuadResult r = integrate_semi_infinite(integrand, 0.0, 1.0 - d, spec);
    return pref * r.value;
}

/// Series-approximate phase PDF (valid for L >= 2):
///   f_Theta(theta) ~= (1-|mu|^2)^L / (pi 2^L Gamma(L))
///     * sum_{q=0}^{T} sum_{l=q}^{T} Lambda(L-1,l,q) Gamma(q+2) / (1 - D)^{q+2}.
/// Truncation can make the raw value slightly negative; it is returned
/// unclamped. Clamping is the caller's choice.
inline double phase_pdf_approx(const ModelParams& p, double theta, int t_terms) {
    if (p.big_l < 2) throw DomainError("phase_pdf_approx: L >= 2 required (the series diverges for L = 1)");
    if (t_terms < 0) throw DomainError("phase_pdf_approx: t_terms must be nonnegative");
    const int l = p.big_l;
    const auto table = LambdaCoeffs::build(l - 1, t_terms);
    const double d = d_of_theta(p, theta);
    const double pref = std::exp(l * std::log(0.5 * p.mu_deficit()) - std::lgamma(static_cast<double>(l))) /
                        std::numbers::pi;
    double sum = 0.0;
    double qfact = 1.0;  // Gamma(q+2) = (q+1)!
    for (int q = 0; q <= t_terms; ++q) {
        qfact *= (q + 1);
        double col = 0.0;
        for (int ll = q; ll <= t_terms; ++ll) col += table.values[ll][q];
        sum += col * qfact / std::pow(1.0 - d, q + 2);
    }
    return pref * sum;
}

// ---------------------------------------------------------------------------
// Curve evaluation
// ---------------------------------------------------------------------------

enum class CurveKind { amplitude, phase, joint_slice };
enum class PhaseMethod { exact_jet, series_approx, quadrature };

struct PdfCurve {
    std::vector<double> grid;
    std::vector<double> values;
    CurveKind kind = CurveKind::phase;
};

/// Phase-PDF evaluator with the per-(order, T) Lambda column sums cached, so
/// sweeping a theta grid does not recompute Gamma ratios.
class PhaseEngine {
  public:
    PhaseEngine(ModelParams params, PhaseMethod method, int t_terms = 0)
        : params_(validate(params)), method_(method), t_terms_(t_terms) {
        if (method_ == PhaseMethod::series_approx) {
            if (params_.big_l < 2)
                throw DomainError("PhaseEngine: L >= 2 required for the series approximation");
            const auto table = LambdaCoeffs::build(params_.big_l - 1, t_terms_);
            weights_ = table.column_sums();
            double qfact = 1.0;
            for (int q = 0; q <= t_terms_; ++q) {
                qfact *= (q + 1);
                weights_[q] *= qfact;
            }
            prefactor_ = std::exp(params_.big_l * std::log(0.5 * params_.mu_deficit()) -
                                  std::lgamma(static_cast<double>(params_.big_l))) /
                         std::numbers::pi;
        }
    }

    const ModelParams& params() const { return params_; }
    PhaseMethod method() const { return method_; }
    int t_terms() const { return t_terms_; }

    double operator()(double theta) const {
        switch (method_) {
            case PhaseMethod::exact_jet:
                return phase_pdf_exact(params_, theta);
            case PhaseMethod::quadrature:
                return phase_pdf_quadrature(params_, theta);
            case PhaseMethod::series_approx: {
                const double d = d_of_theta(params_, theta);
                double sum = 0.0;
                for (int q = t_terms_; q >= 0; --q) sum += weights_[q] / std::pow(1.0 - d, q + 2);
                return prefactor_ * sum;
            }
        }
        throw DomainError("PhaseEngine: unknown method");
    }

  private:
    ModelParams params_;
    PhaseMethod method_;
    int t_terms_;
    std::vector<double> weights_;  // series only: Gamma(q+2) * column sums
    double prefactor_ = 0.0;
};

inline PdfCurve make_phase_curve(const PhaseEngine& engine, std::vector<double> grid) {
    PdfCurve c;
    c.kind = CurveKind::phase;
    c.values.reserve(grid.size());
    for (double th : grid) c.values.push_back(engine(th));
    c.grid = std::move(grid);
    return c;
}

inline PdfCurve make_amplitude_curve(const ModelParams& p, std::vector<double> grid, bool legacy = false) {
    PdfCurve c;
    c.kind = CurveKind::amplitude;
    c.values.reserve(grid.size());
    for (double r : grid) c.values.push_back(legacy ? amplitude_pdf_legacy(p, r) : amplitude_pdf(p, r));
    c.grid = std::move(grid);
    return c;
}

/// Radial slice of the joint PDF along the ray at angle theta.
inline PdfCurve make_joint_slice_curve(const ModelParams& p, double theta, std::vector<double> grid) {
    PdfCurve c;
    c.kind = CurveKind::joint_slice;
    c.values.reserve(grid.size());
    const double ct = std::cos(theta), st = std::sin(theta);
    for (double r : grid) c.values.push_back(joint_pdf(p, r * ct, r * st));
    c.grid = std::move(grid);
    return c;
}

/// Uniform grid helpers. Phase grids are half-open (-pi, pi]; amplitude
/// grids start strictly above zero so that L = 1 curves avoid the K_0
/// singularity at the origin.
inline std::vector<double> phase_grid(int n) {
    if (n < 1) throw DomainError("phase_grid: need at least one point");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -std::numbers::pi + 2.0 * std::numbers::pi * (i + 1) / n;
    return g;
}

inline std::vector<double> amplitude_grid(double r_max, int n) {
    if (n < 1 || !(r_max > 0.0)) throw DomainError("amplitude_grid: need r_max > 0 and n >= 1");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = r_max * (i + 1) / n;
    return g;
}

}  // namespace zpd

#endif  // ZPD_PDFS_HPP_
