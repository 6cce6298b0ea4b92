#ifndef ZPD_MODEL_HPP_
#define ZPD_MODEL_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "zpd/errors.hpp"

namespace zpd {

using Complex = std::complex<double>;

/// Wrap an angle into the principal range (-pi, pi].
inline double wrap_angle(double theta) {
    if (!std::isfinite(theta)) throw DomainError("wrap_angle: non-finite angle");
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::remainder(theta, two_pi);  // in [-pi, pi]
    if (t <= -std::numbers::pi) t += two_pi;
    return t;
}

/// Parameters of the distribution of Z = sum_{l=1}^{L} X_l * Y_l:
/// standard deviations of X and Y, the cross-correlation magnitude and
/// phase (mu = mu_abs * e^{j*epsilon}, plain non-conjugated product
/// convention), and the number of summed pair-products L.
struct ModelParams {
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double mu_abs = 0.0;
    double epsilon = 0.0;  // radians, stored in (-pi, pi]
    int big_l = 1;

    /// Product sigma_x*sigma_y, the scale that appears throughout.
    double sigma_prod() const { return sigma_x * sigma_y; }
    /// 1 - |mu|^2, the correlation deficit dividing every formula.
    double mu_deficit() const { return 1.0 - mu_abs * mu_abs; }
};

struct PolarPoint {
    double r = 0.0;      // amplitude, >= 0
    double theta = 0.0;  // phase in (-pi, pi]
};

/// Amplitude/phase of a sample; the two-argument arctangent result is
/// wrapped so theta lands in (-pi, pi] (atan2 itself can return -pi).
inline PolarPoint to_polar(Complex z) {
    PolarPoint p;
    p.r = std::abs(z);
    p.theta = (p.r == 0.0) ? 0.0 : std::atan2(z.imag(), z.real());
    if (p.theta <= -std::numbers::pi) p.theta = std::numbers::pi;
    return p;
}

/// Check all ModelParams invariants; returns the params with epsilon
/// normalized into (-pi, pi]. Idempotent.
inline ModelParams validate(ModelParams p) {
    if (!(std::isfinite(p.sigma_x) && p.sigma_x > 0.0))
        throw DomainError("ModelParams: sigma_x must be positive, got " + std::to_string(p.sigma_x));
    if (!(std::isfinite(p.sigma_y) && p.sigma_y > 0.0))
        throw DomainError("ModelParams: sigma_y must be positive, got " + std::to_string(p.sigma_y));
    if (!(std::isfinite(p.mu_abs) && p.mu_abs >= 0.0 && p.mu_abs < 1.0))
        throw DomainError("ModelParams: mu_abs must lie in [0,1), got " + std::to_string(p.mu_abs) +
                          " (1-|mu|^2 would vanish in every denominator)");
    if (p.big_l < 1) throw DomainError("ModelParams: L must be a positive integer, got " + std::to_string(p.big_l));
    p.epsilon = wrap_angle(p.epsilon);
    return p;
}

/// D = |mu| * cos(theta - epsilon); satisfies |D| <= mu_abs < 1.
inline double d_of_theta(const ModelParams& p, double theta) {
    return p.mu_abs * std::cos(theta - p.epsilon);
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace zpd

#endif  // ZPD_MODEL_HPP_
