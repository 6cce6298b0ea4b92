#ifndef ZPD_JETS_HPP_
#define ZPD_JETS_HPP_

// Truncated Taylor-series (jet) arithmetic around the expansion point c = 1,
// used to extract high-order derivatives of algebraic/inverse-trigonometric
// compositions exactly up to floating-point rounding. coeffs[k] holds
// f^(k)(1)/k!.

#include <cmath>
#include <string>
#include <vector>

#include "zpd/errors.hpp"

namespace zpd {

class TaylorJet {
  public:
    TaylorJet() : coeffs_(1, 0.0) {}
    explicit TaylorJet(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DomainError("TaylorJet: at least one coefficient required");
    }

    /// Jet of the constant function `value`.
    static TaylorJet constant(double value, int order) {
        check_order(order);
        std::vector<double> c(order + 1, 0.0);
        c[0] = value;
        return TaylorJet(std::move(c));
    }

    /// Jet of the identity function c at c = 1: [1, 1, 0, ..., 0].
    static TaylorJet variable(int order) {
        check_order(order);
        std::vector<double> c(order + 1, 0.0);
        c[0] = 1.0;
        if (order >= 1) c[1] = 1.0;
        return TaylorJet(std::move(c));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    /// k-th derivative at the expansion point: f^(k)(1) = k! * coeffs[k].
    double derivative_at_one(int k) const {
        if (k < 0 || k > order())
            throw DomainError("derivative_at_one: k = " + std::to_string(k) + " exceeds jet order " +
                              std::to_string(order()));
        double kfact = 1.0;
        for (int i = 2; i <= k; ++i) kfact *= i;
        return kfact * coeffs_[static_cast<std::size_t>(k)];
    }

    friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
        auto c = matched(a, b, "+");
        for (int k = 0; k <= a.order(); ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
        return TaylorJet(std::move(c));
    }
    friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) {
        auto c = matched(a, b, "-");
        for (int k = 0; k <= a.order(); ++k) c[k] = a.coeffs_[k] - b.coeffs_[k];
        return TaylorJet(std::move(c));
    }
    friend TaylorJet operator+(const TaylorJet& a, double s) {
        auto c = a.coeffs_;
        c[0] += s;
        return TaylorJet(std::move(c));
    }
    friend TaylorJet operator+(double s, const TaylorJet& a) { return a + s; }
    friend TaylorJet operator-(const TaylorJet& a, double s) { return a + (-s); }
    friend TaylorJet operator-(double s, const TaylorJet& a) { return (a * -1.0) + s; }
    friend TaylorJet operator*(const TaylorJet& a, double s) {
        auto c = a.coeffs_;
        for (auto& v : c) v *= s;
        return TaylorJet(std::move(c));
    }
    friend TaylorJet operator*(double s, const TaylorJet& a) { return a * s; }

    /// Cauchy product truncated to the common order.
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
        auto c = matched(a, b, "*");
        for (int k = 0; k <= a.order(); ++k) {
            double s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.coeffs_[j] * b.coeffs_[k - j];
            c[k] = s;
        }
        return TaylorJet(std::move(c));
    }

    /// Recursive long division; requires b[0] != 0.
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
        auto c = matched(a, b, "/");
        if (b.coeffs_[0] == 0.0) throw DomainError("TaylorJet division by a jet with zero constant term");
        for (int k = 0; k <= a.order(); ++k) {
            double s = a.coeffs_[k];
            for (int j = 0; j < k; ++j) s -= c[j] * b.coeffs_[k - j];
            c[k] = s / b.coeffs_[0];
        }
        return TaylorJet(std::move(c));
    }
    friend TaylorJet operator/(double s, const TaylorJet& b) {
        return TaylorJet::constant(s, b.order()) / b;
    }
    friend TaylorJet operator/(const TaylorJet& a, double s) { return a * (1.0 / s); }

  private:
    static void check_order(int order) {
        if (order < 0) throw DomainError("TaylorJet: order must be nonnegative");
    }
    static std::vector<double> matched(const TaylorJet& a, const TaylorJet& b, const char* op) {
        if (a.order() != b.order())
            throw DomainError(std::string("TaylorJet: mismatched orders in '") + op + "'");
        return std::vector<double>(a.coeffs_.size(), 0.0);
    }

    std::vector<double> coeffs_;
};

/// base^exponent via the standard ODE recurrence u w' = alpha u' w.
/// Requires base[0] > 0.
inline TaylorJet jet_pow(const TaylorJet& base, double exponent) {
    const auto& u = base.coeffs();
    if (!(u[0] > 0.0)) throw DomainError("jet_pow: base must have a positive constant term");
    const int n = base.order();
    std::vector<double> w(n + 1, 0.0);
    w[0] = std::pow(u[0], exponent);
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (exponent * j - (k - j)) * u[j] * w[k - j];
        w[k] = s / (k * u[0]);
    }
    return TaylorJet(std::move(w));
}

inline TaylorJet jet_sqrt(const TaylorJet& base) { return jet_pow(base, 0.5); }

/// arccos of a jet with |u[0]| < 1, via g' = -u'/sqrt(1 - u^2) and
/// coefficient-wise integration, anchored at g[0] = arccos(u[0]).
inline TaylorJet jet_arccos(const TaylorJet& u) {
    if (!(std::fabs(u[0]) < 1.0)) throw DomainError("jet_arccos: |u(1)| must be < 1");
    const int n = u.order();
    std::vector<double> g(n + 1, 0.0);
    g[0] = std::acos(u[0]);
    if (n >= 1) {
        // Work one order down: u', sqrt(1-u^2) and their quotient at order n-1.
        std::vector<double> du(n, 0.0);
        for (int k = 0; k < n; ++k) du[k] = (k + 1) * u[k + 1];
        std::vector<double> v(n, 0.0);
        for (int k = 0; k < n; ++k) v[k] = u.coeffs()[k];
        TaylorJet low(std::move(v));
        TaylorJet root = jet_pow(1.0 - low * low, 0.5);
        TaylorJet dg = (TaylorJet(std::move(du)) * -1.0) / root;
        for (int k = 1; k <= n; ++k) g[k] = dg[k - 1] / k;
    }
    return TaylorJet(std::move(g));
}

/// Jet of g(c) = arccos(-d / sqrt(c)) at c = 1, for |d| < 1.
inline TaylorJet jet_arccos_inv_sqrt(double d, int order) {
    if (!(std::fabs(d) < 1.0)) throw DomainError("jet_arccos_inv_sqrt: |d| must be < 1");
    TaylorJet u = jet_pow(TaylorJet::variable(order), -0.5) * (-d);
    return jet_arccos(u);
}

}  // namespace zpd

#endif  // ZPD_JETS_HPP_
