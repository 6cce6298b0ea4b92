#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zpd/pdfs.hpp"

using namespace zpd;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

ModelParams reference_params(int big_l) { return validate({0.7, 1.5, 0.5, kPi / 6, big_l}); }

double amplitude_decay_rate(const ModelParams& p) {
    return 2.0 * (1.0 - p.mu_abs) / (p.sigma_prod() * p.mu_deficit());
}

double amplitude_mass(const ModelParams& p) {
    return integrate_semi_infinite([&](double r) { return r <= 0.0 ? 0.0 : amplitude_pdf(p, r); }, 0.0,
                                   amplitude_decay_rate(p), {1e-10, 1e-12, 4000})
        .value;
}
}  // namespace

TEST_CASE("joint CF is 1 at the origin and bounded by 1", "[pdfs]") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int big_l : {1, 3, 10}) {
        const auto p = reference_params(big_l);
        const Complex at0 = joint_cf(p, 0.0, 0.0);
        CHECK(at0.real() == Approx(1.0).epsilon(1e-14));
        CHECK(at0.imag() == Approx(0.0).margin(1e-14));
        for (int i = 0; i < 300; ++i) REQUIRE(std::abs(joint_cf(p, u(gen), u(gen))) <= 1.0 + 1e-12);
    }
}

TEST_CASE("joint CF matches the conditioned double-quadrature oracle at L = 1", "[pdfs][oracle]") {
    const auto p = reference_params(1);
    const double pts[][2] = {{1.0, 0.0}, {0.0, 1.0}, {0.7, -0.4}, {-1.3, 0.8}, {2.0, 2.0}};
    for (const auto& w : pts) {
        const Complex got = joint_cf(p, w[0], w[1]);
        const Complex ref = oracles::cf_double_quadrature(p, w[0], w[1]);
        CHECK(got.real() == Approx(ref.real()).margin(1e-6));
        CHECK(got.imag() == Approx(ref.imag()).margin(1e-6));
    }
}

TEST_CASE("joint PDF circular symmetry at mu = 0", "[pdfs]") {
    const auto p = validate({0.7, 1.5, 0.0, 0.0, 3});
    const double pairs[][4] = {{1.0, 0.0, 0.6, 0.8}, {0.3, 0.4, 0.5, 0.0}, {-1.2, 0.9, 1.5, 0.0}};
    for (const auto& q : pairs) {
        const double r2 = std::hypot(q[0], q[1]);
        const double scale = r2 / std::hypot(q[2], q[3]);
        CHECK(joint_pdf(p, q[0], q[1]) ==
              Approx(joint_pdf(p, q[2] * scale, q[3] * scale)).epsilon(1e-12));
    }
}

TEST_CASE("joint PDF closed-form special case K0(|z|)/(2 pi)", "[pdfs]") {
    // sigma_x = sigma_y = sqrt(2), mu = 0, L = 1
    const auto p = validate({std::numbers::sqrt2, std::numbers::sqrt2, 0.0, 0.0, 1});
    for (double r : {0.2, 1.0, 2.5}) {
        CHECK(joint_pdf(p, r, 0.0) == Approx(bessel_k0(r) / (2.0 * kPi)).epsilon(1e-13));
        CHECK(joint_pdf(p, 0.0, -r) == Approx(bessel_k0(r) / (2.0 * kPi)).epsilon(1e-13));
    }
}

TEST_CASE("joint PDF total mass is 1 (polar quadrature)", "[pdfs][oracle]") {
    for (int big_l : {1, 2, 5}) {
        const auto p = reference_params(big_l);
        auto over_theta = [&](double r) {
            return integrate_finite([&](double th) { return joint_pdf_polar(p, r, th); }, -kPi, kPi,
                                    {1e-10, 1e-13, 2000})
                .value;
        };
        const double mass =
            integrate_semi_infinite(over_theta, 0.0, amplitude_decay_rate(p), {1e-8, 1e-10, 2000}).value;
        REQUIRE(mass == Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("joint PDF origin handling", "[pdfs]") {
    CHECK_THROWS_AS(joint_pdf(reference_params(1), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(joint_pdf_polar(reference_params(1), 0.0, 0.3), DomainError);
    // L >= 2: the finite limit is approached radially
    for (int big_l : {2, 5}) {
        const auto p = reference_params(big_l);
        const double at0 = joint_pdf(p, 0.0, 0.0);
        CHECK(at0 > 0.0);
        CHECK(joint_pdf(p, 1e-8, 0.0) == Approx(at0).epsilon(1e-5));
        CHECK(joint_pdf_polar(p, 0.0, 1.0) == 0.0);
    }
    CHECK_THROWS_AS(joint_pdf_polar(reference_params(2), -0.5, 0.0), DomainError);
}

TEST_CASE("polar joint PDF equals r times the Cartesian one", "[pdfs][property]") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ur(0.01, 6.0), ut(-kPi, kPi);
    for (int big_l : {1, 4, 9}) {
        const auto p = reference_params(big_l);
        for (int i = 0; i < 200; ++i) {
            const double r = ur(gen), th = ut(gen);
            REQUIRE(joint_pdf_polar(p, r, th) ==
                    Approx(r * joint_pdf(p, r * std::cos(th), r * std::sin(th))).epsilon(1e-12));
        }
    }
}

TEST_CASE("phase integral of the polar PDF reproduces the amplitude PDF", "[pdfs][oracle]") {
    for (int big_l : {1, 5}) {
        const auto p = reference_params(big_l);
        for (double r : {0.3, 1.0, 2.7, 6.0}) {
            const double via_quad =
                integrate_finite([&](double th) { return joint_pdf_polar(p, r, th); }, -kPi, kPi).value;
            REQUIRE(via_quad == Approx(amplitude_pdf(p, r)).margin(1e-8));
        }
    }
}

TEST_CASE("radial integral of the polar PDF reproduces the exact phase PDF", "[pdfs][oracle]") {
    for (int big_l : {1, 3, 7}) {
        const auto p = reference_params(big_l);
        for (double th : {0.0, kPi / 6, -2.0, 3.0}) {
            const double via_quad =
                integrate_semi_infinite([&](double r) { return r <= 0.0 ? 0.0 : joint_pdf_polar(p, r, th); },
                                        0.0, amplitude_decay_rate(p))
                    .value;
            REQUIRE(via_quad == Approx(phase_pdf_exact(p, th)).margin(1e-7));
        }
    }
}

TEST_CASE("polar PDF peaks at theta = epsilon", "[pdfs]") {
    const auto p = reference_params(4);
    const double r = 1.7;
    const double peak = joint_pdf_polar(p, r, p.epsilon);
    for (int i = 0; i < 100; ++i) {
        const double th = -kPi + 2 * kPi * (i + 1) / 100.0;
        REQUIRE(joint_pdf_polar(p, r, th) <= peak * (1.0 + 1e-12));
    }
}

TEST_CASE("amplitude PDF normalization at the reference parameters", "[pdfs][oracle]") {
    for (int big_l : {1, 5, 10}) REQUIRE(amplitude_mass(reference_params(big_l)) == Approx(1.0).margin(1e-6));
}

TEST_CASE("amplitude PDF boundary behavior", "[pdfs]") {
    for (int big_l : {1, 2, 5}) {
        const auto p = reference_params(big_l);
        CHECK(amplitude_pdf(p, 0.0) == 0.0);
        CHECK(amplitude_pdf(p, 1e-300) >= 0.0);
    }
    CHECK_THROWS_AS(amplitude_pdf(reference_params(2), -1.0), DomainError);
}

TEST_CASE("legacy amplitude PDF reference value", "[pdfs]") {
    // L = 1, mu = 0, r = 1: value reduces to K0(1)
    const auto p = validate({0.7, 1.5, 0.0, 0.0, 1});
    CHECK(amplitude_pdf_legacy(p, 1.0) == Approx(bessel_k0(1.0)).epsilon(1e-13));
    CHECK(amplitude_pdf_legacy(p, 1.0) == Approx(0.42102443824070834).epsilon(1e-12));
}

TEST_CASE("legacy amplitude PDF ignores the sigmas entirely", "[pdfs]") {
    const auto a = validate({0.7, 1.5, 0.5, kPi / 6, 5});
    const auto b = validate({1.0, 1.0, 0.5, kPi / 6, 5});
    for (double r : {0.1, 0.9, 2.3, 7.0}) {
        const double va = amplitude_pdf_legacy(a, r);
        const double vb = amplitude_pdf_legacy(b, r);
        REQUIRE(va == vb);  // bit-identical
    }
}

TEST_CASE("legacy amplitude PDF mass at the reference parameters", "[pdfs][oracle]") {
    // The legacy curve is itself a normalized density (it coincides with the
    // corrected one at sigma_x*sigma_y = 2/(1-|mu|^2)); what the correction
    // changes is the shape. Record the computed mass.
    for (int big_l : {1, 5, 10}) {
        const auto p = reference_params(big_l);
        const double mass = integrate_semi_infinite(
                                [&](double r) { return r <= 0.0 ? 0.0 : amplitude_pdf_legacy(p, r); }, 0.0,
                                1.0 - p.mu_abs, {1e-10, 1e-12, 4000})
                                .value;
        REQUIRE(mass == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("corrected amplitude PDF does depend on the sigmas", "[pdfs]") {
    const auto a = validate({0.7, 1.5, 0.0, 0.0, 5});
    const auto b = validate({1.0, 1.0, 0.0, 0.0, 5});
    double max_rel = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double r = 10.0 * i / 200.0;
        const double va = amplitude_pdf(a, r), vb = amplitude_pdf(b, r);
        if (va > 1e-12) max_rel = std::max(max_rel, std::fabs(va - vb) / va);
    }
    CHECK(max_rel > 0.10);
}

TEST_CASE("exact phase PDF reduces to uniform at mu = 0", "[pdfs]") {
    for (int big_l : {1, 2, 7, 12}) {
        const auto p = validate({0.7, 1.5, 0.0, 0.0, big_l});
        for (double th : {-3.0, -0.5, 0.0, 1.1, 3.1}) {
            REQUIRE(phase_pdf_exact(p, th) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-13));
        }
    }
}

TEST_CASE("exact phase PDF integrates to 1", "[pdfs][oracle]") {
    for (int big_l : {1, 5, 10}) {
        const auto p = reference_params(big_l);
        const double mass =
            integrate_finite([&](double th) { return phase_pdf_exact(p, th); }, -kPi, kPi).value;
        REQUIRE(mass == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("exact phase PDF agrees with the quadrature route", "[pdfs][oracle]") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> ut(-kPi, kPi);
    for (int big_l = 1; big_l <= 10; ++big_l) {
        const auto p = reference_params(big_l);
        for (int i = 0; i < 100; ++i) {
            const double th = ut(gen);
            REQUIRE(phase_pdf_exact(p, th) == Approx(phase_pdf_quadrature(p, th)).margin(1e-7));
        }
    }
}

TEST_CASE("quadrature phase PDF basics", "[pdfs]") {
    const auto uniform = validate({1.0, 1.0, 0.0, 0.0, 1});
    CHECK(phase_pdf_quadrature(uniform, 0.7) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-10));

    const auto p = reference_params(3);
    for (double delta : {0.2, 0.9, 2.0}) {
        CHECK(phase_pdf_quadrature(p, p.epsilon + delta) ==
              Approx(phase_pdf_quadrature(p, p.epsilon - delta)).margin(1e-9));
    }
    // argmax on a grid sits at epsilon
    double best = -1.0, best_th = 0.0;
    for (int i = 0; i < 720; ++i) {
        const double th = -kPi + 2 * kPi * (i + 1) / 720.0;
        const double v = phase_pdf_quadrature(p, th);
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    CHECK(std::fabs(best_th - p.epsilon) < 2.0 * kPi / 720.0 + 1e-12);
    CHECK(phase_pdf_quadrature(p, p.epsilon) >= best);
}

TEST_CASE("series phase PDF domain and symmetry", "[pdfs]") {
    CHECK_THROWS_AS(phase_pdf_approx(reference_params(1), 0.0, 4), DomainError);
    CHECK_THROWS_AS(phase_pdf_approx(reference_params(3), 0.0, -1), DomainError);
    // mu = 0: constant in theta
    const auto flat = validate({0.7, 1.5, 0.0, 0.0, 4});
    const double v0 = phase_pdf_approx(flat, 0.0, 4);
    for (double th : {-2.0, 1.0, 3.0}) CHECK(phase_pdf_approx(flat, th, 4) == Approx(v0).epsilon(1e-12));
}

TEST_CASE("series phase PDF approaches the exact one for L >= 4 with T = L", "[pdfs]") {
    for (int big_l : {5, 7, 10}) {
        const auto p = reference_params(big_l);
        double sup = 0.0;
        for (int i = 0; i < 721; ++i) {
            const double th = -kPi + 2 * kPi * (i + 1) / 721.0;
            sup = std::max(sup, std::fabs(phase_pdf_approx(p, th, big_l) - phase_pdf_exact(p, th)));
        }
        REQUIRE(sup < 1e-2);
    }
}

TEST_CASE("PhaseEngine routes match the free functions", "[pdfs]") {
    const auto p = reference_params(6);
    const PhaseEngine exact(p, PhaseMethod::exact_jet);
    const PhaseEngine quad(p, PhaseMethod::quadrature);
    const PhaseEngine series(p, PhaseMethod::series_approx, 6);
    for (double th : {-2.5, 0.0, kPi / 6, 1.9}) {
        CHECK(exact(th) == phase_pdf_exact(p, th));
        CHECK(quad(th) == Approx(phase_pdf_quadrature(p, th)).epsilon(1e-14));
        CHECK(series(th) == Approx(phase_pdf_approx(p, th, 6)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(PhaseEngine(reference_params(1), PhaseMethod::series_approx, 3), DomainError);
}

TEST_CASE("curve generation over grids", "[pdfs]") {
    const auto p = reference_params(5);
    const auto grid = phase_grid(721);
    REQUIRE(grid.size() == 721);
    CHECK(grid.front() > -kPi);
    CHECK(grid.back() == Approx(kPi));

    const auto curve = make_phase_curve(PhaseEngine(p, PhaseMethod::exact_jet), grid);
    REQUIRE(curve.values.size() == 721);
    for (double v : curve.values) REQUIRE(std::isfinite(v));

    // trapezoid mass over the closed period
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        mass += 0.5 * (curve.values[i] + curve.values[i + 1]) * (grid[i + 1] - grid[i]);
    mass += 0.5 * (curve.values.back() + curve.values.front()) * (2.0 * kPi / 721.0);  // wrap panel
    CHECK(mass == Approx(1.0).margin(1e-4));

    const auto amp = make_amplitude_curve(p, amplitude_grid(12.0, 600));
    double amp_mass = 0.0;
    for (std::size_t i = 0; i + 1 < amp.grid.size(); ++i)
        amp_mass += 0.5 * (amp.values[i] + amp.values[i + 1]) * (amp.grid[i + 1] - amp.grid[i]);
    CHECK(amp_mass == Approx(1.0).margin(2e-3));  // tail + first-panel truncation
    for (double v : amp.values) REQUIRE(v >= 0.0);
}

TEST_CASE("Hankel-Nicholson reduction: oscillatory quadrature equals closed form", "[pdfs][oracle]") {
    const double pts[][2] = {{0.8, 0.3}, {1.5, -0.4}, {0.2, 1.1}, {-1.0, -0.9}, {2.2, 0.5}};
    for (int big_l : {1, 2, 5}) {
        const auto p = reference_params(big_l);
        const double s = p.sigma_prod(), m2 = p.mu_deficit();
        const double big_b = 2.0 / (s * m2);
        for (const auto& z : pts) {
            const double rho = std::hypot(z[0], z[1]);
            const double log_a = (big_l - 1) * std::log(4.0) - big_l * std::log(m2) - 2.0 * std::log(kPi) -
                                 2.0 * big_l * std::log(s) +
                                 2.0 * p.mu_abs * (z[0] * std::cos(p.epsilon) + z[1] * std::sin(p.epsilon)) /
                                     (s * m2);
            const double quad_side =
                2.0 * kPi * std::exp(log_a) * oracles::hankel_nicholson_quadrature(rho, big_b, big_l);
            const double closed = 2.0 * kPi * std::exp(log_a) * std::pow(rho, big_l - 1) /
                                  (gamma_int(big_l) * std::pow(2.0 * big_b, big_l - 1)) *
                                  bessel_kn(big_l - 1, big_b * rho);
            REQUIRE(quad_side == Approx(closed).epsilon(1e-6));
            // and the closed form assembled from A, B is exactly the joint PDF
            REQUIRE(closed == Approx(joint_pdf(p, z[0], z[1])).epsilon(1e-12));
        }
    }
}

TEST_CASE("inverting the CF numerically recovers the joint PDF at L = 1", "[pdfs][oracle][slow]") {
    const auto p = reference_params(1);
    const double pts[][2] = {{1.0, 0.5}, {0.5, 1.0}, {-0.5, 0.3}, {1.5, -0.2}, {0.3, 0.3}};
    for (const auto& z : pts) {
        const double inverted = oracles::cf_inversion(
            p, z[0], z[1], 80.0, [&](double w1, double w2) { return joint_cf(p, w1, w2); });
        REQUIRE(inverted == Approx(joint_pdf(p, z[0], z[1])).margin(1e-3));
    }
}

TEST_CASE("normalization across the parameter sweep", "[pdfs][property]") {
    for (double mu : {0.0, 0.3, 0.9}) {
        for (int big_l : {1, 2, 10}) {
            for (auto [sx, sy] : {std::pair{0.7, 1.5}, std::pair{1.0, 1.0}}) {
                const auto p = validate({sx, sy, mu, kPi / 6, big_l});
                REQUIRE(amplitude_mass(p) == Approx(1.0).margin(1e-6));
                const double phase_mass =
                    integrate_finite([&](double th) { return phase_pdf_exact(p, th); }, -kPi, kPi).value;
                REQUIRE(phase_mass == Approx(1.0).margin(1e-6));
            }
        }
    }
}
