#include "onofri/geometry.hpp"

#include "onofri/numeric.hpp"
#include "onofri/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace onofri;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("dimension validation") {
    CHECK_THROWS_AS(Dimension(1), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(0), std::invalid_argument);
    CHECK(Dimension(2).n == 2);
}

TEST_CASE("constants: closed-form values") {
    const GeometryConstants g2 = constants(Dimension(2));
    CHECK(g2.ball_volume == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(g2.sphere_measure == doctest::Approx(2 * kPi).epsilon(1e-15));
    CHECK(g2.omega_tilde == doctest::Approx(16 * kPi).epsilon(1e-15));
    CHECK(g2.harmonic == Rational(1));

    const GeometryConstants g3 = constants(Dimension(3));
    CHECK(g3.ball_volume == doctest::Approx(4.0 / 3.0 * kPi).epsilon(1e-14));
    CHECK(g3.harmonic == Rational(BigInt(3), BigInt(2)));
    CHECK(g3.omega_tilde == doctest::Approx(243 * kPi).epsilon(1e-14));

    CHECK(constants(Dimension(4)).harmonic == Rational(BigInt(11), BigInt(6)));
}

TEST_CASE("mu_density values and monotonicity") {
    const Dimension d2(2);
    CHECK(mu_density(d2, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
    CHECK(mu_density(d2, 1.0) == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-15));
    CHECK_THROWS_AS(mu_density(d2, -0.5), std::domain_error);

    for (int n = 2; n <= 6; ++n) {
        const Dimension dim(n);
        double prev = mu_density(dim, 0.0);
        for (double r : {0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
            const double m = mu_density(dim, r);
            CHECK(m > 0.0);
            CHECK(m < prev);
            prev = m;
        }
        // tail decay rate r^{-n^2/(n-1)}
        const double p = double(n) * n / (n - 1);
        const double ratio = mu_density(dim, 2e3) / mu_density(dim, 1e3);
        CHECK(std::log(ratio) / std::log(2.0) == doctest::Approx(-p).epsilon(1e-2));
    }
}

TEST_CASE("v_potential is the log of the density") {
    const Dimension d2(2);
    CHECK(v_potential(d2, 0.0) == doctest::Approx(-std::log(kPi)).epsilon(1e-15));
    CHECK(v_potential(d2, 1.0) == doctest::Approx(-std::log(4 * kPi)).epsilon(1e-15));
    for (int n = 2; n <= 5; ++n) {
        const Dimension dim(n);
        for (double r : {0.0, 0.3, 1.0, 2.5, 17.0, 400.0}) {
            CHECK(std::exp(v_potential(dim, r)) ==
                  doctest::Approx(mu_density(dim, r)).epsilon(5e-14));
        }
        // shift identity: v(r) - v(0) = -n ln(1 + r^{n/(n-1)})
        const double r = 2.2;
        const double lhs = v_potential(dim, r) - v_potential(dim, 0.0);
        const double rhs = -n * std::log1p(real_pow(r, double(n) / (n - 1)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("grad_v_magnitude: values, maximum, decay") {
    CHECK(grad_v_magnitude(Dimension(2), 0.0) == 0.0);
    CHECK(grad_v_magnitude(Dimension(5), 0.0) == 0.0);
    CHECK(grad_v_magnitude(Dimension(2), 1.0) == doctest::Approx(2.0).epsilon(1e-15));

    for (int n = 2; n <= 5; ++n) {
        const Dimension dim(n);
        // finite differences of the potential as oracle
        for (double r : {0.5, 1.0, 3.0}) {
            const double fd = -deriv5([&](double x) { return v_potential(dim, x); }, r, 1e-3);
            CHECK(grad_v_magnitude(dim, r) == doctest::Approx(fd).epsilon(1e-9));
        }
        // maximum at (n-1)^{-(n-1)/n}
        const double rstar = std::pow(n - 1.0, -(n - 1.0) / n);
        const double peak = grad_v_magnitude(dim, rstar);
        CHECK(peak > grad_v_magnitude(dim, rstar * 0.95));
        CHECK(peak > grad_v_magnitude(dim, rstar * 1.05));
        // ~ (n^2/(n-1))/r at r = 1e3 within 1%
        const double tail = grad_v_magnitude(dim, 1e3);
        CHECK(tail == doctest::Approx(double(n) * n / (n - 1) / 1e3).epsilon(1e-2));
    }
}

TEST_CASE("radial n-Laplacian identity") {
    CHECK_THROWS_AS(n_laplacian_residual(Dimension(2), 0.0), std::domain_error);

    CHECK(std::fabs(n_laplacian_residual(Dimension(2), 1.0)) < 1e-8);
    CHECK(std::fabs(n_laplacian_residual(Dimension(3), 0.7, DerivativeMode::finite_difference)) <
          1e-6);
    for (int n = 2; n <= 5; ++n) {
        const Dimension dim(n);
        for (double r : {0.3, 1.0, 2.0, 8.0}) {
            CHECK(std::fabs(n_laplacian_residual(dim, r)) < 1e-10);
            // the operator value itself is negative
            const double rhs = -ipow(double(n), n) * ipow(double(n) / (n - 1), n - 1) *
                               constants(dim).ball_volume * mu_density(dim, r);
            CHECK(rhs < 0.0);
        }
    }
}

TEST_CASE("measure normalization for n = 2..6") {
    for (int n = 2; n <= 6; ++n) {
        const Dimension dim(n);
        const IntegralResult total =
            integrate_radial(dim, [&](double r) { return mu_density(dim, r); });
        CHECK(total.converged);
        CHECK(total.value == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ball and tail measure closed forms") {
    const Dimension d2(2);
    CHECK(tail_measure(d2, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (int n = 2; n <= 6; ++n) {
        const Dimension dim(n);
        for (double r : {0.5, 1.0, 7.0, 250.0}) {
            CHECK(ball_measure(dim, r) + tail_measure(dim, r) ==
                  doctest::Approx(1.0).epsilon(1e-14));
        }
        const IntegralResult quad = integrate_to_infinity(
            [&](double r) {
                return constants(dim).sphere_measure * mu_density(dim, r) * ipow(r, n - 1);
            },
            3.0);
        CHECK(quad.value == doctest::Approx(tail_measure(dim, 3.0)).epsilon(1e-10));
    }
}
