#include "onofri/identities.hpp"

#include "onofri/geometry.hpp"
#include "onofri/numeric.hpp"
#include "onofri/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace onofri;

TEST_CASE("beta integrals: pinned exact values") {
    CHECK(beta_integral_exact(2, 0) == Rational(1));
    CHECK(beta_integral_exact(3, 1) == Rational(BigInt(1), BigInt(2)));
    CHECK(beta_integral_exact(3, 0) == Rational(BigInt(1), BigInt(2)));
    CHECK(beta_integral_exact(6, 2) == Rational(BigInt(2) * 2, BigInt(120)));  // 2!2!/5!

    CHECK_THROWS_AS(beta_integral_exact(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(beta_integral_exact(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(beta_integral_exact(1, 0), std::invalid_argument);
}

TEST_CASE("beta integrals agree with quadrature") {
    QuadratureConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-12;
    for (int n : {2, 3, 5, 8}) {
        for (int k = 0; k <= n - 2; ++k) {
            const IntegralResult quad = integrate_to_infinity(
                [n, k](double t) { return ipow(t, k) / ipow(1.0 + t, n); }, 0.0, cfg);
            CHECK(quad.converged);
            CHECK(quad.value ==
                  doctest::Approx(beta_integral_exact(n, k).to_double()).epsilon(1e-10));
        }
    }
}

TEST_CASE("induction identity holds exactly for n <= 20") {
    for (int n = 2; n <= 20; ++n) {
        for (int k = 0; k <= n - 2; ++k) {
            const IdentityRecord rec = induction_identity(n, k);
            CHECK(rec.match);
            CHECK(rec.claimed == Rational(BigInt(1), BigInt(n - k - 1)));
        }
    }
    CHECK(induction_identity(2, 0).exact_value == Rational(1));
    CHECK(induction_identity(3, 1).exact_value == Rational(1));
}

TEST_CASE("harmonic closure matches the geometry constants") {
    CHECK(harmonic_closure(2).exact_value == Rational(1));
    CHECK(harmonic_closure(4).exact_value == Rational(BigInt(11), BigInt(6)));
    for (int n : {2, 3, 7, 20}) {
        const IdentityRecord rec = harmonic_closure(n);
        CHECK(rec.match);
        CHECK(rec.exact_value == constants(Dimension(n)).harmonic);
    }
}

TEST_CASE("remainder bounds dominate the true tails") {
    CHECK(remainder_bound(2, 0, 10.0) == doctest::Approx(0.1));
    CHECK(1.0 / 11.0 < remainder_bound(2, 0, 10.0));

    // n=3, k=1: quadrature tail ~ 0.0098 < 0.01
    QuadratureConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-12;
    const double tail31 = integrate_to_infinity(
        [](double t) { return t / ipow(1.0 + t, 3); }, 100.0, cfg).value;
    CHECK(tail31 == doctest::Approx(0.009852).epsilon(1e-3));
    CHECK(tail31 < remainder_bound(3, 1, 100.0));

    // bound vanishes as R grows
    CHECK(remainder_bound(4, 1, 1e6) < 1e-11);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + int(unit(rng) * 9);
        const int k = int(unit(rng) * (n - 1));
        const double R = 2.0 + 200.0 * unit(rng);
        const double head = integrate(
            [n, k](double t) { return ipow(t, k) / ipow(1.0 + t, n); }, 0.0, R, cfg).value;
        const double exact = beta_integral_exact(n, k).to_double();
        // head + bound brackets the exact value from above, head from below
        CHECK(head <= exact + 1e-12);
        CHECK(head + remainder_bound(n, k, R) >= exact - 1e-12);
    }
}

TEST_CASE("identity table CSV") {
    std::stringstream out;
    write_identity_csv(out, 5);
    const std::string text = out.str();
    CHECK(text.find("n,k,exact_num,exact_den,claimed_num,claimed_den,match") != std::string::npos);
    CHECK(text.find("5,harmonic,") != std::string::npos);
    CHECK(text.find(",0\n") == std::string::npos);  // no mismatches anywhere
}
