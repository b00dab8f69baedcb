#include "onofri/quadrature.hpp"

#include "onofri/numeric.hpp"
#include "onofri/profile.hpp"

#include <doctest.h>

#include <cmath>

using namespace onofri;

TEST_CASE("finite intervals: pinned integrals") {
    const IntegralResult unit = integrate([](double) { return 1.0; }, 0.0, 1.0);
    CHECK(unit.converged);
    CHECK(unit.value == doctest::Approx(1.0).epsilon(1e-12));

    // int_0^2pi sin = 0, int_0^1 x^2 = 1/3
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 2.0 * 3.14159265358979323846)
              .value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("improper integrals via the rational transform") {
    // antiderivative -(ln(1+t)+1)/(1+t), total mass 1
    const IntegralResult log_one =
        integrate_to_infinity([](double t) { return std::log1p(t) / ((1.0 + t) * (1.0 + t)); }, 0.0);
    CHECK(log_one.converged);
    CHECK(log_one.value == doctest::Approx(1.0).epsilon(1e-11));

    const Dimension d2(2);
    const IntegralResult mass = integrate_radial(d2, [&](double r) { return mu_density(d2, r); });
    CHECK(mass.converged);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("tolerance contract against closed forms") {
    // |value - truth| <= 10 * error_estimate whenever converged
    struct Case {
        IntegralResult res;
        double truth;
    };
    const Dimension d2(2);
    const Case cases[] = {
        {integrate([](double) { return 1.0; }, 0.0, 1.0), 1.0},
        {integrate_to_infinity([](double t) { return std::log1p(t) / ((1.0 + t) * (1.0 + t)); },
                               0.0),
         1.0},
        {integrate_radial(d2, [&](double r) { return mu_density(d2, r); }), 1.0},
    };
    for (const Case& c : cases) {
        CHECK(c.res.converged);
        CHECK(std::fabs(c.res.value - c.truth) <= 10.0 * c.res.error_estimate);
    }
}

TEST_CASE("additivity over subintervals") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double whole = integrate(f, 0.0, 5.0).value;
    const double split = integrate(f, 0.0, 1.7).value + integrate(f, 1.7, 5.0).value;
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("infinite transforms agree") {
    for (int n = 2; n <= 4; ++n) {
        const Dimension dim(n);
        QuadratureConfig split_cfg;
        split_cfg.infinite_transform.kind = InfiniteTransform::Kind::split_at;
        split_cfg.infinite_transform.split_radius = 100.0;
        const double a = integrate_radial(dim, [&](double r) { return mu_density(dim, r); }).value;
        const double b =
            integrate_radial(dim, [&](double r) { return mu_density(dim, r); }, split_cfg).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("non-finite integrand values are reported with a location") {
    bool threw = false;
    try {
        integrate([](double x) { return x < 0.5 ? 1.0 : 1.0 / 0.0; }, 0.0, 1.0);
    } catch (const IntegrandError& e) {
        threw = true;
        CHECK(e.location() >= 0.5);
        CHECK(e.location() <= 1.0);
    }
    CHECK(threw);
}

TEST_CASE("break-aware integration of piecewise-linear profiles") {
    // triangular bump of height h and half-width 1/2: int slope^2 = 4 h^2
    const double h = 0.7;
    const Profile bump = sampled_profile({0.0, 2.5, 3.0, 3.5}, {0.0, 0.0, h, 0.0});
    const IntegralResult flat = integrate([&](double r) { return bump.slope(r) * bump.slope(r); },
                                          0.0, 4.0, {}, bump.kinks());
    CHECK(flat.value == doctest::Approx(4.0 * h * h).epsilon(1e-13));

    const Profile zero = Profile::zero();
    const IntegralResult z = integrate_profile_break_aware(
        Dimension(3), zero, [](double, double v, double) { return v; });
    CHECK(z.value == 0.0);

    // |slope|^n of a hat against the exact per-segment sum
    for (int n = 2; n <= 4; ++n) {
        const Dimension dim(n);
        const Profile hat = sampled_profile({0.0, 0.3, 1.0}, {0.0, 1.2, 0.0});
        const IntegralResult quad = integrate_profile_break_aware(
            dim, hat, [&](double, double, double s) { return ipow(std::fabs(s), n); });
        const double omega = constants(dim).sphere_measure;
        const double s0 = 1.2 / 0.3, s1 = -1.2 / 0.7;
        const double exact = omega * (ipow(std::fabs(s0), n) * ipow(0.3, n) / n +
                                      ipow(std::fabs(s1), n) * (1.0 - ipow(0.3, n)) / n);
        CHECK(quad.value == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("divergence probe flags a log-divergent radial integral") {
    const Dimension d3(3);
    // 1/(1+r)^3 * r^2 ~ 1/r: diverges logarithmically
    CHECK(radial_integral_diverges(d3, [](double r) { return 1.0 / ipow(1.0 + r, 3); }));
    // integrable tail: converges
    CHECK_FALSE(radial_integral_diverges(d3, [](double r) { return 1.0 / ipow(1.0 + r, 4); }));
}
