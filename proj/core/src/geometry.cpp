#include "onofri/geometry.hpp"

#include "onofri/numeric.hpp"

#include <cmath>

namespace onofri {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gamma(n/2 + 1): integer factorial for even n, double-factorial closed form
// with sqrt(pi) for odd n. Exact up to the final float products.
double gamma_half_plus_one(int n) {
    if (n % 2 == 0) {
        double f = 1.0;
        for (int i = 2; i <= n / 2; ++i) f *= i;
        return f;
    }
    double dd = 1.0;  // n!!
    for (int i = n; i >= 1; i -= 2) dd *= i;
    return dd / ipow(2.0, (n + 1) / 2) * std::sqrt(kPi);
}

double exponent_ratio(Dimension dim) { return static_cast<double>(dim.n) / (dim.n - 1); }

void require_nonnegative(double r) {
    if (!(r >= 0.0)) throw std::domain_error("radius must be >= 0");
}

}  // namespace

GeometryConstants constants(Dimension dim) {
    const int n = dim.n;
    const double volume = std::pow(kPi, 0.5 * n) / gamma_half_plus_one(n);
    const double sphere = n * volume;
    const double tilde = ipow(static_cast<double>(n), n) *
                         ipow(static_cast<double>(n) / (n - 1), n - 1) * sphere;
    return GeometryConstants{dim, volume, sphere, tilde, harmonic_number(n - 1)};
}

double mu_density(Dimension dim, double r) {
    require_nonnegative(r);
    const double t = real_pow(r, exponent_ratio(dim));
    return 1.0 / (constants(dim).ball_volume * ipow(1.0 + t, dim.n));
}

double v_potential(Dimension dim, double r) {
    require_nonnegative(r);
    const double t = real_pow(r, exponent_ratio(dim));
    return -std::log(constants(dim).ball_volume) - dim.n * std::log1p(t);
}

double grad_v_magnitude(Dimension dim, double r) {
    require_nonnegative(r);
    const int n = dim.n;
    const double t = real_pow(r, exponent_ratio(dim));
    return (static_cast<double>(n) * n / (n - 1)) * real_pow(r, 1.0 / (n - 1)) / (1.0 + t);
}

double v_potential_slope(Dimension dim, double r) { return -grad_v_magnitude(dim, r); }

namespace {

// d/dr of grad_v_magnitude, closed form.
double grad_v_magnitude_derivative(Dimension dim, double r) {
    const int n = dim.n;
    const double a = 1.0 / (n - 1);
    const double p = exponent_ratio(dim);
    const double c = static_cast<double>(n) * n / (n - 1);
    const double t = real_pow(r, p);
    return c * real_pow(r, a - 1.0) * (a * (1.0 + t) - p * t) / ipow(1.0 + t, 2);
}

}  // namespace

double n_laplacian_residual(Dimension dim, double r, DerivativeMode mode) {
    if (!(r > 0.0)) throw std::domain_error("n_laplacian_residual: r must be > 0");
    const int n = dim.n;
    double lhs;
    if (mode == DerivativeMode::analytic) {
        const double g = grad_v_magnitude(dim, r);
        const double gp = grad_v_magnitude_derivative(dim, r);
        // |f'|^{n-2} f' = -g^{n-1} for f = v_potential.
        lhs = -(n - 1) * ipow(g, n - 2) * gp - ((n - 1) / r) * ipow(g, n - 1);
    } else {
        const double h_inner = 1e-3 * std::max(1.0, r);
        const double h_outer = 1e-2 * std::max(1.0, r);
        auto flux = [&](double s) {
            const double fp = deriv5([&](double x) { return v_potential(dim, x); }, s, h_inner);
            return ipow(std::fabs(fp), n - 2) * fp;
        };
        lhs = deriv5(flux, r, h_outer) + ((n - 1) / r) * flux(r);
    }
    const GeometryConstants g = constants(dim);
    const double rhs = -ipow(static_cast<double>(n), n) *
                       ipow(static_cast<double>(n) / (n - 1), n - 1) * g.ball_volume *
                       mu_density(dim, r);
    return lhs - rhs;
}

double ball_measure(Dimension dim, double r) {
    require_nonnegative(r);
    const int n = dim.n;
    const double t = real_pow(r, exponent_ratio(dim));
    return ipow(r, n) / ipow(1.0 + t, n - 1);
}

double tail_measure(Dimension dim, double r) {
    require_nonnegative(r);
    const int n = dim.n;
    const double t = real_pow(r, exponent_ratio(dim));
    // (1+t)^{n-1} - t^{n-1} expanded to avoid cancellation: sum_{j<n-1} C(n-1,j) t^j.
    double numer = 0.0;
    for (int j = n - 2; j >= 0; --j) {
        numer += binomial_coefficient(n - 1, j).convert_to<double>() * ipow(t, j);
    }
    return numer / ipow(1.0 + t, n - 1);
}

}  // namespace onofri
