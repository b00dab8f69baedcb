#include "onofri/remainder.hpp"

#include "onofri/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace onofri {

namespace {

void require_dim(Dimension dim, std::span<const double> x, std::span<const double> y) {
    if (x.size() != static_cast<size_t>(dim.n) || y.size() != static_cast<size_t>(dim.n))
        throw std::invalid_argument("remainder: vector length must equal the dimension");
}

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// Forward roundoff allowance for expressions built from n-th powers of the
// input magnitudes.
double roundoff_slack(double scale, int n) {
    return 64.0 * std::numeric_limits<double>::epsilon() * ipow(std::max(scale, 1.0), n);
}

}  // namespace

double remainder_vec(Dimension dim, std::span<const double> x, std::span<const double> y) {
    require_dim(dim, x, y);
    const int n = dim.n;
    double sum_sq = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double s = x[i] + y[i];
        sum_sq += s * s;
    }
    const double nx = norm(x);
    return ipow(std::sqrt(sum_sq), n) - ipow(nx, n) - n * ipow(nx, n - 2) * dot(x, y);
}

double remainder_radial(Dimension dim, RadialGradientPair pair) {
    const int n = dim.n;
    const double mag_a = std::fabs(pair.a);
    // grouped as in remainder_vec so the collinear case agrees bit for bit
    return ipow(std::fabs(pair.a + pair.b), n) - ipow(mag_a, n) -
           n * ipow(mag_a, n - 2) * (pair.a * pair.b);
}

double upper_bound_constant(Dimension dim) {
    if (dim.n == 2) return 1.0;
    return std::ldexp(static_cast<double>(dim.n) * (dim.n - 1), dim.n - 4);
}

BoundCheck check_two_sided_bound(Dimension dim, std::span<const double> x, std::span<const double> y) {
    require_dim(dim, x, y);
    const int n = dim.n;
    const double r = remainder_vec(dim, x, y);
    const double ny = norm(y);
    const double nx = norm(x);
    const double upper = upper_bound_constant(dim) * (ipow(ny, n) + ny * ny * ipow(nx, n - 2));
    BoundCheck c{};
    c.remainder = r;
    c.lower = 0.0;
    c.upper = upper;
    c.margin_low = r;
    c.margin_high = upper - r;
    c.slack = roundoff_slack(nx + ny, n) * (1.0 + upper_bound_constant(dim));
    c.pass = c.margin_low >= -c.slack && c.margin_high >= -c.slack;
    return c;
}

BoundCheck check_even_lower_bound(Dimension dim, std::span<const double> x, std::span<const double> y) {
    if (dim.n % 2 != 0 || dim.n < 4)
        throw std::domain_error("check_even_lower_bound: requires even n >= 4");
    require_dim(dim, x, y);
    const int n = dim.n;
    const double r = remainder_vec(dim, x, y);
    const double ny = norm(y);
    const double nx = norm(x);
    const double lower = 0.5 * n * ipow(nx, n - 2) * ny * ny;
    BoundCheck c{};
    c.remainder = r;
    c.lower = lower;
    c.upper = std::numeric_limits<double>::infinity();
    c.margin_low = r - lower;
    c.margin_high = std::numeric_limits<double>::infinity();
    c.slack = roundoff_slack(nx + ny, n) * n;
    c.pass = c.margin_low >= -c.slack;
    return c;
}

BinomialCheck check_binomial_inequalities(int k, double a, double b) {
    if (k < 2) throw std::invalid_argument("check_binomial_inequalities: k must be >= 2");
    if (!(a >= 0.0)) throw std::invalid_argument("check_binomial_inequalities: a must be >= 0");
    if (!(a + b >= 0.0)) throw std::invalid_argument("check_binomial_inequalities: a + b must be >= 0");

    BinomialCheck c{};
    c.lhs = ipow(a + b, k);
    c.rhs_first = ipow(a, k) + k * ipow(a, k - 1) * b + ipow(b, k);
    c.has_second = k >= 3;
    c.rhs_second = c.has_second ? c.rhs_first + k * a * ipow(b, k - 1)
                                : std::numeric_limits<double>::quiet_NaN();
    c.margin_first = c.lhs - c.rhs_first;
    c.margin_second = c.has_second ? c.lhs - c.rhs_second : std::numeric_limits<double>::infinity();
    c.slack = 64.0 * std::numeric_limits<double>::epsilon() *
              ipow(std::max(1.0, a + std::fabs(b)), k) * (k + 1);
    c.pass = c.margin_first >= -c.slack && (!c.has_second || c.margin_second >= -c.slack);
    return c;
}

}  // namespace onofri
