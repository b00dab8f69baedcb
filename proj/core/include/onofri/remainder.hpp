#pragma once

#include "onofri/geometry.hpp"

#include <span>

namespace onofri {

// Signed radial gradient data: a is the radial component of the potential
// gradient (always <= 0, it points toward the origin), b the radial slope
// of the function under test.
struct RadialGradientPair {
    double a;
    double b;
};

// Convexity remainder |X+Y|^n - |X|^n - n|X|^{n-2} X.Y; always >= 0.
// |X|^{n-2} at X = 0 uses the continuous extension (0 for n >= 3, 1 for n = 2).
double remainder_vec(Dimension dim, std::span<const double> x, std::span<const double> y);

// Collinear specialization: |a+b|^n - |a|^n - n|a|^{n-2} a b.
double remainder_radial(Dimension dim, RadialGradientPair pair);

// Constant c_n = n(n-1) 2^{n-4} of the two-sided bound; 1 for n = 2, where the
// remainder is exactly |Y|^2 and no constant is needed.
double upper_bound_constant(Dimension dim);

// Result of a pointwise inequality check. `slack` is the roundoff allowance
// used when deciding `pass`; margins more negative than -slack count as
// violations.
struct BoundCheck {
    double remainder;
    double lower;        // lower bound being asserted
    double upper;        // upper bound being asserted
    double margin_low;   // remainder - lower
    double margin_high;  // upper - remainder
    double slack;
    bool pass;
};

// 0 <= R_n(X,Y) <= c_n (|Y|^n + |Y|^2 |X|^{n-2}).
BoundCheck check_two_sided_bound(Dimension dim, std::span<const double> x, std::span<const double> y);

// R_n(X,Y) >= (n/2) |X|^{n-2} |Y|^2 for even n >= 4; odd n is rejected.
BoundCheck check_even_lower_bound(Dimension dim, std::span<const double> x, std::span<const double> y);

// (a+b)^k >= a^k + k a^{k-1} b + b^k for k >= 2, and additionally
// (a+b)^k >= a^k + k a^{k-1} b + k a b^{k-1} + b^k for k >= 3.
// Requires a >= 0 and a + b >= 0.
struct BinomialCheck {
    double lhs;            // (a+b)^k
    double rhs_first;      // a^k + k a^{k-1} b + b^k
    double rhs_second;     // + k a b^{k-1} (only meaningful when has_second)
    bool has_second;
    double margin_first;
    double margin_second;
    double slack;
    bool pass;
};

BinomialCheck check_binomial_inequalities(int k, double a, double b);

}  // namespace onofri
