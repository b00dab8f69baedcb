#pragma once

#include <cmath>

namespace onofri {

// x^k for small non-negative integer k, by binary exponentiation.
inline double ipow(double x, int k) {
    double acc = 1.0;
    double base = x;
    for (; k > 0; k >>= 1) {
        if (k & 1) acc *= base;
        base *= base;
    }
    return acc;
}

// r^alpha evaluated as exp(alpha ln r) for r > 0, with r == 0 mapped to 0.
// Keeps fractional powers at the origin away from platform pow() corner cases.
inline double real_pow(double r, double alpha) {
    if (r == 0.0) return 0.0;
    return std::exp(alpha * std::log(r));
}

// Five-point central first derivative, O(h^4) truncation error.
template <class F>
double deriv5(F&& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

}  // namespace onofri
