#pragma once

#include "onofri/rational.hpp"

#include <stdexcept>

namespace onofri {

// Ambient dimension; everything downstream is parameterized by it.
struct Dimension {
    int n;
    explicit Dimension(int n_) : n(n_) {
        if (n_ < 2) throw std::invalid_argument("Dimension: n must be >= 2");
    }
};

struct GeometryConstants {
    Dimension dim;
    double ball_volume;    // volume of the unit ball
    double sphere_measure; // (n-1)-measure of the unit sphere
    double omega_tilde;    // n^n (n/(n-1))^{n-1} * sphere_measure
    Rational harmonic;     // 1 + 1/2 + ... + 1/(n-1), exact

    double harmonic_value() const { return harmonic.to_double(); }
};

GeometryConstants constants(Dimension dim);

// Density 1/(V_n (1 + r^{n/(n-1)})^n); strictly positive, strictly decreasing.
double mu_density(Dimension dim, double r);

// ln of mu_density.
double v_potential(Dimension dim, double r);

// |grad of v_potential| = (n^2/(n-1)) r^{1/(n-1)} / (1 + r^{n/(n-1)}); 0 at r = 0.
double grad_v_magnitude(Dimension dim, double r);

// Signed radial derivative of v_potential (= -grad_v_magnitude).
double v_potential_slope(Dimension dim, double r);

enum class DerivativeMode { analytic, finite_difference };

// Residual of the radial n-Laplacian of v against -n^n (n/(n-1))^{n-1} V_n mu(r).
// r = 0 is rejected (radial coordinate singularity).
double n_laplacian_residual(Dimension dim, double r, DerivativeMode mode = DerivativeMode::analytic);

// Measure of the centered ball of radius r under mu: r^n / (1 + r^{n/(n-1)})^{n-1}.
double ball_measure(Dimension dim, double r);

// 1 - ball_measure, evaluated without cancellation for large r.
double tail_measure(Dimension dim, double r);

}  // namespace onofri
