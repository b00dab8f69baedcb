#pragma once

#include "onofri/geometry.hpp"
#include "onofri/profile.hpp"
#include "onofri/quadrature.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace onofri {

// Thrown when an integral a functional needs fails to converge.
class FunctionalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The three parts of the weighted norm: integral of |u| against the
// probability measure, the L^n norm of the gradient, and the mixed seminorm
// (integral of |u'|^2 |grad v|^{n-2})^{1/2}.
struct NormBreakdown {
    double weighted_l1 = 0.0;
    double grad_n = 0.0;
    double mixed = 0.0;
    double total = 0.0;
    bool l1_converged = false;
    bool grad_converged = false;
    bool mixed_converged = false;
    std::vector<IntegralResult> diagnostics;

    bool membership() const { return l1_converged && grad_converged && mixed_converged; }
};

NormBreakdown w_mu_norm(Dimension dim, const Profile& u, const QuadratureConfig& cfg = {});

// Integral of the convexity remainder of (grad v, grad u) over the whole
// space; nonnegative. Throws FunctionalError on quadrature failure.
double h_integral(Dimension dim, const Profile& u, const QuadratureConfig& cfg = {});

struct FunctionalReport {
    explicit FunctionalReport(GeometryConstants geom) : geometry(std::move(geom)) {}

    double dirichlet_term = 0.0;  // normalized gradient energy
    double mean_term = 0.0;       // integral of u against the measure (0 for the ball functional)
    double log_term = 0.0;        // ln of the exponential integral
    double value = 0.0;           // dirichlet + mean - log
    double sharp_margin = 0.0;    // distance above the sharp bound
    bool membership_ok = true;
    NormBreakdown norm;
    std::vector<IntegralResult> quadrature_diagnostics;
    GeometryConstants geometry;
};

// Whole-space functional: (1/omega_tilde) * h_integral + mean - ln(exp integral).
// Nonnegative on its domain; zero on constants. Requires max|u| <= 50 (keeps
// the exponential integral in linear scale) and a convergent exponential
// integral.
FunctionalReport onofri_I(Dimension dim, const Profile& u, const QuadratureConfig& cfg = {});

// Ball functional for profiles supported in [0, 1] with u(1) = 0:
// (1/omega_tilde) int |grad u|^n - ln((1/V_n) int e^u). Strictly above
// -H_{n-1}; sharp_margin records the distance.
FunctionalReport cc_J(Dimension dim, const Profile& u, const QuadratureConfig& cfg = {});

struct AsymptoticCheck {
    double numeric;    // quadrature of the normalized gradient energy of v over B_r
    double asymptote;  // (n/(n-1)) ln r - H_{n-1}
    double gap;        // numeric - asymptote, -> 0 as r grows
};

AsymptoticCheck gradv_dirichlet_asymptotic(Dimension dim, double r, const QuadratureConfig& cfg = {});

// Rigorous upper bound for |gap| at radius r, assembled from the algebraic
// tail bounds: ln(1 + 1/T) + sum_k C(n-1,k) T^{k+1-n}/(n-k-1), T = r^{n/(n-1)}.
double gradv_asymptotic_gap_bound(Dimension dim, double r);

// n^2 * int_0^inf rho^{n-1} ln(1+rho^{n/(n-1)}) (1+rho^{n/(n-1)})^{-n} drho;
// equals n * H_{n-1}.
double log_weight_integral(Dimension dim, const QuadratureConfig& cfg = {});

// Ball functional and its per-node gradient for a piecewise-linear profile on
// `nodes` (first node 0, last node 1, last value pinned to 0). The gradient
// covers values[0..m-2]; the Dirichlet part is an exact finite sum, the
// exponential part uses per-segment quadrature.
struct JGradient {
    double value;
    std::vector<double> gradient;
};

JGradient cc_J_gradient(Dimension dim, std::span<const double> nodes,
                        std::span<const double> values, const QuadratureConfig& cfg = {});

// Relative L2 error between the analytic gradient and central finite
// differences with step eps.
double cc_J_gradient_fd_error(Dimension dim, std::span<const double> nodes,
                              std::span<const double> values, const QuadratureConfig& cfg = {},
                              double eps = 1e-5);

// JSON object with all terms, quadrature diagnostics, and the geometry
// constants used.
std::string functional_report_json(const FunctionalReport& report);

}  // namespace onofri
