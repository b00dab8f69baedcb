#pragma once

#include "onofri/geometry.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace onofri {

// How integrals over [a, inf) are reduced to a finite interval.
struct InfiniteTransform {
    enum class Kind {
        rational,  // t = (rho - a) / (1 + rho - a), maps [a, inf) -> [0, 1)
        split_at,  // [a, a + split_radius] directly, rational transform beyond
    };
    Kind kind = Kind::rational;
    double split_radius = 100.0;
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    InfiniteTransform infinite_transform{};
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
    bool converged = false;
};

// Thrown when the integrand returns NaN/inf strictly inside the interval.
class IntegrandError : public std::runtime_error {
public:
    IntegrandError(double location, const std::string& what)
        : std::runtime_error(what), location_(location) {}
    double location() const { return location_; }

private:
    double location_;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss7/Kronrod15 on [a, b]; refines the worst panel until the
// summed error estimate meets max(abs_tol, rel_tol * |value|) or the panel
// budget is exhausted. Breakpoints (pre-splits) may list known kinks.
IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {},
                         std::span<const double> breakpoints = {});

// Integral over [a, inf) via the configured transform.
IntegralResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg = {},
                                     std::span<const double> breakpoints = {});

// omega_{n-1} * int_0^inf g(rho) rho^{n-1} drho.
IntegralResult integrate_radial(Dimension dim, const Integrand& g, const QuadratureConfig& cfg = {},
                                std::span<const double> breakpoints = {});

// Same with finite range [r0, r1]. Ranges spanning many orders of magnitude
// are integrated in log coordinates beyond radius 1e4.
IntegralResult integrate_radial_range(Dimension dim, const Integrand& g, double r0, double r1,
                                      const QuadratureConfig& cfg = {},
                                      std::span<const double> breakpoints = {});

// Truncation-growth probe for integrals that failed to converge: integrates
// over [0, R] for growing R and reports whether the increments refuse to
// shrink. Heuristic, not a divergence proof.
bool radial_integral_diverges(Dimension dim, const Integrand& g, const QuadratureConfig& cfg = {});

class Profile;

// omega_{n-1} * int term(rho, u(rho), u'(rho)) rho^{n-1} drho with pre-splits
// at every kink of the profile. Integrates up to the profile's flat-tail start
// when one exists (the caller owns any analytic tail contribution), otherwise
// over [0, inf).
IntegralResult integrate_profile_break_aware(
    Dimension dim, const Profile& u,
    const std::function<double(double, double, double)>& term, const QuadratureConfig& cfg = {});

}  // namespace onofri
