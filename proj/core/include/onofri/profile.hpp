#pragma once

#include "onofri/geometry.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace onofri {

// Region where a profile is constant: value `value` and slope 0 for r >= start.
struct FlatTail {
    double start;
    double value;
};

enum class Tail { zero, constant };

class ProfileImpl;

// Immutable radial function on [0, inf) with value and slope queries.
// Slope is the radial derivative; at a kink the right-hand value is returned.
// Cheap to copy and safe to share across threads.
class Profile {
public:
    Profile();  // identically zero

    double value(double r) const;
    double slope(double r) const;

    // Constant region at infinity, when known.
    std::optional<FlatTail> flat_tail() const;
    // Radius beyond which the profile vanishes identically, when known.
    std::optional<double> support_bound() const;
    // Sorted radii where the profile may fail to be smooth.
    const std::vector<double>& kinks() const;
    bool is_sampled() const;

    Profile scaled(double c) const;
    Profile shifted(double c) const;
    Profile times(const Profile& other) const;  // pointwise product

    friend Profile operator+(const Profile& a, const Profile& b);
    friend Profile operator-(const Profile& a, const Profile& b);

    static Profile zero();
    static Profile constant(double c);

    explicit Profile(std::shared_ptr<const ProfileImpl> impl);
    const ProfileImpl& impl() const { return *impl_; }

private:
    std::shared_ptr<const ProfileImpl> impl_;
};

// Piecewise-linear profile on strictly increasing nodes starting at 0, with a
// zero or constant continuation beyond the last node.
Profile sampled_profile(std::vector<double> nodes, std::vector<double> values,
                        Tail tail = Tail::zero);

// Closed-form profile from value/slope callables. `slope` must be the
// derivative of `value` away from the listed kinks.
Profile analytic_profile(std::function<double(double)> value, std::function<double(double)> slope,
                         std::vector<double> kinks = {},
                         std::optional<FlatTail> tail = std::nullopt);

// Nodes of a sampled profile (throws for analytic profiles).
std::span<const double> sampled_nodes(const Profile& p);
std::span<const double> sampled_values(const Profile& p);

// Default geometric grid from 1e-4 to `upper` (ratio ~1.05), plus the node 0.
std::vector<double> geometric_grid(double upper);

// Smooth cutoff: 1 on [0, r_scale/2], 0 on [r_scale, inf), values in [0, 1].
// Transition phi(2-2s)/(phi(2-2s)+phi(2s-1)) with s = r/r_scale and
// phi(t) = exp(-1/t) for t > 0.
Profile cutoff_psi(double r_scale);

// Pointwise clamp to [-lambda, lambda]; slope vanishes on the clamped region.
Profile truncate(const Profile& u, double lambda);

struct EtaResult {
    Profile profile;
    double k_star;  // (1 - k^{-1/k})^{-k}, the radius where the profile hits 0
};

// k^{-1/k} on [0,1], r^{-1/k} + k^{-1/k} - 1 on (1, k*], 0 beyond.
EtaResult eta_k(int k);

// u on the unit ball -> whole space: u(r/scale) - v(r) + v(scale) inside
// radius `scale`, 0 outside. Requires u(1) = 0.
Profile lift_to_space(const Profile& u, double scale, const GeometryConstants& geom);

// Whole space -> unit ball: u(scale*r) * psi(r) + v(scale*r) - v(scale) on
// [0, 1], 0 beyond; always vanishes at r = 1.
Profile project_to_ball(const Profile& u, double scale, const GeometryConstants& geom);

// project_to_ball of the zero profile; the family along which the ball
// functional approaches its sharp infimum.
Profile minimizing_family(Dimension dim, double r);

// Partial sum of triangular bumps of height 1/(k sqrt(ln k)) and half-width
// 1/2 centered at r = k, for k = 2..K.
Profile counterexample_profile(int K);

// Largest |value| seen over the kinks, a probe grid, and the flat tail.
// Exact for sampled profiles.
double max_abs_value(const Profile& p);

// CSV with columns r,value,slope. Sampled profiles write their own nodes;
// analytic ones are sampled on `grid` (geometric default when empty).
void write_profile_csv(const Profile& p, std::ostream& out, std::span<const double> grid = {});
Profile read_profile_csv(std::istream& in);

}  // namespace onofri
