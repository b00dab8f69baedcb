#include "onofri/functionals.hpp"

#include "onofri/numeric.hpp"
#include "onofri/remainder.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace onofri {

namespace {

constexpr double kMaxProfileMagnitude = 50.0;

// Radial integral of g(rho, u, u') * rho^{n-1} * omega over the non-flat part
// of the profile; the flat tail (if any) is the caller's business.
IntegralResult profile_integral(Dimension dim, const Profile& u,
                                const std::function<double(double, double, double)>& term,
                                const QuadratureConfig& cfg) {
    return integrate_profile_break_aware(dim, u, term, cfg);
}

// Same, but an overflowing integrand counts as a failed (divergent) integral
// instead of an error; membership diagnosis needs the flag, not a throw.
IntegralResult profile_integral_flagging(Dimension dim, const Profile& u,
                                         const std::function<double(double, double, double)>& term,
                                         const QuadratureConfig& cfg) {
    try {
        return profile_integral(dim, u, term, cfg);
    } catch (const IntegrandError&) {
        return IntegralResult{std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(), 0, false};
    }
}

double nth_root(double x, int n) {
    if (x <= 0.0) return 0.0;
    return std::exp(std::log(x) / n);
}

}  // namespace

NormBreakdown w_mu_norm(Dimension dim, const Profile& u, const QuadratureConfig& cfg) {
    const int n = dim.n;
    NormBreakdown out;

    IntegralResult l1 = profile_integral_flagging(
        dim, u, [&](double r, double v, double) { return std::fabs(v) * mu_density(dim, r); }, cfg);
    const auto tail = u.flat_tail();
    if (tail && tail->value != 0.0) l1.value += std::fabs(tail->value) * tail_measure(dim, tail->start);

    IntegralResult grad = profile_integral_flagging(
        dim, u, [&](double, double, double s) { return ipow(std::fabs(s), n); }, cfg);
    IntegralResult mixed = profile_integral_flagging(
        dim, u,
        [&](double r, double, double s) { return s * s * ipow(grad_v_magnitude(dim, r), n - 2); },
        cfg);

    out.weighted_l1 = l1.value;
    out.grad_n = nth_root(grad.value, n);
    out.mixed = std::sqrt(std::max(0.0, mixed.value));
    out.total = out.weighted_l1 + out.grad_n + out.mixed;
    out.l1_converged = l1.converged;
    out.grad_converged = grad.converged;
    out.mixed_converged = mixed.converged;
    out.diagnostics = {l1, grad, mixed};
    return out;
}

double h_integral(Dimension dim, const Profile& u, const QuadratureConfig& cfg) {
    const IntegralResult res = profile_integral(
        dim, u,
        [&](double r, double, double s) {
            return remainder_radial(dim, {v_potential_slope(dim, r), s});
        },
        cfg);
    if (!res.converged) throw FunctionalError("h_integral: quadrature did not converge");
    return res.value;
}

FunctionalReport onofri_I(Dimension dim, const Profile& u, const QuadratureConfig& cfg) {
    const GeometryConstants geom = constants(dim);
    if (max_abs_value(u) > kMaxProfileMagnitude)
        throw std::invalid_argument("onofri_I: profile magnitude exceeds the admissible cap");

    const IntegralResult h = profile_integral(
        dim, u,
        [&](double r, double, double s) {
            return remainder_radial(dim, {v_potential_slope(dim, r), s});
        },
        cfg);
    if (!h.converged) throw FunctionalError("onofri_I: remainder integral did not converge");

    IntegralResult mean = profile_integral(
        dim, u, [&](double r, double v, double) { return v * mu_density(dim, r); }, cfg);
    IntegralResult expint = profile_integral(
        dim, u, [&](double r, double v, double) { return std::exp(v) * mu_density(dim, r); }, cfg);

    // Constant continuation beyond the flat-tail radius has closed forms.
    const auto tail = u.flat_tail();
    if (tail) {
        const double t = tail_measure(dim, tail->start);
        mean.value += tail->value * t;
        expint.value += std::exp(tail->value) * t;
    }
    if (!expint.converged) throw FunctionalError("onofri_I: exponential integral diverges");
    if (!mean.converged) throw FunctionalError("onofri_I: mean integral did not converge");

    FunctionalReport rep(geom);
    rep.dirichlet_term = h.value / geom.omega_tilde;
    rep.mean_term = mean.value;
    rep.log_term = std::log(expint.value);
    rep.value = rep.dirichlet_term + rep.mean_term - rep.log_term;
    rep.sharp_margin = rep.value;  // sharp bound is 0
    rep.norm = w_mu_norm(dim, u, cfg);
    rep.membership_ok = rep.norm.membership();
    rep.quadrature_diagnostics = {h, mean, expint};
    return rep;
}

FunctionalReport cc_J(Dimension dim, const Profile& u, const QuadratureConfig& cfg) {
    const GeometryConstants geom = constants(dim);
    const int n = dim.n;
    const auto tail = u.flat_tail();
    if (!tail || tail->value != 0.0 || tail->start > 1.0 + 1e-12)
        throw std::invalid_argument("cc_J: profile must be supported in the unit ball");
    if (std::fabs(u.value(1.0 - 1e-12)) > 1e-9)  // left limit; the tail side is 0 by design
        throw std::invalid_argument("cc_J: boundary value u(1) must be 0");
    if (max_abs_value(u) > kMaxProfileMagnitude)
        throw std::invalid_argument("cc_J: profile magnitude exceeds the admissible cap");

    const double upper = std::min(tail->start, 1.0);
    auto grad_term = [&](double r) { return ipow(std::fabs(u.slope(r)), n); };
    auto exp_term = [&](double r) { return std::exp(u.value(r)); };
    IntegralResult dirichlet{0.0, 0.0, 0, true};
    IntegralResult expint{0.0, 0.0, 0, true};
    if (upper > 0.0) {
        dirichlet = integrate_radial_range(dim, grad_term, 0.0, upper, cfg, u.kinks());
        expint = integrate_radial_range(dim, exp_term, 0.0, upper, cfg, u.kinks());
    }
    if (upper < 1.0) {
        // e^0 over the remaining shell of the unit ball.
        expint.value += geom.sphere_measure * (1.0 - ipow(upper, n)) / n;
    }
    if (!expint.converged || !dirichlet.converged)
        throw FunctionalError("cc_J: quadrature did not converge");

    FunctionalReport rep(geom);
    rep.dirichlet_term = dirichlet.value / geom.omega_tilde;
    rep.mean_term = 0.0;
    rep.log_term = std::log(expint.value / geom.ball_volume);
    rep.value = rep.dirichlet_term - rep.log_term;
    rep.sharp_margin = rep.value + geom.harmonic_value();
    rep.membership_ok = true;
    rep.quadrature_diagnostics = {dirichlet, expint};
    return rep;
}

AsymptoticCheck gradv_dirichlet_asymptotic(Dimension dim, double r, const QuadratureConfig& cfg) {
    if (!(r > 1.0)) throw std::invalid_argument("gradv_dirichlet_asymptotic: r must be > 1");
    const int n = dim.n;
    const double p = static_cast<double>(n) / (n - 1);
    const double T = real_pow(r, p);
    // After the substitution t = rho^{n/(n-1)} the normalized energy over B_r
    // is int_0^T t^{n-1}/(1+t)^n dt.
    const IntegralResult num = integrate(
        [n](double t) { return ipow(t, n - 1) / ipow(1.0 + t, n); }, 0.0, T, cfg,
        std::vector<double>{1.0});
    const double asym = p * std::log(r) - constants(dim).harmonic_value();
    return AsymptoticCheck{num.value, asym, num.value - asym};
}

double gradv_asymptotic_gap_bound(Dimension dim, double r) {
    const int n = dim.n;
    const double T = real_pow(r, static_cast<double>(n) / (n - 1));
    double bound = std::log1p(1.0 / T);
    for (int k = 0; k <= n - 2; ++k) {
        bound += binomial_coefficient(n - 1, k).convert_to<double>() *
                 real_pow(T, k + 1.0 - n) / (n - k - 1);
    }
    return bound;
}

double log_weight_integral(Dimension dim, const QuadratureConfig& cfg) {
    const int n = dim.n;
    const double p = static_cast<double>(n) / (n - 1);
    auto f = [n, p](double rho) {
        const double t = real_pow(rho, p);
        return n * n * ipow(rho, n - 1) * std::log1p(t) / ipow(1.0 + t, n);
    };
    return integrate_to_infinity(f, 0.0, cfg, std::vector<double>{1.0}).value;
}

namespace {

void check_grid(std::span<const double> nodes, std::span<const double> values) {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw std::invalid_argument("cc_J_gradient: bad grid");
    if (nodes.front() != 0.0 || nodes.back() != 1.0)
        throw std::invalid_argument("cc_J_gradient: nodes must span [0, 1]");
    if (values.back() != 0.0)
        throw std::invalid_argument("cc_J_gradient: boundary value must be 0");
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("cc_J_gradient: nodes must be strictly increasing");
}

}  // namespace

JGradient cc_J_gradient(Dimension dim, std::span<const double> nodes,
                        std::span<const double> values, const QuadratureConfig& cfg) {
    check_grid(nodes, values);
    const GeometryConstants geom = constants(dim);
    const int n = dim.n;
    const size_t m = nodes.size();
    const double norm_factor = geom.sphere_measure / geom.omega_tilde;

    // Dirichlet part: exact sum over segments of |s_i|^n (rho_{i+1}^n - rho_i^n)/n.
    double dirichlet = 0.0;
    std::vector<double> grad(m - 1, 0.0);
    std::vector<double> seg_slope(m - 1), seg_weight(m - 1);
    for (size_t i = 0; i + 1 < m; ++i) {
        const double h = nodes[i + 1] - nodes[i];
        seg_slope[i] = (values[i + 1] - values[i]) / h;
        seg_weight[i] = (ipow(nodes[i + 1], n) - ipow(nodes[i], n)) / n;
        dirichlet += ipow(std::fabs(seg_slope[i]), n) * seg_weight[i];
    }
    dirichlet *= norm_factor;
    for (size_t j = 0; j + 1 < m; ++j) {
        double d = 0.0;
        if (j > 0) {
            const double s = seg_slope[j - 1];
            d += n * ipow(std::fabs(s), n - 2) * s * seg_weight[j - 1] / (nodes[j] - nodes[j - 1]);
        }
        const double s = seg_slope[j];
        d -= n * ipow(std::fabs(s), n - 2) * s * seg_weight[j] / (nodes[j + 1] - nodes[j]);
        grad[j] = norm_factor * d;
    }

    // Exponential part: E = n int_0^1 e^u rho^{n-1}; per segment also the
    // barycentric moment so each endpoint gets its hat-function share.
    double E = 0.0;
    std::vector<double> dE(m, 0.0);
    for (size_t i = 0; i + 1 < m; ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        const double h = b - a;
        auto uval = [&](double r) { return values[i] + seg_slope[i] * (r - a); };
        const IntegralResult full =
            integrate([&](double r) { return std::exp(uval(r)) * ipow(r, n - 1); }, a, b, cfg);
        const IntegralResult moment = integrate(
            [&](double r) { return std::exp(uval(r)) * ipow(r, n - 1) * (r - a) / h; }, a, b, cfg);
        E += n * full.value;
        dE[i] += n * (full.value - moment.value);
        dE[i + 1] += n * moment.value;
    }

    JGradient out;
    out.value = dirichlet - std::log(E);
    out.gradient.resize(m - 1);
    for (size_t j = 0; j + 1 < m; ++j) out.gradient[j] = grad[j] - dE[j] / E;
    return out;
}

double cc_J_gradient_fd_error(Dimension dim, std::span<const double> nodes,
                              std::span<const double> values, const QuadratureConfig& cfg,
                              double eps) {
    const JGradient analytic = cc_J_gradient(dim, nodes, values, cfg);
    std::vector<double> work(values.begin(), values.end());
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double saved = work[j];
        work[j] = saved + eps;
        const double up = cc_J_gradient(dim, nodes, work, cfg).value;
        work[j] = saved - eps;
        const double down = cc_J_gradient(dim, nodes, work, cfg).value;
        work[j] = saved;
        const double fd = (up - down) / (2.0 * eps);
        const double diff = analytic.gradient[j] - fd;
        num += diff * diff;
        den += fd * fd;
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

namespace {

nlohmann::json integral_json(const IntegralResult& r) {
    return {{"value", r.value},
            {"error_estimate", r.error_estimate},
            {"subdivisions_used", r.subdivisions_used},
            {"converged", r.converged}};
}

}  // namespace

std::string functional_report_json(const FunctionalReport& rep) {
    nlohmann::json j;
    j["dirichlet_term"] = rep.dirichlet_term;
    j["mean_term"] = rep.mean_term;
    j["log_term"] = rep.log_term;
    j["value"] = rep.value;
    j["sharp_margin"] = rep.sharp_margin;
    j["membership_ok"] = rep.membership_ok;
    j["norm"] = {{"weighted_l1", rep.norm.weighted_l1},
                 {"grad_n", rep.norm.grad_n},
                 {"mixed", rep.norm.mixed},
                 {"total", rep.norm.total},
                 {"l1_converged", rep.norm.l1_converged},
                 {"grad_converged", rep.norm.grad_converged},
                 {"mixed_converged", rep.norm.mixed_converged}};
    j["quadrature_diagnostics"] = nlohmann::json::array();
    for (const auto& d : rep.quadrature_diagnostics) j["quadrature_diagnostics"].push_back(integral_json(d));
    j["geometry"] = {{"n", rep.geometry.dim.n},
                     {"ball_volume", rep.geometry.ball_volume},
                     {"sphere_measure", rep.geometry.sphere_measure},
                     {"omega_tilde", rep.geometry.omega_tilde},
                     {"harmonic", rep.geometry.harmonic.str()}};
    return j.dump(2);
}

}  // namespace onofri
