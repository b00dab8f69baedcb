#include "onofri/quadrature.hpp"

#include "onofri/numeric.hpp"
#include "onofri/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace onofri {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) throw IntegrandError(x, "non-finite integrand value");
        return y;
    };

    const double fc = eval(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    double fv[8][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = eval(center - dx);
        const double f2 = eval(center + dx);
        fv[i][0] = f1;
        fv[i][1] = f2;
        resk += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[i][0] - mean) + std::fabs(fv[i][1] - mean));

    const double scale = std::fabs(half);
    resabs *= scale;
    resasc *= scale;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);
    return Panel{a, b, resk * half, err};
}

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a;  // deterministic tie-break
    }
};

double stable_sum(std::vector<Panel>& panels, double (*pick)(const Panel&)) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    // Kahan summation in a fixed (left-to-right) order.
    double sum = 0.0, carry = 0.0;
    for (const Panel& p : panels) {
        const double y = pick(p) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

IntegralResult adapt(const Integrand& f, std::vector<double> edges, const QuadratureConfig& cfg) {
    std::vector<Panel> heap;
    heap.reserve(edges.size() + 64);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i] < edges[i + 1]) heap.push_back(evaluate_panel(f, edges[i], edges[i + 1]));
    if (heap.empty()) return IntegralResult{0.0, 0.0, 0, true};
    std::make_heap(heap.begin(), heap.end(), PanelWorse{});

    double total_value = 0.0, total_error = 0.0;
    for (const Panel& p : heap) {
        total_value += p.value;
        total_error += p.error;
    }

    int splits = 0;
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_value)); };
    while (total_error > tolerance() && splits < cfg.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end(), PanelWorse{});
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at floating resolution
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), PanelWorse{});
            break;
        }
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), PanelWorse{});
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), PanelWorse{});
        ++splits;
    }

    IntegralResult res;
    res.value = stable_sum(heap, [](const Panel& p) { return p.value; });
    res.error_estimate = stable_sum(heap, [](const Panel& p) { return p.error; });
    res.subdivisions_used = splits;
    res.converged =
        res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(res.value));
    return res;
}

std::vector<double> make_edges(double a, double b, std::span<const double> breakpoints) {
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// Pieces of a split integral get half the tolerance each so the combined
// estimate still meets the caller's contract.
QuadratureConfig half_budget(const QuadratureConfig& cfg) {
    QuadratureConfig h = cfg;
    h.abs_tol = 0.5 * cfg.abs_tol;
    h.rel_tol = 0.5 * cfg.rel_tol;
    return h;
}

IntegralResult combine(const IntegralResult& lhs, const IntegralResult& rhs,
                       const QuadratureConfig& cfg) {
    IntegralResult res;
    res.value = lhs.value + rhs.value;
    res.error_estimate = lhs.error_estimate + rhs.error_estimate;
    res.subdivisions_used = lhs.subdivisions_used + rhs.subdivisions_used;
    res.converged =
        res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(res.value));
    return res;
}

// Rational compression of [a, inf): rho = a + t/(1-t).
IntegralResult integrate_rational_tail(const Integrand& f, double a, const QuadratureConfig& cfg,
                                       std::span<const double> breakpoints) {
    auto g = [&f, a](double t) {
        const double u = 1.0 - t;
        const double rho = a + t / u;
        return f(rho) / (u * u);
    };
    std::vector<double> tbreaks;
    for (double x : breakpoints)
        if (x > a && std::isfinite(x)) tbreaks.push_back((x - a) / (1.0 + x - a));
    return adapt(g, make_edges(0.0, 1.0, tbreaks), cfg);
}

constexpr double kLogDomainRadius = 1e4;

// rho = exp(s) substitution for ranges spanning many decades.
IntegralResult integrate_log_domain(const Integrand& f, double r0, double r1,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> breakpoints) {
    auto g = [&f](double s) {
        const double rho = std::exp(s);
        return f(rho) * rho;
    };
    std::vector<double> sbreaks;
    for (double x : breakpoints)
        if (x > r0 && x < r1) sbreaks.push_back(std::log(x));
    return adapt(g, make_edges(std::log(r0), std::log(r1), sbreaks), cfg);
}

}  // namespace

IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                         std::span<const double> breakpoints) {
    if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
    return adapt(f, make_edges(a, b, breakpoints), cfg);
}

IntegralResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg,
                                     std::span<const double> breakpoints) {
    if (cfg.infinite_transform.kind == InfiniteTransform::Kind::rational)
        return integrate_rational_tail(f, a, cfg, breakpoints);
    const double split = a + cfg.infinite_transform.split_radius;
    const QuadratureConfig part = half_budget(cfg);
    const IntegralResult head = integrate(f, a, split, part, breakpoints);
    const IntegralResult tail = integrate_rational_tail(f, split, part, breakpoints);
    return combine(head, tail, cfg);
}

IntegralResult integrate_radial(Dimension dim, const Integrand& g, const QuadratureConfig& cfg,
                                std::span<const double> breakpoints) {
    const double omega = constants(dim).sphere_measure;
    const int n = dim.n;
    auto f = [&g, omega, n](double rho) { return omega * g(rho) * ipow(rho, n - 1); };
    return integrate_to_infinity(f, 0.0, cfg, breakpoints);
}

IntegralResult integrate_radial_range(Dimension dim, const Integrand& g, double r0, double r1,
                                      const QuadratureConfig& cfg,
                                      std::span<const double> breakpoints) {
    if (!(r0 >= 0.0) || !(r1 > r0)) throw std::invalid_argument("integrate_radial_range: bad range");
    const double omega = constants(dim).sphere_measure;
    const int n = dim.n;
    auto f = [&g, omega, n](double rho) { return omega * g(rho) * ipow(rho, n - 1); };
    if (r1 <= kLogDomainRadius) return integrate(f, r0, r1, cfg, breakpoints);
    const double split = std::max(r0, kLogDomainRadius);
    const QuadratureConfig part = half_budget(cfg);
    IntegralResult head{0.0, 0.0, 0, true};
    if (r0 < split) head = integrate(f, r0, split, part, breakpoints);
    const IntegralResult tail = integrate_log_domain(f, split, r1, part, breakpoints);
    return combine(head, tail, cfg);
}

bool radial_integral_diverges(Dimension dim, const Integrand& g, const QuadratureConfig& cfg) {
    const double radii[] = {10.0, 1e2, 1e3, 1e4};
    double prev = 0.0, prev_inc = 0.0;
    bool growing = true;
    for (int i = 0; i < 4; ++i) {
        const IntegralResult r = integrate_radial_range(dim, g, 0.0, radii[i], cfg);
        const double inc = r.value - prev;
        if (i > 0 && inc < 0.5 * prev_inc) growing = false;
        prev = r.value;
        prev_inc = inc;
    }
    return growing;
}

IntegralResult integrate_profile_break_aware(
    Dimension dim, const Profile& u,
    const std::function<double(double, double, double)>& term, const QuadratureConfig& cfg) {
    auto g = [&](double rho) { return term(rho, u.value(rho), u.slope(rho)); };
    const auto tail = u.flat_tail();
    const std::vector<double>& kinks = u.kinks();
    if (tail) {
        if (tail->start <= 0.0) return IntegralResult{0.0, 0.0, 0, true};
        return integrate_radial_range(dim, g, 0.0, tail->start, cfg, kinks);
    }
    return integrate_radial(dim, g, cfg, kinks);
}

}  // namespace onofri
