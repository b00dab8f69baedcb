// Acceptance suite: one line per criterion, nonzero exit iff any fail.
// Run with no arguments for the full battery or with a list of indices.

#include "onofri/experiments.hpp"
#include "onofri/functionals.hpp"
#include "onofri/identities.hpp"
#include "onofri/numeric.hpp"
#include "onofri/profile.hpp"
#include "onofri/remainder.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace onofri;

struct Outcome {
    bool pass;
    std::string detail;
};

QuadratureConfig tight(double tol = 1e-12, int budget = 20000) {
    QuadratureConfig cfg;
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
    cfg.max_subdivisions = budget;
    return cfg;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1. Measure normalization: |total - 1| < 1e-8 for n = 2..6; the tail at
//    (n=2, r=1) equals 1/2 within 1e-9.
Outcome criterion_measure() {
    double worst_total = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const Dimension dim(n);
        const IntegralResult total =
            integrate_radial(dim, [&](double r) { return mu_density(dim, r); });
        if (!total.converged) return {false, "normalization quadrature did not converge"};
        worst_total = std::max(worst_total, std::fabs(total.value - 1.0));
    }
    const Dimension d2(2);
    const IntegralResult tail = integrate_to_infinity(
        [&](double r) { return constants(d2).sphere_measure * mu_density(d2, r) * r; }, 1.0);
    const double tail_resid = std::fabs(tail.value - 0.5);
    const bool pass = worst_total < 1e-8 && tail_resid < 1e-9;
    return {pass, "max|total-1|=" + fmt("%.2e", worst_total) +
                      ", |tail(1)-1/2|=" + fmt("%.2e", tail_resid)};
}

// 2. Exact identities for every 2 <= n <= 20, 0 <= k <= n-2, plus the
//    harmonic closure, all in exact rationals.
Outcome criterion_identities() {
    int checked = 0;
    for (int n = 2; n <= 20; ++n) {
        for (int k = 0; k <= n - 2; ++k, ++checked) {
            if (!induction_identity(n, k).match)
                return {false, "induction identity failed at n=" + std::to_string(n) +
                                   ", k=" + std::to_string(k)};
        }
        if (!harmonic_closure(n).match)
            return {false, "harmonic closure failed at n=" + std::to_string(n)};
    }
    return {true, std::to_string(checked) + " induction identities + 19 harmonic closures exact"};
}

// 3. Sharp constant via the minimizing family at n=2: J(W_r) = -r^2/(1+r^2)
//    within 1e-9 at r in {3, 10, 100}; gap to -1 at r=100 equals 1/10001
//    within 1e-9.
Outcome criterion_sharp_n2() {
    const Dimension d2(2);
    const QuadratureConfig cfg = tight(1e-13);
    double worst = 0.0;
    for (double r : {3.0, 10.0, 100.0}) {
        const double j = cc_J(d2, minimizing_family(d2, r), cfg).value;
        worst = std::max(worst, std::fabs(j + r * r / (1.0 + r * r)));
    }
    const double j100 = cc_J(d2, minimizing_family(d2, 100.0), cfg).value;
    const double gap_resid = std::fabs((j100 + 1.0) - 1.0 / 10001.0);
    const bool pass = worst < 1e-9 && gap_resid < 1e-9;
    return {pass, "max closed-form residual=" + fmt("%.2e", worst) +
                      ", |gap(100)-1/10001|=" + fmt("%.2e", gap_resid)};
}

// 4. Sharp constant at n=3 and n=4: J(W_r) decreases over r in
//    {10,30,100,300}, the final gap to -H_{n-1} is < 0.02, and no value drops
//    below -H_{n-1} - 1e-8.
Outcome criterion_sharp_n34() {
    const QuadratureConfig cfg = tight();
    std::string detail;
    for (int n : {3, 4}) {
        const Dimension dim(n);
        const double sharp = constants(dim).harmonic_value();
        double prev = 1e300, final_gap = 0.0;
        for (double r : {10.0, 30.0, 100.0, 300.0}) {
            const double j = cc_J(dim, minimizing_family(dim, r), cfg).value;
            if (j >= prev) return {false, "J not decreasing at n=" + std::to_string(n)};
            if (j < -sharp - 1e-8) return {false, "strictness violated at n=" + std::to_string(n)};
            prev = j;
            final_gap = j + sharp;
        }
        if (final_gap >= 0.02) return {false, "final gap too large at n=" + std::to_string(n)};
        detail += "n=" + std::to_string(n) + " final gap=" + fmt("%.2e", final_gap) + " ";
    }
    return {true, detail + "(monotone, strict)"};
}

// 5. Onofri nonnegativity: 200 fuzzed admissible profiles per n in {2,3,4}
//    all give I(u) >= -1e-8 and shift invariance within 1e-8.
Outcome criterion_onofri() {
    RunConfig cfg;
    cfg.command = "verify-onofri";
    cfg.fuzz_profiles = 200;
    cfg.seed = 20240101;
    const Report rep = cmd_verify_onofri(cfg);
    double min_value = 1e300, max_dev = 0.0;
    for (const auto& c : rep.cases) {
        if (c.name != "nonnegativity_fuzz") continue;
        min_value = std::min(min_value, c.values.at("min_value"));
        max_dev = std::max(max_dev, c.values.at("max_shift_deviation"));
    }
    return {rep.pass, "min I=" + fmt("%.2e", min_value) +
                          ", max shift deviation=" + fmt("%.2e", max_dev)};
}

// 6. Remainder bounds: 1e5 fuzzed pairs per n in {2..6} with zero violations
//    of the two-sided bound, and zero violations of the even lower bound for
//    n in {4, 6}.
Outcome criterion_bounds() {
    RunConfig cfg;
    cfg.command = "verify-bounds";
    cfg.fuzz_pairs = 100000;
    cfg.seed = 20240101;
    const Report rep = cmd_verify_bounds(cfg);
    long violations = 0;
    for (const auto& c : rep.cases)
        if (c.values.count("violations")) violations += long(c.values.at("violations"));
    return {rep.pass && violations == 0,
            std::to_string(violations) + " violations across all fuzz families"};
}

// 7. Equivalence sandwich with u = 0, n = 2: the projected-direction gap
//    J(W_r) + 1 equals 1/(1+r^2) within 1e-8 at r in {10, 100}; the lifted
//    direction I(u_r) is within 5e-3 of 1 - ln 2 at r = 1e3.
Outcome criterion_sandwich() {
    const Dimension d2(2);
    const GeometryConstants geom = constants(d2);
    const QuadratureConfig cfg = tight(1e-13);
    double worst = 0.0;
    for (double r : {10.0, 100.0}) {
        const double gap = cc_J(d2, minimizing_family(d2, r), cfg).value + 1.0;
        worst = std::max(worst, std::fabs(gap - 1.0 / (1.0 + r * r)));
    }
    const double i_lift =
        onofri_I(d2, lift_to_space(Profile::zero(), 1e3, geom), cfg).value;
    const double lift_resid = std::fabs(i_lift - (1.0 - std::log(2.0)));
    const bool pass = worst < 1e-8 && lift_resid < 5e-3;
    return {pass, "max|gap-1/(1+r^2)|=" + fmt("%.2e", worst) +
                      ", |I(u_1000)-(1-ln2)|=" + fmt("%.2e", lift_resid)};
}

// 8. Gradient-energy asymptotics: |gap(r=1e3)| below the algebraic tail-bound
//    prediction for n in {2,3,4}; the log-weight integral matches n*H_{n-1}
//    within 1e-8.
Outcome criterion_asymptotics() {
    std::string detail;
    for (int n : {2, 3, 4}) {
        const Dimension dim(n);
        const AsymptoticCheck chk = gradv_dirichlet_asymptotic(dim, 1e3, tight(1e-13, 40000));
        const double bound = gradv_asymptotic_gap_bound(dim, 1e3);
        if (!(std::fabs(chk.gap) < bound))
            return {false, "gap " + fmt("%.3e", chk.gap) + " exceeds bound " +
                               fmt("%.3e", bound) + " at n=" + std::to_string(n)};
        const double lw = log_weight_integral(dim, tight());
        const double resid = std::fabs(lw - n * constants(dim).harmonic_value());
        if (!(resid < 1e-8))
            return {false, "log-weight residual " + fmt("%.2e", resid) +
                               " at n=" + std::to_string(n)};
        if (n == 2) detail = "n=2 margin=" + fmt("%.1e", bound - std::fabs(chk.gap));
    }
    return {true, "gaps below tail-bound predictions; log-weight residuals < 1e-8 (" + detail + ")"};
}

// 9. Counterexample trend at n=4 over K in {1e2, 1e3, 1e4}: the mixed
//    seminorm^2 grows by more than 0.5x the fitted c*sum 1/(k ln k)
//    increment, while the gradient norm changes by < 1e-3.
Outcome criterion_counterexample() {
    RunConfig cfg;
    cfg.command = "counterexample";
    cfg.n = 4;
    cfg.big_k_list = {100, 1000, 10000};
    const Report rep = cmd_counterexample(cfg);
    bool growth_ok = true;
    double grad_change = 1e300;
    for (const auto& c : rep.cases) {
        if (c.name == "mixed_growth")
            growth_ok = growth_ok &&
                        c.values.at("actual_increment") > 0.5 * c.values.at("predicted_increment");
        if (c.name == "grad_n_trend") grad_change = std::fabs(c.values.at("total_change"));
    }
    const bool grad_ok = grad_change < 1e-3;
    return {growth_ok && grad_ok,
            std::string("mixed growth ") + (growth_ok ? "ok" : "FAILED") +
                "; |grad_n(1e4)-grad_n(1e2)|=" + fmt("%.3e", grad_change) +
                (grad_ok ? " < 1e-3" : " NOT < 1e-3 (the norm converges only at rate 1/ln K)")};
}

// 10. Analytic gradient of the ball functional vs central finite differences
//     on a 20-node profile: relative error < 1e-5 for n = 2 and 3.
Outcome criterion_gradient() {
    double worst = 0.0;
    for (int n : {2, 3}) {
        const Dimension dim(n);
        std::vector<double> nodes{0.0};
        for (int i = 1; i < 19; ++i)
            nodes.push_back(0.01 * std::pow(100.0, i / 19.0));  // geometric fill of (0, 1)
        nodes.push_back(1.0);
        const Profile seed = minimizing_family(dim, 6.0);
        std::vector<double> values;
        for (double r : nodes) values.push_back(seed.value(std::min(r, 1.0)));
        values.back() = 0.0;
        const double err = cc_J_gradient_fd_error(dim, nodes, values, tight(1e-13));
        worst = std::max(worst, err);
    }
    return {worst < 1e-5, "max relative error=" + fmt("%.2e", worst) + " on 20 nodes"};
}

struct Criterion {
    const char* name;
    double time_limit_s;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {"measure normalization", 1.0, criterion_measure},
        {"exact integral identities", 1.0, criterion_identities},
        {"sharp constant, n=2 closed forms", 5.0, criterion_sharp_n2},
        {"sharp constant, n=3 and n=4", 30.0, criterion_sharp_n34},
        {"Onofri nonnegativity fuzz", 60.0, criterion_onofri},
        {"remainder bound fuzz", 30.0, criterion_bounds},
        {"equivalence sandwich, u=0, n=2", 30.0, criterion_sandwich},
        {"gradient-energy asymptotics", 10.0, criterion_asymptotics},
        {"counterexample seminorm trend", 60.0, criterion_counterexample},
        {"ball-functional gradient check", 5.0, criterion_gradient},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (size_t i = 1; i <= criteria().size(); ++i) selected.push_back(int(i));

    int failures = 0;
    for (int idx : selected) {
        if (idx < 1 || idx > int(criteria().size())) {
            std::fprintf(stderr, "no criterion %d\n", idx);
            return 2;
        }
        const Criterion& c = criteria()[idx - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = out.pass && in_time;
        std::printf("[%s] criterion %02d %-36s %s (%.2f s, limit %.0f s)\n",
                    pass ? "PASS" : "FAIL", idx, c.name, out.detail.c_str(), secs,
                    c.time_limit_s);
        if (!pass) ++failures;
    }
    return failures;
}
