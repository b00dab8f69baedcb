// onofri-lab: verification suites and parameter sweeps for the Euclidean
// Onofri / logarithmic Moser-Trudinger laboratory. Emits one JSON report per
// run plus CSV sweep data; exit code 0 iff every case passed.

#include "onofri/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <exception>
#include <string>

namespace {

void print_summary(const onofri::Report& report) {
    std::printf("command: %s\n", report.command.c_str());
    for (const auto& c : report.cases) {
        std::string params;
        for (const auto& [k, v] : c.params) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %s=%g", k.c_str(), v);
            params += buf;
        }
        std::printf("  [%s] %-28s%s  residual=%.3e\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                    params.c_str(), c.residual);
    }
    std::printf("%s  (%.0f ms, %zu cases)\n", report.pass ? "PASS" : "FAIL", report.wall_ms,
                report.cases.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"onofri-lab: sharp-inequality verification suites"};
    app.require_subcommand(1);
    app.fallthrough();  // flags may follow the subcommand

    onofri::RunConfig cfg;
    std::string config_path;
    std::string transform = "rational";

    const std::map<std::string, std::string> blurbs{
        {"verify-measure", "total measure and tail closed forms, n = 2..6"},
        {"verify-bounds", "fuzz the remainder and binomial inequalities"},
        {"verify-onofri", "nonnegativity and shift invariance of the space functional"},
        {"minimize-cc", "ball functional along the sharp family; optional descent"},
        {"equivalence-sandwich", "both directions of the sharp-constant identity"},
        {"counterexample", "divergent mixed seminorm vs convergent gradient norm"},
        {"density-demo", "truncation and mollification distances shrink to zero"},
        {"identities", "exact integral identity table and the log-weight integral"},
    };
    for (const std::string& name : onofri::command_names()) {
        CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
        sub->callback([&cfg, name] { cfg.command = name; });
    }

    app.add_option("--n", cfg.n, "ambient dimension (>= 2)");
    app.add_option("--seed", cfg.seed, "fuzz seed; fixed seed => identical report");
    app.add_option("--abs-tol", cfg.quadrature.abs_tol, "quadrature absolute tolerance");
    app.add_option("--rel-tol", cfg.quadrature.rel_tol, "quadrature relative tolerance");
    app.add_option("--max-subdivisions", cfg.quadrature.max_subdivisions,
                   "quadrature panel budget");
    app.add_option("--transform", transform, "infinite-domain reduction: rational|split");
    app.add_option("--split-radius", cfg.quadrature.infinite_transform.split_radius,
                   "split radius for --transform split");
    app.add_option("--r-list", cfg.r_list, "radii sweep, comma separated")->delimiter(',');
    app.add_option("--k-list", cfg.k_list, "mollifier/truncation stages")->delimiter(',');
    app.add_option("--K-list", cfg.big_k_list, "counterexample partial-sum sizes")->delimiter(',');
    app.add_option("--out", cfg.out_dir, "output directory for report JSON and CSV");
    app.add_option("--profile", cfg.profile_kind, "sandwich test profile: zero|bump");
    app.add_option("--pairs", cfg.fuzz_pairs, "fuzz pairs per dimension");
    app.add_option("--profiles", cfg.fuzz_profiles, "fuzz profiles per dimension");
    app.add_option("--cap-radius", cfg.cap_radius, "density-demo target cap radius");
    app.add_flag("--descent", cfg.run_descent, "run projected gradient descent");
    app.add_option("--descent-steps", cfg.descent_steps, "descent iteration budget");
    app.add_option("--config", config_path, "key=value file overriding the flags");

    CLI11_PARSE(app, argc, argv);

    if (transform == "split")
        cfg.quadrature.infinite_transform.kind = onofri::InfiniteTransform::Kind::split_at;
    else if (transform != "rational") {
        std::fprintf(stderr, "unknown transform: %s\n", transform.c_str());
        return 2;
    }

    try {
        if (!config_path.empty()) cfg = onofri::apply_config_file(cfg, config_path);
        const onofri::Report report = onofri::run_command(cfg);
        onofri::write_report_files(report);
        print_summary(report);
        return report.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
