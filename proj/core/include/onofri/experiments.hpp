#pragma once

#include "onofri/quadrature.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace onofri {

// One experiment invocation. `command` selects the suite; the sweep lists have
// per-command defaults when left empty. A fixed seed makes every numeric field
// of the report reproducible byte for byte (wall time excepted).
struct RunConfig {
    std::string command;
    int n = 2;
    std::uint64_t seed = 20240101;
    QuadratureConfig quadrature;
    std::vector<double> r_list;       // radii sweeps
    std::vector<int> k_list;          // mollifier / truncation stages
    std::vector<int> big_k_list;      // counterexample partial-sum sizes
    std::string out_dir;              // empty: write nothing
    std::string profile_kind = "bump";  // sandwich test profile: "zero" | "bump"
    int fuzz_pairs = 100000;
    int fuzz_profiles = 200;
    double cap_radius = 1000.0;       // density-demo target flattens here
    bool run_descent = false;
    int descent_steps = 40;
};

struct CaseResult {
    std::string name;
    std::map<std::string, double> params;
    std::map<std::string, double> values;
    double residual = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    RunConfig config;
    std::vector<CaseResult> cases;
    bool pass = false;
    double wall_ms = 0.0;
};

// Individual suites.
Report cmd_verify_measure(const RunConfig& cfg);
Report cmd_verify_bounds(const RunConfig& cfg);
Report cmd_verify_onofri(const RunConfig& cfg);
Report cmd_minimize_cc(const RunConfig& cfg);
Report cmd_equivalence_sandwich(const RunConfig& cfg);
Report cmd_counterexample(const RunConfig& cfg);
Report cmd_density_demo(const RunConfig& cfg);
Report cmd_identities(const RunConfig& cfg);

// Dispatch on cfg.command; throws std::invalid_argument for unknown commands.
Report run_command(const RunConfig& cfg);

const std::vector<std::string>& command_names();

// {command, config, cases: [{params, values, residual, pass}], pass, wall_ms}
std::string report_json(const Report& report);

// Writes <command>.json plus per-command CSV sweep data under out_dir
// (created if missing). No-op when out_dir is empty.
void write_report_files(const Report& report);

// key=value lines override the corresponding config fields; '#' comments and
// blank lines are skipped. Unknown keys throw.
RunConfig apply_config_file(RunConfig cfg, const std::string& path);

// Deterministic uniform generator used by the fuzz suites.
class FuzzRng {
public:
    explicit FuzzRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t state_;
};

// Projected gradient descent on a fixed grid, keeping the boundary value 0.
// Stresses the strict sharp bound; the infimum itself is not attained.
struct DescentResult {
    double best_value;
    std::vector<double> best_values;
    int iterations;
    double gradient_fd_rel_err;
};

DescentResult minimize_ball_functional(Dimension dim, std::span<const double> nodes,
                                       std::vector<double> initial, int max_steps,
                                       const QuadratureConfig& cfg);

}  // namespace onofri
