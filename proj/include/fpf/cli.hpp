// Command-line front end: design-map, assemble, navigate, check.
#pragma once

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpf/scenario.hpp"
#include "fpf/scenario_io.hpp"

namespace fpf {

namespace cli_detail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

inline int run_design_map(double kv_min, double kv_max, double vs_min, double vs_max, int grid,
                          const std::string& out) {
    const auto entries = design_map(kv_min, kv_max, vs_min, vs_max, grid);
    write_design_map(entries, out);
    std::size_t solved = 0;
    for (const auto& e : entries) solved += e.scaled_radius.has_value();
    std::printf("design map: %zu cells (%zu solved) -> %s\n", entries.size(), solved,
                out.c_str());
    return kExitOk;
}

inline int run_check(const std::string& config) {
    const Scenario s = parse_scenario_file(config);
    std::printf("ok: %d robots, formation radius %.6g\n", s.n_robots,
                formation_radius_world(s.fpf));
    return kExitOk;
}

inline bool assembly_succeeded(const RunResult& result, const Scenario& s) {
    if (result.termination() != TerminationReason::Converged) return false;
    const WorldState& final_state = result.output.trajectory.back();
    std::vector<Vec2> positions;
    positions.reserve(final_state.robots.size());
    for (const Robot& r : final_state.robots) positions.push_back(r.position);
    return check_formation(positions, final_state.virtual_agent.position, result.target_radius,
                           s.formation_tolerance)
        .ok;
}

inline int run_assemble(const std::string& config, const std::string& out_traj,
                        const std::string& out_summary) {
    const Scenario s = parse_scenario_file(config);
    Timer timer;
    const RunResult result = assemble(s);
    const auto summary = build_run_summary("assemble", result, s, timer.seconds());
    write_trajectory(result, out_traj);
    write_summary(summary, out_summary);
    if (!assembly_succeeded(result, s)) {
        std::fprintf(stderr, "assembly did not converge to a formation (termination: %s)\n",
                     to_string(result.termination()).c_str());
        return kExitRuntime;
    }
    std::printf("assemble: %zu steps, formation radius %.6g -> %s\n", result.output.steps(),
                result.target_radius, out_traj.c_str());
    return kExitOk;
}

inline int run_navigate(const std::string& config, const std::string& out_traj,
                        const std::string& out_summary) {
    const Scenario s = parse_scenario_file(config);
    Timer timer;
    const RunResult assembled = assemble(s);
    if (!assembly_succeeded(assembled, s)) {
        std::fprintf(stderr,
                     "assembly phase did not converge to a formation (termination: %s)\n",
                     to_string(assembled.termination()).c_str());
        return kExitRuntime;
    }
    const RunResult result = navigate(s, assembled.output.trajectory.back());
    auto summary = build_run_summary("navigate", result, s, timer.seconds());
    summary["assembly_steps"] = assembled.output.steps();
    write_trajectory(result, out_traj);
    write_summary(summary, out_summary);
    if (result.termination() != TerminationReason::GoalReached) {
        std::fprintf(stderr, "navigation did not reach the goal (termination: %s)\n",
                     to_string(result.termination()).c_str());
        return kExitRuntime;
    }
    std::printf("navigate: %zu steps, %zu collision events -> %s\n", result.output.steps(),
                result.collision_events.size(), out_traj.c_str());
    return kExitOk;
}

}  // namespace cli_detail

/// Dispatches one CLI invocation. `args` excludes the program name. Returns
/// 0 on success, 1 on validation/usage errors, 2 on runtime failures
/// (divergence, non-convergence, unwritable outputs).
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"Formation potential field navigation toolkit"};
    app.require_subcommand(1);

    auto* dm = app.add_subcommand("design-map",
                                  "Solve the ring equation over a (k_v, varsigma) grid");
    double kv_min = 1.0, kv_max = 2.5, vs_min = 1.0, vs_max = 2.5;
    int grid = 50;
    std::string dm_out;
    dm->add_option("--kv-min", kv_min, "Lower k_v bound (exclusive)")->capture_default_str();
    dm->add_option("--kv-max", kv_max, "Upper k_v bound (inclusive)")->capture_default_str();
    dm->add_option("--vs-min", vs_min, "Lower varsigma bound (exclusive)")
        ->capture_default_str();
    dm->add_option("--vs-max", vs_max, "Upper varsigma bound (inclusive)")
        ->capture_default_str();
    dm->add_option("--grid", grid, "Cells per axis")->capture_default_str();
    dm->add_option("--out", dm_out, "Output CSV path")->required();

    std::string cfg_assemble, traj_assemble, summary_assemble;
    auto* as = app.add_subcommand("assemble", "Self-organize robots into a formation");
    as->add_option("--config", cfg_assemble, "Scenario config (JSON)")->required();
    as->add_option("--out-traj", traj_assemble, "Trajectory CSV path")->required();
    as->add_option("--out-summary", summary_assemble, "Summary JSON path")->required();

    std::string cfg_navigate, traj_navigate, summary_navigate;
    auto* nav = app.add_subcommand("navigate",
                                   "Assemble, then drive the formation to the goal");
    nav->add_option("--config", cfg_navigate, "Scenario config (JSON)")->required();
    nav->add_option("--out-traj", traj_navigate, "Trajectory CSV path")->required();
    nav->add_option("--out-summary", summary_navigate, "Summary JSON path")->required();

    std::string cfg_check;
    auto* check = app.add_subcommand("check", "Validate a scenario config and exit");
    check->add_option("--config", cfg_check, "Scenario config (JSON)")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::printf("%s", app.help().c_str());
        return cli_detail::kExitOk;
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n%s", e.what(), app.help().c_str());
        return cli_detail::kExitValidation;
    }

    try {
        if (dm->parsed()) {
            return cli_detail::run_design_map(kv_min, kv_max, vs_min, vs_max, grid, dm_out);
        }
        if (as->parsed()) {
            return cli_detail::run_assemble(cfg_assemble, traj_assemble, summary_assemble);
        }
        if (nav->parsed()) {
            return cli_detail::run_navigate(cfg_navigate, traj_navigate, summary_navigate);
        }
        if (check->parsed()) {
            return cli_detail::run_check(cfg_check);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return cli_detail::kExitValidation;
    } catch (const MalformedRangeError& e) {
        std::fprintf(stderr, "range error: %s\n", e.what());
        return cli_detail::kExitValidation;
    } catch (const Error& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return cli_detail::kExitRuntime;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return cli_detail::kExitRuntime;
    }
    return cli_detail::kExitValidation;
}

}  // namespace fpf
