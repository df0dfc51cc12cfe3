// Acceptance suite: one criterion per check, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpf/cli.hpp"
#include "fpf/dynamics.hpp"
#include "fpf/fields.hpp"
#include "fpf/fpf_core.hpp"
#include "fpf/scenario.hpp"
#include "fpf/scenario_io.hpp"
#include "support/oracles.hpp"

using fpf::FpfParams;
using fpf::RunResult;
using fpf::Scenario;
using fpf::Vec2;
using testsupport::TestRng;

namespace {

struct Outcome {
    bool pass = false;
    std::string details;
};

int failures = 0;

void report(int id, const std::string& title, double budget_seconds,
            const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.details = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = true;
    if (budget_seconds > 0.0 && elapsed >= budget_seconds) {
        in_budget = false;
        outcome.details += " [over budget]";
    }
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    if (budget_seconds > 0.0) {
        std::printf("[%s] criterion %d: %s (%.2f s / %.0f s) %s\n", pass ? "PASS" : "FAIL", id,
                    title.c_str(), elapsed, budget_seconds, outcome.details.c_str());
    } else {
        std::printf("[%s] criterion %d: %s (%.2f s) %s\n", pass ? "PASS" : "FAIL", id,
                    title.c_str(), elapsed, outcome.details.c_str());
    }
    std::fflush(stdout);
}

std::filesystem::path scenario_path(const char* name) {
    return std::filesystem::path(FPF_SCENARIO_DIR) / name;
}

std::filesystem::path work_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "fpfnav_acceptance";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FpfParams random_valid_params(TestRng& rng, double vs_lo = 1.05, double vs_hi = 5.0,
                              double kv_hi = 5.0) {
    FpfParams p;
    p.sigma1 = rng.uniform(0.3, 3.0);
    p.sigma2 = p.sigma1 * rng.uniform(vs_lo, vs_hi);
    p.k_v = rng.uniform(1.001, kv_hi);
    return p;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome design_point_reproduction() {
    const double root = fpf::solve_scaled_radius(2.0, 2.4);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "scaled radius = %.6f (expected 0.80 +/- 0.02)", root);
    return {std::fabs(root - 0.80) <= 0.02, buf};
}

// ---- criterion 2 -----------------------------------------------------------

Outcome boundary_conditions() {
    TestRng rng(1002);
    for (int i = 0; i < 100; ++i) {
        const FpfParams p = random_valid_params(rng);
        if (fpf::fpf_potential_radial(p, 0.0) != 1.0) {
            return {false, "potential at the center is not exactly 1"};
        }
        const double far = fpf::fpf_potential_radial(p, 50.0 / p.sigma2);
        if (std::fabs(far - (2.0 - p.k_v)) >= 1e-6) {
            return {false, "far-field limit misses 2 - k_v"};
        }
    }
    return {true, "100 parameter sets: exact center value, far field within 1e-6"};
}

// ---- criterion 3 -----------------------------------------------------------

struct GradientCase {
    std::function<double(const Vec2&)> potential;
    Vec2 position;
    Vec2 force;
};

Outcome gradient_oracle() {
    TestRng rng(1003);
    const int wanted = 1000;

    auto check_op = [&](const char* name,
                        const std::function<std::optional<GradientCase>()>& sample,
                        std::string& message) {
        int accepted = 0;
        double worst = 0.0;
        int guard = 0;
        while (accepted < wanted && ++guard < 100000) {
            const auto c = sample();
            if (!c) continue;
            if (c->force.norm() < 1e-2) continue;  // relative error needs scale
            const Vec2 fd = testsupport::central_gradient(c->potential, c->position);
            const double rel = (c->force + fd).norm() / c->force.norm();
            worst = std::max(worst, rel);
            if (rel >= 1e-6) {
                message = std::string(name) + ": relative error " + std::to_string(rel);
                return false;
            }
            ++accepted;
        }
        if (accepted != wanted) {
            message = std::string(name) + ": could not draw enough valid samples";
            return false;
        }
        return true;
    };

    std::string message;

    const bool ok_fpf = check_op(
        "fpf_force",
        [&]() -> std::optional<GradientCase> {
            const FpfParams p = random_valid_params(rng);
            const Vec2 qv = rng.point(-2.0, 2.0);
            const Vec2 q = qv + rng.point(-2.5, 2.5) * (1.0 / p.sigma1);
            return GradientCase{[=](const Vec2& x) { return fpf::fpf_potential(p, x, qv); }, q,
                                fpf::fpf_force(p, q, qv)};
        },
        message);

    const bool ok_pair = ok_fpf && check_op(
        "inter_robot_force",
        [&]() -> std::optional<GradientCase> {
            const fpf::InterRobotParams p{rng.uniform(0.2, 2.0), rng.uniform(1.0, 6.0)};
            const Vec2 qj = rng.point(-2.0, 2.0);
            const Vec2 qi = qj + rng.point(-1.5, 1.5);
            if (fpf::distance(qi, qj) < 0.02) return std::nullopt;
            return GradientCase{
                [=](const Vec2& x) { return fpf::inter_robot_potential(p, x, qj); }, qi,
                fpf::inter_robot_force(p, qi, qj)};
        },
        message);

    const bool ok_obs = ok_pair && check_op(
        "obstacle_force",
        [&]() -> std::optional<GradientCase> {
            fpf::Obstacle obs;
            obs.k_r = rng.uniform(0.3, 2.0);
            obs.sigma_o = rng.uniform(1.0, 5.0);
            const int sources = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
            for (int k = 0; k < sources; ++k) obs.source_points.push_back(rng.point(-1.5, 1.5));
            const Vec2 q = rng.point(-2.5, 2.5);
            for (const Vec2& sp : obs.source_points) {
                if (fpf::distance(q, sp) < 0.02) return std::nullopt;
            }
            return GradientCase{[=](const Vec2& x) { return fpf::obstacle_potential(obs, x); },
                                q, fpf::obstacle_force(obs, q)};
        },
        message);

    const bool ok_goal = ok_obs && check_op(
        "goal_force",
        [&]() -> std::optional<GradientCase> {
            const fpf::Goal g{rng.point(-2.0, 2.0), rng.uniform(0.1, 3.0)};
            const Vec2 q = rng.point(-2.0, 2.0);
            return GradientCase{[=](const Vec2& x) { return fpf::goal_potential(g, x); }, q,
                                fpf::goal_force(g, q)};
        },
        message);

    const bool ok_va = ok_goal && check_op(
        "virtual_agent_force",
        [&]() -> std::optional<GradientCase> {
            const fpf::Goal g{rng.point(-2.0, 2.0), rng.uniform(0.1, 2.0)};
            std::vector<fpf::Obstacle> obstacles(2);
            for (auto& obs : obstacles) {
                obs.k_r = rng.uniform(0.3, 1.5);
                obs.sigma_o = rng.uniform(1.0, 5.0);
                obs.source_points = {rng.point(-1.5, 1.5), rng.point(-1.5, 1.5)};
            }
            const Vec2 q = rng.point(-2.0, 2.0);
            for (const auto& obs : obstacles) {
                for (const Vec2& sp : obs.source_points) {
                    if (fpf::distance(q, sp) < 0.02) return std::nullopt;
                }
            }
            return GradientCase{
                [=](const Vec2& x) { return fpf::virtual_agent_potential(g, obstacles, x); }, q,
                fpf::virtual_agent_force(g, obstacles, q)};
        },
        message);

    const bool ok_robot = ok_va && check_op(
        "robot_force",
        [&]() -> std::optional<GradientCase> {
            const FpfParams p{2.0, 1.0, 2.4};
            const fpf::InterRobotParams irp{rng.uniform(0.05, 1.0), rng.uniform(2.0, 6.0)};
            std::vector<fpf::Obstacle> obstacles(1);
            obstacles[0].k_r = rng.uniform(0.3, 1.5);
            obstacles[0].sigma_o = rng.uniform(1.0, 4.0);
            obstacles[0].source_points = {rng.point(-1.5, 1.5), rng.point(-1.5, 1.5),
                                          rng.point(-1.5, 1.5)};
            std::vector<fpf::Robot> robots;
            for (int i = 0; i < 5; ++i) {
                robots.push_back(fpf::Robot{i + 1, rng.point(-1.5, 1.5), {}, 0.016});
            }
            const std::size_t target = static_cast<std::size_t>(rng.uniform(0.0, 4.999));
            for (std::size_t a = 0; a < robots.size(); ++a) {
                for (std::size_t b = a + 1; b < robots.size(); ++b) {
                    if (fpf::distance(robots[a].position, robots[b].position) < 0.02) {
                        return std::nullopt;
                    }
                }
                for (const Vec2& sp : obstacles[0].source_points) {
                    if (fpf::distance(robots[a].position, sp) < 0.02) return std::nullopt;
                }
            }
            const Vec2 qv{0.0, 0.0};
            auto potential = [=](const Vec2& x) {
                auto moved = robots;
                moved[target].position = x;
                return fpf::robot_potential(p, irp, obstacles, moved, target, qv);
            };
            return GradientCase{potential, robots[target].position,
                                fpf::robot_force(p, irp, obstacles, robots, target, qv)};
        },
        message);

    if (!ok_robot) return {false, message};
    return {true, "six force operations x 1000 configurations, relative error < 1e-6"};
}

// ---- criterion 4 -----------------------------------------------------------

std::string design_map_info;

Outcome design_map_oracle() {
    const int n = 25;
    const auto entries = fpf::design_map(1.0, 2.5, 1.0, 2.5, n);
    if (entries.size() != static_cast<std::size_t>(n) * n) {
        return {false, "wrong cell count"};
    }

    int solved = 0;
    double worst = 0.0;
    for (const auto& e : entries) {
        const auto argmin = testsupport::argmin_scaled_radius(e.k_v, e.varsigma);
        if (e.scaled_radius.has_value() != argmin.has_value()) {
            return {false, "solver and dense scan disagree about cell (" +
                               std::to_string(e.k_v) + ", " + std::to_string(e.varsigma) + ")"};
        }
        if (e.scaled_radius) {
            ++solved;
            const double err = std::fabs(*e.scaled_radius - *argmin);
            worst = std::max(worst, err);
            if (err >= 1e-3) {
                return {false, "argmin mismatch " + std::to_string(err) + " at (" +
                                   std::to_string(e.k_v) + ", " + std::to_string(e.varsigma) +
                                   ")"};
            }
        }
    }

    // Informational sub-check of the qualitative contour-reading claims.
    int kv_up = 0, kv_down = 0, vs_up = 0, vs_down = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto& cell = entries[i * n + j];
            if (!cell.scaled_radius) continue;
            if (i + 1 < n && entries[(i + 1) * n + j].scaled_radius) {
                (*entries[(i + 1) * n + j].scaled_radius > *cell.scaled_radius ? kv_up
                                                                               : kv_down)++;
            }
            if (j + 1 < n && entries[i * n + j + 1].scaled_radius) {
                (*entries[i * n + j + 1].scaled_radius > *cell.scaled_radius ? vs_up
                                                                             : vs_down)++;
            }
        }
    }
    std::ostringstream info;
    info << "scaled radius grows with k_v in " << kv_up << "/" << (kv_up + kv_down)
         << " adjacent pairs and falls with varsigma in " << vs_down << "/"
         << (vs_up + vs_down)
         << "; the claim that larger k_v shrinks the attainable radius is "
         << (kv_up > kv_down ? "CONTRADICTED" : "CONFIRMED") << " on this map (informational)";
    design_map_info = info.str();

    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d/%d cells solved, worst argmin gap %.2e", solved, n * n,
                  worst);
    return {true, buf};
}

// ---- criteria 5 and 6 ------------------------------------------------------

Outcome polygon_assembly(const char* config, int seeds, double nominal_gap_deg,
                         std::string label) {
    const Scenario base = fpf::parse_scenario_file(scenario_path(config));
    double worst_radius = 0.0, worst_gap = 0.0;
    for (int seed = 1; seed <= seeds; ++seed) {
        Scenario s = base;
        s.seeding.seed = static_cast<std::uint64_t>(seed);
        const RunResult result = fpf::assemble(s);
        if (result.termination() != fpf::TerminationReason::Converged) {
            return {false, label + ": seed " + std::to_string(seed) + " did not converge"};
        }
        const fpf::WorldState& final_state = result.output.trajectory.back();
        std::vector<Vec2> positions;
        for (const auto& r : final_state.robots) positions.push_back(r.position);
        const auto reg =
            fpf::polygon_regularity(positions, final_state.virtual_agent.position);
        for (double r : reg.radii) {
            const double err = std::fabs(r - result.target_radius) / result.target_radius;
            worst_radius = std::max(worst_radius, err);
            if (err > 0.01) {
                return {false, label + ": seed " + std::to_string(seed) + " radius off by " +
                                   std::to_string(err * 100.0) + "%"};
            }
        }
        for (double gap : reg.angular_gaps_deg) {
            const double err = std::fabs(gap - nominal_gap_deg);
            worst_gap = std::max(worst_gap, err);
            if (err > 1.0) {
                return {false, label + ": seed " + std::to_string(seed) + " gap off by " +
                                   std::to_string(err) + " deg"};
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d seeds, worst radius error %.3f%%, worst gap error %.3f deg",
                  seeds, worst_radius * 100.0, worst_gap);
    return {true, buf};
}

// ---- criteria 7 and 8 ------------------------------------------------------

struct NarrowPassageRun {
    Scenario scenario;
    RunResult navigation;
    std::size_t first_influence = 0;
    std::size_t last_influence = 0;
    bool has_influence = false;
    double cruise_median_rms = 0.0;
    double peak_rms = 0.0;
};

std::optional<NarrowPassageRun> narrow_run;

bool state_under_influence(const fpf::WorldState& state,
                           const std::vector<fpf::Obstacle>& obstacles) {
    for (const auto& obs : obstacles) {
        const double reach = 3.0 / obs.sigma_o;
        for (const auto& robot : state.robots) {
            for (const Vec2& sp : obs.source_points) {
                if (fpf::distance(robot.position, sp) < reach) return true;
            }
        }
    }
    return false;
}

Outcome narrow_passage() {
    NarrowPassageRun run;
    run.scenario = fpf::parse_scenario_file(scenario_path("narrow_passage.json"));
    const RunResult assembled = fpf::assemble(run.scenario);
    if (assembled.termination() != fpf::TerminationReason::Converged) {
        return {false, "assembly phase did not converge"};
    }
    run.navigation = fpf::navigate(run.scenario, assembled.output.trajectory.back());
    const RunResult& nav = run.navigation;

    // (d) the goal is reached
    if (nav.termination() != fpf::TerminationReason::GoalReached) {
        return {false, "termination: " + to_string(nav.termination())};
    }

    // (a) zero collision events, re-checked from the stored trajectory
    if (!nav.collision_events.empty()) {
        return {false, std::to_string(nav.collision_events.size()) + " collision events"};
    }
    const auto rescanned = fpf::scan_collisions(nav.output.trajectory,
                                                run.scenario.obstacles, run.scenario.safety);
    if (!rescanned.empty()) {
        return {false, "post-hoc rescan found collision events"};
    }

    // influence windows
    const auto& trajectory = nav.output.trajectory;
    std::vector<std::size_t> influenced;
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        if (state_under_influence(trajectory[t], run.scenario.obstacles)) {
            influenced.push_back(t);
        }
    }
    if (influenced.empty() || influenced.front() == 0) {
        return {false, "no obstacle-free cruise phase before the passage"};
    }
    run.has_influence = true;
    run.first_influence = influenced.front();
    run.last_influence = influenced.back();

    std::vector<double> cruise_rms;
    for (std::size_t t = 0; t < run.first_influence; ++t) {
        cruise_rms.push_back(nav.metrics_series[t].formation_rms_error);
    }
    std::sort(cruise_rms.begin(), cruise_rms.end());
    run.cruise_median_rms = cruise_rms[cruise_rms.size() / 2];
    for (std::size_t t : influenced) {
        run.peak_rms = std::max(run.peak_rms, nav.metrics_series[t].formation_rms_error);
    }

    // (b) the squeeze deforms the polygon well beyond cruise level
    if (!(run.peak_rms > 5.0 * run.cruise_median_rms)) {
        return {false, "peak rms " + std::to_string(run.peak_rms) + " vs cruise median " +
                           std::to_string(run.cruise_median_rms)};
    }

    // (c) the formation recovers below the assembly threshold
    const double threshold =
        run.scenario.formation_tolerance.radius_frac * nav.target_radius;
    const double final_rms = nav.metrics_series.back().formation_rms_error;
    if (!(final_rms < threshold)) {
        return {false, "final rms " + std::to_string(final_rms) + " above threshold " +
                           std::to_string(threshold)};
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "zero collisions, peak rms %.3f vs cruise %.4f (x%.1f), final rms %.5f",
                  run.peak_rms, run.cruise_median_rms,
                  run.peak_rms / run.cruise_median_rms, final_rms);
    narrow_run = std::move(run);
    return {true, buf};
}

Outcome force_trace_shape() {
    if (!narrow_run || !narrow_run->has_influence) {
        return {false, "criterion 7 run unavailable"};
    }
    const NarrowPassageRun& run = *narrow_run;
    const RunResult& nav = run.navigation;
    const auto& trajectory = nav.output.trajectory;

    // the robot that comes closest to any wall source over the run
    int nearest_id = -1;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trajectory.front().robots.size(); ++i) {
        double robot_min = std::numeric_limits<double>::infinity();
        for (const auto& state : trajectory) {
            for (const auto& obs : run.scenario.obstacles) {
                for (const Vec2& sp : obs.source_points) {
                    robot_min = std::min(robot_min, fpf::distance(state.robots[i].position, sp));
                }
            }
        }
        if (robot_min < nearest) {
            nearest = robot_min;
            nearest_id = trajectory.front().robots[i].id;
        }
    }

    const auto trace = fpf::force_trace(nav, nearest_id);
    double cruise_max = 0.0, cruise_sum = 0.0;
    for (std::size_t t = 0; t < run.first_influence; ++t) {
        const double mag = trace[t].norm();
        cruise_max = std::max(cruise_max, mag);
        cruise_sum += mag;
    }
    const double cruise_mean = cruise_sum / static_cast<double>(run.first_influence);
    double passage_peak = 0.0;
    for (std::size_t t = run.first_influence; t <= run.last_influence; ++t) {
        passage_peak = std::max(passage_peak, trace[t].norm());
    }

    const double quiet_bound = 10.0 * run.scenario.integrator.force_tolerance;
    if (!(cruise_max < quiet_bound)) {
        return {false, "cruise force " + std::to_string(cruise_max) + " not below " +
                           std::to_string(quiet_bound)};
    }
    if (!(passage_peak > 10.0 * cruise_mean)) {
        return {false, "passage peak " + std::to_string(passage_peak) +
                           " not above 10x cruise mean " + std::to_string(cruise_mean)};
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "robot %d: cruise max %.4f < %.2f, passage peak %.3f = %.0fx cruise mean",
                  nearest_id, cruise_max, quiet_bound, passage_peak,
                  passage_peak / cruise_mean);
    return {true, buf};
}

// ---- criterion 9 -----------------------------------------------------------

Outcome monotonicity_suite() {
    TestRng rng(1009);
    for (int trial = 0; trial < 100; ++trial) {
        FpfParams p;
        p.sigma1 = rng.uniform(0.3, 3.0);
        p.sigma2 = p.sigma1 * rng.uniform(2.0, 4.0);
        p.k_v = rng.uniform(1.001, 3.0);
        const double ring = fpf::solve_scaled_radius(p.k_v, p.varsigma()) / p.sigma1;

        const int samples = 10000;
        double prev = fpf::fpf_potential_radial(p, ring * 1e-4);
        for (int k = 2; k <= samples; ++k) {
            const double d = ring * 1e-4 + ring * (1.0 - 2e-4) * (k - 1) / (samples - 1);
            const double value = fpf::fpf_potential_radial(p, d);
            if (!(value < prev)) {
                return {false, "not strictly decreasing inside the ring (trial " +
                                   std::to_string(trial) + ")"};
            }
            prev = value;
        }
        prev = fpf::fpf_potential_radial(p, ring * (1.0 + 1e-4));
        for (int k = 2; k <= samples; ++k) {
            const double d = ring * (1.0 + 1e-4) + 9.0 * ring * (k - 1) / (samples - 1);
            const double value = fpf::fpf_potential_radial(p, d);
            if (!(value > prev)) {
                return {false, "not strictly increasing outside the ring (trial " +
                                   std::to_string(trial) + ")"};
            }
            prev = value;
        }

        auto profile = [&](double d) { return fpf::fpf_potential_radial(p, d); };
        if (!(testsupport::second_derivative(profile, ring, 1e-4 / p.sigma1) > 0.0)) {
            return {false, "ring curvature not positive"};
        }
        if (!(testsupport::second_derivative_at_zero(profile, 1e-4 / p.sigma1) < 0.0)) {
            return {false, "center curvature not negative"};
        }
    }
    return {true, "100 parameter sets, 10^4 samples per side, curvature signs verified"};
}

// ---- criterion 10 ----------------------------------------------------------

Outcome determinism() {
    const auto dir = work_dir();

    const Scenario pentagon = fpf::parse_scenario_file(scenario_path("pentagon.json"));
    const RunResult a1 = fpf::assemble(pentagon);
    const RunResult a2 = fpf::assemble(pentagon);
    fpf::write_trajectory(a1, dir / "pentagon_run1.csv");
    fpf::write_trajectory(a2, dir / "pentagon_run2.csv");
    if (read_file(dir / "pentagon_run1.csv") != read_file(dir / "pentagon_run2.csv")) {
        return {false, "pentagon assembly trajectories differ"};
    }

    const Scenario narrow = fpf::parse_scenario_file(scenario_path("narrow_passage.json"));
    const RunResult n1a = fpf::assemble(narrow);
    const RunResult n1 = fpf::navigate(narrow, n1a.output.trajectory.back());
    const RunResult n2a = fpf::assemble(narrow);
    const RunResult n2 = fpf::navigate(narrow, n2a.output.trajectory.back());
    fpf::write_trajectory(n1, dir / "narrow_run1.csv");
    fpf::write_trajectory(n2, dir / "narrow_run2.csv");
    if (read_file(dir / "narrow_run1.csv") != read_file(dir / "narrow_run2.csv")) {
        return {false, "narrow-passage trajectories differ"};
    }
    return {true, "assembly and navigation reruns are byte-identical"};
}

}  // namespace

int main() {
    std::printf("acceptance suite (scenarios: %s)\n", FPF_SCENARIO_DIR);

    report(1, "design-point reproduction", 1.0, design_point_reproduction);
    report(2, "boundary conditions", 1.0, boundary_conditions);
    report(3, "gradient oracle for every force operation", 10.0, gradient_oracle);
    report(4, "design-map oracle equivalence", 60.0, design_map_oracle);
    if (!design_map_info.empty()) {
        std::printf("[INFO] criterion 4 sub-check: %s\n", design_map_info.c_str());
    }
    report(5, "pentagon assembly across 20 seeds", 60.0, [] {
        return polygon_assembly("pentagon.json", 20, 72.0, "pentagon");
    });
    report(6, "decagon assembly across 10 seeds", 60.0, [] {
        return polygon_assembly("decagon.json", 10, 36.0, "decagon");
    });
    report(7, "narrow-passage navigation", 120.0, narrow_passage);
    report(8, "force-trace shape for the wall-side robot", 10.0, force_trace_shape);
    report(9, "monotonicity suite", 10.0, monotonicity_suite);
    report(10, "deterministic trajectory files", 0.0, determinism);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
