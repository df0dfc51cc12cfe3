// Experiment definitions and drivers: seeding, assembly into a polygon,
// navigation through obstacle fields, and formation/safety metrics.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fpf/dynamics.hpp"
#include "fpf/errors.hpp"
#include "fpf/fields.hpp"
#include "fpf/fpf_core.hpp"
#include "fpf/vec2.hpp"

namespace fpf {

struct SeedSpec {
    Vec2 box_min;
    Vec2 box_max;
    double min_separation = 0.1;
    std::uint64_t seed = 0;

    constexpr bool operator==(const SeedSpec&) const = default;
};

struct SafetyThresholds {
    double min_robot_clearance = 0.05;
    double min_obstacle_clearance = 0.05;

    constexpr bool operator==(const SafetyThresholds&) const = default;
};

struct FormationTolerance {
    double radius_frac = 0.01;  // allowed relative radius deviation
    double gap_deg = 1.0;       // allowed angular-gap deviation in degrees

    constexpr bool operator==(const FormationTolerance&) const = default;
};

/// Optional integrator overrides for the assembly phase. Navigation runs can
/// use a looser force tolerance than assembly needs for sharp polygons.
struct AssemblyOverrides {
    std::optional<double> force_tolerance;
    std::optional<double> speed_tolerance;
    std::optional<std::size_t> max_steps;

    constexpr bool operator==(const AssemblyOverrides&) const = default;
};

/// A complete experiment description. Parsed from a config document by
/// scenario_io; all defaults are resolved to concrete values there.
struct Scenario {
    FpfParams fpf;
    InterRobotParams inter_robot;
    int n_robots = 1;
    SeedSpec seeding;
    Goal goal;
    std::vector<Obstacle> obstacles;
    IntegratorConfig integrator;
    AssemblyOverrides assembly;
    SafetyThresholds safety;
    FormationTolerance formation_tolerance;
    Vec2 virtual_start;
    double epsilon_goal = 0.05;
    double body_radius = 0.02;
    bool literal_goal_attraction = false;

    bool operator==(const Scenario&) const = default;
};

enum class CollisionKind { RobotRobot, RobotObstacle };

struct CollisionEvent {
    double time = 0.0;
    CollisionKind kind = CollisionKind::RobotRobot;
    int robot_a = 0;
    int robot_b = -1;       // other robot id (robot-robot only)
    int obstacle_index = -1;
    int source_index = -1;  // offending source point within the obstacle
    double distance = 0.0;

    constexpr bool operator==(const CollisionEvent&) const = default;
};

struct StepMetrics {
    double formation_rms_error = 0.0;
    double min_inter_robot_distance = std::numeric_limits<double>::infinity();
    double min_obstacle_clearance = std::numeric_limits<double>::infinity();
    std::vector<Vec2> per_robot_force;

    bool operator==(const StepMetrics&) const = default;
};

struct RunResult {
    RunOutput output;
    std::vector<CollisionEvent> collision_events;
    std::vector<StepMetrics> metrics_series;
    double target_radius = 0.0;  // world-units minima-ring radius

    TerminationReason termination() const { return output.termination; }
};

/// World-units formation radius for the given field parameters.
inline double formation_radius_world(const FpfParams& p) {
    return solve_scaled_radius(p.k_v, p.varsigma()) / p.sigma1;
}

// ---- scenario validation ---------------------------------------------------

/// Returns one entry per violated scenario rule; empty means valid. Rule
/// strings name the offending config key. FPF violations are included via
/// validate_params.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> violations = validate_params(s.fpf).violations;
    for (auto& v : violations) v.insert(0, "fpf: ");
    auto fail = [&violations](const std::string& rule) { violations.push_back(rule); };

    if (s.n_robots < 1) fail("n_robots >= 1 (got " + std::to_string(s.n_robots) + ")");
    if (!(s.inter_robot.k_a > 0.0)) fail("inter_robot.k_a > 0");
    if (!(s.inter_robot.sigma_r > 0.0)) fail("inter_robot.sigma_r > 0");
    if (!(s.goal.lambda > 0.0)) fail("goal.lambda > 0");
    if (!(s.seeding.box_max.x > s.seeding.box_min.x) ||
        !(s.seeding.box_max.y > s.seeding.box_min.y)) {
        fail("seeding.box must have positive extent");
    }
    if (!(s.seeding.min_separation > 0.0)) fail("seeding.min_separation > 0");
    const double area = (s.seeding.box_max.x - s.seeding.box_min.x) *
                        (s.seeding.box_max.y - s.seeding.box_min.y);
    if (area < s.n_robots * s.seeding.min_separation * s.seeding.min_separation) {
        fail("seeding.box too small to hold n_robots points at min_separation");
    }
    for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
        const std::string prefix = "obstacles[" + std::to_string(k) + "].";
        if (s.obstacles[k].source_points.empty()) fail(prefix + "source_points non-empty");
        if (!(s.obstacles[k].k_r > 0.0)) fail(prefix + "k_r > 0");
        if (!(s.obstacles[k].sigma_o > 0.0)) fail(prefix + "sigma_o > 0");
    }
    if (!(s.integrator.dt > 0.0)) fail("integrator.dt > 0");
    if (s.integrator.damping_va < 0.0) fail("integrator.damping_va >= 0");
    if (s.integrator.damping_robot < 0.0) fail("integrator.damping_robot >= 0");
    if (s.integrator.max_steps < 1) fail("integrator.max_steps >= 1");
    if (!(s.integrator.speed_tolerance > 0.0)) fail("integrator.speed_tolerance > 0");
    if (!(s.integrator.force_tolerance > 0.0)) fail("integrator.force_tolerance > 0");
    if (s.assembly.force_tolerance && !(*s.assembly.force_tolerance > 0.0)) {
        fail("assembly.force_tolerance > 0");
    }
    if (s.assembly.speed_tolerance && !(*s.assembly.speed_tolerance > 0.0)) {
        fail("assembly.speed_tolerance > 0");
    }
    if (s.assembly.max_steps && *s.assembly.max_steps < 1) fail("assembly.max_steps >= 1");
    if (!(s.safety.min_robot_clearance > 0.0)) fail("safety.min_robot_clearance > 0");
    if (!(s.safety.min_obstacle_clearance > 0.0)) fail("safety.min_obstacle_clearance > 0");
    if (!(s.epsilon_goal > 0.0)) fail("epsilon_goal > 0");
    if (!(s.body_radius > 0.0)) fail("body_radius > 0");
    if (!(s.formation_tolerance.radius_frac > 0.0)) fail("formation_tolerance.radius_frac > 0");
    if (!(s.formation_tolerance.gap_deg > 0.0)) fail("formation_tolerance.gap_deg > 0");
    if (!s.virtual_start.is_finite()) fail("virtual_start must be finite");
    if (!s.goal.position.is_finite()) fail("goal.position must be finite");
    return violations;
}

inline void ensure_valid_scenario(const Scenario& s) {
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw Error(msg);
    }
}

// ---- geometry helpers ------------------------------------------------------

/// Expands a polyline into point sources spaced at most `spacing` apart,
/// keeping every vertex. A single vertex yields a single point.
inline std::vector<Vec2> discretize_polyline(const std::vector<Vec2>& vertices,
                                             double spacing) {
    if (vertices.empty()) return {};
    if (!(spacing > 0.0)) throw Error("polyline spacing must be positive");
    std::vector<Vec2> points{vertices.front()};
    for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
        const Vec2 a = vertices[s];
        const Vec2 b = vertices[s + 1];
        const double length = distance(a, b);
        const int segments = std::max(1, static_cast<int>(std::ceil(length / spacing)));
        for (int i = 1; i <= segments; ++i) {
            points.push_back(a + (b - a) * (static_cast<double>(i) / segments));
        }
    }
    return points;
}

/// Places n points inside the box with pairwise distance >= min_separation
/// by rejection sampling. Deterministic for a fixed seed; the uniform draw
/// maps raw generator bits so results do not depend on the standard
/// library's distribution implementation.
inline std::vector<Vec2> seed_initial_positions(const SeedSpec& spec, int n) {
    if (n < 1) throw InfeasibleSeedingError("need at least one point");
    const double width = spec.box_max.x - spec.box_min.x;
    const double height = spec.box_max.y - spec.box_min.y;
    if (!(width > 0.0) || !(height > 0.0)) {
        throw InfeasibleSeedingError("seeding box has non-positive extent");
    }
    if (width * height < n * spec.min_separation * spec.min_separation) {
        throw InfeasibleSeedingError("seeding box too small for " + std::to_string(n) +
                                     " points at separation " +
                                     std::to_string(spec.min_separation));
    }

    std::mt19937_64 rng(spec.seed);
    auto uniform01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    std::vector<Vec2> points;
    points.reserve(n);
    const std::size_t budget = std::max<std::size_t>(10000, 2000 * static_cast<std::size_t>(n));
    for (std::size_t attempt = 0; attempt < budget && points.size() < static_cast<std::size_t>(n);
         ++attempt) {
        const Vec2 candidate{spec.box_min.x + width * uniform01(),
                             spec.box_min.y + height * uniform01()};
        bool clear = true;
        for (const Vec2& existing : points) {
            if (distance(candidate, existing) < spec.min_separation) {
                clear = false;
                break;
            }
        }
        if (clear) points.push_back(candidate);
    }
    if (points.size() < static_cast<std::size_t>(n)) {
        throw InfeasibleSeedingError("rejection budget exhausted placing " + std::to_string(n) +
                                     " points at separation " +
                                     std::to_string(spec.min_separation));
    }
    return points;
}

struct PolygonRegularity {
    std::vector<double> radii;             // distance to center, input order
    std::vector<double> angular_gaps_deg;  // gaps between angle-sorted vertices
};

/// Radii and successive angular gaps (wrapping, summing to 360 degrees) of a
/// set of positions about a center.
inline PolygonRegularity polygon_regularity(const std::vector<Vec2>& positions,
                                            const Vec2& center) {
    if (positions.size() < 2) {
        throw Error("polygon regularity needs at least 2 positions");
    }
    PolygonRegularity result;
    std::vector<double> angles;
    angles.reserve(positions.size());
    for (const Vec2& p : positions) {
        const Vec2 offset = p - center;
        const double r = offset.norm();
        if (r == 0.0) {
            throw DegenerateDistanceError("position coincides with the polygon center");
        }
        result.radii.push_back(r);
        angles.push_back(std::atan2(offset.y, offset.x));
    }
    std::sort(angles.begin(), angles.end());
    const double to_deg = 180.0 / std::numbers::pi;
    for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
        result.angular_gaps_deg.push_back((angles[k + 1] - angles[k]) * to_deg);
    }
    result.angular_gaps_deg.push_back((angles.front() + 2.0 * std::numbers::pi - angles.back()) *
                                      to_deg);
    return result;
}

struct FormationCheck {
    bool ok = false;
    double max_radius_error_frac = 0.0;
    double max_gap_error_deg = 0.0;
};

/// Checks the polygon predicate: every radius within radius_frac of
/// target_radius and (for two or more robots) every angular gap within
/// gap_deg of the regular-polygon gap.
inline FormationCheck check_formation(const std::vector<Vec2>& positions, const Vec2& center,
                                      double target_radius, const FormationTolerance& tol) {
    FormationCheck check;
    if (positions.empty() || !(target_radius > 0.0)) return check;
    if (positions.size() == 1) {
        const double r = distance(positions.front(), center);
        check.max_radius_error_frac = std::fabs(r - target_radius) / target_radius;
        check.ok = check.max_radius_error_frac <= tol.radius_frac;
        return check;
    }
    const PolygonRegularity reg = polygon_regularity(positions, center);
    for (double r : reg.radii) {
        check.max_radius_error_frac =
            std::max(check.max_radius_error_frac, std::fabs(r - target_radius) / target_radius);
    }
    const double nominal_gap = 360.0 / static_cast<double>(positions.size());
    for (double gap : reg.angular_gaps_deg) {
        check.max_gap_error_deg = std::max(check.max_gap_error_deg, std::fabs(gap - nominal_gap));
    }
    check.ok = check.max_radius_error_frac <= tol.radius_frac &&
               check.max_gap_error_deg <= tol.gap_deg;
    return check;
}

// ---- collision checking ----------------------------------------------------

/// Events for one state: robot pairs closer than the sum of body radii plus
/// min_robot_clearance, and robot/source pairs closer than body radius plus
/// min_obstacle_clearance. Comparisons are strict, so a pair exactly at the
/// threshold produces no event.
inline std::vector<CollisionEvent> check_collisions(const WorldState& state,
                                                    const std::vector<Obstacle>& obstacles,
                                                    const SafetyThresholds& safety) {
    std::vector<CollisionEvent> events;
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        for (std::size_t j = i + 1; j < state.robots.size(); ++j) {
            const double d = distance(state.robots[i].position, state.robots[j].position);
            const double threshold = state.robots[i].body_radius +
                                     state.robots[j].body_radius + safety.min_robot_clearance;
            if (d < threshold) {
                events.push_back({state.time, CollisionKind::RobotRobot, state.robots[i].id,
                                  state.robots[j].id, -1, -1, d});
            }
        }
        for (std::size_t k = 0; k < obstacles.size(); ++k) {
            const auto& sources = obstacles[k].source_points;
            for (std::size_t m = 0; m < sources.size(); ++m) {
                const double d = distance(state.robots[i].position, sources[m]);
                if (d < state.robots[i].body_radius + safety.min_obstacle_clearance) {
                    events.push_back({state.time, CollisionKind::RobotObstacle,
                                      state.robots[i].id, -1, static_cast<int>(k),
                                      static_cast<int>(m), d});
                }
            }
        }
    }
    return events;
}

inline std::vector<CollisionEvent> scan_collisions(const std::vector<WorldState>& trajectory,
                                                   const std::vector<Obstacle>& obstacles,
                                                   const SafetyThresholds& safety) {
    std::vector<CollisionEvent> events;
    for (const WorldState& state : trajectory) {
        auto step_events = check_collisions(state, obstacles, safety);
        events.insert(events.end(), step_events.begin(), step_events.end());
    }
    return events;
}

// ---- metrics ---------------------------------------------------------------

inline double formation_rms_error(const WorldState& state, double target_radius) {
    if (state.robots.empty()) return 0.0;
    double sum = 0.0;
    for (const Robot& r : state.robots) {
        const double dev = distance(r.position, state.virtual_agent.position) - target_radius;
        sum += dev * dev;
    }
    return std::sqrt(sum / static_cast<double>(state.robots.size()));
}

inline double min_inter_robot_distance(const WorldState& state) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        for (std::size_t j = i + 1; j < state.robots.size(); ++j) {
            best = std::min(best, distance(state.robots[i].position, state.robots[j].position));
        }
    }
    return best;
}

/// Smallest robot-surface-to-source distance; +infinity with no obstacles.
inline double min_obstacle_clearance(const WorldState& state,
                                     const std::vector<Obstacle>& obstacles) {
    double best = std::numeric_limits<double>::infinity();
    for (const Robot& r : state.robots) {
        for (const Obstacle& obs : obstacles) {
            for (const Vec2& source : obs.source_points) {
                best = std::min(best, distance(r.position, source) - r.body_radius);
            }
        }
    }
    return best;
}

/// Per-step metrics recomputed purely from the trajectory; forces are
/// re-evaluated from each state so stored results can be reproduced exactly.
inline std::vector<StepMetrics> compute_metrics_series(const std::vector<WorldState>& trajectory,
                                                       const World& world,
                                                       double target_radius) {
    std::vector<StepMetrics> series;
    series.reserve(trajectory.size());
    for (const WorldState& state : trajectory) {
        StepMetrics m;
        m.formation_rms_error = formation_rms_error(state, target_radius);
        m.min_inter_robot_distance = min_inter_robot_distance(state);
        m.min_obstacle_clearance = min_obstacle_clearance(state, world.obstacles);
        m.per_robot_force = compute_forces(state, world).robots;
        series.push_back(std::move(m));
    }
    return series;
}

// ---- experiment drivers ----------------------------------------------------

/// World used while assembling: the goal is pinned to the virtual agent's
/// start (so it rests) and obstacles are ignored.
inline World assembly_world(const Scenario& s) {
    return World{s.fpf, s.inter_robot, Goal{s.virtual_start, s.goal.lambda}, {},
                 s.literal_goal_attraction};
}

inline World navigation_world(const Scenario& s) {
    return World{s.fpf, s.inter_robot, s.goal, s.obstacles, s.literal_goal_attraction};
}

inline IntegratorConfig assembly_config(const Scenario& s) {
    IntegratorConfig cfg = s.integrator;
    if (s.assembly.force_tolerance) cfg.force_tolerance = *s.assembly.force_tolerance;
    if (s.assembly.speed_tolerance) cfg.speed_tolerance = *s.assembly.speed_tolerance;
    if (s.assembly.max_steps) cfg.max_steps = *s.assembly.max_steps;
    return cfg;
}

inline WorldState initial_state(const Scenario& s) {
    WorldState state;
    state.time = 0.0;
    state.virtual_agent.position = s.virtual_start;
    const auto positions = seed_initial_positions(s.seeding, s.n_robots);
    state.robots.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        state.robots.push_back(
            Robot{static_cast<int>(i) + 1, positions[i], Vec2{}, s.body_radius});
    }
    return state;
}

namespace detail {

inline std::vector<Vec2> robot_positions(const WorldState& state) {
    std::vector<Vec2> positions;
    positions.reserve(state.robots.size());
    for (const Robot& r : state.robots) positions.push_back(r.position);
    return positions;
}

inline RunResult finish_run(RunOutput&& output, const World& world,
                            const SafetyThresholds& safety, double target_radius) {
    RunResult result;
    result.output = std::move(output);
    result.target_radius = target_radius;
    result.collision_events = scan_collisions(result.output.trajectory, world.obstacles, safety);
    result.metrics_series =
        compute_metrics_series(result.output.trajectory, world, target_radius);
    return result;
}

}  // namespace detail

/// Seeds robots and runs the self-organization phase around a resting
/// virtual agent. Obstacles do not act in this mode.
inline RunResult assemble(const Scenario& s) {
    ensure_valid_scenario(s);
    const double target_radius = formation_radius_world(s.fpf);
    const World world = assembly_world(s);
    RunOutput output = run(initial_state(s), world, assembly_config(s), Termination::assemble());
    return detail::finish_run(std::move(output), world, s.safety, target_radius);
}

/// Drives the assembled formation to the scenario goal through the obstacle
/// field. The input must be a converged formation (the assembly predicate is
/// re-checked); time restarts at zero.
inline RunResult navigate(const Scenario& s, const WorldState& assembled) {
    ensure_valid_scenario(s);
    const double target_radius = formation_radius_world(s.fpf);
    if (static_cast<int>(assembled.robots.size()) != s.n_robots) {
        throw Error("navigate: assembled state has wrong robot count");
    }
    const FormationCheck check =
        check_formation(detail::robot_positions(assembled), assembled.virtual_agent.position,
                        target_radius, s.formation_tolerance);
    if (!check.ok) {
        throw Error("navigate requires a converged formation (radius error " +
                    std::to_string(check.max_radius_error_frac) + ", gap error " +
                    std::to_string(check.max_gap_error_deg) + " deg)");
    }
    WorldState start = assembled;
    start.time = 0.0;
    const World world = navigation_world(s);
    RunOutput output = run(start, world, s.integrator, Termination::reach_goal(s.epsilon_goal));
    return detail::finish_run(std::move(output), world, s.safety, target_radius);
}

/// X and Y force components over time for one robot, by id.
inline std::vector<Vec2> force_trace(const RunResult& result, int robot_id) {
    if (result.output.trajectory.empty()) {
        throw UnknownRobotError("empty trajectory");
    }
    const auto& robots = result.output.trajectory.front().robots;
    std::size_t index = robots.size();
    for (std::size_t i = 0; i < robots.size(); ++i) {
        if (robots[i].id == robot_id) {
            index = i;
            break;
        }
    }
    if (index == robots.size()) {
        throw UnknownRobotError("no robot with id " + std::to_string(robot_id));
    }
    std::vector<Vec2> trace;
    trace.reserve(result.output.forces.size());
    for (const BodyForces& f : result.output.forces) {
        trace.push_back(f.robots[index]);
    }
    return trace;
}

}  // namespace fpf
