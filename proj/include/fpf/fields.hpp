// Non-FPF potentials and forces: inter-robot repulsion, obstacle repulsion,
// goal attraction, and their compositions for the virtual agent and robots.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fpf/errors.hpp"
#include "fpf/fpf_core.hpp"
#include "fpf/vec2.hpp"

namespace fpf {

struct Robot {
    int id = 0;
    Vec2 position;
    Vec2 velocity;
    double body_radius = 0.02;  // finite extent used only for collision checks

    constexpr bool operator==(const Robot&) const = default;
};

struct VirtualAgent {
    Vec2 position;
    Vec2 velocity;

    constexpr bool operator==(const VirtualAgent&) const = default;
};

struct Goal {
    Vec2 position;
    double lambda = 1.0;  // attraction gain, > 0

    constexpr bool operator==(const Goal&) const = default;
};

/// An obstacle is a cloud of point sources sharing one gain and spread.
/// Extended shapes (walls) are discretized into source points beforehand.
struct Obstacle {
    std::vector<Vec2> source_points;
    double k_r = 1.0;      // repulsion gain, > 0
    double sigma_o = 2.0;  // spread exponent, > 0

    bool operator==(const Obstacle&) const = default;
};

struct InterRobotParams {
    double k_a = 1.0;     // repulsion gain, > 0
    double sigma_r = 5.0; // spread exponent, > 0

    constexpr bool operator==(const InterRobotParams&) const = default;
};

// ---- potentials -----------------------------------------------------------

/// Pair repulsion k_a * exp(-sigma_r * d). Bounded everywhere, so only the
/// force direction (not the magnitude) degenerates at zero distance.
inline double inter_robot_potential(const InterRobotParams& p, const Vec2& q_i,
                                    const Vec2& q_j) {
    return p.k_a * std::exp(-p.sigma_r * distance(q_i, q_j));
}

inline double obstacle_potential(const Obstacle& obs, const Vec2& q) {
    double total = 0.0;
    for (const Vec2& source : obs.source_points) {
        total += obs.k_r * std::exp(-obs.sigma_o * distance(q, source));
    }
    return total;
}

/// Quadratic goal attraction 0.5 * lambda * |q_v - q_G|^2.
inline double goal_potential(const Goal& g, const Vec2& q_v) {
    return 0.5 * g.lambda * (q_v - g.position).norm_squared();
}

/// Total potential steering the virtual agent: goal plus all obstacles.
inline double virtual_agent_potential(const Goal& g, const std::vector<Obstacle>& obstacles,
                                      const Vec2& q_v) {
    double total = goal_potential(g, q_v);
    for (const Obstacle& obs : obstacles) total += obstacle_potential(obs, q_v);
    return total;
}

/// Total potential on robot i: FPF plus inter-robot plus obstacle terms.
/// The goal potential is deliberately absent; robots follow the virtual
/// agent, not the goal.
inline double robot_potential(const FpfParams& fpf, const InterRobotParams& irp,
                              const std::vector<Obstacle>& obstacles,
                              const std::vector<Robot>& robots, std::size_t i,
                              const Vec2& q_v) {
    double total = fpf_potential(fpf, robots[i].position, q_v);
    for (std::size_t j = 0; j < robots.size(); ++j) {
        if (j == i) continue;
        total += inter_robot_potential(irp, robots[i].position, robots[j].position);
    }
    for (const Obstacle& obs : obstacles) {
        total += obstacle_potential(obs, robots[i].position);
    }
    return total;
}

// ---- forces (negative gradients of the potentials above) ------------------

/// Repulsive force on robot i from robot j, magnitude k_a*sigma_r*exp(-sigma_r*d),
/// directed from j toward i. Throws DegenerateDistanceError on coincidence.
inline Vec2 inter_robot_force(const InterRobotParams& p, const Vec2& q_i, const Vec2& q_j) {
    const Vec2 offset = q_i - q_j;
    const double d = offset.norm();
    if (d == 0.0) {
        throw DegenerateDistanceError("coincident robot positions: repulsion direction "
                                      "undefined");
    }
    return offset * (p.k_a * p.sigma_r * std::exp(-p.sigma_r * d) / d);
}

inline Vec2 obstacle_force(const Obstacle& obs, const Vec2& q) {
    Vec2 total;
    for (std::size_t k = 0; k < obs.source_points.size(); ++k) {
        const Vec2 offset = q - obs.source_points[k];
        const double d = offset.norm();
        if (d == 0.0) {
            throw DegenerateDistanceError("position coincides with obstacle source point " +
                                          std::to_string(k));
        }
        total += offset * (obs.k_r * obs.sigma_o * std::exp(-obs.sigma_o * d) / d);
    }
    return total;
}

/// Gradient-consistent goal attraction -lambda * (q_v - q_G).
inline Vec2 goal_force(const Goal& g, const Vec2& q_v) {
    return (q_v - g.position) * -g.lambda;
}

/// Alternate attraction reading with an extra distance factor,
/// -lambda * |q_v - q_G| * (q_v - q_G). Not the gradient of the quadratic
/// goal potential; kept selectable for comparison runs only.
inline Vec2 goal_force_literal(const Goal& g, const Vec2& q_v) {
    const Vec2 offset = q_v - g.position;
    return offset * (-g.lambda * offset.norm());
}

/// Total force on the virtual agent: goal attraction plus obstacle repulsion.
inline Vec2 virtual_agent_force(const Goal& g, const std::vector<Obstacle>& obstacles,
                                const Vec2& q_v, bool literal_goal_attraction = false) {
    Vec2 total = literal_goal_attraction ? goal_force_literal(g, q_v) : goal_force(g, q_v);
    for (const Obstacle& obs : obstacles) total += obstacle_force(obs, q_v);
    return total;
}

/// Total force on robot i: FPF pull toward the minima ring, repulsion from
/// every other robot, repulsion from every obstacle source. Degenerate
/// distances name the offending pair.
inline Vec2 robot_force(const FpfParams& fpf, const InterRobotParams& irp,
                        const std::vector<Obstacle>& obstacles,
                        const std::vector<Robot>& robots, std::size_t i, const Vec2& q_v) {
    Vec2 total = fpf_force(fpf, robots[i].position, q_v);
    for (std::size_t j = 0; j < robots.size(); ++j) {
        if (j == i) continue;
        try {
            total += inter_robot_force(irp, robots[i].position, robots[j].position);
        } catch (const DegenerateDistanceError&) {
            throw DegenerateDistanceError("robot " + std::to_string(robots[i].id) +
                                          " coincides with robot " +
                                          std::to_string(robots[j].id));
        }
    }
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        try {
            total += obstacle_force(obstacles[k], robots[i].position);
        } catch (const DegenerateDistanceError& e) {
            throw DegenerateDistanceError("robot " + std::to_string(robots[i].id) +
                                          ", obstacle " + std::to_string(k) + ": " + e.what());
        }
    }
    return total;
}

/// Everything that shapes the forces during a run (the immutable "world");
/// the mutable body states live in WorldState.
struct World {
    FpfParams fpf;
    InterRobotParams inter_robot;
    Goal goal;
    std::vector<Obstacle> obstacles;
    bool literal_goal_attraction = false;

    bool operator==(const World&) const = default;
};

}  // namespace fpf
