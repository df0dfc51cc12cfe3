// Damped gradient-flow integration of the virtual agent + robot system.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fpf/errors.hpp"
#include "fpf/fields.hpp"
#include "fpf/vec2.hpp"

namespace fpf {

/// Snapshot of every body at one time instant. Robot order is stable across
/// steps; robot i in a stepped state corresponds to robot i in the input.
struct WorldState {
    double time = 0.0;
    VirtualAgent virtual_agent;
    std::vector<Robot> robots;

    bool operator==(const WorldState&) const = default;
};

struct IntegratorConfig {
    double dt = 0.01;
    double damping_va = 2.0;     // velocity damping on the virtual agent
    double damping_robot = 2.0;  // velocity damping on each robot
    std::size_t max_steps = 1000000;
    double speed_tolerance = 1e-4;  // convergence: every body slower than this
    double force_tolerance = 1e-4;  // convergence: every force smaller than this

    constexpr bool operator==(const IntegratorConfig&) const = default;
};

/// Forces evaluated on every body in one state.
struct BodyForces {
    Vec2 virtual_agent;
    std::vector<Vec2> robots;

    bool operator==(const BodyForces&) const = default;

    bool is_finite() const {
        if (!virtual_agent.is_finite()) return false;
        for (const Vec2& f : robots) {
            if (!f.is_finite()) return false;
        }
        return true;
    }
};

inline BodyForces compute_forces(const WorldState& state, const World& world) {
    BodyForces forces;
    forces.virtual_agent = virtual_agent_force(world.goal, world.obstacles,
                                               state.virtual_agent.position,
                                               world.literal_goal_attraction);
    forces.robots.reserve(state.robots.size());
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        forces.robots.push_back(robot_force(world.fpf, world.inter_robot, world.obstacles,
                                            state.robots, i, state.virtual_agent.position));
    }
    return forces;
}

/// One semi-implicit Euler step: a = F - c*v, then v' = v + a*dt and
/// q' = q + v'*dt, for the virtual agent and every robot, all advanced from
/// the same pre-step state. `forces` must be compute_forces of `state`.
inline WorldState step(const WorldState& state, const BodyForces& forces,
                       const IntegratorConfig& cfg) {
    WorldState next = state;
    next.time = state.time + cfg.dt;

    auto advance = [dt = cfg.dt](Vec2& position, Vec2& velocity, const Vec2& force,
                                 double damping) {
        const Vec2 acceleration = force - velocity * damping;
        velocity += acceleration * dt;
        position += velocity * dt;
    };

    advance(next.virtual_agent.position, next.virtual_agent.velocity, forces.virtual_agent,
            cfg.damping_va);
    for (std::size_t i = 0; i < next.robots.size(); ++i) {
        advance(next.robots[i].position, next.robots[i].velocity, forces.robots[i],
                cfg.damping_robot);
    }
    return next;
}

inline WorldState step(const WorldState& state, const World& world,
                       const IntegratorConfig& cfg) {
    return step(state, compute_forces(state, world), cfg);
}

/// True iff every body is both slower than speed_tolerance and subject to a
/// force smaller than force_tolerance.
inline bool detect_convergence(const WorldState& state, const BodyForces& forces,
                               const IntegratorConfig& cfg) {
    if (state.virtual_agent.velocity.norm() >= cfg.speed_tolerance) return false;
    if (forces.virtual_agent.norm() >= cfg.force_tolerance) return false;
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        if (state.robots[i].velocity.norm() >= cfg.speed_tolerance) return false;
        if (forces.robots[i].norm() >= cfg.force_tolerance) return false;
    }
    return true;
}

enum class TerminationReason {
    Converged,    // assemble mode: all bodies quiescent
    GoalReached,  // reach_goal mode: virtual agent at goal and all quiescent
    MaxSteps,     // step budget exhausted before termination (non-convergence)
};

inline std::string to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::Converged: return "converged";
        case TerminationReason::GoalReached: return "goal_reached";
        case TerminationReason::MaxSteps: return "max_steps";
    }
    return "unknown";
}

struct Termination {
    enum class Kind { Assemble, ReachGoal };
    Kind kind = Kind::Assemble;
    double epsilon_goal = 0.0;

    static Termination assemble() { return {Kind::Assemble, 0.0}; }
    static Termination reach_goal(double epsilon) { return {Kind::ReachGoal, epsilon}; }
};

/// Trajectory plus the forces observed at every recorded state. forces[t]
/// are the forces evaluated at trajectory[t] (the pre-step forces).
struct RunOutput {
    std::vector<WorldState> trajectory;
    std::vector<BodyForces> forces;
    TerminationReason termination = TerminationReason::MaxSteps;

    std::size_t steps() const { return trajectory.empty() ? 0 : trajectory.size() - 1; }
};

/// Integrates until the termination condition fires or max_steps elapse.
/// The trajectory includes the initial and final states; a divergent force
/// raises DivergenceError carrying the step index. Identical inputs produce
/// bit-identical trajectories.
inline RunOutput run(const WorldState& initial, const World& world,
                     const IntegratorConfig& cfg, const Termination& termination) {
    RunOutput out;

    auto satisfied = [&](const WorldState& state, const BodyForces& forces) {
        const bool quiescent = detect_convergence(state, forces, cfg);
        if (termination.kind == Termination::Kind::Assemble) {
            return quiescent;
        }
        return quiescent && distance(state.virtual_agent.position, world.goal.position) <
                                termination.epsilon_goal;
    };

    WorldState state = initial;
    BodyForces forces = compute_forces(state, world);
    if (!forces.is_finite()) {
        throw DivergenceError(0, "non-finite force at initial state");
    }
    out.trajectory.push_back(state);
    out.forces.push_back(forces);

    if (satisfied(state, forces)) {
        out.termination = termination.kind == Termination::Kind::Assemble
                              ? TerminationReason::Converged
                              : TerminationReason::GoalReached;
        return out;
    }

    for (std::size_t k = 1; k <= cfg.max_steps; ++k) {
        state = step(state, forces, cfg);
        forces = compute_forces(state, world);
        if (!forces.is_finite() || !state.virtual_agent.position.is_finite()) {
            throw DivergenceError(k, "non-finite force or state during integration");
        }
        out.trajectory.push_back(state);
        out.forces.push_back(forces);
        if (satisfied(state, forces)) {
            out.termination = termination.kind == Termination::Kind::Assemble
                                  ? TerminationReason::Converged
                                  : TerminationReason::GoalReached;
            return out;
        }
    }
    out.termination = TerminationReason::MaxSteps;
    return out;
}

}  // namespace fpf
