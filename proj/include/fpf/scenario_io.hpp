// Scenario config parsing (strict JSON schema), CSV/JSON emission, and the
// file conventions shared by the CLI and tests.
#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpf/errors.hpp"
#include "fpf/scenario.hpp"

namespace fpf {

inline constexpr int kSchemaVersion = 1;

/// Configuration document error; `kind` keeps categories machine-readable.
class ConfigError : public Error {
  public:
    enum class Kind { Syntax, UnknownKey, MissingKey, InvalidValue };

    ConfigError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

namespace io_detail {

using nlohmann::json;

inline std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ConfigError(ConfigError::Kind::InvalidValue,
                          "'" + path + "' must be an object");
    }
    return j;
}

/// Strict key check: every present key must be known, every required key
/// must be present.
inline void check_keys(const json& obj, const std::string& path,
                       const std::set<std::string>& required,
                       const std::set<std::string>& optional) {
    for (const auto& item : obj.items()) {
        if (!required.contains(item.key()) && !optional.contains(item.key())) {
            throw ConfigError(ConfigError::Kind::UnknownKey,
                              "unknown key '" + join_path(path, item.key()) + "'");
        }
    }
    for (const auto& key : required) {
        if (!obj.contains(key)) {
            throw ConfigError(ConfigError::Kind::MissingKey,
                              "missing required key '" + join_path(path, key) + "'");
        }
    }
}

inline double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ConfigError(ConfigError::Kind::InvalidValue, "'" + path + "' must be a number");
    }
    const double value = j.get<double>();
    if (!std::isfinite(value)) {
        throw ConfigError(ConfigError::Kind::InvalidValue, "'" + path + "' must be finite");
    }
    return value;
}

inline std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw ConfigError(ConfigError::Kind::InvalidValue,
                          "'" + path + "' must be an integer");
    }
    return j.get<std::int64_t>();
}

inline bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        throw ConfigError(ConfigError::Kind::InvalidValue, "'" + path + "' must be a boolean");
    }
    return j.get<bool>();
}

inline Vec2 as_vec2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(ConfigError::Kind::InvalidValue,
                          "'" + path + "' must be an array of two numbers");
    }
    return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

inline std::vector<Vec2> as_point_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(ConfigError::Kind::InvalidValue,
                          "'" + path + "' must be a non-empty array of [x, y] points");
    }
    std::vector<Vec2> points;
    points.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        points.push_back(as_vec2(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return points;
}

inline json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }

}  // namespace io_detail

/// Parses and fully validates a scenario document. Error messages name the
/// offending key and rule; unknown keys are rejected everywhere.
inline Scenario parse_scenario(const std::string& text) {
    using io_detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigError::Kind::Syntax, std::string("syntax error: ") + e.what());
    }

    io_detail::expect_object(doc, "scenario");
    io_detail::check_keys(doc, "",
                          {"schema_version", "fpf", "n_robots", "seeding", "goal",
                           "virtual_start"},
                          {"inter_robot", "obstacles", "integrator", "assembly", "safety",
                           "formation_tolerance", "epsilon_goal", "body_radius",
                           "literal_goal_attraction"});

    const auto version = io_detail::as_integer(doc["schema_version"], "schema_version");
    if (version != kSchemaVersion) {
        throw ConfigError(ConfigError::Kind::InvalidValue,
                          "unsupported schema_version " + std::to_string(version) +
                              " (supported: " + std::to_string(kSchemaVersion) + ")");
    }

    Scenario s;

    {
        const json& fpf = io_detail::expect_object(doc["fpf"], "fpf");
        io_detail::check_keys(fpf, "fpf", {"k_v", "sigma1", "sigma2"}, {});
        s.fpf.k_v = io_detail::as_number(fpf["k_v"], "fpf.k_v");
        s.fpf.sigma1 = io_detail::as_number(fpf["sigma1"], "fpf.sigma1");
        s.fpf.sigma2 = io_detail::as_number(fpf["sigma2"], "fpf.sigma2");
    }
    {
        // Field-shape violations are reported before anything that needs a
        // usable field (e.g. the body_radius default).
        const ValidationReport report = validate_params(s.fpf);
        if (!report.ok) {
            std::string msg = "fpf:";
            for (const auto& v : report.violations) msg += " [" + v + "]";
            throw ConfigError(ConfigError::Kind::InvalidValue, msg);
        }
    }

    if (doc.contains("inter_robot")) {
        const json& irp = io_detail::expect_object(doc["inter_robot"], "inter_robot");
        io_detail::check_keys(irp, "inter_robot", {}, {"k_a", "sigma_r"});
        s.inter_robot.k_a =
            irp.contains("k_a") ? io_detail::as_number(irp["k_a"], "inter_robot.k_a") : 1.0;
        s.inter_robot.sigma_r = irp.contains("sigma_r")
                                    ? io_detail::as_number(irp["sigma_r"], "inter_robot.sigma_r")
                                    : 5.0 * s.fpf.sigma1;
    } else {
        s.inter_robot = {1.0, 5.0 * s.fpf.sigma1};
    }

    s.n_robots = static_cast<int>(io_detail::as_integer(doc["n_robots"], "n_robots"));

    {
        const json& seeding = io_detail::expect_object(doc["seeding"], "seeding");
        io_detail::check_keys(seeding, "seeding", {"box", "min_separation", "seed"}, {});
        const json& box = seeding["box"];
        if (!box.is_array() || box.size() != 4) {
            throw ConfigError(ConfigError::Kind::InvalidValue,
                              "'seeding.box' must be [xmin, ymin, xmax, ymax]");
        }
        s.seeding.box_min = {io_detail::as_number(box[0], "seeding.box[0]"),
                             io_detail::as_number(box[1], "seeding.box[1]")};
        s.seeding.box_max = {io_detail::as_number(box[2], "seeding.box[2]"),
                             io_detail::as_number(box[3], "seeding.box[3]")};
        s.seeding.min_separation =
            io_detail::as_number(seeding["min_separation"], "seeding.min_separation");
        const auto seed = io_detail::as_integer(seeding["seed"], "seeding.seed");
        if (seed < 0) {
            throw ConfigError(ConfigError::Kind::InvalidValue,
                              "'seeding.seed' must be non-negative");
        }
        s.seeding.seed = static_cast<std::uint64_t>(seed);
    }

    {
        const json& goal = io_detail::expect_object(doc["goal"], "goal");
        io_detail::check_keys(goal, "goal", {"position", "lambda"}, {});
        s.goal.position = io_detail::as_vec2(goal["position"], "goal.position");
        s.goal.lambda = io_detail::as_number(goal["lambda"], "goal.lambda");
    }

    if (doc.contains("obstacles")) {
        const json& list = doc["obstacles"];
        if (!list.is_array()) {
            throw ConfigError(ConfigError::Kind::InvalidValue, "'obstacles' must be an array");
        }
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string path = "obstacles[" + std::to_string(k) + "]";
            const json& entry = io_detail::expect_object(list[k], path);
            io_detail::check_keys(entry, path, {}, {"points", "polyline", "spacing", "k_r",
                                                    "sigma_o"});
            const bool has_points = entry.contains("points");
            const bool has_polyline = entry.contains("polyline");
            if (has_points == has_polyline) {
                throw ConfigError(ConfigError::Kind::InvalidValue,
                                  "'" + path + "' needs exactly one of 'points'/'polyline'");
            }
            if (has_points && entry.contains("spacing")) {
                throw ConfigError(ConfigError::Kind::InvalidValue,
                                  "'" + path + ".spacing' applies only to polylines");
            }
            Obstacle obs;
            obs.k_r = entry.contains("k_r") ? io_detail::as_number(entry["k_r"], path + ".k_r")
                                            : 1.0;
            obs.sigma_o = entry.contains("sigma_o")
                              ? io_detail::as_number(entry["sigma_o"], path + ".sigma_o")
                              : 2.0 * s.fpf.sigma1;
            if (has_points) {
                obs.source_points = io_detail::as_point_list(entry["points"], path + ".points");
            } else {
                const auto vertices =
                    io_detail::as_point_list(entry["polyline"], path + ".polyline");
                const double spacing =
                    entry.contains("spacing")
                        ? io_detail::as_number(entry["spacing"], path + ".spacing")
                        : 0.1 / s.fpf.sigma1;
                if (!(spacing > 0.0)) {
                    throw ConfigError(ConfigError::Kind::InvalidValue,
                                      "'" + path + ".spacing' must be positive");
                }
                obs.source_points = discretize_polyline(vertices, spacing);
            }
            s.obstacles.push_back(std::move(obs));
        }
    }

    {
        IntegratorConfig cfg;
        cfg.damping_va = 2.0 * std::sqrt(std::max(s.goal.lambda, 0.0));  // critical damping
        if (doc.contains("integrator")) {
            const json& integ = io_detail::expect_object(doc["integrator"], "integrator");
            io_detail::check_keys(integ, "integrator", {},
                                  {"dt", "damping_va", "damping_robot", "max_steps",
                                   "speed_tolerance", "force_tolerance"});
            if (integ.contains("dt")) cfg.dt = io_detail::as_number(integ["dt"], "integrator.dt");
            if (integ.contains("damping_va")) {
                cfg.damping_va = io_detail::as_number(integ["damping_va"],
                                                      "integrator.damping_va");
            }
            if (integ.contains("damping_robot")) {
                cfg.damping_robot =
                    io_detail::as_number(integ["damping_robot"], "integrator.damping_robot");
            }
            if (integ.contains("max_steps")) {
                const auto steps = io_detail::as_integer(integ["max_steps"],
                                                         "integrator.max_steps");
                if (steps < 1) {
                    throw ConfigError(ConfigError::Kind::InvalidValue,
                                      "'integrator.max_steps' must be at least 1");
                }
                cfg.max_steps = static_cast<std::size_t>(steps);
            }
            if (integ.contains("speed_tolerance")) {
                cfg.speed_tolerance =
                    io_detail::as_number(integ["speed_tolerance"], "integrator.speed_tolerance");
            }
            if (integ.contains("force_tolerance")) {
                cfg.force_tolerance =
                    io_detail::as_number(integ["force_tolerance"], "integrator.force_tolerance");
            }
        }
        s.integrator = cfg;
    }

    if (doc.contains("assembly")) {
        const json& asm_cfg = io_detail::expect_object(doc["assembly"], "assembly");
        io_detail::check_keys(asm_cfg, "assembly", {},
                              {"force_tolerance", "speed_tolerance", "max_steps"});
        if (asm_cfg.contains("force_tolerance")) {
            s.assembly.force_tolerance =
                io_detail::as_number(asm_cfg["force_tolerance"], "assembly.force_tolerance");
        }
        if (asm_cfg.contains("speed_tolerance")) {
            s.assembly.speed_tolerance =
                io_detail::as_number(asm_cfg["speed_tolerance"], "assembly.speed_tolerance");
        }
        if (asm_cfg.contains("max_steps")) {
            const auto steps = io_detail::as_integer(asm_cfg["max_steps"], "assembly.max_steps");
            if (steps < 1) {
                throw ConfigError(ConfigError::Kind::InvalidValue,
                                  "'assembly.max_steps' must be at least 1");
            }
            s.assembly.max_steps = static_cast<std::size_t>(steps);
        }
    }

    if (doc.contains("safety")) {
        const json& safety = io_detail::expect_object(doc["safety"], "safety");
        io_detail::check_keys(safety, "safety", {},
                              {"min_robot_clearance", "min_obstacle_clearance"});
        if (safety.contains("min_robot_clearance")) {
            s.safety.min_robot_clearance =
                io_detail::as_number(safety["min_robot_clearance"],
                                     "safety.min_robot_clearance");
        }
        if (safety.contains("min_obstacle_clearance")) {
            s.safety.min_obstacle_clearance =
                io_detail::as_number(safety["min_obstacle_clearance"],
                                     "safety.min_obstacle_clearance");
        }
    }

    if (doc.contains("formation_tolerance")) {
        const json& tol = io_detail::expect_object(doc["formation_tolerance"],
                                                   "formation_tolerance");
        io_detail::check_keys(tol, "formation_tolerance", {}, {"radius_frac", "gap_deg"});
        if (tol.contains("radius_frac")) {
            s.formation_tolerance.radius_frac =
                io_detail::as_number(tol["radius_frac"], "formation_tolerance.radius_frac");
        }
        if (tol.contains("gap_deg")) {
            s.formation_tolerance.gap_deg =
                io_detail::as_number(tol["gap_deg"], "formation_tolerance.gap_deg");
        }
    }

    s.virtual_start = io_detail::as_vec2(doc["virtual_start"], "virtual_start");
    if (doc.contains("epsilon_goal")) {
        s.epsilon_goal = io_detail::as_number(doc["epsilon_goal"], "epsilon_goal");
    }

    if (doc.contains("body_radius")) {
        s.body_radius = io_detail::as_number(doc["body_radius"], "body_radius");
    } else {
        try {
            s.body_radius = 0.02 * formation_radius_world(s.fpf);
        } catch (const NoEquilibriumError& e) {
            throw ConfigError(ConfigError::Kind::InvalidValue,
                              std::string("fpf: cannot derive default body_radius: ") +
                                  e.what());
        }
    }

    if (doc.contains("literal_goal_attraction")) {
        s.literal_goal_attraction =
            io_detail::as_bool(doc["literal_goal_attraction"], "literal_goal_attraction");
    }

    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw ConfigError(ConfigError::Kind::InvalidValue, msg);
    }
    return s;
}

inline Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(ConfigError::Kind::Syntax, "cannot read '" + path.string() + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

/// Emits every scenario field with its resolved concrete value, so
/// parse(serialize(parse(doc))) == parse(doc).
inline std::string serialize_scenario(const Scenario& s) {
    using io_detail::json;
    using io_detail::vec2_json;
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["fpf"] = {{"k_v", s.fpf.k_v}, {"sigma1", s.fpf.sigma1}, {"sigma2", s.fpf.sigma2}};
    doc["inter_robot"] = {{"k_a", s.inter_robot.k_a}, {"sigma_r", s.inter_robot.sigma_r}};
    doc["n_robots"] = s.n_robots;
    doc["seeding"] = {{"box", json::array({s.seeding.box_min.x, s.seeding.box_min.y,
                                           s.seeding.box_max.x, s.seeding.box_max.y})},
                      {"min_separation", s.seeding.min_separation},
                      {"seed", s.seeding.seed}};
    doc["goal"] = {{"position", vec2_json(s.goal.position)}, {"lambda", s.goal.lambda}};
    if (!s.obstacles.empty()) {
        json list = json::array();
        for (const Obstacle& obs : s.obstacles) {
            json points = json::array();
            for (const Vec2& p : obs.source_points) points.push_back(vec2_json(p));
            list.push_back({{"points", points}, {"k_r", obs.k_r}, {"sigma_o", obs.sigma_o}});
        }
        doc["obstacles"] = list;
    }
    doc["integrator"] = {{"dt", s.integrator.dt},
                         {"damping_va", s.integrator.damping_va},
                         {"damping_robot", s.integrator.damping_robot},
                         {"max_steps", s.integrator.max_steps},
                         {"speed_tolerance", s.integrator.speed_tolerance},
                         {"force_tolerance", s.integrator.force_tolerance}};
    if (s.assembly.force_tolerance || s.assembly.speed_tolerance || s.assembly.max_steps) {
        json asm_cfg = json::object();
        if (s.assembly.force_tolerance) asm_cfg["force_tolerance"] = *s.assembly.force_tolerance;
        if (s.assembly.speed_tolerance) asm_cfg["speed_tolerance"] = *s.assembly.speed_tolerance;
        if (s.assembly.max_steps) asm_cfg["max_steps"] = *s.assembly.max_steps;
        doc["assembly"] = asm_cfg;
    }
    doc["safety"] = {{"min_robot_clearance", s.safety.min_robot_clearance},
                     {"min_obstacle_clearance", s.safety.min_obstacle_clearance}};
    doc["formation_tolerance"] = {{"radius_frac", s.formation_tolerance.radius_frac},
                                  {"gap_deg", s.formation_tolerance.gap_deg}};
    doc["virtual_start"] = vec2_json(s.virtual_start);
    doc["epsilon_goal"] = s.epsilon_goal;
    doc["body_radius"] = s.body_radius;
    doc["literal_goal_attraction"] = s.literal_goal_attraction;
    return doc.dump(2) + "\n";
}

// ---- file emission ---------------------------------------------------------

namespace io_detail {

/// 17 significant digits: enough for bit-exact double round trips.
inline void append_double(std::string& out, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out += buf;
}

}  // namespace io_detail

/// Writes content to a temporary file in the destination directory and
/// renames it into place, so partially written outputs are never observed.
inline void atomic_write_text(const std::filesystem::path& destination,
                              const std::string& content) {
    std::filesystem::path tmp = destination;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, destination, ec);
    if (ec) {
        throw Error("cannot move '" + tmp.string() + "' to '" + destination.string() +
                    "': " + ec.message());
    }
}

/// Trajectory CSV: header `t,qv_x,qv_y` then per robot
/// `r{id}_x,r{id}_y,r{id}_vx,r{id}_vy,r{id}_Fx,r{id}_Fy`; one row per state,
/// decimal text with 17 significant digits.
inline void write_trajectory(const RunResult& result, const std::filesystem::path& destination) {
    const auto& trajectory = result.output.trajectory;
    if (trajectory.empty()) {
        throw Error("refusing to write an empty trajectory");
    }
    std::string out;
    out.reserve(trajectory.size() * (32 + 120 * trajectory.front().robots.size()));

    out += "t,qv_x,qv_y";
    for (const Robot& r : trajectory.front().robots) {
        const std::string tag = "r" + std::to_string(r.id);
        for (const char* suffix : {"_x", "_y", "_vx", "_vy", "_Fx", "_Fy"}) {
            out += ",";
            out += tag;
            out += suffix;
        }
    }
    out += "\n";

    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        const WorldState& state = trajectory[t];
        const BodyForces& forces = result.output.forces[t];
        io_detail::append_double(out, state.time);
        out += ",";
        io_detail::append_double(out, state.virtual_agent.position.x);
        out += ",";
        io_detail::append_double(out, state.virtual_agent.position.y);
        for (std::size_t i = 0; i < state.robots.size(); ++i) {
            const Robot& r = state.robots[i];
            for (double value : {r.position.x, r.position.y, r.velocity.x, r.velocity.y,
                                 forces.robots[i].x, forces.robots[i].y}) {
                out += ",";
                io_detail::append_double(out, value);
            }
        }
        out += "\n";
    }
    atomic_write_text(destination, out);
}

/// Design-map CSV: header `k_v,varsigma,scaled_radius`, `NA` marking cells
/// with no solution, rows in the grid's row-major order.
inline void write_design_map(const std::vector<DesignMapEntry>& entries,
                             const std::filesystem::path& destination) {
    if (entries.empty()) {
        throw Error("refusing to write an empty design map");
    }
    std::string out = "k_v,varsigma,scaled_radius\n";
    for (const DesignMapEntry& entry : entries) {
        io_detail::append_double(out, entry.k_v);
        out += ",";
        io_detail::append_double(out, entry.varsigma);
        out += ",";
        if (entry.scaled_radius) {
            io_detail::append_double(out, *entry.scaled_radius);
        } else {
            out += "NA";
        }
        out += "\n";
    }
    atomic_write_text(destination, out);
}

namespace io_detail {

inline json finite_or_null(double value) {
    if (std::isfinite(value)) return json(value);
    return json(nullptr);
}

}  // namespace io_detail

/// Structured JSON run summary: termination, step count, wall-clock time,
/// final formation metrics, collision count, and a full parameter echo.
inline nlohmann::json build_run_summary(const std::string& phase, const RunResult& result,
                                        const Scenario& scenario,
                                        double wall_clock_seconds) {
    using io_detail::json;
    const WorldState& final_state = result.output.trajectory.back();
    const StepMetrics& final_metrics = result.metrics_series.back();

    json summary;
    summary["phase"] = phase;
    summary["termination"] = to_string(result.termination());
    summary["steps"] = result.output.steps();
    summary["wall_clock_seconds"] = wall_clock_seconds;
    summary["collision_events"] = result.collision_events.size();
    summary["target_radius"] = result.target_radius;

    json metrics;
    metrics["formation_rms_error"] = final_metrics.formation_rms_error;
    metrics["min_inter_robot_distance"] =
        io_detail::finite_or_null(final_metrics.min_inter_robot_distance);
    metrics["min_obstacle_clearance"] =
        io_detail::finite_or_null(final_metrics.min_obstacle_clearance);

    std::vector<Vec2> positions;
    positions.reserve(final_state.robots.size());
    for (const Robot& r : final_state.robots) positions.push_back(r.position);
    const FormationCheck check =
        check_formation(positions, final_state.virtual_agent.position, result.target_radius,
                        scenario.formation_tolerance);
    metrics["formation_ok"] = check.ok;
    metrics["max_radius_error_frac"] = check.max_radius_error_frac;
    metrics["max_gap_error_deg"] = check.max_gap_error_deg;
    if (final_state.robots.size() >= 2) {
        const PolygonRegularity reg =
            polygon_regularity(positions, final_state.virtual_agent.position);
        metrics["radii"] = reg.radii;
        metrics["angular_gaps_deg"] = reg.angular_gaps_deg;
    }
    summary["final_metrics"] = metrics;

    double run_min_robot = std::numeric_limits<double>::infinity();
    double run_min_clearance = std::numeric_limits<double>::infinity();
    for (const StepMetrics& m : result.metrics_series) {
        run_min_robot = std::min(run_min_robot, m.min_inter_robot_distance);
        run_min_clearance = std::min(run_min_clearance, m.min_obstacle_clearance);
    }
    summary["run_minima"] = {
        {"min_inter_robot_distance", io_detail::finite_or_null(run_min_robot)},
        {"min_obstacle_clearance", io_detail::finite_or_null(run_min_clearance)}};

    summary["parameters"] = json::parse(serialize_scenario(scenario));
    return summary;
}

inline void write_summary(const nlohmann::json& summary,
                          const std::filesystem::path& destination) {
    atomic_write_text(destination, summary.dump(2) + "\n");
}

}  // namespace fpf
