// Formation potential field: candidate function, parameter validation, and
// the numeric design map linking (K_v, varsigma) to the scaled ring radius.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fpf/errors.hpp"
#include "fpf/vec2.hpp"

namespace fpf {

/// Shape parameters of the formation potential field
///
///   U_v(d) = 1 + tanh^2(sigma1 * d) - k_v * tanh^2(sigma2 * d)
///
/// where d is the distance from the virtual agent. A valid parameter set has
/// a single maximum at d = 0 and a ring of minima whose scaled radius is the
/// positive root of the ring equation (see solve_scaled_radius).
struct FpfParams {
    double k_v = 2.0;     ///< depth gain; must exceed 1
    double sigma1 = 1.0;  ///< inverse-length spread of the attractive term
    double sigma2 = 2.4;  ///< inverse-length spread of the gained term

    /// Spread ratio sigma2/sigma1; formations exist only for values above 1.
    double varsigma() const { return sigma2 / sigma1; }

    constexpr bool operator==(const FpfParams&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;  // one entry per violated rule
};

/// Checks every FPF parameter rule. Each violation names the rule and the
/// offending value. Non-finite fields throw MalformedParameterError.
inline ValidationReport validate_params(const FpfParams& p) {
    if (!std::isfinite(p.k_v) || !std::isfinite(p.sigma1) || !std::isfinite(p.sigma2)) {
        throw MalformedParameterError("FPF parameters must be finite numbers");
    }
    ValidationReport report;
    auto fail = [&report](std::string rule) {
        report.ok = false;
        report.violations.push_back(std::move(rule));
    };
    if (!(p.sigma1 > 0.0)) {
        fail("sigma1 > 0 (got " + std::to_string(p.sigma1) + ")");
    }
    if (!(p.sigma2 > 0.0)) {
        fail("sigma2 > 0 (got " + std::to_string(p.sigma2) + ")");
    }
    if (!(p.k_v > 1.0)) {
        fail("k_v > 1 (got " + std::to_string(p.k_v) + ")");
    }
    if (p.sigma1 > 0.0 && p.sigma2 > 0.0) {
        if (!(p.varsigma() > 1.0)) {
            fail("varsigma > 1 (got " + std::to_string(p.varsigma()) + ")");
        }
        // Implied by the two rules above, but asserted as its own design rule.
        if (!(p.sigma1 / p.sigma2 < std::sqrt(std::max(p.k_v, 0.0)))) {
            fail("sigma1/sigma2 < sqrt(k_v) (got " + std::to_string(p.sigma1 / p.sigma2) +
                 " vs sqrt(k_v) = " + std::to_string(std::sqrt(std::max(p.k_v, 0.0))) + ")");
        }
    }
    return report;
}

/// Throws MalformedParameterError listing every violated rule.
inline void require_valid(const FpfParams& p) {
    const ValidationReport report = validate_params(p);
    if (!report.ok) {
        std::string msg = "invalid FPF parameters:";
        for (const auto& v : report.violations) msg += " [" + v + "]";
        throw MalformedParameterError(msg);
    }
}

namespace detail {

// tanh(x)/cosh^2(x); decays to zero from either side of its single peak.
inline double tanh_sech2(double x) {
    const double c = std::cosh(x);
    return std::tanh(x) / (c * c);
}

}  // namespace detail

/// Radial profile of the field at center distance d >= 0.
inline double fpf_potential_radial(const FpfParams& p, double d) {
    const double t1 = std::tanh(p.sigma1 * d);
    const double t2 = std::tanh(p.sigma2 * d);
    return 1.0 + t1 * t1 - p.k_v * t2 * t2;
}

/// Field value at position q for a virtual agent at q_v. Equals 1 exactly at
/// the center and tends to 2 - k_v far away.
inline double fpf_potential(const FpfParams& p, const Vec2& q, const Vec2& q_v) {
    return fpf_potential_radial(p, distance(q, q_v));
}

/// Magnitude of the radial derivative dU/dd; negative inside the minima ring.
inline double fpf_radial_slope(const FpfParams& p, double d) {
    return 2.0 * p.sigma1 * detail::tanh_sech2(p.sigma1 * d) -
           2.0 * p.k_v * p.sigma2 * detail::tanh_sech2(p.sigma2 * d);
}

/// Force on a robot at q from the field centered at q_v, i.e. the negative
/// gradient of fpf_potential. At q = q_v the direction is undefined and the
/// force is the zero vector by symmetry.
inline Vec2 fpf_force(const FpfParams& p, const Vec2& q, const Vec2& q_v) {
    const Vec2 offset = q - q_v;
    const double d = offset.norm();
    if (d == 0.0) {
        return {0.0, 0.0};
    }
    return offset * (-fpf_radial_slope(p, d) / d);
}

/// Left-hand side of the ring equation in scaled radius r = sigma1 * d:
///
///   g(r) = tanh(r)/cosh^2(r) - k_v * varsigma * tanh(varsigma*r)/cosh^2(varsigma*r)
///
/// Ring equilibria of the field are positive roots of g.
inline double ring_equation(double k_v, double varsigma, double r) {
    return detail::tanh_sech2(r) - k_v * varsigma * detail::tanh_sech2(varsigma * r);
}

struct RadiusSolverOptions {
    double scan_step = 0.05;   ///< bracket scan step in scaled radius
    double scan_horizon = 50.0;
    double tolerance = 1e-10;  ///< accept when |g| falls below this
    int max_bisections = 200;
};

/// Solves the ring equation for the scaled formation radius.
///
/// Near zero g behaves like r * (1 - k_v*varsigma^2), so for k_v*varsigma^2
/// greater than 1 the function starts negative; the bracket scan walks
/// outward until g turns positive and bisection refines the crossing. If no
/// sign change appears within the horizon the parameters admit no formation
/// radius and NoEquilibriumError is thrown.
inline double solve_scaled_radius(double k_v, double varsigma,
                                  const RadiusSolverOptions& opts = {}) {
    if (!std::isfinite(k_v) || !std::isfinite(varsigma)) {
        throw MalformedParameterError("k_v and varsigma must be finite");
    }
    if (k_v * varsigma * varsigma <= 1.0) {
        throw NoEquilibriumError("no formation radius: k_v * varsigma^2 <= 1 (g has no "
                                 "sign change from below)");
    }

    double lo = 0.0;  // g(0) = 0 and g < 0 just above; treat 0 as the negative side
    double hi = 0.0;
    bool bracketed = false;
    for (double r = opts.scan_step; r <= opts.scan_horizon; r += opts.scan_step) {
        const double value = ring_equation(k_v, varsigma, r);
        if (value == 0.0) {
            return r;
        }
        if (value > 0.0) {
            hi = r;
            bracketed = true;
            break;
        }
        lo = r;
    }
    if (!bracketed) {
        throw NoEquilibriumError("no formation radius within scan horizon " +
                                 std::to_string(opts.scan_horizon));
    }

    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < opts.max_bisections; ++i) {
        mid = 0.5 * (lo + hi);
        const double value = ring_equation(k_v, varsigma, mid);
        if (std::fabs(value) < opts.tolerance) {
            return mid;
        }
        if (value < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

/// One cell of the design map. scaled_radius is empty when the cell has no
/// formation radius (explicit no-solution marker).
struct DesignMapEntry {
    double k_v = 0.0;
    double varsigma = 0.0;
    std::optional<double> scaled_radius;

    constexpr bool operator==(const DesignMapEntry&) const = default;
};

/// Solves the ring equation over an n-by-n grid. Sample points are uniform
/// on (min, max]: the lower edge is excluded so a range starting exactly at
/// the validity boundary 1 stays inside it. Entries are row-major with k_v
/// as the outer (row) index.
inline std::vector<DesignMapEntry> design_map(double kv_min, double kv_max, double vs_min,
                                              double vs_max, int grid,
                                              const RadiusSolverOptions& opts = {}) {
    if (!(kv_min >= 1.0) || !(vs_min >= 1.0)) {
        throw MalformedRangeError("design map lower bounds must be at least 1");
    }
    if (!(kv_max > kv_min) || !(vs_max > vs_min)) {
        throw MalformedRangeError("design map ranges are empty or inverted");
    }
    if (grid < 1) {
        throw MalformedRangeError("design map grid must have at least one cell per axis");
    }

    std::vector<DesignMapEntry> entries;
    entries.reserve(static_cast<std::size_t>(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        const double k_v = kv_min + (kv_max - kv_min) * (i + 1) / grid;
        for (int j = 0; j < grid; ++j) {
            const double vs = vs_min + (vs_max - vs_min) * (j + 1) / grid;
            DesignMapEntry entry{k_v, vs, std::nullopt};
            try {
                entry.scaled_radius = solve_scaled_radius(k_v, vs, opts);
            } catch (const NoEquilibriumError&) {
                // kept as an explicit no-solution cell
            }
            entries.push_back(entry);
        }
    }
    return entries;
}

}  // namespace fpf
