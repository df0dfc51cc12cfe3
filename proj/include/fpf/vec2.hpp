// Minimal 2D vector type used throughout the library.
#pragma once

#include <cmath>

namespace fpf {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    constexpr double norm_squared() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }

    /// Counter-clockwise rotation by `angle` radians.
    Vec2 rotated(double angle) const {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

}  // namespace fpf
