#pragma once

#include <cmath>
#include <vector>

namespace pnindex {

/// Plain 2D vector (double precision). Value type, no invariants of its own.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    /// z-component of the cross product; measures linear independence.
    constexpr double cross(Vec2 r) const { return x * r.y - y * r.x; }
    double norm2() const { return std::hypot(x, y); }
    double norm_inf() const { return std::max(std::abs(x), std::abs(y)); }
    constexpr bool is_zero() const { return x == 0.0 && y == 0.0; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// Dense d-dimensional vector used only by the ell_p embeddings.
using VecD = std::vector<double>;

} // namespace pnindex
