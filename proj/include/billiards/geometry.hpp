#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <iterator>
#include <numbers>

namespace billiards {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Area form omega(u, v) = u1 v2 - u2 v1. Curves are oriented
// counterclockwise, so omega(x', x'') > 0 on every admissible curve.
inline double omega(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Shoelace area of a closed polygon, positive for counterclockwise order.
template <typename Range>
double polygon_area(const Range& vertices) {
    const auto n = static_cast<std::ptrdiff_t>(std::size(vertices));
    double twice = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        twice += omega(vertices[i], vertices[(i + 1) % n]);
    }
    return 0.5 * twice;
}

// Reduce x into [0, period).
inline double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

}  // namespace billiards
