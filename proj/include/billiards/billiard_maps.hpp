#pragma once

#include "billiards/affine_geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace billiards {

/// Ordered pair of boundary points, by affine parameter in [0, lambda).
/// Valid when s1 lies strictly between s0 and the point with tangent
/// parallel to the one at s0, going counterclockwise.
struct ChordState {
    double s0 = 0.0;
    double s1 = 0.0;
};

/// A point strictly outside the curve.
struct OuterState {
    Vec2 p = Vec2::Zero();
};

// Affine parameter of the point whose tangent is parallel to the tangent at
// s. Both curve kinds are parametrized so that this is theta + pi.
double parallel_tangent(const AffineCurve& curve, double s);

bool in_phase_space(const AffineCurve& curve, const ChordState& st);

/// Symplectic billiard map (s0, s1) -> (s1, s2), where x(s2) - x(s0) is
/// parallel to the tangent at x(s1). Throws PhaseSpaceError for invalid states.
ChordState symplectic_step(const AffineCurve& curve, const ChordState& st);

/// Outer billiard map: reflect p through the tangency point x(tau) of the
/// tangent line from p that has the curve on its left (the orientation for
/// which x(tau) - p points along x'(tau)). Throws PhaseSpaceError when p is
/// inside or on the curve.
OuterState outer_step(const CurveSpec& spec, const OuterState& st);

// Tangency parameter theta used by outer_step.
double outer_tangency(const CurveSpec& spec, const Vec2& p);

std::vector<ChordState> symplectic_orbit(const AffineCurve& curve, ChordState start, int steps);
std::vector<OuterState> outer_orbit(const CurveSpec& spec, OuterState start, int steps);

/// Rotation number of an orbit. When the orbit returns to its start within
/// the tolerance, the exact winding / period fraction is reported.
struct RotationEstimate {
    double value = 0.0;
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;  // 0 unless periodic
    bool periodic = false;
};

inline constexpr double kPeriodTolerance = 1e-9;

RotationEstimate rotation_number(const AffineCurve& curve, std::span<const ChordState> orbit,
                                 double tol = kPeriodTolerance);
RotationEstimate rotation_number(const CurveSpec& spec, std::span<const OuterState> orbit,
                                 double tol = kPeriodTolerance);

}  // namespace billiards
