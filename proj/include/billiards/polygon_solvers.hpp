#pragma once

#include "billiards/affine_geometry.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace billiards {

enum class PolygonKind { Inscribed, Circumscribed };

std::string_view to_string(PolygonKind kind);
PolygonKind parse_polygon_kind(std::string_view text);

/// A critical inscribed or circumscribed n-gon.
///
/// params are affine parameters in [0, lambda), increasing: the vertices of an
/// inscribed polygon, the tangency points of a circumscribed one. spacing[i]
/// is params[i] - params[i-1] taken cyclically, so spacing[0] wraps around.
struct PolygonConfig {
    PolygonKind kind = PolygonKind::Inscribed;
    int n = 0;
    std::vector<double> params;
    std::vector<double> thetas;      // curve parameter of each entry of params
    std::vector<Vec2> vertices;      // corners; vertices[i] follows tangency point i
    std::vector<double> spacing;
    double residual_norm = 0.0;      // max |F_i| (length^2) or max |G_i| (length^{2/3})
    double hessian_extreme = 0.0;    // largest (inscribed) or smallest (circumscribed) eigenvalue
    int iterations = 0;
};

struct SolverOptions {
    double tolerance = 1e-13;        // relative to lambda^2 (inscribed) or lambda (circumscribed)
    int max_iterations = 60;
    double hessian_tolerance = 1e-9; // relative to lambda^2
};

/// Inscribed n-gon of maximal area: solves
///   F_i = omega(x(s_{i+1}) - x(s_{i-1}), x_s(s_i)) = 0
/// by damped Newton from uniform affine spacing.
PolygonConfig solve_inscribed(const AffineCurve& curve, int n, const SolverOptions& opts = {});

/// Circumscribed n-gon of minimal area: every tangency point is the midpoint
/// of its edge.
PolygonConfig solve_circumscribed(const AffineCurve& curve, int n, const SolverOptions& opts = {});

PolygonConfig solve_polygon(const AffineCurve& curve, PolygonKind kind, int n,
                            const SolverOptions& opts = {});

struct DeficitSample {
    int n = 0;
    double delta = 0.0;
    PolygonKind kind = PolygonKind::Inscribed;
    double accuracy_estimate = 0.0;
    double residual = 0.0;
};

/// Area of the symmetric difference between the curve and the polygon,
/// accumulated edge by edge with Gauss-Legendre quadrature.
DeficitSample deficit(const AffineCurve& curve, const PolygonConfig& cfg);

// Circumscribed deficit as shoelace area minus enclosed area; a cross-check
// that loses a few digits to cancellation.
double shoelace_deficit(const AffineCurve& curve, const PolygonConfig& cfg);

/// (s_{n,i}, lambda_{n,i}) pairs.
std::vector<std::pair<double, double>> spacing_profile(const PolygonConfig& cfg);

/// Area between the arc from theta_r to theta_s and its chord, with the
/// given number of Gauss-Legendre nodes.
double chord_area(const CurveSpec& spec, double theta_r, double theta_s, int points = 48);

/// Area between the arc from theta_r to theta_s and the two tangent lines at
/// its ends.
double tangent_area(const CurveSpec& spec, double theta_r, double theta_s, int points = 48);

}  // namespace billiards
