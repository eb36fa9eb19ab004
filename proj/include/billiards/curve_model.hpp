#pragma once

#include "billiards/geometry.hpp"

#include <string>
#include <vector>

namespace billiards {

enum class CurveKind { SupportFourier, Ellipse };

/// Closed strictly convex curve, oriented counterclockwise.
///
/// SupportFourier: the support function
///   h(t) = a0 + sum_m cos_coeffs[m-1] cos(m t) + sin_coeffs[m-1] sin(m t)
/// parametrized by the normal angle t, x(t) = h n(t) + h'(t) n'(t).
/// Ellipse: x(t) = (a cos t, b sin t).
///
/// Either kind may carry a linear map (det > 0) applied to points and all
/// derivatives, which realizes affine images without touching the parameter.
struct CurveSpec {
    CurveKind kind = CurveKind::Ellipse;
    double a0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    double a = 1.0;
    double b = 1.0;
    Mat2 transform = Mat2::Identity();

    static CurveSpec ellipse(double a, double b);
    static CurveSpec circle(double radius);
    static CurveSpec support_fourier(double a0, std::vector<double> cos_coeffs,
                                     std::vector<double> sin_coeffs = {});

    // Same curve mapped by m (applied after any existing transform).
    CurveSpec transformed(const Mat2& m) const;

    // Highest harmonic present in x(t) (support: max index + 1, ellipse: 1).
    int harmonic_degree() const;
};

struct ConvexityReport {
    double min_radius_factor = 0.0;  // min over the grid of h + h'' (ellipse: min(a, b))
    double coefficient_bound = 0.0;  // a0 - sum (m^2 + 1)|c_m|; > 0 is sufficient
    bool bound_satisfied = false;
    int grid_samples = 0;
};

inline constexpr int kConvexityGrid = 4096;

/// Checks the spec. Non-positive parameters or a grid sample with h + h'' <= 0
/// throw; a failed coefficient bound is only reported.
ConvexityReport validate(const CurveSpec& spec);

/// d^j x / dt^j for j = 0..order.
struct Jet {
    int order = 0;
    std::vector<Vec2> derivs;
};

inline constexpr int kMaxJetOrder = 6;

Jet evaluate_jet(const CurveSpec& spec, double t, int order);

// Same as evaluate_jet without the order cap; the affine reparametrization
// needs one or two orders beyond the public limit.
std::vector<Vec2> curve_derivatives(const CurveSpec& spec, double t, int order);

// Support function derivatives h^{(l)}(t), l = 0..order (SupportFourier only).
std::vector<double> support_derivatives(const CurveSpec& spec, double t, int order);

double ordinary_curvature(const CurveSpec& spec, double t);

/// Area enclosed by the curve. The integrand omega(x, x') is a trigonometric
/// polynomial, so the periodic trapezoid rule on enough nodes is exact up to
/// roundoff.
double enclosed_area(const CurveSpec& spec);
double enclosed_area(const CurveSpec& spec, int nodes);

std::string describe(const CurveSpec& spec);

}  // namespace billiards
