#pragma once

#include "billiards/curve_model.hpp"
#include "billiards/fourier.hpp"

#include <array>
#include <span>
#include <vector>

namespace billiards {

inline constexpr int kDefaultGridSize = 2048;
inline constexpr double kDefaultJetTolerance = 1e-10;

// d^j x / ds^j, j = 0..6, in affine arc length s.
using AffineDerivs = std::array<Vec2, 7>;

struct AffinePoint {
    double s = 0.0;
    double theta = 0.0;
    AffineDerivs d{};
};

/// Exact affine jet at curve parameter theta: the chain rule is carried out
/// on Taylor coefficients, with ds/dtheta = omega(x', x'')^{1/3}.
AffineDerivs affine_derivatives_at_theta(const CurveSpec& spec, double theta);

/// A curve reparametrized by affine arc length on a uniform grid.
///
/// Immutable once built. Besides the grid data it keeps two spectral
/// interpolants: ds/dtheta over [0, 2 pi) for the s <-> theta map, and the
/// affine curvature over [0, lambda) for k, k', k'' at arbitrary s.
class AffineCurve {
public:
    const CurveSpec& spec() const { return spec_; }
    int grid_size() const { return static_cast<int>(s_grid_.size()); }
    double lambda() const { return lambda_; }
    double I1() const { return I1_; }
    double I2() const { return I2_; }
    double jet_tolerance() const { return tol_jet_; }
    // Largest of |omega(x_s, x_ss) - 1| and |omega(x_s, x_sss)| over the grid.
    double jet_deviation() const { return jet_deviation_; }

    std::span<const double> s_grid() const { return s_grid_; }
    std::span<const double> theta_grid() const { return theta_grid_; }
    std::span<const AffineDerivs> jets() const { return jets_; }
    std::span<const double> k_samples() const { return k_; }
    std::span<const double> k1_samples() const { return k1_; }
    std::span<const double> k2_samples() const { return k2_; }

    // Affine arc length from theta = 0, lifted (monotone on the real line).
    double s_of_theta(double theta) const;
    // Inverse of s_of_theta; accepts any real s.
    double theta_of_s(double s) const;
    // ds/dtheta, evaluated from the curve data directly.
    double speed(double theta) const;

    Vec2 point(double s) const;
    AffinePoint jet_at(double s) const;

    double k(double s) const { return k_series_(s); }
    double dk(double s) const { return k_series_.derivative(s, 1); }
    double d2k(double s) const { return k_series_.derivative(s, 2); }

private:
    friend AffineCurve build_affine(const CurveSpec&, int, double);

    CurveSpec spec_;
    double lambda_ = 0.0;
    double I1_ = 0.0;
    double I2_ = 0.0;
    double tol_jet_ = kDefaultJetTolerance;
    double jet_deviation_ = 0.0;
    std::vector<double> s_grid_;
    std::vector<double> theta_grid_;
    std::vector<AffineDerivs> jets_;
    std::vector<double> k_, k1_, k2_;
    PeriodicSeries speed_series_;
    PeriodicSeries k_series_;
};

/// grid_size must be even and >= 64. Throws ConvexityError or SolverError.
AffineCurve build_affine(const CurveSpec& spec, int grid_size = kDefaultGridSize,
                         double tol_jet = kDefaultJetTolerance);

struct CurvatureIntegrals {
    double I1 = 0.0;  // integral of k ds
    double I2 = 0.0;  // integral of k^2 ds
};

CurvatureIntegrals curvature_integrals(const AffineCurve& curve);

/// Maximum deviations over the grid of the six identities
///   omega(x1, x4) = -k,  omega(x2, x4) = k',  omega(x1, x5) = -2k',
///   omega(x3, x4) = k^2, omega(x2, x5) = k'' - k^2, omega(x1, x6) = -3k'' + k^2,
/// with x_j the affine jets and k', k'' from spectral differentiation.
struct OmegaReport {
    std::array<double, 6> deviation{};
    double max() const;
    static constexpr std::array<const char*, 6> labels{
        "w(x1,x4)+k", "w(x2,x4)-k'", "w(x1,x5)+2k'",
        "w(x3,x4)-k^2", "w(x2,x5)-(k''-k^2)", "w(x1,x6)+3k''-k^2"};
};

OmegaReport check_omega_relations(const AffineCurve& curve);

// Largest |x_sss + k x_s| over the grid (affine Frenet equation).
double frenet_deviation(const AffineCurve& curve);

}  // namespace billiards
