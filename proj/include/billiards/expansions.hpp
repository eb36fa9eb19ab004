#pragma once

#include "billiards/affine_geometry.hpp"
#include "billiards/polygon_solvers.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace billiards {

enum class BilliardKind { Symplectic, Outer };

std::string_view to_string(BilliardKind kind);
BilliardKind parse_billiard_kind(std::string_view text);
// Inscribed polygons belong to symplectic billiards, circumscribed to outer.
BilliardKind billiard_kind(PolygonKind kind);
PolygonKind polygon_kind(BilliardKind kind);

/// Two coefficient sets for the circumscribed / outer expansions.
///
/// Printed: the values as originally stated, tangent-area series with
/// 3 k'/6! and k''/(7 5!), spacing coefficient +8/5!, a6 = 421/(5 8!),
/// b6 = -1/(5 5!).
/// Rederived: recomputed from the chord and tangent area expansions. The
/// tangent-area series then carries k'/(4 5!) and k''/(14 5!), the circumscribed spacing
/// coefficient is -8/5!, and the circumscribed sixth-order coefficients become
/// a6 = -3/22400, b6 = 1/1800.
/// The two sets agree on the inscribed / symplectic side and on every ellipse.
enum class CoefficientSet { Printed, Rederived };

std::string_view to_string(CoefficientSet set);

struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;
    constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class CoefficientSource { Predicted, Extracted };

/// Named expansion coefficients: A2, A4, A6 for deficits (in powers of 1/n),
/// beta1, beta3, beta5, beta7 for beta functions (in powers of rho).
struct ExpansionCoefficients {
    enum class Kind { InscribedDeficit, CircumscribedDeficit, BetaSymplectic, BetaOuter };
    Kind kind = Kind::InscribedDeficit;
    CoefficientSource source = CoefficientSource::Predicted;
    std::vector<std::pair<std::string, double>> values;

    double at(std::string_view name) const;
    double order(int p) const;  // by power: 2 -> A2, 7 -> beta7, ...
};

std::string_view to_string(ExpansionCoefficients::Kind kind);

/// Deficit prefactors: A2 = a2 lambda^3, A4 = a4 lambda^4 I1,
/// A6 = a6 lambda^6 I2 + b6 lambda^5 I1^2.
struct DeficitPrefactors {
    Ratio a2, a4, a6, b6;
};

DeficitPrefactors deficit_prefactors(PolygonKind kind, CoefficientSet set = CoefficientSet::Printed);

/// Circumscribed spacing and recursion coefficient: +1/30 (inscribed),
/// +8/5! printed or -8/5! rederived (circumscribed).
Ratio spacing_coefficient(PolygonKind kind, CoefficientSet set = CoefficientSet::Printed);
Ratio recursion_coefficient(PolygonKind kind);

/// Spacing law lambda/n - c lambda^2 I1/n^3 + c lambda^3 k(s0 + i lambda/n)/n^3
/// for i = 0..n-1, c = spacing_coefficient(kind, set). Entry i predicts
/// PolygonConfig::spacing[i] when s0 = params[0].
std::vector<double> predicted_spacing(const AffineCurve& curve, PolygonKind kind, int n, double s0,
                                      CoefficientSet set = CoefficientSet::Printed);

/// Area between the arc from r to s and its chord,
///   (1/2)[D^3/3! - D^5 k/5! - 3 D^6 k'/6! - D^7 k''/(7 5!) + D^7 k^2/7!],
/// with D = s - r and k, k', k'' taken at r.
double chord_area_series(const AffineCurve& curve, double r, double s);

/// Area between the arc from r to s and the tangent lines at its ends,
///   D^3/24 + D^5 k/(2 5!) + c6 D^6 k' + c7 D^7 k'' + 17 D^7 k^2/8!,
/// with (c6, c7) = (1/(4 5!), 1/(14 5!)) rederived (default) or
/// (3/6!, 1/(7 5!)) as printed.
double tangent_area_series(const AffineCurve& curve, double r, double s,
                           CoefficientSet set = CoefficientSet::Rederived);

ExpansionCoefficients predict_deficit_coeffs(const AffineCurve& curve, PolygonKind kind,
                                             CoefficientSet set = CoefficientSet::Printed);

ExpansionCoefficients predict_beta_coeffs(const AffineCurve& curve, BilliardKind kind,
                                          CoefficientSet set = CoefficientSet::Printed);

/// beta(1/n) from a deficit: -(2/n)(Area - delta) for inscribed samples,
/// delta/n for circumscribed ones.
double beta_from_deficit(const AffineCurve& curve, const DeficitSample& sample);
double beta_from_deficit(double area, const DeficitSample& sample);

/// Exact Bernoulli numbers B_0..B_20 (B_1 = +1/2 convention of the
/// Akiyama-Tanigawa recurrence; only even indices are used).
Ratio bernoulli(int index);

/// Partial sums of the ellipse beta series at rho = 1/n:
/// symplectic  ab sum_{k<terms} (-1)^{k+1} (2 pi/n)^{2k+1}/(2k+1)!  = -ab sin(2 pi/n),
/// outer       ab sum_{2<=k<=terms+1} (-1)^{k-1} 4^k (4^k-1) B_2k/(2k)! (pi/n)^{2k-1}
///             = ab (tan(pi/n) - pi/n).
double ellipse_beta_oracle(double a, double b, int n, BilliardKind kind, int terms);

/// Taylor coefficients beta1..beta7 of the ellipse closed forms.
ExpansionCoefficients ellipse_beta_taylor(double a, double b, BilliardKind kind);

/// Inequality between beta5 and beta7.
///   symplectic: lhs = 42 lambda^3 beta7, rhs = 5! beta5^2, gap = rhs - lhs
///   outer:      lhs = 7 lambda^3 beta7,  rhs = 170 beta5^2, gap = lhs - rhs
/// The inequality holds when gap >= 0, with equality exactly for ellipses.
struct TabReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double normalized_gap = 0.0;  // gap / |rhs|
};

TabReport tab_inequality(const AffineCurve& curve, BilliardKind kind,
                         CoefficientSet set = CoefficientSet::Printed);
TabReport tab_inequality(double lambda, double beta5, double beta7, BilliardKind kind);

}  // namespace billiards
