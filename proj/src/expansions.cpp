#include "billiards/expansions.hpp"

#include "billiards/errors.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

namespace billiards {

std::string_view to_string(BilliardKind kind) {
    return kind == BilliardKind::Symplectic ? "symplectic" : "outer";
}

BilliardKind parse_billiard_kind(std::string_view text) {
    if (text == "symplectic" || text == "inscribed") return BilliardKind::Symplectic;
    if (text == "outer" || text == "circumscribed") return BilliardKind::Outer;
    throw ValidationError("unknown billiard kind '" + std::string(text) + "'");
}

BilliardKind billiard_kind(PolygonKind kind) {
    return kind == PolygonKind::Inscribed ? BilliardKind::Symplectic : BilliardKind::Outer;
}

PolygonKind polygon_kind(BilliardKind kind) {
    return kind == BilliardKind::Symplectic ? PolygonKind::Inscribed : PolygonKind::Circumscribed;
}

std::string_view to_string(CoefficientSet set) {
    return set == CoefficientSet::Printed ? "printed" : "rederived";
}

std::string_view to_string(ExpansionCoefficients::Kind kind) {
    switch (kind) {
        case ExpansionCoefficients::Kind::InscribedDeficit: return "inscribed_deficit";
        case ExpansionCoefficients::Kind::CircumscribedDeficit: return "circumscribed_deficit";
        case ExpansionCoefficients::Kind::BetaSymplectic: return "beta_symplectic";
        case ExpansionCoefficients::Kind::BetaOuter: return "beta_outer";
    }
    return "";
}

double ExpansionCoefficients::at(std::string_view name) const {
    for (const auto& [key, v] : values)
        if (key == name) return v;
    throw ValidationError("no coefficient named '" + std::string(name) + "'");
}

double ExpansionCoefficients::order(int p) const {
    const bool beta = kind == Kind::BetaSymplectic || kind == Kind::BetaOuter;
    return at((beta ? "beta" : "A") + std::to_string(p));
}

DeficitPrefactors deficit_prefactors(PolygonKind kind, CoefficientSet set) {
    if (kind == PolygonKind::Inscribed) {
        return {{1, 12}, {-1, 2 * 120}, {-9, 10 * 5040}, {1, 30 * 120}};
    }
    if (set == CoefficientSet::Printed) {
        return {{1, 24}, {1, 2 * 120}, {421, 5 * 40320}, {-1, 5 * 120}};
    }
    return {{1, 24}, {1, 2 * 120}, {-3, 22400}, {1, 1800}};
}

Ratio spacing_coefficient(PolygonKind kind, CoefficientSet set) {
    if (kind == PolygonKind::Inscribed) return {1, 30};
    return set == CoefficientSet::Printed ? Ratio{8, 120} : Ratio{-8, 120};
}

Ratio recursion_coefficient(PolygonKind kind) {
    return kind == PolygonKind::Inscribed ? Ratio{1, 30} : Ratio{-8, 120};
}

std::vector<double> predicted_spacing(const AffineCurve& curve, PolygonKind kind, int n, double s0,
                                      CoefficientSet set) {
    if (n < 3) throw ValidationError("predicted_spacing: n must be at least 3");
    const double c = spacing_coefficient(kind, set).value();
    const double lambda = curve.lambda();
    const double step = lambda / n;
    const double n3 = std::pow(static_cast<double>(n), 3);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = step - c * lambda * lambda * curve.I1() / n3 +
                                           c * lambda * lambda * lambda * curve.k(s0 + i * step) / n3;
    }
    return out;
}

double chord_area_series(const AffineCurve& curve, double r, double s) {
    const double d = s - r;
    const double k = curve.k(r);
    const double k1 = curve.dk(r);
    const double k2 = curve.d2k(r);
    const double d3 = d * d * d;
    const double d5 = d3 * d * d;
    return 0.5 * (d3 / 6.0 - d5 * k / 120.0 - 3.0 * d5 * d * k1 / 720.0 -
                  d5 * d * d * k2 / (7.0 * 120.0) + d5 * d * d * k * k / 5040.0);
}

double tangent_area_series(const AffineCurve& curve, double r, double s, CoefficientSet set) {
    const double d = s - r;
    const double k = curve.k(r);
    const double k1 = curve.dk(r);
    const double k2 = curve.d2k(r);
    const double d3 = d * d * d;
    const double d5 = d3 * d * d;
    const Ratio c6 = set == CoefficientSet::Rederived ? Ratio{1, 4 * 120} : Ratio{3, 720};
    const Ratio c7 = set == CoefficientSet::Rederived ? Ratio{1, 14 * 120} : Ratio{1, 7 * 120};
    return d3 / 24.0 + d5 * k / 240.0 + c6.value() * d5 * d * k1 + c7.value() * d5 * d * d * k2 +
           17.0 * d5 * d * d * k * k / 40320.0;
}

ExpansionCoefficients predict_deficit_coeffs(const AffineCurve& curve, PolygonKind kind,
                                             CoefficientSet set) {
    const auto p = deficit_prefactors(kind, set);
    const double l = curve.lambda();
    const double l3 = l * l * l;
    const double l5 = l3 * l * l;
    const auto [I1, I2] = curvature_integrals(curve);
    ExpansionCoefficients out;
    out.kind = kind == PolygonKind::Inscribed ? ExpansionCoefficients::Kind::InscribedDeficit
                                              : ExpansionCoefficients::Kind::CircumscribedDeficit;
    out.values = {{"A2", p.a2.value() * l3},
                  {"A4", p.a4.value() * l3 * l * I1},
                  {"A6", p.a6.value() * l5 * l * I2 + p.b6.value() * l5 * I1 * I1}};
    return out;
}

ExpansionCoefficients predict_beta_coeffs(const AffineCurve& curve, BilliardKind kind,
                                          CoefficientSet set) {
    // beta(1/n) = -(2/n)(Area - delta) or delta/n, term by term.
    const auto d = predict_deficit_coeffs(curve, polygon_kind(kind), set);
    ExpansionCoefficients out;
    if (kind == BilliardKind::Symplectic) {
        out.kind = ExpansionCoefficients::Kind::BetaSymplectic;
        out.values = {{"beta1", -2.0 * enclosed_area(curve.spec())},
                      {"beta3", 2.0 * d.at("A2")},
                      {"beta5", 2.0 * d.at("A4")},
                      {"beta7", 2.0 * d.at("A6")}};
    } else {
        out.kind = ExpansionCoefficients::Kind::BetaOuter;
        out.values = {{"beta1", 0.0}, {"beta3", d.at("A2")}, {"beta5", d.at("A4")}, {"beta7", d.at("A6")}};
    }
    return out;
}

double beta_from_deficit(double area, const DeficitSample& sample) {
    const double rho = 1.0 / sample.n;
    return sample.kind == PolygonKind::Inscribed ? -2.0 * rho * (area - sample.delta) : rho * sample.delta;
}

double beta_from_deficit(const AffineCurve& curve, const DeficitSample& sample) {
    return beta_from_deficit(enclosed_area(curve.spec()), sample);
}

namespace {

struct Rational {
    __int128 num = 0;
    __int128 den = 1;
};

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational normalize(__int128 num, __int128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd128(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

constexpr int kMaxBernoulli = 20;

std::array<Ratio, kMaxBernoulli + 1> build_bernoulli() {
    // Akiyama-Tanigawa: a[m] = 1/(m+1), then a[j-1] = j (a[j-1] - a[j]).
    std::array<Rational, kMaxBernoulli + 1> a{};
    std::array<Ratio, kMaxBernoulli + 1> out{};
    for (int m = 0; m <= kMaxBernoulli; ++m) {
        a[m] = {1, m + 1};
        for (int j = m; j >= 1; --j) {
            const __int128 num = a[j - 1].num * a[j].den - a[j].num * a[j - 1].den;
            a[j - 1] = normalize(j * num, a[j - 1].den * a[j].den);
        }
        out[m] = {static_cast<std::int64_t>(a[0].num), static_cast<std::int64_t>(a[0].den)};
    }
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Ratio bernoulli(int index) {
    if (index < 0 || index > kMaxBernoulli) {
        throw ValidationError("Bernoulli numbers are tabulated up to B_20");
    }
    static const auto table = build_bernoulli();
    return table[index];
}

double ellipse_beta_oracle(double a, double b, int n, BilliardKind kind, int terms) {
    if (n < 3) throw ValidationError("n must be at least 3");
    if (terms < 4) throw ValidationError("at least 4 series terms are required");
    const double ab = a * b;
    double sum = 0.0;
    if (kind == BilliardKind::Symplectic) {
        const double x = kTwoPi / n;
        for (int k = 0; k < terms; ++k) {
            sum += (k % 2 == 0 ? -1.0 : 1.0) * std::pow(x, 2 * k + 1) / factorial(2 * k + 1);
        }
    } else {
        if (terms + 1 > kMaxBernoulli / 2) throw ValidationError("outer series is limited to 9 terms");
        const double x = kPi / n;
        for (int k = 2; k <= terms + 1; ++k) {
            const double four = std::pow(4.0, k);
            sum += (k % 2 == 0 ? -1.0 : 1.0) * four * (four - 1.0) * bernoulli(2 * k).value() /
                   factorial(2 * k) * std::pow(x, 2 * k - 1);
        }
    }
    return ab * sum;
}

ExpansionCoefficients ellipse_beta_taylor(double a, double b, BilliardKind kind) {
    const double ab = a * b;
    ExpansionCoefficients out;
    if (kind == BilliardKind::Symplectic) {
        out.kind = ExpansionCoefficients::Kind::BetaSymplectic;
        for (int k = 0; k < 4; ++k) {
            const double c = (k % 2 == 0 ? -1.0 : 1.0) * std::pow(kTwoPi, 2 * k + 1) / factorial(2 * k + 1);
            out.values.emplace_back("beta" + std::to_string(2 * k + 1), ab * c);
        }
    } else {
        out.kind = ExpansionCoefficients::Kind::BetaOuter;
        out.values.emplace_back("beta1", 0.0);
        for (int k = 2; k <= 4; ++k) {
            const double four = std::pow(4.0, k);
            const double c = (k % 2 == 0 ? -1.0 : 1.0) * four * (four - 1.0) * bernoulli(2 * k).value() /
                             factorial(2 * k) * std::pow(kPi, 2 * k - 1);
            out.values.emplace_back("beta" + std::to_string(2 * k - 1), ab * c);
        }
    }
    return out;
}

TabReport tab_inequality(double lambda, double beta5, double beta7, BilliardKind kind) {
    const double l3 = lambda * lambda * lambda;
    TabReport r;
    if (kind == BilliardKind::Symplectic) {
        r.lhs = 42.0 * l3 * beta7;
        r.rhs = 120.0 * beta5 * beta5;
        r.gap = r.rhs - r.lhs;
    } else {
        r.lhs = 7.0 * l3 * beta7;
        r.rhs = 170.0 * beta5 * beta5;
        r.gap = r.lhs - r.rhs;
    }
    r.normalized_gap = r.gap / std::abs(r.rhs);
    return r;
}

TabReport tab_inequality(const AffineCurve& curve, BilliardKind kind, CoefficientSet set) {
    const auto beta = predict_beta_coeffs(curve, kind, set);
    return tab_inequality(curve.lambda(), beta.at("beta5"), beta.at("beta7"), kind);
}

}  // namespace billiards
