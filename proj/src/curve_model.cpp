#include "billiards/curve_model.hpp"

#include "billiards/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace billiards {

namespace {

// d^l/dt^l cos(u) and sin(u) expressed through cos(u), sin(u).
double cos_derivative(int l, double c, double s) {
    switch (l & 3) {
        case 0: return c;
        case 1: return -s;
        case 2: return -c;
        default: return s;
    }
}

double sin_derivative(int l, double c, double s) {
    switch (l & 3) {
        case 0: return s;
        case 1: return c;
        case 2: return -s;
        default: return -c;
    }
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ValidationError(std::string("non-finite ") + what);
}

}  // namespace

CurveSpec CurveSpec::ellipse(double a, double b) {
    CurveSpec spec;
    spec.kind = CurveKind::Ellipse;
    spec.a = a;
    spec.b = b;
    return spec;
}

CurveSpec CurveSpec::circle(double radius) { return ellipse(radius, radius); }

CurveSpec CurveSpec::support_fourier(double a0, std::vector<double> cos_coeffs,
                                     std::vector<double> sin_coeffs) {
    CurveSpec spec;
    spec.kind = CurveKind::SupportFourier;
    spec.a0 = a0;
    spec.cos_coeffs = std::move(cos_coeffs);
    spec.sin_coeffs = std::move(sin_coeffs);
    return spec;
}

CurveSpec CurveSpec::transformed(const Mat2& m) const {
    CurveSpec out = *this;
    out.transform = m * transform;
    return out;
}

int CurveSpec::harmonic_degree() const {
    if (kind == CurveKind::Ellipse) return 1;
    const auto m = std::max(cos_coeffs.size(), sin_coeffs.size());
    return static_cast<int>(m) + 1;
}

ConvexityReport validate(const CurveSpec& spec) {
    for (int i = 0; i < 4; ++i) require_finite(spec.transform(i / 2, i % 2), "transform entry");
    if (!(spec.transform.determinant() > 0.0)) {
        throw ValidationError("curve transform must have positive determinant");
    }

    ConvexityReport report;
    report.grid_samples = kConvexityGrid;
    if (spec.kind == CurveKind::Ellipse) {
        require_finite(spec.a, "semi-axis a");
        require_finite(spec.b, "semi-axis b");
        if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
            throw ValidationError("ellipse semi-axes must be positive");
        }
        report.min_radius_factor = std::min(spec.a, spec.b);
        report.coefficient_bound = report.min_radius_factor;
        report.bound_satisfied = true;
        return report;
    }

    require_finite(spec.a0, "a0");
    double bound = spec.a0;
    const auto harmonics = std::max(spec.cos_coeffs.size(), spec.sin_coeffs.size());
    for (std::size_t i = 0; i < harmonics; ++i) {
        const double c = i < spec.cos_coeffs.size() ? spec.cos_coeffs[i] : 0.0;
        const double s = i < spec.sin_coeffs.size() ? spec.sin_coeffs[i] : 0.0;
        require_finite(c, "cos coefficient");
        require_finite(s, "sin coefficient");
        const double m = static_cast<double>(i + 1);
        bound -= (m * m + 1.0) * std::hypot(c, s);
    }
    report.coefficient_bound = bound;
    report.bound_satisfied = bound > 0.0;

    double min_rho = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kConvexityGrid; ++j) {
        const double t = kTwoPi * j / kConvexityGrid;
        const auto h = support_derivatives(spec, t, 2);
        min_rho = std::min(min_rho, h[0] + h[2]);
    }
    report.min_radius_factor = min_rho;
    if (!(min_rho > 0.0)) {
        std::ostringstream msg;
        msg << "support function violates h + h'' > 0 (min " << min_rho << ")";
        throw ConvexityError(msg.str());
    }
    return report;
}

std::vector<double> support_derivatives(const CurveSpec& spec, double t, int order) {
    std::vector<double> h(order + 1, 0.0);
    h[0] = spec.a0;
    const auto harmonics = std::max(spec.cos_coeffs.size(), spec.sin_coeffs.size());
    for (std::size_t i = 0; i < harmonics; ++i) {
        const double c = i < spec.cos_coeffs.size() ? spec.cos_coeffs[i] : 0.0;
        const double s = i < spec.sin_coeffs.size() ? spec.sin_coeffs[i] : 0.0;
        if (c == 0.0 && s == 0.0) continue;
        const double m = static_cast<double>(i + 1);
        const double cm = std::cos(m * t);
        const double sm = std::sin(m * t);
        double mp = 1.0;
        for (int l = 0; l <= order; ++l) {
            h[l] += mp * (c * cos_derivative(l, cm, sm) + s * sin_derivative(l, cm, sm));
            mp *= m;
        }
    }
    return h;
}

std::vector<Vec2> curve_derivatives(const CurveSpec& spec, double t, int order) {
    if (order < 0) throw ValidationError("negative derivative order");
    std::vector<Vec2> out(order + 1);
    const double ct = std::cos(t);
    const double st = std::sin(t);
    if (spec.kind == CurveKind::Ellipse) {
        for (int j = 0; j <= order; ++j) {
            out[j] = {spec.a * cos_derivative(j, ct, st), spec.b * sin_derivative(j, ct, st)};
        }
    } else {
        // x = (h + i h') e^{it}; Leibniz on the product.
        const auto h = support_derivatives(spec, t, order + 1);
        const std::complex<double> e(ct, st);
        const std::complex<double> I(0.0, 1.0);
        std::vector<std::complex<double>> ipow(order + 1);
        ipow[0] = 1.0;
        for (int j = 1; j <= order; ++j) ipow[j] = ipow[j - 1] * I;
        for (int j = 0; j <= order; ++j) {
            std::complex<double> acc = 0.0;
            double binom = 1.0;
            for (int l = 0; l <= j; ++l) {
                acc += binom * std::complex<double>(h[l], h[l + 1]) * ipow[j - l];
                binom = binom * (j - l) / (l + 1);
            }
            acc *= e;
            out[j] = {acc.real(), acc.imag()};
        }
    }
    if (!spec.transform.isIdentity(0.0)) {
        for (auto& v : out) v = spec.transform * v;
    }
    return out;
}

Jet evaluate_jet(const CurveSpec& spec, double t, int order) {
    if (order > kMaxJetOrder) {
        throw UnsupportedOrderError("jet order " + std::to_string(order) + " exceeds " +
                                    std::to_string(kMaxJetOrder));
    }
    Jet jet;
    jet.order = order;
    jet.derivs = curve_derivatives(spec, t, order);
    return jet;
}

double ordinary_curvature(const CurveSpec& spec, double t) {
    const auto d = curve_derivatives(spec, t, 2);
    const double speed = d[1].norm();
    const double kappa = omega(d[1], d[2]) / (speed * speed * speed);
    if (!(kappa > 0.0)) {
        throw ConvexityError("non-positive curvature at t = " + std::to_string(t));
    }
    return kappa;
}

double enclosed_area(const CurveSpec& spec, int nodes) {
    if (nodes < 3) throw ValidationError("enclosed_area needs at least 3 nodes");
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const auto d = curve_derivatives(spec, kTwoPi * j / nodes, 1);
        acc += omega(d[0], d[1]);
    }
    return 0.5 * acc * kTwoPi / nodes;
}

double enclosed_area(const CurveSpec& spec) {
    // omega(x, x') has harmonics up to 2 * degree; this node count integrates it exactly.
    return enclosed_area(spec, std::max(256, 4 * (spec.harmonic_degree() + 2)));
}

std::string describe(const CurveSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    if (spec.kind == CurveKind::Ellipse) {
        os << "ellipse(a=" << spec.a << ", b=" << spec.b << ")";
    } else {
        os << "support_fourier(a0=" << spec.a0 << ", cos=[";
        for (std::size_t i = 0; i < spec.cos_coeffs.size(); ++i) os << (i ? "," : "") << spec.cos_coeffs[i];
        os << "], sin=[";
        for (std::size_t i = 0; i < spec.sin_coeffs.size(); ++i) os << (i ? "," : "") << spec.sin_coeffs[i];
        os << "])";
    }
    if (!spec.transform.isIdentity(0.0)) {
        os << " * [[" << spec.transform(0, 0) << "," << spec.transform(0, 1) << "],["
           << spec.transform(1, 0) << "," << spec.transform(1, 1) << "]]";
    }
    return os.str();
}

}  // namespace billiards
