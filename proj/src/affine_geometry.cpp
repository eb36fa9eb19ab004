#include "billiards/affine_geometry.hpp"

#include "billiards/errors.hpp"
#include "billiards/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace billiards {

AffineDerivs affine_derivatives_at_theta(const CurveSpec& spec, double theta) {
    // x(theta + u) to order 7; x'' needs one order more than the s-jet.
    const auto d = curve_derivatives(spec, theta, 7);
    TaylorVec2<7> x;
    double factorial = 1.0;
    for (int j = 0; j <= 7; ++j) {
        if (j > 0) factorial *= j;
        x.set(j, d[j] / factorial);
    }
    const auto x1 = x.derivative();
    const auto x2 = x1.derivative();
    const Taylor<5> area_rate = omega(x1.truncate<5>(), x2);
    if (!(area_rate[0] > 0.0)) {
        throw ConvexityError("omega(x', x'') <= 0 at theta = " + std::to_string(theta));
    }
    const Taylor<6> arc = area_rate.pow(1.0 / 3.0).integral();
    const Taylor<6> inverse = arc.revert();
    const auto xs = x.truncate<6>().compose(inverse);

    AffineDerivs out;
    factorial = 1.0;
    for (int j = 0; j <= 6; ++j) {
        if (j > 0) factorial *= j;
        out[j] = xs.coefficient(j) * factorial;
    }
    return out;
}

double AffineCurve::s_of_theta(double theta) const { return speed_series_.integral(theta); }

double AffineCurve::speed(double theta) const {
    const auto d = curve_derivatives(spec_, theta, 2);
    return std::cbrt(omega(d[1], d[2]));
}

double AffineCurve::theta_of_s(double s) const {
    const double turns = std::floor(s / lambda_);
    const double target = s - turns * lambda_;
    // s_of_theta is increasing on [0, 2 pi] from 0 to lambda: safeguarded Newton.
    double lo = 0.0;
    double hi = kTwoPi;
    double theta = kTwoPi * target / lambda_;
    const double tol = 1e-15 * lambda_;
    for (int iter = 0; iter < 100; ++iter) {
        const double f = s_of_theta(theta) - target;
        if (std::abs(f) <= tol) return theta + kTwoPi * turns;
        if (f > 0.0) hi = theta; else lo = theta;
        double next = theta - f / speed(theta);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) break;
        theta = next;
    }
    const double residual = std::abs(s_of_theta(theta) - target);
    if (residual > 1e-13 * lambda_) {
        std::ostringstream msg;
        msg << "affine arc length inversion failed at s = " << s << " (residual " << residual << ")";
        throw SolverError(msg.str());
    }
    return theta + kTwoPi * turns;
}

Vec2 AffineCurve::point(double s) const {
    return curve_derivatives(spec_, theta_of_s(s), 0)[0];
}

AffinePoint AffineCurve::jet_at(double s) const {
    AffinePoint p;
    p.s = s;
    p.theta = theta_of_s(s);
    p.d = affine_derivatives_at_theta(spec_, p.theta);
    return p;
}

AffineCurve build_affine(const CurveSpec& spec, int grid_size, double tol_jet) {
    if (grid_size < 64 || grid_size % 2 != 0) {
        throw ValidationError("grid_size must be even and at least 64");
    }
    validate(spec);

    AffineCurve curve;
    curve.spec_ = spec;
    curve.tol_jet_ = tol_jet;

    std::vector<double> speed(grid_size);
    for (int j = 0; j < grid_size; ++j) speed[j] = curve.speed(kTwoPi * j / grid_size);
    curve.speed_series_ = PeriodicSeries(speed, kTwoPi);
    curve.lambda_ = kTwoPi * curve.speed_series_.mean();

    const double ds = curve.lambda_ / grid_size;
    curve.s_grid_.resize(grid_size);
    curve.theta_grid_.resize(grid_size);
    curve.jets_.resize(grid_size);
    curve.k_.resize(grid_size);
    double deviation = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        const double s = ds * j;
        const double theta = curve.theta_of_s(s);
        const auto d = affine_derivatives_at_theta(spec, theta);
        curve.s_grid_[j] = s;
        curve.theta_grid_[j] = theta;
        curve.jets_[j] = d;
        curve.k_[j] = omega(d[2], d[3]);
        deviation = std::max({deviation, std::abs(omega(d[1], d[2]) - 1.0), std::abs(omega(d[1], d[3]))});
    }
    curve.jet_deviation_ = deviation;
    if (deviation > tol_jet) {
        std::ostringstream msg;
        msg << "affine jet normalization off by " << deviation << " (tolerance " << tol_jet << ")";
        throw SolverError(msg.str());
    }

    curve.k_series_ = PeriodicSeries(curve.k_, curve.lambda_);
    curve.k1_ = curve.k_series_.derivative_samples(1);
    curve.k2_ = curve.k_series_.derivative_samples(2);

    double sum_k = 0.0;
    double sum_k2 = 0.0;
    for (double k : curve.k_) {
        sum_k += k;
        sum_k2 += k * k;
    }
    curve.I1_ = sum_k * ds;
    curve.I2_ = sum_k2 * ds;
    return curve;
}

CurvatureIntegrals curvature_integrals(const AffineCurve& curve) { return {curve.I1(), curve.I2()}; }

double OmegaReport::max() const { return *std::max_element(deviation.begin(), deviation.end()); }

OmegaReport check_omega_relations(const AffineCurve& curve) {
    OmegaReport report;
    const auto jets = curve.jets();
    const auto k = curve.k_samples();
    const auto k1 = curve.k1_samples();
    const auto k2 = curve.k2_samples();
    for (std::size_t j = 0; j < jets.size(); ++j) {
        const auto& x = jets[j];
        const double kk = k[j] * k[j];
        const std::array<double, 6> dev{
            std::abs(omega(x[1], x[4]) + k[j]),
            std::abs(omega(x[2], x[4]) - k1[j]),
            std::abs(omega(x[1], x[5]) + 2.0 * k1[j]),
            std::abs(omega(x[3], x[4]) - kk),
            std::abs(omega(x[2], x[5]) - (k2[j] - kk)),
            std::abs(omega(x[1], x[6]) + 3.0 * k2[j] - kk),
        };
        for (int i = 0; i < 6; ++i) report.deviation[i] = std::max(report.deviation[i], dev[i]);
    }
    return report;
}

double frenet_deviation(const AffineCurve& curve) {
    double worst = 0.0;
    const auto jets = curve.jets();
    const auto k = curve.k_samples();
    for (std::size_t j = 0; j < jets.size(); ++j) {
        worst = std::max(worst, (jets[j][3] + k[j] * jets[j][1]).norm());
    }
    return worst;
}

}  // namespace billiards
