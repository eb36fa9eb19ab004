#include "billiards/billiard_maps.hpp"

#include "billiards/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace billiards {

namespace {

// Root of f on [lo, hi] where f(lo) and f(hi) have opposite signs. Newton
// steps that leave the bracket are replaced by bisection.
template <typename F>
double bracketed_newton(F&& f, double lo, double hi, double tol) {
    auto [flo, dlo] = f(lo);
    auto [fhi, dhi] = f(hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw PhaseSpaceError("root is not bracketed");
    const bool rising = fhi > 0.0;
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const auto [fx, dx] = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == rising) hi = x;
        else lo = x;
        double next = x - fx / dx;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= tol || hi - lo <= tol) return next;
        x = next;
    }
    return x;
}

Vec2 interior_point(const CurveSpec& spec) {
    constexpr int kSamples = 64;
    Vec2 c = Vec2::Zero();
    for (int j = 0; j < kSamples; ++j) c += curve_derivatives(spec, kTwoPi * j / kSamples, 0)[0];
    return c / kSamples;
}

}  // namespace

double parallel_tangent(const AffineCurve& curve, double s) {
    return wrap(curve.s_of_theta(curve.theta_of_s(s) + kPi), curve.lambda());
}

bool in_phase_space(const AffineCurve& curve, const ChordState& st) {
    const double t0 = curve.theta_of_s(st.s0);
    const double gap = wrap(curve.theta_of_s(st.s1) - t0, kTwoPi);
    return gap > 0.0 && gap < kPi;
}

ChordState symplectic_step(const AffineCurve& curve, const ChordState& st) {
    const double lambda = curve.lambda();
    if (!(st.s0 >= 0.0 && st.s0 < lambda && st.s1 >= 0.0 && st.s1 < lambda)) {
        throw PhaseSpaceError("chord parameters must lie in [0, lambda)");
    }
    if (!in_phase_space(curve, st)) {
        throw PhaseSpaceError("s1 must lie strictly between s0 and its parallel-tangent point");
    }
    const auto& spec = curve.spec();
    const double t0 = curve.theta_of_s(st.s0);
    double t1 = curve.theta_of_s(st.s1);
    if (t1 <= t0) t1 += kTwoPi;
    const Vec2 x0 = curve_derivatives(spec, t0, 0)[0];
    const Vec2 tangent = curve_derivatives(spec, t1, 1)[1];

    // g decreases from g(t1) > 0 to g(t1 + pi) < 0.
    auto g = [&](double t) {
        const auto d = curve_derivatives(spec, t, 1);
        return std::pair{omega(d[0] - x0, tangent), omega(d[1], tangent)};
    };
    const double t2 = bracketed_newton(g, t1, t1 + kPi, 1e-15);
    const double residual = std::abs(g(t2).first) / curve.speed(t1);
    if (residual > 1e-13 * lambda * lambda) {
        throw SolverError("symplectic step residual " + std::to_string(residual));
    }
    return {st.s1, wrap(curve.s_of_theta(t2), lambda)};
}

double outer_tangency(const CurveSpec& spec, const Vec2& p) {
    // g(t) = omega(x(t) - p, x'(t)) is positive everywhere iff p is inside.
    // Its two zeros are the tangency points; g' = omega(x - p, x'').
    auto g = [&](double t) {
        const auto d = curve_derivatives(spec, t, 2);
        return std::pair{omega(d[0] - p, d[1]), omega(d[0] - p, d[2])};
    };
    const int samples = std::max(256, 16 * spec.harmonic_degree());
    std::vector<double> values(samples);
    for (int j = 0; j < samples; ++j) values[j] = g(kTwoPi * j / samples).first;

    auto find = [&]() -> std::optional<double> {
        for (int j = 0; j < samples; ++j) {
            const double a = kTwoPi * j / samples;
            const double b = kTwoPi * (j + 1) / samples;
            const double ga = values[j];
            const double gb = values[(j + 1) % samples];
            // The root we want is where g turns from positive to negative
            // going clockwise, i.e. from negative to positive in t.
            if (ga < 0.0 && gb >= 0.0) return bracketed_newton(g, a, b, 1e-15);
        }
        return std::nullopt;
    };
    auto root = find();
    if (!root) {
        // Both tangency points may fall between two samples when p is close
        // to the curve; look near the smallest sample for a negative dip.
        const auto j = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
        double lo = kTwoPi * (j - 1) / samples;
        double hi = kTwoPi * (j + 1) / samples;
        for (int iter = 0; iter < 100; ++iter) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (g(m1).first < g(m2).first) hi = m2;
            else lo = m1;
        }
        const double tmin = 0.5 * (lo + hi);
        if (!(g(tmin).first < 0.0)) throw PhaseSpaceError("point is inside or on the curve");
        root = bracketed_newton(g, tmin, kTwoPi * (j + 1) / samples, 1e-15);
    }
    const auto d = curve_derivatives(spec, *root, 1);
    const double scale = (d[0] - p).norm() * d[1].norm();
    if (std::abs(omega(d[0] - p, d[1])) > 1e-13 * scale) {
        throw SolverError("outer tangency residual too large");
    }
    return wrap(*root, kTwoPi);
}

OuterState outer_step(const CurveSpec& spec, const OuterState& st) {
    const double t = outer_tangency(spec, st.p);
    const Vec2 x = curve_derivatives(spec, t, 0)[0];
    return {2.0 * x - st.p};
}

std::vector<ChordState> symplectic_orbit(const AffineCurve& curve, ChordState start, int steps) {
    std::vector<ChordState> orbit{start};
    orbit.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i < steps; ++i) orbit.push_back(symplectic_step(curve, orbit.back()));
    return orbit;
}

std::vector<OuterState> outer_orbit(const CurveSpec& spec, OuterState start, int steps) {
    std::vector<OuterState> orbit{start};
    orbit.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i < steps; ++i) orbit.push_back(outer_step(spec, orbit.back()));
    return orbit;
}

namespace {

// increments[i] in units of full turns, each in (0, 1).
RotationEstimate from_increments(const std::vector<double>& increments,
                                 const std::vector<bool>& returns) {
    RotationEstimate est;
    if (increments.empty()) throw ValidationError("orbit needs at least two states");
    const double total = std::accumulate(increments.begin(), increments.end(), 0.0);
    est.value = total / static_cast<double>(increments.size());
    // Smallest period q with at least two full periods in the orbit.
    const std::size_t steps = increments.size();
    for (std::size_t q = 1; 2 * q <= steps; ++q) {
        if (!returns[q] || !returns[2 * q]) continue;
        const double winding = std::accumulate(increments.begin(), increments.begin() + static_cast<long>(q), 0.0);
        const auto p = static_cast<std::int64_t>(std::llround(winding));
        const auto g = std::gcd(p, static_cast<std::int64_t>(q));
        est.periodic = true;
        est.numerator = p / (g == 0 ? 1 : g);
        est.denominator = static_cast<std::int64_t>(q) / (g == 0 ? 1 : g);
        est.value = static_cast<double>(p) / static_cast<double>(q);
        break;
    }
    return est;
}

double cyclic_distance(double a, double b, double period) {
    const double d = wrap(a - b, period);
    return std::min(d, period - d);
}

}  // namespace

RotationEstimate rotation_number(const AffineCurve& curve, std::span<const ChordState> orbit, double tol) {
    const double lambda = curve.lambda();
    std::vector<double> inc;
    std::vector<bool> returns{true};
    for (std::size_t i = 1; i < orbit.size(); ++i) {
        inc.push_back(wrap(orbit[i].s1 - orbit[i].s0, lambda) / lambda);
        returns.push_back(cyclic_distance(orbit[i].s0, orbit[0].s0, lambda) <= tol * lambda &&
                          cyclic_distance(orbit[i].s1, orbit[0].s1, lambda) <= tol * lambda);
    }
    return from_increments(inc, returns);
}

RotationEstimate rotation_number(const CurveSpec& spec, std::span<const OuterState> orbit, double tol) {
    const Vec2 c = interior_point(spec);
    double size = 0.0;
    for (const auto& st : orbit) size = std::max(size, (st.p - c).norm());
    std::vector<double> inc;
    std::vector<bool> returns{true};
    for (std::size_t i = 1; i < orbit.size(); ++i) {
        const Vec2 u = orbit[i - 1].p - c;
        const Vec2 v = orbit[i].p - c;
        inc.push_back(wrap(std::atan2(omega(u, v), u.dot(v)), kTwoPi) / kTwoPi);
        returns.push_back((orbit[i].p - orbit[0].p).norm() <= tol * size);
    }
    return from_increments(inc, returns);
}

}  // namespace billiards
