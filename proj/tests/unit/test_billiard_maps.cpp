#include <doctest.h>

#include "billiards/affine_geometry.hpp"
#include "billiards/billiard_maps.hpp"
#include "billiards/errors.hpp"
#include "billiards/polygon_solvers.hpp"

#include <cmath>

using namespace billiards;

namespace {

const CurveSpec kPerturbed = CurveSpec::support_fourier(1.0, {0.0, 0.0, 0.05});

double circ_dist(double a, double b, double period) {
    const double d = wrap(a - b, period);
    return std::min(d, period - d);
}

}  // namespace

TEST_CASE("symplectic step on the circle reflects the angle") {
    const auto circle = build_affine(CurveSpec::circle(1.0));
    const auto next = symplectic_step(circle, {0.2, 1.1});
    CHECK(next.s0 == doctest::Approx(1.1));
    CHECK(circ_dist(next.s1, 2.0, kTwoPi) < 1e-12);
    CHECK(parallel_tangent(circle, 0.5) == doctest::Approx(0.5 + kPi).epsilon(1e-12));
}

TEST_CASE("symplectic steps are equivariant under affine maps") {
    const auto circle = build_affine(CurveSpec::circle(1.0));
    const auto ell = build_affine(CurveSpec::ellipse(2.0, 1.0));
    const double scale = std::cbrt(2.0);
    CHECK(ell.lambda() == doctest::Approx(scale * kTwoPi).epsilon(1e-13));
    const auto a = symplectic_step(circle, {0.4, 1.5});
    const auto b = symplectic_step(ell, {scale * 0.4, scale * 1.5});
    CHECK(circ_dist(b.s1, scale * a.s1, ell.lambda()) < 1e-10);
}

TEST_CASE("outer step examples") {
    const auto circle = CurveSpec::circle(1.0);
    const auto q = outer_step(circle, {Vec2(2.0, 0.0)}).p;
    CHECK(q.x() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(q.y() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(q.norm() == doctest::Approx(2.0).epsilon(1e-13));

    const auto p = Vec2(1.3, -0.9);
    const auto r = outer_step(kPerturbed, {p}).p;
    const double t = outer_tangency(kPerturbed, p);
    const Vec2 mid = 0.5 * (p + r);
    CHECK((mid - evaluate_jet(kPerturbed, t, 0).derivs[0]).norm() < 1e-12);
    // The line p -> r is tangent at the midpoint.
    CHECK(std::abs(omega(r - p, evaluate_jet(kPerturbed, t, 1).derivs[1])) < 1e-11);
}

TEST_CASE("outer step commutes with unimodular maps") {
    Mat2 m;
    m << 1.2, 0.7, 0.1, 0.9;
    m /= std::sqrt(m.determinant());
    const auto image = kPerturbed.transformed(m);
    const Vec2 p(0.4, 1.7);
    const Vec2 a = m * outer_step(kPerturbed, {p}).p;
    const Vec2 b = outer_step(image, {m * p}).p;
    CHECK((a - b).norm() < 1e-11);
}

TEST_CASE("extremal polygons are periodic orbits") {
    const auto curve = build_affine(kPerturbed);
    const int n = 9;

    const auto in = solve_inscribed(curve, n);
    ChordState st{in.params[0], in.params[1]};
    for (int i = 0; i < n; ++i) {
        st = symplectic_step(curve, st);
        CHECK(circ_dist(st.s1, in.params[(i + 2) % n], curve.lambda()) < 1e-9);
    }

    const auto out = solve_circumscribed(curve, n);
    const auto orbit = outer_orbit(curve.spec(), {out.vertices[0]}, 2 * n);
    REQUIRE(orbit.size() == 2 * n + 1);
    CHECK((orbit[n].p - out.vertices[0]).norm() < 1e-9);
    const auto rot = rotation_number(curve.spec(), orbit);
    CHECK(rot.periodic);
    CHECK(rot.denominator == n);
}

TEST_CASE("rotation numbers") {
    const auto circle = build_affine(CurveSpec::circle(1.0));
    const double step = kTwoPi / 7;
    const auto orbit = symplectic_orbit(circle, {0.0, step}, 14);
    const auto rot = rotation_number(circle, orbit);
    CHECK(rot.periodic);
    CHECK(rot.numerator == 1);
    CHECK(rot.denominator == 7);
    CHECK(rot.value == doctest::Approx(1.0 / 7.0));

    // Irrational step: no period detected.
    const auto loose = symplectic_orbit(circle, {0.0, 1.0}, 50);
    const auto est = rotation_number(circle, loose);
    CHECK_FALSE(est.periodic);
    CHECK(est.value == doctest::Approx(1.0 / kTwoPi).epsilon(1e-3));
}

TEST_CASE("phase space violations") {
    const auto curve = build_affine(kPerturbed);
    CHECK_FALSE(in_phase_space(curve, {0.5, 0.5}));
    CHECK(in_phase_space(curve, {0.5, 1.0}));
    CHECK_THROWS_AS(symplectic_step(curve, {0.5, 0.5}), PhaseSpaceError);
    CHECK_THROWS_AS(outer_step(kPerturbed, {Vec2(0.1, 0.0)}), PhaseSpaceError);
    CHECK_THROWS_AS(outer_tangency(kPerturbed, Vec2(0.0, 0.0)), PhaseSpaceError);
}
