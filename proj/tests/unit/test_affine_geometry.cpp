#include <doctest.h>

#include "billiards/affine_geometry.hpp"
#include "billiards/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace billiards;

namespace {

const CurveSpec kPerturbed = CurveSpec::support_fourier(1.0, {0.0, 0.0, 0.05});

}  // namespace

TEST_CASE("circle has affine length 2 pi and unit curvature") {
    const auto ac = build_affine(CurveSpec::circle(1.0), 256);
    CHECK(ac.lambda() == doctest::Approx(kTwoPi).epsilon(1e-14));
    for (double k : ac.k_samples()) CHECK(std::abs(k - 1.0) < 1e-12);
    CHECK(ac.I1() == doctest::Approx(kTwoPi).epsilon(1e-13));
    CHECK(ac.I2() == doctest::Approx(kTwoPi).epsilon(1e-13));
}

TEST_CASE("ellipse affine length and curvature") {
    for (auto [a, b] : {std::pair{2.0, 0.5}, std::pair{2.0, 1.0}, std::pair{3.0, 0.5}}) {
        const auto ac = build_affine(CurveSpec::ellipse(a, b), 256);
        const double ab = a * b;
        CHECK(ac.lambda() == doctest::Approx(kTwoPi * std::cbrt(ab)).epsilon(1e-13));
        for (double k : ac.k_samples()) CHECK(std::abs(k - std::pow(ab, -2.0 / 3.0)) < 1e-11);
        const auto ci = curvature_integrals(ac);
        CHECK(ci.I1 == doctest::Approx(kTwoPi / std::cbrt(ab)).epsilon(1e-12));
        CHECK(ci.I2 == doctest::Approx(kTwoPi / ab).epsilon(1e-12));
    }
}

TEST_CASE("affine jets are unimodular") {
    const auto ac = build_affine(kPerturbed, 512);
    for (const auto& d : ac.jets()) {
        CHECK(std::abs(omega(d[1], d[2]) - 1.0) < 1e-12);
        CHECK(std::abs(omega(d[1], d[3])) < 1e-12);
    }
    CHECK(ac.jet_deviation() < 1e-12);
    CHECK(frenet_deviation(ac) < 1e-11);
}

TEST_CASE("Cauchy-Schwarz for the curvature integrals") {
    const auto ac = build_affine(kPerturbed, 512);
    CHECK(ac.I2() * ac.lambda() - ac.I1() * ac.I1() > 1e-6);
    const auto el = build_affine(CurveSpec::ellipse(2.0, 1.0), 256);
    CHECK(std::abs(el.I2() * el.lambda() - el.I1() * el.I1()) < 1e-10);
}

TEST_CASE("omega relations") {
    CHECK(check_omega_relations(build_affine(CurveSpec::circle(1.0), 256)).max() < 1e-9);
    CHECK(check_omega_relations(build_affine(CurveSpec::ellipse(2.0, 1.0), 256)).max() < 1e-9);
    const auto r = check_omega_relations(build_affine(kPerturbed, 2048));
    CHECK(r.max() < 1e-7);
}

TEST_CASE("omega relations converge under grid refinement") {
    // Coarse grids, where the spectral error dominates roundoff.
    const auto coarse = check_omega_relations(build_affine(kPerturbed, 64)).max();
    const auto fine = check_omega_relations(build_affine(kPerturbed, 128)).max();
    CHECK(fine * 10.0 <= coarse);
}

TEST_CASE("theta and s maps are mutually inverse") {
    const auto ac = build_affine(kPerturbed, 256);
    for (double s : {0.0, 0.3, 1.7, 4.0, ac.lambda() - 1e-9, ac.lambda() + 0.5, -0.25}) {
        CHECK(ac.s_of_theta(ac.theta_of_s(s)) == doctest::Approx(s).epsilon(1e-13));
    }
    CHECK(ac.s_of_theta(kTwoPi) == doctest::Approx(ac.lambda()).epsilon(1e-14));
}

TEST_CASE("equivariance under linear maps") {
    const auto base = build_affine(kPerturbed, 256);
    Mat2 m;
    m << 1.3, 0.4, -0.2, 0.7;
    const double det = m.determinant();
    const auto mapped = build_affine(kPerturbed.transformed(m), 256);
    CHECK(mapped.lambda() == doctest::Approx(base.lambda() * std::cbrt(det)).epsilon(1e-12));
    auto k0 = std::vector<double>(base.k_samples().begin(), base.k_samples().end());
    auto k1 = std::vector<double>(mapped.k_samples().begin(), mapped.k_samples().end());
    // The grid starts at theta = 0 for both, and a linear map preserves the
    // parameter, so the samples correspond one to one.
    for (std::size_t i = 0; i < k0.size(); ++i) {
        CHECK(std::abs(k1[i] - k0[i] * std::pow(det, -2.0 / 3.0)) < 1e-9);
    }
    Mat2 unimodular;
    unimodular << 2.0, 1.0, 1.0, 1.0;
    const auto u = build_affine(kPerturbed.transformed(unimodular), 256);
    CHECK(u.lambda() == doctest::Approx(base.lambda()).epsilon(1e-12));
    CHECK(u.I2() == doctest::Approx(base.I2()).epsilon(1e-10));
}

TEST_CASE("grid size validation") {
    CHECK_THROWS_AS(build_affine(CurveSpec::circle(1.0), 63), ValidationError);
    CHECK_THROWS_AS(build_affine(CurveSpec::circle(1.0), 32), ValidationError);
}
