// Acceptance suite: one PASS/FAIL line per criterion, supplementary lines
// indented. Exit status is 0 when the failing criteria are exactly the ones
// listed with --expect-fail (default: none).

#include "billiards/affine_geometry.hpp"
#include "billiards/coeff_extraction.hpp"
#include "billiards/errors.hpp"
#include "billiards/expansions.hpp"
#include "billiards/polygon_solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace billiards;

namespace {

// Tolerances.
constexpr double kC1Abs = 1e-12;
constexpr double kC1Seconds = 10.0;
constexpr double kC2Rel = 1e-10;
const std::map<int, double> kC3Tol{{2, 1e-8}, {4, 1e-4}, {6, 2e-2}};
constexpr double kC3Seconds = 300.0;
constexpr double kC4Max = 1e-7;
constexpr double kC4Gain = 10.0;
constexpr double kC5RatioLo = 64.0;
constexpr double kC5RatioHi = 1024.0;
// Smallest step 0.1: on the circle the remainder is D^9/(2 9!), which meets
// roundoff in the exact areas below D ~ 0.03.
constexpr double kC5Delta = 0.8;
constexpr int kC5Halvings = 3;
constexpr double kC6Ratio = 0.5;
constexpr double kC6Ellipse = 1e-10;
constexpr double kC7Equal = 1e-10;
constexpr double kC7Strict = 1e-6;
constexpr double kC8Sigmas = 10.0;

const CurveSpec kPerturbed = CurveSpec::support_fourier(1.0, {0.0, 0.0, 0.05});
const std::vector<std::pair<double, double>> kEllipses{{1.0, 1.0}, {2.0, 1.0}, {3.0, 0.5}};
const std::vector<int> kFullOrders{2, 4, 6, 8, 10, 12};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::map<int, bool> g_results;

void report(int id, bool pass, const std::string& text) {
    g_results[id] = pass;
    std::printf("CRITERION %d %s  %s\n", id, pass ? "PASS" : "FAIL", text.c_str());
}

void info(const std::string& text) { std::printf("    %s\n", text.c_str()); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Taylor coefficients of sin(w x) and tan(x) - x by their own recurrences.
std::vector<double> sin_taylor(double w, int order) {
    std::vector<double> c(order + 1, 0.0);
    double term = w;
    for (int k = 1; k <= order; k += 2) {
        c[k] = term;
        term *= -w * w / ((k + 1.0) * (k + 2.0));
    }
    return c;
}

std::vector<double> tan_taylor(int order) {
    // t' = 1 + t^2
    std::vector<double> t(order + 1, 0.0);
    for (int k = 0; k < order; ++k) {
        double sq = 0.0;
        for (int j = 0; j <= k; ++j) sq += t[j] * t[k - j];
        t[k + 1] = ((k == 0 ? 1.0 : 0.0) + sq) / (k + 1.0);
    }
    return t;
}

// ---------------------------------------------------------------------------

void criterion1() {
    const auto t0 = Clock::now();
    const auto circle = build_affine(CurveSpec::circle(1.0));
    double worst_in = 0.0, worst_out = 0.0;
    for (int n = 3; n <= 64; ++n) {
        const double in = deficit(circle, solve_inscribed(circle, n)).delta;
        const double out = deficit(circle, solve_circumscribed(circle, n)).delta;
        worst_in = std::max(worst_in, std::abs(in - (kPi - 0.5 * n * std::sin(kTwoPi / n))));
        worst_out = std::max(worst_out, std::abs(out - (n * std::tan(kPi / n) - kPi)));
    }
    const double secs = seconds_since(t0);
    report(1, worst_in <= kC1Abs && worst_out <= kC1Abs && secs <= kC1Seconds,
           fmt("circle closed forms n=3..64: max abs err inscribed %.2e, circumscribed %.2e (tol %.0e); %.2f s "
               "(limit %.0f s)",
               worst_in, worst_out, kC1Abs, secs, kC1Seconds));
}

void criterion2() {
    const auto sin_c = sin_taylor(kTwoPi, 7);
    const auto tan_c = tan_taylor(7);
    double worst = 0.0, worst_rederived = 0.0;
    for (auto [a, b] : kEllipses) {
        const auto curve = build_affine(CurveSpec::ellipse(a, b));
        const double ab = a * b;
        for (auto kind : {BilliardKind::Symplectic, BilliardKind::Outer}) {
            const auto pred = predict_beta_coeffs(curve, kind);
            const auto alt = predict_beta_coeffs(curve, kind, CoefficientSet::Rederived);
            for (int p : {1, 3, 5, 7}) {
                const double want =
                    kind == BilliardKind::Symplectic ? -ab * sin_c[p] : ab * (p == 1 ? 0.0 : tan_c[p] * std::pow(kPi, p));
                const double scale = std::abs(want) > 0.0 ? std::abs(want) : ab * kPi;
                worst = std::max(worst, std::abs(pred.order(p) - want) / scale);
                worst_rederived = std::max(worst_rederived, std::abs(alt.order(p) - want) / scale);
            }
        }
    }
    report(2, worst <= kC2Rel,
           fmt("ellipse beta1..beta7 vs sin/tan Taylor oracles, 3 presets x 2 kinds: max rel err %.2e (tol %.0e)",
               worst, kC2Rel));
    info(fmt("oracle values: symplectic beta7/ab = (2pi)^7/7! = %.12g, outer beta7/ab = 17 pi^7/315 = %.12g",
             -sin_c[7], tan_c[7] * std::pow(kPi, 7)));
    info(fmt("rederived coefficient set: max rel err %.2e", worst_rederived));
}

struct Sweeps {
    AffineCurve curve;
    std::vector<int> n_list;
    DeficitSeries inscribed;
    DeficitSeries circumscribed;
};

Sweeps run_sweeps() {
    Sweeps s{build_affine(kPerturbed), {}, {}, {}};
    const int m = symmetry_order(kPerturbed);
    for (int n = 16; n <= 128; ++n) {
        if (m < 2 || n % m != 0) s.n_list.push_back(n);
    }
    s.inscribed = deficit_sweep(s.curve, PolygonKind::Inscribed, s.n_list);
    s.circumscribed = deficit_sweep(s.curve, PolygonKind::Circumscribed, s.n_list);
    return s;
}

std::string describe(const ComparisonReport& rep) {
    std::string out;
    for (const auto& e : rep.entries) {
        out += fmt("A%d rel %.2e (tol %.0e) ", e.order, e.relative_error, e.tolerance);
    }
    return out;
}

void criterion3(const Sweeps& s, double sweep_seconds, ExtractionResult& outer_fit) {
    const auto t0 = Clock::now();
    const auto fit_in = extract(s.inscribed, kFullOrders);
    const auto fit_out = extract(s.circumscribed, kFullOrders);
    outer_fit = fit_out;
    const auto rep_in = compare(fit_in, predict_deficit_coeffs(s.curve, PolygonKind::Inscribed), kC3Tol);
    const auto rep_out = compare(fit_out, predict_deficit_coeffs(s.curve, PolygonKind::Circumscribed), kC3Tol);
    const double secs = sweep_seconds + seconds_since(t0);
    const bool pass = rep_in.all_pass() && rep_out.all_pass() && secs <= kC3Seconds;
    report(3, pass,
           fmt("h = 1 + 0.05 cos 3t, %zu non-resonant n in [16,128], orders 2..12; %.1f s (limit %.0f s)",
               s.n_list.size(), secs, kC3Seconds));
    info(std::string("(a) inscribed:     ") + (rep_in.all_pass() ? "PASS " : "FAIL ") + describe(rep_in));
    info(std::string("(b) circumscribed: ") + (rep_out.all_pass() ? "PASS " : "FAIL ") + describe(rep_out));
    const auto rep_alt = compare(fit_out, predict_deficit_coeffs(s.curve, PolygonKind::Circumscribed,
                                                                 CoefficientSet::Rederived),
                                 kC3Tol);
    info(std::string("(b) circumscribed vs rederived a6, b6: ") + (rep_alt.all_pass() ? "PASS " : "FAIL ") +
         describe(rep_alt));
    const auto short_in = compare(extract(s.inscribed, {2, 4, 6, 8}),
                                  predict_deficit_coeffs(s.curve, PolygonKind::Inscribed), kC3Tol);
    const auto short_out = compare(extract(s.circumscribed, {2, 4, 6, 8}),
                                   predict_deficit_coeffs(s.curve, PolygonKind::Circumscribed,
                                                          CoefficientSet::Rederived),
                                   kC3Tol);
    info("reference, orders 2,4,6,8 only: inscribed " + describe(short_in));
    info("reference, orders 2,4,6,8 only: circumscribed (rederived) " + describe(short_out));
}

void criterion4() {
    const auto c1 = build_affine(kPerturbed, 2048);
    const auto c2 = build_affine(kPerturbed, 4096);
    const auto r1 = check_omega_relations(c1);
    const auto r2 = check_omega_relations(c2);
    const double d1 = r1.max(), d2 = r2.max();
    const bool improves = d2 <= d1 / kC4Gain;
    report(4, d1 <= kC4Max && improves,
           fmt("six omega relations on h = 1 + 0.05 cos 3t: max dev %.2e at 2048 (tol %.0e) %s, %.2e at 4096, "
               "gain %.2fx (needs %.0fx) %s",
               d1, kC4Max, d1 <= kC4Max ? "PASS" : "FAIL", d2, d1 / d2, kC4Gain, improves ? "PASS" : "FAIL"));
    std::string per;
    for (std::size_t i = 0; i < r1.deviation.size(); ++i) {
        per += fmt("%s %.1e/%.1e  ", OmegaReport::labels[i], r1.deviation[i], r2.deviation[i]);
    }
    info(per);
    const auto coarse = check_omega_relations(build_affine(kPerturbed, 64)).max();
    const auto finer = check_omega_relations(build_affine(kPerturbed, 128)).max();
    info(fmt("coarse grids: max dev %.2e at 64, %.2e at 128 (gain %.1fx)", coarse, finer, coarse / finer));
    const auto mid = check_omega_relations(build_affine(kPerturbed, 1024)).max();
    info(fmt("max dev %.2e at 1024: discretization error is below the roundoff floor of the spectral k'' from "
             "about 1024 nodes on, so no further gain is available",
             mid));
}

std::vector<double> halving_ratios(const AffineCurve& curve, double r, bool tangent, CoefficientSet set) {
    std::vector<double> rem;
    for (int j = 0; j <= kC5Halvings; ++j) {
        const double d = std::ldexp(kC5Delta, -j);
        const double a = curve.theta_of_s(r), b = curve.theta_of_s(r + d);
        const double exact = tangent ? tangent_area(curve.spec(), a, b) : chord_area(curve.spec(), a, b);
        const double series = tangent ? tangent_area_series(curve, r, r + d, set) : chord_area_series(curve, r, r + d);
        rem.push_back(std::abs(exact - series));
    }
    std::vector<double> ratios;
    for (std::size_t j = 1; j < rem.size(); ++j) ratios.push_back(rem[j - 1] / rem[j]);
    return ratios;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (double x : v) out += fmt("%.0f ", x);
    return out;
}

void criterion5() {
    bool pass = true;
    std::vector<std::string> lines;
    for (const auto& [name, spec] : {std::pair{"circle", CurveSpec::circle(1.0)}, std::pair{"perturbed", kPerturbed}}) {
        const auto curve = build_affine(spec);
        for (bool tangent : {false, true}) {
            const auto ratios = halving_ratios(curve, 0.3, tangent, CoefficientSet::Rederived);
            for (double q : ratios) pass = pass && q >= kC5RatioLo && q <= kC5RatioHi;
            lines.push_back(fmt("%s %s: ratios %s", name, tangent ? "H" : "F", join(ratios).c_str()));
        }
    }
    report(5, pass, fmt("series remainder halving ratios at r = 0.3, delta = %.1f/2^j (j <= %d), all in [%.0f, %.0f]",
                        kC5Delta, kC5Halvings, kC5RatioLo, kC5RatioHi));
    for (const auto& l : lines) info(l);
    const auto printed = halving_ratios(build_affine(kPerturbed), 0.3, true, CoefficientSet::Printed);
    info("perturbed H with the printed k', k'' coefficients: ratios " + join(printed));
}

double spacing_error(const AffineCurve& curve, PolygonKind kind, int n, CoefficientSet set) {
    const auto cfg = solve_polygon(curve, kind, n);
    const auto pred = predicted_spacing(curve, kind, n, cfg.params[0], set);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(cfg.spacing[i] - pred[i]));
    return worst;
}

void criterion6() {
    const auto curve = build_affine(kPerturbed);
    auto scaled = [&](PolygonKind kind, int n, CoefficientSet set) {
        return std::pow(n, 3) * spacing_error(curve, kind, n, set);
    };
    const double in32 = scaled(PolygonKind::Inscribed, 32, CoefficientSet::Printed);
    const double in128 = scaled(PolygonKind::Inscribed, 128, CoefficientSet::Printed);
    const double out32 = scaled(PolygonKind::Circumscribed, 32, CoefficientSet::Printed);
    const double out128 = scaled(PolygonKind::Circumscribed, 128, CoefficientSet::Printed);
    double ell = 0.0;
    for (auto [a, b] : kEllipses) {
        const auto e = build_affine(CurveSpec::ellipse(a, b));
        for (auto kind : {PolygonKind::Inscribed, PolygonKind::Circumscribed}) {
            for (int n : {7, 16, 64}) {
                const auto cfg = solve_polygon(e, kind, n);
                for (double d : cfg.spacing) ell = std::max(ell, std::abs(d - e.lambda() / n));
            }
        }
    }
    const bool in_ok = in128 <= kC6Ratio * in32;
    const bool out_ok = out128 <= kC6Ratio * out32;
    const bool ell_ok = ell <= kC6Ellipse;
    report(6, in_ok && out_ok && ell_ok,
           fmt("spacing laws: n^3 err ratio 128/32 must be <= %.1f; ellipses max |gap - lambda/n| %.2e (tol %.0e)",
               kC6Ratio, ell, kC6Ellipse));
    info(fmt("inscribed, coefficient 1/30:       n^3 err %.3g (n=32) -> %.3g (n=128), ratio %.3f %s", in32, in128,
             in128 / in32, in_ok ? "PASS" : "FAIL"));
    info(fmt("circumscribed, coefficient +8/5!:  n^3 err %.3g (n=32) -> %.3g (n=128), ratio %.3f %s", out32, out128,
             out128 / out32, out_ok ? "PASS" : "FAIL"));
    const double alt32 = scaled(PolygonKind::Circumscribed, 32, CoefficientSet::Rederived);
    const double alt128 = scaled(PolygonKind::Circumscribed, 128, CoefficientSet::Rederived);
    info(fmt("circumscribed, coefficient -8/5!:  n^3 err %.3g (n=32) -> %.3g (n=128), ratio %.3f %s", alt32, alt128,
             alt128 / alt32, alt128 <= kC6Ratio * alt32 ? "PASS" : "FAIL"));
}

void criterion7(const AffineCurve& perturbed, const ExtractionResult& outer_fit) {
    double worst_equal = 0.0;
    for (auto [a, b] : kEllipses) {
        const auto e = build_affine(CurveSpec::ellipse(a, b));
        for (auto kind : {BilliardKind::Symplectic, BilliardKind::Outer}) {
            worst_equal = std::max(worst_equal, std::abs(tab_inequality(e, kind).normalized_gap));
        }
    }
    const auto sym = tab_inequality(perturbed, BilliardKind::Symplectic);
    const auto out = tab_inequality(perturbed, BilliardKind::Outer);
    report(7, worst_equal <= kC7Equal && sym.normalized_gap > kC7Strict && out.normalized_gap > kC7Strict,
           fmt("TAB: ellipses max |normalized gap| %.2e (tol %.0e); perturbed normalized gap symplectic %.3e, "
               "outer %.3e (must be > %.0e)",
               worst_equal, kC7Equal, sym.normalized_gap, out.normalized_gap, kC7Strict));
    const auto alt = tab_inequality(perturbed, BilliardKind::Outer, CoefficientSet::Rederived);
    info(fmt("outer with rederived beta7: normalized gap %.3e", alt.normalized_gap));
    const auto ext = tab_inequality(perturbed.lambda(), outer_fit.coefficients.at(4), outer_fit.coefficients.at(6),
                                    BilliardKind::Outer);
    info(fmt("outer from extracted A4, A6 (beta5 = A4, beta7 = A6): normalized gap %.3e", ext.normalized_gap));
}

void criterion8(const Sweeps& s) {
    const std::vector<int> orders{2, 3, 4, 5, 6, 8, 10, 12};
    bool pass = true;
    for (const auto* series : {&s.inscribed, &s.circumscribed}) {
        const auto fit = extract(*series, orders);
        std::string line = std::string(to_string(series->kind)) + " delta(n):";
        for (int p : {3, 5}) {
            const double z = std::abs(fit.coefficients.at(p)) / fit.uncertainties.at(p);
            pass = pass && z <= kC8Sigmas;
            line += fmt(" C%d = %.3e +- %.1e (%.2f sigma)", p, fit.coefficients.at(p), fit.uncertainties.at(p), z);
        }
        info(line);

        // Same data as beta(1/n); even powers of 1/n must vanish there.
        std::vector<int> n;
        std::vector<double> beta, acc;
        const double area = enclosed_area(s.curve.spec());
        for (const auto& smp : series->samples) {
            n.push_back(smp.n);
            beta.push_back(beta_from_deficit(area, smp));
            acc.push_back(smp.accuracy_estimate * (series->kind == PolygonKind::Inscribed ? 2.0 : 1.0) / smp.n);
        }
        std::vector<int> beta_orders{1, 2, 3, 4, 5, 6, 7, 9, 11, 13};
        if (series->kind == PolygonKind::Circumscribed) beta_orders.erase(beta_orders.begin());
        const auto bfit = fit_inverse_powers(n, beta, acc, beta_orders, 7.0);
        std::string bline = std::string(to_string(billiard_kind(series->kind))) + " beta(1/n):";
        for (int p : {4, 6}) {
            const double z = std::abs(bfit.coefficients.at(p)) / bfit.uncertainties.at(p);
            pass = pass && z <= kC8Sigmas;
            bline += fmt(" rho^%d coeff = %.3e +- %.1e (%.2f sigma)", p, bfit.coefficients.at(p),
                         bfit.uncertainties.at(p), z);
        }
        info(bline);
    }
    report(8, pass, fmt("odd powers of 1/n absent from delta(n) (even from beta): all within %.0f sigma", kC8Sigmas));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "criteria documented as failing")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    std::printf("billiards %s acceptance suite\n", BILLIARDS_VERSION);
    try {
        criterion1();
        criterion2();
        const auto t0 = Clock::now();
        const auto sweeps = run_sweeps();
        const double sweep_seconds = seconds_since(t0);
        ExtractionResult outer_fit;
        criterion3(sweeps, sweep_seconds, outer_fit);
        criterion4();
        criterion5();
        criterion6();
        criterion7(sweeps.curve, outer_fit);
        criterion8(sweeps);
    } catch (const std::exception& e) {
        std::printf("ABORTED: %s\n", e.what());
        return 1;
    }

    std::set<int> failed;
    for (const auto& [id, ok] : g_results) {
        if (!ok) failed.insert(id);
    }
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    int passed = static_cast<int>(g_results.size() - failed.size());
    std::printf("SUMMARY %d/%zu criteria pass", passed, g_results.size());
    if (!failed.empty()) {
        std::printf("; failing:");
        for (int id : failed) std::printf(" %d", id);
    }
    std::printf("\n");
    if (failed != expected) {
        std::printf("UNEXPECTED: failing set differs from --expect-fail\n");
        return 1;
    }
    return 0;
}
