#include "billiards/polygon_solvers.hpp"

#include "billiards/errors.hpp"
#include "billiards/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace billiards {

std::string_view to_string(PolygonKind kind) {
    return kind == PolygonKind::Inscribed ? "inscribed" : "circumscribed";
}

PolygonKind parse_polygon_kind(std::string_view text) {
    if (text == "inscribed" || text == "symplectic") return PolygonKind::Inscribed;
    if (text == "circumscribed" || text == "outer") return PolygonKind::Circumscribed;
    throw ValidationError("unknown polygon kind '" + std::string(text) + "'");
}

namespace {

constexpr double kSvdThreshold = 1e-10;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// x, x', x'' at each theta.
struct Frame {
    std::vector<Vec2> x, d1, d2;
    std::vector<double> sigma;  // ds/dtheta

    Frame(const CurveSpec& spec, const Eigen::VectorXd& theta) {
        const auto n = static_cast<std::size_t>(theta.size());
        x.resize(n);
        d1.resize(n);
        d2.resize(n);
        sigma.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto d = curve_derivatives(spec, theta[static_cast<Eigen::Index>(i)], 2);
            x[i] = d[0];
            d1[i] = d[1];
            d2[i] = d[2];
            sigma[i] = std::cbrt(omega(d[1], d[2]));
        }
    }
};

struct System {
    Eigen::VectorXd r;  // residual in theta units
    Eigen::MatrixXd jac;
    double scaled_max = 0.0;  // max residual in affine units
};

// Position along the tangent line at i of its intersection with the tangent
// line at j, in multiples of x'_i, with derivatives in theta_j and theta_i.
struct Intercept {
    double value, d_j, d_i;
};

Intercept intercept(const Frame& f, std::size_t j, std::size_t i) {
    const Vec2 chord = f.x[j] - f.x[i];
    const double num = omega(f.d1[j], chord);
    const double den = omega(f.d1[j], f.d1[i]);
    const double v = num / den;
    const double dnum_j = omega(f.d2[j], chord);
    const double dden_j = omega(f.d2[j], f.d1[i]);
    const double dnum_i = -den;
    const double dden_i = omega(f.d1[j], f.d2[i]);
    return {v, (dnum_j - v * dden_j) / den, (dnum_i - v * dden_i) / den};
}

System inscribed_system(const Frame& f) {
    const auto n = f.x.size();
    System sys{Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        const Vec2 chord = f.x[next] - f.x[prev];
        const auto ii = static_cast<Eigen::Index>(i);
        sys.r[ii] = omega(chord, f.d1[i]);
        sys.jac(ii, static_cast<Eigen::Index>(next)) += omega(f.d1[next], f.d1[i]);
        sys.jac(ii, static_cast<Eigen::Index>(prev)) -= omega(f.d1[prev], f.d1[i]);
        sys.jac(ii, ii) += omega(chord, f.d2[i]);
        sys.scaled_max = std::max(sys.scaled_max, std::abs(sys.r[ii] / f.sigma[i]));
    }
    return sys;
}

System circumscribed_system(const Frame& f) {
    const auto n = f.x.size();
    System sys{Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        const auto a = intercept(f, prev, i);
        const auto b = intercept(f, next, i);
        const auto ii = static_cast<Eigen::Index>(i);
        sys.r[ii] = a.value + b.value;
        sys.jac(ii, static_cast<Eigen::Index>(prev)) += a.d_j;
        sys.jac(ii, static_cast<Eigen::Index>(next)) += b.d_j;
        sys.jac(ii, ii) += a.d_i + b.d_i;
        sys.scaled_max = std::max(sys.scaled_max, std::abs(sys.r[ii] * f.sigma[i]));
    }
    return sys;
}

System build_system(PolygonKind kind, const Frame& f) {
    return kind == PolygonKind::Inscribed ? inscribed_system(f) : circumscribed_system(f);
}

bool ordered(const Eigen::VectorXd& theta) {
    const auto n = theta.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (!(theta[i + 1] > theta[i])) return false;
    }
    return theta[n - 1] < theta[0] + kTwoPi;
}

struct Trial {
    Eigen::VectorXd theta;
    System sys;
    int iterations = 0;
    bool converged = false;
};

Trial newton(const AffineCurve& curve, PolygonKind kind, Eigen::VectorXd theta,
             const SolverOptions& opts) {
    const double scale = kind == PolygonKind::Inscribed ? curve.lambda() * curve.lambda()
                                                        : curve.lambda();
    const double target = opts.tolerance * scale;
    Trial t{theta, build_system(kind, Frame(curve.spec(), theta)), 0, false};
    int polish = 0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        t.iterations = iter;
        const double merit = t.sys.r.norm();
        if (t.sys.scaled_max <= target) {
            // A couple of extra steps push the residual to the roundoff floor.
            if (!t.converged) polish = 2;
            t.converged = true;
            if (polish-- == 0) return t;
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(t.sys.jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(kSvdThreshold);
        Eigen::VectorXd step = svd.solve(-t.sys.r);

        bool accepted = false;
        // Once converged only full steps are tried.
        const double min_alpha = t.converged ? 0.75 : 1e-6;
        auto attempt = [&](const Eigen::VectorXd& dir) {
            for (double alpha = 1.0; alpha > min_alpha; alpha *= 0.5) {
                Eigen::VectorXd cand = t.theta + alpha * dir;
                if (!ordered(cand)) continue;
                auto sys = build_system(kind, Frame(curve.spec(), cand));
                if (sys.r.norm() < (1.0 - 1e-4 * alpha) * merit) {
                    t.theta = std::move(cand);
                    t.sys = std::move(sys);
                    return true;
                }
            }
            return false;
        };
        accepted = attempt(step);
        if (!accepted && t.converged) break;
        // Levenberg fallback: shorten the step along the gradient direction.
        if (!accepted) {
            const Eigen::MatrixXd jtj = t.sys.jac.transpose() * t.sys.jac;
            const Eigen::VectorXd g = t.sys.jac.transpose() * t.sys.r;
            const double base = jtj.diagonal().maxCoeff();
            for (double mu = 1e-8; mu <= 1e4 && !accepted; mu *= 100.0) {
                Eigen::MatrixXd damped = jtj;
                damped.diagonal().array() += mu * base;
                accepted = attempt(damped.ldlt().solve(-g));
            }
        }
        if (!accepted) break;  // stagnated, usually at the roundoff floor
    }
    t.converged = t.sys.scaled_max <= target;
    return t;
}

Eigen::MatrixXd hessian_in_s(PolygonKind kind, const Frame& f, const System& sys) {
    const auto n = static_cast<Eigen::Index>(f.x.size());
    Eigen::MatrixXd h(n, n);
    if (kind == PolygonKind::Inscribed) {
        // Area gradient in theta is -r/2.
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                h(i, j) = -0.5 * sys.jac(i, j) / (f.sigma[i] * f.sigma[j]);
    } else {
        // Area gradient in theta is -omega(x', x'') (beta^2 - alpha^2) / 2.
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const auto a = intercept(f, (ui + f.x.size() - 1) % f.x.size(), ui).value;
            const auto b = intercept(f, (ui + 1) % f.x.size(), ui).value;
            const double w = f.sigma[ui] * f.sigma[ui] * (b - a);
            for (Eigen::Index j = 0; j < n; ++j)
                h(i, j) = -0.5 * w * sys.jac(i, j) / f.sigma[static_cast<std::size_t>(j)];
        }
    }
    return 0.5 * (h + h.transpose());
}

PolygonConfig assemble(const AffineCurve& curve, PolygonKind kind, const Trial& t,
                       double hessian_extreme) {
    const auto n = static_cast<std::size_t>(t.theta.size());
    const double lambda = curve.lambda();
    const Frame f(curve.spec(), t.theta);

    struct Entry {
        double s, theta;
        Vec2 vertex;
    };
    std::vector<Entry> entries(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = t.theta[static_cast<Eigen::Index>(i)];
        Vec2 v = f.x[i];
        if (kind == PolygonKind::Circumscribed) {
            v = f.x[i] + intercept(f, (i + 1) % n, i).value * f.d1[i];
        }
        entries[i] = {wrap(curve.s_of_theta(th), lambda), wrap(th, kTwoPi), v};
    }
    std::rotate(entries.begin(),
                std::min_element(entries.begin(), entries.end(),
                                 [](const Entry& a, const Entry& b) { return a.s < b.s; }),
                entries.end());

    PolygonConfig cfg;
    cfg.kind = kind;
    cfg.n = static_cast<int>(n);
    for (const auto& e : entries) {
        cfg.params.push_back(e.s);
        cfg.thetas.push_back(e.theta);
        cfg.vertices.push_back(e.vertex);
    }
    cfg.spacing.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cfg.spacing[i] = i == 0 ? cfg.params[0] + lambda - cfg.params[n - 1]
                                : cfg.params[i] - cfg.params[i - 1];
    }
    cfg.residual_norm = t.sys.scaled_max;
    cfg.hessian_extreme = hessian_extreme;
    cfg.iterations = t.iterations;
    return cfg;
}

PolygonConfig solve(const AffineCurve& curve, PolygonKind kind, int n, const SolverOptions& opts) {
    if (n < 3) throw ValidationError("polygons need at least 3 vertices, got " + std::to_string(n));
    const double lambda = curve.lambda();
    const double h_tol = opts.hessian_tolerance * lambda * lambda;

    // Start from uniform affine spacing at two phases half a step apart; on
    // curves with symmetry one of them may sit on a saddle.
    std::optional<PolygonConfig> best;
    double best_delta = 0.0;
    std::string failure;
    for (double phase : {0.0, 0.5}) {
        Eigen::VectorXd theta(n);
        for (int i = 0; i < n; ++i) theta[i] = curve.theta_of_s((i + phase) * lambda / n);
        const Trial t = newton(curve, kind, theta, opts);
        if (!t.converged) {
            failure = "Newton did not converge (residual " + std::to_string(t.sys.scaled_max) + ")";
            continue;
        }
        const Frame f(curve.spec(), t.theta);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian_in_s(kind, f, t.sys),
                                                           Eigen::EigenvaluesOnly);
        const double extreme = kind == PolygonKind::Inscribed ? eig.eigenvalues().maxCoeff()
                                                              : eig.eigenvalues().minCoeff();
        const bool extremal = kind == PolygonKind::Inscribed ? extreme <= h_tol : extreme >= -h_tol;
        if (!extremal) {
            failure = "critical point is not a local area " +
                      std::string(kind == PolygonKind::Inscribed ? "maximum" : "minimum");
            continue;
        }
        auto cfg = assemble(curve, kind, t, extreme);
        const auto d = deficit(curve, cfg);
        if (!best || d.delta < best_delta - 4.0 * d.accuracy_estimate) {
            best = std::move(cfg);
            best_delta = d.delta;
        }
    }
    if (!best) {
        throw SolverError(std::string(to_string(kind)) + " " + std::to_string(n) + "-gon: " + failure);
    }
    return *best;
}

int rule_points(const CurveSpec& spec, double span) {
    const int degree = spec.harmonic_degree();
    return std::clamp(20 + static_cast<int>(std::ceil(2.0 * degree * span)), 20, 240);
}

// Triangle spanned by the chord from r to s and the two tangent lines.
double tangent_triangle(const CurveSpec& spec, double theta_r, double theta_s) {
    const auto r = curve_derivatives(spec, theta_r, 1);
    const auto s = curve_derivatives(spec, theta_s, 1);
    const Vec2 chord = s[0] - r[0];
    return 0.5 * omega(s[1], chord) * omega(r[1], -chord) / omega(r[1], s[1]);
}

}  // namespace

double chord_area(const CurveSpec& spec, double theta_r, double theta_s, int points) {
    const Vec2 base = curve_derivatives(spec, theta_r, 0)[0];
    return 0.5 * integrate(gauss_legendre(points), theta_r, theta_s, [&](double t) {
               const auto d = curve_derivatives(spec, t, 1);
               return omega(d[0] - base, d[1]);
           });
}

double tangent_area(const CurveSpec& spec, double theta_r, double theta_s, int points) {
    return tangent_triangle(spec, theta_r, theta_s) - chord_area(spec, theta_r, theta_s, points);
}

PolygonConfig solve_inscribed(const AffineCurve& curve, int n, const SolverOptions& opts) {
    return solve(curve, PolygonKind::Inscribed, n, opts);
}

PolygonConfig solve_circumscribed(const AffineCurve& curve, int n, const SolverOptions& opts) {
    return solve(curve, PolygonKind::Circumscribed, n, opts);
}

PolygonConfig solve_polygon(const AffineCurve& curve, PolygonKind kind, int n,
                            const SolverOptions& opts) {
    return solve(curve, kind, n, opts);
}

DeficitSample deficit(const AffineCurve& curve, const PolygonConfig& cfg) {
    const auto& spec = curve.spec();
    const auto n = cfg.thetas.size();
    double total = 0.0;
    double quad_error = 0.0;
    double magnitude = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = cfg.thetas[i];
        double b = cfg.thetas[(i + 1) % n];
        if (b <= a) b += kTwoPi;
        const int m = rule_points(spec, b - a);
        const double coarse = chord_area(spec, a, b, m);
        const double fine = chord_area(spec, a, b, m + 16);
        double piece = fine;
        if (cfg.kind == PolygonKind::Circumscribed) {
            const double tri = tangent_triangle(spec, a, b);
            piece = tri - fine;
            magnitude += std::abs(tri);
        }
        magnitude += std::abs(fine);
        quad_error += std::abs(fine - coarse);
        total += piece;
    }
    DeficitSample out;
    out.n = cfg.n;
    out.kind = cfg.kind;
    out.delta = total;
    out.accuracy_estimate = quad_error + 8.0 * kEps * magnitude;
    out.residual = cfg.residual_norm;
    return out;
}

double shoelace_deficit(const AffineCurve& curve, const PolygonConfig& cfg) {
    const double area = polygon_area(cfg.vertices);
    const double inside = enclosed_area(curve.spec());
    return cfg.kind == PolygonKind::Circumscribed ? area - inside : inside - area;
}

std::vector<std::pair<double, double>> spacing_profile(const PolygonConfig& cfg) {
    std::vector<std::pair<double, double>> out;
    out.reserve(cfg.params.size());
    for (std::size_t i = 0; i < cfg.params.size(); ++i) out.emplace_back(cfg.params[i], cfg.spacing[i]);
    return out;
}

}  // namespace billiards
