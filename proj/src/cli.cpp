#include "billiards/cli.hpp"

#include "billiards/billiard_maps.hpp"
#include "billiards/coeff_extraction.hpp"
#include "billiards/curve_io.hpp"
#include "billiards/errors.hpp"
#include "billiards/expansions.hpp"
#include "billiards/json_out.hpp"
#include "billiards/polygon_solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace billiards::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "billiards " BILLIARDS_VERSION;

int default_grid() {
    if (const char* env = std::getenv("BILLIARDS_GRID_SIZE")) {
        try {
            std::size_t used = 0;
            const int g = std::stoi(env, &used);
            if (used == std::string(env).size()) return g;
        } catch (const std::exception&) {
        }
        throw ValidationError(std::string("BILLIARDS_GRID_SIZE is not an integer: '") + env + "'");
    }
    return kDefaultGridSize;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string("malformed ") + what + " '" + text + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_list(text, what)) {
        if (v != std::floor(v)) throw ValidationError(std::string(what) + " must hold integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// "2=1e-8,4=1e-4"
std::map<int, double> parse_tolerances(const std::string& text) {
    std::map<int, double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("tolerances are ORDER=VALUE pairs");
        const auto order = parse_int_list(item.substr(0, eq), "tolerance order");
        const auto value = parse_list(item.substr(eq + 1), "tolerance");
        if (!(value[0] > 0.0)) throw ValidationError("tolerances must be positive");
        out[order[0]] = value[0];
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

CoefficientSet parse_set(const std::string& text) {
    if (text == "printed") return CoefficientSet::Printed;
    if (text == "rederived") return CoefficientSet::Rederived;
    throw ValidationError("coefficient set must be 'printed' or 'rederived'");
}

Json header(const std::string& command, const CurveSpec& spec) {
    Json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["curve"] = curve_to_json(spec);
    return j;
}

Json vec(const Vec2& v) { return Json::array({v.x(), v.y()}); }

Json coefficients_json(const ExpansionCoefficients& c) {
    Json j;
    for (const auto& [name, v] : c.values) j[name] = v;
    return j;
}

template <typename Map>
Json order_map(const Map& m) {
    Json j = Json::object();
    for (const auto& [p, v] : m) j[std::to_string(p)] = v;
    return j;
}

struct Common {
    std::string curve;
    int grid = 0;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--curve", c.curve, "curve file or preset (circle:R, ellipse:A,B, fourier:A0/C1,.../S1,...)")
        ->required();
    sub->add_option("--grid", c.grid, "affine grid size (default $BILLIARDS_GRID_SIZE or 2048)");
}

AffineCurve load(const Common& c, CurveSpec& spec) {
    spec = parse_curve(c.curve);
    return build_affine(spec, c.grid > 0 ? c.grid : default_grid());
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Best approximating polygons, symplectic and outer billiards, and beta-function coefficients"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    std::string kind_text;
    std::string set_text = "printed";

    auto* info = app.add_subcommand("curve-info", "affine length, curvature integrals and checks");
    add_common(info, common);

    std::string start_text;
    int steps = 20;
    auto* orbit = app.add_subcommand("orbit", "iterate a billiard map, CSV of states");
    add_common(orbit, common);
    orbit->add_option("--kind", kind_text, "symplectic | outer")->required();
    orbit->add_option("--start", start_text, "s0,s1 (symplectic) or px,py (outer)")->required();
    orbit->add_option("--steps", steps, "number of steps")->check(CLI::Range(1, 1000000));

    int n = 0;
    bool emit_vertices = false;
    auto* polygon = app.add_subcommand("polygon", "solve one best approximating polygon");
    add_common(polygon, common);
    polygon->add_option("--kind", kind_text, "inscribed | circumscribed")->required();
    polygon->add_option("--n", n, "number of vertices")->required();
    polygon->add_flag("--emit-vertices", emit_vertices, "include corner coordinates");
    SolverOptions solver;
    for (auto* sub : {polygon}) {
        sub->add_option("--max-iterations", solver.max_iterations, "Newton iteration cap")
            ->check(CLI::NonNegativeNumber);
    }

    std::string n_list_text;
    std::string format = "csv";
    auto* sweep = app.add_subcommand("deficit-sweep", "deficits over a list of n");
    add_common(sweep, common);
    sweep->add_option("--kind", kind_text, "inscribed | circumscribed")->required();
    sweep->add_option("--n-list", n_list_text, "comma separated n values")->required();
    sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--max-iterations", solver.max_iterations, "Newton iteration cap")
        ->check(CLI::NonNegativeNumber);

    std::string orders_text = "2,4,6,8";
    std::string tol_text;
    std::string csv_path;
    bool keep_resonant = false;
    auto* ext = app.add_subcommand("extract", "fit A2, A4, A6 from computed deficits");
    add_common(ext, common);
    ext->add_option("--kind", kind_text, "inscribed | circumscribed")->required();
    ext->add_option("--n-list", n_list_text, "comma separated n values (default 16,24,32,48,64,96,128)");
    ext->add_option("--orders", orders_text, "model powers of 1/n");
    ext->add_option("--tol", tol_text, "relative tolerances, e.g. 2=1e-8,4=1e-4,6=2e-2");
    ext->add_option("--coefficients", set_text, "printed | rederived");
    ext->add_option("--csv", csv_path, "also write n, delta, model residual to this file");
    ext->add_flag("--keep-resonant", keep_resonant, "do not move n divisible by the symmetry order");

    auto* beta = app.add_subcommand("beta", "predicted beta1..beta7");
    add_common(beta, common);
    beta->add_option("--kind", kind_text, "symplectic | outer")->required();
    beta->add_option("--coefficients", set_text, "printed | rederived");

    auto* tab = app.add_subcommand("verify-tab", "beta5 / beta7 inequality");
    add_common(tab, common);
    tab->add_option("--kind", kind_text, "symplectic | outer")->required();
    tab->add_option("--coefficients", set_text, "printed | rederived");

    auto* omega_cmd = app.add_subcommand("verify-omega", "affine jet identities at grid and 2x grid");
    add_common(omega_cmd, common);

    double r0 = 0.0;
    double delta0 = 0.4;
    int halvings = 4;
    auto* series = app.add_subcommand("verify-series", "chord and tangent area series against quadrature");
    add_common(series, common);
    series->add_option("--r", r0, "base affine parameter");
    series->add_option("--delta", delta0, "largest affine step")->check(CLI::PositiveNumber);
    series->add_option("--halvings", halvings, "number of step halvings")->check(CLI::Range(1, 12));
    std::string series_set = "rederived";
    series->add_option("--coefficients", series_set, "tangent series coefficients: printed | rederived");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        CurveSpec spec;
        if (*info) {
            const auto ac = load(common, spec);
            const auto conv = validate(spec);
            const auto k = ac.k_samples();
            auto j = header("curve-info", spec);
            j["description"] = describe(spec);
            j["grid_size"] = ac.grid_size();
            j["lambda"] = ac.lambda();
            j["I1"] = ac.I1();
            j["I2"] = ac.I2();
            j["k_min"] = *std::min_element(k.begin(), k.end());
            j["k_max"] = *std::max_element(k.begin(), k.end());
            j["area"] = enclosed_area(spec);
            j["convexity"] = {{"min_radius_factor", conv.min_radius_factor},
                              {"coefficient_bound", conv.coefficient_bound},
                              {"bound_satisfied", conv.bound_satisfied},
                              {"grid_samples", conv.grid_samples}};
            const auto rep = check_omega_relations(ac);
            Json dev;
            for (std::size_t i = 0; i < rep.deviation.size(); ++i) dev[OmegaReport::labels[i]] = rep.deviation[i];
            j["omega_relations"] = dev;
            j["jet_deviation"] = ac.jet_deviation();
            write_json(out, j);
        } else if (*orbit) {
            const auto bk = parse_billiard_kind(kind_text);
            const auto start = parse_list(start_text, "start");
            if (start.size() != 2) throw ValidationError("--start takes two numbers");
            out << "# " << kVersion << "\n";
            if (bk == BilliardKind::Symplectic) {
                const auto ac = load(common, spec);
                const auto states = symplectic_orbit(ac, {start[0], start[1]}, steps);
                const auto rot = rotation_number(ac, states);
                out << "# orbit symplectic curve=" << describe(spec) << " lambda=" << fmt(ac.lambda())
                    << " rotation_number=" << (rot.periodic ? std::to_string(rot.numerator) + "/" +
                                                                  std::to_string(rot.denominator)
                                                            : fmt(rot.value))
                    << "\nstep,s0,s1\n";
                for (std::size_t i = 0; i < states.size(); ++i) {
                    out << i << ',' << fmt(states[i].s0) << ',' << fmt(states[i].s1) << '\n';
                }
            } else {
                spec = parse_curve(common.curve);
                const auto states = outer_orbit(spec, {Vec2(start[0], start[1])}, steps);
                const auto rot = rotation_number(spec, states);
                out << "# orbit outer curve=" << describe(spec) << " rotation_number="
                    << (rot.periodic ? std::to_string(rot.numerator) + "/" + std::to_string(rot.denominator)
                                     : fmt(rot.value))
                    << "\nstep,px,py\n";
                for (std::size_t i = 0; i < states.size(); ++i) {
                    out << i << ',' << fmt(states[i].p.x()) << ',' << fmt(states[i].p.y()) << '\n';
                }
            }
        } else if (*polygon) {
            const auto ac = load(common, spec);
            const auto pk = parse_polygon_kind(kind_text);
            const auto cfg = solve_polygon(ac, pk, n, solver);
            const auto d = deficit(ac, cfg);
            auto j = header("polygon", spec);
            j["kind"] = std::string(to_string(pk));
            j["n"] = cfg.n;
            j["lambda"] = ac.lambda();
            j["params"] = cfg.params;
            j["spacing"] = cfg.spacing;
            j["residual_norm"] = cfg.residual_norm;
            j["hessian_extreme"] = cfg.hessian_extreme;
            j["iterations"] = cfg.iterations;
            j["delta"] = d.delta;
            j["accuracy_estimate"] = d.accuracy_estimate;
            j["beta"] = beta_from_deficit(ac, d);
            if (emit_vertices) {
                Json v = Json::array();
                for (const auto& p : cfg.vertices) v.push_back(vec(p));
                j["vertices"] = v;
            }
            write_json(out, j);
        } else if (*sweep) {
            const auto ac = load(common, spec);
            const auto pk = parse_polygon_kind(kind_text);
            auto ns = parse_int_list(n_list_text, "--n-list");
            std::sort(ns.begin(), ns.end());
            const auto s = deficit_sweep(ac, pk, ns, solver);
            if (format == "json") {
                auto j = header("deficit-sweep", spec);
                j["kind"] = std::string(to_string(pk));
                Json rows = Json::array();
                for (const auto& d : s.samples) {
                    rows.push_back({{"n", d.n}, {"delta", d.delta}, {"residual", d.residual},
                                    {"accuracy_estimate", d.accuracy_estimate}});
                }
                j["samples"] = rows;
                write_json(out, j);
            } else {
                out << "# " << kVersion << " deficit-sweep " << to_string(pk) << " curve=" << describe(spec)
                    << "\nn,delta,residual,accuracy_estimate\n";
                for (const auto& d : s.samples) {
                    out << d.n << ',' << fmt(d.delta) << ',' << fmt(d.residual) << ','
                        << fmt(d.accuracy_estimate) << '\n';
                }
            }
        } else if (*ext) {
            const auto ac = load(common, spec);
            const auto pk = parse_polygon_kind(kind_text);
            const auto set = parse_set(set_text);
            auto ns = n_list_text.empty() ? kDefaultNList : parse_int_list(n_list_text, "--n-list");
            std::sort(ns.begin(), ns.end());
            if (!keep_resonant) ns = resonance_free(ns, symmetry_order(spec));
            const auto orders = parse_int_list(orders_text, "--orders");
            const auto tolerances = parse_tolerances(tol_text);
            const auto s = deficit_sweep(ac, pk, ns, solver);
            const auto result = extract(s, orders);
            const auto predicted = predict_deficit_coeffs(ac, pk, set);
            check_tolerance_claims(result, predicted, tolerances);
            const auto cmp = compare(result, predicted, tolerances);

            auto j = header("extract", spec);
            j["kind"] = std::string(to_string(pk));
            j["coefficient_set"] = std::string(to_string(set));
            j["n_list"] = ns;
            j["model_orders"] = result.model_orders;
            j["coefficients"] = order_map(result.coefficients);
            j["uncertainties"] = order_map(result.uncertainties);
            j["budget"] = order_map(result.budget);
            j["condition_number"] = result.condition_number;
            j["residual"] = result.residual;
            j["max_accuracy"] = result.max_accuracy;
            j["under_resolved"] = result.under_resolved;
            j["model_assumption"] = "remainder beyond the highest order modeled as further powers of 1/n";
            j["predicted"] = coefficients_json(predicted);
            Json rows = Json::array();
            for (const auto& c : cmp.entries) {
                Json row{{"order", c.order},          {"predicted", c.predicted},
                         {"extracted", c.extracted},  {"uncertainty", c.uncertainty},
                         {"relative_error", c.relative_error}};
                if (c.tolerance > 0.0) {
                    row["tolerance"] = c.tolerance;
                    row["pass"] = c.pass;
                }
                rows.push_back(row);
            }
            j["comparison"] = rows;
            write_json(out, j);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw ValidationError("cannot write '" + csv_path + "'");
                csv << "# " << kVersion << " extract " << to_string(pk) << " curve=" << describe(spec)
                    << "\nn,delta,model_residual\n";
                for (std::size_t i = 0; i < s.samples.size(); ++i) {
                    csv << s.samples[i].n << ',' << fmt(s.samples[i].delta) << ',' << fmt(result.residuals[i])
                        << '\n';
                }
            }
        } else if (*beta) {
            const auto ac = load(common, spec);
            const auto bk = parse_billiard_kind(kind_text);
            const auto set = parse_set(set_text);
            auto j = header("beta", spec);
            j["kind"] = std::string(to_string(bk));
            j["coefficient_set"] = std::string(to_string(set));
            j["lambda"] = ac.lambda();
            j["I1"] = ac.I1();
            j["I2"] = ac.I2();
            for (const auto& [name, v] : predict_beta_coeffs(ac, bk, set).values) j[name] = v;
            write_json(out, j);
        } else if (*tab) {
            const auto ac = load(common, spec);
            const auto bk = parse_billiard_kind(kind_text);
            const auto set = parse_set(set_text);
            const auto r = tab_inequality(ac, bk, set);
            auto j = header("verify-tab", spec);
            j["kind"] = std::string(to_string(bk));
            j["coefficient_set"] = std::string(to_string(set));
            j["inequality"] = bk == BilliardKind::Symplectic ? "42 lambda^3 beta7 <= 5! beta5^2"
                                                             : "7 lambda^3 beta7 >= 170 beta5^2";
            j["lhs"] = r.lhs;
            j["rhs"] = r.rhs;
            j["gap"] = r.gap;
            j["normalized_gap"] = r.normalized_gap;
            j["status"] = std::abs(r.normalized_gap) <= 1e-10 ? "equality (ellipse)"
                          : r.gap > 0.0                       ? "strict inequality"
                                                              : "violated";
            write_json(out, j);
        } else if (*omega_cmd) {
            spec = parse_curve(common.curve);
            const int g = common.grid > 0 ? common.grid : default_grid();
            auto j = header("verify-omega", spec);
            Json runs = Json::array();
            for (int size : {g, 2 * g}) {
                const auto ac = build_affine(spec, size);
                const auto rep = check_omega_relations(ac);
                Json dev;
                for (std::size_t i = 0; i < rep.deviation.size(); ++i) dev[OmegaReport::labels[i]] = rep.deviation[i];
                runs.push_back({{"grid_size", size},
                                {"deviations", dev},
                                {"max", rep.max()},
                                {"frenet_deviation", frenet_deviation(ac)},
                                {"jet_deviation", ac.jet_deviation()}});
            }
            j["runs"] = runs;
            write_json(out, j);
        } else if (*series) {
            const auto ac = load(common, spec);
            const auto set = parse_set(series_set);
            auto j = header("verify-series", spec);
            j["r"] = r0;
            j["tangent_coefficients"] = std::string(to_string(set));
            Json rows = Json::array();
            const double tr = ac.theta_of_s(r0);
            double prev_f = 0.0;
            double prev_h = 0.0;
            for (int i = 0; i <= halvings; ++i) {
                const double d = delta0 / std::pow(2.0, i);
                const double ts = ac.theta_of_s(r0 + d);
                const double f_err = chord_area(spec, tr, ts) - chord_area_series(ac, r0, r0 + d);
                const double h_err = tangent_area(spec, tr, ts) - tangent_area_series(ac, r0, r0 + d, set);
                Json row{{"delta", d}, {"chord_error", f_err}, {"tangent_error", h_err}};
                if (i > 0) {
                    row["chord_ratio"] = prev_f / f_err;
                    row["tangent_ratio"] = prev_h / h_err;
                }
                prev_f = f_err;
                prev_h = h_err;
                rows.push_back(row);
            }
            j["steps"] = rows;
            write_json(out, j);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitOk;
}

}  // namespace billiards::cli
