#include "billiards/coeff_extraction.hpp"

#include "billiards/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace billiards {

void validate(const DeficitSeries& series) {
    for (std::size_t i = 1; i < series.samples.size(); ++i) {
        const auto& a = series.samples[i - 1];
        const auto& b = series.samples[i];
        if (!(b.n > a.n)) throw ValidationError("deficit series: n must be strictly increasing");
        if (!(b.delta < a.delta)) {
            throw ValidationError("deficit series: delta must decrease (n = " + std::to_string(b.n) + ")");
        }
    }
}

int symmetry_order(const CurveSpec& spec) {
    if (spec.kind == CurveKind::Ellipse) return 0;
    int g = 0;
    const std::size_t count = std::max(spec.cos_coeffs.size(), spec.sin_coeffs.size());
    for (std::size_t i = 1; i < count; ++i) {
        const double c = i < spec.cos_coeffs.size() ? spec.cos_coeffs[i] : 0.0;
        const double s = i < spec.sin_coeffs.size() ? spec.sin_coeffs[i] : 0.0;
        if (c != 0.0 || s != 0.0) g = std::gcd(g, static_cast<int>(i + 1));
    }
    return g;
}

std::vector<int> resonance_free(const std::vector<int>& n_list, int symmetry) {
    if (symmetry < 2) return n_list;
    std::vector<int> out;
    for (int n : n_list) {
        if (n % symmetry != 0) out.push_back(n);
        else if ((n + 1) % symmetry != 0) out.push_back(n + 1);
        else out.push_back(n - 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DeficitSeries deficit_sweep(const AffineCurve& curve, PolygonKind kind, const std::vector<int>& n_list,
                            const SolverOptions& opts) {
    DeficitSeries series;
    series.kind = kind;
    series.curve_id = describe(curve.spec());
    series.samples.resize(n_list.size());

    const auto workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (pending.size() >= workers) {
            pending.front().get();
            pending.erase(pending.begin());
        }
        pending.push_back(std::async(std::launch::async, [&, i] {
            series.samples[i] = deficit(curve, solve_polygon(curve, kind, n_list[i], opts));
        }));
    }
    for (auto& f : pending) f.get();
    return series;
}

ExtractionResult fit_inverse_powers(const std::vector<int>& n, const std::vector<double>& values,
                                    const std::vector<double>& accuracy, const std::vector<int>& orders,
                                    double row_weight_power) {
    const auto rows = static_cast<Eigen::Index>(n.size());
    const auto cols = static_cast<Eigen::Index>(orders.size());
    if (cols == 0) throw ValidationError("no model orders given");
    if (rows < cols) {
        throw ValidationError("rank deficient fit: " + std::to_string(rows) + " samples for " +
                              std::to_string(cols) + " orders");
    }
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd y(rows);
    Eigen::VectorXd w(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double ni = n[static_cast<std::size_t>(i)];
        w[i] = std::pow(ni, row_weight_power);
        y[i] = w[i] * values[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = w[i] * std::pow(ni, -orders[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd scale = a.colwise().norm().transpose();
    const Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    ExtractionResult r;
    r.model_orders = orders;
    r.condition_number = sv[cols - 1] > 0.0 ? sv[0] / sv[cols - 1] : std::numeric_limits<double>::infinity();
    if (!(r.condition_number <= kMaxConditionNumber)) {
        throw ValidationError("fit is ill-conditioned (condition number " + std::to_string(r.condition_number) + ")");
    }
    const Eigen::VectorXd cs = svd.solve(y);
    const Eigen::VectorXd coef = cs.cwiseQuotient(scale);

    // Covariance of the scaled solution is s^2 V S^-2 V^T.
    const Eigen::VectorXd fitted = as * cs;
    const Eigen::VectorXd wres = y - fitted;
    const double dof = static_cast<double>(rows - cols);
    double acc_var = 0.0;
    double max_weighted_acc = 0.0;
    r.max_accuracy = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double acc = accuracy.empty() ? 0.0 : accuracy[static_cast<std::size_t>(i)];
        acc_var += std::pow(w[i] * acc, 2);
        r.max_accuracy = std::max(r.max_accuracy, acc);
        max_weighted_acc = std::max(max_weighted_acc, w[i] * acc);
    }
    acc_var /= static_cast<double>(rows);
    const double res_var = dof > 0 ? wres.squaredNorm() / dof : 0.0;
    const double s2 = std::max(res_var, acc_var);
    const Eigen::MatrixXd v = svd.matrixV();
    const Eigen::VectorXd inv_s2 = sv.cwiseAbs2().cwiseInverse();
    const int max_n = *std::max_element(n.begin(), n.end());
    for (Eigen::Index j = 0; j < cols; ++j) {
        const int p = orders[static_cast<std::size_t>(j)];
        const double var = s2 * (v.row(j).cwiseAbs2().dot(inv_s2.transpose())) / (scale[j] * scale[j]);
        r.coefficients[p] = coef[j];
        r.uncertainties[p] = std::sqrt(var);
        r.budget[p] = r.max_accuracy * std::pow(static_cast<double>(max_n), p);
    }
    r.residuals.resize(n.size());
    for (Eigen::Index i = 0; i < rows; ++i) {
        r.residuals[static_cast<std::size_t>(i)] = wres[i] / w[i];
        r.residual = std::max(r.residual, std::abs(wres[i] / w[i]));
    }
    // Judged in the weighted metric the fit minimizes: the small-n rows carry
    // little weight and may legitimately absorb more than their own roundoff.
    r.under_resolved = wres.cwiseAbs().maxCoeff() > 10.0 * max_weighted_acc;
    return r;
}

ExtractionResult extract(const DeficitSeries& series, const std::vector<int>& orders) {
    validate(series);
    std::vector<int> n;
    std::vector<double> d, acc;
    for (const auto& s : series.samples) {
        n.push_back(s.n);
        d.push_back(s.delta);
        acc.push_back(s.accuracy_estimate);
    }
    return fit_inverse_powers(n, d, acc, orders);
}

bool ComparisonReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CoefficientComparison& e) { return e.tolerance <= 0.0 || e.pass; });
}

ComparisonReport compare(const ExtractionResult& result, const ExpansionCoefficients& predicted,
                         const std::map<int, double>& tolerances) {
    ComparisonReport report;
    for (int p : {2, 4, 6}) {
        const auto it = result.coefficients.find(p);
        if (it == result.coefficients.end()) continue;
        CoefficientComparison c;
        c.order = p;
        c.predicted = predicted.order(p);
        c.extracted = it->second;
        c.uncertainty = result.uncertainties.at(p);
        c.relative_error = (c.extracted - c.predicted) / std::abs(c.predicted);
        if (auto t = tolerances.find(p); t != tolerances.end()) {
            c.tolerance = t->second;
            c.pass = std::abs(c.relative_error) <= c.tolerance;
        }
        report.entries.push_back(c);
    }
    return report;
}

void check_tolerance_claims(const ExtractionResult& result, const ExpansionCoefficients& predicted,
                            const std::map<int, double>& tolerances) {
    for (const auto& [p, tol] : tolerances) {
        if (!(tol > 0.0)) throw ValidationError("tolerances must be positive");
        const auto it = result.budget.find(p);
        if (it == result.budget.end()) continue;
        const double floor = it->second / std::abs(predicted.order(p));
        if (tol < floor) {
            throw ValidationError("tolerance " + std::to_string(tol) + " for A" + std::to_string(p) +
                                  " is below the error budget " + std::to_string(floor));
        }
    }
}

}  // namespace billiards
