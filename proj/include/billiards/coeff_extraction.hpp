#pragma once

#include "billiards/expansions.hpp"
#include "billiards/polygon_solvers.hpp"

#include <map>
#include <string>
#include <vector>

namespace billiards {

/// Deficits for one curve and one polygon kind, sorted by n.
struct DeficitSeries {
    PolygonKind kind = PolygonKind::Inscribed;
    std::vector<DeficitSample> samples;
    std::string curve_id;
};

// Throws ValidationError unless n is strictly increasing and delta strictly
// decreasing.
void validate(const DeficitSeries& series);

inline const std::vector<int> kDefaultNList{16, 24, 32, 48, 64, 96, 128};

/// Rotational symmetry order seen by the polygon solvers: the gcd of the
/// support-function harmonics above the first (harmonic 1 is a translation).
/// Returns 0 for circles and ellipses, which have no resonant n.
int symmetry_order(const CurveSpec& spec);

/// For a curve of symmetry order m >= 2, deficits at n divisible by m carry
/// corrections that are exponentially small in n but are not powers of 1/n.
/// Each such n is moved to the nearest non-resonant neighbour (n + 1 first).
std::vector<int> resonance_free(const std::vector<int>& n_list, int symmetry);

/// Solves and measures every n, in parallel, and returns the samples in the
/// order of n_list.
DeficitSeries deficit_sweep(const AffineCurve& curve, PolygonKind kind, const std::vector<int>& n_list,
                            const SolverOptions& opts = {});

struct ExtractionResult {
    std::vector<int> model_orders;
    std::map<int, double> coefficients;
    std::map<int, double> uncertainties;
    std::map<int, double> budget;       // max accuracy estimate * max(n)^p
    double condition_number = 0.0;
    double residual = 0.0;              // max |delta - model|
    double max_accuracy = 0.0;          // max accuracy estimate of the samples
    bool under_resolved = false;        // weighted residual above 10x the weighted accuracy
    std::vector<double> residuals;      // per sample, same order as the series
};

inline constexpr double kMaxConditionNumber = 1e12;

/// Weighted least-squares fit of delta(n) = sum_p C_p n^{-p} over the given
/// orders, rows weighted by n^6 and columns scaled to unit norm. Throws
/// ValidationError when there are fewer samples than orders or the scaled
/// design matrix has condition number above 1e12.
ExtractionResult extract(const DeficitSeries& series, const std::vector<int>& orders);

/// Same fit applied to any (n, value, accuracy) data, e.g. beta(1/n).
ExtractionResult fit_inverse_powers(const std::vector<int>& n, const std::vector<double>& values,
                                    const std::vector<double>& accuracy, const std::vector<int>& orders,
                                    double row_weight_power = 6.0);

struct CoefficientComparison {
    int order = 0;
    double predicted = 0.0;
    double extracted = 0.0;
    double uncertainty = 0.0;
    double relative_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ComparisonReport {
    std::vector<CoefficientComparison> entries;
    bool all_pass() const;
};

/// Relative errors of the extracted A2, A4, A6 against a prediction.
/// tolerances maps order -> relative tolerance; orders without a tolerance
/// are reported but not judged.
ComparisonReport compare(const ExtractionResult& result, const ExpansionCoefficients& predicted,
                         const std::map<int, double>& tolerances);

/// Throws ValidationError when a requested relative tolerance is tighter than
/// the error budget of the fit can support.
void check_tolerance_claims(const ExtractionResult& result, const ExpansionCoefficients& predicted,
                            const std::map<int, double>& tolerances);

}  // namespace billiards
