#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace billiards {

/// Real trigonometric interpolant of uniform samples of a periodic function,
///   f(x) = c_0 + 2 Re sum_{m>=1} c_m exp(2 pi i m x / L).
///
/// Coefficients come from FFTW. Trailing coefficients below `chop` times the
/// largest one are dropped, which removes the roundoff plateau before it can
/// be amplified by differentiation.
class PeriodicSeries {
public:
    PeriodicSeries() = default;
    PeriodicSeries(std::span<const double> samples, double period, double chop = 1e-15);

    double period() const { return period_; }
    double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }
    // Number of retained harmonics (excluding the mean).
    std::size_t harmonics() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    // Magnitude of the last retained coefficient relative to the largest.
    double tail() const { return tail_; }

    double operator()(double x) const { return derivative(x, 0); }
    double derivative(double x, int order) const;

    // Integral of f from 0 to x (including the secular mean * x term).
    double integral(double x) const;

    // d^order f / dx^order at the original nodes x_j = j L / N, by FFT.
    std::vector<double> derivative_samples(int order) const;

private:
    double period_ = 1.0;
    std::size_t nodes_ = 0;
    std::vector<std::complex<double>> coeffs_;
    double tail_ = 0.0;
};

}  // namespace billiards
