#include "billiards/fourier.hpp"

#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace billiards {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> forward(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> backward(std::vector<std::complex<double>> spectrum, int n) {
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spectrum.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

PeriodicSeries::PeriodicSeries(std::span<const double> samples, double period, double chop)
    : period_(period), nodes_(samples.size()) {
    if (nodes_ < 4 || nodes_ % 2 != 0) {
        throw ValidationError("periodic series needs an even number (>= 4) of samples");
    }
    auto spectrum = forward(samples);
    const double inv_n = 1.0 / static_cast<double>(nodes_);
    for (auto& c : spectrum) c *= inv_n;
    // The Nyquist mode is not representable as a smooth interpolant; drop it.
    spectrum.back() = 0.0;

    double largest = 0.0;
    for (const auto& c : spectrum) largest = std::max(largest, std::abs(c));
    std::size_t keep = spectrum.size();
    while (keep > 1 && std::abs(spectrum[keep - 1]) <= chop * largest) --keep;
    tail_ = largest > 0.0 ? std::abs(spectrum[keep - 1]) / largest : 0.0;
    spectrum.resize(keep);
    coeffs_ = std::move(spectrum);
}

double PeriodicSeries::derivative(double x, int order) const {
    if (coeffs_.empty()) return 0.0;
    const double w = kTwoPi / period_;
    double acc = order == 0 ? coeffs_[0].real() : 0.0;
    // (i m w)^order as a complex factor.
    const std::complex<double> iw(0.0, w);
    for (std::size_t m = 1; m < coeffs_.size(); ++m) {
        const double phase = w * static_cast<double>(m) * x;
        std::complex<double> term = coeffs_[m] * std::complex<double>(std::cos(phase), std::sin(phase));
        if (order > 0) term *= std::pow(iw * static_cast<double>(m), order);
        acc += 2.0 * term.real();
    }
    return acc;
}

double PeriodicSeries::integral(double x) const {
    if (coeffs_.empty()) return 0.0;
    const double w = kTwoPi / period_;
    double acc = coeffs_[0].real() * x;
    for (std::size_t m = 1; m < coeffs_.size(); ++m) {
        const double mw = w * static_cast<double>(m);
        const std::complex<double> e(std::cos(mw * x), std::sin(mw * x));
        // Antiderivative of c e^{i m w x} minus its value at 0.
        acc += 2.0 * (coeffs_[m] * (e - 1.0) / std::complex<double>(0.0, mw)).real();
    }
    return acc;
}

std::vector<double> PeriodicSeries::derivative_samples(int order) const {
    const int n = static_cast<int>(nodes_);
    std::vector<std::complex<double>> spectrum(n / 2 + 1, 0.0);
    const double w = kTwoPi / period_;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
        std::complex<double> factor = 1.0;
        if (order > 0) factor = std::pow(std::complex<double>(0.0, w * static_cast<double>(m)), order);
        spectrum[m] = coeffs_[m] * factor;
    }
    // c2r computes the unnormalized inverse of the half spectrum, which is
    // exactly c_0 + 2 Re sum c_m e^{...} for our normalization.
    return backward(std::move(spectrum), n);
}

}  // namespace billiards
