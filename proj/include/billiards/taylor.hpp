#pragma once

#include "billiards/geometry.hpp"

#include <array>
#include <cassert>
#include <cmath>

namespace billiards {

/// Truncated Taylor polynomial c[0] + c[1] u + ... + c[N] u^N.
///
/// Used to push exact derivative data through the chain rule when
/// reparametrizing a curve: products, real powers, integration, composition
/// and series reversion are all done on coefficients, so no finite
/// differences ever enter the affine jets.
template <int N>
struct Taylor {
    static_assert(N >= 0);
    std::array<double, N + 1> c{};

    static Taylor constant(double v) {
        Taylor t;
        t.c[0] = v;
        return t;
    }

    double operator[](int i) const { return c[i]; }
    double& operator[](int i) { return c[i]; }

    Taylor& operator+=(const Taylor& o) {
        for (int i = 0; i <= N; ++i) c[i] += o.c[i];
        return *this;
    }
    Taylor& operator-=(const Taylor& o) {
        for (int i = 0; i <= N; ++i) c[i] -= o.c[i];
        return *this;
    }
    Taylor& operator*=(double a) {
        for (auto& v : c) v *= a;
        return *this;
    }
    friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
    friend Taylor operator*(Taylor a, double s) { return a *= s; }
    friend Taylor operator*(double s, Taylor a) { return a *= s; }

    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i <= N; ++i) {
            double acc = 0.0;
            for (int j = 0; j <= i; ++j) acc += a.c[j] * b.c[i - j];
            r.c[i] = acc;
        }
        return r;
    }

    template <int M>
    Taylor<M> truncate() const {
        static_assert(M <= N);
        Taylor<M> r;
        for (int i = 0; i <= M; ++i) r.c[i] = c[i];
        return r;
    }

    Taylor<N - 1> derivative() const {
        Taylor<N - 1> r;
        for (int i = 0; i < N; ++i) r.c[i] = (i + 1) * c[i + 1];
        return r;
    }

    // Antiderivative vanishing at u = 0.
    Taylor<N + 1> integral() const {
        Taylor<N + 1> r;
        for (int i = 0; i <= N; ++i) r.c[i + 1] = c[i] / (i + 1);
        return r;
    }

    // this^alpha for c[0] > 0, via the J.C.P. Miller recurrence.
    Taylor pow(double alpha) const {
        assert(c[0] > 0.0);
        Taylor r;
        r.c[0] = std::pow(c[0], alpha);
        for (int n = 1; n <= N; ++n) {
            double acc = 0.0;
            for (int k = 1; k <= n; ++k) acc += (alpha * k - (n - k)) * c[k] * r.c[n - k];
            r.c[n] = acc / (n * c[0]);
        }
        return r;
    }

    // this(inner(u)) where inner has zero constant term.
    Taylor compose(const Taylor& inner) const {
        assert(inner.c[0] == 0.0);
        Taylor r = constant(c[N]);
        for (int i = N - 1; i >= 0; --i) {
            r = r * inner;
            r.c[0] += c[i];
        }
        return r;
    }

    // Series inverse: returns v(e) with this(v(e)) = e. Requires c[0] == 0 and
    // c[1] != 0.
    Taylor revert() const {
        assert(c[0] == 0.0 && c[1] != 0.0);
        Taylor v;
        v.c[1] = 1.0 / c[1];
        for (int n = 2; n <= N; ++n) {
            const Taylor composed = compose(v);
            v.c[n] = -composed.c[n] / c[1];
        }
        return v;
    }
};

template <int N>
struct TaylorVec2 {
    Taylor<N> x, y;

    Vec2 coefficient(int i) const { return {x.c[i], y.c[i]}; }
    void set(int i, const Vec2& v) {
        x.c[i] = v.x();
        y.c[i] = v.y();
    }
    TaylorVec2<N - 1> derivative() const { return {x.derivative(), y.derivative()}; }
    template <int M>
    TaylorVec2<M> truncate() const {
        return {x.template truncate<M>(), y.template truncate<M>()};
    }
    TaylorVec2 compose(const Taylor<N>& inner) const { return {x.compose(inner), y.compose(inner)}; }
};

template <int N>
Taylor<N> omega(const TaylorVec2<N>& u, const TaylorVec2<N>& v) {
    return u.x * v.y - u.y * v.x;
}

}  // namespace billiards
