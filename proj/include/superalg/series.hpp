#pragma once

#include <algorithm>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/tensor.hpp"

namespace superalg {

// Truncated power series in u: coefficients c[0..order] are exact, higher ones unknown.
template <class E>
struct Series {
    std::vector<E> c;
    int order = 0;

    template <class Alg>
    static Series zero(const Alg& alg, int order) {
        return Series{std::vector<E>(order + 1, alg.zero()), order};
    }
    template <class Alg>
    static Series constant(const Alg& alg, const E& e, int order) {
        auto s = zero(alg, order);
        s.c[0] = e;
        return s;
    }
};

template <class A>
struct SeriesAlgebra {
    using Elem = Series<typename A::Elem>;
    const A* base;
    int order;

    SeriesAlgebra(const A& a, int n) : base(&a), order(n) {}

    Elem zero() const { return Elem::zero(*base, order); }
    Elem one() const { return Elem::constant(*base, base->one(), order); }
    Elem add(const Elem& a, const Elem& b) const {
        int n = std::min(a.order, b.order);
        Elem r{std::vector<typename A::Elem>(n + 1), n};
        for (int k = 0; k <= n; ++k) r.c[k] = base->add(a.c[k], b.c[k]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem neg(const Elem& a) const {
        auto r = a;
        for (auto& x : r.c) x = base->neg(x);
        return r;
    }
    Elem scale(const Elem& a, const Rational& q) const {
        auto r = a;
        for (auto& x : r.c) x = base->scale(x, q);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        int n = std::min(a.order, b.order);
        Elem r = Elem::zero(*base, n);
        for (int i = 0; i <= n; ++i) {
            if (base->is_zero(a.c[i])) continue;
            for (int j = 0; i + j <= n; ++j) {
                if (base->is_zero(b.c[j])) continue;
                r.c[i + j] = base->add(r.c[i + j], base->mul(a.c[i], b.c[j]));
            }
        }
        return r;
    }
    bool is_zero(const Elem& a) const {
        for (const auto& x : a.c)
            if (!base->is_zero(x)) return false;
        return true;
    }
    int parity(const Elem& a) const {
        for (const auto& x : a.c)
            if (!base->is_zero(x)) return base->parity(x);
        return 0;
    }
    Elem normalize(const Elem& a) const {
        auto r = a;
        for (auto& x : r.c) x = base->normalize(x);
        return r;
    }
};

// d/du, losing one order of precision.
template <class A>
Series<typename A::Elem> derivative(const A& alg, const Series<typename A::Elem>& s) {
    int n = std::max(0, s.order - 1);
    auto r = Series<typename A::Elem>::zero(alg, n);
    for (int k = 0; k <= n && k + 1 <= s.order; ++k)
        r.c[k] = alg.scale(s.c[k + 1], Rational(k + 1));
    return r;
}

// u -> -u.
template <class A>
Series<typename A::Elem> reflect(const A& alg, const Series<typename A::Elem>& s) {
    auto r = s;
    for (std::size_t k = 1; k < r.c.size(); k += 2) r.c[k] = alg.neg(r.c[k]);
    return r;
}

template <class A>
Series<typename A::Elem> truncate(const Series<typename A::Elem>& s, int order) {
    Series<typename A::Elem> r = s;
    r.order = std::min(order, s.order);
    r.c.resize(r.order + 1);
    return r;
}

// Two-sided inverse of a scalar series with constant term 1.
template <class A>
Series<typename A::Elem> series_inverse(const A& alg, const Series<typename A::Elem>& s) {
    SeriesAlgebra<A> sa(alg, s.order);
    if (!alg.is_zero(alg.sub(s.c[0], alg.one())))
        throw NonInvertible("series constant term is not 1");
    auto x = s;
    x.c[0] = alg.zero();  // s = 1 + x
    auto y = sa.one();
    for (int k = 0; k < s.order; ++k) y = sa.sub(sa.one(), sa.mul(x, y));
    return y;
}

template <class A>
using MatrixSeries = Matrix<Series<typename A::Elem>>;

// Inverse of a matrix series whose constant term is the identity.
template <class A>
MatrixSeries<A> invert(const SeriesAlgebra<A>& sa, const MatrixSeries<A>& z) {
    const A& alg = *sa.base;
    int N = z.rows;
    int order = sa.order;
    for (const auto& e : z.data) order = std::min(order, e.order);
    SeriesAlgebra<A> s2(alg, order);
    auto x = z;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            auto expect = i == j ? alg.one() : alg.zero();
            if (!alg.is_zero(alg.sub(z(i, j).c[0], expect)))
                throw NonInvertible("constant term is not the identity");
            x(i, j).c[0] = alg.zero();
        }
    auto id = identity_matrix(s2, N);
    auto y = id;
    for (int k = 0; k < order; ++k) {
        auto xy = matmul(s2, x, y);
        for (std::size_t a = 0; a < y.data.size(); ++a) y.data[a] = s2.sub(id.data[a], xy.data[a]);
    }
    return y;
}

template <class A>
MatrixSeries<A> submatrix(const MatrixSeries<A>& z, int from, int to) {
    int n = to - from + 1;
    MatrixSeries<A> r(n, n, z(1, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i + 1, j + 1) = z(from + i, from + j);
    return r;
}

// |A|_ij = ((A^{-1})_ji)^{-1}.
template <class A>
Series<typename A::Elem> quasideterminant(const SeriesAlgebra<A>& sa, const MatrixSeries<A>& a,
                                          int i, int j) {
    auto inv = invert(sa, a);
    return series_inverse(*sa.base, inv(j, i));
}

template <class A>
struct GaussFactors {
    MatrixSeries<A> F, D, E;
};

template <class A>
GaussFactors<A> gauss_decompose(const SeriesAlgebra<A>& sa, const MatrixSeries<A>& z) {
    const A& alg = *sa.base;
    int N = z.rows;
    auto zero = sa.zero();
    GaussFactors<A> g{identity_matrix(sa, N), MatrixSeries<A>(N, N, zero), identity_matrix(sa, N)};
    std::vector<Series<typename A::Elem>> dinv(N + 1, zero);
    auto reduced = [&](int i, int j, int k) {
        auto acc = z(i, j);
        for (int p = 1; p < k; ++p)
            acc = sa.sub(acc, sa.mul(sa.mul(g.F(i, p), g.D(p, p)), g.E(p, j)));
        return acc;
    };
    for (int k = 1; k <= N; ++k) {
        g.D(k, k) = reduced(k, k, k);
        dinv[k] = series_inverse(alg, g.D(k, k));
        for (int j = k + 1; j <= N; ++j) g.E(k, j) = sa.mul(dinv[k], reduced(k, j, k));
        for (int i = k + 1; i <= N; ++i) g.F(i, k) = sa.mul(reduced(i, k, k), dinv[k]);
    }
    return g;
}

// Ber Z(u) = Σ_σ sgnσ z_{σ(1)1}..z_{σ(m)m} · Σ_τ sgnτ z'_{m+1,m+τ(1)}..z'_{m+n,m+τ(n)}.
template <class A>
Series<typename A::Elem> berezinian(const SeriesAlgebra<A>& sa, const SuperDim& sd,
                                    const MatrixSeries<A>& z) {
    auto zi = invert(sa, z);
    auto first = sa.zero();
    for (const auto& s : all_perms(sd.m)) {
        auto t = sa.one();
        for (int a = 1; a <= sd.m; ++a) t = sa.mul(t, z(s[a - 1] + 1, a));
        first = sa.add(first, perm_sign(s) > 0 ? t : sa.neg(t));
    }
    auto second = sa.zero();
    for (const auto& s : all_perms(sd.n)) {
        auto t = sa.one();
        for (int a = 1; a <= sd.n; ++a) t = sa.mul(t, zi(sd.m + a, sd.m + s[a - 1] + 1));
        second = sa.add(second, perm_sign(s) > 0 ? t : sa.neg(t));
    }
    return sa.mul(first, second);
}

// Σ_σ sgnσ z'_{σ(1)1}..z'_{σ(m)m} · Σ_τ sgnτ z_{m+1,m+τ(1)}..z_{m+n,m+τ(n)} = [Ber Z(u)]^{-1}.
template <class A>
Series<typename A::Elem> berezinian_alt(const SeriesAlgebra<A>& sa, const SuperDim& sd,
                                        const MatrixSeries<A>& z) {
    auto zi = invert(sa, z);
    auto first = sa.zero();
    for (const auto& s : all_perms(sd.m)) {
        auto t = sa.one();
        for (int a = 1; a <= sd.m; ++a) t = sa.mul(t, zi(s[a - 1] + 1, a));
        first = sa.add(first, perm_sign(s) > 0 ? t : sa.neg(t));
    }
    auto second = sa.zero();
    for (const auto& s : all_perms(sd.n)) {
        auto t = sa.one();
        for (int a = 1; a <= sd.n; ++a) t = sa.mul(t, z(sd.m + a, sd.m + s[a - 1] + 1));
        second = sa.add(second, perm_sign(s) > 0 ? t : sa.neg(t));
    }
    return sa.mul(first, second);
}

// 1 + uX for a matrix X over the base algebra.
template <class A>
MatrixSeries<A> one_plus_u(const A& alg, const Matrix<typename A::Elem>& x, int order,
                           const Rational& c = 1) {
    int N = x.rows;
    MatrixSeries<A> z(N, N, Series<typename A::Elem>::zero(alg, order));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) z(i, j).c[0] = alg.one();
            if (order >= 1) z(i, j).c[1] = alg.scale(x(i, j), c);
        }
    return z;
}

}  // namespace superalg
