#pragma once

#include <string>

#include "superalg/report.hpp"
#include "superalg/series.hpp"
#include "superalg/tensor.hpp"

namespace superalg {

template <class A>
bool series_equal(const SeriesAlgebra<A>& sa, const Series<typename A::Elem>& a,
                  const Series<typename A::Elem>& b, int* first_bad = nullptr) {
    const int n = std::min(a.order, b.order);
    for (int k = 0; k <= n; ++k)
        if (!sa.base->is_zero(sa.base->sub(a.c[k], b.c[k]))) {
            if (first_bad) *first_bad = k;
            return false;
        }
    return true;
}

// d̄_i(u): the (1,1) quasideterminant of the trailing submatrix on rows/columns i..m+n.
template <class A>
Series<typename A::Elem> trailing_quasideterminant(const SeriesAlgebra<A>& sa,
                                                   const MatrixSeries<A>& z, int i) {
    return quasideterminant(sa, submatrix<A>(z, i, z.rows), 1, 1);
}

// Ber Z(u) = d_1..d_m d_{m+1}^{-1}..d_{m+n}^{-1} and
// [Ber Z(u)]^{-1} = d̄_1^{-1}..d̄_m^{-1} d̄_{m+1}..d̄_{m+n}, both against the permutation sums.
template <class A>
CheckReport factorization_check(const SeriesAlgebra<A>& sa, const SuperDim& sd,
                                const MatrixSeries<A>& z) {
    const A& alg = *sa.base;
    CheckReport rep;
    rep.identity = "ber-factorization";
    rep.config = {{"m", sd.m}, {"n", sd.n}, {"order", sa.order}};
    auto ber = berezinian(sa, sd, z);
    auto alt = berezinian_alt(sa, sd, z);
    auto g = gauss_decompose(sa, z);
    auto prod = sa.one();
    for (int i = 1; i <= sd.size(); ++i) {
        const auto& d = g.D(i, i);
        prod = sa.mul(prod, i <= sd.m ? d : series_inverse(alg, d));
    }
    int bad = -1;
    if (!series_equal(sa, ber, prod, &bad))
        rep.fail("Ber differs from the Gauss factorization at u^" + std::to_string(bad));
    auto inv = sa.one();
    for (int i = 1; i <= sd.size(); ++i) {
        auto d = trailing_quasideterminant(sa, z, i);
        inv = sa.mul(inv, i <= sd.m ? series_inverse(alg, d) : d);
    }
    if (!series_equal(sa, alt, inv, &bad))
        rep.fail("alternative form differs from the d̄ factorization at u^" + std::to_string(bad));
    if (!series_equal(sa, sa.mul(ber, alt), sa.one(), &bad))
        rep.fail("Ber · Ber_alt differs from 1 at u^" + std::to_string(bad));
    if (!series_equal(sa, sa.mul(alt, ber), sa.one(), &bad))
        rep.fail("Ber_alt · Ber differs from 1 at u^" + std::to_string(bad));
    return rep;
}

// Z_1^k = str_{2..k} Z_1..Z_k P_{k-1,k}..P_{12}.
template <class A>
bool power_trace_reduction(const A& alg, const SuperDim& sd, int k,
                           const Matrix<typename A::Elem>& z) {
    auto t = tensor_power_product(alg, sd, k, z);
    for (int a = k - 1; a >= 1; --a) t = tensor_mul(alg, t, transposition_op(alg, sd, k, a, a + 1));
    for (int a = k; a >= 2; --a) t = partial_supertrace(alg, t, a);
    auto lhs = embed_matrix(alg, sd, 1, 1, matpow(alg, z, k));
    return tensor_is_zero(alg, tensor_add(alg, lhs, t, -1));
}

// Σ_{k=1}^r Z_1^k h_{r-k}(Z) = r str_{2..r} Z_1..Z_r H_r.
template <class A>
bool power_sum_complete_relation(const A& alg, const SuperDim& sd, int r,
                                 const Matrix<typename A::Elem>& z) {
    const int N = sd.size();
    Matrix<typename A::Elem> lhs(N, N, alg.zero());
    for (int k = 1; k <= r; ++k) {
        auto zk = matpow(alg, z, k);
        auto h = symmetrized_trace(alg, sd, r - k, z, false);
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) lhs(i, j) = alg.add(lhs(i, j), alg.mul(zk(i, j), h));
    }
    auto t = tensor_mul(alg, tensor_power_product(alg, sd, r, z), sym_H(alg, sd, r));
    for (int a = r; a >= 2; --a) t = partial_supertrace(alg, t, a);
    auto diff = tensor_add(alg, embed_matrix(alg, sd, 1, 1, lhs), t, -Rational(r));
    return tensor_is_zero(alg, diff);
}

// Ber(1+uZ) = Σ u^k str A_k Z_1..Z_k, [Ber(1-uZ)]^{-1} = Σ u^k str H_k Z_1..Z_k,
// [Ber(1+uZ)]^{-1} ∂_u Ber(1+uZ) = Σ (-u)^k str Z^{k+1}, plus the two tensor lemmas.
// `tensor_kmax` bounds the tensor checks, which are the expensive part.
template <class A>
CheckReport expansion_identities(const A& alg, const SuperDim& sd,
                                 const Matrix<typename A::Elem>& z, int kmax,
                                 int tensor_kmax = 3) {
    CheckReport rep;
    rep.identity = "ber-expansions";
    rep.config = {{"m", sd.m}, {"n", sd.n}, {"kmax", kmax}};
    SeriesAlgebra<A> sa(alg, kmax);
    auto ber_plus = berezinian(sa, sd, one_plus_u(alg, z, kmax));
    auto ber_minus = berezinian(sa, sd, one_plus_u(alg, z, kmax, -1));
    auto sigma = sa.zero(), h = sa.zero();
    for (int k = 0; k <= kmax; ++k) {
        sigma.c[k] = symmetrized_trace(alg, sd, k, z, true);
        h.c[k] = symmetrized_trace(alg, sd, k, z, false);
    }
    int bad = -1;
    if (!series_equal(sa, ber_plus, sigma, &bad))
        rep.fail("Ber(1+uZ) differs from the str A_k series at u^" + std::to_string(bad));
    if (!series_equal(sa, series_inverse(alg, ber_minus), h, &bad))
        rep.fail("[Ber(1-uZ)]^-1 differs from the str H_k series at u^" + std::to_string(bad));
    auto log_der = sa.mul(series_inverse(alg, ber_plus), derivative(alg, ber_plus));
    auto power = Series<typename A::Elem>::zero(alg, kmax - 1);
    auto zp = z;
    for (int k = 0; k < kmax; ++k) {
        auto tr = alg.zero();
        for (int i = 1; i <= sd.size(); ++i)
            tr = alg.add(tr, alg.scale(zp(i, i), sign_of(sd.parity(i))));
        power.c[k] = k % 2 ? alg.neg(tr) : tr;
        if (k + 1 < kmax) zp = matmul(alg, zp, z);
    }
    if (!series_equal(sa, log_der, power, &bad))
        rep.fail("Newton identity fails at u^" + std::to_string(bad));
    for (int k = 2; k <= std::min(kmax, tensor_kmax); ++k) {
        if (!power_trace_reduction(alg, sd, k, z))
            rep.fail("power trace reduction fails for k=" + std::to_string(k));
        if (!power_sum_complete_relation(alg, sd, k, z))
            rep.fail("power/complete relation fails for r=" + std::to_string(k));
    }
    return rep;
}

}  // namespace superalg
