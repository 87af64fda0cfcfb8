#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "superalg/algebra.hpp"

namespace superalg {

// Multi-index (i_1..i_k) packed four bits per factor, values 1..15.
using MultiIndex = uint32_t;

inline int mi_get(MultiIndex I, int p) { return int((I >> (4 * p)) & 0xf); }
inline MultiIndex mi_set(MultiIndex I, int p, int v) {
    return (I & ~(MultiIndex(0xf) << (4 * p))) | (MultiIndex(v) << (4 * p));
}
inline MultiIndex mi_from(const std::vector<int>& v) {
    MultiIndex I = 0;
    for (std::size_t p = 0; p < v.size(); ++p) I = mi_set(I, int(p), v[p]);
    return I;
}
inline std::vector<int> mi_to(MultiIndex I, int k) {
    std::vector<int> v(k);
    for (int p = 0; p < k; ++p) v[p] = mi_get(I, p);
    return v;
}
std::vector<MultiIndex> all_multi_indices(int dim, int k);

// Element of End(C^{m|n})^{⊗k} ⊗ R, stored as a sparse map (I,J) -> coefficient.
template <class E>
struct TensorOp {
    SuperDim sd;
    int k = 0;
    std::map<uint64_t, E> entries;

    static uint64_t key(MultiIndex I, MultiIndex J) { return (uint64_t(I) << 32) | J; }
    static MultiIndex row(uint64_t key) { return MultiIndex(key >> 32); }
    static MultiIndex col(uint64_t key) { return MultiIndex(key & 0xffffffffu); }
};

// Permutations are 0-based one-line arrays: s[p] = σ(p+1) - 1.
using Perm = std::vector<int>;

std::vector<Perm> all_perms(int k);
int perm_sign(const Perm& s);
Perm perm_compose(const Perm& a, const Perm& b);  // (a∘b)(x) = a(b(x))
Perm perm_inverse(const Perm& s);
// Adjacent transpositions t_1..t_l (t = p means (p, p+1), 0-based) with s = t_1 ∘ ... ∘ t_l.
std::vector<int> adjacent_decomposition(const Perm& s);

// Sign of the product e_{IK} ⊗ r times e_{KJ} ⊗ s in the graded tensor product.
inline int product_sign(const SuperDim& sd, int k, MultiIndex I, MultiIndex K, MultiIndex J,
                        int pr) {
    int eps = 0;
    int suffix_a = 0;  // sum of |a_p| over p > q
    for (int q = k - 1; q >= 0; --q) {
        int b = sd.parity(mi_get(K, q)) ^ sd.parity(mi_get(J, q));
        eps ^= (suffix_a & b) ^ (pr & b);
        suffix_a ^= sd.parity(mi_get(I, q)) ^ sd.parity(mi_get(K, q));
    }
    return eps;
}

inline int index_parity(const SuperDim& sd, MultiIndex I, int k) {
    int p = 0;
    for (int q = 0; q < k; ++q) p ^= sd.parity(mi_get(I, q));
    return p;
}

template <class Alg>
TensorOp<typename Alg::Elem> tensor_identity(const Alg& alg, const SuperDim& sd, int k) {
    TensorOp<typename Alg::Elem> t{sd, k, {}};
    for (auto I : all_multi_indices(sd.size(), k)) t.entries[t.key(I, I)] = alg.one();
    return t;
}

template <class Alg>
TensorOp<typename Alg::Elem> tensor_mul(const Alg& alg, const TensorOp<typename Alg::Elem>& x,
                                        const TensorOp<typename Alg::Elem>& y) {
    using E = typename Alg::Elem;
    if (x.k != y.k) throw DegreeMismatch("tensor orders differ");
    std::unordered_map<MultiIndex, std::vector<std::pair<MultiIndex, const E*>>> rows;
    for (const auto& [key, v] : y.entries) rows[y.row(key)].push_back({y.col(key), &v});
    TensorOp<E> out{x.sd, x.k, {}};
    for (const auto& [key, r] : x.entries) {
        MultiIndex I = x.row(key), K = x.col(key);
        auto it = rows.find(K);
        if (it == rows.end()) continue;
        int pr = alg.parity(r);
        for (const auto& [J, s] : it->second) {
            E prod = alg.mul(r, *s);
            if (product_sign(x.sd, x.k, I, K, J, pr)) prod = alg.neg(prod);
            auto [pos, ins] = out.entries.try_emplace(out.key(I, J), prod);
            if (!ins) pos->second = alg.add(pos->second, prod);
        }
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (alg.is_zero(it->second)) it = out.entries.erase(it);
        else ++it;
    }
    return out;
}

template <class Alg>
TensorOp<typename Alg::Elem> tensor_add(const Alg& alg, const TensorOp<typename Alg::Elem>& x,
                                        const TensorOp<typename Alg::Elem>& y,
                                        const Rational& cy = 1) {
    auto out = x;
    for (const auto& [key, v] : y.entries) {
        auto term = alg.scale(v, cy);
        auto [pos, ins] = out.entries.try_emplace(key, term);
        if (!ins) pos->second = alg.add(pos->second, term);
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (alg.is_zero(it->second)) it = out.entries.erase(it);
        else ++it;
    }
    return out;
}

template <class Alg>
TensorOp<typename Alg::Elem> tensor_scale(const Alg& alg, const TensorOp<typename Alg::Elem>& x,
                                          const Rational& c) {
    auto out = x;
    for (auto& [key, v] : out.entries) v = alg.scale(v, c);
    if (c == 0) out.entries.clear();
    return out;
}

template <class Alg>
bool tensor_is_zero(const Alg& alg, const TensorOp<typename Alg::Elem>& x) {
    for (const auto& [key, v] : x.entries)
        if (!alg.is_zero(v)) return false;
    return true;
}

// P_ab = Σ e_ij (at a) ⊗ e_ji (at b) (-1)^{j̄}, positions 1-based.
template <class Alg>
TensorOp<typename Alg::Elem> transposition_op(const Alg& alg, const SuperDim& sd, int k, int a,
                                              int b) {
    TensorOp<typename Alg::Elem> t{sd, k, {}};
    for (auto I : all_multi_indices(sd.size(), k)) {
        MultiIndex J = mi_set(mi_set(I, a - 1, mi_get(I, b - 1)), b - 1, mi_get(I, a - 1));
        int j = mi_get(I, b - 1);
        t.entries[t.key(I, J)] = alg.scale(alg.one(), sign_of(sd.parity(j)));
    }
    return t;
}

template <class Alg>
TensorOp<typename Alg::Elem> perm_op(const Alg& alg, const SuperDim& sd, int k, const Perm& s) {
    auto t = tensor_identity(alg, sd, k);
    for (int p : adjacent_decomposition(s))
        t = tensor_mul(alg, t, transposition_op(alg, sd, k, p + 1, p + 2));
    return t;
}

template <class Alg>
TensorOp<typename Alg::Elem> symmetrizer(const Alg& alg, const SuperDim& sd, int k, bool anti) {
    TensorOp<typename Alg::Elem> t{sd, k, {}};
    Rational w = Rational(1) / factorial(k);
    for (const auto& s : all_perms(k)) {
        Rational c = anti ? w * perm_sign(s) : w;
        t = tensor_add(alg, t, perm_op(alg, sd, k, s), c);
    }
    return t;
}

template <class Alg>
TensorOp<typename Alg::Elem> sym_H(const Alg& alg, const SuperDim& sd, int k) {
    return symmetrizer(alg, sd, k, false);
}
template <class Alg>
TensorOp<typename Alg::Elem> sym_A(const Alg& alg, const SuperDim& sd, int k) {
    return symmetrizer(alg, sd, k, true);
}

// Z_a = Σ 1⊗..⊗e_ij⊗..⊗1 ⊗ z_ij (-1)^{īj̄+j̄}, with e_ij in copy a (1-based).
template <class Alg>
TensorOp<typename Alg::Elem> embed_matrix(const Alg& alg, const SuperDim& sd, int k, int a,
                                          const Matrix<typename Alg::Elem>& z) {
    TensorOp<typename Alg::Elem> t{sd, k, {}};
    int N = sd.size();
    for (auto I : all_multi_indices(N, k)) {
        if (mi_get(I, a - 1) != 1) continue;
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                if (alg.is_zero(z(i, j))) continue;
                int pi = sd.parity(i), pj = sd.parity(j);
                if (alg.parity(z(i, j)) != (pi ^ pj))
                    throw ParityPatternError("entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") has the wrong parity");
                t.entries[t.key(mi_set(I, a - 1, i), mi_set(I, a - 1, j))] =
                    alg.scale(z(i, j), sign_of((pi & pj) ^ pj));
            }
    }
    return t;
}

// Inverse of embed_matrix for a tensor of order 1.
template <class Alg>
Matrix<typename Alg::Elem> extract_matrix(const Alg& alg, const TensorOp<typename Alg::Elem>& t) {
    int N = t.sd.size();
    Matrix<typename Alg::Elem> z(N, N, alg.zero());
    for (const auto& [key, v] : t.entries) {
        int i = mi_get(t.row(key), 0), j = mi_get(t.col(key), 0);
        int pi = t.sd.parity(i), pj = t.sd.parity(j);
        z(i, j) = alg.scale(v, sign_of((pi & pj) ^ pj));
    }
    return z;
}

// str over copy a (1-based), leaving a tensor of order k-1.
template <class Alg>
TensorOp<typename Alg::Elem> partial_supertrace(const Alg& alg,
                                                const TensorOp<typename Alg::Elem>& x, int a) {
    TensorOp<typename Alg::Elem> out{x.sd, x.k - 1, {}};
    auto drop = [&](MultiIndex I) {
        MultiIndex r = 0;
        int q = 0;
        for (int p = 0; p < x.k; ++p)
            if (p != a - 1) r = mi_set(r, q++, mi_get(I, p));
        return r;
    };
    for (const auto& [key, v] : x.entries) {
        MultiIndex I = x.row(key), J = x.col(key);
        int i = mi_get(I, a - 1);
        if (i != mi_get(J, a - 1)) continue;
        auto term = alg.scale(v, sign_of(x.sd.parity(i)));
        auto [pos, ins] = out.entries.try_emplace(out.key(drop(I), drop(J)), term);
        if (!ins) pos->second = alg.add(pos->second, term);
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (alg.is_zero(it->second)) it = out.entries.erase(it);
        else ++it;
    }
    return out;
}

template <class Alg>
typename Alg::Elem full_supertrace(const Alg& alg, const TensorOp<typename Alg::Elem>& x) {
    auto acc = alg.zero();
    for (const auto& [key, v] : x.entries) {
        MultiIndex I = x.row(key);
        if (I != x.col(key)) continue;
        acc = alg.add(acc, alg.scale(v, sign_of(index_parity(x.sd, I, x.k))));
    }
    return acc;
}

// str(x y) without forming the full product.
template <class Alg>
typename Alg::Elem supertrace_of_product(const Alg& alg, const TensorOp<typename Alg::Elem>& x,
                                         const TensorOp<typename Alg::Elem>& y) {
    auto acc = alg.zero();
    for (const auto& [key, r] : x.entries) {
        MultiIndex I = x.row(key), K = x.col(key);
        auto it = y.entries.find(y.key(K, I));
        if (it == y.entries.end()) continue;
        auto prod = alg.mul(r, it->second);
        int eps = product_sign(x.sd, x.k, I, K, I, alg.parity(r)) ^ index_parity(x.sd, I, x.k);
        acc = alg.add(acc, eps ? alg.neg(prod) : prod);
    }
    return acc;
}

// Z_1 Z_2 ... Z_k.
template <class Alg>
TensorOp<typename Alg::Elem> tensor_power_product(const Alg& alg, const SuperDim& sd, int k,
                                                  const Matrix<typename Alg::Elem>& z) {
    auto t = embed_matrix(alg, sd, k, 1, z);
    for (int a = 2; a <= k; ++a) t = tensor_mul(alg, t, embed_matrix(alg, sd, k, a, z));
    return t;
}

// str A_k Z_1..Z_k (anti = true) or str H_k Z_1..Z_k, by direct contraction.
// With right = true the symmetrizer multiplies from the right.
template <class Alg>
typename Alg::Elem symmetrized_trace(const Alg& alg, const SuperDim& sd, int k,
                                     const Matrix<typename Alg::Elem>& z, bool anti,
                                     bool right = false) {
    if (k == 0) return alg.one();
    auto prod = tensor_power_product(alg, sd, k, z);
    ScalarAlgebra sc;
    auto acc = alg.zero();
    Rational w = Rational(1) / factorial(k);
    for (const auto& s : all_perms(k)) {
        auto p = perm_op(sc, sd, k, s);
        TensorOp<typename Alg::Elem> lifted{sd, k, {}};
        for (const auto& [key, c] : p.entries) lifted.entries[key] = alg.scale(alg.one(), c);
        Rational c = anti ? w * perm_sign(s) : w;
        auto tr = right ? supertrace_of_product(alg, prod, lifted)
                        : supertrace_of_product(alg, lifted, prod);
        acc = alg.add(acc, alg.scale(tr, c));
    }
    return acc;
}

// Coefficients defined through P_σ and basis tensors; see tensor.cpp.
int sign_phi(const SuperDim& sd, const Perm& s, const std::vector<int>& I,
             const std::vector<int>& J);
int sign_psi(const SuperDim& sd, const Perm& s, const std::vector<int>& I,
             const std::vector<int>& J);
int gamma_parity(const SuperDim& sd, const std::vector<int>& I, const std::vector<int>& J);

enum class MultisetOrder { Standard, Alternative };

// Multisets indexing the explicit expansions of str A_k and str H_k.
std::vector<std::vector<int>> antisym_multisets(const SuperDim& sd, int k, MultisetOrder order);
std::vector<std::vector<int>> sym_multisets(const SuperDim& sd, int k, MultisetOrder order);

inline std::vector<int> permute_indices(const std::vector<int>& I, const Perm& s) {
    std::vector<int> r(I.size());
    for (std::size_t p = 0; p < I.size(); ++p) r[p] = I[s[p]];
    return r;
}

// Explicit expansion of str A_k Z_1..Z_k for a Manin matrix.
template <class Alg>
typename Alg::Elem sigma_expansion(const Alg& alg, const SuperDim& sd, int k,
                                   const Matrix<typename Alg::Elem>& z,
                                   MultisetOrder order = MultisetOrder::Standard) {
    auto acc = alg.zero();
    auto perms = all_perms(k);
    for (const auto& I : antisym_multisets(sd, k, order)) {
        Rational w = 1;
        for (int c = sd.m + 1; c <= sd.size(); ++c)
            w /= factorial(int(std::count(I.begin(), I.end(), c)));
        for (const auto& s : perms) {
            auto sI = permute_indices(I, s);
            int sg = (perm_sign(s) < 0) ^ sign_phi(sd, s, sI, I) ^ gamma_parity(sd, sI, I);
            auto term = alg.one();
            for (int p = 0; p < k; ++p) term = alg.mul(term, z(sI[p], I[p]));
            acc = alg.add(acc, alg.scale(term, sg ? -w : w));
        }
    }
    return acc;
}

// Explicit expansion of str H_k Z_1..Z_k for a Manin matrix.
template <class Alg>
typename Alg::Elem h_expansion(const Alg& alg, const SuperDim& sd, int k,
                               const Matrix<typename Alg::Elem>& z,
                               MultisetOrder order = MultisetOrder::Standard) {
    auto acc = alg.zero();
    auto perms = all_perms(k);
    for (const auto& I : sym_multisets(sd, k, order)) {
        Rational w = 1;
        for (int c = 1; c <= sd.m; ++c) w /= factorial(int(std::count(I.begin(), I.end(), c)));
        for (const auto& s : perms) {
            auto sI = permute_indices(I, s);
            int sg = sign_psi(sd, s, I, sI) ^ gamma_parity(sd, I, sI);
            auto term = alg.one();
            for (int p = 0; p < k; ++p) term = alg.mul(term, z(I[p], sI[p]));
            acc = alg.add(acc, alg.scale(term, sg ? -w : w));
        }
    }
    return acc;
}

}  // namespace superalg
