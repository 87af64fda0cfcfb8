#include "superalg/tensor.hpp"

#include <functional>

namespace superalg {

std::vector<MultiIndex> all_multi_indices(int dim, int k) {
    std::vector<MultiIndex> out;
    std::vector<int> v(k, 1);
    while (true) {
        out.push_back(mi_from(v));
        int p = k - 1;
        while (p >= 0 && v[p] == dim) v[p--] = 1;
        if (p < 0) break;
        ++v[p];
    }
    return out;
}

std::vector<Perm> all_perms(int k) {
    Perm s(k);
    std::iota(s.begin(), s.end(), 0);
    std::vector<Perm> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

int perm_sign(const Perm& s) {
    int inv = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (s[a] > s[b]) ++inv;
    return inv % 2 ? -1 : 1;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
}

Perm perm_inverse(const Perm& s) {
    Perm r(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) r[s[x]] = int(x);
    return r;
}

std::vector<int> adjacent_decomposition(const Perm& s) {
    Perm cur = s;
    std::vector<int> rev;
    while (true) {
        std::size_t p = 0;
        while (p + 1 < cur.size() && cur[p] < cur[p + 1]) ++p;
        if (p + 1 >= cur.size()) break;
        // cur = cur' ∘ t_p with cur' = cur ∘ t_p having one inversion less
        std::swap(cur[p], cur[p + 1]);
        rev.push_back(int(p));
    }
    return {rev.rbegin(), rev.rend()};
}

namespace {

MultiIndex swap_positions(MultiIndex I, int p) {
    return mi_set(mi_set(I, p, mi_get(I, p + 1)), p + 1, mi_get(I, p));
}

}  // namespace

int sign_phi(const SuperDim& sd, const Perm& s, const std::vector<int>& Iv,
             const std::vector<int>& Jv) {
    int k = int(s.size());
    MultiIndex I = mi_from(Iv), J = mi_from(Jv);
    int eps = 0;
    auto ts = adjacent_decomposition(s);
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        int p = *it;
        MultiIndex Ip = swap_positions(I, p);
        // P_t has entry (Ip, I) with value (-1)^{parity of I_p}
        eps ^= sd.parity(mi_get(I, p)) ^ product_sign(sd, k, Ip, I, J, 0);
        I = Ip;
    }
    return eps;
}

int sign_psi(const SuperDim& sd, const Perm& s, const std::vector<int>& Iv,
             const std::vector<int>& Jv) {
    int k = int(s.size());
    MultiIndex I = mi_from(Iv), J = mi_from(Jv);
    int eps = 0;
    // P_{σ^{-1}} = P_{t_l} ... P_{t_1}, applied on the right
    auto ts = adjacent_decomposition(s);
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        int p = *it;
        MultiIndex Jp = swap_positions(J, p);
        eps ^= sd.parity(mi_get(J, p + 1)) ^ product_sign(sd, k, I, J, Jp, 0);
        J = Jp;
    }
    return eps;
}

int gamma_parity(const SuperDim& sd, const std::vector<int>& I, const std::vector<int>& J) {
    int g = 0;
    int prefix = 0;
    for (std::size_t a = 0; a < I.size(); ++a) {
        int pi = sd.parity(I[a]), pj = sd.parity(J[a]);
        g ^= pi & pj;
        int t = pi ^ pj;
        g ^= prefix & t;
        prefix ^= t;
    }
    return g;
}

namespace {

// Monotone sequences of length len over [lo, hi]; step +1/-1, strict or weak.
void monotone(int len, int lo, int hi, bool increasing, bool strict,
              std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int prev) {
        if (int(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= hi; ++v) {
            if (!cur.empty()) {
                if (increasing && (strict ? v <= prev : v < prev)) continue;
                if (!increasing && (strict ? v >= prev : v > prev)) continue;
            }
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
}

std::vector<std::vector<int>> two_block(int k, int lo1, int hi1, bool inc1, bool strict1, int lo2,
                                        int hi2, bool inc2, bool strict2) {
    std::vector<std::vector<int>> out;
    for (int l = 0; l <= k; ++l) {
        std::vector<std::vector<int>> a, b;
        monotone(l, lo1, hi1, inc1, strict1, a);
        monotone(k - l, lo2, hi2, inc2, strict2, b);
        for (const auto& x : a)
            for (const auto& y : b) {
                auto v = x;
                v.insert(v.end(), y.begin(), y.end());
                out.push_back(v);
            }
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> antisym_multisets(const SuperDim& sd, int k, MultisetOrder order) {
    int m = sd.m, N = sd.size();
    if (order == MultisetOrder::Standard)
        return two_block(k, m + 1, N, false, false, 1, m, false, true);
    return two_block(k, 1, m, true, true, m + 1, N, true, false);
}

std::vector<std::vector<int>> sym_multisets(const SuperDim& sd, int k, MultisetOrder order) {
    int m = sd.m, N = sd.size();
    if (order == MultisetOrder::Standard)
        return two_block(k, 1, m, true, false, m + 1, N, true, true);
    return two_block(k, m + 1, N, false, true, 1, m, false, false);
}

Matrix<NCPoly> generic_matrix(const SuperDim& sd) {
    int N = sd.size();
    Matrix<NCPoly> z(N, N, NCPoly());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) z(i, j) = NCPoly::letter(GenSymbol::z(sd, i, j));
    return z;
}

Matrix<NCPoly> generic_affine_matrix(const SuperDim& sd, int r) {
    int N = sd.size();
    Matrix<NCPoly> z(N, N, NCPoly());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) z(i, j) = NCPoly::letter(GenSymbol::za(sd, r, i, j));
    return z;
}

}  // namespace superalg
