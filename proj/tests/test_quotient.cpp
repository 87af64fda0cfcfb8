#include <random>

#include "doctest.h"
#include "superalg/quotient.hpp"
#include "superalg/series.hpp"

using namespace superalg;

namespace {

NCPoly Z(const SuperDim& sd, int i, int j) { return NCPoly::letter(GenSymbol::z(sd, i, j)); }

// Rank over Q by plain dense elimination.
int dense_rank(std::vector<std::vector<Rational>> rows) {
    int rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < int(rows.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t x = 0; x < cols; ++x) rows[r][x] -= f * rows[rank][x];
        }
        ++rank;
    }
    return rank;
}

// Degree-2 quotient dimension computed straight from the defining relations:
// z_ij z_kl - s z_kl z_ij = z_kj z_il - s' z_il z_kj with graded signs written out.
long long oracle_degree2_dimension(const SuperDim& sd) {
    int N = sd.size();
    auto p = [&](int i, int j) { return sd.parity(i) ^ sd.parity(j); };
    auto col = [&](int i, int j, int k, int l) { return ((i - 1) * N + (j - 1)) * N * N + (k - 1) * N + (l - 1); };
    std::vector<std::vector<Rational>> rows;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    std::vector<Rational> row(N * N * N * N, 0);
                    int pi = sd.parity(i), pj = sd.parity(j), pk = sd.parity(k);
                    Rational s = ((pi & pj) ^ (pi & pk) ^ (pj & pk)) ? -1 : 1;
                    row[col(i, j, k, l)] += 1;
                    row[col(k, l, i, j)] -= (p(i, j) & p(k, l)) ? -1 : 1;
                    row[col(k, j, i, l)] -= s;
                    row[col(i, l, k, j)] += s * ((p(k, j) & p(i, l)) ? -1 : 1);
                    rows.push_back(row);
                }
    return (long long)(N * N * N * N) - dense_rank(rows);
}

}  // namespace

TEST_CASE("degree-2 bases") {
    QuotientRing q10({{1, 0}, QuotientKind::Manin});
    auto b10 = q10.build_graded_basis(2);
    CHECK(b10.dims.quotient == 1);
    QuotientRing q01({{0, 1}, QuotientKind::Manin});
    auto b01 = q01.build_graded_basis(2);
    CHECK(b01.dims.quotient == 1);
    REQUIRE(b01.basis.size() == 1);
    CHECK(b01.basis[0].size() == 2);
    for (const SuperDim& sd : {SuperDim{1, 1}, SuperDim{2, 0}, SuperDim{0, 2}, SuperDim{2, 1}}) {
        QuotientRing q({sd, QuotientKind::Manin});
        auto b = q.build_graded_basis(2);
        CHECK(b.dims.quotient == oracle_degree2_dimension(sd));
        CHECK(b.dims.words == (long long)sd.size() * sd.size() * sd.size() * sd.size());
    }
    // golden value for M_{1|1}
    QuotientRing q11({{1, 1}, QuotientKind::Manin});
    CHECK(q11.build_graded_basis(2).dims.quotient == 12);
}

TEST_CASE("reduction examples") {
    SuperDim sd{1, 1};
    QuotientRing q({sd, QuotientKind::Manin});
    CHECK(q.reduce(manin_relation(sd, 1, 1, 2, 2)).is_zero());
    auto rel = supercommutator(Z(sd, 1, 1), Z(sd, 2, 2)) -
               supercommutator(Z(sd, 2, 1), Z(sd, 1, 2)) * sign_of(0);
    CHECK(q.reduce(rel).is_zero());
    for (const auto& w : q.build_graded_basis(2).basis)
        CHECK(q.reduce(NCPoly::monomial(w)) == NCPoly::monomial(w));
    CHECK(q.reduce(Z(sd, 1, 2)) == Z(sd, 1, 2));
    CHECK_THROWS_AS(q.reduce(NCPoly::letter(GenSymbol::tau())), DegreeMismatch);
}

TEST_CASE("reduction is idempotent and kills random ideal elements") {
    std::mt19937 rng(11);
    for (const SuperDim& sd : {SuperDim{1, 1}, SuperDim{2, 1}, SuperDim{1, 2}, SuperDim{2, 2}}) {
        QuotientRing q({sd, QuotientKind::Manin});
        int N = sd.size();
        for (int trial = 0; trial < 20; ++trial) {
            int d = 2 + int(rng() % 3);
            auto rel = manin_relation(sd, 1 + rng() % N, 1 + rng() % N, 1 + rng() % N, 1 + rng() % N);
            NCPoly left(1), right(1);
            int a = int(rng() % (d - 1));
            for (int x = 0; x < a; ++x) left = multiply(left, Z(sd, 1 + rng() % N, 1 + rng() % N));
            for (int x = 0; x < d - 2 - a; ++x) right = multiply(right, Z(sd, 1 + rng() % N, 1 + rng() % N));
            auto elem = multiply(multiply(left, rel), right);
            CHECK(q.reduce(elem).is_zero());
            NCPoly w(1);
            for (int x = 0; x < d; ++x) w = multiply(w, Z(sd, 1 + rng() % N, 1 + rng() % N));
            auto r = q.reduce(w + elem);
            CHECK(q.reduce(r) == r);
            CHECK(r == q.reduce(w));
        }
    }
}

TEST_CASE("affine relations") {
    SuperDim sd{1, 1};
    QuotientRing q({sd, QuotientKind::AffineRight});
    // p = 1 carries no relation
    CHECK(affine_relation(sd, Family::ZA, -1, 1, 1, 2, 2, 1).is_zero());
    auto rel = affine_relation(sd, Family::ZA, -1, 3, 1, 2, 2, 1);
    CHECK(!rel.is_zero());
    CHECK(q.reduce(rel).is_zero());
    CHECK(q.reduce(NCPoly::letter(GenSymbol::za(sd, 2, 1, 1))) ==
          NCPoly::letter(GenSymbol::za(sd, 2, 1, 1)));
}

TEST_CASE("structural maps") {
    for (const SuperDim& sd : {SuperDim{1, 0}, SuperDim{0, 1}, SuperDim{1, 1}, SuperDim{2, 0}}) {
        CHECK(check_generic_is_manin(sd).pass);
        CHECK(verify_evaluation_embedding(sd, 3).pass);
        CHECK(verify_omega(sd, 3).pass);
        CHECK(verify_zeta(sd, 3).pass);
        CHECK(verify_power_commutators(sd, 3).pass);
    }
}

TEST_CASE("omega on one even dimension") {
    SuperDim sd{1, 0};
    auto rep = verify_omega(sd, 2);
    CHECK(rep.pass);
    // ω(z2) = z1² - z2 is checked inside; cross-check the expansion by hand
    FreeAlgebra fa;
    SeriesAlgebra<FreeAlgebra> sa(fa, 2);
    MatrixSeries<FreeAlgebra> z(1, 1, Series<NCPoly>::zero(fa, 2));
    auto z1 = NCPoly::letter(GenSymbol::za(sd, 1, 1, 1));
    auto z2 = NCPoly::letter(GenSymbol::za(sd, 2, 1, 1));
    z(1, 1).c = {NCPoly(1), -z1, z2};
    auto w = invert(sa, z);
    CHECK(w(1, 1).c[1] == z1);
    CHECK(w(1, 1).c[2] == multiply(z1, z1) - z2);
}

TEST_CASE("caps are enforced") {
    QuotientLimits lim;
    lim.degree_cap = 2;
    QuotientRing q({{1, 1}, QuotientKind::Manin}, lim);
    SuperDim sd{1, 1};
    auto w = multiply(multiply(Z(sd, 1, 1), Z(sd, 1, 2)), Z(sd, 2, 1));
    CHECK_THROWS_AS(q.reduce(w), CapExceeded);
    QuotientLimits tiny;
    tiny.dense_guard = 10;
    QuotientRing q2({{1, 1}, QuotientKind::Manin}, tiny);
    CHECK_THROWS_AS(q2.reduce(multiply(Z(sd, 1, 2), Z(sd, 2, 1))), CapExceeded);
}
