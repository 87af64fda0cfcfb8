#include "doctest.h"
#include "superalg/gaudin.hpp"
#include "superalg/quotient.hpp"
#include "superalg/tensor.hpp"

using namespace superalg;

namespace {

const std::vector<SuperDim> kDims = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {1, 2}};

Matrix<Rational> unit_coeffs(const SuperDim& sd, int i, int j) {
    Matrix<Rational> x(sd.size(), sd.size(), Rational(0));
    x(i, j) = 1;
    return x;
}

// Dense product of evaluated matrices, independent of the sparse code path.
QMatrix dense_mul(const QMatrix& x, const QMatrix& y) {
    QMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            Rational acc = 0;
            for (int k = 0; k < x.n; ++k) acc += x.at(i, k) * y.at(k, j);
            if (acc != 0) r.a[{i, j}] = acc;
        }
    return r;
}

}  // namespace

TEST_CASE("natural module: relations and Casimir") {
    for (const auto& sd : kDims) {
        auto mod = natural_module(sd);
        CHECK(check_module_relations(mod).pass);
        auto delta = casimir_eigenvalue(mod);
        REQUIRE(delta.has_value());
        CHECK(*delta == Rational(sd.m - sd.n + 1));
    }
    auto mod = natural_module({1, 1});
    // both odd: the bracket is the anticommutator
    auto anti = mod.op(1, 2) * mod.op(2, 1) + mod.op(2, 1) * mod.op(1, 2);
    CHECK(anti == mod.op(1, 1) + mod.op(2, 2));
    CHECK(mod.op(2, 2) == QMatrix::unit(2, 1, 1));
}

TEST_CASE("module relation check rejects a wrong sign") {
    auto mod = natural_module({1, 1});
    mod.e[1] = mod.e[1] * Rational(-1);
    mod.e[2] = mod.e[2] * Rational(1);
    auto bad = mod;
    // e12 -> e12, e21 -> 2 e21 breaks [e12, e21] = e11 + e22
    bad.e[2] = natural_module({1, 1}).e[2] * Rational(2);
    bad.e[1] = natural_module({1, 1}).e[1];
    CHECK_FALSE(check_module_relations(bad).pass);
}

TEST_CASE("tensor action") {
    SUBCASE("single factor") {
        SuperDim sd{2, 1};
        std::vector<EvaluationModule> one{natural_module(sd)};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                CHECK(tensor_action(one, unit_coeffs(sd, i, j)) == one[0].op(i, j));
    }
    SUBCASE("weights add") {
        SuperDim sd{1, 1};
        std::vector<EvaluationModule> two{natural_module(sd, 0), natural_module(sd, 1)};
        auto h = tensor_action(two, unit_coeffs(sd, 1, 1));
        QMatrix expect(4);
        expect.a[{0, 0}] = 2;
        expect.a[{1, 1}] = 1;
        expect.a[{2, 2}] = 1;
        CHECK(h == expect);
    }
    SUBCASE("homomorphism on basis pairs") {
        for (auto sd : {SuperDim{1, 1}, SuperDim{2, 1}}) {
            std::vector<EvaluationModule> mods;
            for (int r = 0; r < 3; ++r) mods.push_back(natural_module(sd, r));
            EvaluationModule total;
            total.sd = sd;
            total.parity = tensor_product(mods).parity;
            for (int i = 1; i <= sd.size(); ++i)
                for (int j = 1; j <= sd.size(); ++j)
                    total.e.push_back(tensor_action(mods, unit_coeffs(sd, i, j)));
            CHECK(check_module_relations(total).pass);
        }
    }
    SUBCASE("factors supercommute") {
        SuperDim sd{1, 1};
        auto t = tensor_product({natural_module(sd, 0), natural_module(sd, 1)});
        // odd operators in different factors anticommute
        auto a = t.op(0, 1, 2), b = t.op(1, 2, 1);
        CHECK((a * b + b * a).is_zero());
        CHECK_FALSE((a * b).is_zero());
    }
}

TEST_CASE("partial fractions against pointwise evaluation") {
    GaudinAlgebra alg;
    alg.points = {Rational(0), Rational(1), Rational(-3, 2)};
    alg.basis_parity = {0, 0};
    auto M = [](int a, int b, int c, int d) {
        QMatrix m(2);
        m.add_to(0, 0, a);
        m.add_to(0, 1, b);
        m.add_to(1, 0, c);
        m.add_to(1, 1, d);
        return m;
    };
    RatOp x, y;
    x[{-1, 0}] = M(1, 0, 2, 1);
    x[{0, 2}] = M(0, 1, 1, 0);
    x[{1, 1}] = M(3, -1, 0, 2);
    y[{2, 3}] = M(1, 1, 0, 1);
    y[{0, 1}] = M(2, 0, -1, 1);
    y[{1, 2}] = M(0, 0, 1, 5);
    auto xy = alg.rat_mul(x, y);
    auto dx = alg.rat_derivative(x);
    for (auto z : {Rational(2), Rational(1, 3), Rational(-7, 5), Rational(11)}) {
        CHECK(alg.rat_evaluate(xy, z) == dense_mul(alg.rat_evaluate(x, z), alg.rat_evaluate(y, z)));
        // x'(z): constant vanishes, 1/z^2 -> -2/z^3, 1/(z-1) -> -1/(z-1)^2
        QMatrix expect = M(0, 1, 1, 0) * Rational(Rational(-2) / (z * z * z)) +
                         M(3, -1, 0, 2) * Rational(Rational(-1) / ((z - 1) * (z - 1)));
        CHECK(alg.rat_evaluate(dx, z) == expect);
    }
    SUBCASE("cleared form") {
        auto c = clear_denominators(alg, xy);
        for (auto z : {Rational(2), Rational(-7, 5)}) {
            Rational den = 0, pw = 1;
            for (const auto& d : c.denominator) {
                den += d * pw;
                pw *= z;
            }
            QMatrix num(2);
            for (const auto& [deg, m] : c.numerator) {
                Rational zp = 1;
                for (int q = 0; q < deg; ++q) zp *= z;
                num = num + m * zp;
            }
            CHECK(num * Rational(1 / den) == alg.rat_evaluate(xy, z));
        }
        CHECK(cleared_equal(alg, xy, xy));
        CHECK_FALSE(cleared_equal(alg, xy, x));
    }
}

TEST_CASE("differential operators") {
    GaudinAlgebra alg;
    alg.points = {Rational(0), Rational(2)};
    alg.basis_parity = {0};
    DiffOp d;
    d[1] = alg.rat_constant(QMatrix::identity(1));
    DiffOp f;
    f[0][{0, 1}] = QMatrix::identity(1);
    f[0][{1, 2}] = QMatrix::identity(1) * Rational(3);
    // [∂, f] = f'
    auto comm = alg.sub(alg.mul(d, f), alg.mul(f, d));
    DiffOp fp;
    fp[0] = alg.rat_derivative(f[0]);
    CHECK(comm == fp);
    // associativity
    auto g = alg.add(d, f);
    auto h = alg.add(alg.mul(d, d), alg.scale(f, 2));
    CHECK(alg.mul(alg.mul(g, h), f) == alg.mul(g, alg.mul(h, f)));
}

TEST_CASE("build_L") {
    SUBCASE("one module") {
        SuperDim sd{1, 1};
        auto sys = natural_system(sd, {Rational(5)});
        auto L = build_L(sys);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                DiffOp expect;
                expect[0][{0, 1}] = sys.tensor.op(0, i, j) * -sign_of(sd.parity(i));
                if (i == j) expect[1][{-1, 0}] = QMatrix::identity(2);
                CHECK(L(i, j) == expect);
            }
    }
    SUBCASE("shift only") {
        SuperDim sd{1, 1};
        auto sys = natural_system(sd, {}, {Rational(3), Rational(-2)});
        CHECK(sys.alg.dim() == 1);
        auto L = build_L(sys);
        CHECK(L(1, 2).empty());
        CHECK(L(1, 1).at(0).at({-1, 0}) == QMatrix::identity(1) * Rational(-3));
        // -(-1)^2̄ λ_2 = λ_2
        CHECK(L(2, 2).at(0).at({-1, 0}) == QMatrix::identity(1) * Rational(-2));
    }
    SUBCASE("two modules of gl(1|1)") {
        auto sys = natural_system({1, 1}, {Rational(0), Rational(1)});
        CHECK(sys.alg.dim() == 4);
        auto L = build_L(sys);
        CHECK(L(1, 2).at(0).size() == 2);
        CHECK(L(1, 2).at(0).count({0, 1}) == 1);
        CHECK(L(1, 2).at(0).count({1, 1}) == 1);
    }
    SUBCASE("coincident points") {
        CHECK_THROWS_AS(natural_system({1, 1}, {Rational(0), Rational(0)}), CoincidentPoints);
    }
    SUBCASE("odd shift is rejected") {
        SuperDim sd{1, 1};
        Matrix<Rational> K(2, 2, Rational(0));
        K(1, 2) = 1;
        CHECK_THROWS_AS(make_system(sd, {natural_module(sd)}, K), UsageError);
    }
}

TEST_CASE("L is a Manin matrix") {
    for (auto sd : {SuperDim{1, 1}, SuperDim{2, 0}}) {
        auto sys = natural_system(sd, {Rational(0), Rational(1)});
        CHECK(is_manin(sys.alg, sd, build_L(sys)));
    }
}

TEST_CASE("quadratic Hamiltonian") {
    SUBCASE("one module") {
        for (const auto& sd : kDims) {
            auto sys = natural_system(sd, {Rational(2)});
            RatOp expect;
            if (sd.m - sd.n + 1 != 0)
                expect[{0, 2}] = QMatrix::identity(sd.size()) * Rational(sd.m - sd.n + 1);
            CHECK(quadratic_hamiltonian(sys) == expect);
        }
    }
    SUBCASE("two gl(1|1) modules commute") {
        auto sys = natural_system({1, 1}, {Rational(0), Rational(1)});
        auto hr = h_r_operators(sys);
        REQUIRE(hr.size() == 2);
        CHECK(commutator(hr[0], hr[1]).is_zero());
        CHECK_FALSE(hr[0].is_zero());
    }
    SUBCASE("residue decomposition") {
        for (auto sd : {SuperDim{1, 1}, SuperDim{2, 1}, SuperDim{2, 0}})
            for (int R = 2; R <= 3; ++R) {
                std::vector<Rational> pts;
                for (int r = 0; r < R; ++r) pts.push_back(Rational(r * r + 1, r + 2));
                auto rep = check_quadratic_hamiltonian(natural_system(sd, pts));
                CHECK_MESSAGE(rep.pass, rep.counterexample);
                CHECK(rep.details["matches_s22"] == true);
                for (const auto& d : rep.details["delta"])
                    CHECK(d == Rational(sd.m - sd.n + 1).get_str());
            }
    }
}

TEST_CASE("first family member") {
    SuperDim sd{2, 1};
    auto sys = natural_system(sd, {Rational(0), Rational(3)});
    auto fams = higher_hamiltonians(sys, 1);
    const auto& s = fams[0];
    RatOp expect;
    for (int r = 0; r < 2; ++r) {
        QMatrix acc(sys.alg.dim());
        for (int i = 1; i <= 3; ++i) acc = acc - sys.tensor.op(r, i, i);
        expect[{r, 1}] = acc;
    }
    CHECK(s.coeff.at({1, 1}) == expect);
    CHECK(s.coeff.at({1, 0}) == sys.alg.rat_constant(QMatrix::identity(sys.alg.dim())));
    // Ĥ^(1) commutes with the diagonal action but not with a single factor
    auto h1 = h_r_operators(sys)[0];
    CHECK(commutator(h1, sys.tensor.op(0, 1, 2) + sys.tensor.op(1, 1, 2)).is_zero());
    CHECK_FALSE(commutator(h1, sys.tensor.op(0, 1, 2)).is_zero());
}

TEST_CASE("Sigma expansion agrees with direct contraction") {
    SuperDim sd{1, 1};
    auto sys = natural_system(sd, {Rational(0), Rational(1)});
    auto L = build_L(sys);
    for (int k = 1; k <= 2; ++k) {
        CHECK(sigma_expansion(sys.alg, sd, k, L) == symmetrized_trace(sys.alg, sd, k, L, true));
        CHECK(h_expansion(sys.alg, sd, k, L) == symmetrized_trace(sys.alg, sd, k, L, false));
    }
}

TEST_CASE("higher Hamiltonians commute") {
    struct Config {
        SuperDim sd;
        std::vector<Rational> points;
        std::vector<Rational> lambda;
    };
    std::vector<Config> configs = {
        {{1, 1}, {Rational(0), Rational(1)}, {}},
        {{1, 1}, {Rational(0), Rational(1), Rational(-1, 2)}, {}},
        {{1, 1}, {Rational(0), Rational(2)}, {Rational(1), Rational(-1)}},
        {{2, 0}, {Rational(0), Rational(1)}, {}},
        {{2, 0}, {Rational(1), Rational(-2)}, {Rational(1, 2), Rational(3)}},
        {{2, 1}, {Rational(0), Rational(1)}, {}},
        {{1, 0}, {Rational(0), Rational(1)}, {Rational(1)}},
    };
    for (const auto& c : configs) {
        auto rep = check_higher_hamiltonians(natural_system(c.sd, c.points, c.lambda), 3);
        CHECK_MESSAGE(rep.pass, rep.counterexample);
        CHECK(rep.details["sigma_equals_b"] == true);
        if (c.sd.size() > 1) CHECK(rep.details["pairs_checked"].get<int>() > 0);
    }
}

TEST_CASE("constant even shift keeps commutativity") {
    SuperDim sd{2, 1};
    Matrix<Rational> K(3, 3, Rational(0));
    K(1, 1) = 2;
    K(1, 2) = Rational(1, 3);
    K(2, 1) = -1;
    K(3, 3) = 5;
    std::vector<EvaluationModule> mods{natural_module(sd, 0), natural_module(sd, 1)};
    auto rep = check_higher_hamiltonians(make_system(sd, mods, K), 2);
    CHECK_MESSAGE(rep.pass, rep.counterexample);
}

TEST_CASE("kmax cap") {
    auto sys = natural_system({1, 1}, {Rational(0), Rational(1)});
    CHECK_THROWS_AS(higher_hamiltonians(sys, kGaudinCap + 1), CapExceeded);
}

TEST_CASE("three gl(2|1) modules") {
    auto rep = check_higher_hamiltonians(
        natural_system({2, 1}, {Rational(0), Rational(1), Rational(3)}, {Rational(1), Rational(-1), Rational(2)}), 3);
    CHECK_MESSAGE(rep.pass, rep.counterexample);
}

TEST_CASE("commutativity check catches a broken module") {
    SuperDim sd{2, 0};
    auto bad = natural_module(sd, 1);
    bad.e[1] = bad.e[1] * Rational(2);
    CHECK_FALSE(check_module_relations(bad).pass);
    auto rep = check_higher_hamiltonians(make_system(sd, {natural_module(sd, 0), bad}), 2);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.details["witnesses"].empty());
}
