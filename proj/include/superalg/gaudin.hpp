#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/report.hpp"
#include "superalg/sugawara.hpp"

namespace superalg {

// Sparse square matrix over Q, 0-based, only nonzero entries stored.
struct QMatrix {
    int n = 0;
    std::map<std::pair<int, int>, Rational> a;

    QMatrix() = default;
    explicit QMatrix(int dim) : n(dim) {}
    static QMatrix identity(int dim);
    static QMatrix unit(int dim, int i, int j);

    Rational at(int i, int j) const;
    void add_to(int i, int j, const Rational& c);
    bool is_zero() const { return a.empty(); }
    bool operator==(const QMatrix& o) const { return n == o.n && a == o.a; }
};

QMatrix operator+(const QMatrix& x, const QMatrix& y);
QMatrix operator-(const QMatrix& x, const QMatrix& y);
QMatrix operator*(const QMatrix& x, const QMatrix& y);
QMatrix operator*(const QMatrix& x, const Rational& c);
QMatrix commutator(const QMatrix& x, const QMatrix& y);
// -1 for the zero matrix or a matrix that is not parity homogeneous.
int matrix_parity(const QMatrix& x, const std::vector<int>& parity);
std::string qmatrix_str(const QMatrix& x);

// A gl_{m|n}-module on a graded basis with e_ij given as matrices, evaluated at `point`.
struct EvaluationModule {
    SuperDim sd;
    std::vector<int> parity;
    std::vector<QMatrix> e;  // e[(i-1)(m+n) + j-1]
    Rational point = 0;

    int dim() const { return int(parity.size()); }
    const QMatrix& op(int i, int j) const { return e[std::size_t(i - 1) * sd.size() + (j - 1)]; }
};

EvaluationModule natural_module(const SuperDim& sd, const Rational& point = 0);
// Exhaustive supercommutator check over all pairs of basis elements.
CheckReport check_module_relations(const EvaluationModule& mod);
QMatrix casimir(const EvaluationModule& mod);
// The scalar by which the Casimir acts, if it is scalar.
std::optional<Rational> casimir_eigenvalue(const EvaluationModule& mod);

// Graded tensor product; basis tuples ordered with the first factor most significant.
struct TensorModule {
    SuperDim sd;
    std::vector<int> parity;
    std::vector<std::vector<QMatrix>> e;  // e[r][(i-1)(m+n) + j-1] = e_ij acting in factor r

    int dim() const { return int(parity.size()); }
    int factors() const { return int(e.size()); }
    const QMatrix& op(int r, int i, int j) const {
        return e[r][std::size_t(i - 1) * sd.size() + (j - 1)];
    }
};

TensorModule tensor_product(const std::vector<EvaluationModule>& mods);
// Coproduct action of Σ x_ij e_ij.
QMatrix tensor_action(const std::vector<EvaluationModule>& mods, const Matrix<Rational>& x);

// Σ_{(r,p)} M_{r,p} (z - a_r)^{-p}; the key (-1, 0) holds the constant term.
using RatOp = std::map<std::pair<int, int>, QMatrix>;
// Σ_l c_l(z) ∂_z^l.
using DiffOp = std::map<int, RatOp>;

// Poles are at points[r]. DiffOp elements form an algebra in the sense of algebra.hpp.
struct GaudinAlgebra {
    using Elem = DiffOp;
    std::vector<Rational> points;
    std::vector<int> basis_parity;

    int dim() const { return int(basis_parity.size()); }

    RatOp rat_add(const RatOp& x, const RatOp& y, const Rational& cy = 1) const;
    RatOp rat_mul(const RatOp& x, const RatOp& y) const;
    RatOp rat_derivative(const RatOp& x) const;
    RatOp rat_constant(const QMatrix& m) const;
    QMatrix rat_evaluate(const RatOp& x, const Rational& z) const;

    Elem zero() const { return {}; }
    Elem one() const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return scale(a, -1); }
    Elem scale(const Elem& a, const Rational& c) const;
    Elem mul(const Elem& a, const Elem& b) const;
    bool is_zero(const Elem& a) const { return a.empty(); }
    int parity_of(const Elem& a) const;
    int parity(const Elem& a) const { return std::max(0, parity_of(a)); }
    Elem normalize(const Elem& a) const { return a; }
};

// Numerator polynomial matrix Σ N_d z^d and denominator Π (z - a_r)^{p_r}.
struct ClearedRatOp {
    std::map<int, QMatrix> numerator;
    std::vector<Rational> denominator;  // coefficients, lowest degree first
};
ClearedRatOp clear_denominators(const GaudinAlgebra& alg, const RatOp& x);
// Cross-multiplied comparison of the cleared forms.
bool cleared_equal(const GaudinAlgebra& alg, const RatOp& x, const RatOp& y);
std::string ratop_str(const GaudinAlgebra& alg, const RatOp& x);

struct GaudinSystem {
    SuperDim sd;
    std::vector<EvaluationModule> modules;
    TensorModule tensor;
    Matrix<Rational> shift;  // K; diag(λ) for a λ-shift
    GaudinAlgebra alg;

    bool shifted() const;
};

// Points are taken from the modules. Throws CoincidentPoints on repeated points and
// UsageError on a shift with odd nonzero entries.
GaudinSystem make_system(const SuperDim& sd, std::vector<EvaluationModule> modules,
                         const std::optional<Matrix<Rational>>& shift = std::nullopt);
GaudinSystem natural_system(const SuperDim& sd, const std::vector<Rational>& points,
                            const std::vector<Rational>& lambda = {});

// ℓ_ij(z) = δ_ij ∂_z - (-1)^ī (K_ij + Σ_r e^(r)_ij / (z - a_r)).
Matrix<DiffOp> build_L(const GaudinSystem& sys);

// Ĥ(z) by the double sum, Ĥ^(r) and the residue check.
RatOp quadratic_hamiltonian(const GaudinSystem& sys);
std::vector<QMatrix> h_r_operators(const GaudinSystem& sys);
CheckReport check_quadratic_hamiltonian(const GaudinSystem& sys);

struct GaudinFamily {
    FamilyKind kind = FamilyKind::S;
    int kmax = 0;
    std::map<std::pair<int, int>, RatOp> coeff;  // coefficient of ∂^{k-l}
};

constexpr int kGaudinCap = 4;

std::vector<GaudinFamily> higher_hamiltonians(const GaudinSystem& sys, int kmax);
// Pairwise commutativity of all matrix coefficients of all families and Σ_kl = B_kl.
CheckReport check_higher_hamiltonians(const GaudinSystem& sys, int kmax);

}  // namespace superalg
