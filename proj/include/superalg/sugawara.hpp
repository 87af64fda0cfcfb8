#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/pbw.hpp"
#include "superalg/report.hpp"

namespace superalg {

// T = τ + Ê[-1] with entries δ_ij τ + e_ij[-1](-1)^ī.
Matrix<NCPoly> build_T(const SuperDim& sd);

enum class FamilyKind { S, Sigma, H, B };
std::string family_name(FamilyKind kind);
FamilyKind parse_family(const std::string& name);

// Coefficients x_{kl} of x_{k0}τ^k + ... + x_{kk}, each in U(t^{-1}gl[t^{-1}]).
struct SugawaraFamily {
    FamilyKind kind = FamilyKind::S;
    SuperDim sd;
    int kmax = 0;
    std::map<std::pair<int, int>, NCPoly> coeff;

    const NCPoly& at(int k, int l) const { return coeff.at({k, l}); }
};

// Coefficient of τ^{k-l}, l = 0..k, in an element whose τ letters are all on the right.
std::vector<NCPoly> split_tau(const NCPoly& p, int k);

SugawaraFamily compute_family(const SuperDim& sd, FamilyKind kind, int kmax, int window = -1);

// e_ij[0]·v and e_ij[1]·v in the vacuum module at level κ, for all i, j.
CheckReport check_segal_sugawara(const SuperDim& sd, const NCPoly& v, const Rational& level,
                                 int window = -1);
// Every coefficient of every family is annihilated at κ = n - m.
CheckReport check_family_annihilation(const SugawaraFamily& fam, const Rational& level);
// [x, y] = 0 for all pairs of coefficients drawn from the given families.
CheckReport check_pairwise_commutativity(const std::vector<SugawaraFamily>& families,
                                         int window = -1);

// Commutative Laurent polynomials in z and differential operators Σ a_l(z) ∂^l.
// Coefficients are NCPoly in central or pairwise commuting even letters.
using ZSeries = std::map<int, NCPoly>;
using DiffOperator = std::map<int, ZSeries>;

// t-degree: Σ -r over the letters e_ij[r].
int t_degree(const Word& w);
NCPoly drop_above_degree(const NCPoly& p, int max_degree);
// Product in the commutative coefficient ring.
NCPoly comm_mul(const NCPoly& a, const NCPoly& b);
DiffOperator diffop_compose(const DiffOperator& a, const DiffOperator& b, int max_degree);
DiffOperator diffop_add(const DiffOperator& a, const DiffOperator& b, const Rational& cb = 1);
bool diffop_equal(const DiffOperator& a, const DiffOperator& b);
std::string diffop_str(const DiffOperator& d);

// Image coefficient x^λ_{kl}[r]: the z^{-r-l} coefficient of the ∂^{k-l} term.
NCPoly diffop_coefficient(const DiffOperator& d, int k, int l, int r);

// Route (a): normally ordered field products applied to 1_λ and projected by HC.
// Only Sigma, H and S are supported. Coefficients of t-degree above R are dropped.
DiffOperator hc_image_fields(const SuperDim& sd, FamilyKind kind, int k, int R,
                             const Weight& weight);
// Route (b): ordered products of first-order operators over admissible multisets.
// `indices` restricts the diagonal indices used (all of 1..m+n when null).
// For S the product route is combined through s_k = Σ (-1)^l (l+1) h_{k-l-1} σ_{l+1}.
DiffOperator hc_image_product(const SuperDim& sd, FamilyKind kind, int k, int R,
                              const std::vector<NCPoly>& lambda,
                              const std::vector<int>* indices = nullptr);

CheckReport check_hc_routes(const SuperDim& sd, int kmax, int R);
CheckReport check_recurrences(const SuperDim& sd, int kmax, int R);
CheckReport newton_singular_check(const SuperDim& sd, int kmax, int R);

// Shifted complete and elementary symmetric polynomials in commuting polynomial arguments.
// With `literal_range` the elementary sum runs over l > i_1 > ... > i_a > 1 as printed;
// otherwise over l >= i_1 > ... > i_a >= 1.
NCPoly shifted_h(int a, const std::vector<NCPoly>& xs);
NCPoly shifted_e(int a, const std::vector<NCPoly>& xs, bool literal_range = false);

// Λ_{ki} in λ_1..λ_{m+n} and the parameter r (the Param letter).
Matrix<NCPoly> lambda_matrix(const SuperDim& sd, bool literal_range = false);
NCPoly poly_det(const Matrix<NCPoly>& a);
NCPoly lambda_det_product(const SuperDim& sd);
// Evaluates λ letters and r in a polynomial.
NCPoly evaluate_poly(const NCPoly& p, const std::vector<NCPoly>& lambda, const NCPoly& r);
// Checks det Λ against the product formula; reports which e_a reading was used.
CheckReport det_lambda_check(const SuperDim& sd, int max_size = 4);

// Linear part of σ^λ_kk[r] equals Λ, Λ is invertible, and every e_ii[r] with r >= -R is a
// polynomial in the σ^λ_kk[p]; the same for h^λ_kk through the reindexing to gl_{n|m}.
CheckReport generator_theorem_check(const SuperDim& sd, const std::vector<Rational>& lambda,
                                    int R, int bound = 10);
CheckReport check_h_reindexing(const SuperDim& sd, int R);

}  // namespace superalg
