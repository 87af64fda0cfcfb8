#pragma once

#include <string>
#include <vector>

#include "superalg/gaudin.hpp"
#include "superalg/report.hpp"
#include "superalg/sugawara.hpp"

namespace superalg {

// Bos and Ferm truncated at degree d, reduced in M_{m|n}, built by tensor contraction.
std::vector<NCPoly> bos_series(const SuperDim& sd, int d);
std::vector<NCPoly> ferm_series(const SuperDim& sd, int d);
// Ber(1 + uZ) for the generic Manin matrix, reduced.
std::vector<NCPoly> berezinian_series(const SuperDim& sd, int d);
// "1 - u*z[1,1]" style rendering of Σ u^k c_k.
std::string series_str(const std::vector<NCPoly>& c);

// Degree-d components of Bos x Ferm vanish in M_{m|n} for d = 1..deg.
CheckReport suite_mmm(const SuperDim& sd, int deg);
// Absorption A Z A = A Z, H Z H = Z H and the multiset expansions against contraction.
CheckReport suite_expansions(const SuperDim& sd, int kmax);
// Ber expansions, Newton identity and factorizations for the generic quotient and for T.
CheckReport suite_berezinian(const SuperDim& sd, int generic_order, int t_order);
CheckReport suite_manin_T(const SuperDim& sd);
// All four families annihilated at the given level and b = σ.
CheckReport suite_sugawara(const SuperDim& sd, int kmax, const Rational& level);
// Expected failure one step off the critical level; passes when a witness is found.
CheckReport suite_off_critical(const SuperDim& sd);
CheckReport suite_commutativity(const SuperDim& sd, int kmax);
// Route (a) = route (b) and the displayed σ^λ_11, h^λ_11 values.
CheckReport suite_singular(const SuperDim& sd, int kmax, int R);
CheckReport suite_det_lambda(const SuperDim& sd);
CheckReport suite_generators(const SuperDim& sd, const std::vector<Rational>& lambda, int R);
CheckReport suite_newton(const SuperDim& sd, int kmax, int R);
CheckReport suite_gaudin(const SuperDim& sd, const std::vector<std::string>& modules,
                         const std::vector<Rational>& points, int kmax,
                         const std::vector<Rational>& lambda);

// Collects reports into one; fails if any part fails.
CheckReport combine(const std::string& identity, const std::vector<CheckReport>& parts);

// A fixed generic weight for m+n components.
std::vector<Rational> default_generic_weight(const SuperDim& sd);

}  // namespace superalg
