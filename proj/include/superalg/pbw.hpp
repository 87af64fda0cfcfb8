#pragma once

#include <unordered_map>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/ncpoly.hpp"

namespace superalg {

// Supercommutators of the generators e_ij[r], τ, K, d of ĝl_{m|n} ⊕ Cτ ⊕ Cd.
struct CurrentPresentation {
    SuperDim sd;

    NCPoly bracket(const GenSymbol& a, const GenSymbol& b) const;
    // Bilinear extension to linear combinations of generators (and constants).
    NCPoly bracket(const NCPoly& a, const NCPoly& b) const;
    Rational critical_level() const { return Rational(sd.n - sd.m); }
};

enum class PbwOrder {
    Standard,        // modes ascending, then (i,j); d and τ last
    VermaUpperLeft,  // t^{-1}n[t^{-1}], t^{-1}h[t^{-1}], n_-[t^{-1}], then ĥ, then n̂
    VermaLowerLeft,  // n_-[t^{-1}] first, t^{-1}n[t^{-1}] last among creation letters
};

// Straightening to ordered monomials; central letters (K, λ_i, ...) are placed first.
class PbwAlgebra : public NCPolyAlgebraBase<PbwAlgebra> {
public:
    explicit PbwAlgebra(SuperDim sd, PbwOrder order = PbwOrder::Standard, int window = -1);

    const SuperDim& dim() const { return pres_.sd; }
    const CurrentPresentation& presentation() const { return pres_; }
    PbwOrder order() const { return order_; }
    int window() const { return window_; }

    // Group of a letter in the ordering: 0 central, then increasing to the right.
    int group(const GenSymbol& g) const;
    uint64_t order_key(const GenSymbol& g) const;
    bool is_normal(const Word& w) const;

    NCPoly normal_order(const NCPoly& p) const;
    Elem mul(const Elem& a, const Elem& b) const { return normal_order(multiply(a, b)); }
    Elem normalize(const Elem& a) const { return normal_order(a); }
    NCPoly supercommutator(const NCPoly& a, const NCPoly& b) const;

private:
    const NCPoly& normal_word(const Word& w) const;
    void check_window(const GenSymbol& g) const;

    CurrentPresentation pres_;
    PbwOrder order_;
    int window_;
    mutable std::unordered_map<Word, NCPoly, WordHash> memo_;
};

// Default t-degree window (used when a negative window is passed): 6 for m+n <= 2, 4 for m+n = 3, raised to `needed` if larger.
int default_window(const SuperDim& sd, int needed = 0);

// Weight λ restricted to the data that acts: components (numeric or symbolic) and the level.
struct Weight {
    std::vector<NCPoly> lambda;  // lambda[i-1] = λ_i
    Rational level;

    static Weight symbolic(const SuperDim& sd);
    static Weight numeric(const SuperDim& sd, const std::vector<Rational>& values);
};

class VermaModule {
public:
    VermaModule(SuperDim sd, Weight weight, PbwOrder order = PbwOrder::VermaUpperLeft,
                int window = -1);

    const PbwAlgebra& algebra() const { return alg_; }
    const Weight& weight() const { return weight_; }

    // x·v for v in U(n̂_-) 1_λ, returned in U(n̂_-) normal form.
    NCPoly act(const NCPoly& x, const NCPoly& v) const;
    // Straightened element applied to 1_λ: ĥ acts by λ and K by the level, n̂ kills.
    NCPoly apply_to_highest(const NCPoly& p) const;
    // Keeps monomials in U(t^{-1}h[t^{-1}]); rejects input outside U(n̂_-).
    NCPoly hc_project(const NCPoly& v) const;

private:
    SuperDim sd_;
    Weight weight_;
    PbwAlgebra alg_;
};

class VacuumModule {
public:
    VacuumModule(SuperDim sd, Rational level, int window = -1);
    const PbwAlgebra& algebra() const { return alg_; }
    // Straightened x·v with gl[t]·1 = 0, d·1 = 0 and K acting by the level.
    NCPoly act(const NCPoly& x, const NCPoly& v) const;
    NCPoly project(const NCPoly& p) const;

private:
    Rational level_;
    PbwAlgebra alg_;
};

// ρ_i of the affine Weyl vector restricted to h.
Rational rho_component(const SuperDim& sd, int i);
// Critical level and (λ+ρ, α) ≠ (p/2)(α,α) for all positive real roots α = kδ+ε_i−ε_j
// with k <= bound and 1 <= p <= bound. Throws UsageError on symbolic components.
bool is_generic_critical(const SuperDim& sd, const Weight& weight, int bound);

}  // namespace superalg
