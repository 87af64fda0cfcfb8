#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "superalg/algebra.hpp"
#include "superalg/ncpoly.hpp"
#include "superalg/report.hpp"

namespace superalg {

enum class QuotientKind {
    Manin,        // M_{m|n}: generators z_ij, quadratic relations
    AffineRight,  // generators z^(r)_ij, r >= 1
    AffineLeft,   // generators y^(r)_ij, left quantum relations
};

struct QuotientSpec {
    SuperDim sd;
    QuotientKind kind = QuotientKind::Manin;
    std::string name() const;
};

struct QuotientLimits {
    int degree_cap = 4;
    long long dense_guard = 2000000;  // words x relation rows per component
};

// Limits with the SUPERALG_DEGREE_CAP / SUPERALG_DENSE_GUARD environment overrides applied.
QuotientLimits limits_from_env(QuotientLimits base = {});

// [z_ij, z_kl] - [z_kj, z_il](-1)^{īj̄+īk̄+j̄k̄}
NCPoly manin_relation(const SuperDim& sd, int i, int j, int k, int l);
// Coefficient of u^p in the affine right (sign = -1) or left (sign = +1) relations.
NCPoly affine_relation(const SuperDim& sd, Family family, int sign, int p, int i, int j, int k,
                       int l);

struct ComponentStats {
    long long words = 0;
    long long relations = 0;  // rank of the relation span
    long long quotient = 0;
};

struct GradedNormalForm {
    int degree = 0;
    ComponentStats dims;
    std::vector<Word> basis;  // normal words, canonical order
};

// Normal forms in a quadratic quotient by per-component row reduction.
// The ideal is homogeneous for (length, u-degree, row content, column content);
// each such component is reduced independently and cached.
class QuotientRing {
public:
    explicit QuotientRing(QuotientSpec spec, QuotientLimits limits = {});
    ~QuotientRing();
    QuotientRing(QuotientRing&&) noexcept;

    const QuotientSpec& spec() const { return spec_; }
    const QuotientLimits& limits() const { return limits_; }

    NCPoly reduce(const NCPoly& p) const;
    bool is_zero(const NCPoly& p) const { return reduce(p).is_zero(); }

    // Full degree-d piece (length d for Manin, u-degree d for the affine kinds).
    GradedNormalForm build_graded_basis(int d) const;
    // Totals over all components touched by reduce() so far.
    ComponentStats touched_stats() const;

private:
    struct Component;
    const Component& component(const Word& sample) const;

    QuotientSpec spec_;
    QuotientLimits limits_;
    mutable std::map<std::string, std::unique_ptr<Component>> cache_;
};

struct QuotientAlgebra : NCPolyAlgebraBase<QuotientAlgebra> {
    const QuotientRing* ring;
    explicit QuotientAlgebra(const QuotientRing& q) : ring(&q) {}
    Elem mul(const Elem& a, const Elem& b) const { return multiply(a, b); }
    Elem normalize(const Elem& a) const { return ring->reduce(a); }
};

// (1 - P12)[Z1, Z2] = 0 over the given algebra.
template <class Alg>
bool is_manin(const Alg& alg, const SuperDim& sd, const Matrix<typename Alg::Elem>& z);

// Checks of the structural maps; all reports carry dims of the touched components.
CheckReport check_generic_is_manin(const SuperDim& sd, QuotientLimits limits = {});
CheckReport verify_evaluation_embedding(const SuperDim& sd, int cap, QuotientLimits limits = {});
CheckReport verify_omega(const SuperDim& sd, int cap, QuotientLimits limits = {});
CheckReport verify_zeta(const SuperDim& sd, int cap, QuotientLimits limits = {});
// (1 - P12) Σ_{k+l=r} [Z1^k, Z2^l] = 0 for r <= rmax.
CheckReport verify_power_commutators(const SuperDim& sd, int rmax, QuotientLimits limits = {});

}  // namespace superalg

#include "superalg/tensor.hpp"

namespace superalg {

template <class Alg>
bool is_manin(const Alg& alg, const SuperDim& sd, const Matrix<typename Alg::Elem>& z) {
    auto z1 = embed_matrix(alg, sd, 2, 1, z);
    auto z2 = embed_matrix(alg, sd, 2, 2, z);
    auto comm = tensor_add(alg, tensor_mul(alg, z1, z2), tensor_mul(alg, z2, z1), -1);
    auto p = transposition_op(alg, sd, 2, 1, 2);
    auto lhs = tensor_add(alg, comm, tensor_mul(alg, p, comm), -1);
    return tensor_is_zero(alg, lhs);
}

}  // namespace superalg
