#pragma once

#include <vector>

#include "superalg/errors.hpp"
#include "superalg/ncpoly.hpp"
#include "superalg/rational.hpp"

namespace superalg {

// An algebra object supplies the ring operations for its element type:
//   zero one add sub neg scale mul is_zero parity normalize
// Elements are assumed parity homogeneous wherever parity() is consulted.

template <class Derived>
struct NCPolyAlgebraBase {
    using Elem = NCPoly;
    Elem zero() const { return {}; }
    Elem one() const { return NCPoly(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem scale(const Elem& a, const Rational& c) const { return a * c; }
    int parity(const Elem& a) const { return a.is_zero() ? 0 : a.parity(); }
    bool is_zero(const Elem& a) const {
        return static_cast<const Derived*>(this)->normalize(a).is_zero();
    }
    Elem normalize(const Elem& a) const { return a; }
};

struct FreeAlgebra : NCPolyAlgebraBase<FreeAlgebra> {
    Elem mul(const Elem& a, const Elem& b) const { return multiply(a, b); }
};

// Free supercommutative algebra on the letters in use (Grassmann for odd letters).
struct SuperCommAlgebra : NCPolyAlgebraBase<SuperCommAlgebra> {
    Elem mul(const Elem& a, const Elem& b) const {
        return supercommutative_normal_form(multiply(a, b));
    }
    Elem normalize(const Elem& a) const { return supercommutative_normal_form(a); }
};

struct ScalarAlgebra {
    using Elem = Rational;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem scale(const Elem& a, const Rational& c) const { return a * c; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    int parity(const Elem&) const { return 0; }
    Elem normalize(const Elem& a) const { return a; }
};

// Dense matrix with 1-based accessors.
template <class E>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<E> data;

    Matrix() = default;
    Matrix(int r, int c, const E& fill) : rows(r), cols(c), data(std::size_t(r) * c, fill) {}

    E& operator()(int i, int j) { return data[std::size_t(i - 1) * cols + (j - 1)]; }
    const E& operator()(int i, int j) const { return data[std::size_t(i - 1) * cols + (j - 1)]; }
};

template <class Alg>
Matrix<typename Alg::Elem> identity_matrix(const Alg& alg, int n) {
    Matrix<typename Alg::Elem> m(n, n, alg.zero());
    for (int i = 1; i <= n; ++i) m(i, i) = alg.one();
    return m;
}

template <class Alg>
Matrix<typename Alg::Elem> matmul(const Alg& alg, const Matrix<typename Alg::Elem>& a,
                                  const Matrix<typename Alg::Elem>& b) {
    if (a.cols != b.rows) throw DegreeMismatch("matrix shapes do not match");
    Matrix<typename Alg::Elem> c(a.rows, b.cols, alg.zero());
    for (int i = 1; i <= a.rows; ++i)
        for (int j = 1; j <= b.cols; ++j) {
            auto acc = alg.zero();
            for (int k = 1; k <= a.cols; ++k) {
                if (alg.is_zero(a(i, k)) || alg.is_zero(b(k, j))) continue;
                acc = alg.add(acc, alg.mul(a(i, k), b(k, j)));
            }
            c(i, j) = acc;
        }
    return c;
}

template <class Alg>
Matrix<typename Alg::Elem> matadd(const Alg& alg, const Matrix<typename Alg::Elem>& a,
                                  const Matrix<typename Alg::Elem>& b) {
    Matrix<typename Alg::Elem> c = a;
    for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] = alg.add(a.data[k], b.data[k]);
    return c;
}

template <class Alg>
Matrix<typename Alg::Elem> matpow(const Alg& alg, const Matrix<typename Alg::Elem>& a, int k) {
    auto r = identity_matrix(alg, a.rows);
    for (int p = 0; p < k; ++p) r = matmul(alg, r, a);
    return r;
}

template <class Alg>
bool matrix_is_zero(const Alg& alg, const Matrix<typename Alg::Elem>& a) {
    for (const auto& e : a.data)
        if (!alg.is_zero(e)) return false;
    return true;
}

// The generic matrix Z = [z_ij] over the free algebra.
Matrix<NCPoly> generic_matrix(const SuperDim& sd);
// The affine coefficient matrices Z^(r) = [z^(r)_ij].
Matrix<NCPoly> generic_affine_matrix(const SuperDim& sd, int r);

}  // namespace superalg
