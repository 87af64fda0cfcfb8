#pragma once

#include <gmpxx.h>

#include <string>

namespace superalg {

// gmp keeps results of arithmetic canonical; the two-argument constructor
// is the one place where it does not, so it is wrapped here.
class Rational : public mpq_class {
public:
    using mpq_class::mpq_class;
    Rational() = default;
    Rational(int num, int den) : mpq_class(num, den) { canonicalize(); }
    Rational(long num, long den) : mpq_class(num, den) { canonicalize(); }
    Rational(const mpq_class& q) : mpq_class(q) {}
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text);

inline Rational sign_of(int parity) { return (parity & 1) ? Rational(-1) : Rational(1); }

Rational factorial(int k);
Rational binomial(int n, int k);

}  // namespace superalg
