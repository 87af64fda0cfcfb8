#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <string>

#include "superalg/rational.hpp"
#include "superalg/symbol.hpp"

namespace superalg {

using Word = boost::container::small_vector<GenSymbol, 6>;

// Shorter words first, then lexicographic in the symbol order.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    }
};

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = w.size();
        for (const auto& g : w) h = h * 1000003u ^ std::hash<uint64_t>{}(g.key());
        return h;
    }
};

int word_parity(const Word& w);
Word concat(const Word& a, const Word& b);
std::string word_str(const Word& w);

enum class Grading { Length, UDegree, Mode };

int symbol_degree(const GenSymbol& g, Grading grading);
int word_degree(const Word& w, Grading grading);

// Element of the free associative algebra over Q on GenSymbol letters.
class NCPoly {
public:
    using Terms = std::map<Word, Rational, WordLess>;

    NCPoly() = default;
    NCPoly(const Rational& c);
    NCPoly(int c) : NCPoly(Rational(c)) {}
    static NCPoly letter(const GenSymbol& g, const Rational& c = 1);
    static NCPoly monomial(const Word& w, const Rational& c = 1);

    void add_term(const Word& w, const Rational& c);
    const Terms& terms() const { return terms_; }
    Terms::const_iterator begin() const { return terms_.begin(); }
    Terms::const_iterator end() const { return terms_.end(); }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Word& w) const;
    Rational constant_term() const { return coeff(Word{}); }

    // Parity of the leading term; -1 for zero.
    int parity() const;
    bool is_parity_homogeneous() const;
    NCPoly parity_part(int p) const;
    int max_length() const;

    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly& operator*=(const Rational& c);
    NCPoly operator-() const;
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const Rational& c) { return a *= c; }
    friend NCPoly operator*(const Rational& c, NCPoly a) { return a *= c; }
    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

    // Add c * prefix . (this) . suffix into out.
    void accumulate_into(NCPoly& out, const Word& prefix, const Word& suffix,
                         const Rational& c) const;

    std::string str() const;

private:
    Terms terms_;
};

// Free (concatenation) product.
NCPoly multiply(const NCPoly& a, const NCPoly& b);
// ab - (-1)^{|a||b|} ba, applied to parity-homogeneous parts.
NCPoly supercommutator(const NCPoly& a, const NCPoly& b);
NCPoly graded_component(const NCPoly& p, Grading grading, int d);
// Replace letters through `subst`; letters mapped to themselves when subst returns false.
NCPoly substitute(const NCPoly& p, const std::function<bool(const GenSymbol&, NCPoly&)>& subst,
                  const std::function<NCPoly(const NCPoly&, const NCPoly&)>& mul = multiply);

// Inverse of str(); letters need the super dimension for parities.
NCPoly parse_ncpoly(const std::string& text, const SuperDim& sd);
GenSymbol parse_symbol(const std::string& text, const SuperDim& sd);

// Sort the letters of every word with Koszul signs; odd squares vanish.
// This is the normal form in the free supercommutative algebra.
NCPoly supercommutative_normal_form(const NCPoly& p);

}  // namespace superalg
