#include <algorithm>
#include <cctype>
#include <sstream>

#include "superalg/errors.hpp"
#include "superalg/ncpoly.hpp"

namespace superalg {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty rational");
    Rational q;
    if (q.set_str(t, 10) != 0) throw ParseError("bad rational: " + text);
    q.canonicalize();
    return q;
}

Rational factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Rational b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

std::string GenSymbol::str() const {
    std::ostringstream os;
    switch (family()) {
        case Family::Lambda: os << "λ" << i(); break;
        case Family::Param: os << "r"; break;
        case Family::Level: os << "K"; break;
        case Family::Gen: os << (j() == 0 ? "sg{" : "hg{") << mode() << "}[" << i() << "]"; break;
        case Family::X: os << (parity() ? "w[" : "x[") << i() << "]"; break;
        case Family::Z: os << "z[" << i() << "," << j() << "]"; break;
        case Family::ZA: os << "z{" << mode() << "}[" << i() << "," << j() << "]"; break;
        case Family::Y: os << "y{" << mode() << "}[" << i() << "," << j() << "]"; break;
        case Family::E: os << "e{" << mode() << "}[" << i() << "," << j() << "]"; break;
        case Family::Tau: os << "tau"; break;
        case Family::D: os << "d"; break;
    }
    return os.str();
}

int word_parity(const Word& w) {
    int p = 0;
    for (const auto& g : w) p ^= g.parity();
    return p;
}

Word concat(const Word& a, const Word& b) {
    Word w;
    w.reserve(a.size() + b.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

std::string word_str(const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += '.';
        s += w[k].str();
    }
    return s;
}

int symbol_degree(const GenSymbol& g, Grading grading) {
    switch (grading) {
        case Grading::Length: return 1;
        case Grading::UDegree:
            if (g.family() == Family::Z) return 1;
            if (g.family() == Family::ZA || g.family() == Family::Y) return g.mode();
            return 0;
        case Grading::Mode:
            if (g.family() == Family::E) return g.mode();
            if (g.family() == Family::Tau) return -1;
            return 0;
    }
    return 0;
}

int word_degree(const Word& w, Grading grading) {
    int d = 0;
    for (const auto& g : w) d += symbol_degree(g, grading);
    return d;
}

NCPoly::NCPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Word{}, c);
}

NCPoly NCPoly::letter(const GenSymbol& g, const Rational& c) {
    return monomial(Word{g}, c);
}

NCPoly NCPoly::monomial(const Word& w, const Rational& c) {
    NCPoly p;
    p.add_term(w, c);
    return p;
}

void NCPoly::add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int NCPoly::parity() const {
    if (terms_.empty()) return -1;
    return word_parity(terms_.begin()->first);
}

bool NCPoly::is_parity_homogeneous() const {
    int p = parity();
    for (const auto& [w, c] : terms_)
        if (word_parity(w) != p) return false;
    return true;
}

NCPoly NCPoly::parity_part(int p) const {
    NCPoly r;
    for (const auto& [w, c] : terms_)
        if (word_parity(w) == p) r.terms_.emplace_hint(r.terms_.end(), w, c);
    return r;
}

int NCPoly::max_length() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max<int>(d, int(w.size()));
    return d;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCPoly& NCPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

NCPoly NCPoly::operator-() const {
    NCPoly r = *this;
    for (auto& [w, v] : r.terms_) v = -v;
    return r;
}

void NCPoly::accumulate_into(NCPoly& out, const Word& prefix, const Word& suffix,
                             const Rational& c) const {
    for (const auto& [w, v] : terms_) {
        Word x;
        x.reserve(prefix.size() + w.size() + suffix.size());
        x.insert(x.end(), prefix.begin(), prefix.end());
        x.insert(x.end(), w.begin(), w.end());
        x.insert(x.end(), suffix.begin(), suffix.end());
        out.add_term(x, v * c);
    }
}

std::string NCPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        std::string body;
        if (w.empty())
            body = a.get_str();
        else if (a == 1)
            body = word_str(w);
        else
            body = a.get_str() + " * " + word_str(w);
        if (first)
            s += neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

NCPoly multiply(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) r.add_term(concat(wa, wb), ca * cb);
    return r;
}

NCPoly supercommutator(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (int pa = 0; pa < 2; ++pa) {
        NCPoly x = a.parity_part(pa);
        if (x.is_zero()) continue;
        for (int pb = 0; pb < 2; ++pb) {
            NCPoly y = b.parity_part(pb);
            if (y.is_zero()) continue;
            r += multiply(x, y);
            r -= multiply(y, x) * sign_of(pa * pb);
        }
    }
    return r;
}

NCPoly graded_component(const NCPoly& p, Grading grading, int d) {
    NCPoly r;
    for (const auto& [w, c] : p)
        if (word_degree(w, grading) == d) r.add_term(w, c);
    return r;
}

NCPoly substitute(const NCPoly& p, const std::function<bool(const GenSymbol&, NCPoly&)>& subst,
                  const std::function<NCPoly(const NCPoly&, const NCPoly&)>& mul) {
    NCPoly r;
    for (const auto& [w, c] : p) {
        NCPoly acc(c);
        for (const auto& g : w) {
            NCPoly img;
            if (!subst(g, img)) img = NCPoly::letter(g);
            acc = mul(acc, img);
            if (acc.is_zero()) break;
        }
        r += acc;
    }
    return r;
}

NCPoly supercommutative_normal_form(const NCPoly& p) {
    NCPoly r;
    for (const auto& [w, c] : p) {
        Word x = w;
        int sign = 0;
        bool zero = false;
        // insertion sort, counting transpositions of odd letters
        for (std::size_t a = 1; a < x.size(); ++a) {
            std::size_t b = a;
            while (b > 0 && x[b] < x[b - 1]) {
                if (x[b].parity() && x[b - 1].parity()) sign ^= 1;
                std::swap(x[b], x[b - 1]);
                --b;
            }
        }
        for (std::size_t a = 1; a < x.size(); ++a)
            if (x[a] == x[a - 1] && x[a].parity()) zero = true;
        if (!zero) r.add_term(x, sign ? Rational(-c) : c);
    }
    return r;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Parses "{r}" at pos, returns r and advances pos.
int read_braced_int(const std::string& s, std::size_t& pos) {
    if (pos >= s.size() || s[pos] != '{') throw ParseError("expected '{' in " + s);
    auto close = s.find('}', pos);
    if (close == std::string::npos) throw ParseError("unterminated '{' in " + s);
    int v = std::stoi(s.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    return v;
}

std::vector<int> read_bracket_ints(const std::string& s, std::size_t& pos) {
    if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '[' in " + s);
    auto close = s.find(']', pos);
    if (close == std::string::npos) throw ParseError("unterminated '[' in " + s);
    std::vector<int> out;
    std::stringstream ss(s.substr(pos + 1, close - pos - 1));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    pos = close + 1;
    return out;
}

}  // namespace

GenSymbol parse_symbol(const std::string& text, const SuperDim& sd) {
    std::string s = strip(text);
    if (s == "tau") return GenSymbol::tau();
    if (s == "K") return GenSymbol::level();
    if (s == "d") return GenSymbol::d();
    if (s == "r") return GenSymbol::param();
    const std::string lam = "λ";
    try {
        if (s.rfind(lam, 0) == 0) return GenSymbol::lambda(std::stoi(s.substr(lam.size())));
        std::size_t pos = 0;
        auto check_index = [&](int i) {
            if (i < 1 || i > sd.size()) throw ParseError("index out of range in " + s);
        };
        auto pair_symbol = [&](Family f, int r) {
            auto ij = read_bracket_ints(s, pos);
            if (ij.size() != 2 || pos != s.size()) throw ParseError("bad letter " + s);
            check_index(ij[0]);
            check_index(ij[1]);
            return GenSymbol::make(f, r, ij[0], ij[1], sd.parity(ij[0]) + sd.parity(ij[1]));
        };
        if (s[0] == 'z') {
            pos = 1;
            if (pos < s.size() && s[pos] == '{') {
                int r = read_braced_int(s, pos);
                return pair_symbol(Family::ZA, r);
            }
            return pair_symbol(Family::Z, 0);
        }
        if (s[0] == 'y' || s[0] == 'e') {
            pos = 1;
            int r = read_braced_int(s, pos);
            return pair_symbol(s[0] == 'y' ? Family::Y : Family::E, r);
        }
        if (s.rfind("sg", 0) == 0 || s.rfind("hg", 0) == 0) {
            pos = 2;
            int r = read_braced_int(s, pos);
            auto k = read_bracket_ints(s, pos);
            if (k.size() != 1) throw ParseError("bad letter " + s);
            return GenSymbol::gen(s[0] == 'h' ? 1 : 0, k[0], r);
        }
        if (s[0] == 'x' || s[0] == 'w') {
            pos = 1;
            auto k = read_bracket_ints(s, pos);
            if (k.size() != 1) throw ParseError("bad letter " + s);
            return GenSymbol::x(k[0], s[0] == 'w' ? 1 : 0);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad letter " + s);
    } catch (const std::out_of_range&) {
        throw ParseError("bad letter " + s);
    }
    throw ParseError("unknown letter " + s);
}

NCPoly parse_ncpoly(const std::string& text, const SuperDim& sd) {
    std::vector<std::pair<int, std::string>> pieces;
    int depth = 0;
    int sign = 1;
    std::string cur;
    auto flush = [&]() {
        std::string t = strip(cur);
        if (!t.empty()) pieces.emplace_back(sign, t);
        else if (!pieces.empty() || sign != 1)
            throw ParseError("dangling sign in " + text);
        cur.clear();
    };
    for (char c : text) {
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            // a sign directly after '/' or '*' or at term start belongs to the term
            std::string t = strip(cur);
            if (t.empty() || t.back() == '*' || t.back() == '/') {
                if (t.empty()) {
                    if (c == '-') sign = -sign;
                    continue;
                }
                cur += c;
                continue;
            }
            flush();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        cur += c;
    }
    if (depth != 0) throw ParseError("unbalanced brackets in " + text);
    flush();
    if (pieces.empty()) throw ParseError("empty polynomial");
    NCPoly out;
    for (auto& [sg, body] : pieces) {
        Rational coeff = sg;
        std::string wordtext = body;
        auto star = body.find('*');
        if (star != std::string::npos) {
            coeff *= parse_rational(body.substr(0, star));
            wordtext = strip(body.substr(star + 1));
        } else if (std::isdigit(static_cast<unsigned char>(body[0]))) {
            out.add_term(Word{}, coeff * parse_rational(body));
            continue;
        }
        if (wordtext == "1") {
            out.add_term(Word{}, coeff);
            continue;
        }
        Word w;
        std::stringstream ss(wordtext);
        std::string item;
        int d2 = 0;
        std::string letter;
        for (char c : wordtext) {
            if (c == '{' || c == '[') ++d2;
            if (c == '}' || c == ']') --d2;
            if (c == '.' && d2 == 0) {
                w.push_back(parse_symbol(letter, sd));
                letter.clear();
            } else {
                letter += c;
            }
        }
        w.push_back(parse_symbol(letter, sd));
        out.add_term(w, coeff);
    }
    return out;
}

}  // namespace superalg
