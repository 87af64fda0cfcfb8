#include "superalg/pbw.hpp"

#include <algorithm>

namespace superalg {

namespace {

int delta(int a, int b) { return a == b ? 1 : 0; }

bool is_e(const GenSymbol& g) { return g.family() == Family::E; }

}  // namespace

NCPoly CurrentPresentation::bracket(const GenSymbol& a, const GenSymbol& b) const {
    if (a.is_central() || b.is_central()) return {};
    const Family fa = a.family(), fb = b.family();
    auto bad = [&] { throw UsageError("no bracket for " + a.str() + ", " + b.str()); };
    if (fa == Family::E && fb == Family::E) {
        const int i = a.i(), j = a.j(), k = b.i(), l = b.j();
        const int r = a.mode(), s = b.mode();
        NCPoly out;
        if (k == j) out.add_term({GenSymbol::e(sd, r + s, i, l)}, 1);
        if (i == l) {
            const int p = (sd.parity(i) + sd.parity(j)) * (sd.parity(k) + sd.parity(l));
            out.add_term({GenSymbol::e(sd, r + s, k, j)}, -sign_of(p));
        }
        if (r != 0 && r + s == 0) {
            Rational c = delta(k, j) * delta(i, l) * sign_of(sd.parity(i));
            // m = n: the singular term is absent
            if (sd.m != sd.n && i == j && k == l)
                c -= Rational(sign_of(sd.parity(i) + sd.parity(k))) / Rational(sd.m - sd.n);
            out.add_term({GenSymbol::level()}, c * r);
        }
        return out;
    }
    if (fa == Family::Tau && fb == Family::E)
        return NCPoly::letter(GenSymbol::e(sd, b.mode() - 1, b.i(), b.j()), -b.mode());
    if (fa == Family::E && fb == Family::Tau) return -bracket(b, a);
    if (fa == Family::D && fb == Family::E) return NCPoly::letter(b, b.mode());
    if (fa == Family::E && fb == Family::D) return -bracket(b, a);
    // d = t∂_t and τ = −∂_t
    if (fa == Family::D && fb == Family::Tau) return NCPoly::letter(b, -1);
    if (fa == Family::Tau && fb == Family::D) return NCPoly::letter(a, 1);
    if ((fa == Family::Tau || fa == Family::D) && fa == fb) return {};
    bad();
    return {};
}

NCPoly CurrentPresentation::bracket(const NCPoly& a, const NCPoly& b) const {
    NCPoly out;
    for (const auto& [wa, ca] : a) {
        if (wa.size() > 1) throw UsageError("bracket needs linear input");
        if (wa.empty()) continue;
        for (const auto& [wb, cb] : b) {
            if (wb.size() > 1) throw UsageError("bracket needs linear input");
            if (wb.empty()) continue;
            out += bracket(wa[0], wb[0]) * Rational(ca * cb);
        }
    }
    return out;
}

PbwAlgebra::PbwAlgebra(SuperDim sd, PbwOrder order, int window)
    : pres_{sd}, order_(order), window_(window < 0 ? default_window(sd) : window) {}

int PbwAlgebra::group(const GenSymbol& g) const {
    if (g.is_central()) return 0;
    switch (g.family()) {
        case Family::E: break;
        case Family::D: return order_ == PbwOrder::Standard ? 2 : 4;
        case Family::Tau: return order_ == PbwOrder::Standard ? 3 : 6;
        default: throw UsageError("letter " + g.str() + " is not a PBW generator");
    }
    if (order_ == PbwOrder::Standard) return 1;
    const int r = g.mode(), i = g.i(), j = g.j();
    const bool upper_neg = r < 0 && i < j;
    const bool lower = r <= 0 && i > j;
    if (r > 0 || (r == 0 && i < j)) return 5;
    if (r == 0 && i == j) return 4;
    if (r < 0 && i == j) return 2;
    if (order_ == PbwOrder::VermaUpperLeft) return upper_neg ? 1 : 3;
    return lower ? 1 : 3;
}

uint64_t PbwAlgebra::order_key(const GenSymbol& g) const {
    const uint64_t grp = uint64_t(group(g)) << 56;
    if (g.is_central()) return g.key() >> 28;
    if (!is_e(g)) return grp;
    return grp | (uint64_t(g.mode() + 32768) << 32) | (uint64_t(g.i()) << 16) | uint64_t(g.j());
}

bool PbwAlgebra::is_normal(const Word& w) const {
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        const auto a = order_key(w[k]), b = order_key(w[k + 1]);
        if (a > b) return false;
        if (a == b && w[k].parity()) return false;
    }
    return true;
}

void PbwAlgebra::check_window(const GenSymbol& g) const {
    if (is_e(g) && std::abs(g.mode()) > window_)
        throw WindowError("mode " + std::to_string(g.mode()) + " of " + g.str() +
                          " outside window " + std::to_string(window_));
}

const NCPoly& PbwAlgebra::normal_word(const Word& w) const {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    NCPoly result;
    std::size_t k = 0;
    for (; k + 1 < w.size(); ++k) {
        const auto a = order_key(w[k]), b = order_key(w[k + 1]);
        if (a > b || (a == b && w[k].parity())) break;
    }
    if (k + 1 >= w.size()) {
        result = NCPoly::monomial(w);
    } else {
        const GenSymbol a = w[k], b = w[k + 1];
        Word prefix(w.begin(), w.begin() + k), suffix(w.begin() + k + 2, w.end());
        NCPoly br = pres_.bracket(a, b);
        for (const auto& [bw, bc] : br)
            for (const auto& g : bw) check_window(g);
        NCPoly rest;
        if (a == b) {
            // odd square: aa = [a,a]/2
            br.accumulate_into(rest, prefix, suffix, Rational(1, 2));
        } else {
            Word swapped = prefix;
            swapped.push_back(b);
            swapped.push_back(a);
            swapped.insert(swapped.end(), suffix.begin(), suffix.end());
            rest.add_term(swapped, sign_of(a.parity() * b.parity()));
            br.accumulate_into(rest, prefix, suffix, 1);
        }
        for (const auto& [rw, rc] : rest) result += normal_word(rw) * rc;
    }
    return memo_.emplace(w, std::move(result)).first->second;
}

NCPoly PbwAlgebra::normal_order(const NCPoly& p) const {
    NCPoly out;
    for (const auto& [w, c] : p) {
        for (const auto& g : w) check_window(g);
        out += normal_word(w) * c;
    }
    return out;
}

NCPoly PbwAlgebra::supercommutator(const NCPoly& a, const NCPoly& b) const {
    return normal_order(superalg::supercommutator(a, b));
}

int default_window(const SuperDim& sd, int needed) {
    const int base = sd.size() <= 2 ? 6 : 4;
    return std::max(base, needed);
}

Weight Weight::symbolic(const SuperDim& sd) {
    Weight w;
    for (int i = 1; i <= sd.size(); ++i) w.lambda.push_back(NCPoly::letter(GenSymbol::lambda(i)));
    w.level = Rational(sd.n - sd.m);
    return w;
}

Weight Weight::numeric(const SuperDim& sd, const std::vector<Rational>& values) {
    if (int(values.size()) != sd.size()) throw UsageError("weight needs m+n components");
    Weight w;
    for (const auto& v : values) w.lambda.emplace_back(v);
    w.level = Rational(sd.n - sd.m);
    return w;
}

VermaModule::VermaModule(SuperDim sd, Weight weight, PbwOrder order, int window)
    : sd_(sd), weight_(std::move(weight)), alg_(sd, order, window) {
    if (order == PbwOrder::Standard) throw UsageError("Verma module needs a triangular order");
    if (int(weight_.lambda.size()) != sd.size()) throw UsageError("weight needs m+n components");
}

NCPoly VermaModule::apply_to_highest(const NCPoly& p) const {
    NCPoly out;
    for (const auto& [w, c] : p) {
        NCPoly factor(c);
        Word keep;
        bool dead = false;
        for (const auto& g : w) {
            const int grp = alg_.group(g);
            if (g.family() == Family::Tau) throw UsageError("τ does not act on the Verma module");
            if (g.family() == Family::Level) {
                factor *= weight_.level;
            } else if (grp == 5) {
                dead = true;
                break;
            } else if (grp == 4) {
                // d acts by b, which is irrelevant and taken to be 0
                if (g.family() == Family::D) {
                    dead = true;
                    break;
                }
                factor = multiply(factor, weight_.lambda[g.i() - 1]);
            } else {
                keep.push_back(g);
            }
        }
        if (dead) continue;
        out += multiply(factor, NCPoly::monomial(keep));
    }
    return alg_.normal_order(out);
}

NCPoly VermaModule::act(const NCPoly& x, const NCPoly& v) const {
    return apply_to_highest(alg_.normal_order(multiply(x, v)));
}

NCPoly VermaModule::hc_project(const NCPoly& v) const {
    NCPoly out;
    for (const auto& [w, c] : alg_.normal_order(v)) {
        bool diagonal = true;
        for (const auto& g : w) {
            const int grp = alg_.group(g);
            if (grp >= 4) throw UsageError("hc_project: input not in U(n̂_-)");
            if (grp != 0 && grp != 2) diagonal = false;
        }
        if (diagonal) out.add_term(w, c);
    }
    return out;
}

VacuumModule::VacuumModule(SuperDim sd, Rational level, int window)
    : level_(std::move(level)), alg_(sd, PbwOrder::Standard, window) {}

NCPoly VacuumModule::project(const NCPoly& p) const {
    NCPoly out;
    for (const auto& [w, c] : p) {
        Rational coeff = c;
        Word keep;
        bool dead = false;
        for (const auto& g : w) {
            if (g.family() == Family::Tau) throw UsageError("τ does not act on the vacuum module");
            if (g.family() == Family::Level) {
                coeff *= level_;
            } else if (g.family() == Family::D || (is_e(g) && g.mode() >= 0)) {
                dead = true;
                break;
            } else {
                keep.push_back(g);
            }
        }
        if (!dead) out.add_term(keep, coeff);
    }
    return out;
}

NCPoly VacuumModule::act(const NCPoly& x, const NCPoly& v) const {
    return project(alg_.normal_order(multiply(x, v)));
}

Rational rho_component(const SuperDim& sd, int i) {
    return i <= sd.m ? Rational(sd.m - i) : Rational(-(i - sd.m - 1));
}

bool is_generic_critical(const SuperDim& sd, const Weight& weight, int bound) {
    const int N = sd.size();
    if (int(weight.lambda.size()) != N) throw UsageError("weight needs m+n components");
    std::vector<Rational> lam;
    for (const auto& l : weight.lambda) {
        if (l.max_length() > 0) throw UsageError("is_generic_critical needs numeric components");
        lam.push_back(l.constant_term());
    }
    if (weight.level != Rational(sd.n - sd.m)) return false;
    auto s = [&](int i) { return sign_of(sd.parity(i)); };
    // the δ-part of (λ+ρ, kδ+ε_i−ε_j) is k(κ+m−n), zero at the critical level
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) continue;
            const Rational lhs = s(i) * (lam[i - 1] + rho_component(sd, i)) -
                                 s(j) * (lam[j - 1] + rho_component(sd, j));
            const Rational norm = s(i) + s(j);
            // i > j only occurs with k >= 1; the value does not depend on k
            for (int p = 1; p <= bound; ++p)
                if (lhs == Rational(p) * norm / 2) return false;
        }
    return true;
}

}  // namespace superalg
