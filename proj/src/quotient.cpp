#include "superalg/quotient.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "superalg/series.hpp"

namespace superalg {

std::string QuotientSpec::name() const {
    std::ostringstream os;
    switch (kind) {
        case QuotientKind::Manin: os << "M"; break;
        case QuotientKind::AffineRight: os << "affine-right"; break;
        case QuotientKind::AffineLeft: os << "affine-left"; break;
    }
    os << "(" << sd.m << "|" << sd.n << ")";
    return os.str();
}

QuotientLimits limits_from_env(QuotientLimits base) {
    if (const char* s = std::getenv("SUPERALG_DEGREE_CAP")) base.degree_cap = std::atoi(s);
    if (const char* s = std::getenv("SUPERALG_DENSE_GUARD")) base.dense_guard = std::atoll(s);
    return base;
}

namespace {

int rel_sign(const SuperDim& sd, int i, int j, int k) {
    int pi = sd.parity(i), pj = sd.parity(j), pk = sd.parity(k);
    return (pi & pj) ^ (pi & pk) ^ (pj & pk);
}

}  // namespace

NCPoly manin_relation(const SuperDim& sd, int i, int j, int k, int l) {
    auto z = [&](int a, int b) { return NCPoly::letter(GenSymbol::z(sd, a, b)); };
    return supercommutator(z(i, j), z(k, l)) -
           supercommutator(z(k, j), z(i, l)) * sign_of(rel_sign(sd, i, j, k));
}

NCPoly affine_relation(const SuperDim& sd, Family family, int sign, int p, int i, int j, int k,
                       int l) {
    auto g = [&](int r, int a, int b) {
        return NCPoly::letter(GenSymbol::make(family, r, a, b, sd.parity(a) + sd.parity(b)));
    };
    NCPoly out;
    Rational s = sign_of(rel_sign(sd, i, j, k)) * sign;
    for (int r = 1; r < p; ++r) {
        out += supercommutator(g(r, i, j), g(p - r, k, l));
        out += supercommutator(g(r, k, j), g(p - r, i, l)) * s;
    }
    return out;
}

struct QuotientRing::Component {
    std::vector<Word> words;
    std::unordered_map<Word, int, WordHash> index;
    std::map<int, std::map<int, Rational>> pivots;  // pivot column -> row (pivot coeff 1)
    long long relation_rows = 0;
};

QuotientRing::QuotientRing(QuotientSpec spec, QuotientLimits limits)
    : spec_(spec), limits_(limits) {}
QuotientRing::~QuotientRing() = default;
QuotientRing::QuotientRing(QuotientRing&&) noexcept = default;

namespace {

struct ComponentKey {
    Family family;
    int length;
    int udeg;
    std::vector<int> rows, cols;

    std::string str() const {
        std::ostringstream os;
        os << int(family) << ":" << length << ":" << udeg << ":";
        for (int r : rows) os << r << ",";
        os << ":";
        for (int c : cols) os << c << ",";
        return os.str();
    }
};

ComponentKey key_of(const Word& w) {
    ComponentKey k{w.empty() ? Family::Z : w[0].family(), int(w.size()), 0, {}, {}};
    for (const auto& g : w) {
        k.udeg += symbol_degree(g, Grading::UDegree);
        k.rows.push_back(g.i());
        k.cols.push_back(g.j());
    }
    std::sort(k.rows.begin(), k.rows.end());
    std::sort(k.cols.begin(), k.cols.end());
    return k;
}

Family family_of(QuotientKind kind) {
    switch (kind) {
        case QuotientKind::Manin: return Family::Z;
        case QuotientKind::AffineRight: return Family::ZA;
        case QuotientKind::AffineLeft: return Family::Y;
    }
    return Family::Z;
}

std::vector<Word> enumerate_component(const SuperDim& sd, const ComponentKey& key) {
    std::map<int, int> rows, cols;
    for (int r : key.rows) ++rows[r];
    for (int c : key.cols) ++cols[c];
    bool affine = key.family != Family::Z;
    std::vector<Word> out;
    Word cur;
    std::function<void(int)> rec = [&](int used) {
        int left = key.length - int(cur.size());
        if (left == 0) {
            if (!affine || used == key.udeg) out.push_back(cur);
            return;
        }
        for (auto& [r, cr] : rows) {
            if (!cr) continue;
            for (auto& [c, cc] : cols) {
                if (!cc) continue;
                --cr;
                --cc;
                if (affine) {
                    int maxr = key.udeg - used - (left - 1);
                    for (int m = 1; m <= maxr; ++m) {
                        cur.push_back(
                            GenSymbol::make(key.family, m, r, c, sd.parity(r) + sd.parity(c)));
                        rec(used + m);
                        cur.pop_back();
                    }
                } else {
                    cur.push_back(GenSymbol::z(sd, r, c));
                    rec(used + 1);
                    cur.pop_back();
                }
                ++cr;
                ++cc;
            }
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), WordLess{});
    return out;
}

NCPoly relation_for_pair(const QuotientSpec& spec, const GenSymbol& a, const GenSymbol& b) {
    int i = a.i(), j = a.j(), k = b.i(), l = b.j();
    switch (spec.kind) {
        case QuotientKind::Manin: return manin_relation(spec.sd, i, j, k, l);
        case QuotientKind::AffineRight:
            return affine_relation(spec.sd, Family::ZA, -1, a.mode() + b.mode(), i, j, k, l);
        case QuotientKind::AffineLeft:
            return affine_relation(spec.sd, Family::Y, 1, a.mode() + b.mode(), i, j, k, l);
    }
    return {};
}

void reduce_row(std::map<int, Rational>& row, const std::map<int, std::map<int, Rational>>& piv) {
    int bound = INT_MAX;
    while (!row.empty()) {
        auto it = row.lower_bound(bound);
        if (it == row.begin()) break;
        --it;
        int c = it->first;
        auto pv = piv.find(c);
        if (pv != piv.end()) {
            Rational f = it->second;
            for (const auto& [col, v] : pv->second) {
                auto [pos, ins] = row.try_emplace(col, -f * v);
                if (!ins) {
                    pos->second -= f * v;
                    if (pos->second == 0) row.erase(pos);
                }
            }
        }
        bound = c;
    }
}

}  // namespace

const QuotientRing::Component& QuotientRing::component(const Word& sample) const {
    auto key = key_of(sample);
    std::string ks = key.str();
    auto it = cache_.find(ks);
    if (it != cache_.end()) return *it->second;
    if (key.udeg > limits_.degree_cap && spec_.kind != QuotientKind::Manin)
        throw CapExceeded("u-degree " + std::to_string(key.udeg) + " exceeds cap " +
                          std::to_string(limits_.degree_cap));
    if (spec_.kind == QuotientKind::Manin && key.length > limits_.degree_cap)
        throw CapExceeded("degree " + std::to_string(key.length) + " exceeds cap " +
                          std::to_string(limits_.degree_cap));
    auto comp = std::make_unique<Component>();
    comp->words = enumerate_component(spec_.sd, key);
    for (int a = 0; a < int(comp->words.size()); ++a) comp->index[comp->words[a]] = a;
    long long nrows = (long long)comp->words.size() * std::max(0, key.length - 1);
    if (nrows * (long long)comp->words.size() > limits_.dense_guard)
        throw CapExceeded("component " + ks + " needs " + std::to_string(nrows) + " x " +
                          std::to_string(comp->words.size()) + " entries");
    std::map<std::pair<uint64_t, uint64_t>, NCPoly> relcache;
    for (const auto& w : comp->words) {
        for (int p = 0; p + 1 < int(w.size()); ++p) {
            auto rk = std::make_pair(w[p].key(), w[p + 1].key());
            auto rit = relcache.find(rk);
            if (rit == relcache.end())
                rit = relcache.emplace(rk, relation_for_pair(spec_, w[p], w[p + 1])).first;
            if (rit->second.is_zero()) continue;
            Word prefix(w.begin(), w.begin() + p), suffix(w.begin() + p + 2, w.end());
            std::map<int, Rational> row;
            for (const auto& [rw, c] : rit->second) {
                int col = comp->index.at(concat(concat(prefix, rw), suffix));
                auto [pos, ins] = row.try_emplace(col, c);
                if (!ins) {
                    pos->second += c;
                    if (pos->second == 0) row.erase(pos);
                }
            }
            ++comp->relation_rows;
            reduce_row(row, comp->pivots);
            if (row.empty()) continue;
            Rational lead = row.rbegin()->second;
            for (auto& [c, v] : row) v /= lead;
            comp->pivots.emplace(row.rbegin()->first, std::move(row));
        }
    }
    return *cache_.emplace(ks, std::move(comp)).first->second;
}

NCPoly QuotientRing::reduce(const NCPoly& p) const {
    Family fam = family_of(spec_.kind);
    std::map<std::string, std::vector<std::pair<Word, Rational>>> parts;
    NCPoly out;
    for (const auto& [w, c] : p) {
        for (const auto& g : w)
            if (g.family() != fam)
                throw DegreeMismatch("letter " + g.str() + " is not a generator of " +
                                     spec_.name());
        if (w.size() < 2) {
            out.add_term(w, c);
            continue;
        }
        parts[key_of(w).str()].emplace_back(w, c);
    }
    for (const auto& [ks, terms] : parts) {
        const auto& comp = component(terms.front().first);
        std::map<int, Rational> row;
        for (const auto& [w, c] : terms) row[comp.index.at(w)] += c;
        for (auto it = row.begin(); it != row.end();) {
            if (it->second == 0) it = row.erase(it);
            else ++it;
        }
        reduce_row(row, comp.pivots);
        for (const auto& [col, v] : row) out.add_term(comp.words[col], v);
    }
    return out;
}

GradedNormalForm QuotientRing::build_graded_basis(int d) const {
    GradedNormalForm nf;
    nf.degree = d;
    const SuperDim& sd = spec_.sd;
    int N = sd.size();
    Family fam = family_of(spec_.kind);
    std::vector<int> lengths;
    if (spec_.kind == QuotientKind::Manin) lengths = {d};
    else
        for (int L = 1; L <= d; ++L) lengths.push_back(L);
    for (int L : lengths) {
        // all sorted row/column contents of size L
        std::vector<std::vector<int>> contents;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int lo) {
            if (int(cur.size()) == L) {
                contents.push_back(cur);
                return;
            }
            for (int v = lo; v <= N; ++v) {
                cur.push_back(v);
                rec(v);
                cur.pop_back();
            }
        };
        rec(1);
        for (const auto& R : contents)
            for (const auto& C : contents) {
                ComponentKey key{fam, L, spec_.kind == QuotientKind::Manin ? L : d, R, C};
                auto words = enumerate_component(sd, key);
                if (words.empty()) continue;
                if (L < 2) {
                    nf.dims.words += words.size();
                    nf.dims.quotient += words.size();
                    nf.basis.insert(nf.basis.end(), words.begin(), words.end());
                    continue;
                }
                const auto& comp = component(words.front());
                nf.dims.words += comp.words.size();
                nf.dims.relations += comp.pivots.size();
                for (int a = 0; a < int(comp.words.size()); ++a)
                    if (!comp.pivots.count(a)) nf.basis.push_back(comp.words[a]);
            }
    }
    nf.dims.quotient = (long long)nf.basis.size();
    std::sort(nf.basis.begin(), nf.basis.end(), WordLess{});
    return nf;
}

ComponentStats QuotientRing::touched_stats() const {
    ComponentStats s;
    for (const auto& [k, c] : cache_) {
        s.words += c->words.size();
        s.relations += c->pivots.size();
    }
    s.quotient = s.words - s.relations;
    return s;
}

namespace {

nlohmann::json dims_json(const ComponentStats& s) {
    return {{"words", s.words}, {"relations", s.relations}, {"quotient", s.quotient}};
}

nlohmann::json dim_config(const SuperDim& sd) { return {{"m", sd.m}, {"n", sd.n}}; }

}  // namespace

CheckReport check_generic_is_manin(const SuperDim& sd, QuotientLimits limits) {
    CheckReport rep;
    rep.identity = "generic matrix is Manin";
    rep.config = dim_config(sd);
    QuotientRing q({sd, QuotientKind::Manin}, limits);
    QuotientAlgebra alg(q);
    if (!is_manin(alg, sd, generic_matrix(sd))) rep.fail("(1-P12)[Z1,Z2] does not vanish");
    rep.details["dims"] = dims_json(q.touched_stats());
    return rep;
}

CheckReport verify_evaluation_embedding(const SuperDim& sd, int cap, QuotientLimits limits) {
    CheckReport rep;
    rep.identity = "evaluation and embedding";
    rep.config = dim_config(sd);
    rep.config["cap"] = cap;
    limits.degree_cap = std::max(limits.degree_cap, cap);
    QuotientRing manin({sd, QuotientKind::Manin}, limits);
    QuotientRing affine({sd, QuotientKind::AffineRight}, limits);
    int N = sd.size();
    auto evaluation = [&](const GenSymbol& g, NCPoly& out) {
        out = g.mode() == 1 ? NCPoly::letter(GenSymbol::z(sd, g.i(), g.j())) : NCPoly();
        return true;
    };
    auto embedding = [&](const GenSymbol& g, NCPoly& out) {
        out = NCPoly::letter(GenSymbol::za(sd, 1, g.i(), g.j()));
        return true;
    };
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    for (int p = 2; p <= cap; ++p) {
                        auto rel = affine_relation(sd, Family::ZA, -1, p, i, j, k, l);
                        auto img = substitute(rel, evaluation);
                        if (!manin.is_zero(img))
                            rep.fail("evaluation image of relation p=" + std::to_string(p) +
                                     " (" + std::to_string(i) + std::to_string(j) +
                                     std::to_string(k) + std::to_string(l) + "): " + img.str());
                    }
                    auto srq = manin_relation(sd, i, j, k, l);
                    auto emb = substitute(srq, embedding);
                    if (!affine.is_zero(emb))
                        rep.fail("embedded relation does not vanish: " + emb.str());
                }
            auto g = NCPoly::letter(GenSymbol::z(sd, i, j));
            auto round = substitute(substitute(g, embedding), evaluation);
            if (!(round == g)) rep.fail("evaluation after embedding moves " + g.str());
        }
    rep.details["dims_manin"] = dims_json(manin.touched_stats());
    rep.details["dims_affine"] = dims_json(affine.touched_stats());
    return rep;
}

namespace {

// Z(u) = 1 + Σ_{r≤cap} Z^(r) u^r as a matrix series over the free algebra.
Matrix<Series<NCPoly>> affine_series(const SuperDim& sd, Family family, int cap) {
    FreeAlgebra fa;
    int N = sd.size();
    Matrix<Series<NCPoly>> z(N, N, Series<NCPoly>::zero(fa, cap));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            auto& s = z(i, j);
            if (i == j) s.c[0] = NCPoly(1);
            for (int r = 1; r <= cap; ++r)
                s.c[r] = NCPoly::letter(
                    GenSymbol::make(family, r, i, j, sd.parity(i) + sd.parity(j)));
        }
    return z;
}

Matrix<Series<NCPoly>> negate_u(const Matrix<Series<NCPoly>>& z) {
    auto out = z;
    for (auto& s : out.data)
        for (std::size_t r = 1; r < s.c.size(); r += 2) s.c[r] = -s.c[r];
    return out;
}

}  // namespace

CheckReport verify_omega(const SuperDim& sd, int cap, QuotientLimits limits) {
    CheckReport rep;
    rep.identity = "omega involution";
    rep.config = dim_config(sd);
    rep.config["cap"] = cap;
    limits.degree_cap = std::max(limits.degree_cap, cap);
    QuotientRing affine({sd, QuotientKind::AffineRight}, limits);
    FreeAlgebra fa;
    SeriesAlgebra<FreeAlgebra> sa(fa, cap);
    int N = sd.size();
    auto w = invert(sa, negate_u(affine_series(sd, Family::ZA, cap)));
    auto omega = [&](const GenSymbol& g, NCPoly& out) {
        out = w(g.i(), g.j()).c[g.mode()];
        return true;
    };
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            auto z1 = NCPoly::letter(GenSymbol::za(sd, 1, i, j));
            if (!(w(i, j).c[1] == z1)) rep.fail("omega moves " + z1.str());
            for (int r = 1; r <= cap; ++r) {
                auto g = NCPoly::letter(GenSymbol::za(sd, r, i, j));
                auto back = substitute(w(i, j).c[r], omega);
                if (!affine.is_zero(back - g))
                    rep.fail("omega^2 differs on " + g.str() + ": " + affine.reduce(back).str());
            }
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l)
                    for (int p = 2; p <= cap; ++p) {
                        auto rel = affine_relation(sd, Family::ZA, -1, p, i, j, k, l);
                        auto img = substitute(rel, omega);
                        if (!affine.is_zero(img))
                            rep.fail("omega image of a relation survives: " +
                                     affine.reduce(img).str());
                    }
        }
    rep.details["dims"] = dims_json(affine.touched_stats());
    return rep;
}

CheckReport verify_zeta(const SuperDim& sd, int cap, QuotientLimits limits) {
    CheckReport rep;
    rep.identity = "zeta isomorphism";
    rep.config = dim_config(sd);
    rep.config["cap"] = cap;
    limits.degree_cap = std::max(limits.degree_cap, cap);
    QuotientRing affine({sd, QuotientKind::AffineRight}, limits);
    FreeAlgebra fa;
    SeriesAlgebra<FreeAlgebra> sa(fa, cap);
    int N = sd.size();
    auto zinv = invert(sa, affine_series(sd, Family::ZA, cap));
    SuperDim dual = sd.swapped();
    auto zeta = [&](const GenSymbol& g, NCPoly& out) {
        out = zinv(N - g.i() + 1, N - g.j() + 1).c[g.mode()];
        return true;
    };
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l)
                    for (int p = 2; p <= cap; ++p) {
                        auto rel = affine_relation(dual, Family::Y, 1, p, i, j, k, l);
                        auto img = substitute(rel, zeta);
                        if (!affine.is_zero(img))
                            rep.fail("zeta image of a left relation survives: " +
                                     affine.reduce(img).str());
                    }
    rep.details["dims"] = dims_json(affine.touched_stats());
    return rep;
}

CheckReport verify_power_commutators(const SuperDim& sd, int rmax, QuotientLimits limits) {
    CheckReport rep;
    rep.identity = "power commutators";
    rep.config = dim_config(sd);
    rep.config["rmax"] = rmax;
    limits.degree_cap = std::max(limits.degree_cap, rmax);
    QuotientRing q({sd, QuotientKind::Manin}, limits);
    QuotientAlgebra alg(q);
    FreeAlgebra fa;
    auto z = generic_matrix(sd);
    std::vector<Matrix<NCPoly>> pw{identity_matrix(fa, sd.size())};
    for (int k = 1; k <= rmax; ++k) pw.push_back(matmul(fa, pw.back(), z));
    auto p12 = transposition_op(fa, sd, 2, 1, 2);
    for (int r = 1; r <= rmax; ++r) {
        TensorOp<NCPoly> sum{sd, 2, {}};
        for (int k = 0; k <= r; ++k) {
            auto a = embed_matrix(fa, sd, 2, 1, pw[k]);
            auto b = embed_matrix(fa, sd, 2, 2, pw[r - k]);
            sum = tensor_add(fa, sum, tensor_mul(fa, a, b));
            sum = tensor_add(fa, sum, tensor_mul(fa, b, a), -1);
        }
        auto lhs = tensor_add(fa, sum, tensor_mul(fa, p12, sum), -1);
        for (const auto& [key, v] : lhs.entries)
            if (!alg.is_zero(v)) {
                rep.fail("r=" + std::to_string(r) + ": " + q.reduce(v).str());
                break;
            }
    }
    rep.details["dims"] = dims_json(q.touched_stats());
    return rep;
}

}  // namespace superalg
