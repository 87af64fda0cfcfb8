#include "superalg/gaudin.hpp"

#include <algorithm>
#include <climits>

#include "superalg/series.hpp"
#include "superalg/tensor.hpp"

namespace superalg {

QMatrix QMatrix::identity(int dim) {
    QMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.a[{i, i}] = 1;
    return m;
}

QMatrix QMatrix::unit(int dim, int i, int j) {
    QMatrix m(dim);
    m.a[{i, j}] = 1;
    return m;
}

Rational QMatrix::at(int i, int j) const {
    auto it = a.find({i, j});
    return it == a.end() ? Rational(0) : it->second;
}

void QMatrix::add_to(int i, int j, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = a.try_emplace({i, j}, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) a.erase(it);
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
    QMatrix r = x;
    r.n = std::max(x.n, y.n);
    for (const auto& [ij, c] : y.a) r.add_to(ij.first, ij.second, c);
    return r;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
    QMatrix r = x;
    r.n = std::max(x.n, y.n);
    for (const auto& [ij, c] : y.a) r.add_to(ij.first, ij.second, -c);
    return r;
}

QMatrix operator*(const QMatrix& x, const Rational& c) {
    QMatrix r(x.n);
    if (c == 0) return r;
    for (const auto& [ij, v] : x.a) r.a.emplace_hint(r.a.end(), ij, v * c);
    return r;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    if (x.n != y.n) throw DegreeMismatch("matrix sizes differ");
    QMatrix r(x.n);
    for (const auto& [ik, v] : x.a) {
        const int k = ik.second;
        for (auto it = y.a.lower_bound({k, INT_MIN}); it != y.a.end() && it->first.first == k; ++it)
            r.add_to(ik.first, it->first.second, v * it->second);
    }
    return r;
}

int matrix_parity(const QMatrix& x, const std::vector<int>& parity) {
    int p = -1;
    for (const auto& [ij, c] : x.a) {
        const int q = parity[ij.first] ^ parity[ij.second];
        if (p >= 0 && p != q) return -1;
        p = q;
    }
    return p;
}

QMatrix commutator(const QMatrix& x, const QMatrix& y) { return x * y - y * x; }

std::string qmatrix_str(const QMatrix& x) {
    std::string s = "{";
    bool first = true;
    for (const auto& [ij, c] : x.a) {
        if (!first) s += ", ";
        first = false;
        s += "(" + std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1) +
             "): " + c.get_str();
    }
    return s + "}";
}

EvaluationModule natural_module(const SuperDim& sd, const Rational& point) {
    EvaluationModule mod;
    mod.sd = sd;
    mod.point = point;
    const int N = sd.size();
    for (int i = 1; i <= N; ++i) mod.parity.push_back(sd.parity(i));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) mod.e.push_back(QMatrix::unit(N, i, j));
    return mod;
}

CheckReport check_module_relations(const EvaluationModule& mod) {
    CheckReport rep;
    rep.identity = "module-relations";
    const auto& sd = mod.sd;
    const int N = sd.size();
    rep.config = {{"m", sd.m}, {"n", sd.n}, {"dim", mod.dim()}};
    if (int(mod.e.size()) != N * N) {
        rep.fail("wrong number of matrices");
        return rep;
    }
    auto deg = [&](int i, int j) { return (sd.parity(i) + sd.parity(j)) & 1; };
    int pairs = 0;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const int p = matrix_parity(mod.op(i, j), mod.parity);
            if (p >= 0 && p != deg(i, j))
                rep.fail("e" + std::to_string(i) + std::to_string(j) + " has the wrong parity");
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    const Rational s = sign_of(deg(i, j) * deg(k, l));
                    QMatrix lhs = mod.op(i, j) * mod.op(k, l) - mod.op(k, l) * mod.op(i, j) * s;
                    QMatrix rhs(mod.dim());
                    if (k == j) rhs = rhs + mod.op(i, l);
                    if (i == l) rhs = rhs - mod.op(k, j) * s;
                    ++pairs;
                    if (!(lhs == rhs))
                        rep.fail("[e" + std::to_string(i) + std::to_string(j) + ", e" +
                                 std::to_string(k) + std::to_string(l) + "]");
                }
        }
    rep.details["pairs"] = pairs;
    return rep;
}

QMatrix casimir(const EvaluationModule& mod) {
    const int N = mod.sd.size();
    QMatrix c(mod.dim());
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j)
            c = c + mod.op(i, j) * mod.op(j, i) * sign_of(mod.sd.parity(j));
        c = c + mod.op(i, i);
    }
    return c;
}

std::optional<Rational> casimir_eigenvalue(const EvaluationModule& mod) {
    const auto c = casimir(mod);
    const Rational v = c.at(0, 0);
    if (c == QMatrix::identity(mod.dim()) * v) return v;
    return std::nullopt;
}

TensorModule tensor_product(const std::vector<EvaluationModule>& mods) {
    TensorModule t;
    t.sd = mods.empty() ? SuperDim{} : mods[0].sd;
    const int R = int(mods.size());
    const int N = t.sd.size();
    int D = 1;
    for (const auto& m : mods) {
        if (!(m.sd == t.sd)) throw UsageError("modules over different superalgebras");
        D *= m.dim();
    }
    // digits[v][r] is the basis index of factor r in tensor basis vector v
    std::vector<std::vector<int>> digits(D, std::vector<int>(R));
    t.parity.assign(D, 0);
    for (int v = 0; v < D; ++v) {
        int rest = v;
        for (int r = R - 1; r >= 0; --r) {
            digits[v][r] = rest % mods[r].dim();
            rest /= mods[r].dim();
        }
        for (int r = 0; r < R; ++r) t.parity[v] ^= mods[r].parity[digits[v][r]];
    }
    std::vector<int> stride(R, 1);
    for (int r = R - 2; r >= 0; --r) stride[r] = stride[r + 1] * mods[r + 1].dim();
    t.e.assign(R, {});
    for (int r = 0; r < R; ++r)
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                const int x = (t.sd.parity(i) + t.sd.parity(j)) & 1;
                const auto& src = mods[r].op(i, j);
                QMatrix op(D);
                for (int v = 0; v < D; ++v) {
                    int before = 0;
                    for (int q = 0; q < r; ++q) before ^= mods[q].parity[digits[v][q]];
                    const int c = digits[v][r];
                    for (const auto& [bc, val] : src.a) {
                        if (bc.second != c) continue;
                        const int w = v + (bc.first - c) * stride[r];
                        op.add_to(w, v, val * sign_of(x * before));
                    }
                }
                t.e[r].push_back(std::move(op));
            }
    return t;
}

QMatrix tensor_action(const std::vector<EvaluationModule>& mods, const Matrix<Rational>& x) {
    if (mods.empty()) throw UsageError("tensor_action needs at least one module");
    const auto t = tensor_product(mods);
    QMatrix out(t.dim());
    for (int r = 0; r < t.factors(); ++r)
        for (int i = 1; i <= x.rows; ++i)
            for (int j = 1; j <= x.cols; ++j)
                if (x(i, j) != 0) out = out + t.op(r, i, j) * x(i, j);
    return out;
}

namespace {

const std::pair<int, int> kConst{-1, 0};

void add_term(RatOp& x, const std::pair<int, int>& key, const QMatrix& m, const Rational& c) {
    if (m.is_zero() || c == 0) return;
    auto it = x.find(key);
    if (it == x.end()) {
        x.emplace(key, m * c);
        return;
    }
    it->second = it->second + m * c;
    if (it->second.is_zero()) x.erase(it);
}

Rational rat_pow(const Rational& a, int e) {
    Rational r = 1;
    for (int k = 0; k < std::abs(e); ++k) r *= a;
    return e < 0 ? Rational(1 / r) : r;
}

// Coefficient of (z-a)^{-(p-j)} in the principal part at a of 1/((z-a)^p (z-b)^q).
Rational principal_coeff(const Rational& a, const Rational& b, int q, int j) {
    const Rational binom_neg = sign_of(j) * binomial(q + j - 1, j);
    return binom_neg * rat_pow(a - b, -q - j);
}

std::vector<Rational> poly_mul(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return r;
}

}  // namespace

RatOp GaudinAlgebra::rat_add(const RatOp& x, const RatOp& y, const Rational& cy) const {
    RatOp r = x;
    for (const auto& [k, m] : y) add_term(r, k, m, cy);
    return r;
}

RatOp GaudinAlgebra::rat_mul(const RatOp& x, const RatOp& y) const {
    RatOp r;
    for (const auto& [kx, mx] : x)
        for (const auto& [ky, my] : y) {
            const QMatrix prod = mx * my;
            if (prod.is_zero()) continue;
            if (kx == kConst) {
                add_term(r, ky, prod, 1);
            } else if (ky == kConst) {
                add_term(r, kx, prod, 1);
            } else if (kx.first == ky.first) {
                add_term(r, {kx.first, kx.second + ky.second}, prod, 1);
            } else {
                const auto &a = points[kx.first], &b = points[ky.first];
                const int p = kx.second, q = ky.second;
                for (int j = 0; j < p; ++j)
                    add_term(r, {kx.first, p - j}, prod, principal_coeff(a, b, q, j));
                for (int j = 0; j < q; ++j)
                    add_term(r, {ky.first, q - j}, prod, principal_coeff(b, a, p, j));
            }
        }
    return r;
}

RatOp GaudinAlgebra::rat_derivative(const RatOp& x) const {
    RatOp r;
    for (const auto& [k, m] : x)
        if (k != kConst) add_term(r, {k.first, k.second + 1}, m, Rational(-k.second));
    return r;
}

RatOp GaudinAlgebra::rat_constant(const QMatrix& m) const {
    RatOp r;
    add_term(r, kConst, m, 1);
    return r;
}

QMatrix GaudinAlgebra::rat_evaluate(const RatOp& x, const Rational& z) const {
    QMatrix out(dim());
    for (const auto& [k, m] : x) {
        if (k == kConst) {
            out = out + m;
            continue;
        }
        if (z == points[k.first]) throw UsageError("evaluation at a pole");
        out = out + m * rat_pow(z - points[k.first], -k.second);
    }
    return out;
}

DiffOp GaudinAlgebra::one() const {
    DiffOp d;
    d[0] = rat_constant(QMatrix::identity(dim()));
    return d;
}

DiffOp GaudinAlgebra::add(const DiffOp& a, const DiffOp& b) const {
    DiffOp r = a;
    for (const auto& [l, c] : b) {
        auto s = rat_add(r[l], c);
        if (s.empty())
            r.erase(l);
        else
            r[l] = std::move(s);
    }
    return r;
}

DiffOp GaudinAlgebra::sub(const DiffOp& a, const DiffOp& b) const { return add(a, neg(b)); }

DiffOp GaudinAlgebra::scale(const DiffOp& a, const Rational& c) const {
    if (c == 0) return {};
    DiffOp r;
    for (const auto& [l, x] : a) {
        RatOp y;
        for (const auto& [k, m] : x) y.emplace(k, m * c);
        r.emplace(l, std::move(y));
    }
    return r;
}

// ∂^l f = Σ_j C(l,j) f^(j) ∂^{l-j}
DiffOp GaudinAlgebra::mul(const DiffOp& a, const DiffOp& b) const {
    DiffOp r;
    for (const auto& [m, g] : b) {
        std::vector<RatOp> derivs{g};
        for (const auto& [l, f] : a) {
            while (int(derivs.size()) <= l) derivs.push_back(rat_derivative(derivs.back()));
            for (int j = 0; j <= l; ++j) {
                if (derivs[j].empty()) continue;
                auto prod = rat_mul(f, derivs[j]);
                auto& slot = r[l - j + m];
                slot = rat_add(slot, prod, binomial(l, j));
            }
        }
    }
    std::erase_if(r, [](const auto& kv) { return kv.second.empty(); });
    return r;
}

int GaudinAlgebra::parity_of(const DiffOp& a) const {
    int p = -2;
    for (const auto& [l, x] : a)
        for (const auto& [k, m] : x) {
            const int q = matrix_parity(m, basis_parity);
            if (q < 0 || (p >= 0 && p != q)) return -1;
            p = q;
        }
    return p < 0 ? 0 : p;
}

ClearedRatOp clear_denominators(const GaudinAlgebra& alg, const RatOp& x) {
    const int R = int(alg.points.size());
    std::vector<int> order(R, 0);
    for (const auto& [k, m] : x)
        if (k != kConst) order[k.first] = std::max(order[k.first], k.second);
    auto denominator_without = [&](int skip_r, int skip_p) {
        std::vector<Rational> d{Rational(1)};
        for (int r = 0; r < R; ++r) {
            const int e = order[r] - (r == skip_r ? skip_p : 0);
            for (int q = 0; q < e; ++q) d = poly_mul(d, {-alg.points[r], Rational(1)});
        }
        return d;
    };
    ClearedRatOp out;
    out.denominator = denominator_without(-1, 0);
    for (const auto& [k, m] : x) {
        const auto f = k == kConst ? out.denominator : denominator_without(k.first, k.second);
        for (std::size_t d = 0; d < f.size(); ++d) {
            if (f[d] == 0) continue;
            auto& slot = out.numerator[int(d)];
            slot = slot.n == 0 ? m * f[d] : slot + m * f[d];
            slot.n = alg.dim();
        }
    }
    std::erase_if(out.numerator, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

bool cleared_equal(const GaudinAlgebra& alg, const RatOp& x, const RatOp& y) {
    const auto cx = clear_denominators(alg, x), cy = clear_denominators(alg, y);
    auto times = [&](const std::map<int, QMatrix>& num, const std::vector<Rational>& den) {
        std::map<int, QMatrix> r;
        for (const auto& [d, m] : num)
            for (std::size_t e = 0; e < den.size(); ++e) {
                auto& slot = r[d + int(e)];
                slot.n = alg.dim();
                slot = slot + m * den[e];
            }
        std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
        return r;
    };
    return times(cx.numerator, cy.denominator) == times(cy.numerator, cx.denominator);
}

std::string ratop_str(const GaudinAlgebra& alg, const RatOp& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [k, m] : x) {
        if (!s.empty()) s += " + ";
        s += qmatrix_str(m);
        if (k != kConst)
            s += "/(z - " + alg.points[k.first].get_str() + ")^" + std::to_string(k.second);
    }
    return s;
}

bool GaudinSystem::shifted() const {
    for (const auto& c : shift.data)
        if (c != 0) return true;
    return false;
}

GaudinSystem make_system(const SuperDim& sd, std::vector<EvaluationModule> modules,
                         const std::optional<Matrix<Rational>>& shift) {
    GaudinSystem sys;
    sys.sd = sd;
    const int N = sd.size();
    for (const auto& m : modules)
        if (!(m.sd == sd)) throw UsageError("module over a different superalgebra");
    for (std::size_t r = 0; r < modules.size(); ++r)
        for (std::size_t s = 0; s < r; ++s)
            if (modules[r].point == modules[s].point)
                throw CoincidentPoints("coincident evaluation points " +
                                       modules[r].point.get_str());
    sys.shift = shift ? *shift : Matrix<Rational>(N, N, Rational(0));
    if (sys.shift.rows != N || sys.shift.cols != N) throw UsageError("shift must be (m+n)x(m+n)");
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            if (sd.parity(i) != sd.parity(j) && sys.shift(i, j) != 0)
                throw UsageError("shift entries must be even");
    sys.modules = std::move(modules);
    sys.tensor = tensor_product(sys.modules);
    sys.tensor.sd = sd;
    for (const auto& m : sys.modules) sys.alg.points.push_back(m.point);
    sys.alg.basis_parity = sys.tensor.parity;
    return sys;
}

GaudinSystem natural_system(const SuperDim& sd, const std::vector<Rational>& points,
                            const std::vector<Rational>& lambda) {
    std::vector<EvaluationModule> mods;
    for (const auto& a : points) mods.push_back(natural_module(sd, a));
    std::optional<Matrix<Rational>> shift;
    if (!lambda.empty()) {
        if (int(lambda.size()) != sd.size()) throw UsageError("λ needs m+n components");
        shift = Matrix<Rational>(sd.size(), sd.size(), Rational(0));
        for (int i = 1; i <= sd.size(); ++i) (*shift)(i, i) = lambda[i - 1];
    }
    return make_system(sd, std::move(mods), shift);
}

Matrix<DiffOp> build_L(const GaudinSystem& sys) {
    const auto& alg = sys.alg;
    const int N = sys.sd.size();
    const QMatrix id = QMatrix::identity(alg.dim());
    Matrix<DiffOp> L(N, N, DiffOp{});
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const Rational s = -sign_of(sys.sd.parity(i));
            RatOp c;
            add_term(c, kConst, id, s * sys.shift(i, j));
            for (int r = 0; r < sys.tensor.factors(); ++r) add_term(c, {r, 1}, sys.tensor.op(r, i, j), s);
            DiffOp d;
            if (!c.empty()) d[0] = std::move(c);
            if (i == j) d[1] = alg.rat_constant(id);
            L(i, j) = std::move(d);
        }
    return L;
}

namespace {

// Σ_ij (-1)^j̄ e^(r)_ij e^(s)_ji
QMatrix omega(const GaudinSystem& sys, int r, int s) {
    const int N = sys.sd.size();
    QMatrix out(sys.alg.dim());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            out = out + sys.tensor.op(r, i, j) * sys.tensor.op(s, j, i) * sign_of(sys.sd.parity(j));
    return out;
}

RatOp str_of(const GaudinSystem& sys, const Matrix<DiffOp>& x, int power) {
    DiffOp tr;
    for (int i = 1; i <= sys.sd.size(); ++i)
        tr = sys.alg.add(tr, sys.alg.scale(x(i, i), sign_of(sys.sd.parity(i))));
    auto it = tr.find(power);
    return it == tr.end() ? RatOp{} : it->second;
}

}  // namespace

RatOp quadratic_hamiltonian(const GaudinSystem& sys) {
    const auto& alg = sys.alg;
    const int R = sys.tensor.factors();
    RatOp out;
    for (int r = 0; r < R; ++r)
        for (int s = 0; s < R; ++s) {
            RatOp left, right;
            left[{r, 1}] = omega(sys, r, s);
            right[{s, 1}] = QMatrix::identity(alg.dim());
            out = alg.rat_add(out, alg.rat_mul(left, right));
        }
    for (int r = 0; r < R; ++r)
        for (int i = 1; i <= sys.sd.size(); ++i) add_term(out, {r, 2}, sys.tensor.op(r, i, i), 1);
    return out;
}

std::vector<QMatrix> h_r_operators(const GaudinSystem& sys) {
    const int R = sys.tensor.factors();
    std::vector<QMatrix> out;
    for (int r = 0; r < R; ++r) {
        QMatrix h(sys.alg.dim());
        for (int s = 0; s < R; ++s)
            if (s != r)
                h = h + omega(sys, r, s) * Rational(1 / (sys.alg.points[r] - sys.alg.points[s]));
        out.push_back(std::move(h));
    }
    return out;
}

CheckReport check_quadratic_hamiltonian(const GaudinSystem& sys) {
    CheckReport rep;
    rep.identity = "quadratic-hamiltonian";
    const auto& alg = sys.alg;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& a : alg.points) pts.push_back(a.get_str());
    rep.config = {{"m", sys.sd.m}, {"n", sys.sd.n}, {"points", pts}};
    const auto H = quadratic_hamiltonian(sys);
    const auto hr = h_r_operators(sys);
    RatOp expected;
    nlohmann::json deltas = nlohmann::json::array();
    for (int r = 0; r < int(hr.size()); ++r) {
        add_term(expected, {r, 1}, hr[r], 2);
        const auto delta = casimir_eigenvalue(sys.modules[r]);
        if (!delta) {
            rep.fail("Casimir is not scalar on module " + std::to_string(r + 1));
            continue;
        }
        deltas.push_back(delta->get_str());
        add_term(expected, {r, 2}, QMatrix::identity(alg.dim()), *delta);
    }
    rep.details["delta"] = deltas;
    if (H != expected) rep.fail("residue decomposition: " + ratop_str(alg, alg.rat_add(H, expected, -1)));
    if (!cleared_equal(alg, H, expected)) rep.fail("residue decomposition after clearing denominators");
    for (std::size_t r = 0; r < hr.size(); ++r)
        for (std::size_t s = r + 1; s < hr.size(); ++s)
            if (!commutator(hr[r], hr[s]).is_zero())
                rep.fail("[H^(" + std::to_string(r + 1) + "), H^(" + std::to_string(s + 1) + ")] != 0");
    if (!sys.shifted()) {
        const auto L = build_L(sys);
        const auto S22 = str_of(sys, matmul(alg, L, L), 0);
        rep.details["matches_s22"] = S22 == H;
        if (S22 != H) rep.fail("S_22 differs from the double sum");
    }
    return rep;
}

std::vector<GaudinFamily> higher_hamiltonians(const GaudinSystem& sys, int kmax) {
    if (kmax < 1) throw UsageError("kmax must be positive");
    if (kmax > kGaudinCap) throw CapExceeded("kmax above " + std::to_string(kGaudinCap));
    const auto& alg = sys.alg;
    const auto& sd = sys.sd;
    const auto L = build_L(sys);
    std::vector<GaudinFamily> out;
    for (auto kind : {FamilyKind::S, FamilyKind::Sigma, FamilyKind::H, FamilyKind::B}) {
        GaudinFamily fam;
        fam.kind = kind;
        fam.kmax = kmax;
        std::vector<DiffOp> full(kmax + 1);
        if (kind == FamilyKind::B) {
            SeriesAlgebra<GaudinAlgebra> sa(alg, kmax);
            auto ber = berezinian(sa, sd, one_plus_u(alg, L, kmax));
            for (int k = 1; k <= kmax; ++k) full[k] = ber.c[k];
        } else {
            auto power = L;
            for (int k = 1; k <= kmax; ++k) {
                if (kind == FamilyKind::S) {
                    DiffOp tr;
                    for (int i = 1; i <= sd.size(); ++i)
                        tr = alg.add(tr, alg.scale(power(i, i), sign_of(sd.parity(i))));
                    full[k] = tr;
                    if (k < kmax) power = matmul(alg, power, L);
                } else if (kind == FamilyKind::Sigma) {
                    full[k] = sigma_expansion(alg, sd, k, L);
                } else {
                    full[k] = h_expansion(alg, sd, k, L);
                }
            }
        }
        for (int k = 1; k <= kmax; ++k) {
            for (const auto& [p, c] : full[k])
                if (p < 0 || p > k) throw DegreeMismatch("unexpected ∂ power");
            for (int l = 0; l <= k; ++l) {
                auto it = full[k].find(k - l);
                fam.coeff[{k, l}] = it == full[k].end() ? RatOp{} : it->second;
            }
        }
        out.push_back(std::move(fam));
    }
    return out;
}

namespace {

using SparseVec = std::map<int, Rational>;

// Incremental row echelon form; rows are keyed by their leading index.
struct Echelon {
    std::map<int, SparseVec> rows;

    bool insert(SparseVec v) {
        for (auto it = v.begin(); it != v.end();) {
            auto row = rows.find(it->first);
            if (row == rows.end()) {
                ++it;
                continue;
            }
            const Rational c = it->second;
            const int key = it->first;
            for (const auto& [col, val] : row->second) {
                auto& slot = v[col];
                slot -= c * val;
            }
            std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
            it = v.upper_bound(key);
        }
        if (v.empty()) return false;
        const Rational lead = v.begin()->second;
        for (auto& [col, val] : v) val /= lead;
        rows.emplace(v.begin()->first, std::move(v));
        return true;
    }
};

}  // namespace

CheckReport check_higher_hamiltonians(const GaudinSystem& sys, int kmax) {
    CheckReport rep;
    rep.identity = "gaudin-commutativity";
    const auto& alg = sys.alg;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& a : alg.points) pts.push_back(a.get_str());
    nlohmann::json shift = nlohmann::json::array();
    for (const auto& c : sys.shift.data) shift.push_back(c.get_str());
    rep.config = {{"m", sys.sd.m}, {"n", sys.sd.n}, {"points", pts}, {"kmax", kmax},
                  {"shift", shift}};
    const auto fams = higher_hamiltonians(sys, kmax);

    const auto& sigma = fams[1].coeff;
    const auto& ber = fams[3].coeff;
    bool sigma_b = true;
    for (const auto& [kl, c] : sigma)
        if (c != ber.at(kl)) {
            sigma_b = false;
            rep.fail("Sigma_" + std::to_string(kl.first) + std::to_string(kl.second) + " != B");
        }
    rep.details["sigma_equals_b"] = sigma_b;

    struct Labelled {
        std::string label;
        QMatrix m;
    };
    std::vector<Labelled> basis;
    Echelon ech;
    int total = 0;
    const int D = alg.dim();
    for (const auto& fam : fams)
        for (const auto& [kl, c] : fam.coeff)
            for (const auto& [key, m] : c) {
                ++total;
                SparseVec v;
                for (const auto& [ij, val] : m.a) v.emplace(ij.first * D + ij.second, val);
                if (!ech.insert(std::move(v))) continue;
                std::string label = family_name(fam.kind) + "[" + std::to_string(kl.first) + "," +
                                    std::to_string(kl.second) + "]";
                label += key == kConst ? " const"
                                       : " (z-a" + std::to_string(key.first + 1) + ")^-" +
                                             std::to_string(key.second);
                if (matrix_parity(m, alg.basis_parity) != 0)
                    rep.fail(label + " is not an even operator");
                basis.push_back({std::move(label), m});
            }
    int pairs = 0;
    nlohmann::json witnesses = nlohmann::json::array();
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
            ++pairs;
            if (commutator(basis[a].m, basis[b].m).is_zero()) continue;
            const std::string w = "[" + basis[a].label + ", " + basis[b].label + "] != 0";
            if (witnesses.size() < 8) witnesses.push_back(w);
            rep.fail(w);
        }
    rep.details["coefficients"] = total;
    rep.details["independent"] = int(basis.size());
    rep.details["pairs_checked"] = pairs;
    rep.details["all_commute"] = witnesses.empty();
    rep.details["witnesses"] = witnesses;
    return rep;
}

}  // namespace superalg
