#include "amot/galois.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>

#include "amot/algebra.hpp"
#include "amot/gfpoly.hpp"

namespace amot {

namespace {

using Vec = std::vector<GFPoly>;

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

GF level_basis(const GFLevel* lv, int l) {
    std::vector<int> c(lv->m, 0);
    c[l] = 1;
    return GF(lv, c);
}

GFPoly embed_poly(const GFPoly& f, int L) { return f.proto().degree() == L ? f : gfpoly_embed(f, L); }

Vec embed_vec(const Vec& v, int L, const GFPoly& mod) {
    Vec out;
    for (const auto& x : v) out.push_back(embed_poly(x, L) % mod);
    return out;
}

PMat<GF> embed_pmat(const PMat<GF>& m, int L, const GFPoly& mod) {
    GFPoly z = embed_poly(m.proto(), L);
    PMat<GF> out(z, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = embed_poly(m(i, j), L) % mod;
    return out;
}

Mat<GF> embed_mat(const Mat<GF>& m, int L) {
    return m.map([L](const GF& x) { return x.degree() == L ? x : x.embed(L); });
}

PMat<GF> reduce_pmat(const PMat<GF>& m, const GFPoly& mod) {
    return m.map([&](const GFPoly& x) { return x % mod; });
}

// delta * sigma^e(v) mod m
Vec delta_sigma(const PMat<GF>& delta, const Vec& v, const GFPoly& mod, long e = 1) {
    Vec out;
    for (int i = 0; i < delta.rows(); ++i) {
        GFPoly acc = v[0].zero();
        for (int j = 0; j < delta.cols(); ++j)
            if (!delta(i, j).is_zero() && !v[j].is_zero()) acc += delta(i, j) * sigma(v[j], e);
        out.push_back(acc % mod);
    }
    return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

Vec vec_scale(const Vec& a, const GFPoly& c, const GFPoly& mod) {
    Vec out;
    for (const auto& x : a) out.push_back(x * c % mod);
    return out;
}

std::vector<int> apn_ints(const APn& x) {
    const auto& c = *x.ctx();
    auto v = gfpoly_prime_ints(x.value());
    v.resize(size_t(c.n * c.d), 0);
    return v;
}

APn apn_from_ints(const std::shared_ptr<const APnContext>& ctx, const std::vector<int>& v) {
    FieldTower& tw = *ctx->p.proto().level()->tower;
    return APn(ctx, gfpoly_from_ints(tw, 1, v));
}

// Order of Phi = delta sigma(delta) ... sigma^{s-1}(delta) modulo mod; a
// solution of v = delta sigma(v) is fixed by sigma^{s k} once Phi^k = 1.
int norm_order(const PMat<GF>& delta, const GFPoly& mod, int s, int max_order) {
    PMat<GF> phi = reduce_pmat(delta, mod);
    for (int e = 1; e < s; ++e) phi = reduce_pmat(phi * sigma(delta, e), mod);
    PMat<GF> pw = phi;
    for (int k = 1; k <= max_order; ++k) {
        if (pw.is_identity()) return k;
        pw = reduce_pmat(pw * phi, mod);
    }
    throw CapExhausted("splitting level exceeds " + std::to_string(max_order * s));
}

// F_q-matrix of v -> v - delta sigma(v) on (F_{q^L}[t]/p)^r.
FqMat level_one_matrix(const PMat<GF>& dp, const GFPoly& pL, int r, int d, const GF& z) {
    const GFLevel* lv = z.level();
    int L = lv->m, N = r * d * L;
    FqMat A(lv->q, N, N);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < L; ++l) {
                Vec v(r, GFPoly(z));
                v[i] = GFPoly::monomial(level_basis(lv, l), k);
                auto col = flatten_polys(vec_sub(v, delta_sigma(dp, v, pL)), d - 1);
                int c = (i * d + k) * L + l;
                for (int row = 0; row < N; ++row) A.at(row, c) = col[row];
            }
    return A;
}

// Columns t^m b_j (m < nd) flattened.
FqMat module_matrix(const std::vector<Vec>& basis, const GFPoly& pnL, int nd) {
    int r = int(basis.size());
    const GF& z = pnL.proto();
    int L = z.degree();
    int rows = int(basis.at(0).size()) * nd * L;
    FqMat B(z.q(), rows, r * nd);
    GFPoly tv = GFPoly::var(z);
    for (int j = 0; j < r; ++j) {
        Vec cur = basis[j];
        for (int m = 0; m < nd; ++m) {
            auto col = flatten_polys(cur, nd - 1);
            for (int row = 0; row < rows; ++row) B.at(row, j * nd + m) = col[row];
            cur = vec_scale(cur, tv, pnL);
        }
    }
    return B;
}

std::optional<std::vector<APn>> coords_in(const FqMat& B, const Vec& v, int r, int nd,
                                          const std::shared_ptr<const APnContext>& ctx) {
    auto sol = B.solve(flatten_polys(v, nd - 1));
    if (!sol) return std::nullopt;
    std::vector<APn> out;
    for (int j = 0; j < r; ++j)
        out.push_back(apn_from_ints(ctx, std::vector<int>(sol->begin() + j * nd, sol->begin() + (j + 1) * nd)));
    return out;
}

std::optional<TateApproximation> tate_attempt(const PMat<GF>& delta, const GFPoly& p, int n, int L) {
    FieldTower& tw = *delta.proto().proto().level()->tower;
    int q = tw.q(), s = tw.base_degree(), r = delta.rows(), d = p.deg(), nd = n * d;
    GF z(tw.level(L));
    GFPoly pL = embed_poly(p, L), pnL = pL.pow(n);
    PMat<GF> dL = embed_pmat(delta, L, pnL);
    PMat<GF> d1 = reduce_pmat(dL, pL);
    FqMat A1 = level_one_matrix(d1, pL, r, d, z);
    auto ker = A1.kernel();
    if (int(ker.size()) != r * d) return std::nullopt;

    std::vector<Vec> basis;
    FqSpan span(q, r * d * L);
    GFPoly tv = GFPoly::var(z);
    for (const auto& w : ker) {
        if (int(basis.size()) == r) break;
        if (span.contains(w)) continue;
        Vec wv = unflatten_polys(w, r, d - 1, z);
        basis.push_back(wv);
        Vec cur = wv;
        for (int m = 0; m < d; ++m) {
            span.add(flatten_polys(cur, d - 1));
            cur = vec_scale(cur, tv, pL);
        }
    }
    internal_check(int(basis.size()) == r, "level-one invariants are not free of full rank");

    for (auto& b : basis) {
        GFPoly pk = pL;
        for (int k = 1; k < n; ++k, pk = pk * pL) {
            Vec res = vec_sub(b, delta_sigma(dL, b, pnL));
            Vec e;
            for (auto& x : res) {
                GFPoly qq, rr;
                (x % pnL).divmod(pk, qq, rr);
                internal_check(rr.is_zero(), "lift residual is not divisible by p^k");
                e.push_back(-qq % pL);
            }
            auto c = A1.solve(flatten_polys(e, d - 1));
            if (!c) return std::nullopt;
            Vec cv = unflatten_polys(*c, r, d - 1, z);
            for (int i = 0; i < r; ++i) b[i] = (b[i] + pk * cv[i]) % pnL;
        }
    }

    TateApproximation out;
    out.p = p;
    out.n = n;
    out.level = L;
    out.basis = basis;
    auto ctx = apn_context(p, n);
    APn az(ctx, p.zero());
    out.frobenius = Mat<APn>(az, r, r);
    FqMat B = module_matrix(basis, pnL, nd);
    for (int i = 0; i < r; ++i) {
        Vec g;
        for (const auto& x : basis[i]) g.push_back(sigma(x, s));
        auto c = coords_in(B, g, r, nd, ctx);
        internal_check(c.has_value(), "Frobenius image is not in the span of the basis");
        for (int j = 0; j < r; ++j) out.frobenius(j, i) = (*c)[j];
    }
    return out;
}

void validate_prime(const GFPoly& p) {
    require(!p.is_zero() && p.proto().degree() == 1, "p must be a polynomial over F_q");
    require(p.deg() >= 1 && p.lead().is_one(), "p must be monic of positive degree");
    auto fs = factor(p);
    require(fs.size() == 1 && fs[0].second == 1, "p must be irreducible");
}

void validate_not_kernel(const Base<GF>& b, const GFPoly& p) {
    if (!b.generic() && gfpoly_prime_ints(b.kernel_iota) == gfpoly_prime_ints(p))
        throw ValidationError("p = ker(iota) is excluded");
}

Mat<APn> solve_transition(const TateApproximation& target, const std::vector<Vec>& vs) {
    int L = target.level, r = target.rank(), nd = target.n * target.p.deg();
    GFPoly pnL = embed_poly(target.p, L).pow(target.n);
    FqMat B = module_matrix(target.basis, pnL, nd);
    auto ctx = target.frobenius.proto().ctx();
    Mat<APn> P(target.frobenius.proto(), r, int(vs.size()));
    for (size_t i = 0; i < vs.size(); ++i) {
        auto c = coords_in(B, vs[i], r, nd, ctx);
        internal_check(c.has_value(), "vector is not in the span of the target basis");
        for (int j = 0; j < r; ++j) P(j, int(i)) = (*c)[j];
    }
    return P;
}

std::vector<int> gf_vec_flatten(const std::vector<GF>& v) {
    std::vector<int> out;
    for (const auto& x : v) {
        auto c = x.coords();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<GF> gf_vec_unflatten(const std::vector<int>& x, int N, const GFLevel* lv) {
    std::vector<GF> out;
    for (int i = 0; i < N; ++i)
        out.emplace_back(lv, std::vector<int>(x.begin() + size_t(i) * lv->m, x.begin() + size_t(i + 1) * lv->m));
    return out;
}

Mat<GF> fq_to_gf(const FqMat& m, const GFLevel* lv) {
    Mat<GF> out(GF(lv), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = GF::from_int(lv, m.at(i, j));
    return out;
}

// Kernel of the F_q-linear map x -> x - F(x) on F_{q^M}^N.
std::vector<std::vector<int>> fixed_space(int N, const GFLevel* lv,
                                          const std::function<std::vector<GF>(const std::vector<GF>&)>& F) {
    int M = lv->m, D = N * M;
    FqMat A(lv->q, D, D);
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < M; ++l) {
            std::vector<GF> x(N, GF(lv));
            x[i] = level_basis(lv, l);
            auto fx = F(x);
            std::vector<GF> diff;
            for (int k = 0; k < N; ++k) diff.push_back(x[k] - fx[k]);
            auto col = gf_vec_flatten(diff);
            for (int row = 0; row < D; ++row) A.at(row, i * M + l) = col[row];
        }
    return A.kernel();
}

std::vector<GF> frob_vec(const std::vector<GF>& v, long e) {
    std::vector<GF> out;
    for (const auto& x : v) out.push_back(x.frob(e));
    return out;
}

int fq_order(const FqMat& F, int max_order) {
    FqMat I = FqMat::identity(F.q(), F.rows()), pw = F;
    for (int k = 1; k <= max_order; ++k) {
        if (pw == I) return k;
        pw = pw.mul(F);
    }
    throw CapExhausted("Frobenius order exceeds " + std::to_string(max_order));
}

}  // namespace

// ---------------------------------------------------------------- A/p^n

std::shared_ptr<const APnContext> apn_context(const GFPoly& p, int n) {
    require(n >= 1, "precision n must be positive");
    require(p.proto().degree() == 1, "p must have F_q coefficients");
    auto c = std::make_shared<APnContext>();
    c->p = p;
    c->pn = p.pow(n);
    c->n = n;
    c->d = p.deg();
    return c;
}

APn::APn(std::shared_ptr<const APnContext> ctx, const GFPoly& v) : ctx_(std::move(ctx)), v_(v % ctx_->pn) {}

APn apn(const std::shared_ptr<const APnContext>& ctx, const GFPoly& v) { return APn(ctx, v); }

bool APn::is_unit() const { return !(v_ % ctx_->p).is_zero(); }

int APn::valuation() const {
    int k = 0;
    GFPoly w = v_;
    while (k < ctx_->n && !w.is_zero() && (w % ctx_->p).is_zero()) {
        w = w / ctx_->p;
        ++k;
    }
    return w.is_zero() ? ctx_->n : k;
}

APn APn::inv() const {
    if (!is_unit()) throw ValidationError("element " + str() + " is not a unit mod p");
    return APn(ctx_, inv_mod(v_, ctx_->pn));
}

APn reduce_apn(const APn& x, int m) { return APn(apn_context(x.ctx()->p, m), x.value()); }

Mat<APn> reduce_apn(const Mat<APn>& F, int m) {
    auto ctx = apn_context(F.proto().ctx()->p, m);
    return F.map([&](const APn& x) { return APn(ctx, x.value()); });
}

Poly<APn> reduce_apn(const Poly<APn>& f, int m) {
    auto ctx = apn_context(f.proto().ctx()->p, m);
    std::vector<APn> c;
    for (const auto& x : f.coeffs()) c.push_back(APn(ctx, x.value()));
    return Poly<APn>(APn(ctx, f.proto().value().zero()), c);
}

GFPoly prime_poly(FieldTower& tower, const std::vector<int>& c) {
    GFPoly p = gfpoly_from_ints(tower, 1, c);
    validate_prime(p);
    return p;
}

// ---------------------------------------------------------------- Tate modules

TateApproximation tate_lang(const PMat<GF>& delta, const GFPoly& p, int n, int start_level, int cap) {
    validate_prime(p);
    require(n >= 1, "precision n must be positive");
    require(delta.rows() == delta.cols() && delta.rows() > 0, "delta must be a nonempty square matrix");
    FieldTower& tw = *delta.proto().proto().level()->tower;
    int s = tw.base_degree();
    if (cap <= 0) cap = tw.default_cap();
    GFPoly ps = embed_poly(p, s);
    PMat<GF> dp = reduce_pmat(delta, ps);
    GFPoly det = det_cofactor(dp) % ps;
    require(gcd(det, ps).deg() == 0, "delta is not invertible mod p");
    int L = s * norm_order(delta, ps, s, std::max(1, cap / s));
    if (start_level > 0) L = lcm_int(L, start_level);
    for (; L <= cap; L *= tw.q()) {
        auto t = tate_attempt(delta, p, n, L);
        if (t) return *t;
    }
    throw CapExhausted("Tate module lifting needs a level above " + std::to_string(cap));
}

TateApproximation tate_module(const Motive<GF>& x, const GFPoly& p, int n, int start_level, int cap) {
    validate_prime(p);
    validate_not_kernel(x.base(), p);
    bool trivial_l = x.l.delta.is_identity();
    int L = start_level;
    for (;;) {
        TateApproximation tm = tate_lang(x.m.delta, p, n, L, cap);
        if (trivial_l) return tm;
        TateApproximation tl = tate_lang(x.l.delta, p, n, tm.level, cap);
        if (tl.level != tm.level) {
            L = tl.level;
            continue;
        }
        GFPoly pnL = embed_poly(p, tm.level).pow(n);
        GFPoly linv = inv_mod(tl.basis[0][0], pnL);
        for (auto& b : tm.basis) b = vec_scale(b, linv, pnL);
        tm.frobenius = tm.frobenius * tl.frobenius(0, 0).inv();
        return tm;
    }
}

PMat<GF> completed_tau(const Motive<GF>& x, const GFPoly& p, int n) {
    return completion(motive_to_bold(x), p, n).tau;
}

TateApproximation tate_bold_route(const Motive<GF>& x, const GFPoly& p, int n, int start_level, int cap) {
    validate_prime(p);
    validate_not_kernel(x.base(), p);
    return tate_lang(completed_tau(x, p, n), p, n, start_level, cap);
}

TateApproximation reduce(const TateApproximation& t, int m) {
    require(m >= 1 && m <= t.n, "reduction level out of range");
    TateApproximation out = t;
    out.n = m;
    GFPoly pm = embed_poly(t.p, t.level).pow(m);
    for (auto& b : out.basis)
        for (auto& x : b) x = x % pm;
    out.frobenius = reduce_apn(t.frobenius, m);
    return out;
}

bool check_tate(const PMat<GF>& delta, const TateApproximation& t) {
    int r = delta.rows();
    if (t.rank() != r) return false;
    int L = t.level, d = t.p.deg(), s = delta.proto().proto().level()->tower->base_degree();
    GFPoly pL = embed_poly(t.p, L), pnL = pL.pow(t.n);
    PMat<GF> dL = embed_pmat(delta, L, pnL);
    GF z(delta.proto().proto().level()->tower->level(L));
    GFPoly tv = GFPoly::var(z);
    FqSpan span(z.q(), r * d * L);
    for (const auto& b : t.basis) {
        Vec bb = embed_vec(b, L, pnL);
        for (const auto& x : vec_sub(bb, delta_sigma(dL, bb, pnL)))
            if (!(x % pnL).is_zero()) return false;
        Vec cur = embed_vec(b, L, pL);
        for (int m = 0; m < d; ++m) {
            span.add(flatten_polys(cur, d - 1));
            cur = vec_scale(cur, tv, pL);
        }
    }
    if (span.rank() != r * d) return false;
    for (int i = 0; i < r; ++i) {
        for (int k = 0; k < r; ++k) {
            GFPoly acc(z);
            for (int j = 0; j < r; ++j) acc += embed_poly(t.frobenius(j, i).value(), L) * t.basis[j][k];
            if (!((sigma(t.basis[i][k], s) - acc) % pnL).is_zero()) return false;
        }
    }
    return true;
}

TateApproximation tensor_tate(const TateApproximation& a, const TateApproximation& b) {
    require(a.n == b.n && a.p == b.p, "tensor of Tate data needs the same p and n");
    int L = lcm_int(a.level, b.level);
    GFPoly pnL = embed_poly(a.p, L).pow(a.n);
    TateApproximation out;
    out.p = a.p;
    out.n = a.n;
    out.level = L;
    for (const auto& u : a.basis)
        for (const auto& w : b.basis) {
            Vec uu = embed_vec(u, L, pnL), ww = embed_vec(w, L, pnL), v;
            for (const auto& x : uu)
                for (const auto& y : ww) v.push_back(x * y % pnL);
            out.basis.push_back(v);
        }
    out.frobenius = kron(a.frobenius, b.frobenius);
    return out;
}

RouteComparison compare_routes(const Motive<GF>& x, const GFPoly& p, int n) {
    TateApproximation a = tate_module(x, p, n);
    TateApproximation b = tate_bold_route(x, p, n, a.level);
    while (a.level != b.level) {
        a = tate_module(x, p, n, b.level);
        if (a.level == b.level) break;
        b = tate_bold_route(x, p, n, a.level);
    }
    RouteComparison rc;
    rc.level = a.level;
    rc.transition = solve_transition(b, a.basis);
    rc.agree = det_cofactor(rc.transition).is_unit() && b.frobenius * rc.transition == rc.transition * a.frobenius &&
               check_tate(completed_tau(x, p, n), a);
    return rc;
}

// ---------------------------------------------------------------- Frobenius polynomials

Poly<APn> charpoly(const Mat<APn>& F) {
    int r = F.rows();
    const APn& z = F.proto();
    Poly<APn> pz(z), X = Poly<APn>::var(z);
    Mat<Poly<APn>> M(pz, r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M(i, j) = (i == j ? X : pz) - Poly<APn>::constant(F(i, j));
    return det_cofactor(M);
}

Poly<APn> minpoly(const Mat<APn>& F) {
    int r = F.rows();
    const APn& z = F.proto();
    auto ctx = z.ctx();
    int nd = ctx->n * ctx->d;
    auto flat = [&](const Mat<APn>& m) {
        std::vector<int> v;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                auto c = apn_ints(m(i, j));
                v.insert(v.end(), c.begin(), c.end());
            }
        return v;
    };
    APn tz(ctx, GFPoly::var(z.value().proto()));
    std::vector<Mat<APn>> pw{Mat<APn>::identity(z, r)};
    for (int k = 1; k <= r; ++k) {
        pw.push_back(pw.back() * F);
        FqMat B(ctx->q(), r * r * nd, k * nd);
        for (int i = 0; i < k; ++i) {
            Mat<APn> cur = pw[i];
            for (int m = 0; m < nd; ++m) {
                auto col = flat(cur);
                for (size_t row = 0; row < col.size(); ++row) B.at(int(row), i * nd + m) = col[row];
                cur = cur * tz;
            }
        }
        auto sol = B.solve(flat(pw[k]));
        if (!sol) continue;
        std::vector<APn> c;
        for (int i = 0; i < k; ++i)
            c.push_back(-apn_from_ints(ctx, std::vector<int>(sol->begin() + i * nd, sol->begin() + (i + 1) * nd)));
        c.push_back(z.one());
        return Poly<APn>(z, c);
    }
    internal_check(false, "Cayley-Hamilton failed");
    return Poly<APn>(z);
}

APn discriminant(const Poly<APn>& f) {
    int m = f.deg();
    const APn& z = f.proto();
    if (m <= 1) return z.one();
    Poly<APn> g = f.derivative();
    int N = 2 * m - 1;
    Mat<APn> S(z, N, N);
    for (int i = 0; i < m - 1; ++i)
        for (int k = 0; k <= m; ++k) S(i, i + k) = f[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= m - 1; ++k) S(m - 1 + i, i + k) = g[m - 1 - k];
    return det_cofactor(S);
}

Poly<APn> frobenius_charpoly(const Motive<GF>& x, const GFPoly& p, int n) {
    return charpoly(tate_module(x, p, n).frobenius);
}

Poly<APn> frobenius_minpoly(const Motive<GF>& x, const GFPoly& p, int n) {
    return minpoly(tate_module(x, p, n).frobenius);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Semisimple: return "semisimple";
        case Verdict::NonSemisimple: return "non_semisimple";
        default: return "inconclusive";
    }
}

SemisimplicityReport semisimplicity(const Mat<APn>& F) {
    SemisimplicityReport rep;
    rep.charpoly = charpoly(F);
    rep.minpoly = minpoly(F);
    int r = F.rows();
    auto ctx = F.proto().ctx();
    int n = ctx->n;
    if (r == 1) {
        rep.verdict = Verdict::Semisimple;
        rep.scalar_level = n;
        rep.evidence = "rank 1";
        return rep;
    }
    Mat<APn> D = F - Mat<APn>::identity(F.proto(), r) * F(0, 0);
    int k = n;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) k = std::min(k, D(i, j).valuation());
    rep.scalar_level = k;
    std::string prec = "p^" + std::to_string(n);
    if (k >= n) {
        rep.verdict = Verdict::Semisimple;
        rep.evidence = "minpoly " + rep.minpoly.str("X") + " is linear mod " + prec;
        return rep;
    }
    auto c1 = apn_context(ctx->p, 1);
    GFPoly pk = ctx->p.pow(k);
    Mat<APn> G = D.map([&](const APn& x) { return APn(c1, x.value() / pk); });
    Poly<APn> chi = charpoly(G);
    std::string shift = k ? "F = c + p^" + std::to_string(k) + " G" : "F = c + G";
    if (gcd(chi, chi.derivative()).deg() == 0) {
        rep.verdict = Verdict::Semisimple;
        rep.evidence = shift + " with G mod p separable, charpoly " + chi.str("X");
        return rep;
    }
    Poly<APn> mu = minpoly(G);
    bool sqfree = gcd(mu, mu.derivative()).deg() == 0;
    bool disc_zero = discriminant(rep.charpoly).is_zero();
    if (!sqfree && disc_zero) {
        rep.verdict = Verdict::NonSemisimple;
        rep.evidence = shift + " with G mod p of minpoly " + mu.str("X") +
                       " (repeated factor), disc(charpoly) = 0 mod " + prec;
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.evidence = "repeated eigenvalue not separated at precision " + prec;
    return rep;
}

SemisimplicityReport semisimplicity_report(const Motive<GF>& x, const GFPoly& p, int n) {
    return semisimplicity(tate_module(x, p, n).frobenius);
}

int commutant_rank(const Mat<APn>& Fx, const Mat<APn>& Fy) {
    int rx = Fx.rows(), ry = Fy.rows();
    auto ctx = Fx.proto().ctx();
    int n = ctx->n, d = ctx->d, nd = n * d;
    const APn& z = Fx.proto();
    auto flat = [&](const Mat<APn>& m) {
        std::vector<int> v;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                auto c = apn_ints(m(i, j));
                v.insert(v.end(), c.begin(), c.end());
            }
        return v;
    };
    int D = ry * rx * nd;
    FqMat A(ctx->q(), D, D);
    GFPoly tv = GFPoly::var(z.value().proto());
    for (int i = 0; i < ry; ++i)
        for (int j = 0; j < rx; ++j)
            for (int m = 0; m < nd; ++m) {
                Mat<APn> h(z, ry, rx);
                h(i, j) = APn(ctx, tv.pow(m));
                auto col = flat(h * Fx - Fy * h);
                for (int row = 0; row < D; ++row) A.at(row, (i * rx + j) * nd + m) = col[row];
            }
    FqSpan span(ctx->q(), D);
    APn top(ctx, ctx->p.pow(n - 1));
    for (const auto& w : A.kernel()) {
        Mat<APn> h(z, ry, rx);
        for (int i = 0; i < ry; ++i)
            for (int j = 0; j < rx; ++j) {
                size_t o = size_t((i * rx + j) * nd);
                h(i, j) = apn_from_ints(ctx, std::vector<int>(w.begin() + o, w.begin() + o + nd)) * top;
            }
        span.add(flat(h));
    }
    return span.rank() / d;
}

TateCheck tate_conjecture_check(const Motive<GF>& x, const Motive<GF>& y, const GFPoly& p, int n) {
    require(x.base() == y.base(), "motives must share the base");
    TateCheck tc;
    HomResult h = hom_motives(x, y);
    tc.hom_rank = h.rank;
    tc.saturated = h.saturated;
    tc.commutant_rank = commutant_rank(tate_module(x, p, n).frobenius, tate_module(y, p, n).frobenius);
    tc.agree = tc.saturated && tc.hom_rank == tc.commutant_rank;
    return tc;
}

std::string motive_hash(const Motive<GF>& x) {
    std::string text = std::to_string(x.base().q()) + "|";
    for (int c : x.base().tower->base_poly()) text += std::to_string(c) + ",";
    text += "|" + x.base().theta.encode() + "|" + motive_summary(x);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string tate_report(const Motive<GF>& x, const GFPoly& p, int n) {
    TateApproximation t = tate_module(x, p, n);
    SemisimplicityReport s = semisimplicity(t.frobenius);
    std::string out;
    out += "motive: " + motive_hash(x) + "\n";
    out += "p: " + p.str("t") + "\n";
    out += "n: " + std::to_string(n) + "\n";
    out += "rank: " + std::to_string(t.rank()) + "\n";
    out += "level: " + std::to_string(t.level) + "\n";
    out += "frobenius: " + t.frobenius.str() + "\n";
    out += "charpoly: " + s.charpoly.str("X") + "\n";
    out += "minpoly: " + s.minpoly.str("X") + "\n";
    out += "verdict: " + verdict_name(s.verdict) + "\n";
    out += "evidence: " + s.evidence + "\n";
    return out;
}

// ---------------------------------------------------------------- torsion Dieudonne

std::optional<GF> descend(const GF& x, int m) {
    int M = x.degree();
    require(M % m == 0, "descent target must divide the level");
    if (M == m) return x;
    FieldTower& tw = *x.level()->tower;
    auto sol = tw.embedding(m, M).solve(x.coords());
    if (!sol) return std::nullopt;
    return GF(tw.level(m), *sol);
}

TorsionGaloisRep galois_rep(int q, const FqMat& Tv, const FqMat& Fv) {
    int N = Tv.rows();
    require(Tv.cols() == N && Fv.rows() == N && Fv.cols() == N, "action matrices must be square of equal size");
    require(Fv.rank() == N, "Frobenius matrix must be invertible");
    require(Tv.mul(Fv) == Fv.mul(Tv), "Frobenius must commute with the t-action");
    TorsionGaloisRep v;
    v.q = q;
    v.Tv = Tv;
    v.Fv = Fv;
    const GFLevel* l1 = FieldTower::prime(q)->level(1);
    v.level = 1;
    v.basis = Mat<GF>(GF(l1), N, N);
    if (N == 0) return v;
    GF g1(l1);
    GFPoly z(g1), tv = GFPoly::var(g1);
    PMat<GF> R(z, N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) R(i, j) = (i == j ? tv : z) - GFPoly::constant(GF::from_int(l1, Tv.at(i, j)));
    auto sf = smith_form(R);
    for (int i = 0; i < N; ++i)
        if (sf.D(i, i).deg() > 0) v.divisors.push_back(sf.D(i, i).monic());
    return v;
}

TorsionGaloisRep rq_realization(FieldTower& tw, const Mat<GF>& Tau, const Mat<GF>& Tt, int cap) {
    int N = Tau.rows(), s = tw.base_degree(), q = tw.q();
    if (cap <= 0) cap = 128 * s;
    if (N == 0) {
        TorsionGaloisRep v = galois_rep(q, FqMat(q, 0, 0), FqMat(q, 0, 0));
        v.level = s;
        v.basis = Mat<GF>(GF(tw.base()), 0, 0);
        return v;
    }
    require(!det_field(Tau).is_zero(), "tau_lin is not bijective");
    Mat<GF> phi = Tau;
    for (int e = 1; e < s; ++e) phi = phi * sigma(Tau, e);
    Mat<GF> pw = phi;
    int k = 1;
    while (!pw.is_identity()) {
        if (s * ++k > cap) throw CapExhausted("torsion invariants need a level above " + std::to_string(cap));
        pw = pw * phi;
    }
    int M = s * k;
    const GFLevel* lv = tw.level(M);
    Mat<GF> TauM = embed_mat(Tau, M), TtM = embed_mat(Tt, M);
    auto ker = fixed_space(N, lv, [&](const std::vector<GF>& x) { return TauM.apply(frob_vec(x, 1)); });
    internal_check(int(ker.size()) == N, "tau-invariants do not have full size at the splitting level");
    FqMat B(q, N * M, N);
    Mat<GF> X(GF(lv), N, N);
    for (int j = 0; j < N; ++j) {
        X.set_col(j, gf_vec_unflatten(ker[j], N, lv));
        for (int row = 0; row < N * M; ++row) B.at(row, j) = ker[j][row];
    }
    FqMat Tv(q, N, N), Fv(q, N, N);
    for (int j = 0; j < N; ++j) {
        auto x = X.col(j);
        auto a = B.solve(gf_vec_flatten(TtM.apply(x)));
        auto f = B.solve(gf_vec_flatten(frob_vec(x, s)));
        internal_check(a && f, "t-action or Frobenius leaves the invariants");
        for (int i = 0; i < N; ++i) Tv.at(i, j) = (*a)[i], Fv.at(i, j) = (*f)[i];
    }
    TorsionGaloisRep v = galois_rep(q, Tv, Fv);
    v.level = M;
    v.basis = X;
    return v;
}

TorsionGaloisRep rq(const TorsionBoldModule<GF>& t, int cap) {
    return rq_realization(*t.base.tower, t.Tau, t.Tt, cap);
}

DieudonneModule dq(const TorsionGaloisRep& v, const Base<GF>& base, int cap) {
    FieldTower& tw = *base.tower;
    require(v.q == tw.q(), "representation and base have different q");
    int N = v.dim(), s = tw.base_degree(), q = tw.q();
    if (cap <= 0) cap = 128 * s;
    DieudonneModule out;
    GF zs(tw.base());
    if (N == 0) {
        out.Tau = out.Tt = out.basis = Mat<GF>(zs, 0, 0);
        out.module = torsion_from_realization(base, out.Tau, out.Tt);
        out.level = s;
        return out;
    }
    int M = s * fq_order(v.Fv, std::max(1, cap / s));
    const GFLevel* lv = tw.level(M);
    Mat<GF> FvM = fq_to_gf(v.Fv, lv), TvM = fq_to_gf(v.Tv, lv);
    auto ker = fixed_space(N, lv, [&](const std::vector<GF>& y) { return FvM.apply(frob_vec(y, s)); });
    internal_check(int(ker.size()) == N * s, "Galois invariants do not have full size at the splitting level");
    GF g = tw.gen_image(s, M);
    std::vector<GF> kb{GF::from_int(lv, 1)};
    for (int l = 1; l < s; ++l) kb.push_back(kb.back() * g);
    FqSpan span(q, N * M);
    std::vector<std::vector<GF>> Y;
    for (const auto& w : ker) {
        if (int(Y.size()) == N) break;
        if (span.contains(w)) continue;
        auto y = gf_vec_unflatten(w, N, lv);
        for (const auto& c : kb) {
            std::vector<GF> cy;
            for (const auto& x : y) cy.push_back(c * x);
            span.add(gf_vec_flatten(cy));
        }
        Y.push_back(y);
    }
    internal_check(int(Y.size()) == N, "no K-basis of the Galois invariants");
    FqMat B(q, N * M, N * s);
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < s; ++l) {
            std::vector<GF> cy;
            for (const auto& x : Y[i]) cy.push_back(kb[l] * x);
            auto col = gf_vec_flatten(cy);
            for (int row = 0; row < N * M; ++row) B.at(row, i * s + l) = col[row];
        }
    auto kcoords = [&](const std::vector<GF>& w) {
        auto sol = B.solve(gf_vec_flatten(w));
        internal_check(sol.has_value(), "vector is not in the K-span of the invariants");
        std::vector<GF> c;
        for (int i = 0; i < N; ++i)
            c.emplace_back(tw.base(), std::vector<int>(sol->begin() + i * s, sol->begin() + (i + 1) * s));
        return c;
    };
    out.Tau = Mat<GF>(zs, N, N);
    out.Tt = Mat<GF>(zs, N, N);
    out.basis = Mat<GF>(GF(lv), N, N);
    for (int j = 0; j < N; ++j) {
        out.basis.set_col(j, Y[j]);
        out.Tau.set_col(j, kcoords(frob_vec(Y[j], 1)));
        out.Tt.set_col(j, kcoords(TvM.apply(Y[j])));
    }
    out.level = M;
    out.module = torsion_from_realization(base, out.Tau, out.Tt);
    return out;
}

DRIso dq_rq_iso(const TorsionBoldModule<GF>& t, int cap) {
    DRIso res;
    TorsionGaloisRep r = rq(t, cap);
    DieudonneModule d = dq(r, t.base, cap);
    res.dim_v = r.dim();
    res.dim_d = d.Tau.rows();
    int N = t.dim(), s = t.base.s();
    if (N == 0) {
        res.ok = res.dim_d == 0;
        res.P = Mat<GF>(t.base.zero(), 0, 0);
        return res;
    }
    int Mc = lcm_int(r.level, d.level);
    Mat<GF> P = embed_mat(r.basis, Mc) * embed_mat(d.basis, Mc);
    res.P = Mat<GF>(t.base.zero(), N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            auto x = descend(P(i, j), s);
            if (!x) return res;
            res.P(i, j) = *x;
        }
    res.ok = !det_field(res.P).is_zero() && res.P * d.Tau == t.Tau * sigma(res.P, 1) && res.P * d.Tt == t.Tt * res.P;
    return res;
}

RDIso rq_dq_iso(const TorsionGaloisRep& v, const Base<GF>& base, int cap) {
    RDIso res;
    DieudonneModule d = dq(v, base, cap);
    TorsionGaloisRep r = rq_realization(*base.tower, d.Tau, d.Tt, cap);
    int N = v.dim(), q = v.q;
    res.dim_v = N;
    res.dim_d = d.Tau.rows();
    res.Q = FqMat(q, N, N);
    if (N == 0) {
        res.ok = r.dim() == 0;
        return res;
    }
    int Mc = lcm_int(d.level, r.level);
    Mat<GF> Q = embed_mat(d.basis, Mc) * embed_mat(r.basis, Mc);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            auto x = descend(Q(i, j), 1);
            if (!x) return res;
            res.Q.at(i, j) = x->prime_value();
        }
    res.ok = res.Q.rank() == N && res.Q.mul(r.Tv) == v.Tv.mul(res.Q) && res.Q.mul(r.Fv) == v.Fv.mul(res.Q);
    return res;
}

}  // namespace amot
