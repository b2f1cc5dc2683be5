#include "amot/periods.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

#include "amot/algebra.hpp"
#include "amot/galois.hpp"
#include "amot/gfpoly.hpp"
#include "amot/matrix.hpp"

namespace amot {

namespace {

constexpr long kUnbounded = LONG_MAX / 4;

long ipow(long q, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > kUnbounded / q) throw ValidationError("q-power exceeds the supported range");
        r *= q;
    }
    return r;
}

long floor_div(long a, long b) {
    long d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

std::vector<UFunc> zero_tuple(const UFunc& proto, int d) { return std::vector<UFunc>(size_t(d), proto.zero()); }

std::vector<UFunc> embed_tuple(const std::vector<UFunc>& z, int m) {
    std::vector<UFunc> out;
    for (const auto& x : z) out.push_back(x.embed(m));
    return out;
}

// Common level for a and b, by embedding both.
void align(LaurentApprox& a, LaurentApprox& b) {
    require(a.d == b.d, "tuple lengths differ");
    int la = a.level(), lb = b.level();
    if (la == lb) return;
    int l = std::lcm(la, lb);
    a = laurent_embed(a, l);
    b = laurent_embed(b, l);
}

bool tuple_zero(const std::vector<UFunc>& z) {
    for (const auto& x : z)
        if (!x.is_zero()) return false;
    return true;
}

// Unique place of F_{q^T}(u) above x, T a multiple of its level.
Poly<GF> lift_place(const Place& x, int T) {
    int lx = x.level();
    if (lx == T) return x.pi;
    auto fs = factor(gfpoly_embed(x.pi, T));
    if (fs.size() != 1 || fs[0].second != 1)
        throw ValidationError("untracked place: " + x.str() + " splits over F_{q^" + std::to_string(T) + "}");
    return fs[0].first;
}

Valuation min_valuation(const std::vector<Valuation>& vs) {
    Valuation out;
    out.infinite = true;
    for (const auto& v : vs) {
        out.truncated = out.truncated || v.truncated;
        if (v.infinite) continue;
        if (out.infinite || v.value < out.value) out.value = v.value;
        out.infinite = false;
    }
    return out;
}

Valuation vx_tuple(const std::vector<UFunc>& z, const Place& x) {
    std::vector<Valuation> vs;
    for (const auto& c : z) vs.push_back(vx(c, x));
    return min_valuation(vs);
}

UFunc basis_value(const GFLevel* lv, int l, int k) {
    std::vector<int> c(size_t(lv->m), 0);
    c[size_t(l)] = 1;
    GF g(lv, c);
    GFPoly one = GFPoly::constant(g.one());
    GFPoly mono = GFPoly::monomial(g.one(), std::abs(k));
    if (k >= 0) return UFunc(RatFunc<GF>(mono * g, one));
    return UFunc(RatFunc<GF>(GFPoly::constant(g), mono));
}

// Componentwise product of tuple series mod t^n.
std::vector<std::vector<GF>> tuple_series_mul(const std::vector<std::vector<GF>>& a,
                                              const std::vector<std::vector<GF>>& b, int n) {
    std::vector<std::vector<GF>> out(size_t(n), std::vector<GF>(a[0].size(), a[0][0].zero()));
    for (int i = 0; i < n && i < int(a.size()); ++i)
        for (int k = 0; i + k < n && k < int(b.size()); ++k)
            for (size_t j = 0; j < a[0].size(); ++j) out[size_t(i + k)][j] += a[size_t(i)][j] * b[size_t(k)][j];
    return out;
}

// Order of a unit of F_Q[t]/t^n, coefficients given degree-ascending.
long unit_order(const std::vector<GF>& u) {
    internal_check(!u[0].is_zero(), "not a unit");
    long e = 1;
    for (GF x = u[0]; !x.is_one(); x *= u[0]) ++e;
    int n = int(u.size()), p = u[0].q();
    auto mul = [&](const std::vector<GF>& a, const std::vector<GF>& b) {
        std::vector<GF> out(size_t(n), a[0].zero());
        for (int i = 0; i < n; ++i)
            if (!a[size_t(i)].is_zero())
                for (int k = 0; i + k < n; ++k) out[size_t(i + k)] += a[size_t(i)] * b[size_t(k)];
        return out;
    };
    std::vector<GF> v(size_t(n), u[0].zero()), b = u;
    v[0] = u[0].one();
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) v = mul(v, b);
        b = mul(b, b);
    }
    auto is_one = [&](const std::vector<GF>& w) {
        for (int i = 1; i < n; ++i)
            if (!w[size_t(i)].is_zero()) return false;
        return w[0].is_one();
    };
    while (!is_one(v)) {
        // v^p = sum c_i^p t^{ip} in characteristic p
        std::vector<GF> w(size_t(n), v[0].zero());
        for (int i = 0; i * p < n; ++i) w[size_t(i * p)] = v[size_t(i)].pow((unsigned long long)p);
        v = w;
        e *= p;
    }
    return e;
}

// Roots of X^{q^d} - phi X = c in one level, for many c: the F_q-linear map
// is reduced once.
class AdditiveSolver {
public:
    AdditiveSolver(int level, int d, const GF& phi) {
        const GFLevel* lv = phi.embed(level).level();
        L_ = level;
        q_ = lv->q;
        GF ph = phi.embed(level);
        FqMat M(q_, L_, 2 * L_);
        for (int j = 0; j < L_; ++j) {
            std::vector<int> e(size_t(L_), 0);
            e[size_t(j)] = 1;
            GF x(lv, e);
            auto c = (x.frob(d) - ph * x).coords();
            for (int i = 0; i < L_; ++i) M.at(i, j) = c[size_t(i)];
            M.at(j, L_ + j) = 1;
        }
        auto piv = M.rref();
        for (int c : piv)
            if (c < L_) piv_.push_back(c);
        M_ = M;
        FqMat A(q_, L_, L_);
        for (int i = 0; i < L_; ++i)
            for (int j = 0; j < L_; ++j) A.at(i, j) = M.at(i, j);
        for (const auto& k : A.kernel()) kernel_.push_back(GF(lv, k));
        proto_ = ph.zero();
    }

    // Canonically smallest root (smallest nonzero root when nonzero is set).
    std::optional<GF> min_root(const GF& c, bool nonzero) const {
        auto b = c.embed(L_).coords();
        std::vector<int> y(size_t(L_), 0);
        Fq f(q_);
        for (int i = 0; i < L_; ++i) {
            long acc = 0;
            for (int k = 0; k < L_; ++k) acc += long(M_.at(i, L_ + k)) * b[size_t(k)];
            y[size_t(i)] = f.norm(acc);
        }
        for (int i = int(piv_.size()); i < L_; ++i)
            if (y[size_t(i)] != 0) return std::nullopt;
        std::vector<int> x(size_t(L_), 0);
        for (size_t i = 0; i < piv_.size(); ++i) x[size_t(piv_[i])] = y[i];
        GF base(proto_.level(), x);
        std::optional<GF> best;
        long total = 1;
        for (size_t i = 0; i < kernel_.size(); ++i) total *= q_;
        for (long k = 0; k < total; ++k) {
            GF r = base;
            long v = k;
            for (const auto& g : kernel_) {
                if (v % q_) r += g.scale(int(v % q_));
                v /= q_;
            }
            if (nonzero && r.is_zero()) continue;
            if (!best || r < *best) best = r;
        }
        return best;
    }

private:
    int L_ = 0, q_ = 0;
    FqMat M_;
    std::vector<int> piv_;
    std::vector<GF> kernel_;
    GF proto_;
};

using Tuples = std::vector<std::vector<UFunc>>;  // n rows of d-tuples

// Solves one fixed-point attempt at level M with u-degrees in [-D, D].
std::optional<std::vector<Tuples>> fixpoint_attempt(const std::vector<std::vector<LaurentApprox>>& delta, int m,
                                                    int N, int M, int D) {
    size_t n = delta.size();
    int d = delta[0][0].d;
    const GFLevel* lv = delta[0][0].proto.embed(M).level();
    UFunc zero = delta[0][0].proto.embed(M);
    int q = zero.q();
    int maxdeg = 0;
    for (const auto& row : delta)
        for (const auto& e : row) maxdeg = std::max(maxdeg, e.window_end() - 1);
    // dl[l][i][k]: tuple of the t^l coefficient of delta(i, k)
    std::vector<std::vector<Tuples>> dl(size_t(maxdeg + 1));
    for (int l = 0; l <= maxdeg; ++l) {
        dl[size_t(l)].assign(n, Tuples(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) dl[size_t(l)][i][k] = embed_tuple(delta[i][k].coeff(l), M);
    }

    int width = 2 * D + 1;
    size_t nvars = n * size_t(d) * size_t(width) * size_t(M);
    // Images of the basis under F -> sigma^m(F) - delta_0 F.
    std::vector<Tuples> images(nvars, Tuples(n, zero_tuple(zero, d)));
    std::vector<UFunc> values(nvars);
    for (size_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = -D; k <= D; ++k)
                for (int l = 0; l < M; ++l) {
                    size_t idx = ((i * size_t(d) + size_t(j)) * size_t(width) + size_t(k + D)) * size_t(M) + size_t(l);
                    UFunc v = basis_value(lv, l, k);
                    values[idx] = v;
                    auto& img = images[idx];
                    img[i][size_t((j + m) % d)] += sigma(v, m);
                    for (size_t r = 0; r < n; ++r) {
                        const UFunc& c = dl[0][r][i][size_t(j)];
                        if (!c.is_zero()) img[r][size_t(j)] -= c * v;
                    }
                }

    Poly<GF> dens = Poly<GF>::constant(zero.rf().proto().one());
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i < n; ++i)
            for (const auto& c : dl[0][r][i]) dens = lcm(dens, c.rf().den());
    Poly<GF> base_den = dens * Poly<GF>::monomial(dens.proto().one(), int(ipow(q, m)) * D);

    auto solve_step = [&](const Tuples& target, bool homogeneous) -> std::optional<std::vector<int>> {
        Poly<GF> Q = base_den;
        for (const auto& row : target)
            for (const auto& c : row) Q = lcm(Q, c.rf().den());
        UFunc Qf{RatFunc<GF>(Q)};
        auto numer = [&](const UFunc& x) {
            UFunc y = x * Qf;
            internal_check(y.rf().is_poly(), "common denominator does not clear");
            return y.rf().num();
        };
        std::vector<std::vector<GFPoly>> cols(nvars);
        int deg = 0;
        for (size_t v = 0; v < nvars; ++v)
            for (const auto& row : images[v])
                for (const auto& c : row) {
                    cols[v].push_back(numer(c));
                    deg = std::max(deg, cols[v].back().deg());
                }
        std::vector<GFPoly> rhs;
        for (const auto& row : target)
            for (const auto& c : row) {
                rhs.push_back(numer(c));
                deg = std::max(deg, rhs.back().deg());
            }
        size_t neq = rhs.size() * size_t(deg + 1) * size_t(M);
        FqMat A(q, int(neq), int(nvars));
        for (size_t v = 0; v < nvars; ++v) {
            auto flat = flatten_polys(cols[v], deg);
            for (size_t e = 0; e < neq; ++e) A.at(int(e), int(v)) = flat[e];
        }
        if (homogeneous) {
            auto ker = A.kernel();
            if (ker.empty()) return std::nullopt;
            return ker[0];
        }
        return A.solve(flatten_polys(rhs, deg));
    };

    auto decode = [&](const std::vector<int>& x) {
        Tuples F(n, zero_tuple(zero, d));
        for (size_t idx = 0; idx < nvars; ++idx) {
            if (x[idx] == 0) continue;
            size_t i = idx / (size_t(d) * size_t(width) * size_t(M));
            size_t j = (idx / (size_t(width) * size_t(M))) % size_t(d);
            F[i][j] += values[idx] * zero.from_int(x[idx]);
        }
        return F;
    };

    std::vector<Tuples> F;
    for (int r = 0; r < N; ++r) {
        Tuples C(n, zero_tuple(zero, d));
        for (int l = 1; l <= std::min(r, maxdeg); ++l)
            for (size_t i = 0; i < n; ++i)
                for (size_t k = 0; k < n; ++k)
                    for (int j = 0; j < d; ++j) {
                        const UFunc& c = dl[size_t(l)][i][k][size_t(j)];
                        if (!c.is_zero()) C[i][size_t(j)] += c * F[size_t(r - l)][k][size_t(j)];
                    }
        auto x = solve_step(C, r == 0);
        if (!x) return std::nullopt;
        F.push_back(decode(*x));
    }
    return F;
}

}  // namespace

// ---------------------------------------------------------------- basics

Frac::Frac(long n, long d) {
    require(d != 0, "zero denominator");
    if (d < 0) n = -n, d = -d;
    long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::string Frac::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

std::string Place::str() const { return infinite ? "inf" : "(" + pi.str("u") + ")"; }

Place place_infinity() {
    Place p;
    p.infinite = true;
    return p;
}

Place place_at(const GFPoly& pi) {
    require(!pi.is_zero() && pi.deg() >= 1, "a finite place needs a polynomial of positive degree");
    require(pi.lead().is_one(), "place polynomial must be monic");
    auto fs = factor(pi);
    require(fs.size() == 1 && fs[0].second == 1, "place polynomial must be irreducible");
    Place p;
    p.pi = pi;
    return p;
}

std::vector<Place> place_lifts(const GFPoly& pi, int m) {
    require(pi.proto().degree() == 1, "place of F_q(u) expected at level 1");
    std::vector<Place> out;
    for (auto& [g, e] : factor(gfpoly_embed(pi, m))) {
        Place p;
        p.pi = g;
        out.push_back(p);
    }
    return out;
}

Place place_restrict(const Place& x) {
    if (x.infinite || x.level() == 1) return x;
    std::vector<GFPoly> conj{x.pi};
    for (GFPoly g = sigma(x.pi, 1); g != x.pi; g = sigma(g, 1)) conj.push_back(g);
    GFPoly prod = x.pi.one();
    for (const auto& g : conj) prod = prod * g;
    std::vector<int> ints;
    for (const auto& c : prod.coeffs()) {
        internal_check(c.in_prime_field(), "norm of a place is not over F_q");
        ints.push_back(c.prime_value());
    }
    Place p;
    p.pi = gfpoly_from_ints(*x.pi.proto().level()->tower, 1, ints);
    return p;
}

std::string Valuation::str() const {
    std::string s = infinite ? "inf" : std::to_string(value);
    if (truncated) s += " (truncation)";
    if (certificate) s += " (certified >= " + certificate->str() + ")";
    return s;
}

// ---------------------------------------------------------------- LaurentApprox

long LaurentApprox::known_until() const { return exact ? kUnbounded : window_end(); }

std::vector<UFunc> LaurentApprox::coeff(int i) const {
    if (i >= n0 && i < window_end()) return c[size_t(i - n0)];
    if (i < n0 || exact) return zero_tuple(proto, d);
    throw ValidationError("coefficient t^" + std::to_string(i) + " lies beyond the truncation");
}

bool LaurentApprox::is_zero() const {
    for (const auto& z : c)
        if (!tuple_zero(z)) return false;
    return true;
}

std::optional<int> LaurentApprox::order() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!tuple_zero(c[i])) return n0 + int(i);
    return std::nullopt;
}

bool LaurentApprox::invertible_leading() const {
    auto o = order();
    if (!o) return false;
    for (const auto& x : coeff(*o))
        if (x.is_zero()) return false;
    return true;
}

LaurentApprox laurent_zero(const UFunc& proto, int d) {
    require(d >= 1, "tuple length must be positive");
    LaurentApprox f;
    f.d = d;
    f.proto = proto.zero();
    return f;
}

LaurentApprox laurent_exact(int n0, const std::vector<std::vector<UFunc>>& c) {
    require(!c.empty() && !c[0].empty(), "coefficient list must be nonempty");
    LaurentApprox f;
    f.d = int(c[0].size());
    f.proto = c[0][0].zero();
    f.n0 = n0;
    for (const auto& z : c) {
        require(int(z.size()) == f.d, "coefficient tuples must have equal length");
        for (const auto& x : z) require(x.level() == f.proto.level(), "coefficients must share one level");
    }
    f.c = c;
    return f;
}

LaurentApprox laurent_scalar(int n0, const std::vector<UFunc>& c, int d) {
    std::vector<std::vector<UFunc>> tuples;
    for (const auto& x : c) tuples.emplace_back(size_t(d), x);
    return laurent_exact(n0, tuples);
}

LaurentApprox laurent_embed(const LaurentApprox& f, int m) {
    LaurentApprox g = f;
    g.proto = f.proto.embed(m);
    for (auto& z : g.c) z = embed_tuple(z, m);
    return g;
}

LaurentApprox laurent_truncate(const LaurentApprox& f, int end) {
    require(end <= f.known_until(), "truncation beyond the known window");
    LaurentApprox g = f;
    g.exact = false;
    g.c.clear();
    for (int i = f.n0; i < end; ++i) g.c.push_back(f.coeff(i));
    return g;
}

LaurentApprox operator+(const LaurentApprox& a0, const LaurentApprox& b0) {
    LaurentApprox a = a0, b = b0;
    align(a, b);
    LaurentApprox r = laurent_zero(a.proto, a.d);
    r.n0 = std::min(a.n0, b.n0);
    r.exact = a.exact && b.exact;
    long end = r.exact ? std::max(a.window_end(), b.window_end()) : std::min(a.known_until(), b.known_until());
    for (int i = r.n0; i < end; ++i) {
        auto x = a.coeff(i), y = b.coeff(i);
        for (int j = 0; j < a.d; ++j) x[size_t(j)] += y[size_t(j)];
        r.c.push_back(x);
    }
    return r;
}

LaurentApprox operator-(const LaurentApprox& a, const LaurentApprox& b) {
    LaurentApprox nb = b;
    for (auto& z : nb.c)
        for (auto& x : z) x = -x;
    return a + nb;
}

LaurentApprox operator*(const LaurentApprox& a0, const LaurentApprox& b0) {
    LaurentApprox a = a0, b = b0;
    align(a, b);
    LaurentApprox r = laurent_zero(a.proto, a.d);
    r.n0 = a.n0 + b.n0;
    r.exact = a.exact && b.exact;
    long end = r.exact ? long(a.window_end()) + b.window_end() - 1
                       : std::min(a.n0 + b.known_until(), b.n0 + a.known_until());
    for (long k = r.n0; k < end; ++k) {
        auto z = zero_tuple(a.proto, a.d);
        for (int i = a.n0; i < a.window_end(); ++i) {
            long jb = k - i;
            if (jb < b.n0 || jb >= b.window_end()) continue;
            const auto& x = a.c[size_t(i - a.n0)];
            const auto& y = b.c[size_t(jb - b.n0)];
            for (int j = 0; j < a.d; ++j)
                if (!x[size_t(j)].is_zero() && !y[size_t(j)].is_zero()) z[size_t(j)] += x[size_t(j)] * y[size_t(j)];
        }
        r.c.push_back(z);
    }
    return r;
}

std::vector<UFunc> sigma_tuple(const std::vector<UFunc>& z, long e) {
    long d = long(z.size());
    std::vector<UFunc> out(z.size());
    for (long i = 0; i < d; ++i) out[size_t((i + e) % d)] = sigma(z[size_t(i)], e);
    return out;
}

LaurentApprox sigma(const LaurentApprox& f, long e) {
    require(e >= 0, "sigma power must be nonnegative");
    LaurentApprox g = f;
    g.certificate.reset();
    for (auto& z : g.c) z = sigma_tuple(z, e);
    return g;
}

bool agree_on_window(const LaurentApprox& a0, const LaurentApprox& b0, int end) {
    LaurentApprox a = a0, b = b0;
    align(a, b);
    for (int i = std::min(a.n0, b.n0); i < end; ++i)
        if (a.coeff(i) != b.coeff(i)) return false;
    return true;
}

// ---------------------------------------------------------------- valuations

Valuation vx(const UFunc& f, const Place& x) {
    Valuation v;
    if (f.is_zero()) {
        v.infinite = true;
        return v;
    }
    if (x.infinite) {
        v.value = f.ord(Poly<GF>());
        return v;
    }
    int T = std::lcm(f.level()->m, x.level());
    UFunc g = f.level()->m == T ? f : f.embed(T);
    v.value = g.ord(lift_place(x, T));
    return v;
}

Valuation vx(const LaurentApprox& f, const Place& x) {
    std::vector<Valuation> vs;
    for (const auto& z : f.c) vs.push_back(vx_tuple(z, x));
    Valuation v = min_valuation(vs);
    v.truncated = !f.exact;
    v.certificate = f.certificate;
    return v;
}

Valuation vx(const std::vector<std::vector<LaurentApprox>>& m, const Place& x) {
    std::vector<Valuation> vs;
    for (const auto& row : m)
        for (const auto& e : row) vs.push_back(vx(e, x));
    Valuation v = min_valuation(vs);
    return v;
}

// ---------------------------------------------------------------- fixed points

FixpointResult fixpoint_bound_check(const std::vector<std::vector<LaurentApprox>>& delta0, int m, const Place& x,
                                    int N, int level_cap, int degree_cap) {
    size_t n = delta0.size();
    require(n >= 1, "delta must be nonempty");
    require(m >= 1, "m must be positive");
    require(N >= 1, "precision must be positive");
    int L0 = 1, d = delta0[0].empty() ? 0 : delta0[0][0].d;
    for (const auto& row : delta0) {
        require(row.size() == n, "delta must be square");
        for (const auto& e : row) {
            require(e.exact, "delta entries must be Laurent polynomials");
            require(e.d == d, "delta entries must share the tuple length");
            require(e.is_zero() || *e.order() >= 0, "delta entries must have nonnegative t-order");
            L0 = std::lcm(L0, e.level());
        }
    }
    L0 = std::lcm(L0, m);
    std::vector<std::vector<LaurentApprox>> delta = delta0;
    for (auto& row : delta)
        for (auto& e : row) e = laurent_embed(e, L0);
    Valuation vd = vx(delta, x);
    require(!vd.infinite, "delta must be nonzero");
    int q = delta[0][0].proto.q();

    FixpointResult res;
    res.bound = Frac(vd.value, ipow(q, m) - 1);
    if (level_cap <= 0) level_cap = 4 * L0;
    for (int M = L0; M <= level_cap; M += L0)
        for (int D = 1; D <= degree_cap; D *= 2) {
            auto F = fixpoint_attempt(delta, m, N, M, D);
            if (!F) continue;
            for (size_t i = 0; i < n; ++i) {
                std::vector<std::vector<UFunc>> cs;
                for (const auto& Fr : *F) cs.push_back(Fr[i]);
                LaurentApprox f = laurent_exact(0, cs);
                f.exact = false;
                f.certificate = res.bound;
                res.solution.push_back(f);
            }
            std::vector<Valuation> vs;
            for (const auto& f : res.solution) vs.push_back(vx(f, x));
            res.v_solution = min_valuation(vs);
            res.v_solution.truncated = true;
            res.v_solution.certificate = res.bound;
            res.bound_holds = res.v_solution.infinite || res.bound <= Frac(res.v_solution.value);
            res.level = M;
            res.degree_cap = D;
            return res;
        }
    throw CapExhausted("no fixed point with u-degree <= " + std::to_string(degree_cap) + " at levels <= " +
                       std::to_string(level_cap));
}

// ---------------------------------------------------------------- sigma quotients

LaurentApprox sigma_quotient_solve(const LaurentApprox& f, int N, int cap) {
    require(N >= 0, "precision must be nonnegative");
    require(f.invertible_leading() && *f.order() == 0 && f.n0 >= 0,
            "f must have order 0 with invertible leading coefficient");
    require(f.known_until() > N, "f is not known through t^N");
    int d = f.d;
    // fc[i][j]: component j of the t^i coefficient, as finite-field constants
    std::vector<std::vector<GF>> fc;
    for (int i = 0; i <= N; ++i) {
        std::vector<GF> z;
        for (const auto& x : f.coeff(i)) {
            require(x.is_constant(), "sigma_quotient_solve needs finite-field coefficients");
            z.push_back(x.is_zero() ? x.rf().proto().zero() : x.constant_value());
        }
        fc.push_back(z);
    }
    if (cap <= 0) cap = 16 * f.proto.level()->tower->default_cap();
    // Frobenius acts on s through Phi = f sigma(f) ... sigma^{B-1}(f), so s
    // lives in level B ord(Phi).
    int B = std::lcm(f.level(), d);
    for (auto& z : fc)
        for (auto& x : z) x = x.embed(B);
    std::vector<std::vector<GF>> Phi = fc, fs = fc;
    for (int i = 1; i < B; ++i) {
        for (auto& z : fs) {
            std::vector<GF> w(z.size());
            for (int j = 0; j < d; ++j) w[size_t((j + 1) % d)] = z[size_t(j)].frob(1);
            z = w;
        }
        Phi = tuple_series_mul(Phi, fs, N + 1);
    }
    long ord = 1;
    for (int j = 0; j < d; ++j) {
        std::vector<GF> comp;
        for (const auto& z : Phi) comp.push_back(z[size_t(j)]);
        ord = std::lcm(ord, unit_order(comp));
        if (ord * B > cap) break;
    }
    if (ord * B > cap)
        throw CapExhausted("sigma quotient needs level " + std::to_string(ord * B) + " > cap " + std::to_string(cap));
    int level = int(ord * B);
    for (auto& z : fc)
        for (auto& x : z) x = x.embed(level);
    std::vector<std::vector<GF>> s;
    GF phi = fc[0][0];
    for (int j = 1; j < d; ++j) phi = phi * fc[0][size_t(j)].frob(d - j);
    AdditiveSolver solver(level, d, phi);
    for (int r = 0; r <= N; ++r) {
        std::vector<GF> C(size_t(d), fc[0][0].zero());
        for (int i = 1; i <= r; ++i)
            for (int j = 0; j < d; ++j) C[size_t(j)] += fc[size_t(i)][size_t(j)] * s[size_t(r - i)][size_t(j)];
        // s_{r,0} is a fixed point of x -> (...((x^q - C_1)/f_1)^q ... - C_0)/f_0
        GF h0 = C[0].zero();
        for (int j = 1; j < d; ++j) h0 = (h0.frob(1) - C[size_t(j)]) / fc[0][size_t(j)];
        h0 = (h0.frob(1) - C[0]) / fc[0][0];
        auto root = solver.min_root(-(phi * h0), r == 0);
        internal_check(root.has_value(), "additive equation without admissible root");
        GF x0 = *root;
        std::vector<GF> sr(static_cast<size_t>(d));
        sr[0] = x0;
        for (int j = 1; j < d; ++j) sr[size_t(j)] = (sr[size_t(j - 1)].frob(1) - C[size_t(j)]) / fc[0][size_t(j)];
        internal_check((sr[size_t(d - 1)].frob(1) - C[0]) / fc[0][0] == sr[0], "sigma quotient recursion broke");
        s.push_back(sr);
    }
    std::vector<std::vector<UFunc>> cs;
    for (const auto& z : s) {
        std::vector<UFunc> t;
        for (const auto& x : z) t.push_back(UFunc::constant(x));
        cs.push_back(t);
    }
    LaurentApprox out = laurent_exact(0, cs);
    out.exact = false;
    LaurentApprox fl = laurent_embed(laurent_truncate(f, N + 1), level);
    internal_check(agree_on_window(sigma(out, 1), fl * out, N + 1), "sigma(s) != f s");
    return out;
}

// ---------------------------------------------------------------- floor inequality

EpsFloor eps_floor_check(const LaurentApprox& s, const Place& x, int N, const LaurentApprox& a) {
    require(N >= 0, "N must be nonnegative");
    long qN = ipow(s.proto.q(), N);
    Valuation vs = vx(s, x);
    if (!vs.infinite && vs.value < 0) throw ValidationError("hypothesis (a) fails: v_x(s) < 0");
    Valuation v0 = vx_tuple(s.coeff(0), x);
    if (v0.infinite || v0.value >= qN)
        throw ValidationError("hypothesis (b) fails: v_x(s(0)) = " + v0.str() + " is not < q^N = " + std::to_string(qN));
    LaurentApprox b = sigma(a, N);
    LaurentApprox sb = s * b;
    long W = std::min<long>(sb.window_end(), b.known_until());
    EpsFloor out;
    std::vector<Valuation> lhs;
    for (long i = b.n0; i < W && i < b.window_end(); ++i) lhs.push_back(vx_tuple(b.coeff(int(i)), x));
    out.lhs = min_valuation(lhs);
    out.lhs.truncated = !(b.exact && sb.exact);
    Valuation vsb = vx(sb, x);
    if (!vsb.infinite) out.rhs = floor_div(vsb.value, qN) * qN;
    if (!out.rhs) out.holds = out.lhs.infinite;
    else out.holds = out.lhs.infinite || out.lhs.value >= *out.rhs;
    return out;
}

// ---------------------------------------------------------------- B+ and S

BplusResult bplus_membership(const LaurentApprox& f) {
    require(f.exact, "B+ membership needs a finitely supported element");
    BplusResult res;
    res.member = true;
    std::map<std::string, Place> poles;
    for (const auto& z : f.c)
        for (const auto& x : z) {
            if (x.is_zero()) continue;
            if (x.ord(Poly<GF>()) < 0) poles.emplace("inf", place_infinity());
            if (x.rf().den().deg() < 1) continue;
            for (auto& [g, e] : factor(x.rf().den())) {
                Place p;
                p.pi = g;
                Place below = place_restrict(p);
                poles.emplace(below.str(), below);
            }
        }
    for (auto& [k, p] : poles) res.pole_places.push_back(p);
    return res;
}

bool in_fp_tensor_k(const std::vector<UFunc>& z, const GFPoly& p, int base_level) {
    int d = int(z.size());
    require(p.deg() == d, "tuple length must equal deg p");
    int L = std::lcm(std::lcm(z[0].level()->m, d), base_level);
    FieldTower& tw = *z[0].level()->tower;
    GFPoly pL = gfpoly_embed(p, L);
    auto roots = tw.roots(pL.coeffs());
    internal_check(!roots.empty(), "residue field does not embed");
    GF xi = roots[0];
    Mat<GF> W(xi.zero(), d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) W(i, k) = xi.pow((unsigned long long)k).frob(i);
    auto Wi = inverse_field(W);
    internal_check(Wi.has_value(), "Moore matrix is singular");
    for (int k = 0; k < d; ++k) {
        UFunc y = z[0].embed(L).zero();
        for (int i = 0; i < d; ++i) y += UFunc::constant((*Wi)(k, i)) * z[size_t(i)].embed(L);
        for (const auto* part : {&y.rf().num(), &y.rf().den()})
            for (const auto& c : part->coeffs())
                if (!descend(c, base_level)) return false;
    }
    return true;
}

bool s_membership(const LaurentApprox& s, const GFPoly& p, int N, int base_level) {
    require(s.invertible_leading() && *s.order() == s.n0, "s must have invertible leading coefficient");
    require(s.known_until() > s.n0 + N, "s is not known through t^N");
    int d = s.d;
    LaurentApprox ss = sigma(s, 1);
    int o = s.n0;
    // g s = sigma(s), g of order 0
    std::vector<std::vector<UFunc>> g;
    for (int r = 0; r <= N; ++r) {
        auto num = ss.coeff(o + r);
        for (int i = 1; i <= r; ++i) {
            auto si = s.coeff(o + i);
            for (int j = 0; j < d; ++j) num[size_t(j)] -= g[size_t(r - i)][size_t(j)] * si[size_t(j)];
        }
        auto s0 = s.coeff(o);
        for (int j = 0; j < d; ++j) num[size_t(j)] = num[size_t(j)] / s0[size_t(j)];
        g.push_back(num);
    }
    for (const auto& z : g)
        if (!in_fp_tensor_k(z, p, base_level)) return false;
    return true;
}

}  // namespace amot
