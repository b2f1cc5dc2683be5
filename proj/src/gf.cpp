#include "amot/gf.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "amot/errors.hpp"

namespace amot {

// ---------------------------------------------------------------- F_q[x]

namespace fqpoly {

std::vector<int> trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, int q) {
    if (a.empty() || b.empty()) return {};
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += (long long)a[i] * b[j];
    }
    std::vector<int> out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = int(r[i] % q);
    return trim(out);
}

std::vector<int> mod(std::vector<int> a, const std::vector<int>& m, int q) {
    a = trim(a);
    auto mm = trim(m);
    Fq f(q);
    int dm = int(mm.size()) - 1;
    internal_check(dm >= 0, "division by zero polynomial");
    int il = f.inv(mm.back());
    for (int k = int(a.size()) - 1; k >= dm; --k) {
        int c = f.mul(a[k], il);
        if (!c) continue;
        for (int j = 0; j <= dm; ++j) a[k - dm + j] = f.sub(a[k - dm + j], f.mul(c, mm[j]));
    }
    return trim(a);
}

std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int q) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
        auto r = mod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Fq f(q);
        int il = f.inv(a.back());
        for (auto& x : a) x = f.mul(x, il);
    }
    return a;
}

namespace {
std::vector<int> powmod(std::vector<int> b, long long e, const std::vector<int>& m, int q) {
    std::vector<int> r{1};
    b = mod(b, m, q);
    while (e > 0) {
        if (e & 1) r = mod(mul(r, b, q), m, q);
        b = mod(mul(b, b, q), m, q);
        e >>= 1;
    }
    return r;
}
}  // namespace

bool is_irreducible(const std::vector<int>& f0, int q) {
    auto f = trim(f0);
    int n = int(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    if (f[0] == 0) return false;
    std::vector<int> x{0, 1};
    std::vector<int> h = x;
    for (int i = 1; i <= n / 2; ++i) {
        h = powmod(h, q, f, q);
        auto d = h;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = Fq(q).sub(d[1], 1);
        auto g = gcd(f, trim(d), q);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace fqpoly

// ---------------------------------------------------------------- GF

GF::GF(const GFLevel* lv, std::vector<int> coords) : lv_(lv), c_(std::move(coords)) {
    Fq f(lv_->q);
    for (auto& x : c_) x = f.norm(x);
    if (int(c_.size()) > lv_->m) c_ = fqpoly::mod(c_, lv_->mod, lv_->q);
    trim();
}

GF GF::from_int(const GFLevel* lv, long v) { return GF(lv, std::vector<int>{Fq(lv->q).norm(v)}); }

GF GF::gen(const GFLevel* lv) { return GF(lv, std::vector<int>{0, 1}); }

void GF::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

GF GF::operator+(const GF& o) const {
    internal_check(lv_ == o.lv_, "level mismatch in GF addition");
    GF r(lv_);
    const auto& a = c_;
    const auto& b = o.c_;
    r.c_.resize(std::max(a.size(), b.size()), 0);
    int q = lv_->q;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        int s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r.c_[i] = s >= q ? s - q : s;
    }
    r.trim();
    return r;
}

GF GF::operator-(const GF& o) const { return *this + (-o); }

GF GF::operator-() const {
    GF r = *this;
    int q = lv_->q;
    for (auto& x : r.c_) x = x ? q - x : 0;
    return r;
}

GF GF::operator*(const GF& o) const {
    internal_check(lv_ == o.lv_, "level mismatch in GF multiplication");
    if (c_.empty() || o.c_.empty()) return GF(lv_);
    int q = lv_->q, m = lv_->m;
    std::vector<long long> buf(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        long long a = c_[i];
        if (!a) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) buf[i + j] += a * o.c_[j];
    }
    const auto& md = lv_->mod;
    for (int k = int(buf.size()) - 1; k >= m; --k) {
        long long c = buf[k] % q;
        if (!c) continue;
        for (int j = 0; j < m; ++j)
            if (md[j]) buf[k - m + j] -= c * md[j];
    }
    GF r(lv_);
    size_t n = std::min<size_t>(buf.size(), size_t(m));
    r.c_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        long long v = buf[i] % q;
        r.c_[i] = int(v < 0 ? v + q : v);
    }
    r.trim();
    return r;
}

GF GF::scale(int c) const {
    GF r = *this;
    Fq f(lv_->q);
    c = f.norm(c);
    for (auto& x : r.c_) x = f.mul(x, c);
    r.trim();
    return r;
}

bool GF::operator<(const GF& o) const {
    size_t n = std::max(c_.size(), o.c_.size());
    for (size_t k = n; k-- > 0;) {
        int a = k < c_.size() ? c_[k] : 0;
        int b = k < o.c_.size() ? o.c_[k] : 0;
        if (a != b) return a < b;
    }
    return false;
}

GF GF::inv() const {
    if (c_.empty()) throw ValidationError("inverse of zero field element");
    int q = lv_->q;
    Fq f(q);
    // extended Euclid: find u with u*c == 1 mod modulus
    std::vector<int> r0 = lv_->mod, r1 = c_;
    std::vector<int> s0{}, s1{1};
    while (!r1.empty() && r1.size() > 1) {
        // divide r0 by r1
        std::vector<int> quo(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
        auto rem = r0;
        int il = f.inv(r1.back());
        for (int k = int(rem.size()) - 1; k >= int(r1.size()) - 1; --k) {
            int c = f.mul(rem[k], il);
            if (!c) continue;
            quo[k - r1.size() + 1] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[k - r1.size() + 1 + j] = f.sub(rem[k - r1.size() + 1 + j], f.mul(c, r1[j]));
        }
        rem = fqpoly::trim(rem);
        auto qs = fqpoly::mul(fqpoly::trim(quo), s1, q);
        std::vector<int> ns(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < ns.size(); ++i)
            ns[i] = f.sub(i < s0.size() ? s0[i] : 0, i < qs.size() ? qs[i] : 0);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = fqpoly::trim(ns);
    }
    internal_check(r1.size() == 1, "modulus not irreducible");
    int iv = f.inv(r1[0]);
    for (auto& x : s1) x = f.mul(x, iv);
    return GF(lv_, s1);
}

GF GF::pow(unsigned long long e) const {
    GF r = one(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

GF GF::frob(long e) const {
    int m = lv_->m;
    long k = ((e % m) + m) % m;
    if (c_.empty() || k == 0) return *this;
    std::vector<int> v = coords();
    for (long it = 0; it < k; ++it) v = lv_->frob.apply(v);
    return GF(lv_, v);
}

std::vector<int> GF::coords() const {
    std::vector<int> v(lv_->m, 0);
    std::copy(c_.begin(), c_.end(), v.begin());
    return v;
}

std::string GF::encode() const {
    std::ostringstream os;
    os << "[";
    auto v = coords();
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

std::string GF::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = int(c_.size()) - 1; k >= 0; --k) {
        int c = c_[k];
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (k == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "a";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

GF GF::embed(int m) const { return lv_->tower->embed(*this, m); }

// ---------------------------------------------------------------- polys over a level

namespace {

using PV = GFPolyV;

void ptrim(PV& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

PV padd(const PV& a, const PV& b) {
    PV r(std::max(a.size(), b.size()), a.empty() ? b[0].zero() : a[0].zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    ptrim(r);
    return r;
}

PV pmul(const PV& a, const PV& b) {
    if (a.empty() || b.empty()) return {};
    PV r(a.size() + b.size() - 1, a[0].zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ptrim(r);
    return r;
}

void pdivmod(const PV& a, const PV& b, PV& quo, PV& rem) {
    rem = a;
    ptrim(rem);
    internal_check(!b.empty(), "poly division by zero");
    int db = int(b.size()) - 1;
    GF il = b.back().inv();
    quo.assign(rem.size() > b.size() - 1 ? rem.size() - db : 0, b[0].zero());
    for (int k = int(rem.size()) - 1; k >= db; --k) {
        if (rem[k].is_zero()) continue;
        GF c = rem[k] * il;
        quo[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
    }
    ptrim(rem);
    ptrim(quo);
}

PV pmod(const PV& a, const PV& b) {
    PV q, r;
    pdivmod(a, b, q, r);
    return r;
}

PV pmonic(PV a) {
    ptrim(a);
    if (a.empty()) return a;
    GF il = a.back().inv();
    for (auto& x : a) x *= il;
    return a;
}

PV pgcd(PV a, PV b) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PV r = pmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a);
}

PV ppowmod(PV b, unsigned long long e, const PV& m) {
    PV r{b.empty() ? m[0].one() : b[0].one()};
    b = pmod(b, m);
    while (e) {
        if (e & 1) r = pmod(pmul(r, b), m);
        b = pmod(pmul(b, b), m);
        e >>= 1;
    }
    return r;
}

// q-power map on F_{q^n}[X]/(h), given xq[j] = X^{qj} mod h.
PV qpow(const PV& b, const std::vector<PV>& xq) {
    PV r;
    for (size_t j = 0; j < b.size(); ++j) {
        if (b[j].is_zero()) continue;
        GF c = b[j].frob(1);
        PV t = xq[j];
        for (auto& x : t) x *= c;
        r = padd(r, t);
    }
    return r;
}

std::vector<PV> xq_table(const PV& h) {
    int d = int(h.size()) - 1;
    GF z = h[0].zero();
    int q = z.q();
    std::vector<PV> xq(d);
    xq[0] = PV{z.one()};
    if (d > 1) {
        PV X{z, z.one()};
        PV x1 = ppowmod(X, q, h);
        for (int j = 1; j < d; ++j) xq[j] = pmod(pmul(xq[j - 1], x1), h);
    }
    return xq;
}

void split(const PV& h, std::mt19937_64& rng, std::vector<GF>& out) {
    int d = int(h.size()) - 1;
    if (d <= 0) return;
    GF z = h[0].zero();
    if (d == 1) {
        out.push_back(-(h[0] / h[1]));
        return;
    }
    const GFLevel* lv = z.level();
    int q = lv->q, n = lv->m;
    auto xq = xq_table(h);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> cs(n);
        for (auto& c : cs) c = int(rng() % q);
        GF delta(lv, cs);
        PV g;
        if (q == 2) {
            PV b = pmod(PV{z, delta}, h);
            PV t = b;
            for (int i = 1; i < n; ++i) {
                b = qpow(b, xq);
                t = padd(t, b);
            }
            g = pgcd(h, t);
        } else {
            PV a = ppowmod(PV{delta, z.one()}, (unsigned long long)(q - 1) / 2, h);
            PV N = a, b = a;
            for (int i = 1; i < n; ++i) {
                b = qpow(b, xq);
                N = pmod(pmul(N, b), h);
            }
            N = padd(N, PV{-z.one()});
            g = pgcd(h, N);
        }
        int dg = int(g.size()) - 1;
        if (dg > 0 && dg < d) {
            PV quo, rem;
            pdivmod(h, g, quo, rem);
            split(g, rng, out);
            split(pmonic(quo), rng, out);
            return;
        }
    }
    internal_check(false, "root splitting did not terminate");
}

}  // namespace

// ---------------------------------------------------------------- tower

namespace {
std::mutex g_registry_mu;
std::map<std::pair<int, std::vector<int>>, std::shared_ptr<FieldTower>>& registry() {
    static std::map<std::pair<int, std::vector<int>>, std::shared_ptr<FieldTower>> r;
    return r;
}
}  // namespace

std::shared_ptr<FieldTower> FieldTower::get(int q, const std::vector<int>& base_poly) {
    require(is_prime(q) && q < 256, "q must be a prime below 256");
    auto p = fqpoly::trim(base_poly);
    Fq f(q);
    for (auto& x : p) x = f.norm(x);
    p = fqpoly::trim(p);
    require(p.size() >= 2, "field polynomial must have positive degree");
    int il = f.inv(p.back());
    for (auto& x : p) x = f.mul(x, il);
    require(fqpoly::is_irreducible(p, q), "field polynomial is not irreducible over F_q");
    std::lock_guard<std::mutex> lk(g_registry_mu);
    auto key = std::make_pair(q, p);
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    std::shared_ptr<FieldTower> t(new FieldTower(q, p));
    registry()[key] = t;
    return t;
}

FieldTower::FieldTower(int q, std::vector<int> base_poly)
    : q_(q), s_(int(base_poly.size()) - 1), base_poly_(std::move(base_poly)) {}

std::unique_ptr<GFLevel> FieldTower::make_level(int m, std::vector<int> md) {
    auto lv = std::make_unique<GFLevel>();
    lv->q = q_;
    lv->m = m;
    lv->mod = md;
    lv->tower = this;
    lv->frob = FqMat(q_, m, m);
    // x^q mod f, then successive powers
    std::vector<int> xq{1};
    std::vector<int> base = fqpoly::mod({0, 1}, md, q_);
    std::vector<int> x1{1};
    for (int i = 0; i < q_; ++i) x1 = fqpoly::mod(fqpoly::mul(x1, base, q_), md, q_);
    std::vector<int> cur{1};
    for (int j = 0; j < m; ++j) {
        for (size_t i = 0; i < cur.size(); ++i) lv->frob.at(int(i), j) = cur[i];
        cur = fqpoly::mod(fqpoly::mul(cur, x1, q_), md, q_);
    }
    return lv;
}

std::vector<int> FieldTower::find_irreducible(int m) const {
    if (m == 1) return {0, 1};
    std::vector<int> f(m + 1, 0);
    f[m] = 1;
    for (long long k = 1;; ++k) {
        long long v = k;
        for (int i = 0; i < m; ++i) {
            f[i] = int(v % q_);
            v /= q_;
        }
        if (v) break;
        if (f[0] == 0) continue;
        if (fqpoly::is_irreducible(f, q_)) return f;
    }
    internal_check(false, "no irreducible polynomial found");
    return {};
}

const GFLevel* FieldTower::level(int m) {
    require(m >= 1, "level degree must be positive");
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto it = levels_.find(m);
    if (it != levels_.end()) return it->second.get();
    std::vector<int> md = (m == s_) ? base_poly_ : find_irreducible(m);
    auto lv = make_level(m, md);
    const GFLevel* p = lv.get();
    levels_[m] = std::move(lv);
    return p;
}

std::vector<GF> FieldTower::roots(const GFPolyV& g0) {
    PV g = g0;
    ptrim(g);
    if (g.size() <= 1) return {};
    g = pmonic(g);
    GF z = g[0].zero();
    int n = z.degree();
    auto xq = xq_table(g);
    PV X{z, z.one()};
    PV xp = pmod(X, g);
    for (int i = 0; i < n; ++i) xp = qpow(xp, xq);
    PV h = pgcd(g, padd(xp, PV{z, -z.one()}));
    std::vector<GF> out;
    std::mt19937_64 rng(0x5eed0000ULL + 131ULL * n + h.size());
    split(h, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

GF FieldTower::gen_image(int a, int b) {
    const FqMat& E = embedding(a, b);
    std::vector<int> g(a, 0);
    if (a > 1) g[1] = 1;
    else g[0] = Fq(q_).neg(level(1)->mod[0]);  // root of the degree-1 modulus
    return GF(level(b), E.apply(g));
}

// Roots in level b of the level-a modulus. The subfield of level b fixed by
// Frob^a is found by linear algebra; a generator y of it with F_q-minimal
// polynomial mu is matched against a root z of mu in level a, which is
// cheap because level a is small.
std::vector<GF> FieldTower::subfield_roots(int a, int b) {
    const GFLevel* la = level(a);
    const GFLevel* lb = level(b);
    FqMat P = FqMat::identity(q_, b), B = lb->frob;
    for (int e = a; e > 0; e >>= 1) {
        if (e & 1) P = P.mul(B);
        B = B.mul(B);
    }
    for (int i = 0; i < b; ++i) P.at(i, i) = Fq(q_).sub(P.at(i, i), 1);
    auto ker = P.kernel();
    internal_check(int(ker.size()) == a, "fixed subfield has the wrong dimension");
    std::mt19937_64 rng(0x5eedULL + 7ULL * a + b);
    GF y(lb);
    std::vector<int> mu;
    for (int attempt = 0; attempt < 1000 && mu.empty(); ++attempt) {
        std::vector<int> v(b, 0);
        for (const auto& k : ker) {
            int c = int(rng() % q_);
            for (int i = 0; i < b; ++i) v[i] = Fq(q_).add(v[i], Fq(q_).mul(c, k[i]));
        }
        y = GF(lb, v);
        FqMat pw(q_, b, a);
        GF cur = y.one();
        for (int i = 0; i < a; ++i) {
            auto c = cur.coords();
            for (int k = 0; k < b; ++k) pw.at(k, i) = c[k];
            cur *= y;
        }
        if (pw.rank() < a) continue;
        auto sol = pw.solve(cur.coords());
        internal_check(sol.has_value(), "subfield element has no minimal polynomial of degree a");
        mu.assign(a + 1, 1);
        for (int i = 0; i < a; ++i) mu[i] = Fq(q_).neg((*sol)[i]);
    }
    internal_check(!mu.empty(), "no generator of the fixed subfield found");
    PV g;
    for (int c : mu) g.push_back(GF::from_int(la, c));
    auto zs = roots(g);
    internal_check(!zs.empty(), "minimal polynomial has no root in its own level");
    FqMat zp(q_, a, a);
    GF cur = zs[0].one();
    for (int i = 0; i < a; ++i) {
        auto c = cur.coords();
        for (int k = 0; k < a; ++k) zp.at(k, i) = c[k];
        cur *= zs[0];
    }
    std::vector<int> gen(a, 0);
    if (a > 1) gen[1] = 1;
    else gen[0] = Fq(q_).neg(la->mod[0]);
    auto e = zp.solve(gen);
    internal_check(e.has_value(), "generator is not a polynomial in the root");
    GF r(lb), pw = y.one();
    for (int i = 0; i < a; ++i) {
        if ((*e)[i]) r += pw.scale((*e)[i]);
        pw *= y;
    }
    std::vector<GF> out;
    for (int i = 0; i < a; ++i, r = r.frob(1)) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

const FqMat& FieldTower::embedding(int a, int b) {
    require(a >= 1 && b % a == 0, "embedding requires a | b");
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto key = std::make_pair(a, b);
    auto it = emb_.find(key);
    if (it != emb_.end()) return it->second;
    const GFLevel* lb = level(b);
    FqMat E(q_, b, a);
    if (a == b) {
        E = FqMat::identity(q_, a);
    } else if (a == 1) {
        E.at(0, 0) = 1;
    } else {
        auto cands = subfield_roots(a, b);
        internal_check(int(cands.size()) == a, "defining polynomial does not split in upper level");
        std::vector<int> divs;
        for (int d = 2; d < a; ++d)
            if (a % d == 0) divs.push_back(d);
        GF chosen(lb);
        bool found = false;
        for (const GF& r : cands) {
            bool ok = true;
            for (int d : divs) {
                GF y = gen_image(d, a);
                // evaluate y (a polynomial in the level-a generator) at r
                auto yc = y.coords();
                GF acc(lb), pw = GF::from_int(lb, 1);
                for (int i = 0; i < a; ++i) {
                    if (yc[i]) acc += pw.scale(yc[i]);
                    pw *= r;
                }
                if (acc != gen_image(d, b)) { ok = false; break; }
            }
            if (ok) { chosen = r; found = true; break; }
        }
        internal_check(found, "no compatible embedding root");
        GF pw = GF::from_int(lb, 1);
        for (int i = 0; i < a; ++i) {
            auto c = pw.coords();
            for (int k = 0; k < b; ++k) E.at(k, i) = c[k];
            pw *= chosen;
        }
    }
    return emb_[key] = E;
}

GF FieldTower::embed(const GF& x, int m) {
    int a = x.degree();
    if (a == m) return x;
    const FqMat& E = embedding(a, m);
    return GF(level(m), E.apply(x.coords()));
}

}  // namespace amot
