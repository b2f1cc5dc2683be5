#include "amot/gfpoly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace amot {

GFPoly gfpoly_from_ints(FieldTower& tower, int m, const std::vector<int>& c) {
    const GFLevel* lv = tower.level(m);
    std::vector<GF> v;
    for (int x : c) v.push_back(GF::from_int(lv, x));
    return GFPoly(GF(lv), std::move(v));
}

GFPoly gfpoly_embed(const GFPoly& p, int m) {
    if (p.proto().degree() == m) return p;
    return p.map([m](const GF& c) { return c.embed(m); });
}

bool gfpoly_in_prime_field(const GFPoly& p) {
    for (const auto& c : p.coeffs())
        if (!c.in_prime_field()) return false;
    return true;
}

std::vector<int> gfpoly_prime_ints(const GFPoly& p) {
    std::vector<int> v;
    for (const auto& c : p.coeffs()) {
        internal_check(c.in_prime_field(), "coefficient outside F_q");
        v.push_back(c.prime_value());
    }
    return v;
}

namespace {

std::vector<GFPoly> xq_table(const GFPoly& m) {
    int d = m.deg();
    GF z = m.proto();
    std::vector<GFPoly> xq(std::max(d, 1), GFPoly(z));
    xq[0] = GFPoly::constant(z.one());
    if (d > 1) {
        GFPoly x1 = powmod(GFPoly::var(z), std::uint64_t(z.q()), m);
        for (int j = 1; j < d; ++j) xq[j] = (xq[j - 1] * x1) % m;
    }
    return xq;
}

GFPoly qpow_once(const GFPoly& b, const std::vector<GFPoly>& xq) {
    GFPoly r(b.proto());
    for (int j = 0; j <= b.deg(); ++j) {
        if (b[j].is_zero()) continue;
        r += xq[j] * b[j].frob(1);
    }
    return r;
}

GFPoly pth_root(const GFPoly& f) {
    int q = f.proto().q(), m = f.proto().degree();
    std::vector<GF> v;
    for (int k = 0; k * q <= f.deg(); ++k) v.push_back(f[k * q].frob(m - 1));
    return GFPoly(f.proto(), std::move(v));
}

void squarefree(const GFPoly& f, int mult, std::vector<std::pair<GFPoly, int>>& out) {
    if (f.deg() <= 0) return;
    int q = f.proto().q();
    GFPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree(pth_root(f), mult * q, out);
        return;
    }
    GFPoly c = gcd(f, fp);
    GFPoly w = f / c;
    int i = 1;
    while (w.deg() > 0) {
        GFPoly y = gcd(w, c);
        GFPoly z = w / y;
        if (z.deg() > 0) out.push_back({z.monic(), i * mult});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.deg() > 0) squarefree(pth_root(c.monic()), mult * q, out);
}

void edf(const GFPoly& g, int d, std::mt19937_64& rng, std::vector<GFPoly>& out) {
    if (g.deg() <= 0) return;
    if (g.deg() == d) {
        out.push_back(g.monic());
        return;
    }
    GF z = g.proto();
    const GFLevel* lv = z.level();
    int q = lv->q, m = lv->m;
    auto xq = xq_table(g);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<GF> rv;
        for (int k = 0; k < g.deg(); ++k) {
            std::vector<int> cs(m);
            for (auto& c : cs) c = int(rng() % q);
            rv.emplace_back(lv, cs);
        }
        GFPoly r(z, rv);
        if (r.deg() <= 0) continue;
        GFPoly cand;
        if (q == 2) {
            GFPoly b = r % g, t = b;
            for (int i = 1; i < m * d; ++i) {
                b = qpow_once(b, xq);
                t += b;
            }
            cand = gcd(g, t);
        } else {
            GFPoly b = powmod(r, std::uint64_t(q - 1) / 2, g), n = b;
            for (int i = 1; i < m * d; ++i) {
                b = qpow_once(b, xq);
                n = (n * b) % g;
            }
            cand = gcd(g, n - n.one());
        }
        if (cand.deg() > 0 && cand.deg() < g.deg()) {
            edf(cand, d, rng, out);
            edf((g / cand).monic(), d, rng, out);
            return;
        }
    }
    internal_check(false, "equal-degree splitting did not terminate");
}

bool canon_less(const GFPoly& a, const GFPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int k = a.deg(); k >= 0; --k)
        if (a[k] != b[k]) return a[k] < b[k];
    return false;
}

}  // namespace

GFPoly powmod(GFPoly b, std::uint64_t e, const GFPoly& m) {
    GFPoly r = GFPoly::constant(m.proto().one()) % m;
    b = b % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

GFPoly qpow_mod(const GFPoly& b, const GFPoly& m, long e) {
    auto xq = xq_table(m);
    GFPoly r = b % m;
    for (long i = 0; i < e; ++i) r = qpow_once(r, xq);
    return r;
}

std::vector<std::pair<GFPoly, int>> factor(const GFPoly& f0) {
    require(!f0.is_zero(), "factorization of zero polynomial");
    GFPoly f = f0.monic();
    std::vector<std::pair<GFPoly, int>> sqf;
    squarefree(f, 1, sqf);
    std::mt19937_64 rng(0xfac7ULL + f.deg());
    std::vector<std::pair<GFPoly, int>> res;
    int m = f.proto().degree();
    for (auto& [g0, mult] : sqf) {
        GFPoly g = g0;
        GFPoly h = GFPoly::var(g.proto()) % g;
        auto xq = xq_table(g);
        for (int d = 1; 2 * d <= g.deg(); ++d) {
            for (int i = 0; i < m; ++i) h = qpow_once(h, xq);
            GFPoly gd = gcd(g, h - GFPoly::var(g.proto()));
            if (gd.deg() > 0) {
                std::vector<GFPoly> parts;
                edf(gd, d, rng, parts);
                for (auto& p : parts) res.push_back({p, mult});
                g = g / gd;
                h = h % g;
                xq = xq_table(g);
            }
        }
        if (g.deg() > 0) res.push_back({g.monic(), mult});
    }
    std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) { return canon_less(a.first, b.first); });
    std::vector<std::pair<GFPoly, int>> merged;
    for (auto& x : res) {
        if (!merged.empty() && merged.back().first == x.first)
            merged.back().second += x.second;
        else
            merged.push_back(x);
    }
    return merged;
}

bool is_squarefree(const GFPoly& f) {
    if (f.deg() <= 0) return true;
    return gcd(f, f.derivative()).deg() == 0;
}

GFPoly minpoly_fq(const GF& x) {
    GFPoly p = GFPoly::constant(x.one());
    GF y = x;
    do {
        p = p * GFPoly(x, {-y, x.one()});
        y = y.frob(1);
    } while (y != x);
    auto ints = gfpoly_prime_ints(p);
    return gfpoly_from_ints(*x.level()->tower, 1, ints);
}

std::string factor_str(const std::vector<std::pair<GFPoly, int>>& fs, const std::string& var) {
    if (fs.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (i) os << "*";
        os << "(" << fs[i].first.str(var) << ")";
        if (fs[i].second != 1) os << "^" << fs[i].second;
    }
    return os.str();
}

}  // namespace amot
