#pragma once

#include <random>

#include "amot/algebra.hpp"

namespace th {

using namespace amot;

// F_9 = F_3[a]/(a^2+1), the running example field.
inline std::shared_ptr<FieldTower> f9() { return FieldTower::get(3, {1, 0, 1}); }
inline GF alpha() { return GF::gen(f9()->level(2)); }
inline GF k0() { return GF(f9()->level(2)); }
inline GFPoly tvar() { return GFPoly::var(k0()); }
inline GFPoly cst(const GF& c) { return GFPoly::constant(c); }
inline GFPoly cst(long v) { return GFPoly::constant(k0().from_int(v)); }

inline GF random_gf(const GFLevel* lv, std::mt19937_64& rng) {
    std::vector<int> c(lv->m);
    for (auto& x : c) x = int(rng() % lv->q);
    return GF(lv, c);
}

inline GFPoly random_poly(const GF& proto, int deg, std::mt19937_64& rng) {
    std::vector<GF> c;
    for (int i = 0; i <= deg; ++i) c.push_back(random_gf(proto.level(), rng));
    return GFPoly(proto, c);
}

// Every element of a level, by brute force enumeration of coordinates.
inline std::vector<GF> all_elements(const GFLevel* lv) {
    std::vector<GF> out;
    long total = 1;
    for (int i = 0; i < lv->m; ++i) total *= lv->q;
    for (long k = 0; k < total; ++k) {
        std::vector<int> c(lv->m);
        long v = k;
        for (auto& x : c) {
            x = int(v % lv->q);
            v /= lv->q;
        }
        out.emplace_back(lv, c);
    }
    return out;
}

}  // namespace th

#include "amot/motive.hpp"

namespace th {

inline RatGF rat(const GFPoly& p) { return RatGF(p); }
inline RatGF rat(long v) { return RatGF(cst(v)); }
inline GFPoly tpoly(std::initializer_list<GF> c) { return GFPoly(k0(), std::vector<GF>(c)); }
// t - alpha
inline GFPoly lin() { return tvar() - cst(alpha()); }

inline Mat<RatGF> rmat(int r, int c, std::initializer_list<RatGF> v) {
    Mat<RatGF> m(rat(0), r, c);
    int k = 0;
    for (const auto& x : v) m(k / c, k % c) = x, ++k;
    return m;
}

inline PMat<GF> pmat(int r, int c, std::initializer_list<GFPoly> v) {
    PMat<GF> m(GFPoly(k0()), r, c);
    int k = 0;
    for (const auto& x : v) m(k / c, k % c) = x, ++k;
    return m;
}

inline BoldRing ring9() { return fk_ring(f9()); }

// Base F_9 with theta = alpha, and the Carlitz motive (C, 1).
inline Base<GF> base9() { return finite_base(3, {1, 0, 1}, alpha()); }
inline EffectiveMotive<GF> carlitz_eff() { return new_effective(base9(), pmat(1, 1, {lin()})); }
inline Motive<GF> carlitz() { return make_motive(carlitz_eff()); }

inline RatGF random_rat(std::mt19937_64& rng, int deg = 1) {
    GFPoly n = random_poly(k0(), deg, rng), d = random_poly(k0(), deg, rng);
    if (d.is_zero()) d = cst(1);
    return RatGF(n, d);
}

}  // namespace th
