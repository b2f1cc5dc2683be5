#pragma once

// Random generators, fixtures and independent oracles shared by the unit
// tests and the acceptance binary.

#include <climits>
#include <random>

#include "amot/galois.hpp"
#include "amot/periods.hpp"
#include "helpers.hpp"

namespace th {

inline GFPoly pt() { return prime_poly(*f9(), {0, 1}); }

inline GFPoly pt1() { return prime_poly(*f9(), {1, 1}); }

inline Motive<GF> cc() { return tensor_motive(carlitz(), carlitz()); }

inline Motive<GF> nonsplit() {
    return make_motive(new_effective(base9(), pmat(2, 2, {lin(), cst(1), cst(0), lin()})));
}

// (t^2+1)^{-1} mod t^n from the product of the conjugates t - alpha^{3^i}.
inline APn carlitz_closed_form(int n) {
    GF a = alpha();
    GFPoly prod = (tvar() - cst(a)) * (tvar() - cst(a.frob(1)));
    internal_check(gfpoly_in_prime_field(prod), "conjugate product not over F_q");
    GFPoly p1 = gfpoly_from_ints(*f9(), 1, gfpoly_prime_ints(prod));
    auto ctx = apn_context(pt(), n);
    return APn(ctx, p1).inv();
}

// Random torsion module with F_q-coefficient divisors d_1 | d_2 | ... and
// well-defined random tau; singular tau_lin is rejected.
inline TorsionBoldModule<GF> random_torsion(std::mt19937_64& rng, int max_dim) {
    for (;;) {
        int budget = 1 + int(rng() % max_dim), used = 0;
        GFPoly acc = cst(1);
        std::vector<GFPoly> chain;
        for (;;) {
            int minb = chain.empty() ? 1 : 0, maxb = budget - used - acc.deg();
            if (maxb < minb || (!chain.empty() && rng() % 2)) break;
            int b = minb + int(rng() % (maxb - minb + 1));
            std::vector<int> c(b + 1);
            for (auto& x : c) x = int(rng() % 3);
            c[b] = 1;
            acc = acc * lift_fq_poly(c, k0());
            chain.push_back(acc);
            used += acc.deg();
        }
        int n = int(chain.size());
        PMat<GF> tau(GFPoly(k0()), n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                GFPoly e = random_poly(k0(), chain[i].deg() - 1, rng);
                if (i > j) e = e * (chain[i] / chain[j]);
                tau(i, j) = e;
            }
        auto t = make_torsion(base9(), chain, tau);
        if (tau_lin_bijective(t)) return t;
    }
}

inline GFPoly fq_poly(const std::vector<int>& c) { return gfpoly_embed(gfpoly_from_ints(*f9(), 1, c), 2); }

inline GFPoly random_fq_poly(std::mt19937_64& rng, int deg) {
    std::vector<int> c(deg + 1);
    for (auto& x : c) x = int(rng() % 3);
    return fq_poly(c);
}

// Base over F_3(u) with theta = u.
inline Base<UFunc> base_u() {
    auto T = FieldTower::prime(3);
    return rational_base(3, {0, 1}, UFunc::var(GF(T->level(1))));
}

inline PolyX xpoly(std::initializer_list<RatGF> c) { return PolyX(rat(0), std::vector<RatGF>(c)); }

inline RatGF rc(const GF& a) { return rat(cst(a)); }

inline RatFuncX random_x(std::mt19937_64& rng) {
    auto coef = [&] { return rng() % 3 == 0 ? rat(0) : rc(random_gf(k0().level(), rng)); };
    PolyX n = xpoly({coef(), coef(), coef()});
    PolyX d = xpoly({coef(), coef(), rat(1)});
    if (rng() % 2) d = d * xpoly({coef(), rat(1)});
    return RatFuncX(n, d);
}

inline std::shared_ptr<FieldTower> f3() { return FieldTower::prime(3); }

inline GF g3() { return GF(f3()->level(1)); }

inline UFunc uvar(const GF& proto) { return UFunc::var(proto); }

inline UFunc ucst(const GF& c) { return UFunc::constant(c); }

inline UFunc uint_(const GF& proto, long v) { return ucst(proto.from_int(v)); }

inline GFPoly upoly(const std::vector<int>& c) { return gfpoly_from_ints(*f3(), 1, c); }

inline UFunc random_ufunc(const GF& proto, std::mt19937_64& rng) {
    GFPoly num = random_poly(proto, int(rng() % 3), rng);
    GFPoly den = random_poly(proto, int(rng() % 3), rng);
    if (den.is_zero()) den = GFPoly::constant(proto.one());
    den = den.monic();
    UFunc f{RatFunc<GF>(num, den)};
    long shift = long(rng() % 5) - 2;
    UFunc u = uvar(proto);
    for (long i = 0; i < std::abs(shift); ++i) f = shift > 0 ? f * u : f / u;
    return f;
}

inline LaurentApprox random_laurent(const GF& proto, int d, std::mt19937_64& rng) {
    int len = 1 + int(rng() % 3);
    std::vector<std::vector<UFunc>> c;
    for (int i = 0; i < len; ++i) {
        std::vector<UFunc> z;
        for (int j = 0; j < d; ++j) z.push_back(rng() % 4 == 0 ? uint_(proto, 0) : random_ufunc(proto, rng));
        c.push_back(z);
    }
    return laurent_exact(int(rng() % 3), c);
}

inline std::vector<Place> level_one_places() {
    return {place_at(upoly({0, 1})), place_at(upoly({1, 1})), place_at(upoly({1, 0, 1})), place_infinity()};
}

using LMat = std::vector<std::vector<LaurentApprox>>;

// Delta = sigma^m(Y) Y^{-1} mod t^N for Y with Laurent-polynomial coefficients in u.
inline LMat constructed_delta(int n, int d, int m, int N, std::mt19937_64& rng) {
    GF proto = g3();
    UFunc z = uint_(proto, 0);
    auto rand_laurent_u = [&]() {
        UFunc f = z;
        UFunc u = uvar(proto);
        for (int k = -1; k <= 2; ++k) {
            if (rng() % 2) continue;
            UFunc mono = uint_(proto, 1 + long(rng() % 2));
            for (int i = 0; i < std::abs(k); ++i) mono = k > 0 ? mono * u : mono / u;
            f += mono;
        }
        return f;
    };
    // Y[r] per component j: n x n matrices over F_3(u)
    std::vector<std::vector<Mat<UFunc>>> Y(2, std::vector<Mat<UFunc>>(size_t(d), Mat<UFunc>(z, n, n)));
    for (int j = 0; j < d; ++j) {
        do {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) Y[0][size_t(j)](a, b) = rand_laurent_u();
        } while (det_field(Y[0][size_t(j)]).is_zero());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) Y[1][size_t(j)](a, b) = rng() % 2 ? rand_laurent_u() : z;
    }
    auto Ycoef = [&](int r, int j) { return r < 2 ? Y[size_t(r)][size_t(j)] : Mat<UFunc>(z, n, n); };
    LMat delta(static_cast<size_t>(n), std::vector<LaurentApprox>(static_cast<size_t>(n)));
    std::vector<std::vector<Mat<UFunc>>> Dj(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        Mat<UFunc> Y0inv = *inverse_field(Ycoef(0, j));
        std::vector<Mat<UFunc>> Z{Y0inv};
        for (int r = 1; r < N; ++r) {
            Mat<UFunc> acc(z, n, n);
            for (int l = 1; l <= r; ++l) acc = acc + Ycoef(l, j) * Z[size_t(r - l)];
            Z.push_back(Mat<UFunc>(z, n, n) - Y0inv * acc);
        }
        int js = ((j - m) % d + d) % d;
        for (int r = 0; r < N; ++r) {
            Mat<UFunc> acc(z, n, n);
            for (int l = 0; l <= r; ++l)
                acc = acc + Ycoef(l, js).map([&](const UFunc& x) { return sigma(x, m); }) * Z[size_t(r - l)];
            Dj[size_t(j)].push_back(acc);
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<std::vector<UFunc>> cs;
            for (int r = 0; r < N; ++r) {
                std::vector<UFunc> t;
                for (int j = 0; j < d; ++j) t.push_back(Dj[size_t(j)][size_t(r)](a, b));
                cs.push_back(t);
            }
            delta[size_t(a)][size_t(b)] = laurent_exact(0, cs);
        }
    return delta;
}

// sigma^m(F_i) = sum_k delta_ik F_k through t^{N-1}.
inline bool is_fixed_point(const LMat& delta, const std::vector<LaurentApprox>& F, int m, int N) {
    for (size_t i = 0; i < F.size(); ++i) {
        LaurentApprox rhs = laurent_zero(F[i].proto, F[i].d);
        for (size_t k = 0; k < F.size(); ++k) rhs = rhs + delta[i][k] * F[k];
        if (!agree_on_window(sigma(F[i], m), rhs, N)) return false;
    }
    return true;
}

// Raw check of s_r^q (shifted) = sum_i f_i s_{r-i}, in GF arithmetic.
inline bool quotient_oracle(const LaurentApprox& f, const LaurentApprox& s, int N) {
    int d = f.d;
    int L = s.level();
    auto val = [&](const LaurentApprox& x, int i, int j) {
        UFunc c = x.coeff(i)[size_t(j)];
        return c.is_zero() ? GF(c.level()).embed(L) : c.constant_value().embed(L);
    };
    for (int r = 0; r <= N; ++r)
        for (int j = 0; j < d; ++j) {
            GF lhs = val(s, r, (j - 1 + d) % d).pow(3);
            GF rhs = GF(s.proto.level());
            for (int i = 0; i <= r; ++i) rhs += val(f, i, j) * val(s, r - i, j);
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace th
