#include "doctest.h"
#include "generators.hpp"

using namespace amot;
using namespace th;

namespace {

GFPoly t() { return tvar(); }
GFPoly one() { return cst(1); }
GFPoly zero() { return cst(0); }

Motive<GF> diag_motive(const Base<GF>& b, const GFPoly& x, const GFPoly& y) {
    return make_motive(new_effective(b, pmat(2, 2, {x, zero(), zero(), y})));
}

}  // namespace

TEST_CASE("new_effective examples") {
    auto c = carlitz_eff();
    CHECK(c.rank() == 1);
    CHECK(c.e == 1);
    CHECK_THROWS_AS(new_effective(base9(), pmat(1, 1, {t()})), CharacteristicViolation);
    auto m = new_effective(base9(), pmat(2, 2, {lin(), one(), zero(), lin()}));
    CHECK(m.e == 2);
    CHECK_THROWS_AS(new_effective(base9(), pmat(1, 1, {zero()})), CharacteristicViolation);
    try {
        new_effective(base9(), pmat(1, 1, {t() * lin()}));
    } catch (const CharacteristicViolation& e) {
        CHECK(std::string(e.what()).find("factor (t)") != std::string::npos);
    }
}

TEST_CASE("base data") {
    auto b = base9();
    CHECK(b.kernel_iota == gfpoly_from_ints(*f9(), 1, {1, 0, 1}));
    CHECK(!b.generic());
    auto bu = base_u();
    CHECK(bu.generic());
}

TEST_CASE("tensor, exterior, det and dual") {
    auto C = carlitz();
    auto CC = tensor_motive(C, C);
    CHECK(CC.rank() == 1);
    CHECK(CC.m.delta(0, 0) == lin() * lin());
    CHECK(CC.m.e == 2);

    PMat<GF> D = pmat(2, 2, {lin(), one(), zero(), lin() * lin()});
    auto X = make_motive(new_effective(base9(), D));
    auto w2 = exterior_power(X, 2);
    CHECK(w2.rank() == 1);
    CHECK(w2.m.delta(0, 0) == det_cofactor(D));
    CHECK(det_motive(X).m.delta == w2.m.delta);
    CHECK(exterior_power(X, 0).m.delta.is_identity());
    CHECK(exterior_power(X, 1).m.delta == D);
    CHECK_THROWS_AS(exterior_power(X, 3), ValidationError);
    CHECK(second_highest(X).delta == D);

    auto dC = dual_motive(C);
    CHECK(dC.m.delta.is_identity());
    CHECK(dC.l.delta(0, 0) == lin());
    CHECK(motive_to_bold(dC).tau == rmat(1, 1, {rat(lin()).inv()}));
}

TEST_CASE("evaluation pairing to the unit is a homomorphism") {
    auto C = carlitz();
    CHECK(intertwines(evaluation_hom(C)));
    auto X = make_motive(new_effective(base9(), pmat(2, 2, {lin(), one(), zero(), lin()})));
    CHECK(intertwines(evaluation_hom(X)));
    auto Y = direct_sum(X, C);
    CHECK(Y.rank() == 3);
    CHECK(intertwines(evaluation_hom(Y)));
    CHECK(intertwines(evaluation_hom(tensor_motive(X, X))));
}

TEST_CASE("det of a tensor product") {
    auto X = make_motive(new_effective(base9(), pmat(2, 2, {lin(), one(), zero(), lin()})));
    auto C = carlitz();
    auto Z = direct_sum(C, make_motive(unit_effective(base9())));
    for (auto [a, b] : {std::pair{X, C}, std::pair{X, X}, std::pair{X, Z}}) {
        GFPoly da = det_cofactor(a.m.delta), db = det_cofactor(b.m.delta);
        CHECK(det_motive(tensor_motive(a, b)).m.delta(0, 0) == da.pow(b.rank()) * db.pow(a.rank()));
    }
}

TEST_CASE("direct sum layout") {
    auto C = carlitz();
    auto CC = tensor_motive(C, C);
    auto X = direct_sum(make_motive(C.m, C.m), CC);
    // ((M' (x) L) + (M (x) L'), L' (x) L)
    CHECK(X.m.delta == pmat(2, 2, {lin(), zero(), zero(), lin() * lin() * lin()}));
    CHECK(X.l.delta(0, 0) == lin());
}

TEST_CASE("hom_motives examples") {
    auto C = carlitz();
    auto h = hom_motives(C, C);
    CHECK(h.saturated);
    REQUIRE(h.rank == 1);
    CHECK(h.basis[0].is_identity());
    CHECK(hom_motives(C, tensor_motive(C, C)).rank == 0);
    CHECK(hom_motives(tensor_motive(C, C), C).rank == 0);

    auto X = diag_motive(base9(), lin(), lin());
    auto e = hom_motives(X, X);
    CHECK(e.rank == 4);
    for (const auto& f : e.basis) CHECK(intertwines(MotiveHom<GF>{X, X, f}));

    // twisted pair (C (x) C, C) is isomorphic to C
    auto Y = make_motive(tensor_effective(C.m, C.m), C.m);
    auto hy = hom_motives(C, Y);
    CHECK(hy.rank == 1);
}

TEST_CASE("hom_motives maps into bold hom invariants") {
    auto C = carlitz();
    auto X = make_motive(new_effective(base9(), pmat(2, 2, {lin(), one(), zero(), lin()})));
    for (auto [a, b] : {std::pair{X, X}, std::pair{C, X}, std::pair{X, C}}) {
        auto h = hom_motives(a, b);
        BoldModule H = hom_module(motive_to_bold(a), motive_to_bold(b));
        for (const auto& f : h.basis) {
            Mat<RatGF> m = hom_to_bold(MotiveHom<GF>{a, b, f});
            std::vector<RatGF> v(a.rank() * b.rank(), rat(0));
            for (int i = 0; i < b.rank(); ++i)
                for (int j = 0; j < a.rank(); ++j) v[j * b.rank() + i] = m(i, j);
            std::vector<RatGF> sv;
            for (auto& x : v) sv.push_back(sigma(x, 1));
            CHECK(H.tau.apply(sv) == v);
        }
        CHECK(h.rank == int(tau_invariants(H).basis.size()));
    }
}

TEST_CASE("composition") {
    auto C = carlitz();
    auto f = scalar_isogeny(C, {0, 1});
    CHECK(compose_homs(f, identity_hom(C)).matrix == f.matrix);
    CHECK(compose_homs(identity_hom(C), f).matrix == f.matrix);
    auto a = scalar_isogeny(C, {1, 1}), b = scalar_isogeny(C, {0, 2, 1});
    CHECK(compose_homs(a, b).matrix == scalar_isogeny(C, {0, 2, 0, 1}).matrix);

    std::mt19937_64 rng(31);
    auto X = diag_motive(base9(), lin(), lin());
    auto rnd = [&] {
        PMat<GF> m(GFPoly(k0()), 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = random_fq_poly(rng, 2);
        return make_hom(X, X, m);
    };
    for (int it = 0; it < 5; ++it) {
        auto p = rnd(), q = rnd(), r = rnd();
        CHECK(compose_homs(compose_homs(p, q), r).matrix == compose_homs(p, compose_homs(q, r)).matrix);
        CHECK(intertwines(compose_homs(p, q)));
    }
    CHECK_THROWS_AS(compose_homs(f, identity_hom(X)), ValidationError);
}

TEST_CASE("scalar isogenies") {
    auto C = carlitz();
    CHECK(scalar_isogeny(C, {1}).matrix.is_identity());
    CHECK(scalar_isogeny(C, {0, 1}).matrix == pmat(1, 1, {t()}));
    CHECK_THROWS_AS(scalar_isogeny(C, {0}), ValidationError);
    CHECK(intertwines(scalar_isogeny(C, {2, 0, 1})));
}

TEST_CASE("is_isogeny examples") {
    auto C = carlitz();
    auto r = is_isogeny(scalar_isogeny(C, {0, 1}));
    CHECK(r.isogeny);
    REQUIRE(r.coker);
    CHECK(r.coker->divisors == std::vector<GFPoly>{t()});
    CHECK(r.coker->tau(0, 0) == cst(-alpha()));

    CHECK(!is_isogeny(MotiveHom<GF>{C, C, pmat(1, 1, {zero()})}).isogeny);

    auto X = diag_motive(base9(), lin(), lin());
    auto f = make_hom(X, X, pmat(2, 2, {one(), zero(), zero(), t()}));
    auto rx = is_isogeny(f);
    CHECK(rx.isogeny);
    CHECK(rx.coker->divisors == std::vector<GFPoly>{t()});
    CHECK(rx.coker->tau(0, 0) == cst(-alpha()));
}

TEST_CASE("torsion_filtration examples") {
    auto b = base9();
    GFPoly pz(k0());
    auto T = make_torsion(b, {lin()}, pmat(1, 1, {zero()}));
    // tau = 0 here, so ker tau_lin is all of sigma^*T, supported at (t - alpha^3)
    CHECK_THROWS_AS(check_characteristic(T), CharacteristicViolation);
    auto F = torsion_filtration(T, CharCheck::CokernelOnly);
    CHECK(F.bijective_basis.cols() == 0);
    CHECK(F.nilpotency_order == 1);
    CHECK(F.nilpotent_dim == 1);
    CHECK(F.annihilator == gfpoly_from_ints(*f9(), 1, {1, 0, 1}));
    // oracle: least-degree monic a in F_3[t] with a(alpha) = 0, by enumeration
    GF a = alpha();
    std::vector<int> best;
    for (int d = 1; d <= 2 && best.empty(); ++d)
        for (int code = 0; code < (d == 1 ? 3 : 9) && best.empty(); ++code) {
            std::vector<int> c{code % 3};
            if (d == 2) c.push_back(code / 3);
            c.push_back(1);
            GF v = a.zero();
            for (int i = d; i >= 0; --i) v = v * a + a.from_int(c[i]);
            if (v.is_zero()) best = c;
        }
    CHECK(gfpoly_from_ints(*f9(), 1, best) == F.annihilator);

    auto B = make_torsion(b, {t()}, pmat(1, 1, {cst(-alpha())}));
    auto FB = torsion_filtration(B);
    CHECK(FB.bijective_basis.cols() == 1);
    CHECK(FB.nilpotent_dim == 0);
    CHECK(FB.nilpotency_order == 0);
    CHECK(tau_lin_bijective(FB.bijective_part));

    // support at (t) with tau = 0 is not of characteristic iota
    auto bad = make_torsion(b, {t()}, pmat(1, 1, {zero()}));
    CHECK_THROWS_AS(torsion_filtration(bad), CharacteristicViolation);
    CHECK_THROWS_AS(torsion_filtration(bad, CharCheck::CokernelOnly), CharacteristicViolation);
    // tau not well defined on the quotient
    CHECK_THROWS_AS(make_torsion(b, {t(), lin()}, pmat(2, 2, {zero(), one(), zero(), zero()})), ValidationError);
}

TEST_CASE("generic characteristic: torsion cokernels have bijective tau_lin") {
    auto bu = base_u();
    auto C = make_motive(new_effective(bu, PMat<UFunc>::identity(Poly<UFunc>(bu.zero()), 1) * bu.t_minus_theta()));
    CHECK(C.m.e == 1);
    for (auto a : {std::vector<int>{0, 1}, std::vector<int>{1, 0, 1}, std::vector<int>{2, 1, 1}}) {
        auto r = is_isogeny(scalar_isogeny(C, a));
        REQUIRE(r.isogeny);
        auto F = torsion_filtration(*r.coker);
        CHECK(F.nilpotent_dim == 0);
        CHECK(tau_lin_bijective(*r.coker));
        CHECK(F.annihilator == gfpoly_from_ints(*bu.tower, 1, a).monic());
        auto fs = factor_sep_insep(scalar_isogeny(C, a));
        CHECK(fs.inseparable.matrix.is_identity());
    }
    CHECK_THROWS_AS(new_effective(bu, PMat<UFunc>::identity(Poly<UFunc>(bu.zero()), 1) * bu.t()),
                    CharacteristicViolation);
}

TEST_CASE("invert_isogeny examples") {
    auto C = carlitz();
    auto r = invert_isogeny(scalar_isogeny(C, {0, 1}));
    CHECK(r.a == gfpoly_from_ints(*f9(), 1, {0, 1}));
    CHECK(r.g.matrix.is_identity());

    auto X = diag_motive(base9(), lin(), lin());
    auto f = make_hom(X, X, pmat(2, 2, {one(), zero(), zero(), t()}));
    auto ri = invert_isogeny(f);
    CHECK(ri.a == gfpoly_from_ints(*f9(), 1, {0, 1}));
    CHECK(ri.g.matrix == pmat(2, 2, {t(), zero(), zero(), one()}));
    CHECK(compose_homs(f, ri.g).matrix == pmat(2, 2, {t(), zero(), zero(), t()}));

    auto r2 = invert_isogeny(scalar_isogeny(C, {1, 0, 1}));
    CHECK(r2.a == gfpoly_from_ints(*f9(), 1, {1, 0, 1}));
    CHECK_THROWS_AS(invert_isogeny(MotiveHom<GF>{C, C, pmat(1, 1, {zero()})}), ValidationError);
}

TEST_CASE("isogeny property: random endomorphisms of C + C") {
    std::mt19937_64 rng(91);
    auto X = diag_motive(base9(), lin(), lin());
    int tried = 0;
    while (tried < 8) {
        PMat<GF> m(GFPoly(k0()), 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = random_fq_poly(rng, 1 + int(rng() % 2));
        if (det_cofactor(m).is_zero()) continue;
        ++tried;
        auto f = make_hom(X, X, m);
        auto ic = is_isogeny(f);
        REQUIRE(ic.isogeny);
        auto F = torsion_filtration(*ic.coker);
        CHECK(tau_lin_bijective(F.bijective_part));
        CHECK(F.nilpotency_order <= ic.coker->dim());
        // the annihilator kills T
        GFPoly an = gfpoly_embed(F.annihilator, 2);
        Mat<GF> acc(k0(), ic.coker->dim(), ic.coker->dim());
        for (int k = an.deg(); k >= 0; --k)
            acc = acc * ic.coker->Tt + Mat<GF>::identity(k0(), ic.coker->dim()) * an[k];
        CHECK(acc.is_zero());
        auto inv = invert_isogeny(f);
        auto pa = gfpoly_prime_ints(inv.a);
        CHECK(compose_homs(f, inv.g).matrix == scalar_isogeny(X, pa).matrix);
        CHECK(compose_homs(inv.g, f).matrix == scalar_isogeny(X, pa).matrix);
        auto fs = factor_sep_insep(f);
        CHECK(compose_homs(fs.separable, fs.inseparable).matrix == f.matrix);
        CHECK(is_separable(fs.separable));
        CHECK(is_purely_inseparable(fs.inseparable));
    }
}

TEST_CASE("factor_sep_insep examples") {
    auto C = carlitz();
    // coker of [t]: tau = -alpha, bijective
    auto f = scalar_isogeny(C, {0, 1});
    auto s = factor_sep_insep(f);
    CHECK(s.separable.matrix == f.matrix);
    CHECK(s.inseparable.matrix.is_identity());

    // theta = 1 in F_9: coker of [t - 1] has tau = 0
    auto b1 = finite_base(3, {1, 0, 1}, alpha().one());
    auto C1 = make_motive(new_effective(b1, pmat(1, 1, {t() - one()})));
    auto g = scalar_isogeny(C1, {2, 1});
    auto sg = factor_sep_insep(g);
    CHECK(sg.separable.matrix.is_identity());
    CHECK(sg.inseparable.matrix == g.matrix);

    // mixed: t (t - 1) splits into the two previous pieces
    auto h = scalar_isogeny(C1, {0, 2, 1});
    auto sh = factor_sep_insep(h);
    CHECK(sh.separable.matrix == pmat(1, 1, {t()}));
    CHECK(sh.inseparable.matrix == pmat(1, 1, {t() - one()}));
    CHECK(compose_homs(sh.separable, sh.inseparable).matrix == h.matrix);
    CHECK(is_separable(sh.separable));
    CHECK(is_purely_inseparable(sh.inseparable));

    // theta = alpha: [t (t^2+1)], intermediate motive (t^2+1) C
    auto k = scalar_isogeny(C, {0, 1, 0, 1});
    auto sk = factor_sep_insep(k);
    CHECK(sk.separable.matrix == pmat(1, 1, {t()}));
    CHECK(sk.inseparable.matrix == pmat(1, 1, {t() * t() + one()}));
    CHECK(sk.separable.target.m.delta == pmat(1, 1, {lin()}));
    // coker of [t^2+1] on C is purely inseparable: tau swaps the two points then dies
    CHECK(is_purely_inseparable(scalar_isogeny(C, {1, 0, 1})));
}

TEST_CASE("motive_to_bold examples") {
    auto C = carlitz();
    CHECK(motive_to_bold(C).tau == rmat(1, 1, {rat(lin())}));
    auto Y = make_motive(tensor_effective(C.m, C.m), C.m);
    CHECK(motive_to_bold(Y).tau == rmat(1, 1, {rat(lin())}));
    auto X = make_motive(new_effective(base9(), pmat(2, 2, {lin(), one(), zero(), lin()})));
    CHECK(motive_to_bold(tensor_motive(X, Y)).tau == tensor(motive_to_bold(X), motive_to_bold(Y)).tau);
    CHECK(motive_to_bold(X).restricted());
    // functoriality on compositions
    auto p = scalar_isogeny(X, {1, 1}), q = make_hom(X, X, pmat(2, 2, {one(), t(), zero(), one()}));
    CHECK(hom_to_bold(compose_homs(p, q)) == hom_to_bold(q) * hom_to_bold(p));
}
