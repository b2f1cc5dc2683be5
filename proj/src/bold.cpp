#include "amot/bold.hpp"

namespace amot {

std::string BoldRing::str() const {
    std::string k = "F_" + std::to_string(q()) + "^" + std::to_string(s());
    switch (kind) {
        case BoldRingKind::KT: return k + "[t]";
        case BoldRingKind::FK: return k + "(t)";
        case BoldRingKind::LocalP: return k + "[t]_(" + p.str() + ")";
        case BoldRingKind::CompletionP:
            return k + "[[t]]_(" + p.str() + ") mod p^" + std::to_string(n);
    }
    return k;
}

bool BoldRing::operator==(const BoldRing& o) const {
    return kind == o.kind && tower == o.tower && p == o.p && n == o.n;
}

BoldRing fk_ring(const std::shared_ptr<FieldTower>& tower) {
    BoldRing r;
    r.kind = BoldRingKind::FK;
    r.tower = tower;
    return r;
}

BoldModule bold_unit(const BoldRing& ring) {
    RatGF one(GFPoly::constant(ring.zero().one()));
    return {ring, Mat<RatGF>::identity(one, 1)};
}

BoldModule bold_from_matrix(const BoldRing& ring, const Mat<RatGF>& tau) {
    require(tau.rows() == tau.cols(), "tau matrix must be square");
    return {ring, tau};
}

BoldModule tensor(const BoldModule& a, const BoldModule& b) {
    require(a.ring == b.ring, "tensor of bold modules over different rings");
    return {a.ring, kron(a.tau, b.tau)};
}

BoldModule dual(const BoldModule& m) {
    auto inv = inverse_field(m.tau);
    if (!inv) throw NotRestricted("dual of a non-restricted bold module");
    return {m.ring, inv->transpose()};
}

BoldModule hom_module(const BoldModule& m, const BoldModule& n) {
    require(m.ring == n.ring, "hom of bold modules over different rings");
    if (!n.restricted()) throw NotRestricted("hom target is not restricted");
    return tensor(dual(m), n);
}

SemilinearKernel tau_invariants(const BoldModule& m, int cap) { return semilinear_kernel(m.tau, 1, cap); }

bool pairing_commutes(const BoldModule& m) {
    BoldModule dm = dual(m);
    int r = m.rank();
    // evaluation e_i^v (x) e_j -> delta_ij as a row vector
    Mat<RatGF> ev(m.tau.proto(), 1, r * r);
    for (int i = 0; i < r; ++i) ev(0, i * r + i) = m.tau.proto().one();
    Mat<RatGF> lhs = ev * kron(dm.tau, m.tau);
    return lhs == sigma(ev, 1);
}

CompletedBoldModule completion(const BoldModule& m, const GFPoly& p, int n) {
    require(n >= 1, "precision must be positive");
    GFPoly pk = gfpoly_embed(p, m.ring.s()).monic();
    GFPoly pn = pk.pow(n);
    PMat<GF> tau(pn.zero(), m.rank(), m.rank());
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) {
            const RatGF& x = m.tau(i, j);
            if (gcd(x.den(), pk).deg() > 0) throw NotRestricted("tau has a pole at p");
            tau(i, j) = (x.num() * inv_mod(x.den(), pn)) % pn;
        }
    GFPoly dt = det_cofactor(tau) % pk;
    if (dt.is_zero()) throw NotRestricted("tau is not invertible modulo p");
    BoldRing r = m.ring;
    r.kind = BoldRingKind::CompletionP;
    r.p = p;
    r.n = n;
    return {r, pn, tau};
}

PolyX den(const RatFuncX& f) { return f.den(); }

PolyX lcm_den(const RatFuncX& f, const RatFuncX& g) { return lcm(f.den(), g.den()); }

PolyX den_vec(const std::vector<RatFuncX>& v) {
    require(!v.empty(), "den of empty vector");
    PolyX d = v[0].den();
    for (size_t i = 1; i < v.size(); ++i) d = lcm(d, v[i].den());
    return d;
}

ScalarExtensionResult in_scalar_extension(const RatFuncX& f) {
    PolyX d = f.den();
    int s = d.proto().proto().degree();
    // orbit closure under sigma; sigma^s is the identity on K(t)
    PolyX w = d;
    PolyX cur = d;
    for (int i = 1; i < s; ++i) {
        cur = sigma(cur, 1);
        w = lcm(w, cur);
    }
    return {sigma(w, 1) == w, w};
}

}  // namespace amot
