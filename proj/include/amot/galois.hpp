#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amot/motive.hpp"

namespace amot {

// ---------------------------------------------------------------- A/p^n

struct APnContext {
    GFPoly p;   // monic irreducible, level 1
    GFPoly pn;  // p^n
    int n = 0, d = 0;
    int q() const { return p.proto().q(); }
};

std::shared_ptr<const APnContext> apn_context(const GFPoly& p, int n);

// Element of A/p^n = F_q[t]/(p^n), stored reduced.
class APn {
public:
    APn() = default;
    APn(std::shared_ptr<const APnContext> ctx, const GFPoly& v);

    const GFPoly& value() const { return v_; }
    const std::shared_ptr<const APnContext>& ctx() const { return ctx_; }

    APn zero() const { return APn(ctx_, v_.zero()); }
    APn one() const { return APn(ctx_, v_.one()); }
    APn from_int(long x) const { return APn(ctx_, v_.from_int(x)); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_.is_one(); }
    bool is_unit() const;
    // Largest k <= n with p^k | v.
    int valuation() const;

    APn operator+(const APn& o) const { return APn(ctx_, v_ + o.v_); }
    APn operator-(const APn& o) const { return APn(ctx_, v_ - o.v_); }
    APn operator-() const { return APn(ctx_, -v_); }
    APn operator*(const APn& o) const { return APn(ctx_, v_ * o.v_); }
    APn& operator+=(const APn& o) { return *this = *this + o; }
    APn& operator-=(const APn& o) { return *this = *this - o; }
    APn& operator*=(const APn& o) { return *this = *this * o; }
    bool operator==(const APn& o) const { return v_ == o.v_; }
    bool operator!=(const APn& o) const { return !(*this == o); }
    // Throws ValidationError on non-units.
    APn inv() const;
    std::string str() const { return v_.str("t"); }

private:
    std::shared_ptr<const APnContext> ctx_;
    GFPoly v_;
};

APn apn(const std::shared_ptr<const APnContext>& ctx, const GFPoly& v);
// Image in A/p^m for m <= n.
APn reduce_apn(const APn& x, int m);
Mat<APn> reduce_apn(const Mat<APn>& F, int m);
Poly<APn> reduce_apn(const Poly<APn>& f, int m);

// Monic irreducible p of F_q[t] from integer coefficients (level 1).
GFPoly prime_poly(FieldTower& tower, const std::vector<int>& c);

// ---------------------------------------------------------------- Tate modules

struct TateApproximation {
    GFPoly p;
    int n = 0;
    int level = 0;  // coordinates live in F_{q^level}[t]/p^n
    std::vector<std::vector<GFPoly>> basis;
    Mat<APn> frobenius;  // gamma(b_i) = sum_j frobenius(j, i) b_j, gamma = q^s-power
    int rank() const { return int(basis.size()); }
};

// Invariants of v = delta sigma(v) in (F_{q^L}[t]/p^n)^r, delta over K.
TateApproximation tate_lang(const PMat<GF>& delta, const GFPoly& p, int n, int start_level = 0, int cap = 0);
// T_p(M) (x) T_p(L)^v with basis b_i * l^{-1}.
TateApproximation tate_module(const Motive<GF>& x, const GFPoly& p, int n, int start_level = 0, int cap = 0);
// Same module computed as invariants of the completed bold module of x.
TateApproximation tate_bold_route(const Motive<GF>& x, const GFPoly& p, int n, int start_level = 0, int cap = 0);
TateApproximation reduce(const TateApproximation& t, int m);
// Independent check: invariance, A/p-independence mod p and the Frobenius relation.
bool check_tate(const PMat<GF>& delta, const TateApproximation& t);
// Basis b_i (x) b'_j (index i * r' + j) with Frobenius kron(F, F').
TateApproximation tensor_tate(const TateApproximation& a, const TateApproximation& b);
// tau = Delta_M delta_L^{-1} reduced mod p^n, over K.
PMat<GF> completed_tau(const Motive<GF>& x, const GFPoly& p, int n);

struct RouteComparison {
    bool agree = false;
    int level = 0;
    Mat<APn> transition;  // motive basis in terms of the bold basis
};
RouteComparison compare_routes(const Motive<GF>& x, const GFPoly& p, int n);

Poly<APn> charpoly(const Mat<APn>& F);
Poly<APn> minpoly(const Mat<APn>& F);
Poly<APn> frobenius_charpoly(const Motive<GF>& x, const GFPoly& p, int n);
Poly<APn> frobenius_minpoly(const Motive<GF>& x, const GFPoly& p, int n);
APn discriminant(const Poly<APn>& f);

enum class Verdict { Semisimple, NonSemisimple, Inconclusive };
std::string verdict_name(Verdict v);

struct SemisimplicityReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string evidence;
    int scalar_level = 0;  // largest k with F = c * I mod p^k
    Poly<APn> charpoly, minpoly;
};
SemisimplicityReport semisimplicity(const Mat<APn>& F);
SemisimplicityReport semisimplicity_report(const Motive<GF>& x, const GFPoly& p, int n);

// A/p^n-rank of {h : h Fx = Fy h}, counted as free summands.
int commutant_rank(const Mat<APn>& Fx, const Mat<APn>& Fy);

struct TateCheck {
    int hom_rank = 0;
    int commutant_rank = 0;
    bool agree = false;
    bool saturated = false;
};
TateCheck tate_conjecture_check(const Motive<GF>& x, const Motive<GF>& y, const GFPoly& p, int n);

// Deterministic key-value report.
std::string motive_hash(const Motive<GF>& x);
std::string tate_report(const Motive<GF>& x, const GFPoly& p, int n);

// ---------------------------------------------------------------- torsion Dieudonne

// V = F_q^N with t acting by Tv and arithmetic Frobenius by Fv.
struct TorsionGaloisRep {
    int q = 0;
    FqMat Tv, Fv;
    std::vector<GFPoly> divisors;  // elementary divisors of V, level 1
    int level = 0;                 // solution level when built by rq
    Mat<GF> basis;                 // columns: coordinates in K^sep (x) T (rq only)
    int dim() const { return Tv.rows(); }
};

TorsionGaloisRep galois_rep(int q, const FqMat& Tv, const FqMat& Fv);
TorsionGaloisRep rq(const TorsionBoldModule<GF>& t, int cap = 0);
TorsionGaloisRep rq_realization(FieldTower& tower, const Mat<GF>& Tau, const Mat<GF>& Tt, int cap = 0);

struct DieudonneModule {
    TorsionBoldModule<GF> module;
    Mat<GF> Tau, Tt;  // realization in the basis below
    Mat<GF> basis;    // columns: K-basis of the invariants, coordinates in K^sep (x) V
    int level = 0;
};
DieudonneModule dq(const TorsionGaloisRep& v, const Base<GF>& base, int cap = 0);

// D(R(T)) -> T: P with P Tau_D = Tau sigma(P), P T_D = Tt P.
struct DRIso {
    bool ok = false;
    Mat<GF> P;
    int dim_d = 0, dim_v = 0;
};
DRIso dq_rq_iso(const TorsionBoldModule<GF>& t, int cap = 0);

// R(D(V)) -> V: Q over F_q with Q Tv_R = Tv Q and Q Fv_R = Fv Q.
struct RDIso {
    bool ok = false;
    FqMat Q;
    int dim_d = 0, dim_v = 0;
};
RDIso rq_dq_iso(const TorsionGaloisRep& v, const Base<GF>& base, int cap = 0);

// Element of level m equal to x, if x lies in that subfield.
std::optional<GF> descend(const GF& x, int m);

}  // namespace amot
