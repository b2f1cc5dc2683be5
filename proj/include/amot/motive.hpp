#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "amot/bold.hpp"
#include "amot/ufunc.hpp"

namespace amot {

// Base data: constants F_q, coefficient field K (F_{q^s} or F_{q^s}(u)),
// theta = iota(t), and ker(iota) as a polynomial of F_q[t] (zero when theta
// is transcendental).
template <class K>
struct Base {
    std::shared_ptr<FieldTower> tower;
    K theta;
    GFPoly kernel_iota;

    int q() const { return tower->q(); }
    int s() const { return tower->base_degree(); }
    K zero() const { return theta.zero(); }
    K one() const { return theta.one(); }
    Poly<K> t() const { return Poly<K>::var(theta); }
    Poly<K> t_minus_theta() const { return Poly<K>(theta, {-theta, theta.one()}); }
    bool generic() const { return kernel_iota.is_zero(); }
    bool operator==(const Base& o) const { return tower == o.tower && theta == o.theta; }
};

Base<GF> finite_base(int q, const std::vector<int>& field_poly, const GF& theta);
Base<UFunc> rational_base(int q, const std::vector<int>& field_poly, const UFunc& theta);

// Polynomial over K[t] whose coefficients are the F_q-integers of a.
template <class K>
Poly<K> lift_fq_poly(const std::vector<int>& a, const K& proto) {
    std::vector<K> c;
    for (int x : a) c.push_back(proto.from_int(x));
    return Poly<K>(proto, c);
}

// ---------------------------------------------------------------- effective motives

template <class K>
struct EffectiveMotive {
    Base<K> base;
    PMat<K> delta;  // tau(v) = delta * sigma(v)
    int e = 0;      // det delta = c (t - theta)^e
    int rank() const { return delta.rows(); }
    bool operator==(const EffectiveMotive& o) const { return base == o.base && delta == o.delta; }
};

// Validates det(delta) = c (t - theta)^e.
template <class K>
EffectiveMotive<K> new_effective(const Base<K>& base, const PMat<K>& delta);
template <class K>
EffectiveMotive<K> unit_effective(const Base<K>& base);
template <class K>
EffectiveMotive<K> tensor_effective(const EffectiveMotive<K>& a, const EffectiveMotive<K>& b);
template <class K>
EffectiveMotive<K> exterior_effective(const EffectiveMotive<K>& m, int d);

template <class K>
struct Motive {
    EffectiveMotive<K> m;
    EffectiveMotive<K> l;  // rank 1
    int rank() const { return m.rank(); }
    const Base<K>& base() const { return m.base; }
    bool operator==(const Motive& o) const { return m == o.m && l == o.l; }
};

template <class K>
Motive<K> make_motive(const EffectiveMotive<K>& m, const EffectiveMotive<K>& l);
template <class K>
Motive<K> make_motive(const EffectiveMotive<K>& m);
template <class K>
Motive<K> tensor_motive(const Motive<K>& x, const Motive<K>& y);
template <class K>
Motive<K> direct_sum(const Motive<K>& x, const Motive<K>& y);
template <class K>
Motive<K> exterior_power(const Motive<K>& x, int d);
template <class K>
Motive<K> det_motive(const Motive<K>& x);
template <class K>
EffectiveMotive<K> second_highest(const Motive<K>& x);
template <class K>
Motive<K> dual_motive(const Motive<K>& x);

// ---------------------------------------------------------------- homomorphisms

// A homomorphism source=(M',L') -> target=(M,L): a K[t]-matrix
// M' (x) L -> M (x) L' with f * Delta_{M'} delta_L = Delta_M delta_{L'} * sigma(f).
template <class K>
struct MotiveHom {
    Motive<K> source, target;
    PMat<K> matrix;
};

template <class K>
bool intertwines(const MotiveHom<K>& f);
template <class K>
MotiveHom<K> make_hom(const Motive<K>& source, const Motive<K>& target, const PMat<K>& matrix);
template <class K>
MotiveHom<K> identity_hom(const Motive<K>& x);
// g o f
template <class K>
MotiveHom<K> compose_homs(const MotiveHom<K>& f, const MotiveHom<K>& g);
template <class K>
MotiveHom<K> scalar_isogeny(const Motive<K>& x, const std::vector<int>& a);
// Evaluation X^v (x) X -> 1.
template <class K>
MotiveHom<K> evaluation_hom(const Motive<K>& x);

struct HomResult {
    std::vector<PMat<GF>> basis;  // A-module basis (also an F_q(t)-basis at isomotive level)
    int rank = 0;
    int cap = 0;
    bool saturated = false;
};

HomResult hom_motives(const Motive<GF>& x, const Motive<GF>& y, int cap = -1, int max_cap = 128);

// ---------------------------------------------------------------- torsion modules

// Finite length K[t]-module with sigma-semilinear tau. Presentation:
// T = (+)_i K[t]/(divisors[i]), tau(e_j) = sum_i tau(i,j) e_i. The
// K-realization uses the basis t^k e_i (k < deg d_i); there tau acts by
// Tau * sigma(coords) and t by the companion matrix Tt.
template <class K>
struct TorsionBoldModule {
    Base<K> base;
    std::vector<Poly<K>> divisors;
    PMat<K> tau;
    Mat<K> Tau, Tt;
    std::vector<int> offset;
    int dim() const { return Tau.rows(); }
    int length_bound() const { return dim(); }
};

template <class K>
TorsionBoldModule<K> make_torsion(const Base<K>& base, const std::vector<Poly<K>>& divisors, const PMat<K>& tau);
// Presentation recovered from a K-realization (Tau, Tt).
template <class K>
TorsionBoldModule<K> torsion_from_realization(const Base<K>& base, const Mat<K>& Tau, const Mat<K>& Tt);

template <class K>
struct TorsionFiltration {
    Mat<K> bijective_basis;           // K-basis (columns) of T'
    TorsionBoldModule<K> bijective_part;
    int nilpotent_dim = 0;            // dim_K T/T'
    int nilpotency_order = 0;         // steps until the images stabilise
    std::vector<int> flag_dims;       // dim W_0 >= dim W_1 >= ... = dim T'
    std::vector<Mat<K>> flag;         // bases of W_m
    GFPoly annihilator;               // monic generator of Ann_{F_q[t]}(T), level 1
};

// Strict: kernel and cokernel of tau_lin supported at (t - theta).
// CokernelOnly: only the cokernel condition, which is what the subquotients
// of the tau-image filtration of a characteristic-iota module satisfy.
enum class CharCheck { Strict, CokernelOnly };

// Throws CharacteristicViolation when the check fails.
template <class K>
void check_characteristic(const TorsionBoldModule<K>& t, CharCheck mode = CharCheck::Strict);
template <class K>
TorsionFiltration<K> torsion_filtration(const TorsionBoldModule<K>& t, CharCheck mode = CharCheck::Strict);
template <class K>
GFPoly annihilator(const TorsionBoldModule<K>& t);
template <class K>
bool tau_lin_bijective(const TorsionBoldModule<K>& t);
template <class K>
bool tau_nilpotent(const TorsionBoldModule<K>& t);

template <class K>
struct IsogenyCheck {
    bool isogeny = false;
    std::optional<TorsionBoldModule<K>> coker;
    SmithForm<K> smith;  // U f V = D, target coordinates y = U x
};

template <class K>
IsogenyCheck<K> is_isogeny(const MotiveHom<K>& f);

template <class K>
struct IsogenyInverse {
    GFPoly a;  // level-1 polynomial of F_q[t]
    MotiveHom<K> g;
};
template <class K>
IsogenyInverse<K> invert_isogeny(const MotiveHom<K>& f);

template <class K>
struct SepInsepFactorization {
    MotiveHom<K> separable;    // f'
    MotiveHom<K> inseparable;  // f''
};
template <class K>
SepInsepFactorization<K> factor_sep_insep(const MotiveHom<K>& f);
template <class K>
bool is_separable(const MotiveHom<K>& f);
template <class K>
bool is_purely_inseparable(const MotiveHom<K>& f);

// ---------------------------------------------------------------- bold side

BoldModule motive_to_bold(const Motive<GF>& x);
// Image of a hom under motive_to_bold (same matrix, read over F_K).
Mat<RatGF> hom_to_bold(const MotiveHom<GF>& f);

// Canonical text for golden tests.
template <class K>
std::string motive_summary(const Motive<K>& x);

}  // namespace amot
