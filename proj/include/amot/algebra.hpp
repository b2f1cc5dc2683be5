#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "amot/gf.hpp"
#include "amot/gfpoly.hpp"
#include "amot/matrix.hpp"
#include "amot/ratfunc.hpp"

namespace amot {

using RatGF = RatFunc<GF>;  // F_K = K(t) for finite K

GF frobenius(const GF& x, long e);

// Least common level of two elements of one tower.
int common_level(int a, int b);
GF to_level(const GF& x, int m);

struct AdditiveSolution {
    GF particular;             // one root
    std::vector<GF> kernel;    // F_q-basis of the roots of X^{q^d} - phi X
};

// Roots of X^{q^d} - phi X = c in the given level (phi, c embedded there).
std::optional<AdditiveSolution> additive_solve_at(int level, int d, const GF& phi, const GF& c);

struct AdditiveRoots {
    std::vector<GF> roots;  // sorted canonically
    int level = 0;
};

// All roots at the level where they first appear; phi = 0 is rejected.
std::vector<GF> solve_additive_at(int level, int d, const GF& phi, const GF& c);
AdditiveRoots solve_additive(int d, const GF& phi, const GF& c, int cap = 0);

// Product of elementary divisors, monic.
template <class S>
Poly<S> char_ideal(const std::vector<Poly<S>>& divisors, const S& proto) {
    Poly<S> p = Poly<S>::constant(proto.one());
    for (const auto& d : divisors) {
        if (d.is_zero()) throw NotTorsion("zero elementary divisor (free part)");
        p *= d;
    }
    return p.monic();
}

// ---------------------------------------------------------------- flattening

// Coordinates of n polynomials of degree <= D over level m: index
// ((i * (D+1)) + k) * m + l is coordinate l of the t^k coefficient of entry i.
std::vector<int> flatten_polys(const std::vector<GFPoly>& v, int D);
std::vector<GFPoly> unflatten_polys(const std::vector<int>& x, int n, int D, const GF& proto);

// F_q-basis of {v in K[t]^n, deg v_i <= D : F(v) = 0} for an F_q-linear F.
std::vector<std::vector<GFPoly>> fq_linear_kernel(
    int n, int D, const GF& proto,
    const std::function<std::vector<GFPoly>(const std::vector<GFPoly>&)>& F);

// ---------------------------------------------------------------- semilinear kernel

struct SemilinearKernel {
    std::vector<std::vector<RatGF>> basis;  // independent over K(t)
    int cap = 0;                            // degree cap at which the span stabilised
    bool saturated = false;
};

// Solutions of delta * sigma^e(v) = v. Polynomial solutions of degree <= cap
// are searched; the cap doubles until the K(t)-rank is stable.
SemilinearKernel semilinear_kernel(const Mat<RatGF>& delta, int e, int cap = -1, int max_cap = 256);

// Polynomial solutions, F_q-basis, of lhs * sigma^e(v) = rhs * v with
// deg v <= D.
std::vector<std::vector<GFPoly>> polynomial_fixed_points(const PMat<GF>& lhs, const GFPoly& rhs, int e, int D);

// Common denominator: delta = num / den with den monic.
void clear_denominators(const Mat<RatGF>& delta, PMat<GF>& num, GFPoly& den);

}  // namespace amot
