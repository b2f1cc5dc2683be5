#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amot/gfpoly.hpp"
#include "amot/ufunc.hpp"

namespace amot {

// Exact rational number num/den, den > 0.
struct Frac {
    long num = 0, den = 1;
    Frac() = default;
    Frac(long n, long d = 1);
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool operator<(const Frac& o) const { return (__int128)num * o.den < (__int128)o.num * den; }
    bool operator<=(const Frac& o) const { return !(o < *this); }
    std::string str() const;
};

// A place of F_{q^m}(u): a monic irreducible of F_{q^m}[u], or infinity.
struct Place {
    bool infinite = false;
    GFPoly pi;  // empty at infinity
    int level() const { return infinite ? 0 : pi.proto().degree(); }
    std::string str() const;
    bool operator==(const Place& o) const { return infinite == o.infinite && (infinite || pi == o.pi); }
};

Place place_infinity();
Place place_at(const GFPoly& pi);
// Places of F_{q^m}(u) over the place pi of F_q(u) (pi at level 1).
std::vector<Place> place_lifts(const GFPoly& pi, int m);
// The place of F_q(u) below x.
Place place_restrict(const Place& x);

// Valuation of an element or of a truncation.
struct Valuation {
    bool infinite = false;          // +infinity (zero)
    long value = 0;
    bool truncated = false;         // minimum over a finite window only
    std::optional<Frac> certificate;  // proven lower bound, when available
    std::string str() const;
};

// Element of (F_p (x) L)((t)) = (L^d)((t)), written by its coefficient
// tuples. Coefficients are known for n0 <= i < n0 + size; when exact is set
// all other coefficients vanish.
struct LaurentApprox {
    int d = 1;
    UFunc proto;  // zero of the coefficient field F_{q^m}(u)
    int n0 = 0;
    std::vector<std::vector<UFunc>> c;
    bool exact = true;
    std::optional<Frac> certificate;

    int window_end() const { return n0 + int(c.size()); }
    // First index where the coefficient is not known (a large number when exact).
    long known_until() const;
    std::vector<UFunc> coeff(int i) const;
    int level() const { return proto.level()->m; }
    bool is_zero() const;
    // Order and leading coefficient, if a nonzero coefficient lies in the window.
    std::optional<int> order() const;
    bool invertible_leading() const;
};

LaurentApprox laurent_zero(const UFunc& proto, int d);
// Exact element with the given coefficient tuples starting at t^n0.
LaurentApprox laurent_exact(int n0, const std::vector<std::vector<UFunc>>& c);
// Element of F_q((t)) (x) K: every component equals the given scalar.
LaurentApprox laurent_scalar(int n0, const std::vector<UFunc>& c, int d);
LaurentApprox laurent_embed(const LaurentApprox& f, int m);
LaurentApprox laurent_truncate(const LaurentApprox& f, int end);
LaurentApprox operator+(const LaurentApprox& a, const LaurentApprox& b);
LaurentApprox operator-(const LaurentApprox& a, const LaurentApprox& b);
LaurentApprox operator*(const LaurentApprox& a, const LaurentApprox& b);
// sigma^e: (z_0, ..., z_{d-1}) -> (z_{d-1}^q, z_0^q, ..., z_{d-2}^q), applied e times.
LaurentApprox sigma(const LaurentApprox& f, long e);
std::vector<UFunc> sigma_tuple(const std::vector<UFunc>& z, long e);
// Coefficientwise agreement on the common known window.
bool agree_on_window(const LaurentApprox& a, const LaurentApprox& b, int end);

Valuation vx(const UFunc& f, const Place& x);
Valuation vx(const LaurentApprox& f, const Place& x);
Valuation vx(const std::vector<std::vector<LaurentApprox>>& m, const Place& x);

struct FixpointResult {
    std::vector<LaurentApprox> solution;  // F, one entry per row, coefficients t^0 .. t^{N-1}
    Valuation v_solution;
    Frac bound;  // v_x(delta) / (q^m - 1)
    bool bound_holds = false;
    int level = 0, degree_cap = 0;
};

// Solves sigma^m(F) = delta F coefficientwise, searching each coefficient
// among Laurent polynomials in u of degree in [-D, D] over F_{q^M}.
FixpointResult fixpoint_bound_check(const std::vector<std::vector<LaurentApprox>>& delta, int m, const Place& x,
                                    int N, int level_cap = 0, int degree_cap = 16);

// s with sigma(s) = f s through t^N (N+1 coefficients); f of order 0 with
// invertible leading coefficient and constant (finite-field) coefficients.
// The default level cap is 384 s: Frobenius acts on s through f, whose order
// in (F_{q^s}[t]/t^{N+1})^x sets the level.
LaurentApprox sigma_quotient_solve(const LaurentApprox& f, int N, int cap = 0);

struct EpsFloor {
    bool holds = false;
    Valuation lhs;  // v_x(sigma^N(a))
    std::optional<long> rhs;  // floor(v_x(s sigma^N(a)) / q^N) q^N, nullopt for +infinity
};
// Throws ValidationError when hypothesis (a) or (b) fails.
EpsFloor eps_floor_check(const LaurentApprox& s, const Place& x, int N, const LaurentApprox& a);

struct BplusResult {
    bool member = false;
    std::vector<Place> pole_places;  // places of F_q(u), sorted by their text
};
BplusResult bplus_membership(const LaurentApprox& f);

// sigma(s) s^{-1} has t-coefficients in F_p (x) K through t^N. p is the
// level-1 prime of F_q[t] of degree s.d and K = F_{q^base_level}(u).
bool s_membership(const LaurentApprox& s, const GFPoly& p, int N, int base_level = 1);
// Coefficient tuple z lies in the image of F_p (x) K -> L^d, x (x) y -> (x^{q^i} y)_i.
bool in_fp_tensor_k(const std::vector<UFunc>& z, const GFPoly& p, int base_level);

}  // namespace amot
