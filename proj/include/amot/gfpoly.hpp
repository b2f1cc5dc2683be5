#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amot/gf.hpp"
#include "amot/poly.hpp"

namespace amot {

using GFPoly = Poly<GF>;

// Polynomial with F_q coefficients given as integers, placed in level m.
GFPoly gfpoly_from_ints(FieldTower& tower, int m, const std::vector<int>& c);
// Coefficients re-embedded into level m.
GFPoly gfpoly_embed(const GFPoly& p, int m);
// Integer coefficients of a polynomial whose coefficients lie in F_q.
std::vector<int> gfpoly_prime_ints(const GFPoly& p);
bool gfpoly_in_prime_field(const GFPoly& p);

// Monic irreducible factors with multiplicities over the coefficient level,
// sorted by (degree, canonical coefficient order).
std::vector<std::pair<GFPoly, int>> factor(const GFPoly& f);
bool is_squarefree(const GFPoly& f);

// Minimal polynomial of x over F_q (coefficients in level 1).
GFPoly minpoly_fq(const GF& x);

// b^(q^e) in F[X]/(m) where F is the coefficient level.
GFPoly qpow_mod(const GFPoly& b, const GFPoly& m, long e);
GFPoly powmod(GFPoly b, std::uint64_t e, const GFPoly& m);

std::string factor_str(const std::vector<std::pair<GFPoly, int>>& fs, const std::string& var = "t");

}  // namespace amot
