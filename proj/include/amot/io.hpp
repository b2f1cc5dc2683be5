#pragma once

#include <map>
#include <string>
#include <vector>

#include "amot/galois.hpp"
#include "amot/periods.hpp"

namespace amot {

// Laurent polynomial in t with coefficients in F_{q^s}(u).
struct LaurentExpr {
    UFunc proto;
    std::map<int, UFunc> terms;  // nonzero coefficients only
    bool is_zero() const { return terms.empty(); }
};

// Parses sums and products of integers, a (generator of F_{q^s}), u and t,
// with + - * / ^ and parentheses; juxtaposition multiplies. Division is
// allowed by monomials in t. Positions in errors are offset by line and col0.
LaurentExpr parse_expr(const std::string& s, const UFunc& proto, int line = 1, int col0 = 1);
// Polynomial in t over F_{q^s}; rejects u and negative powers of t.
GFPoly parse_poly(const std::string& s, const GF& proto, int line = 1, int col0 = 1);
GF parse_element(const std::string& s, const GF& proto, int line = 1, int col0 = 1);
// Monic irreducible of F_q[t] at level 1, e.g. "t+1".
GFPoly parse_prime(const std::string& s, FieldTower& tower);
// Place of F_{q^s}(u): "inf" or a monic irreducible polynomial in u.
Place parse_place(const std::string& s, const GF& proto);
// One coefficient tuple per component; with a single expression the
// element is the diagonal one of F_q((t)) (x) K.
LaurentApprox to_laurent(const std::vector<LaurentExpr>& comps, int d);

// Motive file:
//   q 3
//   field 1 0 1      (optional; K = F_q[a]/(1 + a^2); default K = F_q)
//   theta a
//   M                (rows of Delta_M, entries separated by commas)
//   t+2*a
//   L                (optional, default 1)
//   1
// Lines starting with # are comments.
Motive<GF> parse_motive(const std::string& text);
std::string emit_motive(const Motive<GF>& x);

// Torsion module file: q / field / theta as above, then
//   divisors         (one polynomial per line)
//   tau              (rows of the tau matrix)
TorsionBoldModule<GF> parse_torsion(const std::string& text);
std::string emit_torsion(const TorsionBoldModule<GF>& t);

std::string fqmat_str(const FqMat& m);
std::string tuple_str(const std::vector<UFunc>& z);

}  // namespace amot
