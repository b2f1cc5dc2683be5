#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amot/algebra.hpp"

namespace amot {

enum class BoldRingKind { KT, FK, LocalP, CompletionP };

// Descriptor of the ring a bold module lives over. sigma is id (x) sigma_q
// in every case: it fixes t and acts on the constants of K = F_{q^s}.
struct BoldRing {
    BoldRingKind kind = BoldRingKind::FK;
    std::shared_ptr<FieldTower> tower;
    GFPoly p;   // prime of F_q[t] (LocalP, CompletionP)
    int n = 0;  // working precision (CompletionP)

    int q() const { return tower->q(); }
    int s() const { return tower->base_degree(); }
    GF zero() const { return GF(tower->base()); }
    std::string str() const;
    bool operator==(const BoldRing& o) const;
};

BoldRing fk_ring(const std::shared_ptr<FieldTower>& tower);

// Free bold module over F_K: tau(v) = tau * sigma(v).
struct BoldModule {
    BoldRing ring;
    Mat<RatGF> tau;

    int rank() const { return tau.rows(); }
    bool restricted() const { return !det_field(tau).is_zero(); }
};

BoldModule bold_unit(const BoldRing& ring);
BoldModule bold_from_matrix(const BoldRing& ring, const Mat<RatGF>& tau);
BoldModule tensor(const BoldModule& a, const BoldModule& b);
BoldModule dual(const BoldModule& m);
BoldModule hom_module(const BoldModule& m, const BoldModule& n);
SemilinearKernel tau_invariants(const BoldModule& m, int cap = -1);
// The evaluation map dual(m) (x) m -> unit commutes with tau.
bool pairing_commutes(const BoldModule& m);

// Completion at p to precision n: tau over K[t]/(p^n).
struct CompletedBoldModule {
    BoldRing ring;  // CompletionP
    GFPoly pn;      // p^n embedded over K
    PMat<GF> tau;   // entries reduced mod p^n
    int rank() const { return tau.rows(); }
};
CompletedBoldModule completion(const BoldModule& m, const GFPoly& p, int n);

// ---------------------------------------------------------------- den / lcm

using RatFuncX = RatFunc<RatGF>;  // F_K(X)
using PolyX = Poly<RatGF>;        // F_K[X]

PolyX den(const RatFuncX& f);
PolyX lcm_den(const RatFuncX& f, const RatFuncX& g);
PolyX den_vec(const std::vector<RatFuncX>& v);

struct ScalarExtensionResult {
    bool member = false;
    PolyX witness;  // nonzero, sigma-fixed coefficients, divisible by den(f)
};
ScalarExtensionResult in_scalar_extension(const RatFuncX& f);

}  // namespace amot
