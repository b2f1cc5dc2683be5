#pragma once

#include <string>

#include "amot/gf.hpp"
#include "amot/ratfunc.hpp"

namespace amot {

// Rational function field F_{q^m}(u). sigma is the q-power map, so it sends
// u to u^q and Frobenius-twists the constants.
class UFunc {
public:
    UFunc() = default;
    explicit UFunc(const GF& proto) : f_(proto) {}
    explicit UFunc(RatFunc<GF> f) : f_(std::move(f)) {}
    static UFunc var(const GF& proto) { return UFunc(RatFunc<GF>(Poly<GF>::var(proto))); }
    static UFunc constant(const GF& c) { return UFunc(RatFunc<GF>(Poly<GF>::constant(c))); }

    const RatFunc<GF>& rf() const { return f_; }
    const GFLevel* level() const { return f_.proto().level(); }
    int q() const { return f_.proto().q(); }

    UFunc zero() const { return UFunc(f_.zero()); }
    UFunc one() const { return UFunc(f_.one()); }
    UFunc from_int(long v) const { return UFunc(f_.from_int(v)); }
    bool is_zero() const { return f_.is_zero(); }
    bool is_one() const { return f_.is_one(); }
    bool is_constant() const { return f_.num().is_constant() && f_.den().is_constant(); }
    GF constant_value() const { return f_.num()[0]; }

    UFunc operator+(const UFunc& o) const { return UFunc(f_ + o.f_); }
    UFunc operator-(const UFunc& o) const { return UFunc(f_ - o.f_); }
    UFunc operator-() const { return UFunc(-f_); }
    UFunc operator*(const UFunc& o) const { return UFunc(f_ * o.f_); }
    UFunc operator/(const UFunc& o) const { return UFunc(f_ / o.f_); }
    UFunc& operator+=(const UFunc& o) { return *this = *this + o; }
    UFunc& operator-=(const UFunc& o) { return *this = *this - o; }
    UFunc& operator*=(const UFunc& o) { return *this = *this * o; }
    UFunc inv() const { return UFunc(f_.inv()); }
    bool operator==(const UFunc& o) const { return f_ == o.f_; }
    bool operator!=(const UFunc& o) const { return !(f_ == o.f_); }

    // Frobenius on the constants only, fixing u.
    UFunc frob_consts(long e) const;
    UFunc embed(int m) const;
    // Order at the place given by a monic irreducible of F_{q^m}[u]; pass an
    // empty polynomial for the place at infinity.
    long ord(const Poly<GF>& place) const;

    std::string str() const { return f_.str("u"); }

private:
    RatFunc<GF> f_;
};

UFunc sigma(const UFunc& x, long e);

// Order of a polynomial at a finite place (repeated division).
long poly_ord(const Poly<GF>& f, const Poly<GF>& place);

}  // namespace amot
