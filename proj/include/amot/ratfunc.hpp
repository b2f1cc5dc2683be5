#pragma once

#include "amot/poly.hpp"

namespace amot {

// Fraction n/d of polynomials over a field S; reduced, d monic.
template <class S>
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const S& proto) : n_(proto), d_(Poly<S>::constant(proto.one())) {}
    RatFunc(const Poly<S>& n) : n_(n), d_(n.one()) {}
    RatFunc(const Poly<S>& n, const Poly<S>& d) {
        if (d.is_zero()) throw ValidationError("zero denominator");
        if (n.is_zero()) {
            n_ = n.zero();
            d_ = n.one();
            return;
        }
        Poly<S> g = gcd(n, d);
        n_ = n / g;
        d_ = d / g;
        auto il = d_.lead().inv();
        n_ = n_ * il;
        d_ = d_ * il;
    }
    // Caller guarantees n/d already reduced with d monic.
    static RatFunc raw(Poly<S> n, Poly<S> d) {
        RatFunc r;
        r.n_ = std::move(n);
        r.d_ = std::move(d);
        return r;
    }

    const Poly<S>& num() const { return n_; }
    const Poly<S>& den() const { return d_; }
    const S& proto() const { return n_.proto(); }

    RatFunc zero() const { return RatFunc(n_.proto()); }
    RatFunc one() const { return RatFunc(n_.one()); }
    RatFunc from_int(long v) const { return RatFunc(n_.from_int(v)); }
    bool is_zero() const { return n_.is_zero(); }
    bool is_one() const { return n_.is_one() && d_.is_one(); }
    bool is_poly() const { return d_.is_one(); }

    RatFunc operator+(const RatFunc& o) const {
        if (d_ == o.d_) return RatFunc(n_ + o.n_, d_);
        return RatFunc(n_ * o.d_ + o.n_ * d_, d_ * o.d_);
    }
    RatFunc operator-(const RatFunc& o) const {
        if (d_ == o.d_) return RatFunc(n_ - o.n_, d_);
        return RatFunc(n_ * o.d_ - o.n_ * d_, d_ * o.d_);
    }
    RatFunc operator-() const { return raw(-n_, d_); }
    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return zero();
        if (d_.is_one() && o.d_.is_one()) return raw(n_ * o.n_, d_);
        return RatFunc(n_ * o.n_, d_ * o.d_);
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc inv() const {
        if (n_.is_zero()) throw ValidationError("inverse of zero rational function");
        return RatFunc(d_, n_);
    }
    bool operator==(const RatFunc& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string str(const std::string& var = "t") const {
        std::string ns = n_.str(var);
        if (d_.is_one()) return ns;
        std::string ds = d_.str(var);
        auto wrap = [](const std::string& s) {
            return s.find_first_of("+-*/^", 1) != std::string::npos ? "(" + s + ")" : s;
        };
        return wrap(ns) + "/" + wrap(ds);
    }

private:
    Poly<S> n_, d_;
};

template <class S>
RatFunc<S> sigma(const RatFunc<S>& f, long e) {
    return RatFunc<S>::raw(sigma(f.num(), e), sigma(f.den(), e));
}

}  // namespace amot
