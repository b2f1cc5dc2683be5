#pragma once

#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "amot/errors.hpp"

namespace amot {

// Dense univariate polynomial over a coefficient type S. S must provide
// zero(), one(), from_int(), is_zero(), is_one(), ring operators, and inv()
// when division is used. The zero prototype carries the coefficient domain.
template <class S>
class Poly {
public:
    Poly() = default;
    explicit Poly(const S& proto) : z_(proto.zero()) {}
    Poly(const S& proto, std::vector<S> c) : z_(proto.zero()), c_(std::move(c)) { trim(); }

    static Poly constant(const S& c) { return Poly(c, {c}); }
    static Poly var(const S& proto) { return Poly(proto, {proto.zero(), proto.one()}); }
    static Poly monomial(const S& c, int k) {
        std::vector<S> v(k + 1, c.zero());
        v[k] = c;
        return Poly(c, std::move(v));
    }

    int deg() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_constant() const { return c_.size() <= 1; }
    const S& operator[](int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : z_; }
    const S& lead() const { return c_.empty() ? z_ : c_.back(); }
    const std::vector<S>& coeffs() const { return c_; }
    const S& proto() const { return z_; }

    Poly zero() const { return Poly(z_); }
    Poly one() const { return constant(z_.one()); }
    Poly from_int(long v) const { return constant(z_.from_int(v)); }

    Poly operator+(const Poly& o) const {
        Poly r(z_);
        size_t n = std::max(c_.size(), o.c_.size());
        r.c_.reserve(n);
        for (size_t i = 0; i < n; ++i) r.c_.push_back((*this)[int(i)] + o[int(i)]);
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(z_);
        size_t n = std::max(c_.size(), o.c_.size());
        r.c_.reserve(n);
        for (size_t i = 0; i < n; ++i) r.c_.push_back((*this)[int(i)] - o[int(i)]);
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly(z_);
        std::vector<S> v(c_.size() + o.c_.size() - 1, z_);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                if (!o.c_[j].is_zero()) v[i + j] += c_[i] * o.c_[j];
        }
        return Poly(z_, std::move(v));
    }
    Poly operator*(const S& c) const {
        if (c.is_zero()) return Poly(z_);
        Poly r = *this;
        for (auto& x : r.c_) x *= c;
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Euclidean division; the divisor's leading coefficient must be invertible.
    void divmod(const Poly& b, Poly& q, Poly& r) const {
        if (b.is_zero()) throw ValidationError("polynomial division by zero");
        r = *this;
        int db = b.deg();
        if (deg() < db) {
            q = Poly(z_);
            return;
        }
        std::vector<S> qv(deg() - db + 1, z_);
        S il = b.lead().inv();
        for (int k = r.deg(); k >= db; --k) {
            S c = r.c_[k];
            if (c.is_zero()) continue;
            c *= il;
            qv[k - db] = c;
            for (int j = 0; j <= db; ++j)
                if (!b.c_[j].is_zero()) r.c_[k - db + j] -= c * b.c_[j];
        }
        r.trim();
        q = Poly(z_, std::move(qv));
    }
    Poly operator/(const Poly& b) const {
        Poly q, r;
        divmod(b, q, r);
        return q;
    }
    Poly operator%(const Poly& b) const {
        Poly q, r;
        divmod(b, q, r);
        return r;
    }
    bool divides(const Poly& a) const { return (a % *this).is_zero(); }

    Poly monic() const {
        if (c_.empty()) return *this;
        return *this * lead().inv();
    }
    // Multiply by var^k.
    Poly shift(int k) const {
        if (c_.empty() || k == 0) return *this;
        Poly r(z_);
        r.c_.assign(k, z_);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    // Reduce modulo var^n.
    Poly truncate(int n) const {
        if (int(c_.size()) <= n) return *this;
        return Poly(z_, std::vector<S>(c_.begin(), c_.begin() + n));
    }
    S eval(const S& x) const {
        S acc = z_;
        for (int i = deg(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }
    Poly derivative() const {
        if (c_.size() <= 1) return Poly(z_);
        std::vector<S> v;
        for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * z_.from_int(long(i)));
        return Poly(z_, std::move(v));
    }
    Poly pow(unsigned long long e) const {
        Poly r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    // Units only (nonzero constants).
    Poly inv() const {
        if (c_.size() != 1) throw ValidationError("polynomial is not a unit");
        return constant(c_[0].inv());
    }
    template <class F>
    auto map(F f) const -> Poly<decltype(f(std::declval<S>()))> {
        using T = decltype(f(std::declval<S>()));
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(f(x));
        return Poly<T>(f(z_), std::move(v));
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = deg(); k >= 0; --k) {
            if (c_[k].is_zero()) continue;
            if (!first) os << "+";
            first = false;
            std::string cs = c_[k].str();
            bool compound = cs.find_first_of("+-*/", 1) != std::string::npos;
            if (k == 0) {
                os << (compound ? "(" + cs + ")" : cs);
                continue;
            }
            if (!c_[k].is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    S z_;
    std::vector<S> c_;
};

template <class S>
Poly<S> operator*(const S& c, const Poly<S>& p) {
    return p * c;
}

template <class S>
Poly<S> sigma(const Poly<S>& p, long e) {
    return p.map([e](const S& x) { return sigma(x, e); });
}

// Monic gcd.
template <class S>
Poly<S> gcd(Poly<S> a, Poly<S> b) {
    while (!b.is_zero()) {
        Poly<S> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// g = s*a + t*b with g monic.
template <class S>
std::tuple<Poly<S>, Poly<S>, Poly<S>> xgcd(const Poly<S>& a, const Poly<S>& b) {
    Poly<S> r0 = a, r1 = b, s0 = a.one(), s1 = a.zero(), t0 = a.zero(), t1 = a.one();
    while (!r1.is_zero()) {
        Poly<S> q, r;
        r0.divmod(r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<S> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto il = r0.lead().inv();
    return {r0 * il, s0 * il, t0 * il};
}

template <class S>
Poly<S> lcm(const Poly<S>& a, const Poly<S>& b) {
    if (a.is_zero() || b.is_zero()) return a.zero();
    return (a / gcd(a, b) * b).monic();
}

// Inverse of a modulo m, when gcd(a, m) = 1.
template <class S>
Poly<S> inv_mod(const Poly<S>& a, const Poly<S>& m) {
    auto [g, s, t] = xgcd(a % m, m);
    if (!g.is_one()) throw ValidationError("element is not invertible modulo " + m.str());
    return s % m;
}

}  // namespace amot
