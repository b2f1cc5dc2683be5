#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "amot/fq.hpp"

namespace amot {

class FieldTower;

// One level F_{q^m} = F_q[x]/(mod) of a tower.
struct GFLevel {
    int q = 0;
    int m = 0;
    std::vector<int> mod;  // monic, size m+1, degree-ascending
    FqMat frob;            // column j: coordinates of (x^j)^q
    FieldTower* tower = nullptr;
};

// Element of a tower level, stored as a trimmed coefficient vector in the
// power basis of the level generator.
class GF {
public:
    GF() = default;
    explicit GF(const GFLevel* lv) : lv_(lv) {}
    GF(const GFLevel* lv, std::vector<int> coords);
    static GF from_int(const GFLevel* lv, long v);
    static GF gen(const GFLevel* lv);

    const GFLevel* level() const { return lv_; }
    int degree() const { return lv_->m; }
    int q() const { return lv_->q; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    GF zero() const { return GF(lv_); }
    GF one() const { return from_int(lv_, 1); }
    GF from_int(long v) const { return from_int(lv_, v); }

    GF operator+(const GF& o) const;
    GF operator-(const GF& o) const;
    GF operator-() const;
    GF operator*(const GF& o) const;
    GF operator/(const GF& o) const { return *this * o.inv(); }
    GF& operator+=(const GF& o) { return *this = *this + o; }
    GF& operator-=(const GF& o) { return *this = *this - o; }
    GF& operator*=(const GF& o) { return *this = *this * o; }
    bool operator==(const GF& o) const { return lv_ == o.lv_ && c_ == o.c_; }
    bool operator!=(const GF& o) const { return !(*this == o); }
    // Canonical order: compare as the integer sum c_i q^i.
    bool operator<(const GF& o) const;

    GF inv() const;
    GF pow(unsigned long long e) const;
    // x -> x^{q^e}
    GF frob(long e = 1) const;
    GF scale(int c) const;

    // Full coordinate vector of length m.
    std::vector<int> coords() const;
    const std::vector<int>& raw() const { return c_; }
    // Integer coefficient vector, degree-ascending, length m.
    std::string encode() const;
    // Human-readable polynomial in the generator "a".
    std::string str() const;
    // Element of F_q if coordinates beyond the constant vanish.
    bool in_prime_field() const { return c_.size() <= 1; }
    int prime_value() const { return c_.empty() ? 0 : c_[0]; }

    GF embed(int m) const;

private:
    void trim();
    const GFLevel* lv_ = nullptr;
    std::vector<int> c_;
};

inline GF sigma(const GF& x, long e) { return x.frob(e); }

using GFPolyV = std::vector<GF>;  // degree-ascending, internal helper type

class FieldTower {
public:
    // Tower over F_q whose level s is F_q[x]/(base_poly).
    static std::shared_ptr<FieldTower> get(int q, const std::vector<int>& base_poly);
    static std::shared_ptr<FieldTower> prime(int q) { return get(q, {0, 1}); }

    int q() const { return q_; }
    int base_degree() const { return s_; }
    const GFLevel* base() { return level(s_); }
    const GFLevel* level(int m);
    // Matrix (b x a) of the chosen embedding level a -> level b.
    const FqMat& embedding(int a, int b);
    GF embed(const GF& x, int m);
    // Image of the generator of level a in level b.
    GF gen_image(int a, int b);
    // All roots of g (coefficients in level n) lying in level n, sorted.
    std::vector<GF> roots(const GFPolyV& g);
    // Default max level used by escalation loops.
    int default_cap() const { return 24 * s_; }
    const std::vector<int>& base_poly() const { return base_poly_; }

private:
    FieldTower(int q, std::vector<int> base_poly);
    std::unique_ptr<GFLevel> make_level(int m, std::vector<int> mod);
    std::vector<int> find_irreducible(int m) const;
    std::vector<GF> subfield_roots(int a, int b);
    int q_, s_;
    std::vector<int> base_poly_;
    std::recursive_mutex mu_;
    std::map<int, std::unique_ptr<GFLevel>> levels_;
    std::map<std::pair<int, int>, FqMat> emb_;
};

// Polynomial helpers over F_q used by the tower.
namespace fqpoly {
std::vector<int> trim(std::vector<int> a);
std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, int q);
std::vector<int> mod(std::vector<int> a, const std::vector<int>& m, int q);
std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int q);
bool is_irreducible(const std::vector<int>& f, int q);
}  // namespace fqpoly

}  // namespace amot
