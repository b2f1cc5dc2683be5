#include "amot/fq.hpp"

#include <algorithm>

#include "amot/errors.hpp"

namespace amot {

int Fq::inv(int a) const {
    internal_check(a % q != 0, "inverse of zero in F_q");
    return pow(a, q - 2);
}

int Fq::pow(int a, long long e) const {
    long long r = 1, b = norm(a);
    while (e > 0) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return int(r);
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void FqMat::append_row(const std::vector<int>& v) {
    internal_check(int(v.size()) == c_, "row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

std::vector<int> FqMat::rref() {
    Fq f(q_);
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < c_ && r < r_; ++c) {
        int p = -1;
        for (int i = r; i < r_; ++i)
            if (at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            std::swap_ranges(row(p), row(p) + c_, row(r));
        int iv = f.inv(at(r, c));
        int* pr = row(r);
        for (int j = c; j < c_; ++j) pr[j] = f.mul(pr[j], iv);
        for (int i = 0; i < r_; ++i) {
            if (i == r) continue;
            int fac = at(i, c);
            if (fac == 0) continue;
            int* ri = row(i);
            for (int j = c; j < c_; ++j)
                if (pr[j]) ri[j] = f.sub(ri[j], f.mul(fac, pr[j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int FqMat::rank() const {
    FqMat t = *this;
    return int(t.rref().size());
}

std::vector<std::vector<int>> FqMat::kernel() const {
    FqMat t = *this;
    auto piv = t.rref();
    std::vector<char> isp(c_, 0);
    for (int p : piv) isp[p] = 1;
    std::vector<std::vector<int>> out;
    Fq f(q_);
    for (int free = 0; free < c_; ++free) {
        if (isp[free]) continue;
        std::vector<int> v(c_, 0);
        v[free] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(t.at(int(i), free));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::vector<int>> FqMat::solve(const std::vector<int>& b) const {
    internal_check(int(b.size()) == r_, "rhs length mismatch");
    FqMat aug(q_, r_, c_ + 1);
    for (int i = 0; i < r_; ++i) {
        std::copy(row(i), row(i) + c_, aug.row(i));
        aug.at(i, c_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == c_) return std::nullopt;
    std::vector<int> x(c_, 0);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(int(i), c_);
    return x;
}

std::vector<int> FqMat::apply(const std::vector<int>& x) const {
    std::vector<int> y(r_, 0);
    for (int i = 0; i < r_; ++i) {
        long long s = 0;
        const int* ri = row(i);
        for (int j = 0; j < c_; ++j) s += (long long)ri[j] * x[j];
        y[i] = int(s % q_);
    }
    return y;
}

FqMat FqMat::mul(const FqMat& o) const {
    FqMat out(q_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            int a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < o.c_; ++j) out.at(i, j) = (out.at(i, j) + a * o.at(k, j)) % q_;
        }
    return out;
}

FqMat FqMat::transpose() const {
    FqMat t(q_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool FqMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](int x) { return x == 0; });
}

FqMat FqMat::identity(int q, int n) {
    FqMat m(q, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void FqSpan::reduce(std::vector<int>& v) const {
    Fq f(q_);
    for (size_t i = 0; i < rows_.size(); ++i) {
        int c = v[piv_[i]];
        if (!c) continue;
        const auto& r = rows_[i];
        for (int j = 0; j < dim_; ++j)
            if (r[j]) v[j] = f.sub(v[j], f.mul(c, r[j]));
    }
}

bool FqSpan::add(std::vector<int> v) {
    internal_check(int(v.size()) == dim_, "span dimension mismatch");
    reduce(v);
    int p = -1;
    for (int j = 0; j < dim_; ++j)
        if (v[j]) { p = j; break; }
    if (p < 0) return false;
    Fq f(q_);
    int iv = f.inv(v[p]);
    for (auto& x : v) x = f.mul(x, iv);
    // keep rows fully reduced against the new pivot
    for (auto& r : rows_) {
        int c = r[p];
        if (!c) continue;
        for (int j = 0; j < dim_; ++j)
            if (v[j]) r[j] = f.sub(r[j], f.mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
}

bool FqSpan::contains(std::vector<int> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace amot
