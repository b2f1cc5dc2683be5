#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace amot {

// Arithmetic in the prime field F_q (q prime, q < 2^15).
struct Fq {
    int q;
    explicit Fq(int q_) : q(q_) {}
    int add(int a, int b) const { int s = a + b; return s >= q ? s - q : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + q : s; }
    int mul(int a, int b) const { return int((long long)a * b % q); }
    int neg(int a) const { return a == 0 ? 0 : q - a; }
    int inv(int a) const;
    int pow(int a, long long e) const;
    int norm(long long a) const { long long r = a % q; return int(r < 0 ? r + q : r); }
};

bool is_prime(int n);

// Dense matrix over F_q, row-major.
class FqMat {
public:
    FqMat() = default;
    FqMat(int q, int rows, int cols) : q_(q), r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}

    int q() const { return q_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    int& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    int at(int i, int j) const { return a_[size_t(i) * c_ + j]; }
    int* row(int i) { return a_.data() + size_t(i) * c_; }
    const int* row(int i) const { return a_.data() + size_t(i) * c_; }

    void append_row(const std::vector<int>& v);

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<int> rref();
    int rank() const;
    // Basis of {x : A x = 0}.
    std::vector<std::vector<int>> kernel() const;
    // Some x with A x = b (free variables set to zero), or nullopt.
    std::optional<std::vector<int>> solve(const std::vector<int>& b) const;
    std::vector<int> apply(const std::vector<int>& x) const;
    FqMat mul(const FqMat& o) const;
    FqMat transpose() const;
    bool is_zero() const;
    bool operator==(const FqMat& o) const { return q_ == o.q_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    static FqMat identity(int q, int n);

private:
    int q_ = 2, r_ = 0, c_ = 0;
    std::vector<int> a_;
};

// Row space utilities for incremental span membership.
class FqSpan {
public:
    FqSpan(int q, int dim) : q_(q), dim_(dim) {}
    // Adds v if independent; returns true if the span grew.
    bool add(std::vector<int> v);
    bool contains(std::vector<int> v) const;
    int rank() const { return int(rows_.size()); }
    int dim() const { return dim_; }

private:
    void reduce(std::vector<int>& v) const;
    int q_, dim_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> piv_;
};

}  // namespace amot
