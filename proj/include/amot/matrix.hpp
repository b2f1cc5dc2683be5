#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "amot/poly.hpp"

namespace amot {

// Dense matrix over a ring R (row-major). R follows the same element
// protocol as Poly coefficients.
template <class R>
class Mat {
public:
    Mat() = default;
    Mat(const R& proto, int rows, int cols)
        : z_(proto.zero()), r_(rows), c_(cols), a_(size_t(rows) * cols, proto.zero()) {}
    static Mat identity(const R& proto, int n) {
        Mat m(proto, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = proto.one();
        return m;
    }
    static Mat diag(const std::vector<R>& d) {
        Mat m(d.at(0), int(d.size()), int(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
        return m;
    }
    static Mat column(const std::vector<R>& v) {
        Mat m(v.at(0), int(v.size()), 1);
        for (size_t i = 0; i < v.size(); ++i) m(int(i), 0) = v[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const R& proto() const { return z_; }
    R& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const R& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
    std::vector<R> col(int j) const {
        std::vector<R> v;
        v.reserve(r_);
        for (int i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    void set_col(int j, const std::vector<R>& v) {
        for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }
    Mat block(int i0, int j0, int nr, int nc) const {
        Mat m(z_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(int i0, int j0, const Mat& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat m = *this;
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat m = *this;
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
        return m;
    }
    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw ValidationError("matrix dimension mismatch in product");
        Mat m(z_, r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const R& a = (*this)(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.c_; ++j)
                    if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
            }
        return m;
    }
    Mat operator*(const R& c) const {
        Mat m = *this;
        for (auto& x : m.a_) x *= c;
        return m;
    }
    std::vector<R> apply(const std::vector<R>& v) const {
        std::vector<R> out(r_, z_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }
    Mat transpose() const {
        Mat m(z_, c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (r_ != c_) return false;
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
        return true;
    }
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    template <class F>
    auto map(F f) const -> Mat<decltype(f(std::declval<R>()))> {
        using T = decltype(f(std::declval<R>()));
        Mat<T> m(f(z_), r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    // "[a, b; c, d]"
    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < r_; ++i) {
            if (i) os << "; ";
            for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw ValidationError("matrix dimension mismatch");
    }
    R z_;
    int r_ = 0, c_ = 0;
    std::vector<R> a_;
};

template <class R>
Mat<R> sigma(const Mat<R>& m, long e) {
    return m.map([e](const R& x) { return sigma(x, e); });
}

template <class R>
Mat<R> kron(const Mat<R>& a, const Mat<R>& b) {
    Mat<R> m(a.proto(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

template <class R>
Mat<R> direct_sum(const Mat<R>& a, const Mat<R>& b) {
    Mat<R> m(a.proto(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

// Division-free determinant by cofactor expansion (small sizes, any
// commutative ring).
template <class R>
R det_cofactor(const Mat<R>& m) {
    int n = m.rows();
    if (n != m.cols()) throw ValidationError("determinant of non-square matrix");
    if (n == 0) return m.proto().one();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    R acc = m.proto();
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Mat<R> minor(m.proto(), n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, kk = 0; k < n; ++k)
                if (k != j) minor(i - 1, kk++) = m(i, k);
        R term = m(0, j) * det_cofactor(minor);
        acc = (j % 2) ? acc - term : acc + term;
    }
    return acc;
}

// Fraction-free (Bareiss) determinant over a domain with exact division.
template <class R>
R det_bareiss(Mat<R> m) {
    int n = m.rows();
    if (n != m.cols()) throw ValidationError("determinant of non-square matrix");
    if (n == 0) return m.proto().one();
    R prev = m.proto().one();
    bool neg = false;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m(i, k).is_zero()) { p = i; break; }
            if (p < 0) return m.proto();
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return neg ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

// Gaussian elimination over a field. Returns pivot columns; m becomes RREF.
template <class R>
std::vector<int> rref_field(Mat<R>& m) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        R iv = m(r, c).inv();
        for (int j = c; j < m.cols(); ++j) m(r, j) *= iv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            R f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class R>
int rank_field(Mat<R> m) {
    return int(rref_field(m).size());
}

template <class R>
R det_field(Mat<R> m) {
    int n = m.rows();
    if (n != m.cols()) throw ValidationError("determinant of non-square matrix");
    R d = m.proto().one();
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!m(i, k).is_zero()) { p = i; break; }
        if (p < 0) return m.proto();
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        R iv = m(k, k).inv();
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            R f = m(i, k) * iv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

template <class R>
std::optional<Mat<R>> inverse_field(const Mat<R>& m) {
    int n = m.rows();
    if (n != m.cols()) throw ValidationError("inverse of non-square matrix");
    Mat<R> aug(m.proto(), n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Mat<R>::identity(m.proto(), n));
    auto piv = rref_field(aug);
    if (int(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

// Basis of {x : m x = 0} over a field.
template <class R>
std::vector<std::vector<R>> kernel_field(const Mat<R>& m) {
    Mat<R> t = m;
    auto piv = rref_field(t);
    std::vector<char> isp(m.cols(), 0);
    for (int p : piv) isp[p] = 1;
    std::vector<std::vector<R>> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (isp[f]) continue;
        std::vector<R> v(m.cols(), m.proto());
        v[f] = m.proto().one();
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -t(int(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

// Some x with m x = b over a field, or nullopt.
template <class R>
std::optional<std::vector<R>> solve_field(const Mat<R>& m, const std::vector<R>& b) {
    Mat<R> aug(m.proto(), m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (int i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
    auto piv = rref_field(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<R> x(m.cols(), m.proto());
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(int(i), m.cols());
    return x;
}

// Column space basis (columns of m at the pivot positions).
template <class R>
Mat<R> colspace_field(const Mat<R>& m) {
    Mat<R> t = m;
    auto piv = rref_field(t);
    Mat<R> out(m.proto(), m.rows(), int(piv.size()));
    for (size_t k = 0; k < piv.size(); ++k) out.set_col(int(k), m.col(piv[k]));
    return out;
}

// All d-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int d);

// d-th compound matrix (minors indexed by lexicographic subsets).
template <class R>
Mat<R> compound(const Mat<R>& m, int d) {
    auto rs = subsets(m.rows(), d), cs = subsets(m.cols(), d);
    if (d == 0) return Mat<R>::identity(m.proto(), 1);
    Mat<R> out(m.proto(), int(rs.size()), int(cs.size()));
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j) {
            Mat<R> sub(m.proto(), d, d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) sub(a, b) = m(rs[i][a], cs[j][b]);
            out(int(i), int(j)) = det_cofactor(sub);
        }
    return out;
}

// ---------------------------------------------------------------- K[t]

template <class S>
using PMat = Mat<Poly<S>>;

template <class S>
struct SmithForm {
    PMat<S> U, D, V;  // U * m * V = D
};

// Smith normal form over S[t]; diagonal entries monic with d1 | d2 | ...
template <class S>
SmithForm<S> smith_form(const PMat<S>& m) {
    using P = Poly<S>;
    int R = m.rows(), C = m.cols();
    const P& pz = m.proto();
    PMat<S> D = m, U = PMat<S>::identity(pz, R), V = PMat<S>::identity(pz, C);
    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < C; ++j) std::swap(D(a, j), D(b, j));
        for (int j = 0; j < R; ++j) std::swap(U(a, j), U(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < R; ++i) std::swap(D(i, a), D(i, b));
        for (int i = 0; i < C; ++i) std::swap(V(i, a), V(i, b));
    };
    // row_a -= f * row_b
    auto row_op = [&](int a, int b, const P& f) {
        for (int j = 0; j < C; ++j)
            if (!D(b, j).is_zero()) D(a, j) -= f * D(b, j);
        for (int j = 0; j < R; ++j)
            if (!U(b, j).is_zero()) U(a, j) -= f * U(b, j);
    };
    auto col_op = [&](int a, int b, const P& f) {
        for (int i = 0; i < R; ++i)
            if (!D(i, b).is_zero()) D(i, a) -= D(i, b) * f;
        for (int i = 0; i < C; ++i)
            if (!V(i, b).is_zero()) V(i, a) -= V(i, b) * f;
    };
    int n = std::min(R, C);
    for (int k = 0; k < n; ++k) {
        while (true) {
            int bi = -1, bj = -1, bd = 0;
            for (int i = k; i < R; ++i)
                for (int j = k; j < C; ++j)
                    if (!D(i, j).is_zero() && (bi < 0 || D(i, j).deg() < bd)) {
                        bi = i;
                        bj = j;
                        bd = D(i, j).deg();
                    }
            if (bi < 0) break;
            swap_rows(k, bi);
            swap_cols(k, bj);
            bool clean = true;
            for (int i = k + 1; i < R; ++i) {
                if (D(i, k).is_zero()) continue;
                row_op(i, k, D(i, k) / D(k, k));
                if (!D(i, k).is_zero()) clean = false;
            }
            for (int j = k + 1; j < C; ++j) {
                if (D(k, j).is_zero()) continue;
                col_op(j, k, D(k, j) / D(k, k));
                if (!D(k, j).is_zero()) clean = false;
            }
            if (!clean) continue;
            int fi = -1;
            for (int i = k + 1; i < R && fi < 0; ++i)
                for (int j = k + 1; j < C; ++j)
                    if (!(D(i, j) % D(k, k)).is_zero()) { fi = i; break; }
            if (fi >= 0) {
                row_op(k, fi, pz.from_int(-1));
                continue;
            }
            break;
        }
        if (!D(k, k).is_zero()) {
            auto il = D(k, k).lead().inv();
            for (int j = 0; j < C; ++j) D(k, j) = D(k, j) * il;
            for (int j = 0; j < R; ++j) U(k, j) = U(k, j) * il;
        }
    }
    return {U, D, V};
}

// Canonical column Hermite basis of the S[t]-module spanned by the columns
// of m: pivot rows strictly increase, pivots monic, entries of earlier
// columns in a pivot row reduced modulo the pivot.
template <class S>
PMat<S> hermite_columns(const PMat<S>& m) {
    using P = Poly<S>;
    int R = m.rows();
    std::vector<std::vector<P>> active, done;
    for (int j = 0; j < m.cols(); ++j) {
        auto c = m.col(j);
        bool nz = false;
        for (auto& x : c) nz = nz || !x.is_zero();
        if (nz) active.push_back(std::move(c));
    }
    auto axpy = [](std::vector<P>& a, const std::vector<P>& b, const P& f) {
        for (size_t i = 0; i < a.size(); ++i)
            if (!b[i].is_zero()) a[i] -= f * b[i];
    };
    std::vector<int> pivrow;
    for (int i = 0; i < R && !active.empty(); ++i) {
        while (true) {
            int best = -1;
            for (size_t k = 0; k < active.size(); ++k)
                if (!active[k][i].is_zero() && (best < 0 || active[k][i].deg() < active[best][i].deg()))
                    best = int(k);
            if (best < 0) break;
            bool single = true;
            for (size_t k = 0; k < active.size(); ++k) {
                if (int(k) == best || active[k][i].is_zero()) continue;
                axpy(active[k], active[best], active[k][i] / active[best][i]);
                if (!active[k][i].is_zero()) single = false;
            }
            if (!single) continue;
            auto piv = active[best];
            active.erase(active.begin() + best);
            auto il = piv[i].lead().inv();
            for (auto& x : piv) x = x * il;
            for (auto& h : done)
                if (!h[i].is_zero()) axpy(h, piv, h[i] / piv[i]);
            done.push_back(std::move(piv));
            pivrow.push_back(i);
            break;
        }
        std::vector<std::vector<P>> keep;
        for (auto& c : active) {
            bool nz = false;
            for (auto& x : c) nz = nz || !x.is_zero();
            if (nz) keep.push_back(std::move(c));
        }
        active = std::move(keep);
    }
    PMat<S> out(m.proto(), R, int(done.size()));
    for (size_t j = 0; j < done.size(); ++j) out.set_col(int(j), done[j]);
    return out;
}

}  // namespace amot
