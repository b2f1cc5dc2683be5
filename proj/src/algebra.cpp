#include "amot/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace amot {

GF frobenius(const GF& x, long e) {
    require(e >= 0, "frobenius exponent must be nonnegative");
    return x.frob(e);
}

int common_level(int a, int b) { return std::lcm(a, b); }

GF to_level(const GF& x, int m) { return x.degree() == m ? x : x.embed(m); }

std::optional<AdditiveSolution> additive_solve_at(int level, int d, const GF& phi0, const GF& c0) {
    FieldTower& tw = *phi0.level()->tower;
    const GFLevel* lv = tw.level(level);
    GF phi = to_level(phi0, level), c = to_level(c0, level);
    int q = lv->q;
    FqMat A(q, level, level);
    for (int j = 0; j < level; ++j) {
        std::vector<int> e(level, 0);
        e[j] = 1;
        GF x(lv, e);
        GF y = x.frob(d) - phi * x;
        auto yc = y.coords();
        for (int i = 0; i < level; ++i) A.at(i, j) = yc[i];
    }
    auto sol = A.solve(c.coords());
    if (!sol) return std::nullopt;
    AdditiveSolution out{GF(lv, *sol), {}};
    for (auto& k : A.kernel()) out.kernel.emplace_back(lv, k);
    return out;
}

std::vector<GF> solve_additive_at(int level, int d, const GF& phi, const GF& c) {
    if (phi.is_zero()) throw DegenerateInseparable("phi = 0 gives a purely inseparable equation");
    auto s = additive_solve_at(level, d, phi, c);
    if (!s) return {};
    std::vector<GF> roots{s->particular};
    for (const GF& k : s->kernel) {
        std::vector<GF> next;
        for (const GF& r : roots)
            for (int a = 0; a < phi.q(); ++a) next.push_back(r + k.scale(a));
        roots = std::move(next);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

AdditiveRoots solve_additive(int d, const GF& phi, const GF& c, int cap) {
    require(d >= 1, "d must be positive");
    if (phi.is_zero()) throw DegenerateInseparable("phi = 0 gives a purely inseparable equation");
    require(phi.level()->tower == c.level()->tower, "phi and c live in different towers");
    FieldTower& tw = *phi.level()->tower;
    if (cap <= 0) cap = tw.default_cap();
    int L0 = common_level(phi.degree(), c.degree());
    for (int L = L0; L <= cap; L += L0) {
        auto s = additive_solve_at(L, d, phi, c);
        if (!s || int(s->kernel.size()) < d) continue;
        return {solve_additive_at(L, d, phi, c), L};
    }
    throw CapExhausted("no level <= " + std::to_string(cap) + " contains all roots");
}

// ---------------------------------------------------------------- flattening

std::vector<int> flatten_polys(const std::vector<GFPoly>& v, int D) {
    if (v.empty()) return {};
    int m = v[0].proto().degree();
    std::vector<int> x(v.size() * (D + 1) * m, 0);
    for (size_t i = 0; i < v.size(); ++i) {
        internal_check(v[i].deg() <= D, "polynomial exceeds flattening degree");
        for (int k = 0; k <= v[i].deg(); ++k) {
            const auto& raw = v[i][k].raw();
            for (size_t l = 0; l < raw.size(); ++l) x[(i * (D + 1) + k) * m + l] = raw[l];
        }
    }
    return x;
}

std::vector<GFPoly> unflatten_polys(const std::vector<int>& x, int n, int D, const GF& proto) {
    int m = proto.degree();
    std::vector<GFPoly> out;
    for (int i = 0; i < n; ++i) {
        std::vector<GF> cs;
        for (int k = 0; k <= D; ++k) {
            auto b = x.begin() + ((size_t(i) * (D + 1) + k) * m);
            cs.emplace_back(proto.level(), std::vector<int>(b, b + m));
        }
        out.emplace_back(proto, std::move(cs));
    }
    return out;
}

std::vector<std::vector<GFPoly>> fq_linear_kernel(
    int n, int D, const GF& proto,
    const std::function<std::vector<GFPoly>(const std::vector<GFPoly>&)>& F) {
    int m = proto.degree(), q = proto.q();
    int N = n * (D + 1) * m;
    std::vector<std::vector<GFPoly>> images;
    images.reserve(N);
    int od = 0;
    size_t olen = 0;
    for (int idx = 0; idx < N; ++idx) {
        std::vector<int> e(N, 0);
        e[idx] = 1;
        auto img = F(unflatten_polys(e, n, D, proto));
        for (auto& p : img) od = std::max(od, p.deg());
        olen = img.size();
        images.push_back(std::move(img));
    }
    int rows = int(olen) * (od + 1) * m;
    FqMat A(q, rows, N);
    for (int j = 0; j < N; ++j) {
        auto col = flatten_polys(images[j], od);
        for (int i = 0; i < rows; ++i) A.at(i, j) = col[i];
    }
    std::vector<std::vector<GFPoly>> out;
    for (auto& k : A.kernel()) out.push_back(unflatten_polys(k, n, D, proto));
    return out;
}

// ---------------------------------------------------------------- semilinear kernel

void clear_denominators(const Mat<RatGF>& delta, PMat<GF>& num, GFPoly& den) {
    den = delta.proto().num().one();
    for (int i = 0; i < delta.rows(); ++i)
        for (int j = 0; j < delta.cols(); ++j) den = lcm(den, delta(i, j).den());
    num = PMat<GF>(den, delta.rows(), delta.cols());
    for (int i = 0; i < delta.rows(); ++i)
        for (int j = 0; j < delta.cols(); ++j) num(i, j) = delta(i, j).num() * (den / delta(i, j).den());
}

std::vector<std::vector<GFPoly>> polynomial_fixed_points(const PMat<GF>& lhs, const GFPoly& rhs, int e, int D) {
    int n = lhs.cols();
    return fq_linear_kernel(n, D, rhs.proto(), [&](const std::vector<GFPoly>& v) {
        std::vector<GFPoly> sv;
        for (auto& p : v) sv.push_back(sigma(p, e));
        auto out = lhs.apply(sv);
        for (int i = 0; i < n; ++i) out[i] -= rhs * v[i];
        return out;
    });
}

namespace {

std::vector<std::vector<RatGF>> greedy_basis(const std::vector<std::vector<GFPoly>>& sols, int n, const RatGF& proto) {
    std::vector<std::vector<RatGF>> basis;
    for (const auto& s : sols) {
        Mat<RatGF> m(proto, n, int(basis.size()) + 1);
        for (size_t j = 0; j < basis.size(); ++j) m.set_col(int(j), basis[j]);
        for (int i = 0; i < n; ++i) m(i, int(basis.size())) = RatGF(s[i]);
        if (rank_field(m) == int(basis.size()) + 1) basis.push_back(m.col(int(basis.size())));
        if (int(basis.size()) == n) break;
    }
    return basis;
}

}  // namespace

SemilinearKernel semilinear_kernel(const Mat<RatGF>& delta, int e, int cap, int max_cap) {
    require(e >= 1, "twist exponent must be positive");
    require(delta.rows() == delta.cols(), "delta must be square");
    if (det_field(delta).is_zero()) throw NotRestricted("delta is singular");
    PMat<GF> num;
    GFPoly den;
    clear_denominators(delta, num, den);
    int n = delta.rows();
    if (cap < 0) {
        int md = den.deg();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) md = std::max(md, num(i, j).deg());
        cap = md + 8;
    }
    auto at = [&](int D) { return greedy_basis(polynomial_fixed_points(num, den, e, D), n, delta.proto()); };
    auto cur = at(cap);
    if (int(cur.size()) == n) return {cur, cap, true};
    while (2 * cap <= max_cap) {
        auto next = at(2 * cap);
        if (next.size() == cur.size()) return {cur, cap, true};
        cap *= 2;
        cur = std::move(next);
        if (int(cur.size()) == n) return {cur, cap, true};
    }
    throw CapExhausted("semilinear kernel rank did not stabilise below degree " + std::to_string(max_cap));
}

}  // namespace amot
