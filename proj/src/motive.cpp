#include "amot/motive.hpp"

#include <algorithm>
#include <sstream>

namespace amot {

namespace {

template <class K>
using RF = RatFunc<K>;

template <class K>
Mat<RF<K>> to_rat(const PMat<K>& m) {
    return m.map([](const Poly<K>& p) { return RF<K>(p); });
}

template <class K>
std::optional<PMat<K>> to_poly(const Mat<RF<K>>& m) {
    PMat<K> out(m.proto().num(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_poly()) return std::nullopt;
            out(i, j) = m(i, j).num();
        }
    return out;
}

// Inverse of a unimodular polynomial matrix.
template <class K>
PMat<K> unimodular_inverse(const PMat<K>& u) {
    auto inv = inverse_field(to_rat(u));
    internal_check(inv.has_value(), "unimodular matrix is singular");
    auto p = to_poly(*inv);
    internal_check(p.has_value(), "inverse of unimodular matrix is not polynomial");
    return *p;
}

std::string describe(const Poly<GF>& p) { return factor_str(factor(p.monic())); }
std::string describe(const Poly<UFunc>& p) { return "(" + p.monic().str() + ")"; }

template <class K>
Mat<K> hcat(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> m(a.proto(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class K>
Mat<K> mat_pow(const Mat<K>& a, int e) {
    Mat<K> r = Mat<K>::identity(a.proto(), a.rows());
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// F_q-coordinates of a family of matrices, in a common frame.
std::vector<std::vector<int>> flatten_family(const std::vector<Mat<GF>>& ms) {
    std::vector<std::vector<int>> out;
    for (const auto& m : ms) {
        std::vector<int> v;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                auto c = m(i, j).coords();
                v.insert(v.end(), c.begin(), c.end());
            }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<int>> flatten_family(const std::vector<Mat<UFunc>>& ms) {
    const UFunc& z = ms.at(0).proto();
    GFPoly D = z.rf().den();
    for (const auto& m : ms)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) D = lcm(D, m(i, j).rf().den());
    int maxdeg = 0;
    std::vector<std::vector<GFPoly>> nums;
    for (const auto& m : ms) {
        std::vector<GFPoly> row;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const auto& f = m(i, j).rf();
                row.push_back(f.num() * (D / f.den()));
                maxdeg = std::max(maxdeg, row.back().deg());
            }
        nums.push_back(std::move(row));
    }
    std::vector<std::vector<int>> out;
    for (const auto& row : nums) {
        std::vector<int> v;
        for (const auto& p : row)
            for (int k = 0; k <= maxdeg; ++k) {
                auto c = p[k].coords();
                v.insert(v.end(), c.begin(), c.end());
            }
        out.push_back(std::move(v));
    }
    return out;
}

template <class K>
int max_entry_deg(const PMat<K>& m) {
    int d = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).deg());
    return d;
}

}  // namespace

// ---------------------------------------------------------------- bases

Base<GF> finite_base(int q, const std::vector<int>& field_poly, const GF& theta) {
    auto tower = FieldTower::get(q, field_poly);
    require(theta.level() == tower->base(), "theta must lie in the base field F_q^s");
    return {tower, theta, minpoly_fq(theta)};
}

Base<UFunc> rational_base(int q, const std::vector<int>& field_poly, const UFunc& theta) {
    auto tower = FieldTower::get(q, field_poly);
    require(theta.level() == tower->base(), "theta must have constants in F_q^s");
    GFPoly ker = theta.is_constant() ? minpoly_fq(theta.constant_value()) : GFPoly(GF(tower->level(1)));
    return {tower, theta, ker};
}

// ---------------------------------------------------------------- effective motives

template <class K>
EffectiveMotive<K> new_effective(const Base<K>& base, const PMat<K>& delta) {
    require(delta.rows() >= 1 && delta.rows() == delta.cols(), "delta must be a nonempty square matrix");
    Poly<K> d = det_bareiss(delta);
    if (d.is_zero()) throw CharacteristicViolation("det(delta) = 0");
    Poly<K> l = base.t_minus_theta();
    int e = 0;
    while (d.deg() > 0) {
        Poly<K> q, r;
        d.divmod(l, q, r);
        if (!r.is_zero()) break;
        d = q;
        ++e;
    }
    if (d.deg() > 0)
        throw CharacteristicViolation("det(delta) has the factor " + describe(d) + " away from t - theta");
    return {base, delta, e};
}

template <class K>
EffectiveMotive<K> unit_effective(const Base<K>& base) {
    return {base, PMat<K>::identity(Poly<K>(base.zero()), 1), 0};
}

template <class K>
EffectiveMotive<K> tensor_effective(const EffectiveMotive<K>& a, const EffectiveMotive<K>& b) {
    require(a.base == b.base, "tensor of motives over different bases");
    return new_effective(a.base, kron(a.delta, b.delta));
}

template <class K>
EffectiveMotive<K> exterior_effective(const EffectiveMotive<K>& m, int d) {
    require(d >= 0 && d <= m.rank(), "exterior power degree out of range");
    return new_effective(m.base, compound(m.delta, d));
}

template <class K>
Motive<K> make_motive(const EffectiveMotive<K>& m, const EffectiveMotive<K>& l) {
    require(l.rank() == 1, "the second member of a motive pair must have rank 1");
    require(m.base == l.base, "motive pair over different bases");
    return {m, l};
}

template <class K>
Motive<K> make_motive(const EffectiveMotive<K>& m) {
    return {m, unit_effective(m.base)};
}

template <class K>
Motive<K> tensor_motive(const Motive<K>& x, const Motive<K>& y) {
    return make_motive(tensor_effective(x.m, y.m), tensor_effective(x.l, y.l));
}

template <class K>
Motive<K> direct_sum(const Motive<K>& x, const Motive<K>& y) {
    EffectiveMotive<K> a = tensor_effective(x.m, y.l), b = tensor_effective(y.m, x.l);
    EffectiveMotive<K> s = new_effective(x.base(), amot::direct_sum(a.delta, b.delta));
    return make_motive(s, tensor_effective(x.l, y.l));
}

template <class K>
Motive<K> exterior_power(const Motive<K>& x, int d) {
    return make_motive(exterior_effective(x.m, d), x.l);
}

template <class K>
Motive<K> det_motive(const Motive<K>& x) {
    return exterior_power(x, x.rank());
}

template <class K>
EffectiveMotive<K> second_highest(const Motive<K>& x) {
    return exterior_effective(x.m, x.rank() - 1);
}

template <class K>
Motive<K> dual_motive(const Motive<K>& x) {
    return make_motive(tensor_effective(second_highest(x), x.l), exterior_effective(x.m, x.rank()));
}

// ---------------------------------------------------------------- homomorphisms

template <class K>
bool intertwines(const MotiveHom<K>& f) {
    const auto &src = f.source, &tgt = f.target;
    if (f.matrix.rows() != tgt.rank() || f.matrix.cols() != src.rank()) return false;
    PMat<K> lhs = f.matrix * src.m.delta * tgt.l.delta(0, 0);
    PMat<K> rhs = tgt.m.delta * src.l.delta(0, 0) * sigma(f.matrix, 1);
    return lhs == rhs;
}

template <class K>
MotiveHom<K> make_hom(const Motive<K>& source, const Motive<K>& target, const PMat<K>& matrix) {
    require(source.base() == target.base(), "homomorphism between motives over different bases");
    require(matrix.rows() == target.rank() && matrix.cols() == source.rank(), "hom matrix has the wrong shape");
    MotiveHom<K> f{source, target, matrix};
    require(intertwines(f), "matrix does not commute with tau");
    return f;
}

template <class K>
MotiveHom<K> identity_hom(const Motive<K>& x) {
    return {x, x, PMat<K>::identity(Poly<K>(x.base().zero()), x.rank())};
}

template <class K>
MotiveHom<K> compose_homs(const MotiveHom<K>& f, const MotiveHom<K>& g) {
    require(f.target == g.source, "composition: target of f differs from source of g");
    return {f.source, g.target, g.matrix * f.matrix};
}

template <class K>
MotiveHom<K> scalar_isogeny(const Motive<K>& x, const std::vector<int>& a) {
    Poly<K> ap = lift_fq_poly(a, x.base().zero());
    require(!ap.is_zero(), "scalar isogeny needs a nonzero element of F_q[t]");
    return {x, x, PMat<K>::identity(Poly<K>(x.base().zero()), x.rank()) * ap};
}

template <class K>
MotiveHom<K> evaluation_hom(const Motive<K>& x) {
    Motive<K> src = tensor_motive(dual_motive(x), x);
    Motive<K> unit = make_motive(unit_effective(x.base()));
    int r = x.rank();
    auto rows = subsets(r, r - 1);
    Poly<K> pz(x.base().zero());
    PMat<K> w(pz, 1, r * r);
    for (size_t I = 0; I < rows.size(); ++I)
        for (int j = 0; j < r; ++j) {
            if (std::find(rows[I].begin(), rows[I].end(), j) != rows[I].end()) continue;
            int later = 0;
            for (int i : rows[I]) later += i > j;
            w(0, int(I) * r + j) = later % 2 ? -pz.one() : pz.one();
        }
    return {src, unit, w};
}

HomResult hom_motives(const Motive<GF>& x, const Motive<GF>& y, int cap, int max_cap) {
    require(x.base() == y.base(), "hom between motives over different bases");
    const Base<GF>& base = x.base();
    int rs = x.rank(), rt = y.rank(), s = base.s();
    PMat<GF> A = x.m.delta * y.l.delta(0, 0);
    PMat<GF> B = y.m.delta * x.l.delta(0, 0);
    GF proto = base.zero();
    GFPoly pz(proto);
    auto F = [&](const std::vector<GFPoly>& v) {
        PMat<GF> f(pz, rt, rs);
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rs; ++j) f(i, j) = v[size_t(i) * rs + j];
        PMat<GF> r = f * A - B * sigma(f, 1);
        std::vector<GFPoly> out;
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rs; ++j) out.push_back(r(i, j));
        return out;
    };
    GF p1(base.tower->level(1));
    GFPoly pz1(p1);
    int n = rt * rs;
    auto basis_at = [&](int D) {
        auto ker = fq_linear_kernel(n, D, proto, F);
        PMat<GF> cols(pz1, n * s, int(ker.size()));
        for (size_t k = 0; k < ker.size(); ++k)
            for (int e = 0; e < n; ++e) {
                const GFPoly& p = ker[k][e];
                for (int l = 0; l < s; ++l) {
                    std::vector<GF> c;
                    for (int i = 0; i <= p.deg(); ++i) c.push_back(GF::from_int(p1.level(), p[i].coords()[l]));
                    cols(e * s + l, int(k)) = GFPoly(p1, c);
                }
            }
        return hermite_columns(cols);
    };
    int D = cap >= 0 ? cap : std::max(max_entry_deg(A), max_entry_deg(B)) + 8;
    PMat<GF> H = basis_at(D);
    HomResult res;
    while (true) {
        if (2 * D > max_cap) throw CapExhausted("Hom saturation not reached below degree " + std::to_string(max_cap));
        PMat<GF> H2 = basis_at(2 * D);
        if (H2 == H) break;
        H = H2;
        D *= 2;
    }
    res.cap = D;
    res.saturated = true;
    res.rank = H.cols();
    GF a = GF::gen(base.tower->base());
    for (int k = 0; k < H.cols(); ++k) {
        PMat<GF> f(pz, rt, rs);
        for (int e = 0; e < n; ++e) {
            GFPoly acc = pz;
            GF apow = proto.one();
            for (int l = 0; l < s; ++l) {
                acc += gfpoly_embed(H(e * s + l, k), s) * apow;
                apow *= a;
            }
            f(e / rs, e % rs) = acc;
        }
        res.basis.push_back(f);
    }
    return res;
}

// ---------------------------------------------------------------- torsion modules

template <class K>
TorsionBoldModule<K> make_torsion(const Base<K>& base, const std::vector<Poly<K>>& divisors, const PMat<K>& tau) {
    int n = int(divisors.size());
    require(tau.rows() == n && tau.cols() == n, "torsion tau matrix has the wrong shape");
    TorsionBoldModule<K> t;
    t.base = base;
    Poly<K> pz(base.zero());
    for (const auto& d : divisors) {
        require(!d.is_zero(), "elementary divisors must be nonzero");
        require(d.deg() > 0, "elementary divisors must be nonconstant");
        t.divisors.push_back(d.monic());
    }
    t.tau = PMat<K>(pz, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            t.tau(i, j) = tau(i, j) % t.divisors[i];
            if (!((sigma(t.divisors[j], 1) * t.tau(i, j)) % t.divisors[i]).is_zero())
                throw ValidationError("tau is not well defined on the quotient (entry " + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        }
    int N = 0;
    for (const auto& d : t.divisors) {
        t.offset.push_back(N);
        N += d.deg();
    }
    const K& z = base.zero();
    t.Tau = Mat<K>(z, N, N);
    t.Tt = Mat<K>(z, N, N);
    for (int j = 0; j < n; ++j) {
        int dj = t.divisors[j].deg();
        for (int k = 0; k < dj; ++k) {
            for (int i = 0; i < n; ++i) {
                Poly<K> img = (t.tau(i, j).shift(k)) % t.divisors[i];
                for (int c = 0; c <= img.deg(); ++c) t.Tau(t.offset[i] + c, t.offset[j] + k) = img[c];
            }
            if (k + 1 < dj)
                t.Tt(t.offset[j] + k + 1, t.offset[j] + k) = z.one();
            else
                for (int c = 0; c < dj; ++c) t.Tt(t.offset[j] + c, t.offset[j] + k) = -t.divisors[j][c];
        }
    }
    return t;
}

template <class K>
TorsionBoldModule<K> torsion_from_realization(const Base<K>& base, const Mat<K>& Tau, const Mat<K>& Tt) {
    int N = Tau.rows();
    Poly<K> pz(base.zero());
    if (N == 0) return make_torsion<K>(base, {}, PMat<K>(pz, 0, 0));
    PMat<K> R(pz, N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) R(i, j) = Poly<K>::constant(-Tt(i, j)) + (i == j ? base.t() : pz);
    auto sf = smith_form(R);
    PMat<K> Uinv = unimodular_inverse(sf.U);
    std::vector<Poly<K>> divs;
    std::vector<std::vector<K>> gens;
    const K& z = base.zero();
    for (int i = 0; i < N; ++i) {
        if (sf.D(i, i).deg() <= 0) continue;
        divs.push_back(sf.D(i, i));
        std::vector<K> g(N, z);
        for (int j = 0; j < N; ++j) {
            std::vector<K> cur(N, z);
            cur[j] = z.one();
            const Poly<K>& v = Uinv(j, i);
            for (int k = 0; k <= v.deg(); ++k) {
                for (int c = 0; c < N; ++c) g[c] += v[k] * cur[c];
                cur = Tt.apply(cur);
            }
        }
        gens.push_back(std::move(g));
    }
    Mat<K> P(z, N, N);
    std::vector<int> off;
    int col = 0;
    for (size_t i = 0; i < divs.size(); ++i) {
        off.push_back(col);
        std::vector<K> cur = gens[i];
        for (int k = 0; k < divs[i].deg(); ++k) {
            P.set_col(col++, cur);
            cur = Tt.apply(cur);
        }
    }
    internal_check(col == N, "Smith divisors do not account for the dimension");
    auto Pinv = inverse_field(P);
    internal_check(Pinv.has_value(), "cyclic basis is singular");
    int n = int(divs.size());
    PMat<K> tau(pz, n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<K> sg;
        for (const K& x : gens[j]) sg.push_back(sigma(x, 1));
        std::vector<K> c = Pinv->apply(Tau.apply(sg));
        for (int i = 0; i < n; ++i) {
            std::vector<K> cf(c.begin() + off[i], c.begin() + off[i] + divs[i].deg());
            tau(i, j) = Poly<K>(z, cf);
        }
    }
    return make_torsion(base, divs, tau);
}

template <class K>
void check_characteristic(const TorsionBoldModule<K>& t, CharCheck mode) {
    int N = t.dim();
    if (N == 0) return;
    const K& th = t.base.theta;
    Mat<K> I = Mat<K>::identity(th, N);
    if (mode == CharCheck::Strict) {
        Mat<K> ak = mat_pow(Mat<K>(sigma(t.Tt, 1) - I * th), N);
        for (const auto& v : kernel_field(t.Tau))
            for (const K& x : ak.apply(v))
                if (!x.is_zero()) throw CharacteristicViolation("kernel of tau_lin is not supported at t - theta");
    }
    Mat<K> bc = mat_pow(Mat<K>(t.Tt - I * th), N);
    if (rank_field(hcat(t.Tau, bc)) != rank_field(t.Tau))
        throw CharacteristicViolation("cokernel of tau_lin is not supported at t - theta");
}

template <class K>
bool tau_lin_bijective(const TorsionBoldModule<K>& t) {
    return t.dim() == 0 || rank_field(t.Tau) == t.dim();
}

template <class K>
bool tau_nilpotent(const TorsionBoldModule<K>& t) {
    int N = t.dim();
    Mat<K> P = Mat<K>::identity(t.base.zero(), N);
    for (int m = 0; m < N && !P.is_zero(); ++m) P = t.Tau * sigma(P, 1);
    return P.is_zero();
}

template <class K>
GFPoly annihilator(const TorsionBoldModule<K>& t) {
    auto tower = t.base.tower;
    int q = t.base.q();
    int N = t.dim();
    if (N == 0) return gfpoly_from_ints(*tower, 1, {1});
    std::vector<Mat<K>> pw{Mat<K>::identity(t.base.zero(), N)};
    int bound = N * t.base.s();
    for (int k = 1; k <= bound; ++k) {
        pw.push_back(pw.back() * t.Tt);
        auto flat = flatten_family(pw);
        int rows = int(flat[0].size());
        FqMat A(q, rows, k);
        std::vector<int> b(rows);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < k; ++c) A.at(r, c) = flat[c][r];
            b[r] = flat[k][r] ? q - flat[k][r] : 0;
        }
        auto sol = A.solve(b);
        if (!sol) continue;
        std::vector<int> coeffs = *sol;
        coeffs.push_back(1);
        return gfpoly_from_ints(*tower, 1, coeffs);
    }
    throw NotTorsion("no annihilator in F_q[t] of degree <= " + std::to_string(bound));
}

template <class K>
TorsionFiltration<K> torsion_filtration(const TorsionBoldModule<K>& t, CharCheck mode) {
    check_characteristic(t, mode);
    TorsionFiltration<K> out;
    int N = t.dim();
    Mat<K> W = Mat<K>::identity(t.base.zero(), N);
    out.flag.push_back(W);
    out.flag_dims.push_back(N);
    while (W.cols() > 0) {
        Mat<K> next = colspace_field(Mat<K>(t.Tau * sigma(W, 1)));
        if (next.cols() == W.cols()) break;
        W = next;
        out.flag.push_back(W);
        out.flag_dims.push_back(W.cols());
    }
    out.nilpotency_order = int(out.flag.size()) - 1;
    out.bijective_basis = W;
    out.nilpotent_dim = N - W.cols();
    int k = W.cols();
    const K& z = t.base.zero();
    Mat<K> X(z, k, k), Y(z, k, k);
    Mat<K> TW = t.Tau * sigma(W, 1), tW = t.Tt * W;
    for (int j = 0; j < k; ++j) {
        auto x = solve_field(W, TW.col(j));
        auto y = solve_field(W, tW.col(j));
        internal_check(x && y, "stable image is not tau- or t-stable");
        X.set_col(j, *x);
        Y.set_col(j, *y);
    }
    out.bijective_part = torsion_from_realization(t.base, X, Y);
    out.annihilator = annihilator(t);
    return out;
}

template <class K>
IsogenyCheck<K> is_isogeny(const MotiveHom<K>& f) {
    IsogenyCheck<K> out;
    if (f.matrix.rows() != f.matrix.cols()) return out;
    if (det_bareiss(f.matrix).is_zero()) return out;
    out.isogeny = true;
    out.smith = smith_form(f.matrix);
    const Base<K>& base = f.source.base();
    PMat<K> DN = f.target.m.delta * f.source.l.delta(0, 0);
    PMat<K> Uinv = unimodular_inverse(out.smith.U);
    PMat<K> Dp = out.smith.U * DN * sigma(Uinv, 1);
    std::vector<int> idx;
    std::vector<Poly<K>> divs;
    for (int i = 0; i < f.matrix.rows(); ++i)
        if (out.smith.D(i, i).deg() > 0) {
            idx.push_back(i);
            divs.push_back(out.smith.D(i, i));
        }
    int n = int(idx.size());
    PMat<K> tau(Poly<K>(base.zero()), n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) tau(a, b) = Dp(idx[a], idx[b]) % divs[a];
    out.coker = make_torsion(base, divs, tau);
    return out;
}

template <class K>
IsogenyInverse<K> invert_isogeny(const MotiveHom<K>& f) {
    auto ic = is_isogeny(f);
    if (!ic.isogeny) throw ValidationError("not an isogeny");
    const Base<K>& base = f.source.base();
    GFPoly a = annihilator(*ic.coker);
    Poly<K> ak = lift_fq_poly(gfpoly_prime_ints(a), base.zero());
    auto finv = inverse_field(to_rat(f.matrix));
    internal_check(finv.has_value(), "isogeny matrix is singular");
    auto g = to_poly(Mat<RF<K>>(*finv * RF<K>(ak)));
    internal_check(g.has_value(), "a * f^{-1} is not integral");
    MotiveHom<K> gh{f.target, f.source, *g};
    internal_check(intertwines(gh), "inverse isogeny does not commute with tau");
    internal_check(compose_homs(f, gh).matrix == scalar_isogeny(f.source, gfpoly_prime_ints(a)).matrix,
                   "g o f != [a]");
    internal_check(compose_homs(gh, f).matrix == scalar_isogeny(f.target, gfpoly_prime_ints(a)).matrix,
                   "f o g != [a]");
    return {a, gh};
}

template <class K>
bool is_separable(const MotiveHom<K>& f) {
    auto ic = is_isogeny(f);
    require(ic.isogeny, "not an isogeny");
    return tau_lin_bijective(*ic.coker);
}

template <class K>
bool is_purely_inseparable(const MotiveHom<K>& f) {
    auto ic = is_isogeny(f);
    require(ic.isogeny, "not an isogeny");
    return tau_nilpotent(*ic.coker);
}

template <class K>
SepInsepFactorization<K> factor_sep_insep(const MotiveHom<K>& f) {
    auto ic = is_isogeny(f);
    if (!ic.isogeny) throw ValidationError("not an isogeny");
    if (f.source.base().generic()) return {f, identity_hom(f.target)};
    const TorsionBoldModule<K>& T = *ic.coker;
    auto filt = torsion_filtration(T);
    int kp = filt.bijective_basis.cols();
    if (kp == T.dim()) return {f, identity_hom(f.target)};
    if (kp == 0) return {identity_hom(f.source), f};

    const Base<K>& base = f.source.base();
    Poly<K> pz(base.zero());
    int r = f.matrix.rows();
    PMat<K> Uinv = unimodular_inverse(ic.smith.U);
    std::vector<int> idx;
    for (int i = 0; i < r; ++i)
        if (ic.smith.D(i, i).deg() > 0) idx.push_back(i);
    PMat<K> gens(pz, r, r + kp);
    gens.set_block(0, 0, f.matrix);
    for (int c = 0; c < kp; ++c) {
        std::vector<Poly<K>> y(r, pz);
        for (size_t a = 0; a < idx.size(); ++a) {
            std::vector<K> cf;
            for (int k = 0; k < T.divisors[a].deg(); ++k) cf.push_back(filt.bijective_basis(T.offset[a] + k, c));
            y[idx[a]] = Poly<K>(base.zero(), cf);
        }
        gens.set_col(r + c, Uinv.apply(y));
    }
    PMat<K> B = hermite_columns(gens);
    internal_check(B.cols() == r, "preimage of the bijective part is not of full rank");
    auto Binv = inverse_field(to_rat(B));
    internal_check(Binv.has_value(), "preimage basis is singular");
    auto f1 = to_poly(Mat<RF<K>>(*Binv * to_rat(f.matrix)));
    PMat<K> DN = f.target.m.delta * f.source.l.delta(0, 0);
    auto dE = to_poly(Mat<RF<K>>(*Binv * to_rat(PMat<K>(DN * sigma(B, 1)))));
    internal_check(f1 && dE, "intermediate motive is not integral");
    Motive<K> mid = make_motive(new_effective(base, *dE), tensor_effective(f.source.l, f.target.l));
    SepInsepFactorization<K> out{make_hom(f.source, mid, *f1), make_hom(mid, f.target, B)};
    internal_check(is_separable(out.separable), "first factor is not separable");
    internal_check(is_purely_inseparable(out.inseparable), "second factor is not purely inseparable");
    return out;
}

// ---------------------------------------------------------------- bold side

BoldModule motive_to_bold(const Motive<GF>& x) {
    Mat<RatGF> tau = to_rat(x.m.delta) * RatGF(x.l.delta(0, 0)).inv();
    return bold_from_matrix(fk_ring(x.base().tower), tau);
}

Mat<RatGF> hom_to_bold(const MotiveHom<GF>& f) { return to_rat(f.matrix); }

template <class K>
std::string motive_summary(const Motive<K>& x) {
    std::ostringstream os;
    os << "rank: " << x.rank() << "\n";
    os << "e: " << x.m.e << "\n";
    os << "delta: " << x.m.delta.str() << "\n";
    os << "l.e: " << x.l.e << "\n";
    os << "l.delta: " << x.l.delta.str() << "\n";
    return os.str();
}

#define AMOT_INSTANTIATE(K)                                                                                 \
    template EffectiveMotive<K> new_effective(const Base<K>&, const PMat<K>&);                              \
    template EffectiveMotive<K> unit_effective(const Base<K>&);                                             \
    template EffectiveMotive<K> tensor_effective(const EffectiveMotive<K>&, const EffectiveMotive<K>&);     \
    template EffectiveMotive<K> exterior_effective(const EffectiveMotive<K>&, int);                         \
    template Motive<K> make_motive(const EffectiveMotive<K>&, const EffectiveMotive<K>&);                   \
    template Motive<K> make_motive(const EffectiveMotive<K>&);                                              \
    template Motive<K> tensor_motive(const Motive<K>&, const Motive<K>&);                                   \
    template Motive<K> direct_sum(const Motive<K>&, const Motive<K>&);                                      \
    template Motive<K> exterior_power(const Motive<K>&, int);                                               \
    template Motive<K> det_motive(const Motive<K>&);                                                        \
    template EffectiveMotive<K> second_highest(const Motive<K>&);                                           \
    template Motive<K> dual_motive(const Motive<K>&);                                                       \
    template bool intertwines(const MotiveHom<K>&);                                                         \
    template MotiveHom<K> make_hom(const Motive<K>&, const Motive<K>&, const PMat<K>&);                     \
    template MotiveHom<K> identity_hom(const Motive<K>&);                                                   \
    template MotiveHom<K> compose_homs(const MotiveHom<K>&, const MotiveHom<K>&);                           \
    template MotiveHom<K> scalar_isogeny(const Motive<K>&, const std::vector<int>&);                        \
    template MotiveHom<K> evaluation_hom(const Motive<K>&);                                                 \
    template TorsionBoldModule<K> make_torsion(const Base<K>&, const std::vector<Poly<K>>&, const PMat<K>&); \
    template TorsionBoldModule<K> torsion_from_realization(const Base<K>&, const Mat<K>&, const Mat<K>&);   \
    template void check_characteristic(const TorsionBoldModule<K>&, CharCheck);                             \
    template TorsionFiltration<K> torsion_filtration(const TorsionBoldModule<K>&, CharCheck);               \
    template GFPoly annihilator(const TorsionBoldModule<K>&);                                               \
    template bool tau_lin_bijective(const TorsionBoldModule<K>&);                                           \
    template bool tau_nilpotent(const TorsionBoldModule<K>&);                                               \
    template IsogenyCheck<K> is_isogeny(const MotiveHom<K>&);                                               \
    template IsogenyInverse<K> invert_isogeny(const MotiveHom<K>&);                                         \
    template SepInsepFactorization<K> factor_sep_insep(const MotiveHom<K>&);                                \
    template bool is_separable(const MotiveHom<K>&);                                                        \
    template bool is_purely_inseparable(const MotiveHom<K>&);                                               \
    template std::string motive_summary(const Motive<K>&);

AMOT_INSTANTIATE(GF)
AMOT_INSTANTIATE(UFunc)

}  // namespace amot
