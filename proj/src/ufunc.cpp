#include "amot/ufunc.hpp"

namespace amot {

namespace {

Poly<GF> qpow_poly(const Poly<GF>& p, long e) {
    if (p.is_zero()) return p;
    long step = 1;
    int q = p.proto().q();
    for (long i = 0; i < e; ++i) step *= q;
    std::vector<GF> v(size_t(p.deg()) * step + 1, p.proto());
    for (int i = 0; i <= p.deg(); ++i)
        if (!p[i].is_zero()) v[size_t(i) * step] = p[i].frob(e);
    return Poly<GF>(p.proto(), std::move(v));
}

}  // namespace

UFunc sigma(const UFunc& x, long e) {
    if (e == 0) return x;
    return UFunc(RatFunc<GF>::raw(qpow_poly(x.rf().num(), e), qpow_poly(x.rf().den(), e)));
}

UFunc UFunc::frob_consts(long e) const {
    return UFunc(RatFunc<GF>::raw(sigma(f_.num(), e), sigma(f_.den(), e)));
}

UFunc UFunc::embed(int m) const {
    auto f = [m](const GF& c) { return c.embed(m); };
    return UFunc(RatFunc<GF>::raw(f_.num().map(f), f_.den().map(f)));
}

long poly_ord(const Poly<GF>& f, const Poly<GF>& place) {
    if (f.is_zero()) throw ValidationError("order of zero");
    long k = 0;
    Poly<GF> g = f;
    while (true) {
        Poly<GF> q, r;
        g.divmod(place, q, r);
        if (!r.is_zero()) break;
        g = q;
        ++k;
    }
    return k;
}

long UFunc::ord(const Poly<GF>& place) const {
    if (f_.is_zero()) throw ValidationError("order of zero");
    if (place.is_zero()) return long(f_.den().deg()) - f_.num().deg();
    require(place.proto().level() == level(), "place is not tracked at this constant-field level");
    return poly_ord(f_.num(), place) - poly_ord(f_.den(), place);
}

}  // namespace amot
