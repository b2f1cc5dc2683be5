// amot: command line driver. Exit codes: 0 ok, 1 usage, 2 validation,
// 3 cap exhausted, 4 internal.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "amot/io.hpp"

using namespace amot;

namespace {

struct Opts {
    std::vector<std::string> input;
    std::string prime = "t";
    int level = 1;
    int cap = 0;
    unsigned long seed = 1;
    std::string output;
    std::string format = "text";

    // periods
    int q = 3;
    std::string field = "0 1";
    int d = 1;
    int m = 1;
    int terms = 4;
    int count = 200;
    std::string place = "inf";
    std::vector<std::string> expr, row, s_expr, a_expr;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + path);
        out << text;
        if (!out.flush()) throw ValidationError("cannot write " + path);
    }
    std::filesystem::rename(tmp, path);
}

Motive<GF> load_motive(const std::string& path) {
    try {
        return parse_motive(read_file(path));
    } catch (const ParseError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

GFPoly load_prime(const Opts& o, const Motive<GF>& x) {
    require(o.level >= 1, "--level must be positive");
    GFPoly p = parse_prime(o.prime, *x.base().tower);
    GFPoly ker = x.base().kernel_iota;
    require(!(ker.deg() == p.deg() && ker == p), "p must differ from the characteristic " + ker.str("t"));
    return p;
}

std::string cmd_inspect(const Opts& o) {
    Motive<GF> x = load_motive(o.input.at(0));
    const auto& m = x.m;
    GFPoly det = det_bareiss(m.delta);
    std::string th = "(t-theta)^" + std::to_string(m.e);
    GF c = det.lead();
    std::string ds = c.is_one() ? th : "(" + c.str() + ")*" + th;
    if (m.e == 0) ds = c.str();
    std::string out;
    out += "motive: " + motive_hash(x) + "\n";
    out += "theta: " + x.base().theta.str() + "\n";
    out += "rank: " + std::to_string(x.rank()) + "\n";
    out += "det: " + ds + "\n";
    out += "det_factors: " + factor_str(factor(det)) + "\n";
    out += "e: " + std::to_string(m.e) + "\n";
    out += "l.e: " + std::to_string(x.l.e) + "\n";
    out += "summary: rank " + std::to_string(x.rank()) + ", det = " + ds + "\n";
    return out;
}

std::string cmd_tate(const Opts& o) {
    Motive<GF> x = load_motive(o.input.at(0));
    GFPoly p = load_prime(o, x);
    TateApproximation t = tate_module(x, p, o.level, 0, o.cap);
    std::string out;
    out += "motive: " + motive_hash(x) + "\n";
    out += "p: " + p.str("t") + "\n";
    out += "n: " + std::to_string(o.level) + "\n";
    out += "rank: " + std::to_string(t.rank()) + "\n";
    out += "level: " + std::to_string(t.level) + "\n";
    out += "frobenius: " + t.frobenius.str() + "\n";
    return out;
}

std::string cmd_report(const Opts& o) {
    Motive<GF> x = load_motive(o.input.at(0));
    return tate_report(x, load_prime(o, x), o.level);
}

std::string cmd_tatecheck(const Opts& o) {
    if (o.input.size() != 2) throw CLI::ValidationError("tatecheck needs two --input files");
    Motive<GF> x = load_motive(o.input[0]);
    Motive<GF> y = load_motive(o.input[1]);
    require(x.base() == y.base(), "both motives must share q, field and theta");
    GFPoly p = load_prime(o, x);
    TateCheck c = tate_conjecture_check(x, y, p, o.level);
    std::string out;
    out += "x: " + motive_hash(x) + "\n";
    out += "y: " + motive_hash(y) + "\n";
    out += "p: " + p.str("t") + "\n";
    out += "n: " + std::to_string(o.level) + "\n";
    out += "hom_rank: " + std::to_string(c.hom_rank) + "\n";
    out += "commutant_rank: " + std::to_string(c.commutant_rank) + "\n";
    out += "saturated: " + std::string(c.saturated ? "true" : "false") + "\n";
    out += "agree: " + std::string(c.agree ? "true" : "false") + "\n";
    return out;
}

std::string cmd_torsion(const Opts& o) {
    auto t = parse_torsion(read_file(o.input.at(0)));
    std::string out;
    out += "dim: " + std::to_string(t.dim()) + "\n";
    std::string ds;
    for (size_t i = 0; i < t.divisors.size(); ++i) ds += (i ? "; " : "") + t.divisors[i].str("t");
    out += "divisors: " + ds + "\n";
    out += "annihilator: " + annihilator(t).str("t") + "\n";
    bool bij = tau_lin_bijective(t);
    out += "tau_lin_bijective: " + std::string(bij ? "true" : "false") + "\n";
    out += "tau_nilpotent: " + std::string(tau_nilpotent(t) ? "true" : "false") + "\n";
    if (bij) {
        TorsionGaloisRep v = rq(t, o.cap);
        out += "galois_dim: " + std::to_string(v.dim()) + "\n";
        out += "galois_level: " + std::to_string(v.level) + "\n";
        out += "t_action: " + fqmat_str(v.Tv) + "\n";
        out += "frobenius: " + fqmat_str(v.Fv) + "\n";
        DRIso iso = dq_rq_iso(t, o.cap);
        out += "dq_rq_iso: " + std::string(iso.ok ? "true" : "false") + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- periods

std::vector<int> field_poly(const Opts& o) {
    std::string text = o.field;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<int> f;
    int v;
    while (in >> v) f.push_back(v);
    if (!in.eof() || f.size() < 2) throw CLI::ValidationError("--field expects integer coefficients");
    return f;
}

GF periods_proto(const Opts& o) {
    require(is_prime(o.q) && o.q < 256, "--q must be a prime below 256");
    auto tw = FieldTower::get(o.q, field_poly(o));
    return GF(tw->base());
}

LaurentApprox read_laurent(const std::vector<std::string>& src, const GF& proto, int d, const std::string& flag) {
    if (src.empty()) throw CLI::ValidationError(flag + " is required");
    std::vector<LaurentExpr> comps;
    for (const auto& s : src) comps.push_back(parse_expr(s, UFunc(proto)));
    return to_laurent(comps, d);
}

std::string laurent_str(const LaurentApprox& f) {
    std::string out;
    for (int i = f.n0; i < f.window_end(); ++i) out += "  t^" + std::to_string(i) + ": " + tuple_str(f.coeff(i)) + "\n";
    return out;
}

std::string cmd_vx(const Opts& o) {
    GF proto = periods_proto(o);
    LaurentApprox f = read_laurent(o.expr, proto, o.d, "--expr");
    Place x = parse_place(o.place, proto);
    return "place: " + x.str() + "\nvx: " + vx(f, x).str() + "\n";
}

std::string cmd_fixpoint(const Opts& o) {
    GF proto = periods_proto(o);
    if (o.row.empty()) throw CLI::ValidationError("--row is required");
    std::vector<std::vector<LaurentApprox>> delta;
    for (const auto& r : o.row) {
        std::vector<LaurentApprox> line;
        std::stringstream ss(r);
        std::string cell;
        while (std::getline(ss, cell, ',')) line.push_back(to_laurent({parse_expr(cell, UFunc(proto))}, 1));
        delta.push_back(line);
    }
    Place x = parse_place(o.place, proto);
    FixpointResult res = fixpoint_bound_check(delta, o.m, x, o.terms, 0, o.cap > 0 ? o.cap : 16);
    std::string out;
    out += "place: " + x.str() + "\n";
    out += "vx_delta: " + vx(delta, x).str() + "\n";
    out += "bound: " + res.bound.str() + "\n";
    out += "vx_solution: " + res.v_solution.str() + "\n";
    out += "bound_holds: " + std::string(res.bound_holds ? "true" : "false") + "\n";
    out += "level: " + std::to_string(res.level) + "\n";
    for (size_t i = 0; i < res.solution.size(); ++i) out += "F[" + std::to_string(i) + "]:\n" + laurent_str(res.solution[i]);
    return out;
}

std::string cmd_sigma_quotient(const Opts& o) {
    GF proto = periods_proto(o);
    LaurentApprox f = read_laurent(o.expr, proto, o.d, "--expr");
    LaurentApprox s = sigma_quotient_solve(f, o.terms, o.cap);
    bool ok = agree_on_window(sigma(s, 1), f * s, o.terms + 1);
    std::string out;
    out += "level: " + std::to_string(s.level()) + "\n";
    out += "verified_through: t^" + std::to_string(o.terms) + " " + (ok ? "true" : "false") + "\n";
    out += "s:\n" + laurent_str(s);
    return out;
}

std::string cmd_eps(const Opts& o) {
    GF proto = periods_proto(o);
    LaurentApprox s = read_laurent(o.s_expr, proto, o.d, "--s");
    LaurentApprox a = read_laurent(o.a_expr, proto, o.d, "--a");
    Place x = parse_place(o.place, proto);
    EpsFloor r = eps_floor_check(s, x, o.terms, a);
    std::string out;
    out += "place: " + x.str() + "\n";
    out += "lhs: " + r.lhs.str() + "\n";
    out += "rhs: " + (r.rhs ? std::to_string(*r.rhs) : std::string("inf")) + "\n";
    out += "holds: " + std::string(r.holds ? "true" : "false") + "\n";
    return out;
}

std::string cmd_bplus(const Opts& o) {
    GF proto = periods_proto(o);
    BplusResult r = bplus_membership(read_laurent(o.expr, proto, o.d, "--expr"));
    std::string poles;
    for (size_t i = 0; i < r.pole_places.size(); ++i) poles += (i ? ", " : "") + r.pole_places[i].str();
    return "member: " + std::string(r.member ? "true" : "false") + "\npoles: " + poles + "\n";
}

// Random checks of v_x(f+g) >= min, v_x(fg) = v_x(f) + v_x(g), v_x(sigma f) = q v_x(f).
std::string cmd_props(const Opts& o) {
    GF proto = periods_proto(o);
    std::mt19937_64 rng(o.seed);
    auto rand_poly = [&](int deg) {
        std::vector<GF> c;
        for (int i = 0; i <= deg; ++i) {
            std::vector<long> co(size_t(proto.degree()));
            for (auto& v : co) v = long(rng() % unsigned(o.q));
            c.push_back(GF(proto.level(), std::vector<int>(co.begin(), co.end())));
        }
        return Poly<GF>(proto, c);
    };
    auto rand_func = [&]() {
        Poly<GF> den = rand_poly(int(rng() % 3));
        while (den.is_zero()) den = rand_poly(int(rng() % 3));
        return UFunc(RatFunc<GF>(rand_poly(int(rng() % 4)), den));
    };
    std::vector<Place> places{place_infinity(), place_at(Poly<GF>::var(proto)),
                              place_at(Poly<GF>::var(proto) + Poly<GF>::constant(proto.one()))};
    int sum_ok = 0, mul_ok = 0, sig_ok = 0, strict = 0;
    for (int i = 0; i < o.count; ++i) {
        UFunc f = rand_func(), g = rand_func();
        const Place& x = places[size_t(i) % places.size()];
        Valuation vf = vx(f, x), vg = vx(g, x), vs = vx(f + g, x), vp = vx(f * g, x), vsig = vx(sigma(f, 1), x);
        long mn = vf.infinite ? vg.value : vg.infinite ? vf.value : std::min(vf.value, vg.value);
        bool both_inf = vf.infinite && vg.infinite;
        if (vs.infinite || both_inf || vs.value >= mn) ++sum_ok;
        if (!vs.infinite && !vf.infinite && !vg.infinite && vs.value > mn) ++strict;
        if ((vf.infinite || vg.infinite) ? vp.infinite : (!vp.infinite && vp.value == vf.value + vg.value)) ++mul_ok;
        if (vf.infinite ? vsig.infinite : (!vsig.infinite && vsig.value == o.q * vf.value)) ++sig_ok;
    }
    std::string out;
    out += "seed: " + std::to_string(o.seed) + "\n";
    out += "count: " + std::to_string(o.count) + "\n";
    out += "sum_bound: " + std::to_string(sum_ok) + "/" + std::to_string(o.count) + "\n";
    out += "strict_sum: " + std::to_string(strict) + "\n";
    out += "product: " + std::to_string(mul_ok) + "/" + std::to_string(o.count) + "\n";
    out += "sigma_scaling: " + std::to_string(sig_ok) + "/" + std::to_string(o.count) + "\n";
    out += "holds: " + std::string(sum_ok == o.count && mul_ok == o.count && sig_ok == o.count ? "true" : "false") + "\n";
    return out;
}

void common(CLI::App* c, Opts& o, bool motive) {
    c->add_option("--output", o.output, "Write the report to this file (atomic)");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text"}));
    c->add_option("--cap", o.cap, "Level or degree cap (0 = default)")->check(CLI::NonNegativeNumber);
    if (motive) {
        c->add_option("--input", o.input, "Input file")->required();
        c->add_option("--prime", o.prime, "Monic irreducible p in F_q[t]");
        c->add_option("--level", o.level, "Precision n (work mod p^n)");
    }
}

void periods_common(CLI::App* c, Opts& o) {
    common(c, o, false);
    c->add_option("--q", o.q, "Constant field size (prime)");
    c->add_option("--field", o.field, "Coefficients of the defining polynomial of K, ascending (e.g. 1,0,1)");
    c->add_option("--d", o.d, "Number of components")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computations with A-motives, Tate modules and period kernels"};
    app.require_subcommand(1);
    Opts o;
    std::function<std::string()> run;

    auto* inspect = app.add_subcommand("inspect", "Rank, determinant and characteristic exponent of a motive");
    common(inspect, o, true);
    inspect->callback([&] { run = [&] { return cmd_inspect(o); }; });

    auto* tate = app.add_subcommand("tate", "Tate module T_p(M)/p^n and its Frobenius");
    common(tate, o, true);
    tate->callback([&] { run = [&] { return cmd_tate(o); }; });

    auto* report = app.add_subcommand("report", "Frobenius report with semisimplicity verdict");
    common(report, o, true);
    report->callback([&] { run = [&] { return cmd_report(o); }; });

    auto* tatecheck = app.add_subcommand("tatecheck", "Compare Hom(X, Y) with the Frobenius commutant");
    common(tatecheck, o, true);
    tatecheck->callback([&] { run = [&] { return cmd_tatecheck(o); }; });

    auto* torsion = app.add_subcommand("torsion", "Structure of a torsion module and its Galois representation");
    torsion->add_option("--input", o.input, "Torsion module file")->required();
    common(torsion, o, false);
    torsion->callback([&] { run = [&] { return cmd_torsion(o); }; });

    auto* periods = app.add_subcommand("periods", "Valuations and sigma-equations over F_q(u)");
    periods->require_subcommand(1);

    auto* pvx = periods->add_subcommand("vx", "Valuation at a place");
    periods_common(pvx, o);
    pvx->add_option("--expr", o.expr, "Laurent series in t over K(u), one per component")->required();
    pvx->add_option("--place", o.place, "inf or a monic irreducible in u");
    pvx->callback([&] { run = [&] { return cmd_vx(o); }; });

    auto* pfix = periods->add_subcommand("fixpoint", "Solve sigma^m(F) = delta F and check the valuation bound");
    periods_common(pfix, o);
    pfix->add_option("--row", o.row, "Row of delta, comma separated")->required();
    pfix->add_option("--m", o.m, "Power of sigma")->check(CLI::PositiveNumber);
    pfix->add_option("--place", o.place, "inf or a monic irreducible in u");
    pfix->add_option("--terms", o.terms, "Number of t-coefficients")->check(CLI::PositiveNumber);
    pfix->callback([&] { run = [&] { return cmd_fixpoint(o); }; });

    auto* psq = periods->add_subcommand("sigma-quotient", "Find s with sigma(s) = f s");
    periods_common(psq, o);
    psq->add_option("--expr", o.expr, "f, one expression per component")->required();
    psq->add_option("--terms", o.terms, "Solve through t^N")->check(CLI::NonNegativeNumber);
    psq->callback([&] { run = [&] { return cmd_sigma_quotient(o); }; });

    auto* peps = periods->add_subcommand("eps", "Floor inequality for v_x(sigma^N(a))");
    periods_common(peps, o);
    peps->add_option("--s", o.s_expr, "s, one expression per component")->required();
    peps->add_option("--a", o.a_expr, "a, one expression per component")->required();
    peps->add_option("--place", o.place, "inf or a monic irreducible in u");
    peps->add_option("--terms", o.terms, "N")->check(CLI::NonNegativeNumber);
    peps->callback([&] { run = [&] { return cmd_eps(o); }; });

    auto* pb = periods->add_subcommand("bplus", "Membership in the ring of entire series");
    periods_common(pb, o);
    pb->add_option("--expr", o.expr, "f, one expression per component")->required();
    pb->callback([&] { run = [&] { return cmd_bplus(o); }; });

    auto* pp = periods->add_subcommand("props", "Random checks of the valuation properties");
    periods_common(pp, o);
    pp->add_option("--seed", o.seed, "Random seed");
    pp->add_option("--count", o.count, "Number of random pairs")->check(CLI::PositiveNumber);
    pp->callback([&] { run = [&] { return cmd_props(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return int(ErrorClass::Usage);
    }

    try {
        std::string out = run();
        if (o.output.empty()) std::cout << out;
        else write_atomic(o.output, out);
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return int(ErrorClass::Usage);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return int(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return int(ErrorClass::Internal);
    }
}
