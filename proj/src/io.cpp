#include "amot/io.hpp"

#include <cctype>
#include <sstream>

#include "amot/gfpoly.hpp"

namespace amot {

namespace {

LaurentExpr lz(const UFunc& proto) { return LaurentExpr{proto.zero(), {}}; }

LaurentExpr lconst(const UFunc& c) {
    LaurentExpr e = lz(c);
    if (!c.is_zero()) e.terms[0] = c;
    return e;
}

LaurentExpr ladd(const LaurentExpr& a, const LaurentExpr& b, bool sub) {
    LaurentExpr r = a;
    for (const auto& [k, c] : b.terms) {
        UFunc v = r.terms.count(k) ? r.terms[k] : a.proto.zero();
        v = sub ? v - c : v + c;
        if (v.is_zero()) r.terms.erase(k);
        else r.terms[k] = v;
    }
    return r;
}

LaurentExpr lmul(const LaurentExpr& a, const LaurentExpr& b) {
    LaurentExpr r = lz(a.proto);
    for (const auto& [i, x] : a.terms)
        for (const auto& [j, y] : b.terms) r = ladd(r, LaurentExpr{a.proto, {{i + j, x * y}}}, false);
    return r;
}

class Parser {
public:
    Parser(const std::string& s, const UFunc& proto, int line, int col0)
        : s_(s), proto_(proto.zero()), line_(line), col0_(col0) {}

    LaurentExpr run() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        LaurentExpr e = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + int(pos_)); }

    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    LaurentExpr expr() {
        LaurentExpr e = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return e;
            ++pos_;
            e = ladd(e, term(), c == '-');
        }
    }

    bool starts_atom(char c) const {
        return std::isdigit((unsigned char)c) || c == 'a' || c == 'u' || c == 't' || c == '(';
    }

    LaurentExpr term() {
        LaurentExpr e = unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                e = lmul(e, unary());
            } else if (c == '/') {
                ++pos_;
                size_t at = pos_;
                LaurentExpr d = unary();
                if (d.terms.size() != 1) {
                    pos_ = at;
                    fail("division only by a single monomial in t");
                }
                auto [k, c0] = *d.terms.begin();
                LaurentExpr r = lz(proto_);
                for (const auto& [i, x] : e.terms) r.terms[i - k] = x / c0;
                e = r;
            } else if (starts_atom(c)) {
                e = lmul(e, power());
            } else {
                return e;
            }
        }
    }

    LaurentExpr unary() {
        if (peek() == '-') {
            ++pos_;
            return ladd(lz(proto_), unary(), true);
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    LaurentExpr power() {
        LaurentExpr b = atom();
        if (peek() != '^') return b;
        ++pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        skip();
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_])) fail("exponent must be an integer");
        long e = 0;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            e = e * 10 + (s_[pos_++] - '0');
            if (e > 100000) fail("exponent too large");
        }
        if (neg) {
            if (b.terms.size() != 1) fail("negative power of a non-monomial");
            auto [k, c] = *b.terms.begin();
            b = LaurentExpr{proto_, {{-k, c.inv()}}};
        }
        LaurentExpr r = lconst(proto_.one());
        for (long i = 0; i < e; ++i) r = lmul(r, b);
        return r;
    }

    LaurentExpr atom() {
        char c = peek();
        if (std::isdigit((unsigned char)c)) {
            long v = 0;
            int q = proto_.q();
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) v = (v * 10 + (s_[pos_++] - '0')) % q;
            return lconst(proto_.from_int(v));
        }
        if (c == 'a') {
            if (proto_.level()->m == 1) fail("'a' is undefined: the coefficient field is F_q");
            ++pos_;
            return lconst(UFunc::constant(GF::gen(proto_.level())));
        }
        if (c == 'u') {
            ++pos_;
            return lconst(UFunc::var(proto_.rf().proto()));
        }
        if (c == 't') {
            ++pos_;
            return LaurentExpr{proto_, {{1, proto_.one()}}};
        }
        if (c == '(') {
            ++pos_;
            LaurentExpr e = expr();
            if (peek() != ')') fail("missing ')'");
            ++pos_;
            return e;
        }
        if (c == '\0') fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    UFunc proto_;
    int line_, col0_;
    size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Cell {
    std::string text;
    int line, col;
};

struct Header {
    int q = 0;
    std::vector<int> field{0, 1};
    Cell theta{"", 0, 0};
    std::map<std::string, std::vector<std::vector<Cell>>> sections;
};

// Splits a row at commas, keeping column positions.
std::vector<Cell> split_row(const std::string& raw, int line) {
    std::vector<Cell> out;
    size_t start = 0;
    while (true) {
        size_t comma = raw.find(',', start);
        std::string part = raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        size_t lead = part.find_first_not_of(" \t\r");
        if (lead == std::string::npos) throw ParseError("empty matrix entry", line, int(start) + 1);
        out.push_back({trim(part), line, int(start + lead) + 1});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Header read_header(const std::string& text, const std::vector<std::string>& section_names) {
    Header h;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string current;
    bool have_field = false;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string l = trim(raw);
        if (l.empty()) continue;
        int col = int(raw.find_first_not_of(" \t")) + 1;
        std::istringstream ls(l);
        std::string key;
        ls >> key;
        if (key == "q" || key == "field" || key == "theta") {
            current.clear();
            std::string rest = trim(l.substr(key.size()));
            if (key == "q") {
                std::istringstream rs(rest);
                if (!(rs >> h.q) || h.q < 2) throw ParseError("q must be a prime", line, col + 2);
                std::string extra;
                if (rs >> extra) throw ParseError("trailing text after q", line, col + 2);
            } else if (key == "field") {
                std::istringstream rs(rest);
                h.field.clear();
                int v;
                while (rs >> v) h.field.push_back(v);
                if (!rs.eof() || h.field.size() < 2) throw ParseError("field expects integer coefficients", line, col + 6);
                have_field = true;
            } else {
                if (rest.empty()) throw ParseError("theta expects an element", line, col + 6);
                h.theta = {rest, line, col + int(l.find(rest))};
            }
            continue;
        }
        bool section = false;
        for (const auto& s : section_names)
            if (l == s) section = true;
        if (section) {
            if (h.sections.count(l)) throw ParseError("section " + l + " repeated", line, col);
            current = l;
            h.sections[l];
            continue;
        }
        if (current.empty()) throw ParseError("unknown keyword '" + key + "'", line, col);
        h.sections[current].push_back(split_row(raw, line));
    }
    if (h.q == 0) throw ParseError("missing 'q' line", line + 1, 1);
    if (h.theta.text.empty()) throw ParseError("missing 'theta' line", line + 1, 1);
    (void)have_field;
    return h;
}

Base<GF> header_base(const Header& h) {
    if (!is_prime(h.q) || h.q >= 256) throw ParseError("q must be a prime below 256", 1, 1);
    auto tower = FieldTower::get(h.q, h.field);
    GF proto(tower->base());
    GF theta = parse_element(h.theta.text, proto, h.theta.line, h.theta.col);
    return finite_base(h.q, h.field, theta);
}

PMat<GF> read_matrix(const std::vector<std::vector<Cell>>& rows, const GF& proto, const std::string& what) {
    int n = int(rows.size());
    PMat<GF> m(GFPoly(proto), n, n);
    for (int i = 0; i < n; ++i) {
        if (int(rows[size_t(i)].size()) != n) {
            const Cell& c = rows[size_t(i)][0];
            throw ParseError(what + " must be square: row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[size_t(i)].size()) + " entries",
                             c.line, c.col);
        }
        for (int j = 0; j < n; ++j) {
            const Cell& c = rows[size_t(i)][size_t(j)];
            m(i, j) = parse_poly(c.text, proto, c.line, c.col);
        }
    }
    return m;
}

std::string header_text(const Base<GF>& b) {
    std::string out = "q " + std::to_string(b.q()) + "\n";
    const auto& f = b.tower->base_poly();
    if (!(f.size() == 2 && f[0] == 0 && f[1] == 1)) {
        out += "field";
        for (int c : f) out += " " + std::to_string(c);
        out += "\n";
    }
    out += "theta " + b.theta.str() + "\n";
    return out;
}

std::string matrix_text(const PMat<GF>& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).str("t");
        out += "\n";
    }
    return out;
}

}  // namespace

LaurentExpr parse_expr(const std::string& s, const UFunc& proto, int line, int col0) {
    return Parser(s, proto, line, col0).run();
}

GFPoly parse_poly(const std::string& s, const GF& proto, int line, int col0) {
    LaurentExpr e = parse_expr(s, UFunc(proto), line, col0);
    std::vector<GF> c;
    for (const auto& [k, v] : e.terms) {
        if (k < 0) throw ParseError("negative power of t in a polynomial", line, col0);
        if (!v.is_constant()) throw ParseError("u is not allowed here", line, col0);
        if (int(c.size()) <= k) c.resize(size_t(k) + 1, proto.zero());
        c[size_t(k)] = v.constant_value();
    }
    return GFPoly(proto, c);
}

GF parse_element(const std::string& s, const GF& proto, int line, int col0) {
    GFPoly p = parse_poly(s, proto, line, col0);
    if (p.deg() > 0) throw ParseError("t is not allowed in a field element", line, col0);
    return p[0];
}

GFPoly parse_prime(const std::string& s, FieldTower& tower) {
    GFPoly p = parse_poly(s, GF(tower.level(1)), 1, 1);
    require(p.deg() >= 1 && p.lead().is_one(), "prime must be a monic polynomial of positive degree: " + s);
    auto fs = factor(p);
    require(fs.size() == 1 && fs[0].second == 1, "prime polynomial is not irreducible: " + s);
    return p;
}

Place parse_place(const std::string& s, const GF& proto) {
    if (trim(s) == "inf") return place_infinity();
    LaurentExpr e = parse_expr(s, UFunc(proto), 1, 1);
    if (e.terms.size() != 1 || !e.terms.count(0)) throw ParseError("a place is a polynomial in u", 1, 1);
    const UFunc& f = e.terms.at(0);
    if (!f.rf().is_poly()) throw ParseError("a place is a polynomial in u", 1, 1);
    return place_at(f.rf().num());
}

LaurentApprox to_laurent(const std::vector<LaurentExpr>& comps, int d) {
    require(!comps.empty(), "no components given");
    require(comps.size() == 1 || int(comps.size()) == d, "give one expression or d of them");
    UFunc proto = comps[0].proto;
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& e : comps)
        for (const auto& [k, v] : e.terms) {
            if (!any || k < lo) lo = k;
            if (!any || k > hi) hi = k;
            any = true;
        }
    if (!any) return laurent_zero(proto, d);
    std::vector<std::vector<UFunc>> cs;
    for (int k = lo; k <= hi; ++k) {
        std::vector<UFunc> z;
        for (int j = 0; j < d; ++j) {
            const auto& e = comps.size() == 1 ? comps[0] : comps[size_t(j)];
            auto it = e.terms.find(k);
            z.push_back(it == e.terms.end() ? proto.zero() : it->second);
        }
        cs.push_back(z);
    }
    return laurent_exact(lo, cs);
}

Motive<GF> parse_motive(const std::string& text) {
    Header h = read_header(text, {"M", "L"});
    Base<GF> base = header_base(h);
    if (!h.sections.count("M") || h.sections["M"].empty()) throw ParseError("missing section M", 1, 1);
    GF proto = base.zero();
    PMat<GF> dm = read_matrix(h.sections["M"], proto, "M");
    auto m = new_effective(base, dm);
    if (!h.sections.count("L")) return make_motive(m);
    PMat<GF> dl = read_matrix(h.sections["L"], proto, "L");
    if (dl.rows() != 1) throw ParseError("L must have rank 1", h.sections["L"][0][0].line, 1);
    return make_motive(m, new_effective(base, dl));
}

std::string emit_motive(const Motive<GF>& x) {
    return header_text(x.base()) + "M\n" + matrix_text(x.m.delta) + "L\n" + matrix_text(x.l.delta);
}

TorsionBoldModule<GF> parse_torsion(const std::string& text) {
    Header h = read_header(text, {"divisors", "tau"});
    Base<GF> base = header_base(h);
    GF proto = base.zero();
    if (!h.sections.count("divisors") || h.sections["divisors"].empty())
        throw ParseError("missing section divisors", 1, 1);
    std::vector<GFPoly> divs;
    for (const auto& row : h.sections["divisors"]) {
        if (row.size() != 1) throw ParseError("one divisor per line", row[1].line, row[1].col);
        divs.push_back(parse_poly(row[0].text, proto, row[0].line, row[0].col));
    }
    if (!h.sections.count("tau")) throw ParseError("missing section tau", 1, 1);
    PMat<GF> tau = read_matrix(h.sections["tau"], proto, "tau");
    if (tau.rows() != int(divs.size()))
        throw ParseError("tau must be " + std::to_string(divs.size()) + " x " + std::to_string(divs.size()),
                         h.sections["tau"][0][0].line, 1);
    return make_torsion(base, divs, tau);
}

std::string emit_torsion(const TorsionBoldModule<GF>& t) {
    std::string out = header_text(t.base) + "divisors\n";
    for (const auto& d : t.divisors) out += d.str("t") + "\n";
    return out + "tau\n" + matrix_text(t.tau);
}

std::string fqmat_str(const FqMat& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += "; ";
        for (int j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + std::to_string(m.at(i, j));
    }
    return out + "]";
}

std::string tuple_str(const std::vector<UFunc>& z) {
    if (z.size() == 1) return z[0].str();
    std::string out = "(";
    for (size_t j = 0; j < z.size(); ++j) out += (j ? ", " : "") + z[j].str();
    return out + ")";
}

}  // namespace amot
