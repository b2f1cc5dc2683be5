#include <random>

#include "amot/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace amot;
using namespace th;

namespace {

const char* kCarlitz =
    "q 3\n"
    "field 1 0 1\n"
    "theta a\n"
    "M\n"
    "t - a\n";

int error_line(const std::string& text) {
    try {
        parse_motive(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("expressions") {
    GF p = k0();
    CHECK(parse_poly("t - a", p) == lin());
    CHECK(parse_poly("(t+a)(t-a)", p) == tvar() * tvar() + cst(1));
    CHECK(parse_poly("2t^2 + 3", p) == cst(2) * tvar() * tvar());
    CHECK(parse_poly("-a^2", p) == cst(1));
    CHECK(parse_poly("t^3/t", p) == tvar() * tvar());
    CHECK(parse_element("a^3", p) == -alpha());
    CHECK(parse_element("7", p) == p.from_int(1));

    UFunc up{p};
    LaurentExpr e = parse_expr("u/t + 1 + t^-2", up);
    REQUIRE(e.terms.size() == 3);
    CHECK(e.terms.at(-1) == UFunc::var(p));
    CHECK(e.terms.at(-2).is_one());
    CHECK(parse_expr("t - t", up).is_zero());
}

TEST_CASE("parse errors carry positions") {
    GF p = k0();
    auto col = [&](const std::string& s) {
        try {
            parse_poly(s, p, 4, 3);
        } catch (const ParseError& e) {
            CHECK(e.line == 4);
            return e.col;
        }
        return -1;
    };
    CHECK(col("t + ") == 3 + 4);
    CHECK(col("t $ 1") == 3 + 2);
    CHECK(col("(t+1") == 3 + 4);
    CHECK(col("1/(t+1)") == 3 + 2);
    CHECK(col("u") == 3);
    CHECK_THROWS_AS(parse_poly("t^-1", p), ParseError);
    GF p3(FieldTower::get(3, {0, 1})->level(1));
    CHECK_THROWS_AS(parse_poly("a", p3), ParseError);
}

TEST_CASE("motive files") {
    Motive<GF> c = parse_motive(kCarlitz);
    CHECK(c == carlitz());
    CHECK(parse_motive("q 3\nfield 1 0 1\ntheta a\nM\nt-a\nL\n1\n") == carlitz());
    CHECK(parse_motive("# comment\n  q   3 \nfield 1 0 1 # field\n\ntheta a\nM\n  t  -  a  \n") == carlitz());

    Motive<GF> tri = parse_motive("q 3\nfield 1 0 1\ntheta a\nM\nt-a, 1\n0, t-a\n");
    CHECK(tri.rank() == 2);
    CHECK(tri.m.e == 2);

    CHECK(error_line("q 3\ntheta 1\nM\nt-1\nfoo\n") == 4);  // second row makes M non-square
    CHECK(error_line("q 3\nbogus 1\n") == 2);
    CHECK(error_line("q 3\ntheta 1\nM\nt-1, 1\n") == 4);
    CHECK(error_line("q 3\nM\nt\n") > 0);
    CHECK_THROWS_AS(parse_motive("q 3\ntheta 1\nM\nt-1, 0\n0, t\n"), CharacteristicViolation);
}

TEST_CASE("emit then parse is the identity on canonical form") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        int r = 1 + int(rng() % 3);
        PMat<GF> d(tvar().zero(), r, r);
        for (int i = 0; i < r; ++i) {
            d(i, i) = lin();
            for (int j = i + 1; j < r; ++j) d(i, j) = random_poly(k0(), 2, rng);
        }
        Motive<GF> x = make_motive(new_effective(base9(), d));
        std::string text = emit_motive(x);
        Motive<GF> y = parse_motive(text);
        CHECK(y == x);
        CHECK(emit_motive(y) == text);
    }
}

TEST_CASE("torsion files") {
    std::string text =
        "q 3\nfield 1 0 1\ntheta a\n"
        "divisors\nt\nt^2\n"
        "tau\n1, 0\n0, 1\n";
    auto t = parse_torsion(text);
    CHECK(t.divisors.size() == 2);
    CHECK(emit_torsion(parse_torsion(emit_torsion(t))) == emit_torsion(t));
    CHECK_THROWS_AS(parse_torsion("q 3\ntheta 1\ndivisors\nt\ntau\n1, 0\n"), ParseError);
}

TEST_CASE("places and primes") {
    auto tw = f9();
    CHECK(parse_prime("t+1", *tw).deg() == 1);
    CHECK_THROWS_AS(parse_prime("t^2+2", *tw), ValidationError);
    CHECK_THROWS_AS(parse_prime("2t", *tw), ValidationError);
    CHECK(parse_place("inf", k0()).infinite);
    CHECK(parse_place("u - a", k0()).pi.deg() == 1);
    CHECK_THROWS_AS(parse_place("u^2 - 1", k0()), ValidationError);

    UFunc up{k0()};
    LaurentApprox f = to_laurent({parse_expr("1 + u t", up)}, 2);
    CHECK(f.d == 2);
    CHECK(f.coeff(1)[1] == UFunc::var(k0()));
    CHECK_THROWS_AS(to_laurent({parse_expr("1", up), parse_expr("1", up), parse_expr("1", up)}, 2),
                    ValidationError);
}
