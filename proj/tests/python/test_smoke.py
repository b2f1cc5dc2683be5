import pytest

import amot

CARLITZ = "q 3\nfield 1 0 1\ntheta a\nM\nt - a\n"
NONSPLIT = "q 3\nfield 1 0 1\ntheta a\nM\nt - a, 1\n0, t - a\n"


def test_parse_and_emit():
    c = amot.Motive.parse(CARLITZ)
    assert c.rank == 1
    assert c.e == 1
    assert amot.Motive.parse(c.text()) == c
    assert c.tensor(c).rank == 1
    assert c.direct_sum(c).rank == 2


def test_carlitz_frobenius():
    c = amot.Motive.parse(CARLITZ)
    t = amot.tate_module(c, "t", 1)
    assert t["rank"] == 1
    assert t["frobenius"] == "[1]"
    # (t^2+1)^{-1} mod t^2 = 1 - t^2 = 1
    assert amot.tate_module(c, "t", 2)["frobenius"] == "[1]"
    assert amot.tate_module(c, "t", 3)["frobenius"] == "[2*t^2+1]"


def test_verdicts_and_report():
    x = amot.Motive.parse(NONSPLIT)
    assert amot.verdict(x, "t", 3) == "non_semisimple"
    assert "verdict: non_semisimple" in amot.report(x, "t", 3)
    c = amot.Motive.parse(CARLITZ)
    assert amot.tate_check(c, c, "t", 2)["agree"]
    assert amot.routes_agree(x, "t+1", 2)


def test_periods():
    assert amot.vx(["u^2 + t/u"], place="u") == -1
    assert amot.vx(["0"]) is None
    s = amot.sigma_quotient(["1+t"], terms=3)
    assert len(s) == 4 and s[0] == "1"


def test_errors():
    with pytest.raises(amot.ValidationError, match="factor"):
        amot.Motive.parse("q 3\nfield 1 0 1\ntheta a\nM\nt\n")
    with pytest.raises(ValueError, match="parse error at 5"):
        amot.Motive.parse("q 3\nfield 1 0 1\ntheta a\nM\nt - \n")
    c = amot.Motive.parse(CARLITZ)
    with pytest.raises(amot.ValidationError):
        amot.tate_module(c, "t^2+1", 1)
