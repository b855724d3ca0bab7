import pytest

from motmoore.cohomology import (OpSymbol, PointClass, bockstein_les_check, cartan_obstruction,
                                 mot_cohomology_point, sq, steenrod_eval)
from motmoore.fields import FieldModel, NotModeled
from motmoore.groups import FiniteAbelianGroup as G

P = FieldModel.parse
F5, F3, R, C = P("Fq:5"), P("Fq:3"), P("R"), P("C")


def gen(F, p, q, m=2):
    return PointClass.generator(F, p, q, m)


def test_point_groups():
    g = mot_cohomology_point(F5, 0, 1, 2)
    assert g == G.cyclic(2) and g.generators == ("tau",)
    g = mot_cohomology_point(R, 2, 2, 2)
    assert g == G.cyclic(2) and g.generators == ("rho^2",)
    for F in (F5, R, C):
        assert mot_cohomology_point(F, 3, 2, 2).is_trivial()
    assert mot_cohomology_point(F5, 1, 1, 4) == G.cyclic(4)


def label(x):
    return str(x).split(" ", 1)[1]


def test_steenrod_values():
    assert label(sq(1, gen(R, 0, 1))) == "rho"
    assert label(steenrod_eval("Sq2", gen(R, 0, 2))) == "tau*rho^2"
    assert steenrod_eval("Sq1", gen(R, 1, 1)).is_zero()
    assert label(steenrod_eval("Q1", gen(R, 0, 2))) == "rho^3"
    # over F3, rho = [-1] = [2] and k^M_2 = 0
    assert label(sq(1, gen(F3, 0, 1))) == "[2]"
    assert steenrod_eval("Sq2", gen(F3, 0, 2)).is_zero()
    # over F5, -1 is a square and rho vanishes
    assert sq(1, gen(F5, 0, 1)).is_zero()


def test_q1_expansion():
    x = gen(R, 0, 2)
    q1 = steenrod_eval("Q1", x)
    alt = steenrod_eval("Sq2*Sq1 + Sq1*Sq2", x)
    assert (q1.p, q1.q, q1.coord % 2) == (alt.p, alt.q, alt.coord % 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_pr_after_inc(n):
    for F in (R, F5, C):
        if F is F5 and n % 5 == 0:
            continue
        x = gen(F, 0, 1)
        y = OpSymbol("pr[2n:2]*inc[2:2n]").apply(x, {"n": n, "2n": 2 * n})
        assert y.coord % 2 == (x.coord % 2 if n % 2 else 0)


def test_connecting_after_projection_vanishes():
    for F in (R, F5):
        for q in range(0, 4):
            for p in range(0, q + 1):
                x = gen(F, p, q, 4)
                assert OpSymbol("bd[2:2]*pr[4:2]").apply(x).is_zero()


def test_les_examples():
    assert bockstein_les_check(F5, 2, 12, 4, 4)["exact"]
    assert bockstein_les_check(R, 2, 2, 6, 6)["exact"]
    assert bockstein_les_check(C, 2, 4, 4, 4)["exact"]


def test_cartan_obstruction():
    assert cartan_obstruction(6)["fires"]
    assert cartan_obstruction(2)["sq2_x0y0"] == "tau*x1y1"
    assert not cartan_obstruction(4)["fires"]
    assert not cartan_obstruction(3)["fires"]


def test_errors():
    with pytest.raises(ValueError):
        OpSymbol("Sq7x")
    with pytest.raises(ValueError):
        sq(1, gen(R, 0, 1, 4))
    with pytest.raises(NotModeled):
        mot_cohomology_point(P("Q:3"), 0, 1, 2)
    with pytest.raises(NotModeled):
        mot_cohomology_point(F5, 0, 1, 5)
