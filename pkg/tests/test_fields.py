from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from motmoore.fields import (FieldModel, FormExpr, GWClass, NotModeled, gw_normal_form,
                             hilbert_symbol, hyperbolic_annihilator_check, milnor_k_mod,
                             tame_symbol, units_mod_squares)
from motmoore.groups import FiniteAbelianGroup as G

P = FieldModel.parse


def test_field_parsing():
    assert str(P("Fq:5")) == "Fq:5"
    assert P("Q:7,2").S == (2, 7)
    assert P("R").formally_real and not P("C").formally_real
    assert P("Fq:5").contains_sqrt_minus1 and not P("Fq:3").contains_sqrt_minus1
    for bad in ("Fq:4", "Fq:2", "X", "Q:4"):
        with pytest.raises(ValueError):
            P(bad)


def test_units_mod_squares():
    u = units_mod_squares(P("Fq:5")).to_json()
    assert u["rank"] == 1 and u["representatives"] == ["1", "2"]
    assert units_mod_squares(P("C")).to_json()["rank"] == 0
    u = units_mod_squares(P("Q:2,7")).to_json()
    assert u["rank"] == 3 and u["generators"] == ["-1", "2", "7"]


def test_tame_symbol_examples():
    assert tame_symbol(7, (3, 7)) == 3
    assert tame_symbol(7, (7, 7)) == 6
    assert tame_symbol(5, (2, 3)) == 1


def test_tame_symbol_rejects_two():
    with pytest.raises(NotModeled):
        tame_symbol(2, (3, 5))


def test_milnor_k_mod_examples():
    assert milnor_k_mod(P("Fq:5"), 2, 2).is_trivial()
    assert milnor_k_mod(P("Q:7"), 2, 3) == G.cyclic(3)
    g = milnor_k_mod(P("R"), 3, 2)
    assert g == G.cyclic(2) and g.generators == ("rho^3",)
    assert milnor_k_mod(P("Fq:5"), 1, 24) == G.cyclic(4)
    assert milnor_k_mod(P("C"), 1, 24).is_trivial()


def test_gw_examples():
    R, F5 = P("R"), P("Fq:5")
    assert gw_normal_form(R, "<1,-1,1>").to_json() == {"dim": 3, "signature": 1}
    assert gw_normal_form(F5, "<2,2>") == gw_normal_form(F5, "<1,1>")
    assert gw_normal_form(F5, "<2>") != gw_normal_form(F5, "<1>")
    for F in (R, F5, P("Fq:3"), P("C"), P("Q:2,7")):
        for u in units_mod_squares(F).representatives:
            assert gw_normal_form(F, "<%s>*h" % u) == gw_normal_form(F, "h")


def test_form_parser():
    e = FormExpr.parse("2<1,3> - <2>*h + 3h + eps + 5_eps + 4")
    assert e.terms == {1: 12, -1: 4, 2: -1, -2: -1, 3: 2}
    assert FormExpr.parse("n_eps:4").terms == {1: 2, -1: 2}
    with pytest.raises(ValueError):
        FormExpr.parse("<1,2")


def test_hyperbolic_annihilator_examples():
    assert hyperbolic_annihilator_check(P("Fq:5"), "3_eps", 4)["pass"]
    assert hyperbolic_annihilator_check(P("R"), "<1>", 4)["pass"]
    with pytest.raises(ValueError, match="dim"):
        hyperbolic_annihilator_check(P("R"), "<1,-1>-2", 4)


def test_hilbert_symbol_classics():
    assert hilbert_symbol(-1, -1, 0) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 7, 7) == 1
    assert hilbert_symbol(3, 7, 7) == -1


def test_not_modeled():
    with pytest.raises(NotModeled):
        units_mod_squares(P("Fq:9")).reduce(3)


FIELDS = [P("Fq:5"), P("Fq:3"), P("Fq:7"), P("R"), P("C"), P("Q:2,7"), P("Q:3,5")]


@st.composite
def form_in(draw, F):
    reps = [Fraction(r) for r in units_mod_squares(F).representatives]
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(reps), max_size=len(reps)))
    return FormExpr(dict(zip(reps, coeffs)))


@st.composite
def form_pair(draw):
    F = draw(st.sampled_from(FIELDS))
    return F, draw(form_in(F)), draw(form_in(F)), draw(form_in(F))


@settings(max_examples=300, deadline=None)
@given(form_pair())
def test_gw_ring_structure(case):
    F, a, b, c = case
    A, B, Cc = GWClass(F, a), GWClass(F, b), GWClass(F, c)
    assert A * B == B * A
    assert (A * B) * Cc == A * (B * Cc)
    assert A * (B + Cc) == A * B + A * Cc
    assert (A * B).dim == A.dim * B.dim
    h = GWClass(F, FormExpr.hyperbolic())
    assert h * h == h * 2


SQUARE_SCALES = {"R": [2, 3, Fraction(1, 2)], "C": [2, Fraction(2, 3)],
                 "Q": [Fraction(1, 2), 7, 3, 5]}


@settings(max_examples=300, deadline=None)
@given(form_pair(), st.data())
def test_gw_classes_ignore_square_factors(case, data):
    # <u> = <u v^2>: scaling every entry by a square changes neither the
    # class nor any product with it
    F, a, b, _ = case
    if F.kind == "Fq":
        v = data.draw(st.integers(1, F.p - 1))
    else:
        v = data.draw(st.sampled_from(SQUARE_SCALES[F.kind]))
    if F.kind == "Q" and v not in F.S and 1 / Fraction(v) not in F.S:
        v = 1
    if F.kind == "Fq":
        twisted = FormExpr({(u * v * v) % F.p: c for u, c in a.terms.items()})
    else:
        twisted = FormExpr({u * v * v: c for u, c in a.terms.items()})
    assert GWClass(F, twisted) == GWClass(F, a)
    assert GWClass(F, twisted * b) == GWClass(F, a * b)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 40))
def test_neps_dimension(n):
    assert FormExpr.n_epsilon(n).dim() == n
