import pytest
from hypothesis import given, settings, strategies as st

from motmoore.fields import FieldModel, FormExpr
from motmoore.moore_mult import (gw_square_root, mult_verdict, quadratic_closure, toda_bracket,
                                 toda_lift_check)

P = FieldModel.parse
F5, R, C = P("Fq:5"), P("R"), P("C")


def test_verdict_examples():
    assert mult_verdict(None, "n_eps:6").to_json()["answer"] == "No"
    assert mult_verdict(None, "n_eps:6").rule == "n-eps"
    v = mult_verdict(None, "eta^2").to_json()
    assert (v["answer"], v["rule"]) == ("Yes", "eta-power")
    assert mult_verdict(R, "2+11h").rule == "real-bracket"
    assert mult_verdict(C, "2+11h").to_json()["answer"] == "Yes"


def test_integers_follow_topology():
    for n in range(1, 13):
        v = mult_verdict(None, "int:%d" % n)
        assert v.answer == ("no" if n % 4 == 2 else "yes") and v.rule == "integer"


def test_squares():
    v = mult_verdict(F5, "<1,2>*<1,2>")
    assert v.answer == "yes" and v.rule in ("square", "integer", "n-eps")
    beta = gw_square_root(R, FormExpr.parse("<1,-1>*<1,-1>"))
    assert beta is not None


def test_unknown_carries_general_notes():
    v = mult_verdict(P("Fq:3"), "2+11h")
    assert v.answer == "unknown" and v.rule is None
    assert any("alpha^2" in n for n in v.notes)


def test_field_required_for_forms():
    with pytest.raises(ValueError):
        mult_verdict(None, "<1,2,3>")


@pytest.mark.parametrize("F", [R, P("Q:2,7"), P("Q:3")], ids=str)
def test_base_change_to_sqrt_minus_one(F):
    assert mult_verdict(F, "2+11h").answer == "no"
    assert mult_verdict(quadratic_closure(F), "2+11h").answer == "yes"


FORM_FIELDS = [F5, P("Fq:3"), R, C, P("Q:2,7")]


@st.composite
def form_alpha(draw):
    F = draw(st.sampled_from(FORM_FIELDS))
    units = {"Fq": [1, 2], "R": [1, -1], "C": [1], "Q": [1, -1, 2, 7, 14]}[F.kind]
    terms = {u: draw(st.integers(0, 4)) for u in units}
    e = FormExpr(terms)
    if e.dim() == 0:
        e = FormExpr.integer(1)
    return F, str(e).replace(" ", "")


@settings(max_examples=200, deadline=None)
@given(form_alpha())
def test_rule_consistency(case):
    F, alpha = case
    v = mult_verdict(F, alpha)
    d = FormExpr.parse(alpha).dim()
    if d % 4 == 2:
        assert (v.answer, v.rule) == ("no", "dim-2-mod-4")
    else:
        assert v.rule != "dim-2-mod-4"
    if v.answer != "unknown":
        assert v.rule


def test_brackets_examples():
    b = toda_bracket(F5, "eta_h_eta")
    assert b.representative == "{6nu, -6nu}" and b.indeterminacy == ["0", "12nu"]
    b = toda_bracket(F5, "eta_nu_eta")
    assert b.representative == "{nu^2}" and b.indeterminacy == ["0"]
    b = toda_bracket(R, "h_eta_h")
    assert b.indeterminacy == ["2K^M_1{nu}/24"]
    assert b.checks["indeterminacy_matches"]


def test_lift_checks():
    for F in (F5, R, C):
        assert toda_lift_check(F, "eta_nu_eta")["conclusion"] == "eta * id != 0"
    assert toda_lift_check(R, "real_2p11h")["c_star_injective"]
    with pytest.raises(ValueError):
        toda_lift_check(C, "real_2p11h")
    with pytest.raises(ValueError):
        toda_bracket(F5, "nope")
