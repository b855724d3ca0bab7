import pytest

from motmoore.fields import FieldModel, NotModeled, milnor_k_mod
from motmoore.groups import FiniteAbelianGroup as G
from motmoore.homotopy import (AlphaDescriptor, GroupExpression, NotDetermined, Residue, atom,
                               eval_group, gw_action_pi1, pi10_KQ, pi_moore, pi_sphere)

P = FieldModel.parse
F5, R, C, Q = P("Fq:5"), P("R"), P("C"), P("Q:2,7")


def test_eval_group_examples():
    assert eval_group(GroupExpression([atom("KM", n=2, mod=24)]), F5).is_trivial()
    e = GroupExpression([atom("Zm", mod=2), atom("KM", n=1, mod=2)])
    assert eval_group(e, R) == G.from_orders([2, 2])
    assert eval_group(GroupExpression([atom("Ideal", n=2)]), C).is_trivial()


def test_eval_group_residue():
    res = eval_group(GroupExpression([atom("Zm", mod=3), atom("GW", "1")]), Q)
    assert isinstance(res, Residue)
    assert "GW" in str(res)


def test_pi_sphere_examples():
    assert str(pi_sphere(0, 0)) == "GW{1}"
    assert eval_group(pi_sphere(3, 2), C) == G.cyclic(24)
    assert eval_group(pi_sphere(3, 2), C).generators == ("nu",)
    e = pi_sphere(1, 0)
    assert e.split is True
    assert [a["atom"] for a in e.atoms] == ["Zm", "KM", "KM"]
    assert eval_group(pi_sphere(7, 5), F5).is_trivial()
    assert pi_sphere(-1, 0).atoms == []


def test_pi_sphere_refusals():
    with pytest.raises(NotDetermined):
        pi_sphere(2, -3)
    with pytest.raises(NotDetermined):
        pi_sphere(3, 0)
    with pytest.raises(NotDetermined):
        pi_sphere(5, 1)


def test_gw_action():
    assert str(gw_action_pi1(F5, "h", "eta_top")) == "[-1]*eta*eta_top"
    assert str(gw_action_pi1(F5, "h", "nu")) == "2*nu"
    for u in (2, 3):
        assert str(gw_action_pi1(F5, "<%d>" % u, "nu")) == "nu"


def test_pi_moore_examples():
    for F in (F5, R, C):
        ext = pi_moore(F, "eta", 6, 4)
        assert ext.quotient == G.cyclic(2) and ext.torsion.is_trivial()
    assert pi_moore(F5, "n_eps:5", 1, 0).total().is_trivial()
    for n in (3, 5, 7, 9, 11):
        for F in (F5, R, C):
            ext = pi_moore(F, "n_eps:%d" % n, 0, 0)
            assert ext.total() == G.cyclic(n)
    # n = 9: K^M_2/3, which vanishes over F5 and C and is Z/2-free over R
    assert pi_moore(F5, "n_eps:9", 1, 0).total() == milnor_k_mod(F5, 2, 3)
    sym = pi_moore(Q, "n_eps:9", 1, 0)
    assert sym.source == "rule"
    assert eval_group(sym.quotient, Q) == milnor_k_mod(Q, 2, 3)


def test_pi10_KQ():
    assert pi10_KQ(F5) == G.from_orders([2, 2])
    assert pi10_KQ(C) == G.cyclic(2)
    assert pi10_KQ(R) == G.from_orders([2, 2])


def test_alpha_parser():
    assert AlphaDescriptor.parse("eta^3").bidegree == (3, 3)
    assert AlphaDescriptor.parse("n_eps:6").dim() == 6
    assert AlphaDescriptor.parse("nh:2").dim() == 4
    assert AlphaDescriptor.parse("2+11h").dim() == 24
    assert AlphaDescriptor.parse("<1,2>").kind == "gw"
    with pytest.raises(ValueError):
        AlphaDescriptor.parse("eta^0")


def test_not_modeled_vs_not_determined():
    assert issubclass(NotDetermined, NotModeled)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_moore_neps_bottom_group_even(m):
    # hand oracle: over F5, GW = Z<1> + Z/2(<2>-<1>) and n_eps = n<1>, so the
    # quotient is Z/n + Z/2; over R, n_eps = m h and GW/(m h) = Z + Z/m
    n = 2 * m
    assert pi_moore(F5, "n_eps:%d" % n, 0, 0).total() == G.from_orders([n, 2])
    assert pi_moore(R, "n_eps:%d" % n, 0, 0).total() == G.from_orders([0, m])
    assert pi_moore(C, "n_eps:%d" % n, 0, 0).total() == G.cyclic(n)
