import pytest

from motmoore import slices
from motmoore.fields import FieldModel
from motmoore.groups import FiniteAbelianGroup as G

P = FieldModel.parse
F5, R, C = P("Fq:5"), P("R"), P("C")
X = slices.SpectrumId


def summary(spec, q):
    return sorted(S.to_json()["summand"] for S in slices.slice_summands(spec, q))


def test_slice_examples():
    assert summary(X("moore_nh", 1), 0) == ["S^{0,0}MZ/2{1}"]
    assert summary(X("moore_nh", 3), 2) == sorted(["S^{2,2}MZ/2{a1^2}", "S^{3,2}MZ/2{a1^2~}",
                                                   "S^{3,2}MZ/6{a2}", "S^{4,2}MZ/6{a2~}"])
    # top summand MZ/2n: MZ/2 for n = 1, MZ/4 for n = 2
    assert summary(X("kq_nh", 1), 2) == sorted(["S^{4,2}MZ/2", "S^{2,2}MZ/2", "S^{3,2}MZ/2"])
    assert summary(X("kq_nh", 2), 2) == sorted(["S^{4,2}MZ/4", "S^{2,2}MZ/2", "S^{3,2}MZ/2"])


def test_kq_nh_top_summand_modulus():
    # the top summand has modulus 2n
    for n in (1, 2, 3):
        top = [S for S in slices.slice_summands(X("kq_nh", n), 2) if S.j == 2]
        assert [S.modulus for S in top] == [2 * n]


def test_d1_examples():
    row = slices.d1_components(X("ckw_nh", 3), 4, j=5)[0]
    assert row["components"] == ["Sq3*Sq1", "0", "Sq2"]
    row = slices.d1_components(X("moore_nh", 2), 0)[0]
    assert row["components"] == ["Sq2*bd[2n:2]", "Sq2*pr[2n:2]"]
    row = slices.d1_components(X("kq_2"), 5, j=5)[0]
    assert row["components"] == ["Q1", "Sq2", "rho+tau*Sq1", "0"]


def test_unknown_spectrum():
    with pytest.raises(ValueError):
        X("nope")
    with pytest.raises(ValueError):
        X("moore_nh")


def test_e1_examples():
    cols = slices.e1_complex(X("kq"), F5, 1, 0)["columns"]
    nonzero = [c["q"] for c in cols if c["order"] > 1]
    assert nonzero == [1, 2]
    cols = slices.e1_complex(X("moore_nh", 1), C, 0, 0)["columns"]
    assert [c["group"] for c in cols if c["order"] > 1] == ["Z/2"]
    assert cols[0]["group"] == "Z/2"
    cols = slices.e1_complex(X("ckw_2"), R, 2, 1)["columns"]
    for c in cols:
        assert all(f == 2 for f in G.from_orders([2] * len(c["summands"])).factors)
        for row in c["d_out"]:
            assert all(v in (0, 1) for v in row)


def test_e2_bottom_of_moore():
    for F in (F5, R, C):
        t = slices.e2_window(X("moore_nh", 1), F, (0, 0), (0, 0), (0, 0)).to_json()
        assert t["entries"][0]["E2"] == "Z/2"


def test_kq_reconciliation_groups():
    rep = slices.kq_pi10_reconciliation(F5)
    assert rep["total_order"] == 4 and rep["expected"] == "Z/2 + Z/2"


@pytest.mark.parametrize("F", [F5, R, C], ids=str)
def test_ckw_nh_splits(F):
    for n in (1, 2, 3):
        for s in range(0, 4):
            for w in range(-2, 3):
                for q in range(0, 4):
                    ok, lhs, rhs = slices.splitting_check(F, n, s, w, q)
                    assert ok, (n, s, w, q, lhs, rhs)


@pytest.mark.parametrize("F", [F5, R, C], ids=str)
def test_naturality(F):
    for n in (1, 2, 3, 4):
        for s in range(0, 5):
            for w in range(-2, 4):
                for q in range(0, 3):
                    assert slices.naturality_check(n, F, s, w, q)["commutes"]


def test_incomplete_positions_flagged():
    # nu^2 sits at q = 4 in the Moore tables with an unknown differential
    t = slices.e2_window(X("moore_nh", 1), R, (4, 4), (0, 0), (3, 5)).to_json()
    assert any(e["incomplete"] for e in t["entries"])


def test_mutated_catalog_is_caught(monkeypatch):
    # d1 o d1 = 0 has teeth: dropping rho from one row breaks it
    cat = slices.load_catalog("ckw_2")
    import copy
    bad = copy.deepcopy(cat)
    hit = False
    for row in bad["d1"]:
        comps = row["components"]
        for i, c in enumerate(comps):
            if c == "rho+tau*Sq1":
                comps[i] = "tau*Sq1"
                hit = True
    assert hit
    slices.clear_caches()
    monkeypatch.setattr(slices, "load_catalog", lambda name: bad if name == "ckw_2" else cat)
    try:
        rep = slices.d_squared_window("ckw_2", R, (0, 6), (-5, 5), (0, 5))
        assert rep["violations"]
    finally:
        monkeypatch.undo()
        slices.clear_caches()
