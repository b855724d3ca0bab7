"""Slice summands, first slice differentials and E^2 pages.

A slice summand S^{q+j,q} MZ/m contributes H^{q+j-s, q-w}(F; Z/m) to
pi_{s,w}.  The d^1 differential goes from s_q to S^{1,0} s_{q+1}, so on
homotopy it maps position (s, w, q) to (s - 1, w, q + 1).  A component of
simplicial degree a sends the summand at j to the one at j + a - 2.

Catalogs live in catalogs/*.json, one file per spectrum.  Condition strings
in them are small arithmetic predicates in q, j and n.
"""
import json
import re
from functools import lru_cache
from importlib import resources
from math import gcd

from .cohomology import OpSymbol, PointClass, resolve_modulus
from .fields import FieldModel
from .groups import FiniteAbelianGroup, subquotient

N_SURROGATE = 64

CATALOG_FILES = {
    "moore_nh": "moore_nh.json",
    "kq_nh": "kq_nh.json",
    "ckw_nh": "ckw_nh.json",
    "ckw_2": "ckw_2.json",
    "kq_2": "kq_2.json",
    "kq": "kq.json",
    "ckw": "ckw.json",
}
ALIASES = {"sphere_mod_nh": "moore_nh", "moore": "moore_nh", "1/nh": "moore_nh"}
WITH_N = ("moore_nh", "kq_nh", "ckw_nh")
UNBOUNDED = ("ckw_nh", "ckw_2", "ckw")


class OutOfCatalog(ValueError):
    pass


@lru_cache(maxsize=None)
def load_catalog(name):
    text = resources.files("motmoore").joinpath("catalogs", CATALOG_FILES[name]).read_text()
    return json.loads(text)


_SAFE = re.compile(r"^[qjn0-9%<>=!(),+\-* ]*$")


def _eval(expr, **env):
    expr = expr.strip()
    if not _SAFE.match(expr.replace(" in ", " ")):
        raise ValueError("bad catalog expression %r" % expr)
    return eval(expr, {"__builtins__": {}}, env)


def _holds(conds, **env):
    return all(_eval(c, **env) for c in conds)


_PARITY = {
    "any": lambda n: True,
    "even": lambda n: n % 2 == 0,
    "odd": lambda n: n % 2 == 1,
    "0 mod 4": lambda n: n % 4 == 0,
    "2 mod 4": lambda n: n % 4 == 2,
    "not 0 mod 4": lambda n: n % 4 != 0,
}


class SpectrumId:
    def __init__(self, name, n=None):
        key = name.strip().lower()
        key = ALIASES.get(key, key)
        if key not in CATALOG_FILES:
            raise ValueError("unknown spectrum %r" % name)
        if key in WITH_N:
            if n is None or int(n) < 1:
                raise ValueError("%s needs n >= 1" % key)
            n = int(n)
        else:
            n = None
        self.name, self.n = key, n

    @classmethod
    def parse(cls, text, n=None):
        return text if isinstance(text, SpectrumId) else cls(text, n)

    def env(self):
        env = {"N": N_SURROGATE}
        if self.n is not None:
            env.update({"n": self.n, "2n": 2 * self.n, "g": gcd(2 * self.n, 12)})
        return env

    def catalog(self):
        return load_catalog(self.name)

    def __eq__(self, other):
        return isinstance(other, SpectrumId) and (self.name, self.n) == (other.name, other.n)

    def __hash__(self):
        return hash((self.name, self.n))

    def __str__(self):
        return self.name if self.n is None else "%s(n=%d)" % (self.name, self.n)

    __repr__ = __str__


class SliceSummand:
    def __init__(self, q, j, modulus, symbol, family, label, complete=True, d1_known=True):
        self.q, self.j = q, j
        self.modulus, self.symbol = modulus, symbol
        self.family, self.label = family, label
        self.complete, self.d1_known = complete, d1_known

    def key(self):
        return (self.q, self.j, self.family)

    def group(self, F, s, w):
        """pi_{s,w} of this summand: H^{q+j-s, q-w}(F; Z/m)."""
        return PointClass(F, self.q + self.j - s, self.q - w, self.modulus)

    def __str__(self):
        tag = "{%s}" % self.label if self.label else ""
        return "S^{%d,%d}MZ/%d%s" % (self.q + self.j, self.q, self.modulus, tag)

    __repr__ = __str__

    def to_json(self):
        return {"q": self.q, "j": self.j, "modulus": self.modulus, "family": self.family,
                "label": self.label, "summand": str(self), "complete": self.complete,
                "d1_known": self.d1_known}


def _label(template, q):
    if not template:
        return ""
    out = re.sub(r"\{([^}]*)\}", lambda m: str(_eval(m.group(1), q=q)), template)
    out = re.sub(r"a1\^0(?=a|$)", "", out)
    out = re.sub(r"a1\^1(?=\D|$)", "a1", out)
    return out or "1"


def slice_summands(X, q, jmax=None):
    """Summands of s_q(X).  Spectra with unbounded j need jmax."""
    X = SpectrumId.parse(X)
    if q < 0:
        raise OutOfCatalog("weight %d is outside the catalog" % q)
    env = X.env()
    cat = X.catalog()
    out = []
    for rule in cat["summands"]:
        if not _holds(rule["when"], q=q):
            continue
        lo = _eval(rule["j_from"], q=q)
        if rule["j_to"] == "inf":
            if jmax is None:
                raise OutOfCatalog("s_q(%s) is unbounded in j; give jmax" % X)
            hi = jmax
        else:
            hi = _eval(rule["j_to"], q=q)
            if jmax is not None:
                hi = min(hi, jmax)
        m = resolve_modulus(rule["modulus"], env)
        for j in range(lo, hi + 1, rule.get("step", 1)):
            complete = not (X.name == "moore_nh" and q >= 4 and j >= 3)
            out.append(SliceSummand(q, j, m, rule["modulus"], rule["family"],
                                    _label(rule.get("label", ""), q), complete,
                                    rule.get("d1_known", True)))
    out.sort(key=lambda S: (S.j, S.family))
    return out


def completeness_note(X):
    X = SpectrumId.parse(X)
    return X.catalog().get("completeness")


# ------------------------------------------------------------------ d^1 rows

class D1Component:
    def __init__(self, text, op, target, degree):
        self.text, self.op, self.target, self.degree = text, op, target, degree

    def to_json(self):
        return {"op": self.text, "degree": self.degree,
                "target": str(self.target) if self.target else None}


def _find_row(X, S):
    rows = []
    n = X.n if X.n is not None else 0
    for row in X.catalog()["d1"]:
        if not _PARITY[row["n_parity"]](n):
            continue
        if "source" in row:
            if row["source"] != S.family or not _holds(row["q_case"], q=S.q):
                continue
        elif not (_holds(row["q_case"], q=S.q) and _holds(row["j_case"], q=S.q, j=S.j)):
            continue
        rows.append(row)
    if len(rows) != 1:
        raise OutOfCatalog("%d catalog rows match %s in %s" % (len(rows), S, X))
    return rows[0]


def _op_degree(op):
    d = op.bidegree()
    if d is None:
        return None
    if d[1] != 1:
        raise ValueError("d1 component %s has weight %d, expected 1" % (op, d[1]))
    return d[0]


def _summand_at(X, q, j, family=None):
    hits = [S for S in slice_summands(X, q, jmax=max(j, 0))
            if S.j == j and (family is None or S.family == family)]
    return hits


@lru_cache(maxsize=None)
def d1_row(X, S_key):
    """(row, [D1Component]) for the summand with key (q, j, family)."""
    q, j, family = S_key
    S = _summand_at(X, q, j, family)[0]
    if not S.d1_known:
        return None, None
    row = _find_row(X, S)
    env = X.env()
    comps = []
    targets = row.get("targets")
    for i, text in enumerate(row["components"]):
        op = OpSymbol(text)
        if op.is_zero():
            comps.append(D1Component(text, op, None, None))
            continue
        deg = _op_degree(op)
        jt = j + deg - 2
        src_m, tgt_m = op.moduli(env)
        if targets is not None:
            fam = targets[i]
            hits = _summand_at(X, q + 1, jt, fam) if fam else []
            if fam and len(hits) != 1:
                raise ValueError("target %s of %s not found at j=%d" % (fam, S, jt))
        else:
            hits = [T for T in _summand_at(X, q + 1, jt) if T.modulus == tgt_m]
            if len(hits) > 1:
                raise ValueError("ambiguous target for %s in %s" % (text, S))
        T = hits[0] if hits else None
        if src_m is not None and src_m != S.modulus:
            raise ValueError("%s expects Z/%d, source %s" % (text, src_m, S))
        if T is not None and tgt_m is not None and tgt_m != T.modulus:
            raise ValueError("%s lands in Z/%d, target %s" % (text, tgt_m, T))
        comps.append(D1Component(text, op, T, deg))
    return row, comps


def d1_components(X, q, j=None, n=None):
    """The catalog row(s) for summands of s_q(X), with resolved targets."""
    X = SpectrumId.parse(X, n)
    jmax = j if X.name in UNBOUNDED else None
    if X.name in UNBOUNDED and j is None:
        raise OutOfCatalog("give j for %s" % X)
    out = []
    for S in slice_summands(X, q, jmax=jmax):
        if j is not None and S.j != j:
            continue
        row, comps = d1_row(X, S.key())
        entry = {"source": str(S), "family": S.family, "q": q, "j": S.j}
        if row is None:
            entry.update({"known": False, "components": None})
        else:
            entry.update({"known": True,
                          "components": [c.text for c in comps],
                          "targets": [str(c.target) if c.target else None for c in comps],
                          "source_row": row["source_row"]})
        out.append(entry)
    if not out:
        raise OutOfCatalog("no summand of s_%d(%s) with j=%s" % (q, X, j))
    return out


# ------------------------------------------------------------------ E^1

def _could_be_nonzero(F, p, wt):
    if p < 0 or p > wt:
        return False
    if F.kind == "Fq":
        return p <= 1
    if F.kind == "C":
        return p == 0
    return True


class Position:
    """E^1 at (s, w, q): the summands with nonzero homotopy and their orders."""

    def __init__(self, X, F, s, w, q):
        self.X, self.F, self.s, self.w, self.q = X, F, s, w, q
        self.basis, self.orders, self.gaps = [], [], []
        if q < 0:
            return
        jmax = max(s - w, 0) + 1
        for S in slice_summands(X, q, jmax=jmax if X.name in UNBOUNDED else None):
            order = S.group(F, s, w).order
            if order > 1:
                self.basis.append(S)
                self.orders.append(order)
                if not S.d1_known:
                    self.gaps.append("d1 of %s is not cataloged" % S)
        if X.name == "moore_nh" and q >= 4:
            for j in range(3, max(s - w, 0) + 1):
                if _could_be_nonzero(F, q + j - s, q - w):
                    self.gaps.append("summands with j >= 3 of s_%d are not cataloged" % q)
                    break

    def index(self, S):
        for i, T in enumerate(self.basis):
            if T.key() == S.key():
                return i
        return None

    def group(self):
        return FiniteAbelianGroup.from_orders(self.orders, [str(S) for S in self.basis])

    def order(self):
        out = 1
        for o in self.orders:
            out *= o
        return out


@lru_cache(maxsize=None)
def position(X, F, s, w, q):
    return Position(X, F, s, w, q)


@lru_cache(maxsize=None)
def d1_matrix(X, F, s, w, q):
    """Integer matrix of d^1: E^1(s,w,q) -> E^1(s-1,w,q+1), rows = target basis."""
    src, tgt = position(X, F, s, w, q), position(X, F, s - 1, w, q + 1)
    env = X.env()
    M = [[0] * len(src.basis) for _ in tgt.basis]
    for c, S in enumerate(src.basis):
        row, comps = d1_row(X, S.key())
        if row is None:
            continue
        x = PointClass.generator(F, S.q + S.j - s, S.q - w, S.modulus)
        for comp in comps:
            if comp.target is None:
                continue
            r = tgt.index(comp.target)
            if r is None:
                continue
            y = comp.op.apply(x, env)
            T = comp.target
            if (y.p, y.q, y.m) != (T.q + T.j - (s - 1), T.q - w, T.modulus):
                raise ValueError("component %s of %s lands in the wrong group" % (comp.text, S))
            M[r][c] += y.coord
    for r, o in enumerate(tgt.orders):
        M[r] = [v % o for v in M[r]]
    return tuple(tuple(r) for r in M)


def e1_complex(X, F, s, w, qmax=5, n=None):
    """E^1 groups contributing to pi_{s,w} with their incoming and outgoing d^1."""
    X = SpectrumId.parse(X, n)
    if isinstance(F, str):
        F = FieldModel.parse(F)
    cols = []
    for q in range(0, qmax + 1):
        P = position(X, F, s, w, q)
        cols.append({"q": q, "group": str(P.group()), "order": P.order(),
                     "summands": [str(S) for S in P.basis],
                     "d_in": [list(r) for r in d1_matrix(X, F, s + 1, w, q - 1)] if q > 0 else [],
                     "d_out": [list(r) for r in d1_matrix(X, F, s, w, q)],
                     "gaps": P.gaps})
    return {"spectrum": str(X), "field": str(F), "s": s, "w": w, "columns": cols}


# ------------------------------------------------------------------ E^2

def _matmul_mod(A, B, orders):
    out = []
    for r, row in enumerate(A):
        o = orders[r]
        out.append([sum(row[k] * B[k][c] for k in range(len(B))) % o
                    for c in range(len(B[0]) if B else 0)])
    return out


def d_squared(X, F, s, w, q):
    """Composite E^1(s,w,q) -> E^1(s-2,w,q+2); returns a list of violations."""
    A = d1_matrix(X, F, s, w, q)
    B = d1_matrix(X, F, s - 1, w, q + 1)
    src = position(X, F, s, w, q)
    mid = position(X, F, s - 1, w, q + 1)
    tgt = position(X, F, s - 2, w, q + 2)
    if not src.basis or not tgt.basis:
        return []
    C = _matmul_mod(B, A, tgt.orders)
    bad = []
    for r, row in enumerate(C):
        for c, v in enumerate(row):
            if v:
                trace = [(str(mid.basis[k]), A[k][c], B[r][k]) for k in range(len(mid.basis))
                         if A[k][c] and B[r][k]]
                bad.append({"position": [s, w, q], "source": str(src.basis[c]),
                            "target": str(tgt.basis[r]), "value": v, "through": trace,
                            "middle_gaps": mid.gaps})
    return bad


def _rank_mod(rows, p):
    rows = [[v % p for v in r] for r in rows if any(v % p for v in r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _vector_space_homology(orders, src_orders, tgt_orders, incoming, outgoing):
    """Homology when every group in sight is a vector space over one prime."""
    if not orders:
        return FiniteAbelianGroup()
    ps = set(orders) | set(src_orders) | set(tgt_orders)
    if len(ps) != 1:
        return None
    p = ps.pop()
    if any(p % d == 0 for d in range(2, p)):
        return None
    dim = len(orders)
    ker = dim - _rank_mod(outgoing, p)
    img = _rank_mod(incoming, p)
    if img > ker:
        raise ArithmeticError("image not contained in kernel")
    return FiniteAbelianGroup.from_orders([p] * (ker - img))


def e2_entry(X, F, s, w, q):
    P = position(X, F, s, w, q)
    tgt = position(X, F, s - 1, w, q + 1)
    Din = d1_matrix(X, F, s + 1, w, q - 1) if q > 0 else ()
    ncols = len(position(X, F, s + 1, w, q - 1).basis) if q > 0 else 0
    incoming = [[Din[r][c] for r in range(len(P.basis))] for c in range(ncols)]
    Dout = [list(r) for r in d1_matrix(X, F, s, w, q)]
    src_orders = position(X, F, s + 1, w, q - 1).orders if q > 0 else []
    grp = _vector_space_homology(P.orders, src_orders, tgt.orders, incoming, Dout)
    if grp is None:
        grp, _ = subquotient(P.orders, incoming, Dout, tgt.orders)
    gaps = list(P.gaps) + ["outgoing: " + g for g in tgt.gaps]
    if q > 0:
        gaps += ["incoming: " + g for g in position(X, F, s + 1, w, q - 1).gaps]
    return grp, gaps


class E2Table:
    def __init__(self, X, F):
        self.X, self.F = X, F
        self.entries = {}
        self.report = {"checked": 0, "violations": [], "inconclusive": []}

    def get(self, s, w, q):
        return self.entries[(s, w, q)]

    def to_json(self):
        rows = []
        for (s, w, q), e in sorted(self.entries.items()):
            rows.append({"s": s, "w": w, "q": q, "E1": str(e["E1"]), "E2": str(e["E2"]),
                         "incomplete": e["incomplete"], "reasons": e["reasons"]})
        return {"spectrum": str(self.X), "field": str(self.F), "entries": rows,
                "d_squared": self.report}


def e2_window(X, F, s_range=(0, 6), w_range=(-5, 5), q_range=(0, 5), n=None):
    """E^2 over a window with the d^1 o d^1 = 0 report."""
    X = SpectrumId.parse(X, n)
    if isinstance(F, str):
        F = FieldModel.parse(F)
    table = E2Table(X, F)
    for s in range(s_range[0], s_range[1] + 1):
        for w in range(w_range[0], w_range[1] + 1):
            for q in range(q_range[0], q_range[1] + 1):
                table.report["checked"] += 1
                bad = d_squared(X, F, s, w, q)
                for b in bad:
                    key = "inconclusive" if b["middle_gaps"] else "violations"
                    table.report[key].append(b)
                P = position(X, F, s, w, q)
                try:
                    grp, gaps = e2_entry(X, F, s, w, q)
                except ArithmeticError:
                    grp, gaps = None, ["d1 o d1 != 0 here"]
                table.entries[(s, w, q)] = {"E1": P.group(), "E2": grp,
                                            "incomplete": bool(gaps), "reasons": gaps}
    return table


# ------------------------------------------------------------------ checks

def kq_pi10_reconciliation(F, qmax=6):
    """E^2 of kq at (s, w) = (1, 0) against pi_{1,0} KQ = F^x/2 + Z/2."""
    from .homotopy import pi10_KQ
    if isinstance(F, str):
        F = FieldModel.parse(F)
    X = SpectrumId("kq")
    groups, total = {}, 1
    for q in range(0, qmax + 1):
        grp, _ = e2_entry(X, F, 1, 0, q)
        groups[q] = grp
        total *= grp.order()
    expected = pi10_KQ(F)
    return {"field": str(F), "E2": {q: str(g) for q, g in groups.items()},
            "total_order": total, "expected": str(expected),
            "expected_order": expected.order(), "match": total == expected.order()}


def _unit_map_matrix(n, F, s, w, q):
    """Matrix of the slice map 1/nh -> kq_nh on E^1(s,w,q)."""
    M = SpectrumId("moore_nh", n)
    K = SpectrumId("kq_nh", n)
    src, tgt = position(M, F, s, w, q), position(K, F, s, w, q)
    env = M.env()
    spec = {r["source"]: r for r in M.catalog()["unit_map"]["rows"]}
    A = [[0] * len(src.basis) for _ in tgt.basis]
    for c, S in enumerate(src.basis):
        if S.family not in spec:
            raise OutOfCatalog("map on %s is not cataloged" % S)
        r = spec[S.family]
        jt = _eval(r["target_j"], q=q)
        T = _summand_at(K, q, jt)[0]
        i = tgt.index(T)
        if i is None:
            continue
        x = PointClass.generator(F, S.q + S.j - s, S.q - w, S.modulus)
        y = OpSymbol(r["map"]).apply(x, env)
        if (y.p, y.q, y.m) != (T.q + T.j - s, T.q - w, T.modulus):
            raise ValueError("unit map on %s lands in the wrong group" % S)
        A[i][c] += y.coord
    return [[v % tgt.orders[i] for v in row] for i, row in enumerate(A)]


def naturality_matrices(n, F, s, w, q):
    """(d_kq o f, f o d_moore) on E^1(s,w,q) of 1/nh, with target orders."""
    if q > 2:
        raise OutOfCatalog("the slice map is cataloged for q <= 3")
    M = SpectrumId("moore_nh", n)
    K = SpectrumId("kq_nh", n)
    f0 = _unit_map_matrix(n, F, s, w, q)
    f1 = _unit_map_matrix(n, F, s - 1, w, q + 1)
    dm = [list(r) for r in d1_matrix(M, F, s, w, q)]
    dk = [list(r) for r in d1_matrix(K, F, s, w, q)]
    orders = position(K, F, s - 1, w, q + 1).orders
    left = _matmul_mod(dk, f0, orders) if f0 else []
    right = _matmul_mod(f1, dm, orders) if dm else []
    ncols = len(position(M, F, s, w, q).basis)
    if not left:
        left = [[0] * ncols for _ in orders]
    if not right:
        right = [[0] * ncols for _ in orders]
    return left, right, orders


def naturality_check(n, F, s, w, q):
    left, right, orders = naturality_matrices(n, F, s, w, q)
    return {"n": n, "field": str(F), "position": [s, w, q],
            "commutes": left == right, "d_after_f": left, "f_after_d": right}


def splitting_check(F, n, s, w, q):
    """E^2(ckw_nh) at (s,w,q) against E^2(ckw)(s,w,q) + E^2(ckw)(s-1,w,q)."""
    A = SpectrumId("ckw_nh", n)
    B = SpectrumId("ckw")
    lhs, _ = e2_entry(A, F, s, w, q)
    r1, _ = e2_entry(B, F, s, w, q)
    r2, _ = e2_entry(B, F, s - 1, w, q)
    return lhs == r1 + r2, str(lhs), str(r1 + r2)


def clear_caches():
    """Forget memoized rows, positions and matrices, e.g. after editing a catalog."""
    for f in (d1_row, position, d1_matrix):
        f.cache_clear()


__all__ = ["SpectrumId", "SliceSummand", "slice_summands", "d1_components", "e1_complex",
           "e2_window", "d_squared", "kq_pi10_reconciliation", "naturality_check",
           "naturality_matrices", "splitting_check", "d_squared_window", "OutOfCatalog", "clear_caches"]


def d_squared_window(X, F, s_range=(0, 6), w_range=(-5, 5), q_range=(0, 5), n=None):
    """Only the d^1 o d^1 = 0 report over a window."""
    X = SpectrumId.parse(X, n)
    if isinstance(F, str):
        F = FieldModel.parse(F)
    report = {"checked": 0, "nonzero_composites": 0, "violations": [], "inconclusive": []}
    for s in range(s_range[0], s_range[1] + 1):
        for w in range(w_range[0], w_range[1] + 1):
            for q in range(q_range[0], q_range[1] + 1):
                report["checked"] += 1
                for b in d_squared(X, F, s, w, q):
                    key = "inconclusive" if b["middle_gaps"] else "violations"
                    report[key].append(b)
    return report
