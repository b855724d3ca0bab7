"""Motivic cohomology of a point with Z/m coefficients.

For 0 <= p <= q the group H^{p,q}(F; Z/m) is computed as Galois cohomology
of the cyclic module Z/m(q), using a cochain complex whose terms are all
Z/m and whose differentials are multiplication by integers:

    finite field F_q   Z/m --(q^w - 1)--> Z/m                (Frobenius)
    real numbers       Z/m --(s-1)--> Z/m --(s+1)--> Z/m ... (s = (-1)^w)
    closed field       Z/m

Outside 0 <= p <= q the groups vanish.  Every nonzero group is cyclic, so a
class is an integer coordinate with respect to a fixed generator.  The
coefficient maps inc, pr and the Bocksteins act on cochains; the Steenrod
squares act on mod 2 classes through the identification
h^{p,q} = k^M_p * tau^(q-p).
"""
import re
from functools import lru_cache
from math import gcd

from .fields import NotModeled, milnor_k_mod, nonsquare
from .groups import FiniteAbelianGroup


def _diff(F, p, w):
    """Integer a with C^p -> C^(p+1) equal to multiplication by a, or None if C^p = 0."""
    if p < 0:
        return None
    if F.kind == "Fq":
        if p == 0:
            return F.q ** w - 1
        return 0 if p == 1 else None
    if F.kind == "R":
        s = (-1) ** w
        return s - 1 if p % 2 == 0 else s + 1
    if F.kind == "C":
        return 0 if p == 0 else None
    raise NotModeled("cochain model for %s" % F)


def _check_modulus(F, m):
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if F.kind == "Fq" and m % F.p == 0:
        raise NotModeled("coefficients Z/%d in characteristic %d" % (m, F.p))


@lru_cache(maxsize=None)
def _cyclic(F, p, q, m):
    """(order, generator cochain) of H^{p,q}(F; Z/m)."""
    _check_modulus(F, m)
    if p < 0 or p > q:
        return 1, 0
    if F.kind == "Q":
        if p != q:
            raise NotModeled("H^{%d,%d} over %s with p < q" % (p, q, F))
        raise NotModeled("cyclic description over %s" % F)
    a = _diff(F, p, q)
    if a is None:
        return 1, 0
    b = _diff(F, p - 1, q)
    ker = gcd(a, m)
    img = m // gcd(b, m) if b is not None else 1
    order = ker // img
    return order, m // ker


def mot_cohomology_point(F, p, q, m):
    """H^{p,q}(F; Z/m) as a finite abelian group with a labeled generator."""
    if F.kind == "Q":
        if p < 0 or p > q:
            return FiniteAbelianGroup()
        if p == q:
            return milnor_k_mod(F, q, m)
        raise NotModeled("H^{%d,%d}(%s; Z/%d) with p < q" % (p, q, F, m))
    order, _ = _cyclic(F, p, q, m)
    return FiniteAbelianGroup.from_orders([order], [class_label(F, p, q, m)])


def class_label(F, p, q, m):
    if m != 2:
        return "x%d,%d" % (p, q)
    k = q - p
    tau = "" if k == 0 else ("tau" if k == 1 else "tau^%d" % k)
    if F.kind == "R":
        sym = "" if p == 0 else ("rho" if p == 1 else "rho^%d" % p)
    elif F.kind == "Fq" and p == 1:
        sym = "[%s]" % (nonsquare(F) if F.q == F.p else "g")
    else:
        sym = ""
    parts = [s for s in (tau, sym) if s]
    return "*".join(parts) if parts else "1"


class PointClass:
    """A class in H^{p,q}(F; Z/m), stored as a coordinate on the generator."""

    def __init__(self, field, p, q, m, coord=1):
        self.field, self.p, self.q, self.m = field, p, q, m
        self.order = _cyclic(field, p, q, m)[0]
        self.coord = coord % self.order if self.order > 1 else 0

    @classmethod
    def generator(cls, F, p, q, m):
        return cls(F, p, q, m, 1)

    def bidegree(self):
        return (self.p, self.q)

    def is_zero(self):
        return self.coord == 0

    def cochain(self):
        return self.coord * _cyclic(self.field, self.p, self.q, self.m)[1] % self.m

    @classmethod
    def from_cochain(cls, F, p, q, m, y):
        order, x0 = _cyclic(F, p, q, m)
        if order == 1:
            return cls(F, p, q, m, 0)
        y %= m
        if y % x0:
            raise ArithmeticError("cochain is not a cocycle")
        return cls(F, p, q, m, y // x0)

    def __add__(self, other):
        if (self.p, self.q, self.m) != (other.p, other.q, other.m):
            raise ValueError("adding classes of different groups")
        return PointClass(self.field, self.p, self.q, self.m, self.coord + other.coord)

    def scale(self, k):
        return PointClass(self.field, self.p, self.q, self.m, self.coord * k)

    def __eq__(self, other):
        return (self.field, self.p, self.q, self.m, self.coord) == \
            (other.field, other.p, other.q, other.m, other.coord)

    def __hash__(self):
        return hash((self.p, self.q, self.m, self.coord))

    def __str__(self):
        if self.coord == 0:
            return "0"
        lab = class_label(self.field, self.p, self.q, self.m)
        body = lab if self.coord == 1 else "%d*%s" % (self.coord, lab)
        return "(%d,%d,%d) %s" % (self.p, self.q, self.m, body)

    __repr__ = __str__


# -- mod 2 structure -----------------------------------------------------------

def _rho_factor(F, p):
    """rho * (generator of h^{p,*}) = r * (generator of h^{p+1,*})."""
    if F.kind == "R":
        return 1
    if F.kind == "Fq":
        return 1 if (p == 0 and F.q % 4 == 3) else 0
    return 0


@lru_cache(maxsize=None)
def sq_tau_power(i, k):
    """Coefficient c with Sq^i(tau^k) = c * rho^i * tau^(k - ceil(i/2)).

    Follows from Sq^1 tau = rho, Sq^2 tau = 0 and the Cartan formula
    with its tau- and rho-twisted terms.
    """
    if i == 0:
        return 1
    if i < 0 or k <= 0:
        return 0
    if i % 2 == 0:
        return (sq_tau_power(i, k - 1) + sq_tau_power(i - 1, k - 1)) % 2
    return (sq_tau_power(i, k - 1) + sq_tau_power(i - 1, k - 1)
            + sq_tau_power(i - 2, k - 1)) % 2


def _require2(x):
    if x.m != 2:
        raise ValueError("mod 2 operation applied to Z/%d class" % x.m)


def sq(i, x):
    _require2(x)
    F = x.field
    p2, q2 = x.p + i, x.q + i // 2
    c = sq_tau_power(i, x.q - x.p) * x.coord
    for t in range(i):
        c *= _rho_factor(F, x.p + t)
    return PointClass(F, p2, q2, 2, c)


def mul_tau(x):
    _require2(x)
    return PointClass(x.field, x.p, x.q + 1, 2, x.coord)


def mul_rho(x):
    _require2(x)
    return PointClass(x.field, x.p + 1, x.q + 1, 2, x.coord * _rho_factor(x.field, x.p))


def cup(x, y):
    """Product of two mod 2 classes."""
    _require2(x)
    _require2(y)
    F = x.field
    c = x.coord * y.coord
    if x.p and y.p and F.kind != "R":
        c = 0
    return PointClass(F, x.p + y.p, x.q + y.q, 2, c)


# -- coefficient maps -------------------------------------------------------------

def inc(x, a, b):
    """Z/a -> Z/ab, cochain x -> b x."""
    _mod(x, a)
    return PointClass.from_cochain(x.field, x.p, x.q, a * b, x.cochain() * b)


def pr(x, ab, b):
    _mod(x, ab)
    if ab % b:
        raise ValueError("pr needs b | ab")
    return PointClass.from_cochain(x.field, x.p, x.q, b, x.cochain())


def bockstein(x, n, m):
    """Connecting map of 0 -> Z/m -> Z/mn -> Z/n -> 0, H^{p,q}(Z/n) -> H^{p+1,q}(Z/m)."""
    _mod(x, n)
    F = x.field
    tgt = PointClass(F, x.p + 1, x.q, m, 0)
    if tgt.order == 1 or x.coord == 0:
        return tgt
    a = _diff(F, x.p, x.q)
    y = a * x.cochain()
    if y % n:
        raise ArithmeticError("not a cocycle")
    return PointClass.from_cochain(F, x.p + 1, x.q, m, y // n)


def _mod(x, a):
    if x.m != a:
        raise ValueError("class has modulus %d, map expects %d" % (x.m, a))


# -- operation expressions ----------------------------------------------------------

_FACTOR = re.compile(r"^(Sq(\d+)|Q1|tau|rho|id|(bd|inc|pr)\[([^:\]]+):([^\]]+)\])$")


class OpSymbol:
    """Sum of composites of Sq^i, Q1, tau, rho, bd/inc/pr.

    Composites are written left to right as functions: "Sq2*bd[2n:2]" applies
    the Bockstein first.  bd[a:b] is the connecting map H(Z/a) -> H(Z/b)
    attached to 0 -> Z/b -> Z/ab -> Z/a -> 0.  Sq3 stands for Sq1*Sq2 and
    Q1 for Sq2*Sq1 + Sq1*Sq2.
    """

    def __init__(self, text):
        self.text = text.strip()
        self.terms = []
        if self.text in ("0", ""):
            return
        for term in self.text.split("+"):
            facs = [f.strip() for f in term.split("*") if f.strip()]
            expanded = [[]]
            for f in facs:
                mt = _FACTOR.match(f)
                if not mt:
                    raise ValueError("unknown operation %r" % f)
                if f == "Q1":
                    alts = [[("Sq", 2), ("Sq", 1)], [("Sq", 1), ("Sq", 2)]]
                elif mt.group(2):
                    i = int(mt.group(2))
                    alts = [[("Sq", 1), ("Sq", 2)]] if i == 3 else [[("Sq", i)]]
                elif f in ("tau", "rho", "id"):
                    alts = [[(f,)]]
                else:
                    alts = [[(mt.group(3), mt.group(4), mt.group(5))]]
                expanded = [e + a for e in expanded for a in alts]
            self.terms.extend(expanded)

    def is_zero(self):
        return not self.terms

    def __str__(self):
        return self.text

    __repr__ = __str__

    def bidegree(self):
        """(i, j) shift of the first term; all terms must agree."""
        degs = {_term_degree(t) for t in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous operation %s" % self.text)
        return degs.pop() if degs else None

    def moduli(self, env):
        """(source modulus, target modulus) with symbolic moduli resolved."""
        mods = {_term_moduli(t, env) for t in self.terms}
        if len(mods) > 1:
            raise ValueError("terms of %s disagree on moduli" % self.text)
        return mods.pop() if mods else None

    def apply(self, x, env=None, target_mod=None):
        env = env or {}
        out = None
        for t in self.terms:
            y = _apply_term(t, x, env)
            out = y if out is None else out + y
        if out is None:
            raise ValueError("zero operation has no target")
        return out


def _term_degree(t):
    i = j = 0
    for f in t:
        if f[0] == "Sq":
            i += f[1]
            j += f[1] // 2
        elif f[0] == "tau":
            j += 1
        elif f[0] == "rho":
            i += 1
            j += 1
        elif f[0] == "bd":
            i += 1
    return (i, j)


def resolve_modulus(sym, env):
    sym = sym.strip()
    if sym.isdigit():
        return int(sym)
    if sym in env:
        return env[sym]
    raise ValueError("unknown modulus symbol %r" % sym)


def _term_moduli(t, env):
    src = tgt = None
    for f in reversed(t):
        if f[0] in ("bd", "inc", "pr"):
            a, b = resolve_modulus(f[1], env), resolve_modulus(f[2], env)
        elif f[0] == "id":
            continue
        else:
            a = b = 2
        if src is None:
            src = a
        elif tgt != a:
            raise ValueError("moduli do not compose in %r" % (t,))
        tgt = b
    return (src, tgt)


def _apply_term(t, x, env):
    for f in reversed(t):
        k = f[0]
        if k == "Sq":
            x = sq(f[1], x)
        elif k == "tau":
            x = mul_tau(x)
        elif k == "rho":
            x = mul_rho(x)
        elif k == "id":
            pass
        else:
            a, b = resolve_modulus(f[1], env), resolve_modulus(f[2], env)
            if k == "inc":
                if b % a:
                    raise ValueError("inc needs a | b")
                x = inc(x, a, b // a)
            elif k == "pr":
                x = pr(x, a, b)
            else:
                x = bockstein(x, a, b)
    return x


def steenrod_eval(op, x, env=None):
    if isinstance(op, str):
        op = OpSymbol(op)
    mods = op.moduli(env or {})
    if mods and mods[0] != x.m:
        raise ValueError("operation expects modulus %d, class has %d" % (mods[0], x.m))
    return op.apply(x, env)


coeff_map_eval = steenrod_eval


# -- checks ------------------------------------------------------------------------

def _cyclic_map(F, op, p, q, m, env):
    """Image coordinate of the generator of H^{p,q}(Z/m) under op."""
    x = PointClass.generator(F, p, q, m)
    return op.apply(x, env)


def bockstein_les_check(F, m, n, pmax, qmax):
    """Exactness of the long sequence for 0 -> Z/m -> Z/mn -> Z/n -> 0."""
    env = {}
    inc_op = OpSymbol("inc[%d:%d]" % (m, m * n))
    pr_op = OpSymbol("pr[%d:%d]" % (m * n, n))
    bd_op = OpSymbol("bd[%d:%d]" % (n, m))
    failures = []
    checked = 0
    for q in range(0, qmax + 1):
        # the sequence in weight q: spots (p, modulus) in order
        spots = []
        for p in range(0, min(pmax, q) + 2):
            spots += [(p, m, inc_op), (p, m * n, pr_op), (p, n, bd_op)]
        for idx in range(0, len(spots) - 1):
            p_b, m_b, f_out = spots[idx]
            if p_b > pmax:
                continue
            order_b = _cyclic(F, p_b, q, m_b)[0]
            ker = order_b // _image_order(F, f_out, p_b, q, m_b, env)
            if idx == 0:
                img, comp = 1, PointClass(F, 0, q, m, 0)
            else:
                p_in, m_in, f_in = spots[idx - 1]
                img = _image_order(F, f_in, p_in, q, m_in, env)
                comp = f_out.apply(f_in.apply(PointClass.generator(F, p_in, q, m_in), env), env)
            checked += 1
            if img != ker or not comp.is_zero():
                failures.append({"p": p_b, "q": q, "modulus": m_b,
                                 "image": img, "kernel": ker})
    return {"exact": not failures, "checked": checked, "failures": failures}


def _image_order(F, op, p, q, m, env):
    y = op.apply(PointClass.generator(F, p, q, m), env)
    if y.order == 1:
        return 1
    return y.order // gcd(y.coord, y.order)


def cartan_obstruction(dim):
    """Sq^2 on the bottom class of h(1/a smash 1/a) for a form of rank dim.

    The cohomology of 1/a is free on x0 in (0,0) and x1 in (1,0), with
    Sq^1 x0 = x1 exactly when dim = 2 mod 4.  Returns the Cartan value of
    Sq^2(x0 y0) and whether it contradicts the split module, where it
    must vanish.
    """
    if dim % 2:
        return {"cohomology": "zero", "sq1": False, "sq2_x0y0": "0", "fires": False}
    s = 1 if dim % 4 == 2 else 0
    # Sq^2(x0 y0) = Sq^2 x0 * y0 + x0 * Sq^2 y0 + tau Sq^1 x0 * Sq^1 y0
    coeff = 0 + 0 + s * s
    value = "tau*x1y1" if coeff else "0"
    return {"cohomology": "rank 2", "sq1": bool(s), "sq2_x0y0": value,
            "split_value": "0", "fires": bool(coeff)}
