"""Milnor-Witt K-theory of the field models.

An element of K^MW_n(F) is stored by its image in K^M_n(F) x W(F); this map
is injective with image the pairs that agree in k^M_n = I^n/I^(n+1).  Under
it eta goes to (0, 1) and [u] to ({u}, <u> - 1), so every word can be
evaluated as a product.

Finite fields are modeled exactly.  For R and C only the subring generated
by eta and [-1] is modeled (the uniquely divisible part of K^M is dropped),
so word entries there must be +1 or -1.

>>> F = FieldModel.parse("Fq:5")
>>> str(kmw_group(F, 0))
'Z/2 + Z'
>>> kmw_reduce("eta*h", F)["zero"]
True
"""
import re
from itertools import product

from sympy import primitive_root

from .fields import FieldModel, FormExpr, NotModeled, _dlog
from .groups import FiniteAbelianGroup, lattice_basis, smith_normal_form

WINDOW = (-4, 4)


class KMWWord:
    """Z-linear combination of monomials eta^a [u1]...[uk].

    Monomials are tuples (a, (u1, ..., uk)) mapped to integer coefficients.
    """

    def __init__(self, terms=None):
        t = {}
        for key, c in (terms or {}).items():
            if c:
                t[key] = t.get(key, 0) + c
        self.terms = {k: c for k, c in t.items() if c}

    @classmethod
    def monomial(cls, a=0, units=(), c=1):
        return cls({(a, tuple(int(u) for u in units)): c})

    @classmethod
    def const(cls, c):
        return cls.monomial(0, (), c)

    @classmethod
    def eta(cls, k=1):
        return cls.monomial(k, ())

    @classmethod
    def symbol(cls, u):
        return cls.monomial(0, (u,))

    @classmethod
    def bracket(cls, u):
        # <u> = 1 + eta[u]
        return cls.const(1) + cls.monomial(1, (u,))

    @classmethod
    def parse(cls, text):
        """Parse e.g. "eta^2*[u]*[v] + 3*[w] - <-1> + h + eps"."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty word")
        out = cls()
        for sign, body in _split_terms(text):
            term = cls.const(1)
            for fac in body.split("*"):
                term = term * _parse_factor(fac)
            out = out + (term if sign != "-" else term.scale(-1))
        return out

    def scale(self, k):
        return KMWWord({m: k * c for m, c in self.terms.items()})

    def __add__(self, other):
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return KMWWord(t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        t = {}
        for (a, us), c in self.terms.items():
            for (b, vs), d in other.terms.items():
                key = (a + b, us + vs)
                t[key] = t.get(key, 0) + c * d
        return KMWWord(t)

    def degrees(self):
        return {len(us) - a for a, us in self.terms}

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("word is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, us), c in sorted(self.terms.items()):
            facs = []
            if a:
                facs.append("eta" if a == 1 else "eta^%d" % a)
            facs += ["[%d]" % u for u in us]
            mono = "*".join(facs) if facs else "1"
            if not facs:
                parts.append("%d" % c)
            else:
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else "%d*%s" % (c, mono)))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _split_terms(text):
    # split on + and - outside of [..] and <..>
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "[<":
            depth += 1
        elif ch in "]>":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            out.append(text[start:i])
            start = i
    out.append(text[start:])
    terms = []
    for t in out:
        sign = t[0] if t[0] in "+-" else ""
        body = t[len(sign):]
        if not body:
            raise ValueError("empty term in %r" % text)
        terms.append((sign, body))
    return terms


def _parse_factor(fac):
    if re.fullmatch(r"-?\d+", fac):
        return KMWWord.const(int(fac))
    m = re.fullmatch(r"eta(?:\^(\d+))?", fac)
    if m:
        return KMWWord.eta(int(m.group(1) or 1))
    m = re.fullmatch(r"\[(-?\d+)\]", fac)
    if m:
        return KMWWord.symbol(int(m.group(1)))
    m = re.fullmatch(r"<(-?\d+)>", fac)
    if m:
        return KMWWord.bracket(int(m.group(1)))
    if fac == "h":
        return KMWWord.const(2) + KMWWord.monomial(1, (-1,))
    if fac == "eps":
        return KMWWord.bracket(-1).scale(-1)
    raise ValueError("cannot parse factor %r" % fac)


class KMWModel:
    """Coordinates of K^M_n(F) x W(F) for one field model."""

    def __init__(self, F, km_divisible=False):
        # km_divisible: K^M_n(C), n >= 1, is divisible and vanishes in any
        # quotient by a nonzero integer; drop its coordinates in that case
        self.km_divisible = km_divisible and F.kind == "C"
        if F.kind == "Q":
            raise NotModeled("Milnor-Witt K-theory over %s" % F)
        if F.kind == "Fq" and F.q != F.p:
            raise NotModeled("Milnor-Witt K-theory over F_%d (q not prime)" % F.q)
        self.F = F
        if F.kind == "Fq":
            self.g = primitive_root(F.p)
            self.units = (self.g, F.p - 1)
            self.w_orders = [2, 2] if F.q % 4 == 1 else [4]
        elif F.kind == "R":
            self.units = (-1,)
            self.w_orders = [0]
        else:
            self.units = (-1,)
            self.w_orders = [2]

    def check_unit(self, u):
        if self.F.kind in ("R", "C") and u not in (1, -1):
            raise NotModeled("only the units +1 and -1 are modeled over %s" % self.F)
        return self.F.unit(u)

    def km_orders(self, n):
        F = self.F
        if n < 0:
            return []
        if n == 0:
            return [0]
        if self.km_divisible:
            return []
        if F.kind == "Fq":
            return [F.q - 1] if n == 1 else []
        if F.kind == "R":
            return [2]
        return [2] if n == 1 else []

    def orders(self, n):
        return self.km_orders(n) + self.w_orders

    def km_coords(self, units):
        F = self.F
        n = len(units)
        if n == 0:
            return [1]
        if self.km_divisible:
            return []
        if F.kind == "Fq":
            if n >= 2:
                return []
            return [_dlog(F.unit(units[0]), self.g, F.p, F.q - 1)]
        bits = [1 if u == -1 else 0 for u in units]
        if F.kind == "C" and n >= 2:
            return []
        v = 1
        for b in bits:
            v *= b
        return [v]

    def w_coords(self, expr):
        F = self.F
        if F.kind == "R":
            return [sum(c if u > 0 else -c for u, c in expr.terms.items())]
        if F.kind == "C":
            return [expr.dim() % 2]
        sq = [0, 0]
        for u, c in expr.terms.items():
            sq[F.square_bits(u)[0]] += c
        if F.q % 4 == 1:
            return [sq[0] % 2, sq[1] % 2]
        return [(sq[0] - sq[1]) % 4]

    def monomial_image(self, a, units):
        n = len(units) - a
        for u in units:
            self.check_unit(u)
        km = self.km_coords(units) if a == 0 else [0] * len(self.km_orders(n))
        form = FormExpr.integer(1)
        for u in units:
            form = form * (FormExpr.diag(u) - FormExpr.integer(1))
        w = self.w_coords(form)
        return km + w

    def image(self, word, n=None):
        if n is None:
            n = word.degree()
        vec = [0] * len(self.orders(n))
        for (a, us), c in word.terms.items():
            if len(us) - a != n:
                raise ValueError("word is not homogeneous of degree %d" % n)
            for i, x in enumerate(self.monomial_image(a, us)):
                vec[i] += c * x
        return reduce_vec(vec, self.orders(n))

    def spanning_monomials(self, n):
        """Monomials generating K^MW_n: enough eta-powers over the unit set."""
        out = []
        base = max(n, 0)
        for k in (base, base + 1):
            a = k - n
            for us in product(self.units, repeat=k):
                out.append((a, us))
        return out


def reduce_vec(vec, orders):
    return [x % d if d else x for x, d in zip(vec, orders)]


def _check_window(n):
    if not WINDOW[0] <= n <= WINDOW[1]:
        raise NotModeled("degree %d outside the supported window %s" % (n, list(WINDOW)))


def kmw_reduce(word, F):
    """Canonical coordinates of a homogeneous word in K^MW_n(F)."""
    if isinstance(word, str):
        word = KMWWord.parse(word)
    model = KMWModel(F)
    degs = word.degrees() or {0}
    if len(degs) != 1:
        raise ValueError("word is not homogeneous")
    n = degs.pop()
    _check_window(n)
    vec = model.image(word, n)
    k = len(model.km_orders(n))
    return {"degree": n, "KM": vec[:k], "W": vec[k:], "zero": not any(vec)}


def _quotient(gens, rel, extra, size):
    """(span(gens) + rel) / (rel + extra) as a finite abelian group."""
    L = lattice_basis(gens + rel, size)
    if not L:
        return FiniteAbelianGroup()
    from sympy import Matrix
    K = Matrix(size, len(L), lambda i, j: L[j][i])
    S, U, V = smith_normal_form(K)
    r = len(L)
    cols = []
    for v in rel + extra:
        if not any(v):
            continue
        w = U * Matrix(v)
        y = [w[j] // S[j, j] for j in range(r)]
        cols.append(list(V * Matrix(y)))
    if not cols:
        return FiniteAbelianGroup.from_orders([0] * r)
    X = [[cols[j][i] for j in range(len(cols))] for i in range(r)]
    S2, _, _ = smith_normal_form(X)
    diag = [int(S2[i, i]) if i < min(S2.shape) else 0 for i in range(r)]
    return FiniteAbelianGroup.from_orders(diag)


def kmw_group(F, n, ideal=None):
    """K^MW_n(F), or its quotient by the homogeneous ideal generated by `ideal`.

    Over R and C in degree n >= 1 the model drops the uniquely divisible
    part of K^M_n, so a quotient is only computed when the ideal contains a
    nonzero integer (which kills that part).
    """
    _check_window(n)
    return _kmw_group(F, n, ideal)


def _has_integer(words):
    return any(set(w.terms) == {(0, ())} for w in words)


def _kmw_group(F, n, ideal=None):
    words = [KMWWord.parse(g) if isinstance(g, str) else g for g in ideal or []]
    divisible = False
    if words and F.kind in ("R", "C") and n >= 1:
        if not _has_integer(words):
            raise NotModeled("quotient of K^MW_%d(%s) by an ideal without an integer" % (n, F))
        divisible = True
    model = KMWModel(F, km_divisible=divisible)
    orders = model.orders(n)
    size = len(orders)
    rel = [[d if i == j else 0 for i in range(size)] for j, d in enumerate(orders) if d]
    gens = [model.image(KMWWord.monomial(a, us), n) for a, us in model.spanning_monomials(n)]
    extra = []
    for g in words:
        d = g.degree()
        for a, us in model.spanning_monomials(n - d):
            extra.append(model.image(KMWWord.monomial(a, us) * g, n))
    return _quotient(gens, rel, extra, size)


def graded_family(F, ideal=None, window=WINDOW):
    out = {}
    for n in range(window[0], window[1] + 1):
        try:
            out[n] = kmw_group(F, n, ideal)
        except NotModeled as e:
            out[n] = "not modeled: %s" % e
    return out


__all__ = ["KMWWord", "KMWModel", "kmw_reduce", "kmw_group", "graded_family", "FieldModel"]
