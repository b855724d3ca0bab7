"""Field models, square classes, Milnor K-theory mod m and Grothendieck-Witt classes.

Four kinds of field are modeled through their computable invariants:

    Fq:q      finite field with q elements, q odd
    R         the real numbers (signs only)
    C         an algebraically closed field of characteristic zero
    Q:p,...   the rationals, restricted to units supported on a finite set S

>>> F = FieldModel.parse("Fq:5")
>>> units_mod_squares(F).representatives
(1, 2)
>>> tame_symbol(7, (3, 7))
3
"""
import re
from fractions import Fraction
from itertools import product
from math import gcd

from sympy import factorint, isprime, primitive_root

from .groups import FiniteAbelianGroup


class NotModeled(Exception):
    """Raised when a question lies outside what the models can answer."""


class FieldModel:
    KINDS = ("Fq", "R", "C", "Q")

    def __init__(self, kind, q=None, S=()):
        if kind not in self.KINDS:
            raise ValueError("unknown field kind %r" % kind)
        self.kind = kind
        self.q = None
        self.p = None
        self.S = ()
        if kind == "Fq":
            q = int(q)
            fac = factorint(q)
            if q < 3 or len(fac) != 1:
                raise ValueError("q must be a prime power, got %d" % q)
            p = next(iter(fac))
            if p == 2:
                raise ValueError("characteristic 2 is excluded")
            self.q, self.p = q, p
        elif kind == "Q":
            S = tuple(sorted(set(int(x) for x in S)))
            for x in S:
                if not isprime(x):
                    raise ValueError("%d is not prime" % x)
            self.S = S

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("R", "C"):
            return cls(text)
        if text.startswith("Fq:"):
            return cls("Fq", q=int(text[3:]))
        if text.startswith("Q:") or text == "Q":
            body = text[2:]
            S = [int(x) for x in body.split(",") if x.strip()]
            return cls("Q", S=S)
        raise ValueError("cannot parse field %r" % text)

    def __str__(self):
        if self.kind == "Fq":
            return "Fq:%d" % self.q
        if self.kind == "Q":
            return "Q:" + ",".join(str(p) for p in self.S)
        return self.kind

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, FieldModel) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    @property
    def formally_real(self):
        return self.kind in ("R", "Q")

    @property
    def contains_sqrt_minus1(self):
        if self.kind == "Fq":
            return self.q % 4 == 1
        return self.kind == "C"

    @property
    def odd_S(self):
        return tuple(p for p in self.S if p != 2)

    # -- units ---------------------------------------------------------------

    def unit(self, x):
        """Validate and normalize a unit of the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Fq":
            if self.q != self.p:
                raise NotModeled("explicit units of F_%d (q not prime)" % self.q)
            x = Fraction(x)
            if x.denominator % self.p == 0:
                raise ValueError("denominator divisible by the characteristic")
            u = x.numerator * pow(x.denominator, -1, self.p) % self.p
            if u == 0:
                raise ValueError("0 is not a unit")
            return u
        x = Fraction(x)
        if x == 0:
            raise ValueError("0 is not a unit")
        if self.kind == "Q":
            for part in (x.numerator, x.denominator):
                for p in factorint(abs(part)):
                    if p not in self.S:
                        raise ValueError("unit %s not supported on S=%s" % (x, list(self.S)))
        return x

    def mul(self, a, b):
        if self.kind == "Fq":
            return a * b % self.p
        return a * b

    def neg_one(self):
        return self.unit(-1)

    def square_bits(self, u):
        """Coordinates of u in F^x/2 (a tuple of bits)."""
        u = self.unit(u)
        if self.kind == "Fq":
            return (0 if pow(u, (self.p - 1) // 2, self.p) == 1 else 1,)
        if self.kind == "R":
            return (1 if u < 0 else 0,)
        if self.kind == "C":
            return ()
        bits = [1 if u < 0 else 0]
        for p in self.S:
            bits.append(valuation(u, p) % 2)
        return tuple(bits)


def valuation(x, p):
    x = Fraction(x)
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class SquareClassGroup:
    def __init__(self, field, rank, representatives, generators):
        self.field = field
        self.rank = rank
        self.representatives = tuple(representatives)
        self.generators = tuple(generators)

    def reduce(self, u):
        """Canonical representative of the square class of u."""
        bits = self.field.square_bits(u)
        return self._by_bits[bits]

    @property
    def _by_bits(self):
        return {self.field.square_bits(r): r for r in self.representatives}

    def to_json(self):
        return {"rank": self.rank, "representatives": [str(r) for r in self.representatives],
                "generators": [str(g) for g in self.generators]}


def nonsquare(F):
    """Smallest positive non-square in F_q (q prime)."""
    for u in range(2, F.p):
        if pow(u, (F.p - 1) // 2, F.p) != 1:
            return u
    raise AssertionError


def units_mod_squares(F):
    if F.kind == "Fq":
        if F.q != F.p:
            return SquareClassGroup(F, 1, ["1", "g"], ["g"])
        u = nonsquare(F)
        return SquareClassGroup(F, 1, [1, u], [u])
    if F.kind == "R":
        return SquareClassGroup(F, 1, [1, -1], [-1])
    if F.kind == "C":
        return SquareClassGroup(F, 0, [1], [])
    gens = [-1] + list(F.S)
    reps = []
    for bits in product((0, 1), repeat=len(gens)):
        r = 1
        for b, g in zip(bits, gens):
            if b:
                r *= g
        reps.append(r)
    reps.sort(key=lambda r: (abs(r), r < 0))
    return SquareClassGroup(F, len(gens), reps, gens)


# -- Milnor K-theory mod m ----------------------------------------------------

def tame_symbol(p, entries, S=None):
    """Tame symbol of {a, b} at the odd prime p, as an integer mod p.

    Convention: (-1)^(v(a)v(b)) a^v(b) b^(-v(a)) reduced mod p.
    """
    if p == 2:
        raise NotModeled("tame symbol at p = 2 is not modeled")
    if not isprime(p):
        raise ValueError("%d is not prime" % p)
    a, b = (Fraction(x) for x in entries)
    if a == 0 or b == 0:
        raise ValueError("entries must be units")
    if S is not None:
        if p not in S:
            raise ValueError("p must lie in S")
        for x in (a, b):
            for part in (x.numerator, x.denominator):
                for r in factorint(abs(part)):
                    if r not in S:
                        raise ValueError("entry %s not supported on S" % x)
    va, vb = valuation(a, p), valuation(b, p)
    u = Fraction(-1) ** (va * vb) * a ** vb / b ** va
    return u.numerator * pow(u.denominator, -1, p) % p


def _dlog(x, g, p, d):
    # exponent k mod d with x^((p-1)/d) = g^(k(p-1)/d)
    e = (p - 1) // d
    target = pow(x, e, p)
    base = pow(g, e, p)
    acc = 1
    for k in range(d):
        if acc == target:
            return k
        acc = acc * base % p
    raise AssertionError("discrete log failed")


def _km_summands(F, n, m):
    """Cyclic summands (order, label) of K^M_n(F)/m."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return [(m, "1")]
    if F.kind == "Fq":
        if n >= 2:
            return []
        g = "g" if F.q != F.p else str(primitive_root(F.p))
        return [(gcd(F.q - 1, m), "[%s]" % g)]
    if F.kind == "R":
        return [(gcd(2, m), "rho^%d" % n if n > 1 else "rho")]
    if F.kind == "C":
        return []
    real = (gcd(2, m), "[-1]" * n)
    if n == 1:
        return [real] + [(m, "[%d]" % p) for p in F.S]
    if n == 2:
        out = [real]
        for p in F.odd_S:
            out.append((gcd(p - 1, m), "[%d][%d]" % (primitive_root(p), p)))
        return out
    return [real]


def milnor_k_mod(F, n, m):
    """K^M_n(F)/m as a finite abelian group with symbol labels."""
    summ = _km_summands(F, n, m)
    return FiniteAbelianGroup.from_orders([d for d, _ in summ], [l for _, l in summ])


def milnor_k_orders(F, n, m):
    return [d for d, _ in _km_summands(F, n, m)]


def symbol_vector(F, entries, m):
    """Coordinates of the symbol {u1,...,un} in the summands of K^M_n(F)/m."""
    n = len(entries)
    summ = _km_summands(F, n, m)
    if n == 0:
        return [1]
    us = [F.unit(u) for u in entries]
    if F.kind == "Fq":
        if n >= 2:
            return []
        d = summ[0][0]
        if F.q != F.p:
            raise NotModeled("explicit units of F_%d" % F.q)
        return [_dlog(us[0], primitive_root(F.p), F.p, d) if d > 1 else 0]
    if F.kind == "C":
        return []
    neg = 1
    for u in us:
        neg *= 1 if u < 0 else 0
    vec = [neg % summ[0][0]]
    if F.kind == "R":
        return vec
    if n == 1:
        return vec + [valuation(us[0], p) % m for p in F.S]
    if n == 2:
        for (d, _), p in zip(summ[1:], F.odd_S):
            t = tame_symbol(p, us, F.S)
            vec.append(_dlog(t, primitive_root(p), p, d) if d > 1 else 0)
        return vec
    return vec


def symbol_is_zero(F, entries, m):
    vec = symbol_vector(F, entries, m)
    orders = milnor_k_orders(F, len(entries), m)
    return all(v % d == 0 for v, d in zip(vec, orders))


# -- quadratic forms ------------------------------------------------------------

class FormExpr:
    """Formal Z-linear combination of rank-one forms <u>.

    >>> str(FormExpr.parse("<1,-1> + 2<3>"))
    '<-1> + <1> + 2<3>'
    """

    def __init__(self, terms=None):
        t = {}
        for u, c in (terms or {}).items():
            u = Fraction(u)
            if u == 0:
                raise ValueError("0 is not a unit")
            if c:
                t[u] = t.get(u, 0) + int(c)
        self.terms = {u: c for u, c in t.items() if c}

    @classmethod
    def diag(cls, *units):
        t = {}
        for u in units:
            u = Fraction(u)
            t[u] = t.get(u, 0) + 1
        return cls(t)

    @classmethod
    def integer(cls, n):
        return cls({1: n})

    @classmethod
    def hyperbolic(cls):
        return cls.diag(1, -1)

    @classmethod
    def epsilon(cls):
        return cls({-1: -1})

    @classmethod
    def n_epsilon(cls, n):
        # sum of <(-1)^k> for k < n
        return cls({1: (n + 1) // 2, -1: n // 2})

    @classmethod
    def parse(cls, text):
        """Parse sums of products like "2<1,3> - <2>*h + 3h + eps + 5_eps + 4"."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty form expression")
        out = cls()
        for sign, term in re.findall(r"([+-]?)([^+-]+)", _protect(text)):
            prod = cls.integer(1)
            for fac in term.split("*"):
                prod = prod * cls._factor(fac.replace("~", "-"), text)
            out = out + prod.scale(-1 if sign == "-" else 1)
        return out

    @classmethod
    def _factor(cls, fac, text):
        m = re.fullmatch(r"(\d*)(?:(<[^>]*>)|n_eps:(\d+)|(\d+)_eps|(eps)|(h))?", fac)
        if not m or not fac:
            raise ValueError("cannot parse form expression %r" % text)
        coef, diag, ne1, ne2, eps, h = m.groups()
        if ne2 is not None:
            # "5_eps": the digits belong to n
            return cls.n_epsilon(int(coef + ne2) if coef else int(ne2))
        if diag:
            term = cls.diag(*[Fraction(x) for x in diag[1:-1].split(",")])
        elif ne1:
            term = cls.n_epsilon(int(ne1))
        elif eps:
            term = cls.epsilon()
        elif h:
            term = cls.hyperbolic()
        else:
            return cls.integer(int(coef))
        return term.scale(int(coef)) if coef else term

    def scale(self, k):
        return FormExpr({u: k * c for u, c in self.terms.items()})

    def __add__(self, other):
        t = dict(self.terms)
        for u, c in other.terms.items():
            t[u] = t.get(u, 0) + c
        return FormExpr(t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        t = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                t[u * v] = t.get(u * v, 0) + c * d
        return FormExpr(t)

    __rmul__ = __mul__

    def dim(self):
        return sum(self.terms.values())

    def units(self):
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for u in sorted(self.terms):
            c = self.terms[u]
            s = "<%s>" % u
            parts.append(("%d%s" % (c, s) if c != 1 else s) if c > 0 else
                         ("-%d%s" % (-c, s) if c != -1 else "-" + s))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _protect(text):
    # minus signs inside <...> are part of a unit, not a term separator
    out, depth = [], 0
    for c in text:
        depth += (c == "<") - (c == ">")
        out.append("~" if c == "-" and depth else c)
    return "".join(out)


def hilbert_symbol(a, b, p):
    """(a,b)_p = 1 iff a x^2 + b y^2 = z^2 has a nontrivial solution over Q_p.

    p = 0 stands for the real place.
    """
    a, b = Fraction(a), Fraction(b)
    if p == 0:
        return -1 if (a < 0 and b < 0) else 1
    # work with integers in the same square classes
    a = a.numerator * a.denominator
    b = b.numerator * b.denominator
    al, bl = valuation(a, p), valuation(b, p)
    u, v = a // p ** al, b // p ** bl
    if p != 2:
        e = (al * bl * ((p - 1) // 2)) % 2
        s = (-1) ** e
        if bl % 2:
            s *= _legendre(u, p)
        if al % 2:
            s *= _legendre(v, p)
        return s

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2
    e = eps(u) * eps(v) + al * omega(v) + bl * omega(u)
    return (-1) ** (e % 2)


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


class GWClass:
    """Element of GW(F): complete invariants plus a representative expression."""

    def __init__(self, field, expr):
        self.field = field
        self.expr = expr
        for u in expr.terms:
            field.unit(u)
        self.invariants = _invariants(field, expr)

    @property
    def dim(self):
        return self.invariants[0]

    def __eq__(self, other):
        return self.field == other.field and self.invariants == other.invariants

    def __hash__(self):
        return hash((self.field, self.invariants))

    def __add__(self, other):
        return GWClass(self.field, self.expr + other.expr)

    def __neg__(self):
        return GWClass(self.field, -self.expr)

    def __sub__(self, other):
        return GWClass(self.field, self.expr - other.expr)

    def __mul__(self, other):
        if isinstance(other, int):
            return GWClass(self.field, self.expr.scale(other))
        return GWClass(self.field, self.expr * other.expr)

    def is_zero(self):
        return self == GWClass(self.field, FormExpr())

    def to_json(self):
        keys = {"Fq": ("dim", "disc"), "R": ("dim", "signature"), "C": ("dim",),
                "Q": ("dim", "signature", "disc", "hasse")}[self.field.kind]
        out = {}
        for k, v in zip(keys, self.invariants):
            out[k] = [[p, s] for p, s in v] if k == "hasse" else (str(v) if k == "disc" else v)
        return out

    def __repr__(self):
        return "GW%r" % (self.invariants,)


def _invariants(F, e):
    d = e.dim()
    if F.kind == "C":
        return (d,)
    if F.kind == "R":
        return (d, sum(c if u > 0 else -c for u, c in e.terms.items()))
    sq = units_mod_squares(F)
    det_bits = [0] * sq.rank
    for u, c in e.terms.items():
        for i, b in enumerate(F.square_bits(u)):
            det_bits[i] = (det_bits[i] + b * c) % 2
    det = {F.square_bits(r): r for r in sq.representatives}[tuple(det_bits)]
    if F.kind == "Fq":
        return (d, det)
    sig = sum(c if u > 0 else -c for u, c in e.terms.items())
    hasse = tuple((p, _virtual_hasse(F, e, p)) for p in F.S)
    return (d, sig, det, hasse)


def _virtual_hasse(F, e, p):
    # write e = Q - N h with Q an honest diagonal form, then strip the h's;
    # Hilbert symbols only see square classes, so equal entries are grouped
    counts, N = {}, 0
    for u, c in e.terms.items():
        v = u if c > 0 else -u
        counts[v] = counts.get(v, 0) + abs(c)
        if c < 0:
            N += -c
    units = sorted(counts)
    s = 1
    for i, u in enumerate(units):
        n = counts[u]
        if (n * (n - 1) // 2) % 2:
            s *= hilbert_symbol(u, u, p)
        for v in units[i + 1:]:
            if (n * counts[v]) % 2:
                s *= hilbert_symbol(u, v, p)
    # Q = e + N h; undo the h's one at a time: s(x + h) = s(x) (det x, -1),
    # where det(e + k h) = det(Q) (-1)^(N - k)
    det = Fraction(1)
    for u in units:
        if counts[u] % 2:
            det *= u
    if N % 2:
        s *= hilbert_symbol(det, -1, p)
    if (N * (N + 1) // 2) % 2:
        s *= hilbert_symbol(-1, -1, p)
    return s


def gw_normal_form(F, expr):
    if isinstance(expr, str):
        expr = FormExpr.parse(expr)
    return GWClass(F, expr)


def gw_generators(F):
    """Rank-one forms <r> for the square-class representatives."""
    return [FormExpr.diag(r) for r in units_mod_squares(F).representatives]


def hyperbolic_annihilator_check(F, alpha, bound):
    """Check {beta : beta * alpha * h = 0} = {beta : dim beta = 0} on a box.

    beta runs over integer combinations of the rank-one generators with
    coefficients in [-bound, bound].
    """
    if isinstance(alpha, str):
        alpha = FormExpr.parse(alpha)
    if alpha.dim() == 0:
        raise ValueError("lemma hypothesis dim != 0 violated")
    gens = gw_generators(F)
    ah = GWClass(F, alpha * FormExpr.hyperbolic())
    zero = GWClass(F, FormExpr())
    checked = 0
    for coeffs in product(range(-bound, bound + 1), repeat=len(gens)):
        beta = FormExpr()
        for c, g in zip(coeffs, gens):
            beta = beta + g.scale(c)
        killed = (GWClass(F, beta) * ah) == zero
        checked += 1
        if killed != (beta.dim() == 0):
            return {"pass": False, "checked": checked, "counterexample": str(beta)}
    return {"pass": True, "checked": checked, "counterexample": None}
