"""Homotopy groups of the motivic sphere in stems 0, 1, 2 and of Moore spectra.

Two layers live here.  `GroupExpression` is a symbolic direct sum of atoms
(Z, Z/m, K^M_n/m, ...) that can be evaluated at any field model where the
atoms make sense.  `StemGroup` is a concrete presentation of pi_{k,w} over a
field model with explicit Milnor-Witt coordinates, used to compute quotients
and torsion under the action of an element alpha.

Stem 1 is presented as K^MW_{2-w}{nu} + K^MW_{-w}{eta_top} modulo eta*nu,
2*eta_top and eta^2*eta_top - 12*nu, valid for w > -2.  Stem 2 is
k^M_{4-w}{nu^2} for w >= 2.
"""
import json
from math import gcd

from sympy import Matrix

from .fields import FieldModel, FormExpr, NotModeled, milnor_k_mod, units_mod_squares
from .groups import FiniteAbelianGroup, integer_kernel, lattice_basis, smith_normal_form
from .milnor_witt import KMWModel, KMWWord, _kmw_group, reduce_vec


class NotDetermined(NotModeled):
    """The requested group is outside the range where it is known."""


# ---------------------------------------------------------------- expressions

ATOMS = ("Z", "Zm", "KM", "Tors", "Ideal", "H", "GW", "W", "KMW")


class GroupExpression:
    """Formal direct sum of atoms.

    Each atom is a dict such as {"atom": "KM", "n": 2, "mod": 24, "label": "nu"}.
    `split` records whether the sum is known to be a direct sum of groups
    (True), known not to be (False) or unknown (None); when it is not True
    the atoms are the graded pieces of a filtration.
    """

    def __init__(self, atoms=(), split=True, note=""):
        for a in atoms:
            if a.get("atom") not in ATOMS:
                raise ValueError("unknown atom %r" % a)
        self.atoms = [dict(a) for a in atoms]
        self.split = split
        self.note = note

    @classmethod
    def zero(cls, note=""):
        return cls([], True, note)

    def __add__(self, other):
        split = self.split and other.split
        return GroupExpression(self.atoms + other.atoms, split, "")

    def to_json(self):
        out = {"sum": self.atoms}
        if self.split is not True:
            out["split"] = self.split
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["sum"], obj.get("split", True), obj.get("note", ""))

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(atom_str(a) for a in self.atoms)

    __repr__ = __str__


def atom_str(a):
    k = a["atom"]
    if k == "Z":
        s = "Z"
    elif k == "Zm":
        s = "Z/%d" % a["mod"]
    elif k == "KM":
        s = "KM(%d)/%d" % (a["n"], a["mod"]) if a.get("mod") else "KM(%d)" % a["n"]
    elif k == "Tors":
        s = "Tors(%d, KM(%d))" % (a["mod"], a["n"])
    elif k == "Ideal":
        s = "I^%d" % a["n"]
    elif k == "H":
        s = "H^{%d,%d}(Z/%d)" % (a["p"], a["q"], a["mod"])
    elif k == "KMW":
        s = "KMW(%d)" % a["n"]
        if a.get("ideal"):
            s += "/(%s)" % ",".join(a["ideal"])
    else:
        s = k
    if a.get("label"):
        s += "{%s}" % a["label"]
    return s


def atom(kind, label=None, **kw):
    d = {"atom": kind}
    d.update(kw)
    if label:
        d["label"] = label
    return d


class Residue:
    """Partial evaluation: the evaluated part plus the atoms that were not."""

    def __init__(self, evaluated, pending, reasons):
        self.evaluated = evaluated
        self.pending = pending
        self.reasons = reasons

    def to_json(self):
        return {"evaluated": self.evaluated.to_json(),
                "residue": [atom_str(a) for a in self.pending],
                "reasons": self.reasons}

    def __str__(self):
        return "%s + [%s]" % (self.evaluated, ", ".join(atom_str(a) for a in self.pending))


def _tors_km(F, n, m):
    # m-torsion of K^M_n(F)
    if n == 0:
        return FiniteAbelianGroup()
    if F.kind == "Fq":
        return FiniteAbelianGroup.cyclic(gcd(m, F.q - 1)) if n == 1 else FiniteAbelianGroup()
    if F.kind == "R":
        return FiniteAbelianGroup.cyclic(gcd(m, 2))
    if F.kind == "C":
        # mu_m in degree 1; uniquely divisible above
        return FiniteAbelianGroup.cyclic(m) if n == 1 else FiniteAbelianGroup()
    if n == 1:
        return FiniteAbelianGroup.cyclic(gcd(m, 2))
    raise NotModeled("torsion in K^M_%d(%s)" % (n, F))


def _ideal_power(F, n):
    if n == 0:
        return _witt(F)
    if F.kind == "Fq":
        return FiniteAbelianGroup.cyclic(2) if n == 1 else FiniteAbelianGroup()
    if F.kind == "R":
        return FiniteAbelianGroup.from_orders([0])
    if F.kind == "C":
        return FiniteAbelianGroup()
    raise NotModeled("I^%d(%s)" % (n, F))


def _witt(F):
    if F.kind == "Fq":
        return FiniteAbelianGroup.from_orders([2, 2] if F.q % 4 == 1 else [4])
    if F.kind == "R":
        return FiniteAbelianGroup.from_orders([0])
    if F.kind == "C":
        return FiniteAbelianGroup.cyclic(2)
    raise NotModeled("W(%s)" % F)


def eval_atom(a, F):
    k = a["atom"]
    if k == "Z":
        return FiniteAbelianGroup.from_orders([0])
    if k == "Zm":
        return FiniteAbelianGroup.cyclic(a["mod"])
    if k == "KM":
        if not a.get("mod"):
            if a["n"] == 0:
                return FiniteAbelianGroup.from_orders([0])
            raise NotModeled("integral K^M_%d(%s)" % (a["n"], F))
        if a["n"] < 0:
            return FiniteAbelianGroup()
        return milnor_k_mod(F, a["n"], a["mod"])
    if k == "Tors":
        return _tors_km(F, a["n"], a["mod"])
    if k == "Ideal":
        return _ideal_power(F, a["n"])
    if k == "H":
        from .cohomology import mot_cohomology_point
        return mot_cohomology_point(F, a["p"], a["q"], a["mod"])
    if k == "W":
        return _witt(F)
    if k == "GW":
        return _kmw_group(F, 0)
    if k == "KMW":
        try:
            return _kmw_group(F, a["n"], a.get("ideal"))
        except NotModeled:
            # negative degrees are W; modulo (2, eta^2) this is W/I = Z/2 in
            # degree -1 and 0 below, for every field
            if a["n"] < 0 and sorted(a.get("ideal") or []) == ["2", "eta^2"]:
                return FiniteAbelianGroup.cyclic(2) if a["n"] == -1 else FiniteAbelianGroup()
            raise
    raise ValueError(k)


def eval_group(e, F):
    """Evaluate atom by atom; unmodeled atoms come back as a Residue."""
    if isinstance(F, str):
        F = FieldModel.parse(F)
    total = FiniteAbelianGroup()
    pending, reasons = [], []
    for a in e.atoms:
        try:
            g = eval_atom(a, F)
        except NotModeled as exc:
            pending.append(a)
            reasons.append(str(exc))
            continue
        if a.get("label"):
            g = FiniteAbelianGroup(g.factors, [_relabel(a["label"], x, len(g.factors))
                                               for x in g.generators])
        total = total + g
    if pending:
        return Residue(total, pending, reasons)
    return total


def _relabel(label, gen, count):
    return label if count == 1 else "%s.%s" % (label, gen)


# ---------------------------------------------------------------- sphere

def pi_sphere(k, w):
    """The known description of pi_{k,w} of the sphere (stems 0, 1, 2)."""
    stem = k - w
    if stem < 0:
        return GroupExpression.zero("below the connectivity range")
    if stem == 0:
        if w == 0:
            return GroupExpression([atom("GW", "1")])
        return GroupExpression([atom("KMW", "eta^%d" % w if w > 0 else "1", n=-w)])
    if stem == 1:
        if w <= -2:
            raise NotDetermined("pi_{%d,%d}: stem 1 is only determined for weight > -2" % (k, w))
        if w == 0:
            return GroupExpression([atom("Zm", "eta_top", mod=2),
                                    atom("KM", "[u]*eta*eta_top", n=1, mod=2),
                                    atom("KM", "nu", n=2, mod=24)], split=True,
                                   note="split as abelian groups, not as GW-modules")
        if w == 2:
            return GroupExpression([atom("Zm", "nu", mod=24)])
        if w >= 3:
            return GroupExpression.zero()
        return GroupExpression([atom("KM", "nu", n=2 - w, mod=24),
                                atom("KMW", "eta_top", n=-w, ideal=["2", "eta^2"])],
                               split=None, note="extension of the second by the first")
    if stem == 2:
        if w > 4:
            return GroupExpression.zero()
        if w <= 1:
            raise NotDetermined("pi_{%d,%d}: stem 2 is only determined for weight > 1" % (k, w))
        if w == 4:
            return GroupExpression([atom("Zm", "nu^2", mod=2)])
        return GroupExpression([atom("KM", "nu^2", n=4 - w, mod=2)])
    raise NotDetermined("pi_{%d,%d}: stems above 2 are not determined" % (k, w))


class StemGroup:
    """Concrete presentation of pi_{k,w} of the sphere over a field model.

    Elements are tuples of Milnor-Witt words, one per generator slot:
    (x,) in stem 0, (a, b) for a*nu + b*eta_top in stem 1, (c,) for c*nu^2
    in stem 2.  `image` maps an element to ambient coordinates; the group is
    the span of the generators modulo `relations`.
    """

    def __init__(self, F, k, w):
        pi_sphere(k, w)  # range check
        self.F, self.k, self.w = F, k, w
        self.stem = stem = k - w
        if stem < 0:
            self.model = None
            self.slots = []
            self.orders = []
            extra = []
        elif stem == 0:
            n = -w
            if n >= 1 and F.kind in ("R", "C"):
                raise NotModeled("K^MW_%d(%s) has a uniquely divisible part" % (n, F))
            self.model = KMWModel(F)
            self.slots = [n]
            self.orders = self.model.orders(n)
            extra = []
        elif stem == 1:
            self.model = KMWModel(F, km_divisible=True)
            m = self.model
            self.slots = [2 - w, -w]
            nk = len(m.km_orders(2 - w))
            self._nk = nk
            self.orders = m.km_orders(2 - w) + m.orders(-w)
            extra = []
            for i in range(nk):
                extra.append([24 if j == i else 0 for j in range(len(self.orders))])
            for a, us in m.spanning_monomials(-w):
                extra.append(self.image((None, KMWWord.monomial(a, us, 2))))
            for a, us in m.spanning_monomials(2 - w):
                c = KMWWord.monomial(a, us)
                extra.append(self.image((c.scale(-12), c * KMWWord.eta(2))))
        elif stem == 2:
            self.model = KMWModel(F, km_divisible=True)
            n = 4 - w
            self.slots = [n]
            self.orders = self.model.km_orders(n) if n >= 0 else []
            extra = [[2 if j == i else 0 for j in range(len(self.orders))]
                     for i in range(len(self.orders))]
        else:
            raise NotDetermined("stem %d" % stem)
        size = len(self.orders)
        self.relations = [[d if i == j else 0 for i in range(size)]
                          for j, d in enumerate(self.orders) if d] + extra
        self.generators = self._generators()

    def _generators(self):
        out = []
        if self.model is None:
            return out
        for s, n in enumerate(self.slots):
            if self.stem == 2 and n < 0:
                continue
            for a, us in self.model.spanning_monomials(n):
                if self.stem == 2 and a:
                    continue
                elem = [None] * len(self.slots)
                elem[s] = KMWWord.monomial(a, us)
                out.append(tuple(elem))
        return out

    def image(self, elem):
        vec = [0] * len(self.orders)
        m = self.model
        if self.stem == 0:
            if elem[0] is not None:
                vec = m.image(elem[0], self.slots[0])
        elif self.stem == 1:
            a, b = elem
            if a is not None:
                full = m.image(a, self.slots[0])
                vec[:self._nk] = full[:self._nk]
            if b is not None:
                vb = m.image(b, self.slots[1])
                for i, x in enumerate(vb):
                    vec[self._nk + i] += x
        else:
            c = elem[0]
            if c is not None and self.orders:
                for (e, us), coef in c.terms.items():
                    if e:
                        continue  # eta*nu^2 = 0
                    for i, x in enumerate(m.km_coords(us)):
                        vec[i] += coef * x
        return reduce_vec(vec, self.orders)

    def group(self):
        gens = [self.image(g) for g in self.generators]
        return _span_quotient(gens, self.relations, len(self.orders))

    def is_zero(self, elem):
        return in_lattice(self.image(elem), self.relations, len(self.orders))

    def equal(self, e1, e2):
        v = [x - y for x, y in zip(self.image(e1), self.image(e2))]
        return in_lattice(v, self.relations, len(self.orders))

    def act(self, word, elem):
        return tuple(None if x is None else word * x for x in elem)


def _span_quotient(gens, rel, size):
    """(span(gens) + rel) / rel as a finite abelian group."""
    L = lattice_basis(list(gens) + list(rel), size)
    if not L:
        return FiniteAbelianGroup()
    K = Matrix(size, len(L), lambda i, j: L[j][i])
    S, U, V = smith_normal_form(K)
    r = len(L)
    cols = []
    for v in rel:
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


def in_lattice(v, rel, size):
    """Whether v lies in the Z-span of rel."""
    if not any(v):
        return True
    B = lattice_basis(rel, size)
    if not B:
        return False
    M = Matrix(size, len(B), lambda i, j: B[j][i])
    S, U, _ = smith_normal_form(M)
    w = U * Matrix(v)
    for j in range(size):
        s = int(S[j, j]) if j < len(B) else 0
        if (s == 0 and w[j] != 0) or (s and w[j] % s):
            return False
    return True


def hom_cokernel_kernel(src, tgt, word):
    """Cokernel of word*: src -> tgt and kernel of it, as groups."""
    images = [tgt.image(src.act(word, g)) for g in src.generators]
    tgens = [tgt.image(g) for g in tgt.generators]
    coker = _span_quotient(tgens, tgt.relations + images, len(tgt.orders))
    # kernel: x with sum x_i images_i in the relation lattice of tgt
    size = len(tgt.orders)
    Rb = lattice_basis(tgt.relations, size)
    ng = len(images)
    if ng == 0:
        return coker, FiniteAbelianGroup()
    if size == 0:
        kx = [[1 if i == j else 0 for i in range(ng)] for j in range(ng)]
    else:
        big = [[images[j][i] for j in range(ng)] + [-b[i] for b in Rb] for i in range(size)]
        kx = [v[:ng] for v in integer_kernel(big, ng + len(Rb))]
    sgens = [src.image(g) for g in src.generators]
    ssize = len(src.orders)
    kvecs = [[sum(x[j] * sgens[j][i] for j in range(ng)) for i in range(ssize)] for x in kx]
    kernel = _span_quotient(kvecs, src.relations, ssize)
    return coker, kernel


# ---------------------------------------------------------------- actions

class Pi1Element:
    """a*nu + b*eta_top + c*eta*eta_top with K^M coefficient words.

    Coefficients are KMWWord objects without eta, read in K^M; nu-coefficients
    live modulo 24 and the other two modulo 2.
    """

    def __init__(self, nu=None, eta_top=None, eta_eta_top=None):
        self.nu = _km_normal(nu or KMWWord(), 24)
        self.eta_top = _km_normal(eta_top or KMWWord(), 2)
        self.eta_eta_top = _km_normal(eta_eta_top or KMWWord(), 2)

    @classmethod
    def parse(cls, text):
        """Parse "a*nu + b*eta_top + c*eta*eta_top" with symbol-word coefficients."""
        parts = {"nu": KMWWord(), "eta_top": KMWWord(), "eta_eta_top": KMWWord()}
        from .milnor_witt import _split_terms
        for sign, body in _split_terms(text.replace(" ", "")):
            facs = body.split("*")
            if facs[-2:] == ["eta", "eta_top"]:
                key, facs = "eta_eta_top", facs[:-2]
            elif facs[-1] in ("eta_top", "nu"):
                key, facs = facs[-1], facs[:-1]
            else:
                raise ValueError("term %r names no generator" % body)
            coef = KMWWord.parse("*".join(facs) or "1")
            if any(a for a, _ in coef.terms):
                raise ValueError("coefficients are Milnor K-theory words")
            parts[key] = parts[key] + (coef.scale(-1) if sign == "-" else coef)
        return cls(**parts)

    def __add__(self, other):
        return Pi1Element(self.nu + other.nu, self.eta_top + other.eta_top,
                          self.eta_eta_top + other.eta_eta_top)

    def scale(self, k):
        return Pi1Element(self.nu.scale(k), self.eta_top.scale(k), self.eta_eta_top.scale(k))

    def is_zero(self):
        return not (self.nu.terms or self.eta_top.terms or self.eta_eta_top.terms)

    def __eq__(self, other):
        return (self - other).is_zero()

    def __sub__(self, other):
        return self + other.scale(-1)

    def __str__(self):
        out = []
        for key, name in (("nu", "nu"), ("eta_top", "eta_top"), ("eta_eta_top", "eta*eta_top")):
            c = getattr(self, key)
            if not c.terms:
                continue
            s = str(c)
            if s == "1":
                out.append(name)
            elif len(c.terms) == 1:
                out.append("%s*%s" % (s, name))
            else:
                out.append("(%s)*%s" % (s, name))
        return " + ".join(out) if out else "0"

    __repr__ = __str__

    def words(self):
        """(nu-slot word, eta_top-slot word) for a StemGroup."""
        return (self.nu, self.eta_top + KMWWord.eta() * self.eta_eta_top)


def _km_normal(word, mod):
    # [1] = 0; [-1] has order 2; coefficients reduced mod `mod`
    t = {}
    for (a, us), c in word.terms.items():
        if 1 in us:
            continue
        m = 2 if -1 in us else mod
        c %= m
        if c:
            t[(a, us)] = c
    return KMWWord(t)


def gw_action_pi1(F, alpha, x):
    """Act by a form on an element of the stem-1 presentation.

    <u>nu = nu, <u>eta*eta_top = eta*eta_top + 12[u]nu and
    <u>eta_top = eta_top + [u]eta*eta_top, extended additively.
    """
    if isinstance(alpha, str):
        alpha = FormExpr.parse(alpha)
    if isinstance(x, str):
        x = Pi1Element.parse(x)
    out = Pi1Element()
    for u, c in alpha.terms.items():
        F.unit(u)
        if u.denominator != 1:
            raise NotModeled("non-integral unit %s" % u)
        uw = KMWWord.symbol(int(u))
        moved = Pi1Element(x.nu + (x.eta_eta_top * uw).scale(12),
                           x.eta_top,
                           x.eta_eta_top + x.eta_top * uw)
        out = out + moved.scale(c)
    return out


# ---------------------------------------------------------------- alpha

class AlphaDescriptor:
    """An endomorphism alpha of the sphere used to form a Moore spectrum."""

    KINDS = ("gw", "eta", "integer", "nh", "neps", "2+11h")

    def __init__(self, kind, value=None):
        if kind not in self.KINDS:
            raise ValueError("unknown alpha kind %r" % kind)
        if kind == "eta" and (not isinstance(value, int) or value < 1):
            raise ValueError("eta power must be >= 1")
        if kind in ("integer", "nh", "neps") and not isinstance(value, int):
            raise ValueError("%s needs an integer" % kind)
        if kind == "neps" and value < 1:
            raise ValueError("n_eps needs n >= 1")
        self.kind = kind
        self.value = value

    @classmethod
    def parse(cls, text):
        """Accepts "eta^3", "n_eps:6", "nh:4", "int:24", "2+11h" or a form expression."""
        t = text.replace(" ", "")
        if t == "2+11h":
            return cls("2+11h")
        if t == "eta":
            return cls("eta", 1)
        if t.startswith("eta^"):
            return cls("eta", int(t[4:]))
        for prefix, kind in (("n_eps:", "neps"), ("neps:", "neps"), ("nh:", "nh"), ("int:", "integer")):
            if t.startswith(prefix):
                return cls(kind, int(t[len(prefix):]))
        if t.lstrip("-").isdigit():
            return cls("integer", int(t))
        return cls("gw", FormExpr.parse(t))

    @property
    def bidegree(self):
        return (self.value, self.value) if self.kind == "eta" else (0, 0)

    def form(self):
        """The GW element, or None for eta powers."""
        k, v = self.kind, self.value
        if k == "gw":
            return v
        if k == "integer":
            return FormExpr.integer(v)
        if k == "nh":
            return FormExpr.hyperbolic().scale(v)
        if k == "neps":
            return FormExpr.n_epsilon(v)
        if k == "2+11h":
            return FormExpr.integer(2) + FormExpr.hyperbolic().scale(11)
        return None

    def word(self):
        if self.kind == "eta":
            return KMWWord.eta(self.value)
        out = KMWWord()
        for u, c in self.form().terms.items():
            if u.denominator != 1:
                raise NotModeled("non-integral unit %s" % u)
            out = out + KMWWord.bracket(int(u)).scale(c)
        return out

    def dim(self):
        f = self.form()
        return None if f is None else f.dim()

    def __str__(self):
        k, v = self.kind, self.value
        return {"gw": lambda: str(v), "eta": lambda: "eta^%d" % v, "integer": lambda: str(v),
                "nh": lambda: "%dh" % v, "neps": lambda: "%d_eps" % v,
                "2+11h": lambda: "2+11h"}[k]()

    def to_json(self):
        return {"kind": self.kind, "value": str(self.value) if self.kind == "gw" else self.value,
                "bidegree": list(self.bidegree)}


class ExtensionDescription:
    """0 -> quotient -> pi_{k,w}(1/alpha) -> torsion -> 0."""

    def __init__(self, quotient, torsion, split=None, source="computed", notes=()):
        self.quotient = quotient
        self.torsion = torsion
        if _trivial(quotient) or _trivial(torsion):
            split = True
        self.split = split
        self.source = source
        self.notes = list(notes)

    def order(self):
        q, t = _order(self.quotient), _order(self.torsion)
        if q is None or t is None:
            return None
        return q * t

    def total(self):
        """The middle group when the sequence is known to split."""
        if self.split is True and isinstance(self.quotient, FiniteAbelianGroup) \
                and isinstance(self.torsion, FiniteAbelianGroup):
            return self.quotient + self.torsion
        return None

    def to_json(self):
        def enc(x):
            if isinstance(x, FiniteAbelianGroup):
                return {"group": str(x), **x.to_json()}
            return {"expression": str(x), **x.to_json()}
        out = {"quotient": enc(self.quotient), "torsion": enc(self.torsion),
               "split": {True: "yes", False: "no", None: "unknown"}[self.split],
               "source": self.source}
        if self.order() is not None:
            out["order"] = self.order()
        if self.notes:
            out["notes"] = self.notes
        return out


def _trivial(x):
    if isinstance(x, FiniteAbelianGroup):
        return x.is_trivial()
    if isinstance(x, GroupExpression):
        return not x.atoms
    return False


def _order(x):
    if isinstance(x, FiniteAbelianGroup):
        return x.order()
    if isinstance(x, GroupExpression) and not x.atoms:
        return 1
    return None


def _symbolic_moore(alpha, k, w):
    """Moore groups stated in closed form for every field, or None."""
    s, wa = alpha.bidegree
    if alpha.kind == "neps" and alpha.value % 2 == 1:
        n = alpha.value
        if (k, w) == (0, 0):
            return ExtensionDescription(GroupExpression([atom("Zm", "h", mod=n)]) if n > 1
                                        else GroupExpression.zero(),
                                        GroupExpression.zero(), True, "rule",
                                        ["n_eps = 1 + m*h acts as the identity on W"])
        if (k, w) == (1, 0):
            g = gcd(n, 3)
            q = GroupExpression([atom("KM", "nu", n=2, mod=g)]) if g > 1 else GroupExpression.zero()
            return ExtensionDescription(q, GroupExpression.zero(), True, "rule",
                                        ["n_eps acts unipotently on Z/2 + k^M_1 and as n on K^M_2/24",
                                         "GW has no n_eps-torsion for n odd"])
    if alpha.kind == "eta":
        ell = alpha.value
        if ell >= 2 and (k, w) == (2 * ell + 1, 2 * ell):
            return ExtensionDescription(GroupExpression.zero(), GroupExpression.zero(), True, "rule",
                                        ["stem 1 vanishes in weight > 2",
                                         "eta^l is injective on pi_{l,l}"])
        if ell == 1 and (k, w) == (6, 4):
            return ExtensionDescription(GroupExpression([atom("Zm", "nu^2", mod=2)]),
                                        GroupExpression.zero(), True, "rule",
                                        ["eta*nu^2 = 0 so eta acts as zero from pi_{5,3}",
                                         "pi_{4,3} = 0"])
    return None


def pi_moore(F, alpha, k, w):
    """pi_{k,w} of the Moore spectrum of alpha as an extension description."""
    if isinstance(F, str):
        F = FieldModel.parse(F)
    if isinstance(alpha, str):
        alpha = AlphaDescriptor.parse(alpha)
    s, wa = alpha.bidegree
    try:
        tgt = StemGroup(F, k, w)
        src = StemGroup(F, k - s, w - wa)
        word = alpha.word()
        quotient, _ = hom_cokernel_kernel(src, tgt, word)
        src_t = StemGroup(F, k - s - 1, w - wa)
        tgt_t = StemGroup(F, k - 1, w)
        _, torsion = hom_cokernel_kernel(src_t, tgt_t, word)
        return ExtensionDescription(quotient, torsion, None, "computed")
    except NotModeled as exc:
        sym = _symbolic_moore(alpha, k, w)
        if sym is not None:
            sym.notes.append("symbolic: %s" % exc)
            return sym
        return ExtensionDescription(_moore_quotient_expr(alpha, k, w),
                                    _moore_torsion_expr(alpha, k, w), None, "symbolic",
                                    ["not evaluated: %s" % exc])


def _moore_quotient_expr(alpha, k, w):
    s, wa = alpha.bidegree
    try:
        base = pi_sphere(k, w)
    except NotDetermined as exc:
        return GroupExpression([], None, str(exc))
    return GroupExpression(base.atoms, None, "pi_{%d,%d} modulo %s*pi_{%d,%d}"
                           % (k, w, alpha, k - s, w - wa))


def _moore_torsion_expr(alpha, k, w):
    s, wa = alpha.bidegree
    try:
        base = pi_sphere(k - s - 1, w - wa)
    except NotDetermined as exc:
        return GroupExpression([], None, str(exc))
    return GroupExpression(base.atoms, None, "%s-torsion in pi_{%d,%d}"
                           % (alpha, k - s - 1, w - wa))


def pi10_KQ(F):
    """pi_{1,0} of hermitian K-theory at a field point: F^x/2 + Z/2."""
    if isinstance(F, str):
        F = FieldModel.parse(F)
    r = units_mod_squares(F).rank
    return FiniteAbelianGroup.from_orders([2] * (r + 1),
                                          ["eta_top"] + ["[%s]" % g for g in
                                                         units_mod_squares(F).generators])
