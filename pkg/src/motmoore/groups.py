"""Finitely generated abelian groups and integer matrix normal forms.

Groups are kept as invariant factors d1 | d2 | ... with 0 standing for a
free summand Z.  Subquotients (kernels modulo images) are computed with the
Smith normal form from sympy.

>>> FiniteAbelianGroup.from_orders([2, 3]).factors
(6,)
>>> str(FiniteAbelianGroup.from_orders([4, 2, 0]))
'Z/2 + Z/4 + Z'
"""
from math import prod

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp


def smith_normal_form(A):
    """Return (S, U, V) with U*A*V == S, S diagonal with a divisibility chain.

    A is a list of integer rows.  U and V are unimodular.  The diagonal of S
    is made non-negative.
    """
    A = Matrix(A)
    n, m = A.shape
    if n == 0 or m == 0:
        return Matrix.zeros(n, m), Matrix.eye(n), Matrix.eye(m)
    S, U, V = smith_normal_decomp(A, domain=ZZ)
    S, U = Matrix(S), Matrix(U)
    V = Matrix(V)
    for i in range(min(n, m)):
        if S[i, i] < 0:
            S[i, i] = -S[i, i]
            U[i, :] = -U[i, :]
    return S, U, V


def snf_diagonal(A):
    S, _, _ = smith_normal_form(A)
    n, m = S.shape
    return [int(S[i, i]) for i in range(min(n, m))]


def _chain(orders):
    # canonical invariant factors of a direct sum of cyclic groups
    orders = [abs(int(d)) for d in orders if abs(int(d)) != 1]
    if not orders:
        return ()
    diag = snf_diagonal([[orders[i] if i == j else 0 for j in range(len(orders))]
                         for i in range(len(orders))])
    fin = sorted(d for d in diag if d > 1)
    free = [0] * sum(1 for d in diag if d == 0)
    return tuple(fin + free)


class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/d (d = 0 means Z) with generator labels."""

    def __init__(self, factors=(), generators=None):
        factors = tuple(int(d) for d in factors)
        if _chain(factors) != factors:
            raise ValueError("factors must form a divisibility chain: %r" % (factors,))
        self.factors = factors
        if generators is None:
            generators = ["g%d" % i for i in range(len(factors))]
        if len(generators) != len(factors):
            raise ValueError("one label per factor")
        self.generators = tuple(generators)

    @classmethod
    def from_orders(cls, orders, labels=None):
        """Canonical form of a sum of cyclic groups of the given orders.

        Generator labels of the result are integer combinations of the input
        labels.
        """
        orders = [abs(int(d)) for d in orders]
        if labels is None:
            labels = ["g%d" % i for i in range(len(orders))]
        keep = [i for i, d in enumerate(orders) if d != 1]
        orders = [orders[i] for i in keep]
        labels = [labels[i] for i in keep]
        if not orders:
            return cls()
        if _chain(orders) == tuple(orders):
            return cls(orders, labels)
        # presentation Z^k / diag(orders); new generators come from U^{-1}
        k = len(orders)
        S, U, _ = smith_normal_form([[orders[i] if i == j else 0 for j in range(k)]
                                     for i in range(k)])
        Uinv = U.inv()
        facs, labs = [], []
        for j in range(k):
            d = int(S[j, j])
            if d == 1:
                continue
            col = [int(Uinv[i, j]) for i in range(k)]
            facs.append(d)
            labs.append(combo_label(col, labels, orders))
        order = sorted(range(len(facs)), key=lambda i: (facs[i] == 0, facs[i]))
        return cls([facs[i] for i in order], [labs[i] for i in order])

    @classmethod
    def cyclic(cls, m, label="g"):
        return cls.from_orders([m], [label])

    def order(self):
        """Order of the group, or None when a free summand is present."""
        if any(d == 0 for d in self.factors):
            return None
        return prod(self.factors)

    def is_trivial(self):
        return not self.factors

    def is_finite(self):
        return all(d > 0 for d in self.factors)

    def exponent(self):
        if not self.is_finite():
            return 0
        e = 1
        for d in self.factors:
            e = e * d // _gcd(e, d)
        return e

    def __add__(self, other):
        return FiniteAbelianGroup.from_orders(list(self.factors) + list(other.factors),
                                              list(self.generators) + list(other.generators))

    def __eq__(self, other):
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "FiniteAbelianGroup(%r)" % (self.factors,)

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join("Z" if d == 0 else "Z/%d" % d for d in self.factors)

    def to_json(self):
        return {"factors": ["inf" if d == 0 else d for d in self.factors],
                "generators": list(self.generators)}

    @classmethod
    def from_json(cls, obj):
        facs = [0 if d == "inf" else int(d) for d in obj["factors"]]
        return cls(facs, obj["generators"])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def combo_label(coeffs, labels, orders=None):
    terms = []
    for i, c in enumerate(coeffs):
        if orders is not None and orders[i]:
            c %= orders[i]
            if 2 * c > orders[i]:
                c -= orders[i]
        if c == 0:
            continue
        if c == 1:
            terms.append(labels[i])
        elif c == -1:
            terms.append("-" + labels[i])
        else:
            terms.append("%d*%s" % (c, labels[i]))
    return "+".join(terms).replace("+-", "-") if terms else "0"


def lattice_basis(gens, n):
    """Basis (list of column vectors) of the sublattice of Z^n spanned by gens."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return []
    G = Matrix(n, len(gens), lambda i, j: gens[j][i])
    S, U, _ = smith_normal_form(G)
    Uinv = U.inv()
    basis = []
    for j in range(min(S.shape)):
        s = int(S[j, j])
        if s == 0:
            break
        basis.append([s * int(Uinv[i, j]) for i in range(n)])
    return basis


def integer_kernel(M, ncols):
    """Basis of {x in Z^ncols : M x = 0} for an integer matrix M (list of rows)."""
    if not M:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    S, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
    return [[int(V[i, j]) for i in range(ncols)] for j in range(r, ncols)]


def subquotient(orders, incoming=None, outgoing=None, target_orders=()):
    """Homology at B = sum Z/b_i of A -> B -> C.

    `incoming` is a list of column vectors (images of generators of A in B),
    `outgoing` a matrix (list of rows, one per summand of C) acting on
    B-coordinates, `target_orders` the cyclic orders of C.  Returns the
    group together with representative vectors of its generators.
    """
    n = len(orders)
    if n == 0:
        return FiniteAbelianGroup(), []
    rel = [[orders[i] if i == j else 0 for i in range(n)] for j in range(n)]
    # kernel of B -> C: solve M x - diag(c) y = 0
    k = len(target_orders)
    if outgoing and k:
        big = [list(outgoing[r]) + [-(target_orders[r]) if r == c else 0 for c in range(k)]
               for r in range(k)]
        ker = [v[:n] for v in integer_kernel(big, n + k)]
    else:
        ker = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    K = lattice_basis(ker + rel, n)
    img = [list(v) for v in (incoming or [])] + rel
    img = [v for v in img if any(v)]
    r = len(K)
    if r == 0:
        return FiniteAbelianGroup(), []
    # coordinates of the image inside K
    Kmat = Matrix(n, r, lambda i, j: K[j][i])
    S, U, V = smith_normal_form(Kmat)
    coords = []
    for v in img:
        w = U * Matrix(v)
        y = []
        for j in range(r):
            s = int(S[j, j])
            if w[j] % s:
                raise ArithmeticError("image not contained in kernel")
            y.append(w[j] // s)
        for j in range(r, n):
            if w[j] != 0:
                raise ArithmeticError("image not contained in kernel")
        coords.append(list(V * Matrix(y)))
    if not coords:
        X = Matrix.zeros(r, 1)
    else:
        X = Matrix(r, len(coords), lambda i, j: coords[j][i])
    S2, U2, _ = smith_normal_form(X)
    U2inv = U2.inv()
    facs, reps = [], []
    for j in range(r):
        d = int(S2[j, j]) if j < min(S2.shape) else 0
        if d == 1:
            continue
        kc = U2inv[:, j]
        vec = Kmat * kc
        facs.append(d)
        reps.append([int(x) for x in vec])
    order = sorted(range(len(facs)), key=lambda i: (facs[i] == 0, facs[i]))
    grp = FiniteAbelianGroup([facs[i] for i in order],
                             ["v%d" % i for i in range(len(facs))])
    return grp, [reps[i] for i in order]
