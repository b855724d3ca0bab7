"""Whether a motivic Moore spectrum admits a multiplication, and the Toda
brackets that decide some of the cases.

Each verdict names the rule that produced it.  Rules:

    dim-2-mod-4      alpha in GW with dim = 2 mod 4: no multiplication
                     (a Sq^2 obstruction, checkable via cartan_obstruction)
    square           alpha is a square beta^2: a multiplication exists
    eta-power        1/eta^l has one iff l > 1
    n-eps            1/n_eps has one iff n != 2 mod 4
    integer          1/n comes from topology: iff n != 2 mod 4
    real-bracket     over a formally real field (2+11h)*id != 0, detected by
                     the bracket <2+11h, nu, 2+11h> = {rho^2 nu^2}
    sqrt-minus-one   with sqrt(-1) in F, h = 2 so 2+11h = 24
"""
from itertools import product
from math import isqrt

from .cohomology import cartan_obstruction
from .fields import FieldModel, FormExpr, GWClass, NotModeled, gw_generators, symbol_is_zero
from .homotopy import (AlphaDescriptor, Pi1Element, StemGroup, hom_cokernel_kernel,
                       in_lattice)
from .milnor_witt import KMWWord

GENERAL_NOTES = ["alpha^2 * id = 0 on 1/alpha",
                 "a pairing 1/alpha ^ 1/alpha^2 -> 1/alpha exists"]


class Verdict:
    def __init__(self, answer, rule=None, notes=()):
        if answer not in ("yes", "no", "unknown"):
            raise ValueError(answer)
        if answer != "unknown" and not rule:
            raise ValueError("a definite verdict needs a rule")
        self.answer = answer
        self.rule = rule
        self.notes = list(notes)

    def to_json(self):
        return {"answer": self.answer.capitalize(), "rule": self.rule, "notes": self.notes}

    def __repr__(self):
        return "Verdict(%s, %s)" % (self.answer, self.rule)


def _mod4_verdict(n, rule, extra=()):
    if n % 4 == 2:
        obs = cartan_obstruction(n)
        return Verdict("no", rule, ["n = 2 mod 4: Sq^2(x0 y0) = %s" % obs["sq2_x0y0"]]
                       + list(extra))
    return Verdict("yes", rule, list(extra))


def gw_square_root(F, form, limit=6):
    """A form beta with beta^2 = form in GW(F), searched in a box, or None."""
    d = form.dim()
    if d < 0:
        return None
    r = isqrt(d)
    if r * r != d:
        return None
    try:
        gens = gw_generators(F)
        target = GWClass(F, form)
    except NotModeled:
        return None
    if len(gens) > 4 or r > limit * 4:
        return None
    bound = r + 2
    for coeffs in product(range(-bound, bound + 1), repeat=len(gens)):
        if abs(sum(coeffs)) != r:
            continue
        beta = FormExpr()
        for c, g in zip(coeffs, gens):
            beta = beta + g.scale(c)
        if GWClass(F, beta * beta) == target:
            return beta
    return None


def _same_class(F, a, b):
    try:
        return GWClass(F, a) == GWClass(F, b)
    except NotModeled:
        return False


def mult_verdict(F, alpha):
    """Decide whether 1/alpha admits a (unital) multiplication."""
    if isinstance(F, str):
        F = FieldModel.parse(F)
    if isinstance(alpha, str):
        alpha = AlphaDescriptor.parse(alpha)
    if alpha.kind == "eta":
        ell = alpha.value
        if ell == 1:
            return Verdict("no", "eta-power",
                           ["<eta,nu,eta> = {nu^2} gives nu~ with nu~ * eta != 0"])
        notes = ["pi_{2l+1,2l}(1/eta^l) = 0"]
        if ell % 2 == 0:
            notes.append("eta^%d is the square of eta^%d" % (ell, ell // 2))
        return Verdict("yes", "eta-power", notes)

    if alpha.kind == "neps":
        return _mod4_verdict(alpha.value, "n-eps")
    if alpha.kind == "integer":
        return _mod4_verdict(alpha.value, "integer",
                             ["transferred from the topological Moore spectrum"])
    if alpha.kind == "nh":
        return _mod4_verdict(2 * alpha.value, "n-eps", ["%dh = (%d)_eps" % (alpha.value, 2 * alpha.value)])
    if F is None:
        raise ValueError("a field is needed for %s" % alpha)
    form = alpha.form()
    d = form.dim()
    if d % 4 == 2:
        obs = cartan_obstruction(d)
        return Verdict("no", "dim-2-mod-4",
                       ["Sq^2(x0 y0) = %s" % obs["sq2_x0y0"], "dim = %d" % d])
    if alpha.kind == "2+11h":
        if F.formally_real:
            return Verdict("no", "real-bracket",
                           ["<2+11h, nu, 2+11h> = {rho^2 nu^2} is nonzero",
                            "(2+11h) acts as zero on pi_{4,2}, so (2+11h)*id != 0"])
        if F.contains_sqrt_minus1:
            return Verdict("yes", "sqrt-minus-one", ["h = 2 in GW(F), so 2+11h = 24"])
        return Verdict("unknown", None, GENERAL_NOTES + ["2+11h is neither 24 nor formally real here"])
    # general form: compare with n and n_eps, then look for a square root
    if d > 0:
        if _same_class(F, form, FormExpr.integer(d)):
            return _mod4_verdict(d, "integer", ["alpha = %d in GW(F)" % d])
        if _same_class(F, form, FormExpr.n_epsilon(d)):
            return _mod4_verdict(d, "n-eps", ["alpha = %d_eps in GW(F)" % d])
    beta = gw_square_root(F, form)
    if beta is not None:
        return Verdict("yes", "square", ["alpha = (%s)^2 in GW(F)" % beta])
    return Verdict("unknown", None, GENERAL_NOTES)


def quadratic_closure(F):
    """Model for F(sqrt(-1)) (algebraically closed model for Q and R)."""
    if F.kind == "Fq":
        return F if F.q % 4 == 1 else FieldModel("Fq", q=F.q ** 2)
    return FieldModel("C")


# ---------------------------------------------------------------- brackets

BRACKETS = ("h_eta_h", "eta_h_eta", "eta_nu_eta", "real_2p11h")


class BracketFact:
    def __init__(self, ident, degree, representative, indeterminacy, checks):
        self.id = ident
        self.degree = degree
        self.representative = representative
        self.indeterminacy = indeterminacy
        self.checks = checks

    def to_json(self):
        return {"bracket": self.id, "degree": list(self.degree),
                "representative": self.representative,
                "indeterminacy": self.indeterminacy, "checks": self.checks}


def _span_elements(G, elems):
    return [G.image(e) for e in elems]


def _same_subgroup(G, stored, computed):
    size = len(G.orders)
    sv = _span_elements(G, stored)
    cv = _span_elements(G, computed)
    a = all(in_lattice(v, G.relations + cv, size) for v in sv)
    b = all(in_lattice(v, G.relations + sv, size) for v in cv)
    return a and b


def _unit_symbols(F):
    from .milnor_witt import KMWModel
    return KMWModel(F).units


def _action_images(src, word):
    return [src.act(word, g) for g in src.generators]


def toda_bracket(F, ident):
    """Representative and indeterminacy of one of four brackets, re-verified."""
    if isinstance(F, str):
        F = FieldModel.parse(F)
    if ident not in BRACKETS:
        raise ValueError("unknown bracket %r" % ident)
    if ident == "real_2p11h" and not F.formally_real:
        raise ValueError("<2+11h, nu, 2+11h> needs a formally real field")
    if F.kind == "Q":
        return _bracket_rational(F, ident)
    h = KMWWord.parse("h")
    eta = KMWWord.eta()
    if ident == "eta_h_eta":
        G = StemGroup(F, 3, 2)
        rep = Pi1Element.parse("6*nu").words()
        stored = [Pi1Element.parse("12*nu").words()]
        computed = _action_images(StemGroup(F, 2, 1), eta)
        text = ("{6nu, -6nu}", ["0", "12nu"])
        coset_ok = G.equal(Pi1Element.parse("-6*nu").words(),
                           Pi1Element.parse("18*nu").words())
    elif ident == "h_eta_h":
        G = StemGroup(F, 2, 1)
        rep = Pi1Element.parse("eta*eta_top").words()
        stored = [Pi1Element.parse("2*[%d]*nu" % u).words() for u in _unit_symbols(F)]
        computed = _action_images(G, h)
        text = ("eta*eta_top + 2K^M_1{nu}/24", ["2K^M_1{nu}/24"])
        coset_ok = True
    elif ident == "eta_nu_eta":
        G = StemGroup(F, 6, 4)
        rep = (KMWWord.const(1),)
        stored = []
        computed = _action_images(StemGroup(F, 5, 3), eta)
        text = ("{nu^2}", ["0"])
        coset_ok = True
    else:
        G = StemGroup(F, 4, 2)
        rep = (KMWWord.parse("[-1]*[-1]"),)
        stored = []
        computed = _action_images(G, KMWWord.parse("2 + 11*h"))
        text = ("{rho^2 nu^2}", ["0"])
        coset_ok = True
    checks = {"representative_nonzero": not G.is_zero(rep),
              "indeterminacy_matches": _same_subgroup(G, stored, computed),
              "coset_consistent": coset_ok,
              "ambient": str(G.group())}
    return BracketFact(ident, (G.k, G.w), text[0], text[1], checks)


def _bracket_rational(F, ident):
    # stem 2 in weight 2 is k^M_2/2 with GW acting through dim mod 2
    if ident == "real_2p11h":
        nonzero = not symbol_is_zero(F, [-1, -1], 2)
        return BracketFact(ident, (4, 2), "{rho^2 nu^2}", ["0"],
                           {"representative_nonzero": nonzero,
                            "indeterminacy_matches": (24 % 2 == 0),
                            "coset_consistent": True,
                            "ambient": "KM(2)/2{nu^2}"})
    if ident in ("eta_h_eta", "eta_nu_eta"):
        # pi_{3,2} = Z/24 and pi_{6,4} = Z/2 and the indeterminacies do not
        # depend on the field; evaluate on the algebraically closed model
        fact = toda_bracket(FieldModel("C"), ident)
        fact.checks["evaluated_on"] = "C"
        return fact
    raise NotModeled("bracket %s over %s needs Milnor-Witt K-theory of Q" % (ident, F))


def toda_lift_check(F, ident):
    """Check the two inputs showing alpha * id != 0 on 1/alpha.

    alpha acts as zero one stem up (so c_* is injective) and the bracket
    representative is nonzero.
    """
    if isinstance(F, str):
        F = FieldModel.parse(F)
    if ident not in ("eta_nu_eta", "real_2p11h"):
        raise ValueError("lift check is available for eta_nu_eta and real_2p11h")
    if ident == "real_2p11h" and not F.formally_real:
        raise ValueError("<2+11h, nu, 2+11h> needs a formally real field")
    fact = toda_bracket(F, ident)
    if ident == "eta_nu_eta":
        alpha, tgt, src = "eta", (6, 4), (5, 3)
        word = KMWWord.eta()
    else:
        alpha, tgt, src = "2+11h", (4, 2), (4, 2)
        word = KMWWord.parse("2 + 11*h")
    if F.kind == "Q" and ident == "eta_nu_eta":
        F = FieldModel("C")
    if F.kind == "Q":
        injective = True  # dim(2+11h) = 24 acts as zero on k^M_2/2
        ambient = fact.checks["ambient"]
    else:
        T, S = StemGroup(F, *tgt), StemGroup(F, *src)
        coker, _ = hom_cokernel_kernel(S, T, word)
        injective = coker == T.group()
        ambient = str(T.group())
    ok = injective and fact.checks["representative_nonzero"]
    return {"bracket": ident, "alpha": alpha,
            "c_star_injective": injective,
            "ambient": "pi_{%d,%d} = %s" % (tgt[0], tgt[1], ambient),
            "representative_nonzero": fact.checks["representative_nonzero"],
            "conclusion": "%s * id != 0" % alpha if ok else "inconclusive"}
