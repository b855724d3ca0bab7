"""Command-line front end.

Exit codes: 0 success, 1 usage error or failed self test, 2 refusal (the
question is outside the models or not determined).
"""
import argparse
import json
import sys

from .cohomology import OpSymbol, PointClass, bockstein_les_check, mot_cohomology_point
from .fields import FieldModel, NotModeled, gw_normal_form
from .groups import FiniteAbelianGroup
from .homotopy import (ExtensionDescription, GroupExpression, NotDetermined, Residue,
                       eval_group, pi_moore, pi_sphere)
from .milnor_witt import kmw_group, kmw_reduce
from .moore_mult import BRACKETS, mult_verdict, toda_bracket, toda_lift_check
from . import slices


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field(text, required=True):
    if text is None:
        if required:
            raise UsageError("--field is required")
        return None
    try:
        return FieldModel.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def _range(text):
    a, _, b = text.partition("..")
    return (int(a), int(b if b else a))


def _window(text):
    out = {"s": (0, 4), "w": (-2, 4), "q": (0, 5)}
    if text:
        for part in text.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in out:
                raise UsageError("window keys are s, w, q")
            try:
                out[key] = _range(val.strip())
            except ValueError:
                raise UsageError("bad range %r" % val)
    return out


def _group_json(g):
    if isinstance(g, FiniteAbelianGroup):
        out = {"group": str(g), "factors": [("inf" if f == 0 else f) for f in g.factors],
               "generators": list(g.generators)}
        if len(g.generators) == 1:
            out["generator"] = g.generators[0]
        return out
    if isinstance(g, Residue):
        return {"group": str(g), **g.to_json()}
    return {"group": str(g)}


# ------------------------------------------------------------------ commands

def cmd_gw(a):
    F = _field(a.field)
    cls = gw_normal_form(F, a.form)
    return {"field": str(F), "form": a.form, "invariants": cls.to_json()}


def cmd_kmw(a):
    F = _field(a.field)
    if a.word:
        return {"field": str(F), "word": a.word, **kmw_reduce(a.word, F)}
    if a.degree is None:
        raise UsageError("give --word or --degree")
    ideal = [x.strip() for x in a.ideal.split(",")] if a.ideal else None
    g = kmw_group(F, a.degree, ideal)
    return {"field": str(F), "degree": a.degree, "ideal": ideal or [], **_group_json(g)}


def cmd_pi(a):
    e = pi_sphere(a.k, a.w)
    out = {"k": a.k, "w": a.w, "expression": str(e), "description": e.to_json()}
    if a.field:
        F = _field(a.field)
        g = eval_group(e, F)
        out["field"] = str(F)
        out.update(_group_json(g))
        if e.split is not True:
            out["split"] = "unknown" if e.split is None else "no"
    return out


def _undetermined(x):
    return isinstance(x, GroupExpression) and not x.atoms and x.split is None and x.note


def cmd_pi_moore(a):
    F = _field(a.field)
    ext = pi_moore(F, a.alpha, a.k, a.w)
    for part in (ext.quotient, ext.torsion):
        if _undetermined(part):
            raise NotDetermined(part.note)
    out = {"field": str(F), "alpha": a.alpha, "k": a.k, "w": a.w, **ext.to_json()}
    total = ext.total()
    if total is not None:
        out["group"] = str(total)
    return out


def cmd_mult(a):
    F = _field(a.field, required=False)
    v = mult_verdict(F, a.alpha)
    out = {"alpha": a.alpha, **v.to_json()}
    if F is not None:
        out["field"] = str(F)
    return out


def cmd_toda(a):
    F = _field(a.field)
    if a.lift:
        return toda_lift_check(F, a.bracket)
    return toda_bracket(F, a.bracket).to_json()


def cmd_cohomology(a):
    F = _field(a.field)
    g = mot_cohomology_point(F, a.p, a.q, a.m)
    out = {"field": str(F), "p": a.p, "q": a.q, "m": a.m, **_group_json(g)}
    if a.op:
        env = {"n": a.n, "2n": 2 * a.n} if a.n else {}
        y = OpSymbol(a.op).apply(PointClass.generator(F, a.p, a.q, a.m), env)
        out["op"] = a.op
        out["image"] = {"p": y.p, "q": y.q, "m": y.m, "coord": y.coord, "order": y.order,
                        "class": str(y)}
    return out


def _spectrum(a):
    try:
        return slices.SpectrumId(a.spectrum, a.n)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_slices(a):
    X = _spectrum(a)
    summ = slices.slice_summands(X, a.q, jmax=a.jmax)
    out = {"spectrum": str(X), "q": a.q, "summands": [S.to_json() for S in summ]}
    note = slices.completeness_note(X)
    if note:
        out["completeness"] = note
    return out


def cmd_d1(a):
    X = _spectrum(a)
    return {"spectrum": str(X), "q": a.q, "rows": slices.d1_components(X, a.q, j=a.j)}


def cmd_e2(a):
    X = _spectrum(a)
    F = _field(a.field)
    win = _window(a.window)
    table = slices.e2_window(X, F, win["s"], win["w"], win["q"])
    return table.to_json()


def cmd_selftest(a):
    F5, R, C = (FieldModel.parse(x) for x in ("Fq:5", "R", "C"))
    results = {}
    viol = 0
    for F in (F5, R, C):
        for name in slices.CATALOG_FILES:
            for n in ((1, 2, 3) if name in slices.WITH_N else (None,)):
                rep = slices.d_squared_window(name, F, (0, 3), (-2, 2), (0, 4), n=n)
                viol += len(rep["violations"])
    results["d1_squared_zero"] = viol == 0
    results["bockstein_exact"] = all(bockstein_les_check(F, 2, 2, 3, 3)["exact"]
                                     for F in (F5, R, C))
    results["kq_pi10"] = all(slices.kq_pi10_reconciliation(F, qmax=4)["match"]
                             for F in (F5, R, C))
    results["naturality"] = all(slices.naturality_check(n, F, s, w, q)["commutes"]
                                for F in (F5, R, C) for n in (1, 2, 3, 4)
                                for s in range(0, 4) for w in range(-1, 3) for q in range(3))
    ok = all(results.values())
    return {"pass": ok, "checks": results}


COMMANDS = {
    "gw": cmd_gw, "kmw": cmd_kmw, "pi": cmd_pi, "pi-moore": cmd_pi_moore, "mult": cmd_mult,
    "toda": cmd_toda, "cohomology": cmd_cohomology, "slices": cmd_slices, "d1": cmd_d1,
    "e2": cmd_e2, "selftest": cmd_selftest,
}


def build_parser():
    p = _Parser(prog="motmoore", description="Motivic Moore spectra calculator")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("gw")
    s.add_argument("--field", required=True)
    s.add_argument("--form", required=True)

    s = sub.add_parser("kmw")
    s.add_argument("--field", required=True)
    s.add_argument("--word")
    s.add_argument("--degree", type=int)
    s.add_argument("--ideal")

    s = sub.add_parser("pi")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--field")

    s = sub.add_parser("pi-moore")
    s.add_argument("--field", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--w", type=int, required=True)

    s = sub.add_parser("mult")
    s.add_argument("--alpha", required=True)
    s.add_argument("--field")

    s = sub.add_parser("toda")
    s.add_argument("--field", required=True)
    s.add_argument("--bracket", choices=BRACKETS, required=True)
    s.add_argument("--lift", action="store_true")

    s = sub.add_parser("cohomology")
    s.add_argument("--field", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--op")
    s.add_argument("--n", type=int)

    for name in ("slices", "d1", "e2"):
        s = sub.add_parser(name)
        s.add_argument("--spectrum", required=True)
        s.add_argument("--n", type=int)
        if name == "e2":
            s.add_argument("--field", required=True)
            s.add_argument("--window")
        else:
            s.add_argument("--q", type=int, required=True)
        if name == "slices":
            s.add_argument("--jmax", type=int)
        if name == "d1":
            s.add_argument("--j", type=int)

    sub.add_parser("selftest")
    return p


def _text(obj, indent=0):
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append("%s%s:" % (pad, k))
                lines.append(_text(v, indent + 2))
            else:
                lines.append("%s%-*s  %s" % (pad, width, k, json.dumps(v, sort_keys=True)))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append("%s-" % pad)
                lines.append(_text(v, indent + 2))
            else:
                lines.append("%s- %s" % (pad, json.dumps(v)))
    else:
        lines.append(pad + json.dumps(obj))
    return "\n".join(lines)


def render(obj, fmt):
    if fmt == "text":
        return _text(obj)
    return json.dumps(obj, sort_keys=True, default=str)


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}, sort_keys=True), file=out)
        return 1
    except NotDetermined as exc:
        print(render({"refusal": "not determined", "reason": str(exc)}, "json"), file=out)
        return 2
    except (NotModeled, slices.OutOfCatalog, ValueError, ArithmeticError) as exc:
        kind = "not modeled" if isinstance(exc, NotModeled) else "precondition"
        print(render({"refusal": kind, "reason": str(exc)}, "json"), file=out)
        return 2
    print(render(result, args.format), file=out)
    if args.command == "selftest" and not result["pass"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
