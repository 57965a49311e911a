"""Command line interface: ``rootsuper <verb> ...``.

Exit codes: 0 success, 1 audit violation or failed comparison, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction as Q
from pathlib import Path

from .chevalley import (
    ConstantsTable,
    TotalOrder,
    _pair_classes,
    Setup,
    constants_from_seeds,
    symbol_order,
    verify_constants,
)
from .compare import conjugacy_verdict, transport_order, transport_seeds
from .errors import InternalInconsistency, RootSuperError
from .realize import build_model, chevalley_vectors, to_abstract
from .rootsys import (
    ALPHASTAR,
    RootSupersystem,
    Symbol,
    TypeDescriptor,
    build,
    check_axioms,
    descriptor_from_name,
    graded_lex_key,
    integral_base,
    is_isomorphic,
    lattice_coords,
    recognize,
    rem3_nonroot_audit,
)
from .superalg import LieSuperalgebra, form_check, from_table, jacobi_check

OUT_ENV = "ROOTSUPER_OUT_DIR"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- encoding

def rat(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def unrat(s) -> Q:
    return Q(s)


def sym_json(s: Symbol):
    return {"kind": s.kind, "idx": s.index}


def sym_parse(t) -> Symbol:
    try:
        kind, idx = t["kind"], int(t["idx"])
    except (TypeError, KeyError, ValueError):
        raise UsageError(f"bad symbol {t!r}") from None
    if kind not in ("eps", "delta", "alphastar"):
        raise UsageError(f"bad symbol kind {kind!r}")
    return ALPHASTAR if kind == "alphastar" else Symbol(kind, idx)


def vec_json(v):
    return [rat(x) for x in v]


def vec_parse(v):
    return tuple(unrat(x) for x in v)


def descriptor_json(d):
    if d is None:
        return None
    return {"family": d.family, "ranks": list(d.ranks), "lambda": rat(d.lam) if d.lam is not None else None}


def descriptor_parse(o):
    if o is None:
        return None
    lam = o.get("lambda")
    return TypeDescriptor(o["family"], tuple(o["ranks"]), unrat(lam) if lam is not None else None)


def rootsys_json(R: RootSupersystem):
    return {
        "schema": "rootsys.v1",
        "descriptor": descriptor_json(R.descriptor),
        "name": str(R.descriptor) if R.descriptor else None,
        "basis": [sym_json(s) for s in R.basis],
        "form": [vec_json(row) for row in R.gram],
        "roots": [vec_json(a) for a in R.nonzero],
    }


def rootsys_parse(o) -> RootSupersystem:
    if o.get("schema") != "rootsys.v1":
        raise UsageError("expected a rootsys.v1 document")
    return RootSupersystem.make([sym_parse(s) for s in o["basis"]],
                                [vec_parse(r) for r in o["form"]],
                                [vec_parse(a) for a in o["roots"]],
                                descriptor_parse(o.get("descriptor")))


def order_json(R, order: TotalOrder):
    if order.is_symbol_order():
        return [sym_json(R.basis[list(f).index(Q(1))]) for f in order.functionals]
    return [{"functional": vec_json(f)} for f in order.functionals]


def order_parse(R, o):
    if all("functional" not in x for x in o):
        return symbol_order(R, [sym_parse(x) for x in o])
    return TotalOrder(tuple(vec_parse(f["functional"]) for f in o))


def constants_json(T: ConstantsTable):
    R = T.R
    seeds = sorted(([vec_json(a), vec_json(b), rat(v)] for (a, b), v in T.seeds.items()))
    entries = sorted(
        ((graded_lex_key(a), graded_lex_key(b)), a, b, v) for (a, b), v in T.N.items())
    return {
        "schema": "constants.v1",
        "rootsys": rootsys_json(R),
        "order": order_json(R, T.order),
        "rScale": rat(T.rScale),
        "seeds": [{"a": a, "b": b, "N": v} for a, b, v in seeds],
        "N": [{"a": vec_json(a), "b": vec_json(b), "val": rat(v)} for _, a, b, v in entries],
        "hCoords": [{"root": vec_json(a), "coords": vec_json(c)}
                    for a, c in sorted(T.hCoords.items(), key=lambda kv: graded_lex_key(kv[0]))],
    }


def constants_parse(o) -> ConstantsTable:
    if o.get("schema") != "constants.v1":
        raise UsageError("expected a constants.v1 document")
    R = rootsys_parse(o["rootsys"])
    order = order_parse(R, o["order"])
    seeds = {(vec_parse(s["a"]), vec_parse(s["b"])): unrat(s["N"]) for s in o["seeds"]}
    N = {(vec_parse(e["a"]), vec_parse(e["b"])): unrat(e["val"]) for e in o["N"]}
    hc = {vec_parse(h["root"]): vec_parse(h["coords"]) for h in o.get("hCoords", [])}
    return ConstantsTable(R, order, unrat(o["rScale"]), seeds, N, hc)


def superalg_json(L: LieSuperalgebra):
    table = sorted([i, j, k, rat(c)] for (i, j), v in L.table.items() for k, c in v.items())
    form = None
    if L.form is not None:
        form = [[rat(L.form.get((i, j), 0)) for j in range(L.dim)] for i in range(L.dim)]
    return {
        "schema": "superalg.v1",
        "labels": [str(x) for x in L.labels],
        "parities": list(L.parities),
        "cartan": list(L.cartan) if L.cartan is not None else None,
        "table": table,
        "form": form,
    }


def superalg_parse(o) -> LieSuperalgebra:
    table = {}
    for i, j, k, c in o["table"]:
        table.setdefault((i, j), {})[k] = unrat(c)
    form = None
    if o.get("form") is not None:
        form = {(i, j): unrat(c) for i, row in enumerate(o["form"]) for j, c in enumerate(row)}
    return from_table(o["labels"], o["parities"], table, form, o.get("cartan"))


def model_json(M):
    return {
        "schema": "model.v1",
        "kind": M.kind,
        "I": M.m,
        "J": M.n,
        "name": M.name,
        "corrections": [list(c) for c in M.corrections],
        "algebra": superalg_json(to_abstract(M)),
    }


def dumps(o) -> str:
    return json.dumps(o, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------- helpers

class Ctx:
    def __init__(self, args):
        self.args = args
        self.quiet = args.quiet
        self.json_on_stdout = False

    def report(self, line):
        if not self.quiet:
            print(line, file=sys.stderr if self.json_on_stdout else sys.stdout)

    def emit(self, doc, default_name):
        text = dumps(doc)
        out = self.args.out
        if out is None and os.environ.get(OUT_ENV):
            out = default_name
        if out is None:
            sys.stdout.write(text)
            self.json_on_stdout = True
            return
        path = Path(out)
        if not path.is_absolute() and os.environ.get(OUT_ENV):
            path = Path(os.environ[OUT_ENV]) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def load(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not JSON ({exc})") from None


def parse_ranks(s):
    if s is None or s == "":
        return ()
    try:
        return tuple(int(x) for x in str(s).split(","))
    except ValueError:
        raise UsageError(f"bad ranks {s!r}") from None


def make_seeds(R, order, spec):
    pairs = _pair_classes(Setup(R, order)).extraspecial
    spec = "1" if spec is None else str(spec)
    if spec.startswith("random:"):
        rng = random.Random(int(spec.split(":", 1)[1]))
        out = {}
        for p in pairs:
            num = rng.choice([-1, 1]) * rng.randint(1, 9)
            out[p] = Q(num, rng.randint(1, 9))
        return out
    try:
        v = Q(spec)
    except ValueError:
        raise UsageError(f"bad seeds {spec!r}") from None
    if v == 0:
        raise UsageError("seeds must be nonzero")
    return {p: v for p in pairs}


def parse_scale(s):
    try:
        v = Q(str(s))
    except ValueError:
        raise UsageError(f"bad scale {s!r}") from None
    if v == 0:
        raise UsageError("scale must be nonzero")
    return v


def descriptor_of(R):
    return R.descriptor if R.descriptor is not None else recognize(R)


# ---------------------------------------------------------------- verbs

def cmd_build(ctx, a):
    if not a.family:
        raise UsageError("--family is required")
    d = descriptor_from_name(a.family, parse_ranks(a.ranks), a.lam)
    R = build(d)
    ctx.emit(rootsys_json(R), "rootsys.json")
    ctx.report(f"built {d}: {len(R.nonzero)} nonzero roots")
    return 0


def cmd_check(ctx, a):
    R = rootsys_parse(load(a.input))
    reports = [check_axioms(R)]
    fam = descriptor_of(R).family
    if fam in ("C(T,T')", "BC(T,T')"):
        reports.append(rem3_nonroot_audit(R, fam))
    bad = 0
    for rep in reports:
        ctx.report(f"{rep.name}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checks)")
        for v in rep.violations[:10]:
            ctx.report(f"  {v}")
        bad += not rep.ok
    return 1 if bad else 0


def cmd_chevalley(ctx, a):
    R = rootsys_parse(load(a.input))
    order = symbol_order(R)
    seeds = make_seeds(R, order, a.seeds)
    T = constants_from_seeds(R, order, seeds, parse_scale(a.scale))
    ctx.emit(constants_json(T), "constants.json")
    ctx.report(f"{len(T.N)} constants from {len(seeds)} seeds")
    return 0


def cmd_realize(ctx, a):
    if a.kind is None or a.I is None or a.J is None:
        raise UsageError("--kind, --I and --J are required")
    M = build_model(a.kind, int(a.I), int(a.J))
    ctx.emit(model_json(M), "model.json")
    ctx.report(f"{M.name}: dim {len(M.basis)}, {len(M.corrections)} corrected table rows")
    return 0


def cmd_extract(ctx, a):
    o = load(a.input)
    if o.get("schema") != "model.v1":
        raise UsageError("expected a model.v1 document")
    M = build_model(o["kind"], o["I"], o["J"])
    S = M.rootsys
    R = build(recognize(S))
    f = is_isomorphic(R, S)
    order = symbol_order(R)
    seeds = make_seeds(R, order, a.seeds)
    r = parse_scale(a.scale)
    ex = chevalley_vectors(M, transport_order(order, f), transport_seeds(seeds, f), r / f.k)
    N = {(x, y): ex.table.N[(f(x), f(y))] for x in R.nonzero for y in R.nonzero
         if (f(x), f(y)) in ex.table.N}
    base = list(integral_base(R))
    pos = [x for x in R.nonzero if order.positive(x)]
    hc = {x: tuple(r * c for c in lattice_coords(base, x)) for x in pos}
    T = ConstantsTable(R, order, r, seeds, N, hc)
    ctx.emit(constants_json(T), "constants.json")
    ctx.report(f"extracted {len(N)} constants from {M.name}")
    return 0


def cmd_compare(ctx, a):
    x, y = load(a.left), load(a.right)
    if x.get("schema") == "rootsys.v1" and y.get("schema") == "rootsys.v1":
        v = conjugacy_verdict(rootsys_parse(x), rootsys_parse(y))
        print(v.value)
        return 0 if v.value == "Conjugate" else 1
    if x.get("schema") != y.get("schema"):
        raise UsageError("documents have different schemas")
    same = dumps(x) == dumps(y)
    if not a.quiet:
        print("identical" if same else "different")
    return 0 if same else 1


def cmd_audit(ctx, a):
    o = load(a.input)
    schema = o.get("schema")
    if schema == "constants.v1":
        T = constants_parse(o)
        reports = [verify_constants(T.R, T.order, T)]
    elif schema in ("superalg.v1", "model.v1"):
        L = superalg_parse(o["algebra"] if schema == "model.v1" else o)
        reports = [jacobi_check(L)]
        if L.form is not None:
            reports.append(form_check(L))
    elif schema == "rootsys.v1":
        reports = [check_axioms(rootsys_parse(o))]
    else:
        raise UsageError(f"cannot audit schema {schema!r}")
    bad = 0
    for rep in reports:
        ctx.report(f"{rep.name}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checks)")
        for v in rep.violations[:10]:
            ctx.report(f"  {v}")
        bad += not rep.ok
    return 1 if bad else 0


VERBS = {
    "build": cmd_build,
    "check": cmd_check,
    "chevalley": cmd_chevalley,
    "realize": cmd_realize,
    "extract": cmd_extract,
    "compare": cmd_compare,
    "audit": cmd_audit,
}


def parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=None)
    common.add_argument("--config", help="JSON file of default flag values")
    common.add_argument("--out", help="output path (relative paths go under $%s)" % OUT_ENV)

    p = argparse.ArgumentParser(prog="rootsuper", description="Root supersystems and Chevalley constants")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", parents=[common])
    b.add_argument("--family")
    b.add_argument("--ranks")
    b.add_argument("--lambda", dest="lam")

    c = sub.add_parser("check", parents=[common])
    c.add_argument("input")

    ch = sub.add_parser("chevalley", parents=[common])
    ch.add_argument("input")
    ch.add_argument("--seeds", help="a nonzero rational or random:N")
    ch.add_argument("--scale")

    r = sub.add_parser("realize", parents=[common])
    r.add_argument("--kind", choices=["osp-odd", "osp-even", "sl"])
    r.add_argument("--I")
    r.add_argument("--J")

    e = sub.add_parser("extract", parents=[common])
    e.add_argument("input")
    e.add_argument("--seeds")
    e.add_argument("--scale")

    cm = sub.add_parser("compare", parents=[common])
    cm.add_argument("left")
    cm.add_argument("right")

    au = sub.add_parser("audit", parents=[common])
    au.add_argument("input")
    return p


DEFAULTS = {"seeds": "1", "scale": "1", "quiet": False}


def main(argv=None):
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        conf = {}
        if args.config:
            conf = load(args.config)
            if not isinstance(conf, dict):
                raise UsageError("config must be a JSON object")
        for k, v in vars(args).items():
            if v is None:
                if k in conf:
                    v = conf[k]
                    if k == "ranks" and isinstance(v, list):
                        v = ",".join(str(x) for x in v)
                    elif k in ("seeds", "scale", "ranks", "I", "J", "lam") and not isinstance(v, bool):
                        v = str(v)
                    setattr(args, k, v)
                elif k in DEFAULTS:
                    setattr(args, k, DEFAULTS[k])
        if "lambda" in conf and getattr(args, "lam", "x") is None:
            args.lam = str(conf["lambda"])
        return VERBS[args.verb](Ctx(args), args)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"InternalInconsistency: {exc}", file=sys.stderr)
        return 1
    except RootSuperError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
