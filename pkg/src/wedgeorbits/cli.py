"""Command-line surface: JSON in/out, deterministic seeds, machine-readable
reports.

Exit codes: 0 ok, 2 invalid input, 3 vector not in the kernel subspace,
4 unsupported field operation, 5 search budget exhausted.
"""

import argparse
import json
import sys

from . import __version__
from .census import ScopeTooLarge, available_backends, run_census
from .compalg import base_algebra, cd_tower, zorn
from .fields import (
    FactorizationBoundExceeded,
    UnsupportedFieldOperation,
    ZeroInput,
    field_from_selector,
)
from .freudenthal import classify_dim6, classify_dim9, h3
from .orbits import (
    NotSemistable,
    PivotSearchExhausted,
    ZeroVector,
    gamma_x,
    invariant,
    reduce_tuple,
    stratify,
)
from .quadforms import QuadraticForm
from .quartic import grad_j, j_invariant, q_cov
from .symplectic import is_symplectic, similitude_factor
from .wedgerep import NotInX, XTuple, act, from_tuple, to_tuple, wedge_from_json

SCHEMA = "wedgeorbits/1"

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_NOT_IN_X = 3
EXIT_UNSUPPORTED = 4
EXIT_BUDGET = 5


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(EXIT_BAD_INPUT, "cannot read JSON from %s: %s" % (path, e))


def _ctx(args):
    try:
        return field_from_selector(args.field)
    except (ValueError, UnsupportedFieldOperation) as e:
        raise CliError(EXIT_BAD_INPUT, str(e))


def _parse_vector(ctx, obj):
    """Accept {'wedge': [...]} or the tuple form {'x0': .., 'A': ..}."""
    try:
        if "wedge" in obj:
            vec = wedge_from_json(ctx, obj)
            return to_tuple(ctx, vec)
        return XTuple.from_json(ctx, obj)
    except NotInX as e:
        raise CliError(EXIT_NOT_IN_X, str(e))
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as e:
        raise CliError(EXIT_BAD_INPUT, "bad vector: %s" % e)


def _parse_matrix6(ctx, obj):
    try:
        rows = obj["matrix"] if isinstance(obj, dict) else obj
        m = [[ctx.parse(x) for x in row] for row in rows]
        if len(m) != 6 or any(len(r) != 6 for r in m):
            raise ValueError("need a 6x6 matrix")
        return m
    except (KeyError, ValueError, TypeError) as e:
        raise CliError(EXIT_BAD_INPUT, "bad matrix: %s" % e)


def _report(args, payload):
    out = {"schema": SCHEMA, "version": __version__, "field": args.field}
    for k in ("mode", "seed", "jobs"):
        if hasattr(args, k):
            out[k] = getattr(args, k)
    out.update(payload)
    json.dump(out, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def cmd_act(args):
    ctx = _ctx(args)
    t = _parse_vector(ctx, _load_json(args.vector))
    g = _parse_matrix6(ctx, _load_json(args.g))
    if not is_symplectic(ctx, g) and similitude_factor(ctx, g) is None:
        raise CliError(EXIT_BAD_INPUT, "matrix is not a symplectic similitude")
    moved = to_tuple(ctx, act(ctx, g, from_tuple(t)))
    _report(args, {"result": moved.to_json(), "J": ctx.format(j_invariant(moved))})
    return EXIT_OK


def cmd_j(args):
    ctx = _ctx(args)
    t = _parse_vector(ctx, _load_json(args.vector))
    g = grad_j(t)
    q = q_cov(t)
    s = stratify(t)
    payload = {
        "J": ctx.format(j_invariant(t)),
        "grad_zero": g.is_zero(),
        "q_cov_rank": q.rank(),
        "stratum": s.tag,
    }
    if s.tag == "x3":
        payload["i"] = ctx.format(s.i)
        cls, split = gamma_x(t)
        payload["gamma_X"] = {"disc_class": ctx.format(cls), "split": split}
    _report(args, payload)
    return EXIT_OK


def cmd_reduce(args):
    ctx = _ctx(args)
    t = _parse_vector(ctx, _load_json(args.vector))
    tr = reduce_tuple(t, seed=args.seed)
    _report(
        args,
        {
            "canonical": tr.canonical.to_json(),
            "word": [repr(d) for d in tr.word],
            "word_length": len(tr.word),
            "J": ctx.format(j_invariant(tr.canonical)),
        },
    )
    return EXIT_OK


def cmd_classify(args):
    ctx = _ctx(args)
    t = _parse_vector(ctx, _load_json(args.vector))
    inv = invariant(t, mode=args.mode, seed=args.seed)
    _report(args, {"invariant": inv.to_json(ctx)})
    return EXIT_OK


def cmd_census(args):
    try:
        rep = run_census(
            args.p,
            full=args.full,
            sample=args.sample,
            seed=args.seed,
            jobs=args.jobs,
            backend=args.backend,
        )
    except ScopeTooLarge as e:
        raise CliError(EXIT_BAD_INPUT, str(e))
    json.dump(rep, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_algebra(args):
    ctx = _ctx(args)
    if args.zorn:
        alg = zorn(ctx)
    else:
        try:
            lams = [ctx.parse(s) for s in args.lams.split(",")] if args.lams else []
            alg = cd_tower(ctx, lams)
        except (ValueError, ZeroDivisionError) as e:
            raise CliError(EXIT_BAD_INPUT, "bad lambda chain: %s" % e)
    diag, _ = alg.norm.diagonalize()
    payload = {
        "dim": alg.dim,
        "provenance": [str(x) for x in alg.provenance],
        "norm_diagonal": [ctx.format(d) for d in diag],
        "norm_invariants": alg.norm.invariants().to_json(),
    }
    if alg.dim >= 2:
        payload["split"] = alg.is_split()
    _report(args, payload)
    return EXIT_OK


def cmd_freudenthal(args):
    ctx = _ctx(args)
    try:
        gamma = [ctx.parse(s) for s in args.gamma.split(",")]
    except ValueError as e:
        raise CliError(EXIT_BAD_INPUT, "bad gamma: %s" % e)
    spec = args.c
    if spec == "base":
        alg = base_algebra(ctx)
    elif spec == "zorn":
        alg = zorn(ctx)
    elif spec.startswith("cd:"):
        alg = cd_tower(ctx, [ctx.parse(s) for s in spec[3:].split(",")])
    else:
        raise CliError(EXIT_BAD_INPUT, "composition algebra spec must be base, zorn or cd:l1,l2,..")
    try:
        fr = h3(alg, gamma)
    except Exception as e:
        raise CliError(EXIT_UNSUPPORTED, str(e))
    tf = fr.trace_form()
    formula = fr.trace_form_formula()
    diag, _ = tf.diagonalize()
    _report(
        args,
        {
            "dim": fr.dim,
            "trace_form_diagonal": [ctx.format(d) for d in diag if d != ctx.zero],
            "formula_invariants": formula.invariants().to_json(),
            "isometric_to_formula": tf.isometric(formula),
        },
    )
    return EXIT_OK


def cmd_form(args):
    ctx = _ctx(args)
    q1 = QuadraticForm.from_json(ctx, _load_json(args.form))
    payload = {"invariants": q1.invariants().to_json(), "isotropic": q1.is_isotropic()}
    if args.other:
        q2 = QuadraticForm.from_json(ctx, _load_json(args.other))
        payload["isometric"] = q1.isometric(q2)
    _report(args, payload)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="wedgeorbits",
        description="Exact orbit classification in the 14-dimensional symplectic representation",
    )
    ap.add_argument("--field", default="Q", help="Q or F:p (odd prime)")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("act", help="apply a 6x6 symplectic (similitude) matrix to a vector")
    p.add_argument("g", help="JSON file with a 6x6 matrix (or {'matrix': ..})")
    p.add_argument("vector", help="JSON vector ({'wedge': [..]} or tuple form)")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("j", help="quartic invariant, gradient and covariant data at a point")
    p.add_argument("vector")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("reduce", help="reduce a vector to canonical (1, y0, 0, diag) form")
    p.add_argument("vector")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("classify", help="orbit invariant of a vector")
    p.add_argument("vector")
    p.add_argument("--mode", default="sp6", choices=["sp6", "sp6gl1", "gsp6gl1"])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="finite-field stratum and fiber census")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--full", action="store_true", help="enumerate all p^14 vectors (p = 3 only)")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--backend", default=None, choices=available_backends())
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("algebra", help="construct a composition algebra and report its norm")
    p.add_argument("--lams", default="", help="comma-separated Cayley-Dickson scalars")
    p.add_argument("--zorn", action="store_true", help="the split octonion algebra")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("freudenthal", help="H3(C, Gamma) trace form vs the closed formula")
    p.add_argument("--c", required=True, help="base | zorn | cd:l1,l2,..")
    p.add_argument("--gamma", required=True, help="comma-separated diagonal of Gamma")
    p.set_defaults(func=cmd_freudenthal)

    p = sub.add_parser("form", help="quadratic form invariants and isometry")
    p.add_argument("form", help="JSON {'field':.., 'gram': [[..]]}")
    p.add_argument("--other", default=None, help="second form for an isometry test")
    p.set_defaults(func=cmd_form)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print("error: %s" % e, file=sys.stderr)
        return e.code
    except NotInX as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_NOT_IN_X
    except (ZeroVector, ZeroInput, NotSemistable) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_BAD_INPUT
    except PivotSearchExhausted as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_BUDGET
    except (FactorizationBoundExceeded, UnsupportedFieldOperation) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
