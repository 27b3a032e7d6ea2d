"""Command-line front end.

Every option that takes a document accepts either a path to a JSON file
or the JSON text itself. Exit codes: 0 success, 2 impossibility verdict,
3 bound exhausted, 64 malformed input, 65 failed precondition, 1 failing
corpus cases.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import apery, documents, fibsum, gluing
from .algebra import apery_transport, flat_base_change, tensor_vs_fibersum
from .documents import SCHEMA_VERSION, dumps
from .errors import AffsemiError, ParseError, PreconditionError
from .semigroup import (
    AffineSemigroup,
    conductor,
    gcd_numerical,
    member,
    minimal_generators_numerical,
)

EXIT_OK, EXIT_FAIL, EXIT_IMPOSSIBLE, EXIT_BOUND = 0, 1, 2, 3
EXIT_PARSE, EXIT_PRECONDITION = 64, 65

DEFAULT_MEMBER_BOUND = 64
DEFAULT_DEGREE_BOUND = 100
DEFAULT_GLUE_BOUND = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# -- input helpers ----------------------------------------------------------------

def _load(text: str) -> Any:
    s = text.strip()
    if s[:1] in "{[":
        return documents.loads(s)
    try:
        return documents.loads(Path(text).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {text}: {exc.strerror}") from None


def _semigroup(text: str) -> AffineSemigroup:
    return documents.parse_semigroup(_load(text))


def _vector(text: str) -> tuple[int, ...]:
    s = text.strip()
    if s.startswith("["):
        return documents.parse_vector(documents.loads(s))
    try:
        return tuple(int(x) for x in s.split(",")) if s else ()
    except ValueError:
        raise ParseError(f"bad vector {text!r}") from None


def _rational(text: str) -> Fraction:
    return documents.parse_rational(text)


def _vec(v) -> list | None:
    return None if v is None else [int(x) for x in v]


def _sg(s: AffineSemigroup) -> dict:
    return documents.print_semigroup(s)


# -- subcommands -------------------------------------------------------------------

def cmd_info(args):
    s = _semigroup(args.S)
    ok, w = s.positivity
    rep = {"dim": s.ambient_dim, "gens": [list(g) for g in s.generators], "rank": s.rank,
           "gp": [list(r) for r in s.group.basis], "positive": ok, "numerical": s.is_numerical,
           "grading": _vec(s.grading)}
    if s.is_numerical and not s.is_trivial:
        rep.update(gcd=gcd_numerical(s), conductor=conductor(s),
                   minimal_generators=list(minimal_generators_numerical(s)))
    return EXIT_OK, rep


def cmd_member(args):
    s = _semigroup(args.S)
    dec = member(s, _vector(args.x), bound=args.bound)
    rep = {"verdict": dec.verdict, "coefficients": _vec(dec.coefficients), "search_bound": dec.search_bound}
    return (EXIT_BOUND if dec.verdict == "Unknown" else EXIT_OK), rep


def cmd_gp(args):
    s = _semigroup(args.S)
    rep = {"basis": [list(r) for r in s.group.basis], "rank": s.rank}
    if args.intersect:
        from .exactlat import lattice_intersect
        t = _semigroup(args.intersect)
        inter = lattice_intersect(s.group, t.group)
        rep["intersection"] = [list(r) for r in inter.basis]
        rep["intersection_rank"] = inter.rank
    return EXIT_OK, rep


def cmd_positive(args):
    s = _semigroup(args.S)
    ok, w = s.positivity
    return EXIT_OK, {"positive": ok, "grading" if ok else "zero_combination": list(w)}


def _context(args) -> fibsum.FiberedSumContext:
    if args.ctx:
        f = documents.parse_context(_load(args.ctx))
    else:
        if not (args.S1 and args.S2 and args.S):
            raise ParseError("fibsum needs --ctx or all of --S1, --S2, --S")
        f = {"S1": _semigroup(args.S1), "S2": _semigroup(args.S2), "S": _semigroup(args.S),
             "h1": documents.parse_matrix(_load(args.h1)) if args.h1 else None,
             "h2": documents.parse_matrix(_load(args.h2)) if args.h2 else None}
    return fibsum.ctx_new(f["S1"], f["S2"], f["S"], f["h1"], f["h2"])


def _pair(ctx, text):
    doc = documents.loads(text) if text.strip().startswith("[") else None
    if not (isinstance(doc, list) and len(doc) == 2):
        raise ParseError(f"element must be written [[a...],[b...]], got {text!r}")
    return ctx.element(documents.parse_vector(doc[0], ctx.d1), documents.parse_vector(doc[1], ctx.d2))


def cmd_fibsum(args):
    ctx = _context(args)
    checks = set(args.check or ["all"])
    every = "all" in checks
    rep: dict[str, Any] = {"rel": [list(r) for r in ctx.rel.basis], "free_rank": ctx.quot.free_rank,
                           "torsion": list(ctx.quot.torsion_invariants)}
    if every or "torsionfree" in checks:
        rep["torsion_free"] = fibsum.is_torsion_free(ctx)
        tw = fibsum.torsion_witness(ctx)
        rep["torsion_witness"] = None if tw is None else {"element": list(tw[0]), "order": tw[1]}
    if every or "tilde" in checks:
        tp = fibsum.tilde_presentation(ctx)
        rep["tilde"] = _sg(tp.semigroup)
        rep["tilde_positive"] = tp.semigroup.positivity[0]
    same_dim = ctx.d1 == ctx.d2 == ctx.S.ambient_dim
    if (every or "gp" in checks) and same_dim and args.h1 is None and args.h2 is None:
        rep["gp_condition"] = fibsum.gp_condition(ctx.S1, ctx.S2, ctx.S)
    if (every or "compare" in checks) and ctx.d1 == ctx.d2:
        cmp = fibsum.compare_with_sum(ctx, ctx.d1, bound=args.bound)
        rep["compare"] = {"verdict": cmp.verdict, "reason": cmp.reason, "free_rank": cmp.free_rank,
                          "sum_rank": cmp.sum_rank,
                          "witness": None if cmp.witness is None else
                          [[list(x.a), list(x.b)] for x in cmp.witness]}
    if every or "positivity" in checks:
        try:
            pr = apery.positivity_preservation(ctx)
            rep["positivity"] = {"guaranteed": pr.guaranteed, "rule": pr.rule, "caveat": pr.caveat,
                                 "tilde_positive": pr.tilde_positive}
        except PreconditionError as exc:
            rep["positivity"] = {"error": str(exc)}
    if args.pair1 and args.pair2:
        x, y = _pair(ctx, args.pair1), _pair(ctx, args.pair2)
        rep["equal_cancellative"] = fibsum.eq_cancellative(x, y)
        rep["equal_torsionfree"] = fibsum.eq_torsionfree(x, y)
        wit = fibsum.cancellative_witness(x, y)
        rep["cancellative_witness"] = None if wit is None else [list(wit[0]), list(wit[1])]
    return EXIT_OK, rep


def cmd_apery(args):
    r = apery.apery_set(_semigroup(args.Sp), _semigroup(args.S), _rational(args.bound))
    return EXIT_OK, {"elements": [list(w) for w in r.elements], "complete": r.complete,
                     "degree_bound": documents.print_rational(r.degree_bound), "grading": list(r.grading)}


def cmd_flat(args):
    v = apery.flatness_verdict(_semigroup(args.Sp), _semigroup(args.S), _rational(args.bound))
    rep = {"kind": v.kind, "bound": None if v.bound is None else documents.print_rational(v.bound),
           "witness": None if v.witness is None else [list(x) for x in v.witness], "reason": v.reason}
    code = {apery.UNIQUE_PROVEN: EXIT_OK, apery.NON_UNIQUE: EXIT_IMPOSSIBLE}.get(v.kind, EXIT_BOUND)
    return code, rep


def cmd_basechange(args):
    a1 = documents.parse_algebra(_load(args.A1))
    a2 = documents.parse_algebra(_load(args.A2))
    bound = _rational(args.bound)
    bc = flat_base_change(a1, a2, bound)
    tv = tensor_vs_fibersum(a1, a2, bound)
    tr = apery_transport(a1, a2, bound)
    rep = {"ring": documents.print_ring(bc.ring), "ring_text": str(bc.ring),
           "map1": [[list(k), list(v)] for k, v in bc.map1.items()],
           "map2": [[list(k), list(v)] for k, v in bc.map2.items()],
           "flatness": bc.flatness.kind, "caveat": bc.caveat,
           "positive": bc.ring.semigroup.positivity[0],
           "tensor": {"verdict": tv.verdict, "reason": tv.reason,
                      "witness": None if tv.witness is None else
                      {"element": list(tv.witness[0]), "order": tv.witness[1]}},
           "apery_images": [list(v) for v in tr.images],
           "apery_target": [list(v) for v in tr.target],
           "apery_lost": [list(v) for v in tr.non_apery_images]}
    return EXIT_OK, rep


def _glue_report(rep: gluing.GluingReport) -> dict:
    return {"verdict": rep.verdict, "a": rep.a, "b": rep.b, "w": _vec(rep.w),
            "glued": None if rep.glued is None else _sg(rep.glued), "rank": rep.rank, "bound": rep.bound}


def cmd_glue(args):
    s1, s2 = _semigroup(args.S1), _semigroup(args.S2)
    if args.numerical:
        if args.a is None or args.b is None:
            raise ParseError("--numerical needs --a and --b")
        g = gluing.glue_numerical(s1, s2, args.a, args.b)
        return EXIT_OK, {"glued": _sg(g.semigroup), "identified": g.identified,
                         "warnings": list(g.warnings), "fibersum_agrees": g.fibersum_agrees}
    if args.search or args.a is None:
        rep = gluing.search_gluing(s1, s2, args.bound)
    else:
        rep = gluing.can_glue_with(gluing.GluingQuery(s1, s2, args.a, args.b if args.b else 1, args.bound))
    out = _glue_report(rep)
    if rep.is_yes and args.binomials is not None:
        bins, names = gluing.gluing_binomials(s1, s2, rep.a, rep.b, args.binomials)
        n1 = len(s1.generators)
        out["binomials"] = {"diagnostic_only": True,
                            "mixed": [b.render(names) for b in bins if b.kind(n1) == "mixed"]}
    code = {gluing.YES: EXIT_OK, gluing.NOT_FOUND: EXIT_BOUND}.get(rep.verdict, EXIT_IMPOSSIBLE)
    return code, out


# -- corpus ----------------------------------------------------------------------

def load_corpus() -> list[dict]:
    text = resources.files("affsemi").joinpath("corpus.json").read_text()
    return json.loads(text)["cases"]


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _matches(v, actual[k])
                                                for k, v in expected.items())
    return dumps(expected) == dumps(actual)


def run_case(case: dict) -> tuple[bool, str]:
    code, rep = run(case["argv"])
    if code != case.get("exit", 0):
        return False, f"exit {code}, expected {case.get('exit', 0)}"
    if not _matches(case.get("expect", {}), rep):
        return False, f"report {dumps(rep)} does not match {dumps(case['expect'])}"
    return True, "ok"


def cmd_examples(args):
    cases = sorted(load_corpus(), key=lambda c: c["id"])
    if args.filter:
        cases = [c for c in cases if c["id"].startswith(args.filter)]
        if not cases:
            print(f"warning: no corpus case matches {args.filter!r}", file=sys.stderr)
    results = []
    for c in cases:
        ok, msg = run_case(c)
        results.append({"id": c["id"], "passed": ok, "detail": msg})
    failed = sum(not r["passed"] for r in results)
    rep = {"cases": results, "total": len(results), "passed": len(results) - failed, "failed": failed}
    return (EXIT_FAIL if failed else EXIT_OK), rep


# -- driver ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affsemi", description="Affine semigroups, fibered sums and gluing.")
    p.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("info", cmd_info, "summary of a semigroup")
    sp.add_argument("--S", required=True)
    sp = add("member", cmd_member, "membership with coefficients")
    sp.add_argument("--S", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--bound", type=int, default=DEFAULT_MEMBER_BOUND)
    sp = add("gp", cmd_gp, "group of differences")
    sp.add_argument("--S", required=True)
    sp.add_argument("--intersect")
    sp = add("positive", cmd_positive, "positivity with a certificate")
    sp.add_argument("--S", required=True)
    sp = add("fibsum", cmd_fibsum, "fibered sum of S1 <- S -> S2")
    for k in ("ctx", "S1", "S2", "S", "h1", "h2", "pair1", "pair2"):
        sp.add_argument(f"--{k}")
    sp.add_argument("--check", action="append",
                    choices=["all", "torsionfree", "tilde", "compare", "gp", "positivity"])
    sp.add_argument("--bound", type=int, default=12, help="witness search bound for compare")
    sp = add("apery", cmd_apery, "Apery elements of S' over S")
    sp.add_argument("--Sp", required=True)
    sp.add_argument("--S", required=True)
    sp.add_argument("--bound", default=str(DEFAULT_DEGREE_BOUND))
    sp = add("flat", cmd_flat, "unique representation verdict")
    sp.add_argument("--Sp", required=True)
    sp.add_argument("--S", required=True)
    sp.add_argument("--bound", default=str(DEFAULT_DEGREE_BOUND))
    sp = add("basechange", cmd_basechange, "flat base change of R1/R by R2/R")
    sp.add_argument("--A1", required=True)
    sp.add_argument("--A2", required=True)
    sp.add_argument("--bound", default=str(DEFAULT_DEGREE_BOUND))
    sp = add("glue", cmd_glue, "gluing decision")
    sp.add_argument("--S1", required=True)
    sp.add_argument("--S2", required=True)
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--search", action="store_true")
    sp.add_argument("--numerical", action="store_true")
    sp.add_argument("--bound", type=int, default=DEFAULT_GLUE_BOUND)
    sp.add_argument("--binomials", type=int, metavar="DEGREE")
    sp = add("examples", cmd_examples, "run the bundled regression corpus")
    sp.add_argument("--filter")
    return p


def run(argv: Sequence[str]) -> tuple[int, dict]:
    """Parse and execute; returns (exit code, report) without printing."""
    try:
        args = build_parser().parse_args(list(argv))
        code, rep = args.fn(args)
        return code, {"schema_version": SCHEMA_VERSION, "command": args.command, **rep}
    except ParseError as exc:
        return EXIT_PARSE, {"schema_version": SCHEMA_VERSION, "error": "parse", "message": str(exc)}
    except (AffsemiError, ValueError) as exc:
        return EXIT_PRECONDITION, {"schema_version": SCHEMA_VERSION, "error": "precondition",
                                   "message": str(exc)}


def _text(rep: dict) -> str:
    lines = []
    for k, v in rep.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif v is None:
            v = "none"
        elif not isinstance(v, (int, str)):
            v = dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt = "json" if "--format=json" in argv or any(
        a == "--format" and i + 1 < len(argv) and argv[i + 1] == "json" for i, a in enumerate(argv)) else "text"
    code, rep = run(argv)
    out = dumps(rep) if fmt == "json" else _text(rep)
    print(out, file=sys.stderr if code in (EXIT_PARSE, EXIT_PRECONDITION) else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
