"""JSON documents for semigroups, rings, algebras, contexts and matrices.

Rationals are written as integers when integral and as ``"p/q"`` strings
otherwise. Printing is canonical (sorted keys, compact separators), so a
printed document re-parses to an equal value and prints identically.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import Algebra, EmbeddedRing
from .errors import ParseError
from .semigroup import AffineSemigroup

SCHEMA_VERSION = 1


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed document: {exc}") from None


# -- scalars and matrices ------------------------------------------------------

def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"expected a number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational literal {v!r}") from None
    raise ParseError(f"expected an integer or a 'p/q' string, got {v!r}")


def print_rational(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_int(v, what="integer") -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an {what}, got {v!r}")
    return v


def parse_vector(v, dim: int | None = None) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise ParseError(f"expected a list of integers, got {v!r}")
    out = tuple(parse_int(x) for x in v)
    if dim is not None and len(out) != dim:
        raise ParseError(f"vector {list(out)} should have length {dim}")
    return out


def parse_matrix(v) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise ParseError("a matrix is a list of rows")
    m = tuple(tuple(parse_rational(x) for x in r) for r in v)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ParseError("matrix rows have different lengths")
    return m


def print_matrix(m) -> list:
    return [[print_rational(Fraction(x)) for x in r] for r in m]


# -- semigroups, rings, algebras ---------------------------------------------

def _expect(doc, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"a {kind} document must be an object")
    t = doc.get("type", kind)
    if t != kind:
        raise ParseError(f"expected a {kind} document, got type {t!r}")
    return doc


def parse_semigroup(doc) -> AffineSemigroup:
    doc = _expect(doc, "semigroup")
    if "dim" not in doc:
        raise ParseError("semigroup document needs 'dim'")
    dim = parse_int(doc["dim"], "ambient dimension")
    if dim < 0:
        raise ParseError("negative dimension")
    gens = doc.get("gens", [])
    if not isinstance(gens, list):
        raise ParseError("'gens' must be a list")
    return AffineSemigroup(dim, tuple(parse_vector(g, dim) for g in gens))


def print_semigroup(s: AffineSemigroup) -> dict:
    return {"type": "semigroup", "dim": s.ambient_dim, "gens": [list(g) for g in s.generators]}


def parse_ring(doc) -> EmbeddedRing:
    doc = _expect(doc, "ring")
    sg = parse_semigroup({"dim": doc.get("dim"), "gens": doc.get("gens", [])})
    denom = parse_int(doc.get("denom", 1), "denominator")
    names = doc.get("vars", [])
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError("'vars' must be a list of strings")
    return EmbeddedRing(sg, denom, tuple(names))


def print_ring(r: EmbeddedRing) -> dict:
    return {"type": "ring", "dim": r.dim, "gens": [list(g) for g in r.semigroup.generators],
            "denom": r.denom, "vars": list(r.var_names)}


def parse_algebra(doc) -> Algebra:
    doc = _expect(doc, "algebra")
    if "ring" not in doc or "base" not in doc:
        raise ParseError("algebra document needs 'ring' and 'base'")
    return Algebra(parse_ring(doc["ring"]), parse_ring(doc["base"]))


def print_algebra(a: Algebra) -> dict:
    return {"type": "algebra", "ring": print_ring(a.ring), "base": print_ring(a.base)}


def parse_context(doc) -> dict:
    """Parsed context fields; ``h1``/``h2`` are None when omitted (inclusions)."""
    doc = _expect(doc, "context")
    for k in ("S1", "S2", "S"):
        if k not in doc:
            raise ParseError(f"context document needs {k!r}")
    return {
        "S1": parse_semigroup(doc["S1"]),
        "S2": parse_semigroup(doc["S2"]),
        "S": parse_semigroup(doc["S"]),
        "h1": parse_matrix(doc["h1"]) if doc.get("h1") is not None else None,
        "h2": parse_matrix(doc["h2"]) if doc.get("h2") is not None else None,
    }


def print_context(fields: dict) -> dict:
    out = {"type": "context"}
    for k in ("S1", "S2", "S"):
        out[k] = print_semigroup(fields[k])
    for k in ("h1", "h2"):
        if fields.get(k) is not None:
            out[k] = print_matrix(fields[k])
    return out


PARSERS = {
    "semigroup": parse_semigroup,
    "ring": parse_ring,
    "algebra": parse_algebra,
    "context": parse_context,
}

PRINTERS = {
    "semigroup": print_semigroup,
    "ring": print_ring,
    "algebra": print_algebra,
    "context": print_context,
}


def parse_document(doc) -> tuple[str, Any]:
    if not isinstance(doc, dict) or doc.get("type") not in PARSERS:
        raise ParseError("document needs a 'type' of semigroup, ring, algebra or context")
    return doc["type"], PARSERS[doc["type"]](doc)


def print_document(kind: str, value) -> dict:
    return PRINTERS[kind](value)
