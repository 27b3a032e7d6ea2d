"""Apéry elements of S' over S and unique representation (flatness) checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Cancelled, ContainmentError, PreconditionError
from .exactlat import Vector
from .semigroup import (
    AffineSemigroup,
    conductor,
    equal_as_submonoids,
    gcd_numerical,
    member,
    numerical_members,
    transform,
)

UNIQUE_PROVEN = "UniqueProven"
UNIQUE_UP_TO = "UniqueUpTo"
NON_UNIQUE = "NonUnique"


def _check_cancel(cancel) -> None:
    if cancel is not None and cancel.is_set():
        raise Cancelled("enumeration cancelled")


def _grading(sp: AffineSemigroup) -> Vector:
    lam = sp.grading
    if lam is None:
        raise PreconditionError(f"{sp!r} is not positive")
    return lam


def _deg(lam, x) -> int:
    return sum(a * b for a, b in zip(lam, x))


def _require_sub(sp: AffineSemigroup, s: AffineSemigroup) -> None:
    if sp.ambient_dim != s.ambient_dim:
        raise PreconditionError("S and S' live in different ambient spaces")
    for g in s.generators:
        if not member(sp, g).is_yes:
            raise ContainmentError(f"generator {list(g)} of S is not in S'")


def graded_elements(s: AffineSemigroup, lam: Vector, bound, cancel=None) -> list[Vector]:
    """All elements of ``s`` with ``lam``-degree at most ``bound``, sorted by (degree, vector).

    ``lam`` must be positive on every generator.
    """
    zero = (0,) * s.ambient_dim
    seen = {zero}
    frontier = [zero]
    steps = 0
    while frontier:
        nxt = []
        for x in frontier:
            for g in s.generators:
                y = tuple(a + b for a, b in zip(x, g))
                if y not in seen and _deg(lam, y) <= bound:
                    seen.add(y)
                    nxt.append(y)
            steps += 1
            if steps % 1024 == 0:
                _check_cancel(cancel)
        frontier = nxt
    return sorted(seen, key=lambda v: (_deg(lam, v), v))


@dataclass(frozen=True)
class AperyReport:
    elements: tuple[Vector, ...]
    degree_bound: Fraction
    complete: bool
    grading: Vector


def apery_over_cyclic(sp: AffineSemigroup, n: int) -> tuple[int, ...]:
    """Apr(S'/<n>) for numerical S': the least element of S' in each residue class mod n."""
    if n <= 0 or not member(sp, (n,)).is_yes:
        raise ContainmentError(f"{n} is not a positive element of {sp!r}")
    g = gcd_numerical(sp)
    limit = conductor(sp) + n
    mem = numerical_members(sp, limit)
    best: dict[int, int] = {}
    for k in range(limit + 1):
        if mem[k] and k % n not in best:
            best[k % n] = k
    out = tuple(sorted(best.values()))
    if len(out) != n // g:
        raise AssertionError(f"Apéry set over <{n}> has {len(out)} elements, expected {n // g}")
    return out


def _is_apery(members: set, s: AffineSemigroup, w: Vector) -> bool:
    # checking generators suffices: w - s in S' with s in S forces w - g in S' for some generator g
    return all(tuple(a - b for a, b in zip(w, g)) not in members for g in s.generators)


def apery_set(sp: AffineSemigroup, s: AffineSemigroup, bound, cancel=None) -> AperyReport:
    """Apéry elements of ``sp`` over ``s`` of degree at most ``bound``.

    ``complete`` is only ever set for numerical ``sp`` with ``s`` nontrivial,
    when every element of Apr(sp/<n>) (n the least generator of ``s``) has
    degree within the bound; Apr(sp/s) is contained in that set.
    """
    lam = _grading(sp)
    _require_sub(sp, s)
    bound = Fraction(bound)
    elems = graded_elements(sp, lam, bound, cancel)
    members = set(elems)
    found = []
    for i, w in enumerate(elems):
        if i % 1024 == 0:
            _check_cancel(cancel)
        if _is_apery(members, s, w):
            found.append(w)
    complete = False
    if sp.is_numerical and not s.is_trivial:
        n = min(g[0] for g in s.generators)
        complete = max(apery_over_cyclic(sp, n)) <= bound
    return AperyReport(tuple(found), bound, complete, lam)


# -- representations ---------------------------------------------------------

def representations(sp: AffineSemigroup, s: AffineSemigroup, x: Sequence[int]) -> list[tuple[Vector, Vector]]:
    """Every ``(t, w)`` with ``t`` in S, ``w`` Apéry and ``t + w == x``, ordered by (degree of t, t)."""
    lam = _grading(sp)
    x = tuple(x)
    if not member(sp, x).is_yes:
        raise ContainmentError(f"{list(x)} is not in {sp!r}")
    dx = _deg(lam, x)
    members = set(graded_elements(sp, lam, dx))
    out = []
    for t in graded_elements(s, lam, dx):
        w = tuple(a - b for a, b in zip(x, t))
        if w in members and _is_apery(members, s, w):
            out.append((t, w))
    return out


def representation(sp: AffineSemigroup, s: AffineSemigroup, x: Sequence[int],
                   policy: str = "min-degree") -> tuple[Vector, Vector]:
    """One representation ``x = t + w``; ``policy`` is ``min-degree`` or ``max-degree`` in t."""
    reps = representations(sp, s, x)
    if not reps:
        raise AssertionError("positive semigroups always admit a representation")
    if policy == "min-degree":
        return reps[0]
    if policy == "max-degree":
        lam = sp.grading
        top = max(_deg(lam, t) for t, _ in reps)
        return next(r for r in reps if _deg(lam, r[0]) == top)
    raise ValueError(f"unknown policy {policy!r}")


# -- flatness ------------------------------------------------------------------

@dataclass(frozen=True)
class FlatnessVerdict:
    kind: str  # UniqueProven | UniqueUpTo | NonUnique
    bound: Fraction | None = None
    witness: tuple[Vector, Vector, Vector, Vector] | None = None
    reason: str = ""

    @property
    def acceptable(self) -> bool:
        """True unless a collision was found."""
        return self.kind != NON_UNIQUE


def flatness_verdict(sp: AffineSemigroup, s: AffineSemigroup, bound=100, cancel=None) -> FlatnessVerdict:
    """Unique representation of every element of ``sp`` over ``s``.

    Proven outright when ``s`` is cyclic or trivial, or equals ``sp``.
    Otherwise pairs (t, w) are indexed by their sum up to degree ``bound``;
    the first colliding sum (lowest degree) gives a NonUnique witness
    ``(t1, w1, t2, w2)`` ordered so that ``w1 < w2``.
    """
    lam = _grading(sp)
    _require_sub(sp, s)
    if len(s.generators) <= 1:
        return FlatnessVerdict(UNIQUE_PROVEN, None, None, "cyclic base")
    if equal_as_submonoids(sp, s):
        return FlatnessVerdict(UNIQUE_PROVEN, None, None, "equal semigroups")
    bound = Fraction(bound)
    elems = graded_elements(sp, lam, bound, cancel)
    members = set(elems)
    aps = [w for w in elems if _is_apery(members, s, w)]
    base = graded_elements(s, lam, bound, cancel)
    seen: dict[Vector, tuple[Vector, Vector]] = {}
    hits = []
    for i, t in enumerate(base):
        if i % 256 == 0:
            _check_cancel(cancel)
        dt = _deg(lam, t)
        for w in aps:
            if dt + _deg(lam, w) > bound:
                break
            x = tuple(a + b for a, b in zip(t, w))
            if x in seen:
                hits.append((_deg(lam, x), x, seen[x], (t, w)))
            else:
                seen[x] = (t, w)
    if not hits:
        return FlatnessVerdict(UNIQUE_UP_TO, bound, None, "no collision within bound")
    _, _, p, q = min(hits)
    (t1, w1), (t2, w2) = sorted([p, q], key=lambda r: r[1])
    return FlatnessVerdict(NON_UNIQUE, bound, (t1, w1, t2, w2), "two representations")


# -- positivity of fibered sums ------------------------------------------------

@dataclass(frozen=True)
class PositivityReport:
    guaranteed: bool
    rule: str | None  # "(i)" unique representation of S2 over S, "(ii)" S numerical
    caveat: str | None
    tilde_positive: bool


def positivity_preservation(ctx, bound=100) -> PositivityReport:
    """Sufficient conditions for the torsion-free fibered sum to be positive, plus a direct check."""
    from .fibsum import tilde_presentation

    for name, sg in (("S1", ctx.S1), ("S2", ctx.S2)):
        if sg.grading is None:
            raise PreconditionError(f"{name} is not positive")
    tilde_pos = tilde_presentation(ctx).semigroup.positivity[0]
    if ctx.S.is_numerical and not ctx.S.is_trivial:
        return PositivityReport(True, "(ii)", None, tilde_pos)
    image = transform(ctx.S, ctx.h2.matrix) if ctx.S.generators else AffineSemigroup(ctx.d2)
    v = flatness_verdict(ctx.S2, image, bound)
    if v.kind == UNIQUE_PROVEN:
        return PositivityReport(True, "(i)", None, tilde_pos)
    if v.kind == UNIQUE_UP_TO:
        return PositivityReport(True, "(i)", f"unique representation checked only up to degree {v.bound}",
                                tilde_pos)
    return PositivityReport(False, None, None, tilde_pos)
