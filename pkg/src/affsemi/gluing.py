"""Gluing of positive affine semigroups.

Two semigroups glue after rescaling by ``a`` and ``b`` exactly when a single
nonzero ``w`` lying in both ``aS1`` and ``bS2`` generates
``gp(aS1) ∩ gp(bS2)``. The rank of that intersection does not depend on
the scales, so rank != 1 rules out every choice at once.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import PreconditionError
from .exactlat import Vector, lattice_intersect
from .fibsum import compare_with_sum, ctx_new, is_torsion_free, tilde_presentation
from .semigroup import (
    AffineSemigroup,
    equal_as_submonoids,
    gcd_numerical,
    member,
    minimal_generators_numerical,
    scale,
)

YES = "Yes"
NO = "No"
IMPOSSIBLE = "ImpossibleAllScales"
NOT_FOUND = "NotFoundUpTo"


def _primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    v = tuple(x // g for x in v)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def lattice_criterion(s1: AffineSemigroup, s2: AffineSemigroup) -> tuple[int, Vector | None]:
    """Rank of gp(S1) ∩ gp(S2), and its primitive direction when the rank is 1."""
    inter = lattice_intersect(s1.group, s2.group)
    if inter.rank != 1:
        return inter.rank, None
    return 1, _primitive(inter.basis[0])


@dataclass(frozen=True)
class GluingQuery:
    S1: AffineSemigroup
    S2: AffineSemigroup
    a: int = 1
    b: int = 1
    search_bound: int = 8

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise PreconditionError("scales a, b must be positive")
        if self.S1.ambient_dim != self.S2.ambient_dim:
            raise PreconditionError("S1 and S2 must share an ambient space")


@dataclass(frozen=True)
class GluingReport:
    verdict: str
    a: int | None = None
    b: int | None = None
    w: Vector | None = None
    glued: AffineSemigroup | None = None
    rank: int | None = None
    bound: int | None = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES


def _require_positive(*ss: AffineSemigroup) -> None:
    for s in ss:
        if s.grading is None:
            raise PreconditionError(f"{s!r} is not positive")


def can_glue_with(q: GluingQuery) -> GluingReport:
    _require_positive(q.S1, q.S2)
    s1, s2 = scale(q.S1, q.a), scale(q.S2, q.b)
    inter = lattice_intersect(s1.group, s2.group)
    if inter.rank != 1:
        return GluingReport(IMPOSSIBLE, q.a, q.b, rank=inter.rank)
    w = inter.basis[0]
    neg = tuple(-x for x in w)
    # prefer the representative in the nonnegative orthant
    cands = sorted([w, neg], key=lambda v: (min(v) < 0, tuple(-x for x in v)))
    for v in cands:
        if member(s1, v).is_yes and member(s2, v).is_yes:
            return GluingReport(YES, q.a, q.b, v, s1 + s2, rank=1)
    return GluingReport(NO, q.a, q.b, rank=1)


def search_gluing(s1: AffineSemigroup, s2: AffineSemigroup, bound: int = 8) -> GluingReport:
    """Scan scales in order of (a + b, a); the first Yes wins."""
    _require_positive(s1, s2)
    rank, _ = lattice_criterion(s1, s2)
    if rank != 1:
        return GluingReport(IMPOSSIBLE, rank=rank)
    for total in range(2, 2 * bound + 1):
        for a in range(max(1, total - bound), min(bound, total - 1) + 1):
            rep = can_glue_with(GluingQuery(s1, s2, a, total - a, bound))
            if rep.is_yes:
                return rep
    return GluingReport(NOT_FOUND, rank=1, bound=bound)


def verify_report(s1: AffineSemigroup, s2: AffineSemigroup, rep: GluingReport) -> bool:
    """Re-check a Yes: w nonzero, w in aS1 and bS2, and Z w = gp(aS1) ∩ gp(bS2)."""
    if not rep.is_yes:
        return False
    t1, t2 = scale(s1, rep.a), scale(s2, rep.b)
    inter = lattice_intersect(t1.group, t2.group)
    line = AffineSemigroup(s1.ambient_dim, (rep.w,)).group
    return (any(rep.w) and member(t1, rep.w).is_yes and member(t2, rep.w).is_yes
            and inter == line)


def fibersum_cross_check(s1: AffineSemigroup, s2: AffineSemigroup, rep: GluingReport) -> bool:
    """The glued semigroup against the torsion-free fibered sum of aS1, bS2 over N w."""
    t1, t2 = scale(s1, rep.a), scale(s2, rep.b)
    ctx = ctx_new(t1, t2, AffineSemigroup(s1.ambient_dim, (rep.w,)))
    cmp = compare_with_sum(ctx, s1.ambient_dim)
    return is_torsion_free(ctx) and cmp.verdict == "Isomorphic"


# -- numerical gluing ------------------------------------------------------------

@dataclass(frozen=True)
class NumericalGluing:
    semigroup: AffineSemigroup  # minimal generators of b T1 + a T2
    identified: int  # a * b
    warnings: tuple[str, ...] = field(default=())
    fibersum_agrees: bool = True


def glue_numerical(t1: AffineSemigroup, t2: AffineSemigroup, a: int, b: int) -> NumericalGluing:
    for name, t in (("T1", t1), ("T2", t2)):
        if gcd_numerical(t) != 1:
            raise PreconditionError(f"{name} = {t!r} does not have gcd 1")
    if not member(t1, (a,)).is_yes:
        raise PreconditionError(f"a = {a} is not in T1")
    if not member(t2, (b,)).is_yes:
        raise PreconditionError(f"b = {b} is not in T2")
    if math.gcd(a, b) != 1:
        raise PreconditionError(f"gcd({a}, {b}) != 1")
    warnings = []
    if a in minimal_generators_numerical(t1):
        warnings.append(f"a = {a} is a minimal generator of T1; harmless for the fibered sum")
    if b in minimal_generators_numerical(t2):
        warnings.append(f"b = {b} is a minimal generator of T2; harmless for the fibered sum")
    bt1, at2 = scale(t1, b), scale(t2, a)
    total = bt1 + at2
    glued = AffineSemigroup(1, tuple((g,) for g in minimal_generators_numerical(total)))
    ctx = ctx_new(bt1, at2, AffineSemigroup.of(a * b))
    agrees = equal_as_submonoids(tilde_presentation(ctx).semigroup, glued)
    return NumericalGluing(glued, a * b, tuple(warnings), agrees)


# -- kernel binomials (diagnostic only) -------------------------------------------

@dataclass(frozen=True)
class KernelBinomial:
    left: Vector
    right: Vector
    image: Vector

    def kind(self, n1: int) -> str:
        """``X``, ``Y`` or ``mixed`` when the first ``n1`` variables are the X's."""
        sides = []
        for e in (self.left, self.right):
            x, y = any(e[:n1]), any(e[n1:])
            sides.append("X" if x and not y else "Y" if y and not x else "both" if x else "none")
        if set(sides) <= {"X", "none"}:
            return "X"
        if set(sides) <= {"Y", "none"}:
            return "Y"
        return "mixed"

    def render(self, names: Sequence[str]) -> str:
        def mono(e):
            parts = [n if c == 1 else f"{n}^{c}" for n, c in zip(names, e) if c]
            return "*".join(parts) or "1"
        return f"{mono(self.left)} - {mono(self.right)}"


def _exponent_tuples(n: int, degree: int):
    for t in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), t):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)


def kernel_binomials(generators: Sequence[Sequence[int]], degree: int) -> list[KernelBinomial]:
    """Pairs of distinct exponent tuples of total degree <= ``degree`` with the same image.

    ``generators`` is used as given (no deduplication), so repeated
    generators produce the obvious linear binomials.
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        return []
    d = len(gens[0])
    by_image: dict[Vector, list[Vector]] = {}
    for e in _exponent_tuples(len(gens), degree):
        img = tuple(sum(c * g[j] for c, g in zip(e, gens)) for j in range(d))
        by_image.setdefault(img, []).append(e)
    out = []
    for img in sorted(by_image):
        group = sorted(by_image[img], reverse=True)
        for i, j in itertools.combinations(range(len(group)), 2):
            out.append(KernelBinomial(group[i], group[j], img))
    return out


def gluing_binomials(s1: AffineSemigroup, s2: AffineSemigroup, a: int, b: int,
                     degree: int) -> tuple[list[KernelBinomial], tuple[str, ...]]:
    """Kernel binomials of X_i -> a s_i, Y_j -> b t_j, with the variable names."""
    gens = [tuple(a * c for c in g) for g in s1.generators] + [tuple(b * c for c in g) for g in s2.generators]
    names = tuple(f"X{i + 1}" for i in range(len(s1.generators))) + \
        tuple(f"Y{j + 1}" for j in range(len(s2.generators)))
    return kernel_binomials(gens, degree), names
