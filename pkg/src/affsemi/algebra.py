"""Affine semigroup rings with explicit, possibly rational, monomial embeddings.

Only exponents are ever manipulated; the coefficient field stays implicit.
A ring stores integer exponent vectors together with a denominator ``m``,
so the monomial for exponent ``e`` is ``u^(e/m)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .apery import (
    UNIQUE_PROVEN,
    FlatnessVerdict,
    apery_set,
    flatness_verdict,
)
from .errors import ContainmentError, DimensionMismatch, PreconditionError
from .exactlat import Vector, determinant, rational_rank, solve_rational
from .fibsum import (
    FiberedSumContext,
    TildePresentation,
    ctx_new,
    is_torsion_free,
    tilde_presentation,
    torsion_witness,
)
from .semigroup import AffineSemigroup, equal_as_submonoids, member, rational_matrix

_SHORT_NAMES = ("x", "y", "z")


def default_names(d: int, stem: str | None = None) -> tuple[str, ...]:
    if stem is not None:
        return tuple(f"{stem}{i + 1}" for i in range(d))
    if d <= len(_SHORT_NAMES):
        return _SHORT_NAMES[:d]
    return tuple(f"x{i + 1}" for i in range(d))


@dataclass(frozen=True)
class EmbeddedRing:
    """``k[u^(S/denom)]`` in the variables ``var_names``."""

    semigroup: AffineSemigroup
    denom: int = 1
    var_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.denom < 1:
            raise PreconditionError("denominator must be positive")
        names = tuple(self.var_names) or default_names(self.semigroup.ambient_dim)
        if len(names) != self.semigroup.ambient_dim:
            raise DimensionMismatch(f"{len(names)} variable names for Z^{self.semigroup.ambient_dim}")
        if len(set(names)) != len(names):
            raise PreconditionError(f"variable names repeat: {names}")
        g = reduce(math.gcd, (c for v in self.semigroup.generators for c in v), self.denom)
        sg, m = self.semigroup, self.denom
        if g > 1:
            sg = AffineSemigroup(sg.ambient_dim, tuple(tuple(c // g for c in v) for v in sg.generators))
            m //= g
        object.__setattr__(self, "semigroup", sg)
        object.__setattr__(self, "denom", m)
        object.__setattr__(self, "var_names", names)

    @classmethod
    def from_exponents(cls, exps: Sequence[Sequence], var_names: Sequence[str] = ()) -> EmbeddedRing:
        """Build from rational exponent vectors, e.g. ``[[Fraction(3, 2)], [5]]``."""
        rows = [tuple(Fraction(c) for c in e) for e in exps]
        if not rows:
            raise ValueError("need at least one exponent vector; use EmbeddedRing(AffineSemigroup(d)) for k")
        m = reduce(math.lcm, (c.denominator for r in rows for c in r), 1)
        gens = tuple(tuple(int(c * m) for c in r) for r in rows)
        return cls(AffineSemigroup(len(rows[0]), gens), m, tuple(var_names))

    @property
    def dim(self) -> int:
        return self.semigroup.ambient_dim

    @property
    def exponents(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(c, self.denom) for c in g) for g in self.semigroup.generators)

    def scaled_semigroup(self, m: int) -> AffineSemigroup:
        """Exponents written over the denominator ``m`` (a multiple of ``denom``)."""
        if m % self.denom:
            raise PreconditionError(f"{m} is not a multiple of {self.denom}")
        k = m // self.denom
        return AffineSemigroup(self.dim, tuple(tuple(k * c for c in g) for g in self.semigroup.generators))

    def monomial(self, exponent: Sequence) -> Monomial:
        """Monomial with rational exponent vector ``exponent``."""
        e = tuple(Fraction(c) * self.denom for c in exponent)
        if any(c.denominator != 1 for c in e):
            raise ContainmentError(f"exponent {[str(c) for c in exponent]} is not over 1/{self.denom}")
        return Monomial(self, tuple(int(c) for c in e))

    def generators(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(self, g) for g in self.semigroup.generators)

    def __str__(self) -> str:
        gens = sorted(self.semigroup.generators, reverse=True)
        return "k[" + ", ".join(str(Monomial._trusted(self, g)) for g in gens) + "]"


def _format_power(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    if e.denominator == 1:
        return f"{name}^{e.numerator}"
    return f"{name}^({e.numerator}/{e.denominator})"


@dataclass(frozen=True)
class Monomial:
    ring: EmbeddedRing
    exponent: Vector

    def __post_init__(self):
        object.__setattr__(self, "exponent", tuple(int(c) for c in self.exponent))
        if not member(self.ring.semigroup, self.exponent, bound=64).is_yes:
            raise ContainmentError(f"{self} is not a monomial of {self.ring}")

    @classmethod
    def _trusted(cls, ring, exponent) -> Monomial:
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "exponent", tuple(exponent))
        return obj

    def __mul__(self, other: Monomial) -> Monomial:
        if other.ring != self.ring:
            raise PreconditionError("monomials from different rings")
        return Monomial._trusted(self.ring, tuple(a + b for a, b in zip(self.exponent, other.exponent)))

    def __pow__(self, n: int) -> Monomial:
        if n < 0:
            raise ValueError("negative power")
        return Monomial._trusted(self.ring, tuple(n * a for a in self.exponent))

    @property
    def rational_exponent(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.ring.denom) for c in self.exponent)

    def __str__(self) -> str:
        parts = [_format_power(n, e) for n, e in zip(self.ring.var_names, self.rational_exponent) if e]
        return "*".join(parts) or "1"


# -- changes of embedding ------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingChange:
    """Rational matrix acting on exponent column vectors.

    Square matrices must be invertible; a taller matrix must have full column
    rank, so it still embeds the exponent group.
    """

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = rational_matrix(self.matrix)
        if not m or len(m) < len(m[0]):
            raise PreconditionError("embedding change must have at least as many rows as columns")
        if len(m) == len(m[0]):
            if determinant(m) == 0:
                raise PreconditionError("embedding change is not invertible")
        elif rational_rank(m) != len(m[0]):
            raise PreconditionError("embedding change is not injective")
        object.__setattr__(self, "matrix", m)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def inverse(self) -> EmbeddingChange:
        if self.source_dim != self.target_dim:
            raise PreconditionError("only square changes can be inverted")
        n = self.source_dim
        rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.matrix)]
        for c in range(n):
            p = next(r for r in range(c, n) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [x / piv for x in rows[c]]
            for r in range(n):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return EmbeddingChange(tuple(tuple(r[n:]) for r in rows))

    def apply(self, e: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(row, e)), Fraction(0)) for row in self.matrix)


def reembed(ring: EmbeddedRing, change: EmbeddingChange, var_names: Sequence[str] = ()) -> EmbeddedRing:
    """The same ring seen through the change of exponents ``change``."""
    if change.source_dim != ring.dim:
        raise DimensionMismatch(f"change acts on Q^{change.source_dim}, ring lives in Q^{ring.dim}")
    names = tuple(var_names) or (ring.var_names if change.target_dim == ring.dim
                                 else default_names(change.target_dim))
    if not ring.semigroup.generators:
        return EmbeddedRing(AffineSemigroup(change.target_dim), 1, names)
    return EmbeddedRing.from_exponents([change.apply(e) for e in ring.exponents], names)


def same_ring(r1: EmbeddedRing, r2: EmbeddedRing) -> bool:
    """Equal exponent monoids after bringing both to a common denominator."""
    if r1.dim != r2.dim:
        return False
    m = math.lcm(r1.denom, r2.denom)
    return equal_as_submonoids(r1.scaled_semigroup(m), r2.scaled_semigroup(m), bound=64)


def is_finer(s) -> bool:
    """``v = u^s``: the u-embedding is finer exactly when ``s`` is a positive integer."""
    s = Fraction(s)
    return s.denominator == 1 and s > 0


# -- algebras and flat base change --------------------------------------------

@dataclass(frozen=True)
class Algebra:
    """``ring`` over its coefficient ring ``base``, both in the same variables."""

    ring: EmbeddedRing
    base: EmbeddedRing

    def __post_init__(self):
        if self.ring.var_names != self.base.var_names:
            raise PreconditionError("ring and coefficient ring use different variables")
        sp, s = self.semigroups()
        for g in s.generators:
            if not member(sp, g, bound=64).is_yes:
                raise ContainmentError(f"coefficient ring generator {list(g)} is not in the ring")

    @property
    def denom(self) -> int:
        return math.lcm(self.ring.denom, self.base.denom)

    def semigroups(self) -> tuple[AffineSemigroup, AffineSemigroup]:
        """(S', S) as integer semigroups over the common denominator."""
        m = self.denom
        return self.ring.scaled_semigroup(m), self.base.scaled_semigroup(m)

    def flatness(self, bound=100) -> FlatnessVerdict:
        sp, s = self.semigroups()
        return flatness_verdict(sp, s, bound)


def _base_identification(a1: Algebra, a2: Algebra):
    """Matrix carrying the base generators of ``a1`` onto those of ``a2``, in order."""
    _, s = a1.semigroups()
    _, t = a2.semigroups()
    g, h = s.generators, t.generators
    if len(g) != len(h):
        raise PreconditionError("coefficient rings have different numbers of generators")
    if not g:
        return tuple(tuple(Fraction(0) for _ in range(s.ambient_dim)) for _ in range(t.ambient_dim))
    count, x = solve_rational(g, h)
    if count == 0 or rational_rank(g) != rational_rank(h):
        raise PreconditionError("coefficient rings do not match generator by generator")
    return tuple(zip(*x))


def base_context(a1: Algebra, a2: Algebra) -> FiberedSumContext:
    """Fibered-sum context S1 <- S -> S2 with S taken in the embedding of ``a1``."""
    s1, s = a1.semigroups()
    s2, _ = a2.semigroups()
    return ctx_new(s1, s2, s, None, _base_identification(a1, a2))


@dataclass(frozen=True)
class BaseChange:
    ring: EmbeddedRing
    presentation: TildePresentation
    map1: dict[Vector, Vector]  # S1 generator -> exponent in the new ring
    map2: dict[Vector, Vector]
    flatness: FlatnessVerdict
    caveat: str | None


def flat_base_change(a1: Algebra, a2: Algebra, bound=100) -> BaseChange:
    """The ring of the torsion-free fibered sum of ``a1`` and ``a2`` over their common base."""
    for name, a in (("R1", a1), ("R2", a2)):
        if a.ring.semigroup.grading is None:
            raise PreconditionError(f"{name} is not positive")
    verdict = a2.flatness(bound)
    if verdict.kind == "NonUnique":
        t1, w1, t2, w2 = verdict.witness
        raise PreconditionError(
            f"R2 is not flat over R: {list(t1)}+{list(w1)} = {list(t2)}+{list(w2)}")
    ctx = base_context(a1, a2)
    tp = tilde_presentation(ctx)
    ring = EmbeddedRing(tp.semigroup, 1, default_names(tp.rank, "w"))
    caveat = None
    if verdict.kind != UNIQUE_PROVEN:
        caveat = f"flatness of R2 over R checked only up to degree {verdict.bound}"
    return BaseChange(ring, tp, dict(zip(ctx.S1.generators, tp.images1)),
                      dict(zip(ctx.S2.generators, tp.images2)), verdict, caveat)


@dataclass(frozen=True)
class TensorVerdict:
    verdict: str  # Isomorphic | NotIsomorphic | Undetermined
    reason: str
    witness: tuple[Vector, int] | None = None


def tensor_vs_fibersum(a1: Algebra, a2: Algebra, bound=100) -> TensorVerdict:
    """Does the canonical surjection from R1 (x)_R R2 onto the affine fibered sum ring identify nothing?

    Torsion in the cancellative fibered sum always collapses distinct
    monomials. Without torsion the two agree once either side is flat,
    and flatness must be proven; a bounded check gives Undetermined.
    """
    ctx = base_context(a1, a2)
    tw = torsion_witness(ctx)
    if tw is not None:
        return TensorVerdict("NotIsomorphic", f"torsion of order {tw[1]}", tw)
    v2 = a2.flatness(bound)
    if v2.kind == UNIQUE_PROVEN:
        return TensorVerdict("Isomorphic", "R2 flat over R and no torsion")
    v1 = a1.flatness(bound)
    if v1.kind == UNIQUE_PROVEN:
        return TensorVerdict("Isomorphic", "R1 flat over R and no torsion")
    return TensorVerdict("Undetermined", f"no flatness proof; R2 over R is {v2.kind}")


@dataclass(frozen=True)
class AperyTransport:
    source: tuple[Vector, ...]  # Apr(R1/R)
    images: tuple[Vector, ...]  # their images in the base change
    target: tuple[Vector, ...]  # Apr of the base change over the image of R2
    complete: bool

    @property
    def non_apery_images(self) -> tuple[Vector, ...]:
        return tuple(v for v in self.images if v not in self.target)


def apery_transport(a1: Algebra, a2: Algebra, bound=100) -> AperyTransport:
    """Compare Apr(R1/R) with the Apéry set of the base change over R2."""
    bc = flat_base_change(a1, a2, bound)
    s1, s = a1.semigroups()
    src = apery_set(s1, s, bound)
    z2 = (0,) * bc.presentation.ctx.d2
    imgs = tuple(bc.presentation.image(w, z2) for w in src.elements)
    r2_image = AffineSemigroup(bc.ring.dim, bc.presentation.images2)
    # the base change may carry a larger degree than the source; widen the window
    lam_new = bc.ring.semigroup.grading
    top = max(sum(a * b for a, b in zip(lam_new, v)) for v in imgs) if imgs else 0
    tgt = apery_set(bc.ring.semigroup, r2_image, max(bound, top))
    return AperyTransport(src.elements, imgs, tgt.elements, src.complete and tgt.complete)
