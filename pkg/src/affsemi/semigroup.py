"""Finitely generated submonoids of Z^d."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    BoundRequired,
    DimensionMismatch,
    Inconclusive,
    NonIntegralImage,
    NotStabilized,
    PreconditionError,
)
from .exactlat import IntegerLattice, Vector, lattice_from_rows
from .fourier_motzkin import positive_grading

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def rational_matrix(rows: Iterable[Iterable]) -> RationalMatrix:
    m = tuple(tuple(Fraction(x) for x in r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def identity_matrix(n: int) -> RationalMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def apply_matrix(a: RationalMatrix, v: Sequence[int]) -> tuple[Fraction, ...]:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"{len(a)}x{len(a[0])} matrix applied to length-{len(v)} vector")
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def integral_image(a: RationalMatrix, v: Sequence[int]) -> Vector:
    img = apply_matrix(a, v)
    if any(x.denominator != 1 for x in img):
        raise NonIntegralImage(f"{list(v)} maps to non-integral {[str(x) for x in img]}")
    return tuple(int(x) for x in img)


@dataclass(frozen=True)
class AffineSemigroup:
    """Submonoid of Z^d generated by ``generators``.

    Generators are deduplicated in first-seen order and zero vectors are
    dropped, so an empty tuple is the trivial monoid {0}. Dataclass
    equality compares generator lists; use ``equal_as_submonoids`` for
    equality of the monoids themselves.
    """

    ambient_dim: int
    generators: tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        seen, gens = set(), []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.ambient_dim:
                raise DimensionMismatch(f"generator {list(g)} does not live in Z^{self.ambient_dim}")
            if any(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, *gens) -> AffineSemigroup:
        """``AffineSemigroup.of(3, 5)`` or ``AffineSemigroup.of((1, 0), (1, 1))``."""
        vecs = [(g,) if isinstance(g, int) else tuple(g) for g in gens]
        if not vecs:
            raise ValueError("use AffineSemigroup(d) for the trivial monoid")
        return cls(len(vecs[0]), tuple(vecs))

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    @cached_property
    def group(self) -> IntegerLattice:
        return lattice_from_rows(self.ambient_dim, self.generators)

    @property
    def rank(self) -> int:
        return self.group.rank

    @cached_property
    def positivity(self) -> tuple[bool, Vector]:
        return positive_grading(self.generators, self.ambient_dim)

    @property
    def grading(self) -> Vector | None:
        """Integer functional positive on every generator, when one exists."""
        ok, w = self.positivity
        if not ok:
            return None
        if self.ambient_dim == 1 and all(g[0] > 0 for g in self.generators):
            return (1,)
        return w

    def degree(self, x: Sequence[int]) -> int:
        lam = self.grading
        if lam is None:
            raise PreconditionError("semigroup is not positive; no grading")
        return sum(a * b for a, b in zip(lam, x))

    @property
    def is_numerical(self) -> bool:
        return self.ambient_dim == 1 and all(g[0] > 0 for g in self.generators)

    def __add__(self, other: AffineSemigroup) -> AffineSemigroup:
        return semigroup_sum(self, other)

    def __contains__(self, x) -> bool:
        dec = member(self, x, bound=64)
        return dec.verdict == "Yes"

    def __repr__(self) -> str:
        if self.ambient_dim == 1:
            return f"<{', '.join(str(g[0]) for g in self.generators) or '0'}>"
        return f"<{', '.join(str(g) for g in self.generators) or '0'}> in Z^{self.ambient_dim}"


@dataclass(frozen=True)
class MembershipDecision:
    verdict: str  # "Yes" | "No" | "Unknown"
    coefficients: Vector | None = None
    search_bound: int | None = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == "Yes"


def _check_dim(s: AffineSemigroup, x: Sequence[int]) -> Vector:
    x = tuple(int(c) for c in x)
    if len(x) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(x)} against Z^{s.ambient_dim}")
    return x


def gp(s: AffineSemigroup) -> IntegerLattice:
    return s.group


def is_positive(s: AffineSemigroup) -> tuple[bool, Vector]:
    """``(True, lam)`` with ``lam . g >= 1`` on generators, or ``(False, c)``
    with ``sum c_i g_i == 0`` and ``c`` a nonzero natural vector."""
    return s.positivity


def member(s: AffineSemigroup, x: Sequence[int], bound: int | None = None) -> MembershipDecision:
    """Decide ``x in s``.

    Positive semigroups get an exhaustive graded search and never answer
    Unknown. Otherwise the search is cut at total coefficient sum
    ``bound``. A Yes carries the lexicographically smallest coefficient
    tuple in generator order.
    """
    x = _check_dim(s, x)
    if x not in s.group:
        return MembershipDecision("No")
    gens = s.generators
    lam = s.grading
    if lam is not None:
        deg = sum(a * b for a, b in zip(lam, x))
        if deg < 0:
            return MembershipDecision("No")
        weights = [sum(a * b for a, b in zip(lam, g)) for g in gens]
        c = kernels.lex_search(gens, weights, x, deg)
        return MembershipDecision("Yes", c) if c is not None else MembershipDecision("No")
    if bound is None:
        raise BoundRequired("membership in a non-positive semigroup needs a search bound")
    c = kernels.lex_search(gens, [1] * len(gens), x, bound)
    if c is not None:
        return MembershipDecision("Yes", c, bound)
    return MembershipDecision("Unknown", None, bound)


def _same_dim(s1: AffineSemigroup, s2: AffineSemigroup) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(f"Z^{s1.ambient_dim} vs Z^{s2.ambient_dim}")


def semigroup_sum(s1: AffineSemigroup, s2: AffineSemigroup) -> AffineSemigroup:
    _same_dim(s1, s2)
    return AffineSemigroup(s1.ambient_dim, s1.generators + s2.generators)


def scale(s: AffineSemigroup, a: int) -> AffineSemigroup:
    if a < 1:
        raise PreconditionError(f"scale factor must be positive, got {a}")
    return AffineSemigroup(s.ambient_dim, tuple(tuple(a * c for c in g) for g in s.generators))


def transform(s: AffineSemigroup, a) -> AffineSemigroup:
    """Semigroup generated by ``A g``; ``A`` is rational, images must be integral."""
    a = rational_matrix(a)
    if not a:
        raise DimensionMismatch("empty matrix")
    if len(a[0]) != s.ambient_dim:
        raise DimensionMismatch(f"matrix has {len(a[0])} columns, semigroup lives in Z^{s.ambient_dim}")
    return AffineSemigroup(len(a), tuple(integral_image(a, g) for g in s.generators))


def equal_as_submonoids(s1: AffineSemigroup, s2: AffineSemigroup, bound: int | None = None) -> bool:
    _same_dim(s1, s2)
    for a, b in ((s1, s2), (s2, s1)):
        for g in a.generators:
            dec = member(b, g, bound)
            if dec.verdict == "Unknown":
                raise Inconclusive(f"membership of {list(g)} undecided within bound {bound}")
            if dec.verdict == "No":
                return False
    return True


# -- numerical semigroups -----------------------------------------------------

def _require_numerical(*ss: AffineSemigroup) -> None:
    for s in ss:
        if not s.is_numerical or s.is_trivial:
            raise PreconditionError(f"{s!r} is not a nontrivial numerical semigroup")


def gcd_numerical(s: AffineSemigroup) -> int:
    _require_numerical(s)
    return reduce(math.gcd, (g[0] for g in s.generators))


def _values(s: AffineSemigroup) -> list[int]:
    return [g[0] for g in s.generators]


def conductor(s: AffineSemigroup) -> int:
    """Smallest ``c`` such that every multiple of ``gcd(s)`` that is ``>= c`` lies in ``s``."""
    _require_numerical(s)
    d = gcd_numerical(s)
    vals = sorted(v // d for v in _values(s))
    if vals[0] == 1:
        return 0
    # Schur: the Frobenius number is below (a_1 - 1)(a_n - 1)
    limit = (vals[0] - 1) * (vals[-1] - 1) + vals[0]
    sieve = kernels.numerical_sieve(vals, limit)
    c = limit
    while c > 0 and sieve[c - 1]:
        c -= 1
    return c * d


def numerical_members(s: AffineSemigroup, limit: int) -> bytearray:
    return kernels.numerical_sieve(_values(s), limit)


def minimal_generators_numerical(s: AffineSemigroup) -> tuple[int, ...]:
    _require_numerical(s)
    vals = sorted(set(_values(s)))
    out: list[int] = []
    for v in vals:
        if not out or not kernels.numerical_sieve(out, v)[v]:
            out.append(v)
    return tuple(out)


def intersect_numerical(s1: AffineSemigroup, s2: AffineSemigroup) -> AffineSemigroup:
    """Minimal generators of ``s1 ∩ s2``.

    Past ``c = max(conductor)`` every multiple of ``lcm(gcd s1, gcd s2)`` is
    a common member, so minimal generators lie below ``c`` plus the
    multiplicity. The periodic tail is re-checked over the whole window.
    """
    _require_numerical(s1, s2)
    lcm = math.lcm(gcd_numerical(s1), gcd_numerical(s2))
    c = max(conductor(s1), conductor(s2))
    c = -(-c // lcm) * lcm
    top = max(max(_values(s1)), max(_values(s2)))
    # the multiplicity is at most c + lcm, minimal generators sit below c + multiplicity
    limit = 2 * c + 2 * (top + lcm)
    m1, m2 = numerical_members(s1, limit), numerical_members(s2, limit)
    common = [k for k in range(lcm, limit + 1, lcm) if m1[k] and m2[k]]
    reach = bytearray(limit + 1)
    reach[0] = 1
    gens = []
    for x in common:
        if not reach[x]:
            gens.append(x)
            for k in range(x, limit + 1):
                if reach[k - x]:
                    reach[k] = 1
    if any(not m1[k] or not m2[k] for k in range(c, limit + 1, lcm)):
        raise NotStabilized("common members are not eventually periodic inside the window")
    return AffineSemigroup(1, tuple((g,) for g in gens))
