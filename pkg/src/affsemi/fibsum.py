"""Fibered sums (pushouts) of affine semigroups.

The fibered sum of ``S1 <- S -> S2`` in cancellative monoids is the image
of ``S1 (+) S2`` in ``(gp S1 (+) gp S2) / rel`` where ``rel`` is generated by
the pairs ``(h1 g, -h2 g)``. Dividing further by torsion gives the fibered
sum in affine semigroups; that quotient is presented concretely by
projecting onto the free part of the quotient group.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ContainmentError,
    DimensionMismatch,
    Inconclusive,
    PreconditionError,
)
from .exactlat import (
    IntegerLattice,
    QuotientStructure,
    Vector,
    hnf,
    lattice_from_rows,
    lattice_intersect,
    matmul,
    quotient_structure,
    rational_rank,
    saturation,
    solve_rational,
    transpose,
    vecmat,
)
from .semigroup import (
    AffineSemigroup,
    RationalMatrix,
    identity_matrix,
    integral_image,
    member,
    rational_matrix,
)

MEMBER_BOUND = 64


def _is_member(s: AffineSemigroup, x) -> bool:
    dec = member(s, x, bound=MEMBER_BOUND)
    if dec.verdict == "Unknown":
        raise Inconclusive(f"cannot decide whether {list(x)} lies in {s!r}")
    return dec.is_yes


@dataclass(frozen=True)
class MonoidHom:
    """Homomorphism of affine semigroups given by a rational matrix on groups of differences."""

    source: AffineSemigroup
    target: AffineSemigroup
    matrix: RationalMatrix

    def __post_init__(self):
        m = rational_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.ambient_dim or (m and len(m[0]) != self.source.ambient_dim):
            raise DimensionMismatch(
                f"matrix shape does not map Z^{self.source.ambient_dim} to Z^{self.target.ambient_dim}")
        for g in self.source.generators:
            img = integral_image(m, g)
            if not _is_member(self.target, img):
                raise ContainmentError(f"generator {list(g)} maps to {list(img)}, outside the target")

    def __call__(self, v: Sequence[int]) -> Vector:
        return integral_image(self.matrix, v)

    @classmethod
    def inclusion(cls, source: AffineSemigroup, target: AffineSemigroup) -> MonoidHom:
        if source.ambient_dim != target.ambient_dim:
            raise DimensionMismatch("inclusion needs a common ambient space")
        return cls(source, target, identity_matrix(source.ambient_dim))

    @property
    def is_injective(self) -> bool:
        """Injective on gp(source), hence on the source monoid."""
        imgs = [self(r) for r in self.source.group.basis]
        return rational_rank(imgs) == self.source.rank


@dataclass(frozen=True, eq=False)
class FiberedSumContext:
    S1: AffineSemigroup
    S2: AffineSemigroup
    S: AffineSemigroup
    h1: MonoidHom
    h2: MonoidHom
    ambient: IntegerLattice
    rel: IntegerLattice
    sat: IntegerLattice
    quot: QuotientStructure

    @property
    def d1(self) -> int:
        return self.S1.ambient_dim

    @property
    def d2(self) -> int:
        return self.S2.ambient_dim

    def pair(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        if len(a) != self.d1 or len(b) != self.d2:
            raise DimensionMismatch("component lengths do not match S1, S2")
        return tuple(a) + tuple(b)

    def element(self, a: Sequence[int], b: Sequence[int]) -> FibElement:
        return FibElement(self, tuple(a), tuple(b))

    def __repr__(self) -> str:
        return f"FiberedSumContext({self.S1!r}, {self.S2!r} over {self.S!r})"


def ctx_new(S1: AffineSemigroup, S2: AffineSemigroup, S: AffineSemigroup,
            h1=None, h2=None) -> FiberedSumContext:
    """Build the context; ``h1``/``h2`` may be matrices, MonoidHoms or None (inclusion)."""
    h1 = _as_hom(h1, S, S1)
    h2 = _as_hom(h2, S, S2)
    d1, d2 = S1.ambient_dim, S2.ambient_dim
    z1, z2 = (0,) * d1, (0,) * d2
    ambient = lattice_from_rows(
        d1 + d2,
        [tuple(g) + z2 for g in S1.generators] + [z1 + tuple(g) for g in S2.generators])
    rel = lattice_from_rows(
        d1 + d2, [h1(g) + tuple(-x for x in h2(g)) for g in S.generators])
    return FiberedSumContext(S1, S2, S, h1, h2, ambient, rel,
                             saturation(ambient, rel), quotient_structure(ambient, rel))


def _as_hom(h, source, target) -> MonoidHom:
    if isinstance(h, MonoidHom):
        if h.source != source or h.target != target:
            raise PreconditionError("homomorphism does not match the context")
        return h
    if h is None:
        return MonoidHom.inclusion(source, target)
    return MonoidHom(source, target, h)


@dataclass(frozen=True)
class FibElement:
    """The class of ``a (+) b`` with ``a`` in S1 and ``b`` in S2."""

    ctx: FiberedSumContext
    a: Vector
    b: Vector

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not _is_member(self.ctx.S1, self.a):
            raise ContainmentError(f"{list(self.a)} is not in S1")
        if not _is_member(self.ctx.S2, self.b):
            raise ContainmentError(f"{list(self.b)} is not in S2")

    @classmethod
    def _trusted(cls, ctx, a, b) -> FibElement:
        obj = object.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "a", tuple(a))
        object.__setattr__(obj, "b", tuple(b))
        return obj

    @property
    def vector(self) -> Vector:
        return self.a + self.b

    def __add__(self, other: FibElement) -> FibElement:
        _same_ctx(self, other)
        return FibElement._trusted(self.ctx, tuple(x + y for x, y in zip(self.a, other.a)),
                                   tuple(x + y for x, y in zip(self.b, other.b)))

    def __mul__(self, n: int) -> FibElement:
        return FibElement._trusted(self.ctx, tuple(n * x for x in self.a), tuple(n * x for x in self.b))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"{list(self.a)}(+){list(self.b)}"


def _same_ctx(x: FibElement, y: FibElement) -> None:
    if x.ctx is not y.ctx:
        raise PreconditionError("elements belong to different fibered sums")


def _difference(x: FibElement, y: FibElement) -> Vector:
    _same_ctx(x, y)
    return tuple(p - q for p, q in zip(x.vector, y.vector))


def eq_cancellative(x: FibElement, y: FibElement) -> bool:
    """Equality in the cancellative fibered sum: the difference lies in ``rel``."""
    return _difference(x, y) in x.ctx.rel


def eq_torsionfree(x: FibElement, y: FibElement) -> bool:
    """Equality after dividing by torsion: the difference lies in ``sat(rel)``."""
    return _difference(x, y) in x.ctx.sat


def cancellative_witness(x: FibElement, y: FibElement) -> tuple[Vector, Vector] | None:
    """Elements ``p, q`` of S with ``x.a + h1 p == y.a + h1 q`` and ``x.b + h2 q == y.b + h2 p``.

    None when ``x`` and ``y`` differ in the cancellative fibered sum.
    """
    ctx = x.ctx
    diff = _difference(x, y)
    gens = ctx.S.generators
    if not gens:
        return ((0,) * ctx.S.ambient_dim,) * 2 if not any(diff) else None
    rows = [ctx.h1(g) + tuple(-v for v in ctx.h2(g)) for g in gens]
    h, u = hnf(rows)
    basis = [r for r in h if any(r)]
    lat = IntegerLattice(len(diff), tuple(basis))
    coords = lat.coordinates(diff)
    if coords is None:
        return None
    k = vecmat(coords, u[:len(basis)])
    # diff = sum k_i (h1 g_i, -h2 g_i); split k into its positive and negative parts
    d = ctx.S.ambient_dim
    q = tuple(sum(max(c, 0) * g[j] for c, g in zip(k, gens)) for j in range(d))
    p = tuple(sum(max(-c, 0) * g[j] for c, g in zip(k, gens)) for j in range(d))
    return p, q


def is_torsion_free(ctx: FiberedSumContext) -> bool:
    return ctx.sat == ctx.rel


def torsion_witness(ctx: FiberedSumContext) -> tuple[Vector, int] | None:
    """A vector of ``gp S1 (+) gp S2`` whose class has finite order > 1, with that order."""
    if not ctx.quot.torsion_invariants:
        return None
    return ctx.quot.torsion_elements[-1], ctx.quot.torsion_invariants[-1]


def gp_condition(S1: AffineSemigroup, S2: AffineSemigroup, S: AffineSemigroup) -> bool:
    """``gp(S1) ∩ gp(S2) == gp(S)`` for submonoids of one Z^d with S inside both."""
    for g in S.generators:
        if not (_is_member(S1, g) and _is_member(S2, g)):
            raise ContainmentError(f"generator {list(g)} of S is not in S1 ∩ S2")
    return lattice_intersect(S1.group, S2.group) == S.group


# -- concrete presentation of the torsion-free fibered sum -------------------

@dataclass(frozen=True, eq=False)
class TildePresentation:
    """The torsion-free fibered sum as a semigroup in Z^k.

    ``images1[i]`` is the image of ``S1.generators[i]`` (likewise
    ``images2``). Coordinates are normalised so that the generator image
    matrix is in column Hermite form.
    """

    ctx: FiberedSumContext
    semigroup: AffineSemigroup
    images1: tuple[Vector, ...]
    images2: tuple[Vector, ...]
    change: tuple[Vector, ...]  # free coordinates -> presentation coordinates

    @property
    def rank(self) -> int:
        return self.semigroup.ambient_dim

    @property
    def gen_map(self) -> dict[tuple[int, int], Vector]:
        """``(side, index) -> image``, side 1 for S1 generators and 2 for S2."""
        out = {(1, i): v for i, v in enumerate(self.images1)}
        out.update({(2, i): v for i, v in enumerate(self.images2)})
        return out

    def image(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        v = self.ctx.quot.project(self.ctx.pair(a, b))
        return vecmat(v, self.change) if self.change else ()

    def image_of(self, x: FibElement) -> Vector:
        return self.image(x.a, x.b)


def tilde_presentation(ctx: FiberedSumContext) -> TildePresentation:
    k = ctx.quot.free_rank
    z1, z2 = (0,) * ctx.d1, (0,) * ctx.d2
    raw = [ctx.quot.project(tuple(g) + z2) for g in ctx.S1.generators]
    raw += [ctx.quot.project(z1 + tuple(g)) for g in ctx.S2.generators]
    if k == 0 or not raw:
        n1 = len(ctx.S1.generators)
        imgs = [(0,) * k for _ in raw]
        change = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        return TildePresentation(ctx, AffineSemigroup(k), tuple(imgs[:n1]), tuple(imgs[n1:]), change)
    _, u = hnf(transpose(raw))
    change = transpose(u)
    imgs = matmul(raw, change)
    n1 = len(ctx.S1.generators)
    sg = AffineSemigroup(k, tuple(imgs))
    return TildePresentation(ctx, sg, tuple(imgs[:n1]), tuple(imgs[n1:]), change)


def gp_condition_in_tilde(ctx: FiberedSumContext) -> bool:
    """gp(S1) ∩ gp(S2) == gp(S) evaluated on the images inside the presentation."""
    tp = tilde_presentation(ctx)
    k = tp.rank
    g1 = lattice_from_rows(k, tp.images1)
    g2 = lattice_from_rows(k, tp.images2)
    z2 = (0,) * ctx.d2
    gs = lattice_from_rows(k, [tp.image(ctx.h1(g), z2) for g in ctx.S.generators])
    return lattice_intersect(g1, g2) == gs


def factor_through(tp: TildePresentation, targets1, targets2):
    """Solve for the group map out of the presentation extending given generator images.

    Returns ``(count, matrix)`` from ``solve_rational``: the matrix ``X``
    satisfies ``image @ X == target`` on every S1 and S2 generator.
    """
    g = list(tp.images1) + list(tp.images2)
    y = [tuple(t) for t in targets1] + [tuple(t) for t in targets2]
    if not g:
        return 1, ()
    return solve_rational(g, y)


# -- comparison with a sum inside a common target ---------------------------

@dataclass(frozen=True)
class SumComparison:
    verdict: str  # "Isomorphic" | "NotIsomorphic"
    reason: str
    witness: tuple[FibElement, FibElement] | None = None
    free_rank: int = 0
    sum_rank: int = 0


def _enumerate_levels(gens1, gens2, bound):
    n1, n = len(gens1), len(gens1) + len(gens2)
    gens = list(gens1) + list(gens2)
    for t in range(bound + 1):
        for combo in itertools.combinations_with_replacement(range(n), t):
            c = [0] * n
            for i in combo:
                c[i] += 1
            yield c[:n1], c[n1:]


def compare_with_sum(ctx: FiberedSumContext, t_dim: int, e1=None, e2=None,
                     bound: int = 12) -> SumComparison:
    """Is the canonical map from the torsion-free fibered sum onto ``e1 S1 + e2 S2`` injective?

    ``e1``, ``e2`` are rational matrices into Z^t_dim (identity when None).
    Injectivity is decided exactly by comparing ranks; a witness pair with
    equal sums but distinct classes is searched up to total coefficient
    sum ``bound``.
    """
    e1 = rational_matrix(e1) if e1 is not None else identity_matrix(ctx.d1)
    e2 = rational_matrix(e2) if e2 is not None else identity_matrix(ctx.d2)
    if len(e1) != t_dim or len(e2) != t_dim:
        raise DimensionMismatch(f"embeddings must land in Z^{t_dim}")
    for g in ctx.S.generators:
        if integral_image(e1, ctx.h1(g)) != integral_image(e2, ctx.h2(g)):
            raise PreconditionError(f"embeddings disagree on generator {list(g)} of S")
    t1 = [integral_image(e1, g) for g in ctx.S1.generators]
    t2 = [integral_image(e2, g) for g in ctx.S2.generators]
    sum_rank = rational_rank(t1 + t2) if (t1 or t2) else 0
    free = ctx.quot.free_rank
    if sum_rank == free:
        if ctx.S1.rank == ctx.S2.rank == ctx.S.rank and ctx.h1.is_injective and ctx.h2.is_injective:
            reason = "rank-condition"
        elif t_dim and lattice_intersect(lattice_from_rows(t_dim, t1), lattice_from_rows(t_dim, t2)) \
                == lattice_from_rows(t_dim, [integral_image(e1, ctx.h1(g)) for g in ctx.S.generators]):
            reason = "gp-condition"
        else:
            reason = "free-rank"
        return SumComparison("Isomorphic", reason, None, free, sum_rank)
    return SumComparison("NotIsomorphic", "rank-drop",
                         _collision(ctx, e1, e2, bound), free, sum_rank)


def _collision(ctx, e1, e2, bound):
    g1, g2 = ctx.S1.generators, ctx.S2.generators
    d1, d2 = ctx.d1, ctx.d2
    seen: dict[Vector, list[tuple[Vector, FibElement]]] = {}
    for c1, c2 in _enumerate_levels(g1, g2, bound):
        a = tuple(sum(c * g[j] for c, g in zip(c1, g1)) for j in range(d1))
        b = tuple(sum(c * g[j] for c, g in zip(c2, g2)) for j in range(d2))
        x = FibElement._trusted(ctx, a, b)
        img = tuple(p + q for p, q in zip(integral_image(e1, a), integral_image(e2, b)))
        for _, y in seen.get(img, ()):
            if not eq_torsionfree(x, y):
                return y, x
        seen.setdefault(img, []).append((img, x))
    return None
