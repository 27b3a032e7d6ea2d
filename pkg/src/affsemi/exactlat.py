"""Exact integer linear algebra and sublattices of Z^d.

Matrices are tuples of row tuples of Python ints. Nothing in this module
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContainmentError, DimensionMismatch

Vector = tuple[int, ...]
IntMatrix = tuple[Vector, ...]


# -- small matrix helpers -----------------------------------------------------

def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(tuple(int(v) for v in r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    if not m:
        return ()
    out = [0] * len(m[0])
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return tuple(out)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def rational_rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    rank, ncols = 0, len(a[0])
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _row_sub(a: list[list[int]], i: int, k: int, q: int) -> None:
    if q:
        ri, rk = a[i], a[k]
        for j in range(len(ri)):
            ri[j] -= q * rk[j]


def _col_sub(a: list[list[int]], j: int, k: int, q: int) -> None:
    if q:
        for row in a:
            row[j] -= q * row[k]


# -- normal forms -------------------------------------------------------------

def hnf(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H`` and ``U`` unimodular. ``H`` keeps
    the row count of ``M``; its zero rows sit at the bottom. Pivots are
    positive and entries above a pivot lie in ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in m]
    nrows = len(a)
    n = len(a[0]) if a else (ncols or 0)
    u = [list(r) for r in identity(nrows)]
    r = 0
    for j in range(n):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][j]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][j]), i))
            if p != r:
                a[p], a[r] = a[r], a[p]
                u[p], u[r] = u[r], u[p]
            clean = True
            for i in range(r + 1, nrows):
                if a[i][j]:
                    q = a[i][j] // a[r][j]
                    _row_sub(a, i, r, q)
                    _row_sub(u, i, r, q)
                    if a[i][j]:
                        clean = False
            if clean:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        piv = a[r][j]
        for i in range(r):
            q = a[i][j] // piv
            _row_sub(a, i, r, q)
            _row_sub(u, i, r, q)
        r += 1
    return as_matrix(a), as_matrix(u)


def snf(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    Elementary reduction; the pivot at each stage is the entry of least
    absolute value in the trailing submatrix (first in row-major order on
    ties).
    """
    a = [list(map(int, r)) for r in m]
    nrows = len(a)
    n = len(a[0]) if a else (ncols or 0)
    u = [list(r) for r in identity(nrows)]
    v = [list(r) for r in identity(n)]
    t = 0
    while t < min(nrows, n):
        best = None
        for i in range(t, nrows):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            a[i], a[t] = a[t], a[i]
            u[i], u[t] = u[t], u[i]
        if j != t:
            for row in a:
                row[j], row[t] = row[t], row[j]
            for row in v:
                row[j], row[t] = row[t], row[j]
        piv = a[t][t]
        dirty = False
        for i in range(t + 1, nrows):
            if a[i][t]:
                q = a[i][t] // piv
                _row_sub(a, i, t, q)
                _row_sub(u, i, t, q)
                dirty = dirty or bool(a[i][t])
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // piv
                _col_sub(a, j, t, q)
                _col_sub(v, j, t, q)
                dirty = dirty or bool(a[t][j])
        if dirty:
            continue
        bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, n)
                    if a[i][j] % piv), None)
        if bad is not None:
            i = bad[0]
            a[t] = [x + y for x, y in zip(a[t], a[i])]
            u[t] = [x + y for x, y in zip(u[t], u[i])]
            continue
        if piv < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return as_matrix(a), as_matrix(u), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


# -- lattices -----------------------------------------------------------------

@dataclass(frozen=True)
class IntegerLattice:
    """Subgroup of Z^d held by its canonical row-HNF basis.

    Two lattices are equal exactly when their bases are equal, so the
    dataclass ``==`` is lattice equality.
    """

    ambient_dim: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, x) -> bool:
        return lattice_member(self, x)

    def coordinates(self, x: Sequence[int]) -> Vector | None:
        """Integer coefficients of ``x`` over the basis, or None if x is outside."""
        return _coordinates(self, x)

    def scaled(self, a: int) -> IntegerLattice:
        return lattice_from_rows(self.ambient_dim, [[a * c for c in r] for r in self.basis])

    def __repr__(self) -> str:
        return f"IntegerLattice({self.ambient_dim}, {[list(r) for r in self.basis]})"


def lattice_from_rows(ambient_dim: int, rows: Iterable[Sequence[int]]) -> IntegerLattice:
    rows = [tuple(int(c) for c in r) for r in rows]
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionMismatch(f"row {r} does not live in Z^{ambient_dim}")
    h, _ = hnf(rows, ncols=ambient_dim)
    return IntegerLattice(ambient_dim, tuple(r for r in h if any(r)))


def zero_lattice(d: int) -> IntegerLattice:
    return IntegerLattice(d, ())


def full_lattice(d: int) -> IntegerLattice:
    return IntegerLattice(d, identity(d))


def _pivot(row: Sequence[int]) -> int:
    return next(j for j, x in enumerate(row) if x)


def _coordinates(lat: IntegerLattice, x: Sequence[int]) -> Vector | None:
    if len(x) != lat.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(x)} in Z^{lat.ambient_dim}")
    v = [int(c) for c in x]
    coeffs = []
    start = 0
    for row in lat.basis:
        p = _pivot(row)
        if any(v[start:p]):
            return None
        q, rem = divmod(v[p], row[p])
        if rem:
            return None
        coeffs.append(q)
        if q:
            for j in range(p, len(v)):
                v[j] -= q * row[j]
        start = p + 1
    if any(v[start:]):
        return None
    return tuple(coeffs)


def lattice_member(lat: IntegerLattice, x: Sequence[int]) -> bool:
    return _coordinates(lat, x) is not None


def _check_dims(l1: IntegerLattice, l2: IntegerLattice) -> None:
    if l1.ambient_dim != l2.ambient_dim:
        raise DimensionMismatch(f"Z^{l1.ambient_dim} vs Z^{l2.ambient_dim}")


def lattice_sum(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    _check_dims(l1, l2)
    return lattice_from_rows(l1.ambient_dim, l1.basis + l2.basis)


def lattice_contains(big: IntegerLattice, small: IntegerLattice) -> bool:
    _check_dims(big, small)
    return all(lattice_member(big, r) for r in small.basis)


def lattice_intersect(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    """Intersection via the integer left kernel of the stacked bases."""
    _check_dims(l1, l2)
    d = l1.ambient_dim
    if not l1.basis or not l2.basis:
        return zero_lattice(d)
    stacked = l1.basis + tuple(tuple(-c for c in r) for r in l2.basis)
    h, u = hnf(stacked, ncols=d)
    k1 = l1.rank
    rows = []
    for hr, ur in zip(h, u):
        if not any(hr):
            rows.append(vecmat(ur[:k1], l1.basis))
    return lattice_from_rows(d, rows)


def _ambient_coordinates(ambient: IntegerLattice, lat: IntegerLattice) -> IntMatrix:
    out = []
    for r in lat.basis:
        c = ambient.coordinates(r)
        if c is None:
            raise ContainmentError(f"{list(r)} is not in the ambient lattice")
        out.append(c)
    return tuple(out)


def saturation(ambient: IntegerLattice, lat: IntegerLattice) -> IntegerLattice:
    """All ``x`` in ``ambient`` with some positive multiple in ``lat``."""
    _check_dims(ambient, lat)
    coords = _ambient_coordinates(ambient, lat)
    if not coords:
        return zero_lattice(ambient.ambient_dim)
    d, u, _ = snf(coords, ncols=ambient.rank)
    uc = matmul(u, coords)
    rows = []
    for i in range(min(len(d), ambient.rank)):
        di = d[i][i]
        if not di:
            break
        rows.append(vecmat([c // di for c in uc[i]], ambient.basis))
    return lattice_from_rows(ambient.ambient_dim, rows)


@dataclass(frozen=True)
class QuotientStructure:
    """``ambient / sub`` as ``Z^free_rank`` plus cyclic torsion.

    ``projection`` is an ``ambient.rank x free_rank`` matrix acting on
    coordinates over ``ambient.basis``; ``project`` takes a Z^d vector.
    ``torsion_elements[i]`` is an element of ``ambient`` whose class has
    order ``torsion_invariants[i]``.
    """

    ambient: IntegerLattice
    free_rank: int
    torsion_invariants: tuple[int, ...]
    projection: IntMatrix
    torsion_elements: tuple[Vector, ...]

    def project(self, x: Sequence[int]) -> Vector:
        c = self.ambient.coordinates(x)
        if c is None:
            raise ContainmentError(f"{list(x)} is not in the ambient lattice")
        if not self.free_rank:
            return ()
        return vecmat(c, self.projection)


def quotient_structure(ambient: IntegerLattice, lat: IntegerLattice) -> QuotientStructure:
    _check_dims(ambient, lat)
    coords = _ambient_coordinates(ambient, lat)
    r = ambient.rank
    d, u, v = snf(coords, ncols=r)
    diag = []
    for i in range(min(len(d), r)):
        if not d[i][i]:
            break
        diag.append(d[i][i])
    k = len(diag)
    projection = tuple(tuple(row[k:]) for row in v) if r - k else tuple(() for _ in range(r))
    uc = matmul(u, coords) if coords else ()
    torsion, elements = [], []
    for i, di in enumerate(diag):
        if di > 1:
            torsion.append(di)
            elements.append(vecmat([c // di for c in uc[i]], ambient.basis))
    return QuotientStructure(ambient, r - k, tuple(torsion), projection, tuple(elements))


def solve_rational(g: Sequence[Sequence], y: Sequence[Sequence]):
    """Solve ``G @ X == Y`` over Q.

    Returns ``(count, X)``: count is 0 (inconsistent), 1 (unique) or -1
    (a positive-dimensional family; X is one member).
    """
    n = len(g)
    k = len(g[0]) if n else 0
    t = len(y[0]) if n else 0
    a = [[Fraction(v) for v in gr] + [Fraction(v) for v in yr] for gr, yr in zip(g, y)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if any(a[i][k:]):
            return 0, None
    x = [[Fraction(0)] * t for _ in range(k)]
    for i, c in enumerate(pivots):
        x[c] = a[i][k:]
    return (1 if r == k else -1), tuple(tuple(row) for row in x)
