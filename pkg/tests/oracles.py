"""Brute-force reference implementations used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction


def combos(n: int, total: int):
    """All natural n-tuples with coordinate sum <= total."""
    for t in range(total + 1):
        for pick in itertools.combinations_with_replacement(range(n), t):
            c = [0] * n
            for i in pick:
                c[i] += 1
            yield tuple(c)


def combine(coeffs, gens):
    d = len(gens[0]) if gens else 0
    return tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(d))


def natural_solutions(gens, x, total):
    """Every natural coefficient tuple of sum <= total reproducing x."""
    x = tuple(x)
    return [c for c in combos(len(gens), total) if combine(c, gens) == x]


def integer_span_contains(rows, x, box):
    """Is x an integer combination of rows with coefficients in [-box, box]?"""
    x = tuple(x)
    for c in itertools.product(range(-box, box + 1), repeat=len(rows)):
        if combine(c, rows) == x:
            return True
    return False


def numerical_set(gens, limit):
    """Members of the numerical semigroup <gens> up to limit, as a set."""
    reach = {0}
    for k in range(1, limit + 1):
        if any(k - g in reach for g in gens if g <= k):
            reach.add(k)
    return reach


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def det(m):
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def random_unimodular(rng, n, entries=10):
    """Product of random elementary matrices, entries kept within ``entries``."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if n > 1:
            q = rng.choice([-2, -1, 1, 2])
            row = [a + q * b for a, b in zip(m[i], m[j])]
            if max(abs(v) for v in row) <= entries:
                m[i] = row
        if rng.random() < 0.3:
            k = rng.randrange(n)
            m[k] = [-v for v in m[k]]
    return m
