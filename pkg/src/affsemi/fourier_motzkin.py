"""Exact Fourier-Motzkin elimination for the system ``lam . g >= 1``.

Every derived inequality carries its nonnegative integer multipliers over
the original rows, so an infeasible system yields a natural-coefficient
combination of the generators summing to zero.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _normalize(a, b, mult):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    g = math.gcd(g, b)
    for x in mult:
        g = math.gcd(g, x)
    if g > 1:
        a = tuple(x // g for x in a)
        b //= g
        mult = tuple(x // g for x in mult)
    return a, b, mult


def _prune(rows):
    # same left side: keep the strongest right side, first seen on ties
    best = {}
    for a, b, m in rows:
        if a not in best or b > best[a][1]:
            best[a] = (a, b, m)
    return list(best.values())


def _pick(lower: Fraction | None, upper: Fraction | None) -> Fraction:
    # integral when the interval allows, and as close to 0 as possible
    if lower is not None and lower > 0:
        c = Fraction(math.ceil(lower))
        return c if upper is None or c <= upper else lower
    if upper is not None and upper < 0:
        f = Fraction(math.floor(upper))
        return f if lower is None or f >= lower else upper
    return Fraction(0)


def positive_grading(gens: Sequence[Sequence[int]], dim: int):
    """Decide whether some rational ``lam`` has ``lam . g >= 1`` for all gens.

    Returns ``(True, lam)`` with ``lam`` an integer vector, or
    ``(False, coeffs)`` with natural ``coeffs``, not all zero, and
    ``sum coeffs[i] * gens[i] == 0``.
    """
    n = len(gens)
    rows = []
    for i, g in enumerate(gens):
        rows.append(_normalize(tuple(g), 1, tuple(int(k == i) for k in range(n))))
    rows = _prune(rows)
    stages = []
    for j in range(dim):
        stages.append(rows)
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        nxt = [r for r in rows if r[0][j] == 0]
        # Chernikov: a row built from more than j + 2 originals is redundant
        limit = j + 2
        for ap, bp, mp in pos:
            for an, bn, mn in neg:
                cp, cn = -an[j], ap[j]
                m = tuple(cp * x + cn * y for x, y in zip(mp, mn))
                if sum(1 for x in m if x) > limit:
                    continue
                a = tuple(cp * x + cn * y for x, y in zip(ap, an))
                nxt.append(_normalize(a, cp * bp + cn * bn, m))
        rows = _prune(nxt)
    for a, b, m in rows:
        if b > 0:
            return False, m
    lam = [Fraction(0)] * dim
    for j in range(dim - 1, -1, -1):
        lower = upper = None
        for a, b, _ in stages[j]:
            if not a[j]:
                continue
            rhs = Fraction(b) - sum(a[k] * lam[k] for k in range(j + 1, dim))
            bound = rhs / a[j]
            if a[j] > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        lam[j] = _pick(lower, upper)
    den = 1
    for x in lam:
        den = den * x.denominator // math.gcd(den, x.denominator)
    out = tuple(int(x * den) for x in lam)
    assert all(sum(x * y for x, y in zip(out, g)) >= 1 for g in gens)
    return True, out
