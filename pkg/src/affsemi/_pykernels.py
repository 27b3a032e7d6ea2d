"""Pure-Python versions of the hot search loops.

``_kernels.pyx`` implements the same two functions; ``kernels`` picks one at
import time. Results must be identical, only speed differs.
"""
from __future__ import annotations


def lex_search(gens, weights, target, cap):
    """Lexicographically smallest ``c >= 0`` with ``sum c_i g_i == target``.

    Only tuples with ``sum c_i * weights[i] <= cap`` are considered.
    ``weights`` must be positive. Returns a tuple or None.
    """
    n = len(gens)
    target = tuple(target)
    if cap < 0:
        return None
    if n == 0:
        return () if not any(target) else None
    d = len(target)
    gens = [tuple(g) for g in gens]
    coeffs = [0] * n
    failed = set()

    def last(rem, cap):
        g = gens[n - 1]
        j = next(k for k in range(d) if g[k])
        c, r = divmod(rem[j], g[j])
        if r or c < 0 or c * weights[n - 1] > cap:
            return False
        if any(rem[k] != c * g[k] for k in range(d)):
            return False
        coeffs[n - 1] = c
        return True

    def rec(i, rem, cap):
        if i == n - 1:
            return last(rem, cap)
        key = (i, cap, rem)
        if key in failed:
            return False
        g, w = gens[i], weights[i]
        cur = rem
        for c in range(cap // w + 1):
            coeffs[i] = c
            if rec(i + 1, cur, cap - c * w):
                return True
            cur = tuple(a - b for a, b in zip(cur, g))
        coeffs[i] = 0
        failed.add(key)
        return False

    return tuple(coeffs) if rec(0, target, cap) else None


_DIGITS = bytes.maketrans(b"01", b"\x00\x01")


def numerical_sieve(gens, limit):
    """bytearray ``m`` with ``m[k] == 1`` iff k is a natural combination of gens, 0 <= k <= limit."""
    if limit < 0:
        return bytearray()
    mask = (1 << (limit + 1)) - 1
    bits = 1
    for g in gens:
        if g <= 0 or g > limit:
            continue
        step = g
        while step <= limit:
            bits |= (bits << step) & mask
            step <<= 1
    digits = bin(bits)[:1:-1].ljust(limit + 1, "0")
    return bytearray(digits.encode("ascii").translate(_DIGITS))
