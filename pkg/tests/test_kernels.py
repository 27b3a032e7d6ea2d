import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import natural_solutions, numerical_set

from affsemi import _pykernels, kernels

compiled = pytest.importorskip("affsemi._kernels") if kernels.HAVE_EXTENSION else None
BACKENDS = [_pykernels] + ([compiled] if compiled else [])


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_lex_search_basics(mod):
    assert mod.lex_search([(3,), (5,)], [3, 5], (15,), 15) == (0, 3)
    assert mod.lex_search([(3,), (5,)], [3, 5], (7,), 7) is None
    assert mod.lex_search([], [], (0,), 0) == ()
    assert mod.lex_search([(1,)], [1], (1,), -1) is None
    assert mod.lex_search([(1, 0), (1, 1)], [1, 2], (3, 1), 4) == (2, 1)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_sieve_basics(mod):
    assert list(mod.numerical_sieve([3, 5], 8)) == [1, 0, 0, 1, 0, 1, 1, 0, 1]
    assert list(mod.numerical_sieve([], 3)) == [1, 0, 0, 0]
    assert mod.numerical_sieve([2], -1) == bytearray()


gens_st = st.integers(1, 3).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 4), min_size=d, max_size=d).filter(any).map(tuple), min_size=1, max_size=4, unique=True))


@settings(max_examples=150, deadline=None, derandomize=True)
@given(gens_st, st.data())
def test_backends_agree_with_brute_force(gens, data):
    d = len(gens[0])
    x = tuple(data.draw(st.lists(st.integers(0, 8), min_size=d, max_size=d)))
    weights = [sum(g) for g in gens]
    cap = sum(x)
    sols = natural_solutions(gens, x, cap)
    want = min(sols) if sols else None
    for mod in BACKENDS:
        assert mod.lex_search(gens, weights, x, cap) == want


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=4), st.integers(0, 300))
def test_sieves_agree_with_brute_force(vals, limit):
    want = numerical_set(vals, limit)
    for mod in BACKENDS:
        got = mod.numerical_sieve(vals, limit)
        assert {k for k, v in enumerate(got) if v} == want


def test_large_values_take_the_python_path():
    big = 1 << 50
    assert kernels.lex_search([(big,)], [1], (3 * big,), 3) == (3,)


def test_pure_python_switch():
    env = dict(os.environ, AFFSEMI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from affsemi import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
