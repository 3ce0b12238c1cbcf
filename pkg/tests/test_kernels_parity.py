import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsforge import _kernels_py as pure
from dsforge.containment import _dense_host, _dense_pattern

fast = pytest.importorskip("dsforge._kernels")

words = st.lists(st.integers(1, 5), min_size=0, max_size=30)
patterns = st.lists(st.integers(1, 3), min_size=1, max_size=5)


@settings(max_examples=300, deadline=None)
@given(patterns, words, st.booleans())
def test_find_embedding(p, h, colex):
    host, sigma, _ = _dense_host(h)
    pat, _ = _dense_pattern(p)
    assert pure.find_embedding(pat, host, sigma, None, colex) == fast.find_embedding(pat, host, sigma, None, colex)


@settings(max_examples=200, deadline=None)
@given(patterns, words)
def test_find_embedding_order_iso(p, h):
    host, sigma, _ = _dense_host(h)
    pat, _ = _dense_pattern(p)
    key = list(range(max(pat) + 1))
    assert pure.find_embedding(pat, host, sigma, key) == fast.find_embedding(pat, host, sigma, key)


@settings(max_examples=300, deadline=None)
@given(words, st.integers(0, 6))
def test_max_alternation(h, stop):
    host, sigma, _ = _dense_host(h)
    assert pure.max_alternation(host, sigma, stop) == fast.max_alternation(host, sigma, stop)


@given(st.sets(st.integers(0, 40)), st.sets(st.integers(0, 40)))
def test_pair_runs(a, b):
    a, b = sorted(a), sorted(b - a)
    assert pure.pair_runs(a, b) == fast.pair_runs(a, b)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=40), st.lists(st.integers(1, 3), min_size=1, max_size=5), st.booleans())
def test_greedy_rounds(seq, quotas, repeat_last):
    assert pure.greedy_rounds(seq, 3, quotas, repeat_last) == fast.greedy_rounds(seq, 3, quotas, repeat_last)


@pytest.mark.parametrize("mod", [pure, fast], ids=["python", "cython"])
def test_bad_input_raises(mod):
    with pytest.raises(ValueError):
        mod.find_embedding([0, 1, 2], [0, 1, 0], 2, [0, 1])
    with pytest.raises(ValueError):
        mod.find_embedding([0], [0, 3], 2)
    with pytest.raises(ValueError):
        mod.max_alternation([0, 5], 2)
    with pytest.raises(ValueError):
        mod.greedy_rounds([0, 4], 2, [1], True)
    with pytest.raises(ValueError):
        mod.greedy_rounds([0, 1], 2, [], True)


def _backend(env_value):
    env = dict(os.environ)
    env.pop("DSFORGE_PURE", None)
    if env_value is not None:
        env["DSFORGE_PURE"] = env_value
    out = subprocess.run([sys.executable, "-c", "from dsforge import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_backend_selection():
    assert _backend(None) == "cython"
    assert _backend("1") == "python"
