"""Coefficient recurrences K, dblK, fea, ds, dblds and their closed forms.

All values are exact Python ints.  ``dblK`` additionally depends on the
pattern alphabet r (r >= 2).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from math import comb

KINDS = ("K", "dblK", "fea", "ds", "dblds")


def _check(kind: str, s: int, i: int, r: int | None) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown coefficient kind {kind!r}")
    if i < 1:
        raise ValueError("i must be >= 1")
    if kind == "fea":
        if s < 2:
            raise ValueError("fea needs s >= 2")
    elif s < 1:
        raise ValueError("s must be >= 1")
    if kind == "dblK" and (r is None or r < 2):
        raise ValueError("dblK needs r >= 2")


@lru_cache(maxsize=None)
def _K(s: int, i: int) -> int:
    if s == 1:
        return 1
    if s == 2:
        return 2
    if i == 1:
        return 2 ** (s - 1)
    return 2 * _K(s - 1, i) + _K(s - 2, i) * (_K(s, i - 1) - 2)


@lru_cache(maxsize=None)
def _dblK(s: int, i: int, r: int) -> int:
    if s == 1:
        return 1
    if s == 2:
        return 2 * 6 ** (r - 1)
    if i == 1:
        return 2 * _dblK(s - 1, 1, r) + 1
    return _dblK(s, i - 1, r) + 2 * _dblK(s - 1, i, r) + (_dblK(s - 2, i, r) + 2) * _K(s, i - 1)


@lru_cache(maxsize=None)
def _fea(s: int, i: int) -> int:
    if s == 2:
        return 0
    if i == 1:
        return _fea(s - 1, 1) + 1
    return _fea(s, i - 1) + _fea(s - 1, i) + 1


@lru_cache(maxsize=None)
def _ds(s: int, i: int) -> int:
    if s == 1:
        return 1
    if s == 2:
        return 2
    if i == 1:
        return 2 * _ds(s - 1, 1)
    if s == 3 or s % 2 == 0:
        return 2 * _ds(s - 1, i) + _ds(s - 2, i) * (_ds(s, i - 1) - 2)
    return 2 * _ds(s - 1, i) + 2 * _ds(s - 2, i) * _fea(s, i - 1) + _ds(s - 3, i) * _ds(s, i - 1)


@lru_cache(maxsize=None)
def _dblds(s: int, i: int) -> int:
    if s == 1:
        return 2
    if s == 2:
        return 5
    if i == 1:
        return 2 * (_dblds(s - 1, 1) + 1)
    if s == 3 or s % 2 == 0:
        return _dblds(s, i - 1) + 2 * _dblds(s - 1, i) + (_dblds(s - 2, i) + 2) * _ds(s, i - 1)
    return (
        _dblds(s, i - 1)
        + 2 * _dblds(s - 1, i)
        + 2 * (_dblds(s - 2, i) + 2) * _fea(s, i - 1)
        + (_dblds(s - 3, i) + 2) * _ds(s, i - 1)
    )


def _warm(fn, s: int, i: int, *extra) -> None:
    # evaluate rows bottom-up so the memo keeps recursion shallow for large i
    for ii in range(1, i, 200):
        for ss in range(1, s + 1):
            fn(ss, ii, *extra)


def coefficient(kind: str, s: int, i: int, r: int | None = None) -> int:
    """Exact coefficient value from the defining recurrence."""
    _check(kind, s, i, r)
    if kind == "K":
        _warm(_K, s, i)
        return _K(s, i)
    if kind == "dblK":
        _warm(_dblK, s, i, r)
        return _dblK(s, i, r)
    if kind == "fea":
        _warm(lambda ss, ii: _fea(max(ss, 2), ii), s, i)
        return _fea(s, i)
    if kind == "ds":
        _warm(_ds, s, i)
        return _ds(s, i)
    _warm(_dblds, s, i)
    return _dblds(s, i)


def clear_memo() -> None:
    for fn in (_K, _dblK, _fea, _ds, _dblds):
        fn.cache_clear()


# ---------------------------------------------------------------- closed forms


@dataclass(frozen=True)
class ClosedFormCheck:
    """Outcome of comparing a coefficient with its closed form.

    ``status`` is exact_match, mismatch, bounded_by or not_applicable.  For
    bounded_by, ``bound`` is the numeric bound when the expression has no
    hidden constants (``holds`` then says whether value <= bound) and None
    for asymptotic statements, where only ``expression`` is reported.
    """

    kind: str
    s: int
    i: int
    value: int
    status: str
    expression: str = ""
    expected: int | None = None
    bound: int | None = None
    holds: bool | None = None

    @property
    def ok(self) -> bool:
        return self.status in ("exact_match", "not_applicable") or (self.status == "bounded_by" and self.holds is not False)


def _k4(i: int) -> int:
    return 10 * 2**i - 4 * (i + 2)


def _exact(kind, s, i, value, expected, expr) -> ClosedFormCheck:
    status = "exact_match" if value == expected else "mismatch"
    return ClosedFormCheck(kind, s, i, value, status, expr, expected=expected)


def _bounded(kind, s, i, value, expr, bound=None) -> ClosedFormCheck:
    holds = None if bound is None else value <= bound
    return ClosedFormCheck(kind, s, i, value, "bounded_by", expr, bound=bound, holds=holds)


def closed_form_check(kind: str, s: int, i: int, r: int | None = None) -> ClosedFormCheck:
    value = coefficient(kind, s, i, r)
    t = (s - 2) // 2
    if kind == "fea":
        return _exact(kind, s, i, value, comb(i + s - 2, s - 2) - 1, "C(i+s-2, s-2) - 1")
    if kind in ("K", "ds"):
        if s == 1:
            return _exact(kind, s, i, value, 1, "1")
        if s == 2:
            return _exact(kind, s, i, value, 2, "2")
        if s == 3:
            return _exact(kind, s, i, value, 2 * i + 2, "2i + 2")
        if s == 4:
            return _exact(kind, s, i, value, _k4(i), "10*2^i - 4(i+2)")
        if i == 1:
            return _exact(kind, s, i, value, 2 ** (s - 1), "2^(s-1)")
        if kind == "ds" and s == 5:
            return _bounded(kind, s, i, value, "Theta(i 2^i)")
        if s == 5:
            return _bounded(kind, s, i, value, "<= 2^i (i+O(1))!")
        if s % 2 == 0:
            return _bounded(kind, s, i, value, f"<= 2^C(i+O(1), {t})")
        if kind == "ds":
            return _bounded(kind, s, i, value, f"<= 2^C(i+O(1), {t})")
        return _bounded(kind, s, i, value, f"<= 2^(C(i+O(1), {t}) log(2(i+1)/e))")
    if kind == "dblK":
        if s == 1:
            return _exact(kind, s, i, value, 1, "1")
        if s == 2:
            return _exact(kind, s, i, value, 2 * 6 ** (r - 1), "2*6^(r-1)")
        if s == 3:
            return _bounded(kind, s, i, value, "<= 6 C(i+1, 2) + 4*6^(r-1)(i+1)",
                            6 * comb(i + 1, 2) + 4 * 6 ** (r - 1) * (i + 1))
        if s == 4:
            return _bounded(kind, s, i, value, "<= 20(6^(r-1)+2) 2^i", 20 * (6 ** (r - 1) + 2) * 2**i)
        if i == 1:
            return _bounded(kind, s, i, value, "< (6^(r-1)+1) 2^s", (6 ** (r - 1) + 1) * 2**s - 1)
        if s == 5:
            return _bounded(kind, s, i, value, "<= 2^i (i+O(1))!")
        if s % 2 == 0:
            return _bounded(kind, s, i, value, f"<= 2^C(i+O(1), {t})")
        return _bounded(kind, s, i, value, f"<= 2^(C(i+O(1), {t}) log(2(i+1)/e))")
    if kind == "dblds":
        if s == 1:
            return _exact(kind, s, i, value, 2, "2")
        if s == 2:
            return _exact(kind, s, i, value, 5, "5")
        if i == 1:
            return _exact(kind, s, i, value, 2 ** (s + 1) - 2 ** (s - 2) - 2, "2^(s+1) - 2^(s-2) - 2")
        if s == 3:
            return _bounded(kind, s, i, value, "Theta(i^2)")
        if s == 4:
            return _bounded(kind, s, i, value, "Theta(2^i)")
        if s == 5:
            return _bounded(kind, s, i, value, "Theta(i 2^i)")
        return _bounded(kind, s, i, value, f"<= 2^C(i+O(1), {t})")
    return ClosedFormCheck(kind, s, i, value, "not_applicable")


def ds3_identity_check(i: int) -> bool:
    """ds(3, i) == 2i + 2, unrolled from the recurrence."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return coefficient("ds", 3, i) == 2 * i + 2


def table(kind: str, s_max: int, i_max: int, r: int | None = None) -> list:
    """Rows of closed-form checks for s in 1..s_max (2.. for fea) and i in 1..i_max."""
    s_min = 2 if kind == "fea" else 1
    return [[closed_form_check(kind, s, i, r) for i in range(1, i_max + 1)] for s in range(s_min, s_max + 1)]


if sys.getrecursionlimit() < 5000:
    sys.setrecursionlimit(5000)
