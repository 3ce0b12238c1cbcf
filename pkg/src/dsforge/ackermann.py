"""Ackermann table a_{i,j}, its row inverse and alpha(n, m).

The table follows the recurrence

    a_{1,j} = 2^j,   a_{i,1} = 2,   a_{i,j} = w * a_{i-1,w}  with  w = a_{i,j-1}

evaluated literally, so a_{2,2} = 2 * a_{1,2} = 8.  Values above the cap
(default 2^4096) are replaced by :data:`SATURATED`.
"""

from __future__ import annotations

import threading
from functools import total_ordering

DEFAULT_CAP = 2**4096


@total_ordering
class _Saturated:
    """Marker for a value above the cap.  Compares greater than every int."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("SATURATED")

    def __repr__(self):
        return "SATURATED"

    __str__ = __repr__


SATURATED = _Saturated()


class Ackermann:
    """Memoised table for one cap.  Rows are filled left to right on demand."""

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._rows: dict = {}
        self._lock = threading.Lock()
        # 2^j exceeds the cap from this column on
        self._row1_limit = cap.bit_length()

    def value(self, i: int, j: int):
        if i < 1 or j < 1:
            raise ValueError("ack needs i >= 1 and j >= 1")
        if i == 1:
            return self._sat(2**j) if j < self._row1_limit else SATURATED
        if j == 1:
            return 2
        with self._lock:
            return self._fill(i, j)

    def _sat(self, v):
        if v is None or v > self.cap:
            return SATURATED
        return v

    def _fill(self, i: int, j: int):
        row = self._rows.setdefault(i, [None, 2])  # row[j] = a_{i,j}
        while len(row) <= j:
            w = row[-1]
            if w is SATURATED:
                return SATURATED
            # a_{i-1,w} >= 2^w, so a large w saturates immediately
            if w >= self._row1_limit:
                row.append(SATURATED)
                continue
            below = self.value(i - 1, w) if i - 1 == 1 else self._fill(i - 1, w)
            row.append(SATURATED if below is SATURATED else self._sat(w * below))
        return row[j]


_DEFAULT = Ackermann()


def _table(cap: int | None) -> Ackermann:
    return _DEFAULT if cap is None or cap == DEFAULT_CAP else Ackermann(cap)


def ack(i: int, j: int, cap: int | None = None):
    """a_{i,j}, or SATURATED when it exceeds the cap."""
    return _table(cap).value(i, j)


def saturation_cap() -> int:
    return DEFAULT_CAP


def row_inverse(i: int, m: int, cap: int | None = None) -> int:
    """Smallest j >= 1 with a_{i,j} >= m."""
    if i < 1 or m < 1:
        raise ValueError("row_inverse needs i >= 1 and m >= 1")
    t = _table(cap)
    if m > t.cap:
        raise ValueError("m exceeds the saturation cap; the inverse is not resolvable")
    j = 1
    while t.value(i, j) < m:
        j += 1
    return j


def alpha(n: int, m: int, cap: int | None = None) -> int:
    """min{ i : a_{i,j} >= m }  with  j = max(ceil(n/m), 3)."""
    if n < 1 or m < 1:
        raise ValueError("alpha needs n >= 1 and m >= 1")
    t = _table(cap)
    if m > t.cap:
        raise ValueError("m exceeds the saturation cap; alpha is not resolvable")
    j = max(-(-n // m), 3)
    i = 1
    while t.value(i, j) < m:
        i += 1
    return i


def alpha1(n: int, cap: int | None = None) -> int:
    return alpha(n, n, cap)
