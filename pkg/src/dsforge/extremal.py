"""Exhaustive search for Ex(sigma, n) and Ex(sigma, n, m) on small instances.

Sequences are grown in canonical form only: the next symbol is an
existing id or the smallest unused one.  Containment is hereditary, so a
prefix that contains a forbidden pattern is never extended.  Depth-first
order is lexicographic, which makes the first longest sequence found the
lexicographically least witness.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterable

from .containment import avoids_family, contains
from .patterns import PatternFamily, explicit_family
from .seqcore import Block, BlockedSequence, Sequence, canonical_form

DEFAULT_NODE_CAP = 5_000_000


def node_cap() -> int:
    return int(os.environ.get("DSFORGE_NODE_CAP", DEFAULT_NODE_CAP))


@dataclass
class SearchBudget:
    """Limits for one search.  None means unlimited (nodes default to the env cap)."""

    max_length: int | None = None
    max_nodes: int | None = None
    time_cap: float | None = None

    def nodes(self) -> int:
        return node_cap() if self.max_nodes is None else self.max_nodes


@dataclass(frozen=True)
class ExResult:
    """Best length found, its witness and whether the search was exhaustive."""

    max: int
    witness: object
    exact: bool
    nodes: int

    def as_dict(self) -> dict:
        from .seqcore import format_blocked, format_sequence

        w = self.witness
        text = format_blocked(w) if isinstance(w, BlockedSequence) else format_sequence(w)
        return {"max": self.max, "witness": text, "exact": self.exact}


class _Stop(Exception):
    pass


def _as_family(family) -> PatternFamily:
    if isinstance(family, PatternFamily):
        return family
    return explicit_family([Sequence(p) for p in family])


class _Avoid:
    """Avoidance test for one family, tuned to its kind."""

    def __init__(self, family: PatternFamily):
        self.family = family
        self.generated = family.kind in ("perm", "dblperm")
        if not self.generated:
            pats = {canonical_form(p) for p in family.members()}
            self.patterns = sorted(pats, key=lambda p: (len(p), p))

    def __call__(self, seq: list) -> bool:
        if self.generated:
            return avoids_family(seq, self.family)
        sigma = len(set(seq))
        return not any(p.alphabet_size <= sigma and len(p) <= len(seq) and contains(p, seq) for p in self.patterns)

    def sparsity(self) -> int:
        if self.generated:
            return self.family.r
        return max(p.alphabet_size for p in self.patterns)


class _Search:
    def __init__(self, avoid: _Avoid, n: int, budget: SearchBudget):
        self.avoid = avoid
        self.n = n
        self.budget = budget
        self.node_limit = budget.nodes()
        self.deadline = None if budget.time_cap is None else time.monotonic() + budget.time_cap
        self.nodes = 0
        self.best: list | None = None
        self.exact = True

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit or (self.deadline is not None and time.monotonic() > self.deadline):
            self.exact = False
            raise _Stop

    def offer(self, seq: list) -> None:
        if len(set(seq)) == self.n and (self.best is None or len(seq) > len(self.best)):
            self.best = list(seq)


def _sparse_dfs(st: _Search, seq: list, used: int, k: int) -> None:
    st.offer(seq)
    if st.budget.max_length is not None and len(seq) >= st.budget.max_length:
        st.exact = False
        return
    recent = set(seq[-(k - 1):]) if k > 1 else set()
    for x in range(1, min(used + 1, st.n) + 1):
        if x in recent:
            continue
        st.tick()
        seq.append(x)
        if st.avoid(seq):
            _sparse_dfs(st, seq, max(used, x), k)
        seq.pop()


def ex_bruteforce(family, n: int, k: int | None = None, budget: SearchBudget | None = None) -> ExResult:
    """Longest k-sparse family-avoiding sequence over exactly ``n`` symbols.

    ``k`` defaults to the largest pattern alphabet of the family.  The
    search needs a finite answer, so k must be at least that alphabet size.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    avoid = _Avoid(_as_family(family))
    if k is None:
        k = avoid.sparsity()
    if k < 1:
        raise ValueError("k must be >= 1")
    budget = budget or SearchBudget()
    st = _Search(avoid, n, budget)
    try:
        _sparse_dfs(st, [], 0, k)
    except _Stop:
        pass
    best = st.best or []
    return ExResult(len(best), Sequence(best), st.exact, st.nodes)


def _blocks_of(seq: Iterable[int]) -> BlockedSequence:
    blocks: list = []
    cur: list = []
    for x in seq:
        if x in cur:
            blocks.append(Block(tuple(cur), True))
            cur = []
        cur.append(x)
    if cur:
        blocks.append(Block(tuple(cur), True))
    return BlockedSequence._trusted(blocks)


def _blocked_dfs(st: _Search, seq: list, used: int, m: int, nblocks: int, cur: set) -> None:
    st.offer(seq)
    if st.budget.max_length is not None and len(seq) >= st.budget.max_length:
        st.exact = False
        return
    for x in range(1, min(used + 1, st.n) + 1):
        fresh = x in cur or not seq
        nb = nblocks + 1 if fresh else nblocks
        if nb > m:
            continue
        st.tick()
        seq.append(x)
        if st.avoid(seq):
            _blocked_dfs(st, seq, max(used, x), m, nb, {x} if fresh else cur | {x})
        seq.pop()


def ex_blocked_bruteforce(family, n: int, m: int, budget: SearchBudget | None = None) -> ExResult:
    """Longest family-avoiding sequence over exactly ``n`` symbols with at most ``m`` blocks.

    Greedy splitting gives the fewest blocks, so the block count is
    tracked incrementally.  No sparsity is imposed.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    avoid = _Avoid(_as_family(family))
    budget = budget or SearchBudget()
    st = _Search(avoid, n, budget)
    try:
        _blocked_dfs(st, [], 0, m, 0, set())
    except _Stop:
        pass
    best = st.best or []
    return ExResult(len(best), _blocks_of(best), st.exact, st.nodes)


__all__ = ["SearchBudget", "ExResult", "ex_bruteforce", "ex_blocked_bruteforce", "node_cap", "DEFAULT_NODE_CAP"]
