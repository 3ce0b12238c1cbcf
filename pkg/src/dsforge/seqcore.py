"""Sequences, blocked sequences and the elementary transformations on them.

A :class:`Sequence` is an immutable tuple of non-negative symbol ids.  A
:class:`BlockedSequence` is a tuple of :class:`Block` objects, each holding
distinct symbols and a live/dead flag.  Every function here is pure.

Text formats::

    1 2 1 3           plain sequence, whitespace separated
    (1 2) <2 1>       blocked sequence, ( ) live and < > dead
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence as SeqLike, Union


class Sequence(tuple):
    """Immutable word over non-negative integer symbols."""

    __slots__ = ()

    def __new__(cls, symbols: Iterable[int] = ()):
        if isinstance(symbols, Sequence):
            return symbols
        items = tuple(symbols)
        for x in items:
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise ValueError(f"symbol ids must be non-negative ints, got {x!r}")
        return super().__new__(cls, items)

    @classmethod
    def _trusted(cls, items: Iterable[int]) -> "Sequence":
        # skips validation; only for ids produced internally
        return super().__new__(cls, tuple(items))

    @property
    def symbols(self) -> tuple:
        return tuple(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self)

    @property
    def alphabet_size(self) -> int:
        return len(set(self))

    def is_canonical(self) -> bool:
        nxt = 1
        seen = set()
        for x in self:
            if x not in seen:
                if x != nxt:
                    return False
                seen.add(x)
                nxt += 1
        return True

    def counts(self) -> dict:
        c: dict = {}
        for x in self:
            c[x] = c.get(x, 0) + 1
        return c

    def __add__(self, other):
        return Sequence._trusted(tuple(self) + tuple(Sequence(other)))

    def __repr__(self) -> str:
        return f"Sequence({list(self)!r})"


SeqInput = Union[Sequence, SeqLike[int], Iterable[int]]


class Block(NamedTuple):
    symbols: tuple
    live: bool = True

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.symbols)


class Interval(NamedTuple):
    """Inclusive 1-based block range."""

    start_block: int
    end_block: int

    @property
    def width(self) -> int:
        return self.end_block - self.start_block + 1


@dataclass(frozen=True)
class BlockedSequence:
    blocks: tuple

    def __post_init__(self):
        fixed = []
        for b in self.blocks:
            if not isinstance(b, Block):
                syms, live = b if isinstance(b, tuple) and len(b) == 2 and isinstance(b[1], bool) else (b, True)
                b = Block(tuple(syms), bool(live))
            else:
                b = Block(tuple(b.symbols), bool(b.live))
            if len(set(b.symbols)) != len(b.symbols):
                raise ValueError(f"duplicate symbol inside block {b.symbols}")
            for x in b.symbols:
                if not isinstance(x, int) or x < 0:
                    raise ValueError(f"symbol ids must be non-negative ints, got {x!r}")
            fixed.append(b)
        object.__setattr__(self, "blocks", tuple(fixed))

    @classmethod
    def _trusted(cls, blocks: Iterable[Block]) -> "BlockedSequence":
        obj = object.__new__(cls)
        object.__setattr__(obj, "blocks", tuple(blocks))
        return obj

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]], live: bool = True) -> "BlockedSequence":
        return cls(tuple(Block(tuple(b), live) for b in lists))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def live_block_count(self) -> int:
        return sum(1 for b in self.blocks if b.live)

    @property
    def dead_block_count(self) -> int:
        return sum(1 for b in self.blocks if not b.live)

    @property
    def length(self) -> int:
        return sum(len(b.symbols) for b in self.blocks)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(x for b in self.blocks for x in b.symbols)

    @property
    def alphabet_size(self) -> int:
        return len(self.alphabet)

    def flatten(self) -> Sequence:
        return Sequence._trusted(x for b in self.blocks for x in b.symbols)

    def block_offsets(self) -> list:
        """Start position of each block in the flattened sequence."""
        out, pos = [], 0
        for b in self.blocks:
            out.append(pos)
            pos += len(b.symbols)
        return out

    def relabel(self, mapping) -> "BlockedSequence":
        return BlockedSequence._trusted(
            Block(tuple(mapping[x] for x in b.symbols), b.live) for b in self.blocks
        )

    def canonical(self) -> "BlockedSequence":
        return self.relabel(_first_appearance_map(self.flatten()))

    def all_live(self) -> "BlockedSequence":
        return BlockedSequence._trusted(Block(b.symbols, True) for b in self.blocks)

    def __str__(self) -> str:
        return format_blocked(self)


# ---------------------------------------------------------------- basics


def _first_appearance_map(seq: Iterable[int]) -> dict:
    mapping: dict = {}
    for x in seq:
        if x not in mapping:
            mapping[x] = len(mapping) + 1
    return mapping


def canonical_form(s: SeqInput) -> Sequence:
    """Relabel symbols 1, 2, ... in order of first appearance."""
    s = Sequence(s)
    mapping = _first_appearance_map(s)
    return Sequence._trusted(mapping[x] for x in s)


def is_k_sparse(s: SeqInput, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be >= 1")
    last: dict = {}
    for i, x in enumerate(Sequence(s)):
        if x in last and i - last[x] < k:
            return False
        last[x] = i
    return True


def make_k_sparse(s: SeqInput, k: int) -> Sequence:
    """Left-to-right greedy: drop an occurrence equal to one of the last k-1 kept symbols."""
    if k < 1:
        raise ValueError("k must be >= 1")
    kept: list = []
    for x in Sequence(s):
        if k > 1 and x in kept[-(k - 1):]:
            continue
        kept.append(x)
    return Sequence._trusted(kept)


def project(s: SeqInput, keep: Iterable[int]) -> Sequence:
    keep = set(keep)
    return Sequence._trusted(x for x in Sequence(s) if x in keep)


# ---------------------------------------------------------------- filtering


class DropFirst(NamedTuple):
    d: int


class DropLast(NamedTuple):
    d: int


class KeepEvery(NamedTuple):
    k: int


Policy = Union[DropFirst, DropLast, KeepEvery]


def drop_first(d: int) -> DropFirst:
    return DropFirst(d)


def drop_last(d: int) -> DropLast:
    return DropLast(d)


def keep_every(k: int) -> KeepEvery:
    return KeepEvery(k)


def _apply_policy(s: Sequence, policy: Policy) -> Sequence:
    counts = s.counts()
    seen: dict = {}
    out = []
    for x in s:
        idx = seen.get(x, 0)  # 0-based occurrence index of x
        seen[x] = idx + 1
        if isinstance(policy, DropFirst):
            if policy.d < 0:
                raise ValueError("d must be >= 0")
            keep = idx >= policy.d
        elif isinstance(policy, DropLast):
            if policy.d < 0:
                raise ValueError("d must be >= 0")
            keep = idx < counts[x] - policy.d
        elif isinstance(policy, KeepEvery):
            if policy.k < 1:
                raise ValueError("k must be >= 1")
            keep = idx % policy.k == 0
        else:
            raise TypeError(f"unknown policy {policy!r}")
        if keep:
            out.append(x)
    return Sequence._trusted(out)


def filter_occurrences(s: SeqInput, policy) -> Sequence:
    """Apply one policy, or a list of policies in order, per symbol."""
    s = Sequence(s)
    policies = policy if isinstance(policy, list) else [policy]
    for p in policies:
        s = _apply_policy(s, p)
    return s


# ---------------------------------------------------------------- parsing


def greedy_parse(s: SeqInput, family, max_len: int | None = None) -> list:
    """Split ``s`` into maximal intervals avoiding ``family``.

    The occurrence that would break avoidance (or the length bound) is
    returned as the interval's separator and parsing resumes after it.
    ``family`` may be a PatternFamily, an iterable of patterns, or a
    predicate ``seq -> bool`` that is True when the sequence is acceptable.
    """
    s = Sequence(s)
    ok = _avoid_predicate(family)
    out = []
    cur: list = []
    for x in s:
        trial = cur + [x]
        if (max_len is None or len(trial) <= max_len) and ok(Sequence._trusted(trial)):
            cur = trial
        else:
            out.append((Sequence._trusted(cur), x))
            cur = []
    if cur:
        out.append((Sequence._trusted(cur), None))
    return out


def _avoid_predicate(family) -> Callable[[Sequence], bool]:
    if callable(family) and not hasattr(family, "kind"):
        return family
    from .containment import avoids_family
    from .patterns import PatternFamily, explicit_family

    fam = family if isinstance(family, PatternFamily) else explicit_family(family)
    return lambda seq: avoids_family(seq, fam)


# ---------------------------------------------------------------- contraction


def contract(s: BlockedSequence, partition: SeqLike[Interval], order_rule: str = "first") -> BlockedSequence:
    """Collapse each interval of blocks into one live block of its alphabet."""
    if order_rule not in ("first", "second"):
        raise ValueError("order_rule must be 'first' or 'second'")
    _check_partition(partition, s.block_count)
    out = []
    for iv in partition:
        first: dict = {}
        second: dict = {}
        pos = 0
        for b in s.blocks[iv.start_block - 1: iv.end_block]:
            for x in b.symbols:
                if x not in first:
                    first[x] = pos
                elif x not in second:
                    second[x] = pos
                pos += 1
        if order_rule == "first":
            syms = sorted(first, key=first.__getitem__)
        else:
            syms = sorted(first, key=lambda x: second.get(x, first[x]))
        out.append(Block(tuple(syms), True))
    return BlockedSequence._trusted(out)


def _check_partition(partition: SeqLike[Interval], m: int) -> None:
    expect = 1
    for iv in partition:
        if iv.start_block != expect or iv.end_block < iv.start_block:
            raise ValueError(f"partition is not contiguous at {iv}")
        expect = iv.end_block + 1
    if expect != m + 1:
        raise ValueError("partition does not cover all blocks")


# ---------------------------------------------------------------- text I/O


def format_sequence(s: SeqInput) -> str:
    return " ".join(str(x) for x in Sequence(s))


def parse_sequence(text: str) -> Sequence:
    toks = text.split()
    try:
        return Sequence(int(t) for t in toks)
    except ValueError as exc:
        raise ValueError(f"bad sequence text: {exc}") from None


def format_blocked(bs: BlockedSequence) -> str:
    parts = []
    for b in bs.blocks:
        inner = " ".join(str(x) for x in b.symbols)
        parts.append(f"({inner})" if b.live else f"<{inner}>")
    return "".join(parts)


_BLOCK_RE = re.compile(r"\(([^()<>]*)\)|<([^()<>]*)>|(\S)")


def parse_blocked(text: str) -> BlockedSequence:
    blocks = []
    for m in _BLOCK_RE.finditer(text):
        if m.group(3) is not None:
            raise ValueError(f"unexpected character {m.group(3)!r} in blocked text")
        live = m.group(1) is not None
        inner = m.group(1) if live else m.group(2)
        try:
            syms = tuple(int(t) for t in inner.split())
        except ValueError:
            raise ValueError(f"bad block contents {inner!r}") from None
        blocks.append(Block(syms, live))
    return BlockedSequence(tuple(blocks))


def looks_blocked(text: str) -> bool:
    return any(c in text for c in "()<>")
