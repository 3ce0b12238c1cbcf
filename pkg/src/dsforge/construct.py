"""Lower-bound sequence constructions built from composition and shuffling.

Blocked sequences here mix live blocks ``( )`` and dead blocks ``< >``.
Composition substitutes a middle sequence into every live block of a top
sequence; a shuffle interleaves the live blocks of one sequence into
alphabet-disjoint copies of another.  The families T_rho, U_s, T_pi and
U_pi are assembled recursively from these two operations.

Zig-zag descriptors are strings over ``u`` (up) and ``d`` (down); the
arrows ``↗``/``↘`` are accepted as input too.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb, prod

from .seqcore import Block, BlockedSequence

DEFAULT_SIZE_CAP = 10**7


def size_cap() -> int:
    return int(os.environ.get("DSFORGE_SIZE_CAP", DEFAULT_SIZE_CAP))


class GuardExceeded(RuntimeError):
    """A construction would exceed the size guard; ``estimate`` holds its stats."""

    def __init__(self, estimate: "ConstructionStats", cap: int):
        self.estimate = estimate
        self.cap = cap
        size = f">{estimate.length}" if estimate.saturated else str(estimate.length)
        super().__init__(f"predicted length {size} exceeds size guard {cap}")


@dataclass(frozen=True)
class ConstructionStats:
    length: int
    alphabet: int
    live_blocks: int
    dead_blocks: int
    multiplicity: int = 0
    saturated: bool = False  # True when the numbers are lower bounds only

    @property
    def blocks(self) -> int:
        return self.live_blocks + self.dead_blocks

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "alphabet": self.alphabet,
            "live_blocks": self.live_blocks,
            "dead_blocks": self.dead_blocks,
            "multiplicity": self.multiplicity,
            "saturated": self.saturated,
        }


def stats_of(bs: BlockedSequence, multiplicity: int | None = None) -> ConstructionStats:
    if multiplicity is None:
        counts: dict = {}
        for x in bs.flatten():
            counts[x] = counts.get(x, 0) + 1
        vals = set(counts.values())
        multiplicity = vals.pop() if len(vals) == 1 else 0
    return ConstructionStats(bs.length, bs.alphabet_size, bs.live_block_count, bs.dead_block_count, multiplicity)


# ---------------------------------------------------------------- zig-zags


def parse_zigzag(pi) -> str:
    if isinstance(pi, (list, tuple)):
        pi = "".join(pi)
    out = []
    for c in str(pi):
        if c in "u↗/Uu^":
            out.append("u")
        elif c in "d↘\\Dv":
            out.append("d")
        elif c.isspace() or c == ",":
            continue
        else:
            raise ValueError(f"bad zig-zag character {c!r}")
    return "".join(out)


def flip(pi: str) -> str:
    return pi.translate(str.maketrans("ud", "du"))


def is_u_pattern(pi: str) -> bool:
    """Even length, starts up, ends down, and equal to its own reversed flip."""
    return (
        len(pi) >= 2
        and len(pi) % 2 == 0
        and pi[0] == "u"
        and pi[-1] == "d"
        and flip(pi[::-1]) == pi
    )


# ---------------------------------------------------------------- operations


def compose(top: BlockedSequence, mid: BlockedSequence) -> BlockedSequence:
    """Replace every live block of ``top`` by ``mid`` relabelled through that block."""
    k = mid.alphabet_size
    mid_blocks = mid.canonical().blocks
    out = []
    for b in top.blocks:
        if not b.live:
            out.append(b)
            continue
        if len(b.symbols) != k:
            raise ValueError(f"live block of length {len(b.symbols)} cannot take a sequence over {k} symbols")
        sub = b.symbols
        for mb in mid_blocks:
            out.append(Block(tuple(sub[x - 1] for x in mb.symbols), mb.live))
    return BlockedSequence._trusted(out)


def _shuffle(sub: BlockedSequence, bot: BlockedSequence, post: bool) -> BlockedSequence:
    bot = bot.canonical()
    l = bot.live_block_count
    n_sub = max(sub.alphabet, default=0)
    n_bot = bot.alphabet_size
    # group sub into leading dead blocks and (live block, trailing dead blocks) pairs
    lead: list = []
    groups: list = []
    for b in sub.blocks:
        if b.live:
            if len(b.symbols) != l:
                raise ValueError(f"live block of length {len(b.symbols)} but bottom has {l} live blocks")
            groups.append((b, []))
        elif groups:
            groups[-1][1].append(b)
        else:
            lead.append(b)
    out = list(lead)
    for q, (live, dead_after) in enumerate(groups):
        shift = n_sub + q * n_bot
        p = 0
        for b in bot.blocks:
            syms = tuple(x + shift for x in b.symbols)
            if b.live:
                a = live.symbols[p]
                p += 1
                syms = syms + (a,) if post else (a,) + syms
            out.append(Block(syms, b.live))
        out.extend(dead_after)
    return BlockedSequence._trusted(out).canonical()


def postshuffle(sub: BlockedSequence, bot: BlockedSequence) -> BlockedSequence:
    """Append the p-th symbol of sub's q-th live block to live block p of bot copy q."""
    return _shuffle(sub, bot, post=True)


def preshuffle(sub: BlockedSequence, bot: BlockedSequence) -> BlockedSequence:
    """Like :func:`postshuffle` but the symbols are prepended."""
    return _shuffle(sub, bot, post=False)


# ---------------------------------------------------------------- small builders


def _v(j: int, dead_reversed: bool = True) -> BlockedSequence:
    up = tuple(range(1, j + 1))
    return BlockedSequence._trusted([Block(up, True), Block(up[::-1] if dead_reversed else up, False)])


def _two_live(j: int) -> BlockedSequence:
    up = tuple(range(1, j + 1))
    return BlockedSequence._trusted([Block(up, True), Block(up[::-1], True)])


def _one_live(j: int) -> BlockedSequence:
    return BlockedSequence._trusted([Block(tuple(range(1, j + 1)), True)])


def _copies_of_one(count: int) -> BlockedSequence:
    return BlockedSequence._trusted([Block((1,), True)] * count)


def _empty_live(count: int) -> BlockedSequence:
    return BlockedSequence._trusted([Block((), True)] * count)


# ---------------------------------------------------------------- multiplicities


@lru_cache(maxsize=None)
def _nu(plen: int, i: int) -> int:
    if plen == 2 or i == 1:
        return 2
    return _nu(plen, i - 1) + _nu(plen - 1, i) - 1


@lru_cache(maxsize=None)
def _mu_s(s: int, i: int) -> int:
    if s == 2:
        return 2
    if s == 3:
        return i + 1
    if i == 0:
        return 1
    return _mu_s(s, i - 1) * _mu_s(s - 2, i)


@lru_cache(maxsize=None)
def _mu_pi(plen: int, i: int) -> int:
    if plen == 2:
        return 2
    if i == 0:
        return 1
    if i == 1:
        return 2
    return _mu_pi(plen, i - 1) * _mu_pi(plen - 2, i)


def multiplicity(kind: str, *params) -> int:
    """Exact multiplicity from the defining recurrences.

    ``nu``: (pi or its length, i);  ``mu_s``: (s, i);  ``mu_pi``: (pi or its length, i).
    """
    if kind == "nu":
        plen, i = _plen(params[0]), params[1]
        if plen < 2 or i < 1:
            raise ValueError("nu needs |pi| >= 2 and i >= 1")
        return _nu(plen, i)
    if kind == "mu_s":
        s, i = params
        if s < 2 or i < 0:
            raise ValueError("mu_s needs s >= 2 and i >= 0")
        return _mu_s(s, i)
    if kind == "mu_pi":
        plen, i = _plen(params[0]), params[1]
        if plen < 2 or plen % 2 or i < 0:
            raise ValueError("mu_pi needs even |pi| >= 2 and i >= 0")
        return _mu_pi(plen, i)
    raise ValueError(f"unknown multiplicity kind {kind!r}")


def _plen(p) -> int:
    return p if isinstance(p, int) else len(parse_zigzag(p))


def multiplicity_closed_form(kind: str, *params) -> int:
    """Closed-form value, for comparison against :func:`multiplicity`."""
    if kind == "nu":
        plen, i = _plen(params[0]), params[1]
        return comb(i + plen - 3, plen - 2) + 1
    if kind == "mu_s":
        s, i = params
        if s == 2:
            return 2
        if s == 3:
            return i + 1
        t = (s - 2) // 2
        if s % 2 == 0:
            return 2 ** comb(i + t - 1, t)
        return prod((i + 1 - l) ** comb(l + t - 1, t - 1) for l in range(i + 1))
    if kind == "mu_pi":
        plen, i = _plen(params[0]), params[1]
        t = (plen - 2) // 2
        if t == 0:
            return 2
        return 2 ** comb(i + t - 1, t)
    raise ValueError(f"unknown multiplicity kind {kind!r}")


# ---------------------------------------------------------------- size estimates


def _compose_stats(top: ConstructionStats, mid: ConstructionStats) -> ConstructionStats:
    return ConstructionStats(
        length=top.length - top.live_blocks * mid.alphabet + top.live_blocks * mid.length,
        alphabet=top.alphabet,
        live_blocks=top.live_blocks * mid.live_blocks,
        dead_blocks=top.dead_blocks + top.live_blocks * mid.dead_blocks,
        saturated=top.saturated or mid.saturated,
    )


def _shuffle_stats(sub: ConstructionStats, bot: ConstructionStats) -> ConstructionStats:
    return ConstructionStats(
        length=sub.length + sub.live_blocks * bot.length,
        alphabet=sub.alphabet + sub.live_blocks * bot.alphabet,
        live_blocks=sub.live_blocks * bot.live_blocks,
        dead_blocks=sub.dead_blocks + sub.live_blocks * bot.dead_blocks,
        saturated=sub.saturated or bot.saturated,
    )


def _base(length, alphabet, live, dead) -> ConstructionStats:
    return ConstructionStats(length, alphabet, live, dead)


_SAT_LIMIT = 10**30  # stats beyond this are reported as saturated lower bounds


def _saturate(st: ConstructionStats) -> ConstructionStats:
    if st.length > _SAT_LIMIT and not st.saturated:
        return replace(st, saturated=True)
    return st


def _too_big(j: int) -> ConstructionStats:
    # every family has length >= j once j >= 1
    return ConstructionStats(j, j, 1, 0, saturated=True)


_LOOP_LIMIT = 10**7  # beyond this many rows an estimate is only a lower bound


def _row(cache: dict, key, j: int, step, first: int, driver) -> ConstructionStats:
    """Fill ``cache[key, j']`` for j' up to ``j`` iteratively; ``step`` computes one row.

    Rows grow with j, so once a row saturates every later row is reported
    as that saturated lower bound.  If ``driver`` (the quantity the next
    step depends on) stops changing, each further step adds the same
    increment and the row is extended in closed form.
    """
    if (key, j) in cache:
        return cache[key, j]
    sat = cache.get((key, "sat"))
    if sat is not None and j >= sat[0]:
        return sat[1]
    aff = cache.get((key, "affine"))
    if aff is not None and j >= aff[0]:
        return _extend(aff, j)
    top = cache.get((key, "top"), first - 1)  # highest row filled so far
    prev = cache.get((key, top))
    for k in range(top + 1, j + 1):
        if k > _LOOP_LIMIT:
            return _too_big(j)
        cur = _saturate(step(k, prev))
        if cur.saturated:
            cache[key, "sat"] = (k, cur)
            return cur
        cache[key, k] = cur
        cache[key, "top"] = k
        if prev is not None and driver(prev) == driver(cur):
            delta = (cur.length - prev.length, cur.alphabet - prev.alphabet, cur.dead_blocks - prev.dead_blocks)
            aff = (k, cur, delta)
            cache[key, "affine"] = aff
            return _extend(aff, j)
        prev = cur
    return cache[key, j]


def _extend(aff, j: int) -> ConstructionStats:
    k, st, (dl, da, dd) = aff
    n = j - k
    return _saturate(replace(st, length=st.length + n * dl, alphabet=st.alphabet + n * da,
                             dead_blocks=st.dead_blocks + n * dd))


def _live(st):
    return st.live_blocks


def _blocks(st):
    return st.blocks


_T_RHO: dict = {}
_U_S: dict = {}
_T_PI: dict = {}
_U_PI: dict = {}


def _est_t_rho(rho: int, i: int, j: int) -> ConstructionStats:
    if i == 1:
        return _base(2 * j, j, 1, 1)

    def step(k, bot):
        if k == 0:
            return _base(0, 0, rho, 0)
        L = bot.live_blocks
        mid = _base(2 * L, L, 1, 1)
        return _shuffle_stats(_compose_stats(_est_t_rho(rho, i - 1, L), mid), bot)

    return _row(_T_RHO, (rho, i), j, step, 0, _live)


def _est_u_s(s: int, i: int, j: int) -> ConstructionStats:
    if s == 2:
        return _base(2 * j, j, 2, 0)
    if i == 0:
        return _base(j, j, 1, 0)
    if s == 3:
        if j == 1:
            return _base(i + 1, 1, i + 1, 0)
        st = _est_t_rho(j, i, j)
        if st.saturated:
            return st
        return replace(st, live_blocks=st.length // j, dead_blocks=0)

    def step(k, bot):
        if k == 1:
            mu = _mu_s(s, i)
            return _base(mu, 1, mu, 0)
        mid = _est_u_s(s - 2, i, bot.blocks)
        if mid.saturated:
            return mid
        return _shuffle_stats(_compose_stats(_est_u_s(s, i - 1, mid.alphabet), mid), bot)

    return _row(_U_S, (s, i), j, step, 1, _blocks)


def _est_t_pi(pi: str, i: int, j: int) -> ConstructionStats:
    if len(pi) == 2 or i == 1:
        return _base(2 * j, j, 1, 1)

    def step(k, bot):
        if k == 0:
            return _base(0, 0, 2, 0)
        mid = _est_t_pi(pi[:-1], i, bot.live_blocks)
        if mid.saturated:
            return mid
        return _shuffle_stats(_compose_stats(_est_t_pi(pi, i - 1, mid.alphabet), mid), bot)

    return _row(_T_PI, (pi, i), j, step, 0, _live)


def _est_u_pi(pi: str, i: int, j: int) -> ConstructionStats:
    if len(pi) == 2 or i == 1:
        return _base(2 * j, j, 2, 0)
    if i == 0:
        return _base(j, j, 1, 0)

    def step(k, bot):
        if k == 1:
            mu = _mu_pi(len(pi), i)
            return _base(mu, 1, mu, 0)
        mid = _est_u_pi(_u_mid_pattern(pi), i, bot.blocks)
        if mid.saturated:
            return mid
        return _shuffle_stats(_compose_stats(_est_u_pi(pi, i - 1, mid.alphabet), mid), bot)

    return _row(_U_PI, (pi, i), j, step, 1, _blocks)


def size_estimate(constructor: str, *params) -> ConstructionStats:
    """Predict stats of a construction without building it.

    ``constructor`` is one of t_rho (rho, i, j), u_s (s, i, j),
    t_pi (pi, i, j), u_pi (pi, i, j).
    """
    if constructor == "t_rho":
        rho, i, j = params
        _check_t_rho(rho, i, j)
        return replace(_est_t_rho(rho, i, j), multiplicity=i + 1)
    if constructor == "u_s":
        s, i, j = params
        _check_u_s(s, i, j)
        return replace(_est_u_s(s, i, j), multiplicity=_mu_s(s, i))
    if constructor == "t_pi":
        pi, i, j = params
        pi = _check_t_pi(pi, i, j)
        return replace(_est_t_pi(pi, i, j), multiplicity=_nu(len(pi), i))
    if constructor == "u_pi":
        pi, i, j = params
        pi = _check_u_pi(pi, i, j)
        return replace(_est_u_pi(pi, i, j), multiplicity=_mu_pi(len(pi), i))
    raise ValueError(f"unknown constructor {constructor!r}")


def _guard(constructor: str, params: tuple, cap: int | None) -> None:
    cap = size_cap() if cap is None else cap
    est = size_estimate(constructor, *params)
    if est.saturated or est.length > cap:
        raise GuardExceeded(est, cap)


# ---------------------------------------------------------------- validation


def _check_t_rho(rho, i, j):
    if rho < 2 or i < 1 or j < 0:
        raise ValueError("t_rho needs rho >= 2, i >= 1, j >= 0")


def _check_u_s(s, i, j):
    if s < 2 or i < 0 or j < 1:
        raise ValueError("u_s needs s >= 2, i >= 0, j >= 1")


def _check_t_pi(pi, i, j) -> str:
    pi = parse_zigzag(pi)
    if len(pi) < 2 or pi[0] != "u":
        raise ValueError("t_pi needs a pattern of length >= 2 starting with up")
    if i < 1 or j < 0:
        raise ValueError("t_pi needs i >= 1, j >= 0")
    return pi


def _check_u_pi(pi, i, j) -> str:
    pi = parse_zigzag(pi)
    if not is_u_pattern(pi):
        raise ValueError("u_pi needs an even-length flip-palindrome starting up and ending down")
    if i < 0 or j < 1:
        raise ValueError("u_pi needs i >= 0, j >= 1")
    return pi


def _u_mid_pattern(pi: str) -> str:
    inner = pi[1:-1]
    return inner if pi[1] == "u" else flip(inner)


# ---------------------------------------------------------------- builders


_WARMED: dict = {}


def _warm(fn, head: tuple, j: int, first: int) -> BlockedSequence:
    # rows depend on the previous row; fill the cache bottom-up so recursion
    # depth stays bounded, skipping closed-form base rows entirely
    if _BASE[fn](*head, j):
        return fn(*head, j)
    key = (fn, head)
    for jj in range(max(_WARMED.get(key, first - 1) + 1, first), j):
        fn(*head, jj)
    _WARMED[key] = max(_WARMED.get(key, first - 1), j)
    return fn(*head, j)


@lru_cache(maxsize=1024)
def _t_rho(rho: int, i: int, j: int) -> BlockedSequence:
    if i == 1:
        return _v(j)
    if j == 0:
        return _empty_live(rho)
    bot = _t_rho(rho, i, j - 1)
    L = bot.live_block_count
    top = _warm(_t_rho, (rho, i - 1), L, 0)
    return postshuffle(compose(top, _v(L)), bot)


def t_rho(rho: int, i: int, j: int, guard: int | None = None) -> BlockedSequence:
    """T_rho(i, j): live blocks of length j, every symbol i+1 times."""
    _check_t_rho(rho, i, j)
    _guard("t_rho", (rho, i, j), guard)
    # build bottom-up in j so recursion depth stays bounded by i
    return _warm(_t_rho, (rho, i), j, 0)


def _split_dead(bs: BlockedSequence, width: int) -> BlockedSequence:
    out = []
    for b in bs.blocks:
        if b.live:
            out.append(b)
            continue
        syms = b.symbols
        if len(syms) % width:
            raise ValueError("dead block length is not a multiple of the block width")
        for k in range(0, len(syms), width):
            out.append(Block(syms[k:k + width], True))
    return BlockedSequence._trusted(out)


@lru_cache(maxsize=1024)
def _u_s(s: int, i: int, j: int) -> BlockedSequence:
    if s == 2:
        return _two_live(j)
    if i == 0:
        return _one_live(j)
    if j == 1:
        return _copies_of_one(_mu_s(s, i))
    if s == 3:
        return _split_dead(_warm(_t_rho, (j, i), j, 0), j)
    bot = _u_s(s, i, j - 1)
    mid = _warm(_u_s, (s - 2, i), bot.block_count, 1)
    top = _warm(_u_s, (s, i - 1), mid.alphabet_size, 1)
    return postshuffle(compose(top, mid), bot)


def u_s(s: int, i: int, j: int, guard: int | None = None) -> BlockedSequence:
    """U_s(i, j): all blocks live with length j, multiplicity mu_{s,i}."""
    _check_u_s(s, i, j)
    _guard("u_s", (s, i, j), guard)
    return _warm(_u_s, (s, i), j, 1)


@lru_cache(maxsize=1024)
def _t_pi(pi: str, i: int, j: int) -> BlockedSequence:
    if len(pi) == 2:
        return _v(j, dead_reversed=pi[1] == "d")
    if i == 1:
        return _v(j, dead_reversed=pi[-1] == "d")
    if j == 0:
        return _empty_live(2)
    bot = _t_pi(pi, i, j - 1)
    mid = _warm(_t_pi, (pi[:-1], i), bot.live_block_count, 0)
    top = _warm(_t_pi, (pi, i - 1), mid.alphabet_size, 0)
    sub = compose(top, mid)
    return preshuffle(sub, bot) if pi[-1] == "d" else postshuffle(sub, bot)


def t_pi(pi, i: int, j: int, guard: int | None = None) -> BlockedSequence:
    """Class I zig-zag sequence; the last diagonal picks pre- (down) or postshuffle (up)."""
    pi = _check_t_pi(pi, i, j)
    _guard("t_pi", (pi, i, j), guard)
    return _warm(_t_pi, (pi, i), j, 0)


@lru_cache(maxsize=1024)
def _u_pi(pi: str, i: int, j: int) -> BlockedSequence:
    if len(pi) == 2 or i == 1:
        return _two_live(j)
    if i == 0:
        return _one_live(j)
    if j == 1:
        return _copies_of_one(_mu_pi(len(pi), i))
    bot = _u_pi(pi, i, j - 1)
    mid = _warm(_u_pi, (_u_mid_pattern(pi), i), bot.block_count, 1)
    top = _warm(_u_pi, (pi, i - 1), mid.alphabet_size, 1)
    sub = compose(top, mid)
    return preshuffle(sub, bot) if pi[1] == "u" else postshuffle(sub, bot)


def u_pi(pi, i: int, j: int, guard: int | None = None) -> BlockedSequence:
    """Class II zig-zag sequence: all blocks live, length j, multiplicity mu_{pi,i}."""
    pi = _check_u_pi(pi, i, j)
    _guard("u_pi", (pi, i, j), guard)
    return _warm(_u_pi, (pi, i), j, 1)


_BASE = {
    _t_rho: lambda rho, i, j: i == 1 or j == 0,
    _u_s: lambda s, i, j: s == 2 or i == 0 or j == 1 or s == 3,
    _t_pi: lambda pi, i, j: len(pi) == 2 or i == 1 or j == 0,
    _u_pi: lambda pi, i, j: len(pi) == 2 or i <= 1 or j == 1,
}


def build(kind: str, *params, guard: int | None = None) -> BlockedSequence:
    fn = {"t_rho": t_rho, "u_s": u_s, "t_pi": t_pi, "u_pi": u_pi}.get(kind)
    if fn is None:
        raise ValueError(f"unknown construction {kind!r}")
    return fn(*params, guard=guard)
