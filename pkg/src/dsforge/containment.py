"""Containment up to isomorphism, DS order and formation structure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .patterns import DEFAULT_MEMBER_CAP, PatternFamily
from .seqcore import Sequence, SeqInput, canonical_form, project

DEFAULT_SUBSET_BOUND = 20


class InfeasibleCheck(ValueError):
    """Neither member enumeration nor a specialised checker fits the limits."""


@dataclass(frozen=True)
class Embedding:
    """Witness of containment.  ``positions`` are 0-based host indices."""

    symbol_map: dict
    positions: tuple

    def as_dict(self) -> dict:
        return {"symbol_map": {str(k): v for k, v in self.symbol_map.items()}, "positions": list(self.positions)}


def _dense_host(host: Sequence):
    ids = sorted(set(host))
    rank = {x: i for i, x in enumerate(ids)}
    return [rank[x] for x in host], len(ids), ids


def _dense_pattern(pattern: Sequence):
    order: dict = {}
    for x in pattern:
        if x not in order:
            order[x] = len(order)
    return [order[x] for x in pattern], list(order)


def _search(pattern: SeqInput, host: SeqInput, order_iso: bool, colex: bool) -> Embedding | None:
    pattern = Sequence(pattern)
    host = Sequence(host)
    pat, pat_syms = _dense_pattern(pattern)
    if len(pat_syms) > len(set(host)):
        return None
    h, sigma, ids = _dense_host(host)
    key = pat_syms if order_iso else None
    found = kernels.find_embedding(pat, h, sigma, key, colex)
    if found is None:
        return None
    smap = {pat_syms[pat[t]]: host[x] for t, x in enumerate(found)}
    return Embedding(smap, tuple(found))


def embeds(pattern: SeqInput, host: SeqInput) -> Embedding | None:
    """Witness that ``pattern`` is isomorphic to a subsequence of ``host``, or None.

    Among all witnesses the one finishing earliest is chosen, comparing
    positions from the last one backwards.
    """
    return _search(pattern, host, order_iso=False, colex=True)


def embeds_order_iso(pattern: SeqInput, host: SeqInput) -> Embedding | None:
    """Like :func:`embeds` but the symbol map must be increasing."""
    return _search(pattern, host, order_iso=True, colex=True)


def contains(pattern: SeqInput, host: SeqInput) -> bool:
    """True iff ``pattern`` embeds in ``host`` (stops at the first witness)."""
    return _search(pattern, host, order_iso=False, colex=False) is not None


def formation_count(host: SeqInput, A: Iterable[int]) -> int:
    """Most catenated permutations of ``A`` inside the projection of ``host`` onto ``A``."""
    A = sorted(set(A))
    if not A:
        return 0
    idx = {x: i for i, x in enumerate(A)}
    proj = [idx[x] for x in Sequence(host) if x in idx]
    return kernels.greedy_rounds(proj, len(A), [1], True)


def dbl_formation_reach(host: SeqInput, A: Iterable[int], parts: int) -> bool:
    """True iff the projection onto ``A`` splits into ``parts`` segments with quotas 1, 2, ..., 2, 1."""
    if parts < 2:
        raise ValueError("parts must be >= 2")
    A = sorted(set(A))
    if not A:
        return False
    idx = {x: i for i, x in enumerate(A)}
    proj = [idx[x] for x in Sequence(host) if x in idx]
    quotas = [1] + [2] * (parts - 2) + [1]
    return kernels.greedy_rounds(proj, len(A), quotas, False) == parts


def ds_order(host: SeqInput) -> int:
    """Longest pairwise alternation minus two, floored at zero."""
    host = Sequence(host)
    h, sigma, _ = _dense_host(host)
    return max(kernels.max_alternation(h, sigma) - 2, 0)


def is_ds_sequence(host: SeqInput, s: int) -> bool:
    from .seqcore import is_k_sparse

    return is_k_sparse(host, 2) and ds_order(host) <= s


def avoids_family(
    host: SeqInput,
    family: PatternFamily,
    subset_bound: int = DEFAULT_SUBSET_BOUND,
    candidate_subsets: Iterable[Iterable[int]] | None = None,
    member_cap: int = DEFAULT_MEMBER_CAP,
) -> bool:
    """True iff no member of ``family`` embeds in ``host``.

    perm and dblperm families are decided per r-subset of the host alphabet
    through the formation checks; other kinds enumerate their members.
    """
    host = Sequence(host)
    if not host:
        return True
    alphabet = sorted(set(host))
    if family.kind in ("perm", "dblperm"):
        r = family.r
        if r > len(alphabet):
            return True
        if candidate_subsets is not None:
            subsets = (tuple(sorted(set(A))) for A in candidate_subsets)
        elif len(alphabet) <= subset_bound:
            subsets = itertools.combinations(alphabet, r)
        elif family.size() <= member_cap:
            return all(not contains(p, host) for p in family.members(member_cap))
        else:
            raise InfeasibleCheck(
                f"alphabet {len(alphabet)} exceeds subset bound {subset_bound} and family has {family.size()} members"
            )
        for A in subsets:
            if len(A) != r:
                raise ValueError(f"candidate subset {A} does not have {r} symbols")
            if family.kind == "perm" or family.parts == 1:
                if formation_count(host, A) >= family.parts:
                    return False
            elif dbl_formation_reach(host, A, family.parts):
                return False
        return True
    if family.size() > member_cap:
        raise InfeasibleCheck(f"family has {family.size()} members, cap is {member_cap}")
    n_sym = len(alphabet)
    for p in family.members(member_cap):
        if canonical_form(p).alphabet_size <= n_sym and contains(p, host):
            return False
    return True


def pairwise_alternation(host: SeqInput, a: int, b: int) -> int:
    """Run count of the projection of ``host`` onto {a, b}."""
    la = [i for i, x in enumerate(Sequence(host)) if x == a]
    lb = [i for i, x in enumerate(Sequence(host)) if x == b]
    return kernels.pair_runs(la, lb)


__all__ = [
    "Embedding",
    "InfeasibleCheck",
    "embeds",
    "embeds_order_iso",
    "contains",
    "formation_count",
    "dbl_formation_reach",
    "ds_order",
    "is_ds_sequence",
    "avoids_family",
    "pairwise_alternation",
    "project",
]
