import itertools
import random

import pytest

from dsforge.containment import (
    InfeasibleCheck,
    avoids_family,
    contains,
    dbl_formation_reach,
    ds_order,
    embeds,
    embeds_order_iso,
    formation_count,
    is_ds_sequence,
    pairwise_alternation,
)
from dsforge.patterns import make_family, make_pattern
from dsforge.seqcore import canonical_form

from oracles import brute_ds_order, brute_embeds, brute_embeds_order_iso, brute_formation


def lit(word):
    return list(canonical_form([ord(c) for c in word]))


def test_embeds_example_witness():
    emb = embeds(lit("abab"), lit("abcacbc"))
    assert emb is not None
    assert [p + 1 for p in emb.positions] == [1, 3, 4, 5]
    assert emb.symbol_map == {1: 1, 2: 3}


def test_embeds_examples():
    assert embeds(lit("ababa"), lit("abcacbc")) is None
    s = [4, 1, 4, 2]
    emb = embeds(s, s)
    assert emb.positions == (0, 1, 2, 3)
    assert all(k == v for k, v in emb.symbol_map.items())


def test_witness_is_consistent():
    rng = random.Random(3)
    for _ in range(200):
        host = [rng.randint(1, 4) for _ in range(rng.randint(0, 12))]
        pat = [rng.randint(1, 3) for _ in range(rng.randint(1, 5))]
        emb = embeds(pat, host)
        if emb is None:
            continue
        assert list(emb.positions) == sorted(set(emb.positions))
        assert [emb.symbol_map[p] for p in pat] == [host[i] for i in emb.positions]
        assert len(set(emb.symbol_map.values())) == len(emb.symbol_map)


def test_order_iso_examples():
    host = [5, 6, 7, 8, 5, 6, 7, 8]
    assert embeds_order_iso([2, 1, 2, 1], host) is None
    emb = embeds_order_iso([1, 2, 1, 2], host)
    assert emb is not None
    vals = [host[i] for i in emb.positions]
    assert vals[0] < vals[1] and vals[0] == vals[2] and vals[1] == vals[3]
    assert embeds_order_iso([1, 3, 2], [1, 3, 2]).positions == (0, 1, 2)
    assert embeds([2, 1, 2, 1], host) is not None


def test_avoids_family_examples():
    perm23 = make_family("perm", 2, 3)
    assert avoids_family([1, 2, 2, 1], perm23)
    assert not avoids_family([1, 2, 1, 2, 1, 2], perm23)
    assert avoids_family([], perm23)
    assert avoids_family([], make_family("binperm", 2, 2))


def test_avoids_family_subset_bound():
    host = list(range(1, 31)) * 2
    fam = make_family("perm", 2, 3)
    # the family is small, so member enumeration takes over above the bound
    assert avoids_family(host, fam)
    with pytest.raises(InfeasibleCheck):
        avoids_family(host, make_family("perm", 4, 4), member_cap=10)
    assert not avoids_family(host + list(range(1, 31)), fam, candidate_subsets=[(1, 2)])


@pytest.mark.parametrize("host, want", [([1, 2, 1, 2], 2), ([1, 2, 2, 1], 2), ([1, 2, 1, 1], 1)])
def test_formation_count(host, want):
    assert formation_count(host, {1, 2}) == want


@pytest.mark.parametrize(
    "host, parts, want",
    [([1, 2, 1, 1, 2, 2, 2, 1], 3, True), ([1, 2, 2, 1], 2, True), ([1, 2, 1, 2], 3, False)],
)
def test_dbl_formation_reach(host, parts, want):
    assert dbl_formation_reach(host, {1, 2}, parts) is want


@pytest.mark.parametrize("word, want", [("ababa", 3), ("abcacbc", 2), ("ab", 0)])
def test_ds_order(word, want):
    assert ds_order(lit(word)) == want


def test_is_ds_sequence():
    assert is_ds_sequence(lit("abcacbc"), 2)
    assert not is_ds_sequence([1, 1, 2], 3)
    assert pairwise_alternation(lit("ababa"), 1, 2) == 5


def test_embeds_against_oracle_exhaustive():
    pats = [lit(w) for w in ("aba", "abab", "abba", "abcb", "abcacbc"[:5])]
    for n in range(1, 8):
        for host in itertools.product((1, 2, 3), repeat=n):
            for p in pats:
                assert (embeds(p, host) is not None) == brute_embeds(p, host)
                assert contains(p, host) == brute_embeds(p, host)


def test_order_iso_against_oracle():
    rng = random.Random(11)
    for _ in range(400):
        host = [rng.randint(1, 4) for _ in range(rng.randint(0, 9))]
        pat = list(canonical_form([rng.randint(1, 3) for _ in range(rng.randint(1, 4))]))
        assert (embeds_order_iso(pat, host) is not None) == brute_embeds_order_iso(pat, host)


def test_formation_and_order_against_oracle():
    rng = random.Random(5)
    for _ in range(300):
        host = [rng.randint(1, 3) for _ in range(rng.randint(0, 11))]
        A = sorted(set(host))
        assert formation_count(host, A) == brute_formation(host, A)
        assert ds_order(host) == brute_ds_order(host)


def test_z3_and_m2_self_contained():
    for kind, k in (("Z", 3), ("M", 2), ("C", 2)):
        p = make_pattern(kind, k)
        assert embeds(p, p) is not None
