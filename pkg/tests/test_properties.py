"""Property tests over random small inputs."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dsforge.ackermann import ack, row_inverse
from dsforge.containment import (
    avoids_family,
    contains,
    ds_order,
    embeds,
    embeds_order_iso,
    formation_count,
    pairwise_alternation,
)
from dsforge.decompose import ackermann_tree, canonical_tree, decompose, project_tree, uniform_partition
from dsforge.patterns import make_family
from dsforge.seqcore import (
    BlockedSequence,
    canonical_form,
    filter_occurrences,
    greedy_parse,
    is_k_sparse,
    keep_every,
    make_k_sparse,
    project,
)

from oracles import brute_ds_order, brute_embeds, brute_embeds_order_iso, brute_formation

words = st.lists(st.integers(1, 6), max_size=25)
short_words = st.lists(st.integers(1, 4), max_size=11)
patterns = st.lists(st.integers(1, 3), min_size=1, max_size=5)
blocked = st.lists(st.sets(st.integers(1, 8), min_size=1, max_size=4).map(sorted), min_size=1, max_size=24).map(
    BlockedSequence.from_lists
)

FAST = settings(max_examples=150, deadline=None)


def is_subsequence(small, big):
    it = iter(big)
    return all(any(x == y for y in it) for x in small)


@given(words)
def test_canonical_form_idempotent(s):
    c = canonical_form(s)
    assert canonical_form(c) == c and c.is_canonical() and len(c) == len(s)


@given(words, st.permutations(range(1, 7)))
def test_canonical_form_ignores_renaming(s, perm):
    renamed = [perm[x - 1] for x in s]
    assert canonical_form(renamed) == canonical_form(s)


@given(words, st.integers(1, 4))
def test_make_k_sparse(s, k):
    out = make_k_sparse(s, k)
    assert is_k_sparse(out, k) and is_subsequence(out, s)
    assert make_k_sparse(out, k) == out


@given(words, st.sets(st.integers(1, 6)), st.sets(st.integers(1, 6)))
def test_project_composes(s, a, b):
    assert project(project(s, a), b) == project(s, a & b)


@given(words, st.integers(1, 4))
def test_keep_every_counts(s, k):
    out = filter_occurrences(s, keep_every(k))
    for x in set(s):
        assert out.count(x) == math.ceil(s.count(x) / k)


@FAST
@given(st.lists(st.integers(1, 4), max_size=20), st.integers(2, 6))
def test_greedy_parse_reconstructs(s, max_len):
    parts = greedy_parse(s, [[1, 2, 1, 2]], max_len=max_len)
    flat = []
    for seg, sep in parts:
        assert len(seg) <= max_len and not contains([1, 2, 1, 2], seg)
        flat.extend(seg)
        if sep is not None:
            flat.append(sep)
    assert flat == list(s)


@FAST
@given(patterns, short_words)
def test_embeds_matches_brute_force(p, h):
    w = embeds(p, h)
    assert (w is not None) == brute_embeds(p, h)
    if w is not None:
        sub = [h[i] for i in w.positions]
        assert canonical_form(sub) == canonical_form(p)
        assert all(w.symbol_map[a] == b for a, b in zip(p, sub))


@FAST
@given(patterns, short_words)
def test_order_iso_matches_brute_force_and_implies_embeds(p, h):
    w = embeds_order_iso(p, h)
    assert (w is not None) == brute_embeds_order_iso(p, h)
    if w is not None:
        assert contains(p, h)


@FAST
@given(patterns, short_words, short_words)
def test_containment_monotone(p, h, extra):
    if contains(p, h):
        assert contains(p, h + extra) and contains(p, extra + h)


@given(words)
def test_ds_order_matches_brute_force(s):
    assert ds_order(s) == brute_ds_order(s)


@given(words, st.sets(st.integers(1, 6)))
def test_ds_order_monotone_under_projection(s, keep):
    assert ds_order(project(s, keep)) <= ds_order(s)


@given(st.lists(st.integers(1, 4), max_size=20), st.data())
def test_pair_formations_from_alternation(rest, data):
    s = data.draw(st.permutations(rest + [1, 2]))
    a, b = 1, 2
    assert formation_count(s, {a, b}) >= pairwise_alternation(s, a, b) // 2


@FAST
@given(st.lists(st.integers(1, 4), max_size=16), st.integers(2, 4))
def test_perm_avoidance_bounds_order(s, t):
    if avoids_family(s, make_family("perm", 2, t)):
        assert ds_order(s) <= 2 * t - 3


@FAST
@given(st.lists(st.integers(1, 3), max_size=10), st.sets(st.integers(1, 3), min_size=1))
def test_formation_matches_brute_force(s, alphabet):
    assert formation_count(s, alphabet) == brute_formation(s, alphabet)


@FAST
@given(blocked, st.sampled_from([1, 2, 4, 8]))
def test_decomposition_bookkeeping(s, width):
    d = decompose(s, uniform_partition(s.block_count, width))
    assert s.alphabet_size == d.n_hat + sum(d.n_local)
    assert s.length == d.local_length + d.global_seq.length
    assert contains(d.contracted.flatten(), d.global_seq.flatten())
    for q in range(d.m_hat):
        assert d.global_parts[q].alphabet_size == d.n_first[q] + d.n_last[q] + d.n_middle[q] - len(
            d.first_parts[q].alphabet & d.last_parts[q].alphabet
        )


@FAST
@given(blocked)
def test_canonical_tree_leaves_follow_blocks(s):
    assume(s.block_count >= 2)
    t = canonical_tree(s)
    assert [t.block(v) for v in t.leaves] == [b.symbols for b in s.blocks]
    assert all(not t.children(v) for v in t.leaves)
    pre = [t.preorder(v) for v in t.leaves]
    assert pre == sorted(pre)
    for a in s.alphabet:
        p = project_tree(t, a)
        assert p.crown == t.crown[a]


@FAST
@given(blocked, st.integers(1, 3))
def test_ackermann_projection_heights(s, i):
    assume(s.block_count >= 2)
    t = ackermann_tree(s, i)
    assert [t.block(v) for v in t.leaves] == [b.symbols for b in s.blocks]
    for a in s.alphabet:
        assert project_tree(t, a).height() <= i + 1


@given(st.integers(1, 4), st.integers(1, 4))
def test_row_inverse_round_trip(i, j):
    v = ack(i, j)
    assume(isinstance(v, int) and v < 10**30)
    assert row_inverse(i, v) == j
