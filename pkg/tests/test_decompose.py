import itertools
import random

import pytest

from dsforge.containment import contains
from dsforge.decompose import (
    MarkedSequence,
    ackermann_tree,
    canonical_tree,
    count_feathers,
    decompose,
    double_nested,
    k_egg,
    k_mature,
    k_roost,
    occurrence_marks,
    project_tree,
    projection_to_dot,
    tree_to_dot,
    uniform_partition,
)
from dsforge.seqcore import BlockedSequence, Interval, format_blocked

B = BlockedSequence.from_lists


def test_uniform_partition():
    assert uniform_partition(5, 2) == [Interval(1, 2), Interval(3, 4), Interval(5, 5)]
    assert uniform_partition(4, 4) == [Interval(1, 4)]
    assert uniform_partition(2, 1) == [Interval(1, 1), Interval(2, 2)]
    with pytest.raises(ValueError):
        uniform_partition(5, 3)


def test_classification():
    d = decompose(B([[1, 2], [1, 3], [2, 3]]), uniform_partition(3, 1))
    assert d.global_symbols == {1, 2, 3}
    assert d.last_parts[1].alphabet == {1}
    assert d.first_parts[1].alphabet == {3}
    assert d.middle_parts[1].alphabet == frozenset()


def test_single_interval_all_local():
    s = B([[1, 2], [2, 3]])
    d = decompose(s, [Interval(1, 2)])
    assert d.global_symbols == frozenset() and d.global_seq.length == 0
    assert d.n_local == [3]


def test_two_intervals_no_middle():
    rng = random.Random(2)
    for _ in range(30):
        s = B([rng.sample(range(1, 6), rng.randint(0, 4)) for _ in range(6)])
        d = decompose(s, uniform_partition(6, 4))
        assert all(p.length == 0 for p in d.middle_parts)


def test_contracted_blocks():
    s = B([[1, 2], [3], [2, 1], [3, 5], [4], [4]])
    d = decompose(s, uniform_partition(6, 2))
    assert format_blocked(d.contracted) == "(1 2 3)(2 1 3)()"
    assert d.m_hat == 3 and d.widths == [2, 2, 2]
    assert d.n_local == [0, 1, 1]


def test_base_tree():
    t = canonical_tree(B([[1, 2], [2, 1]]))
    assert t.node_count == 3
    assert t.block(t.root) is None
    assert [t.block(v) for v in t.leaves] == [(1, 2), (2, 1)]
    with pytest.raises(ValueError):
        canonical_tree(B([[1]]))


def test_four_blocks_of_one_symbol():
    s = B([[1]] * 4)
    t = canonical_tree(s)
    p = project_tree(t, 1)
    assert len(p.parent) == 7 and len(p.leaves) == 4
    assert p.crown == t.root and p.lh is not None and p.rh is not None
    assert count_feathers(s, t, "dove") == 1 and count_feathers(s, t, "hawk") == 1


def test_three_blocks():
    t = canonical_tree(B([[1], [1], [1]]))
    root_kids = t.children(t.root)
    assert len(root_kids) == 2
    assert len(t.children(root_kids[0])) == 2 and len(t.children(root_kids[1])) == 1


def test_two_block_projection():
    t = canonical_tree(B([[1, 2], [1]]))
    p = project_tree(t, 1)
    assert p.wingtips == set(t.leaves)
    assert p.height() == 1 and not p.feathers


def test_single_block_symbol():
    t = canonical_tree(B([[1, 2], [1], [1]]))
    p = project_tree(t, 2)
    assert len(p.leaves) == 1 and p.lt == p.rt == t.leaves[0]
    assert p.parent[p.lt] == p.crown


def test_two_blocks_no_feathers():
    rng = random.Random(4)
    for _ in range(50):
        s = B([rng.sample(range(1, 6), rng.randint(1, 5)) for _ in range(2)])
        t = canonical_tree(s)
        assert count_feathers(s, t, "dove") == count_feathers(s, t, "hawk") == 0


def test_every_symbol_has_crown_and_heads():
    rng = random.Random(8)
    for _ in range(40):
        s = B([rng.sample(range(1, 7), rng.randint(1, 4)) for _ in range(rng.randint(2, 20))])
        t = canonical_tree(s)
        counts = {}
        for b in s.blocks:
            for x in b.symbols:
                counts[x] = counts.get(x, 0) + 1
        for x, c in counts.items():
            assert x in t.crown
            heads = [h for h in (t.lh[x], t.rh[x]) if h is not None]
            assert len(heads) == (2 if c >= 2 else 1)


def test_ackermann_schedule():
    t = ackermann_tree(B([[1, 2]] * 2), 3)
    assert t.node_count == 3
    # i = 1, m = 8: width a_{1,2} = 4 locals under a two-leaf contracted tree
    t = ackermann_tree(B([[1]] * 8), 1)
    hat = t.children(t.root)
    assert len(hat) == 2
    assert all(len(t.children(v)) == 2 for v in hat)


def test_ackermann_heights():
    rng = random.Random(12)
    for _ in range(60):
        m = rng.randint(2, 64)
        s = B([rng.sample(range(1, 17), rng.randint(1, 4)) for _ in range(m)])
        i = rng.randint(1, 3)
        t = ackermann_tree(s, i)
        assert [t.block(v) for v in t.leaves] == [b.symbols for b in s.blocks]
        for a in s.alphabet:
            assert project_tree(t, a).height() <= i + 1


def test_double_nested_examples():
    assert double_nested(B([[1], [2], [2], [1, 2], [2], [2], [1]]), 1, 2, 4)
    assert double_nested(B([[2], [1], [1], [1, 2], [1], [1], [2]]), 1, 2, 4)
    assert not double_nested(B([[1], [2], [1, 2], [2], [1]]), 1, 2, 3)
    with pytest.raises(ValueError):
        double_nested(B([[1], [2]]), 1, 2, 1)


def test_roost_examples():
    s = B([[1], [1], [1], [2], [1], [1], [1]])
    assert k_roost(s, Interval(4, 4), 1)
    assert k_roost(s, Interval(4, 3), 1)
    assert not k_roost(s, Interval(4, 4), 2)
    with pytest.raises(ValueError):
        k_roost(s, Interval(4, 4), 0)


def test_non_terminal_counts_double():
    s = B([[1], [1], [2], [1], [1]])
    assert not k_roost(s, Interval(3, 3), 1)
    marked = MarkedSequence(s, frozenset({(2, 1), (4, 1)}))
    assert k_roost(marked, Interval(3, 3), 1)


def test_middle_occurrence_is_one_egg():
    rng = random.Random(6)
    for _ in range(40):
        s = B([rng.sample(range(1, 5), rng.randint(1, 3)) for _ in range(rng.randint(3, 8))])
        for q, b in enumerate(s.blocks, 1):
            for x in b.symbols:
                before = any(x in bb.symbols for bb in s.blocks[: q - 1])
                after = any(x in bb.symbols for bb in s.blocks[q:])
                assert k_egg(s, q, x, 1) == (before and after)


def test_two_roost_and_mature():
    # a b b* a a I a a b b a with a = 1, b = 2
    s = B([[1], [2], [2], [2], [2], [1], [1], [3], [1], [1], [2], [2], [2], [2], [1]])
    assert k_roost(s, Interval(8, 8), 2)
    assert k_mature(s, 7, 1, 2, "left")
    assert k_mature(s, 9, 1, 2, "right")
    assert not k_mature(s, 6, 1, 2, "left")


def test_marks_from_tree():
    t = canonical_tree(B([[1]] * 4))
    hat = t.children(t.root)
    ms = occurrence_marks(t, hat)
    assert ms.nonterminal == {(1, 1), (2, 1)}
    ms = occurrence_marks(t, t.leaves)
    assert ms.nonterminal == frozenset()


def test_dot_output():
    t = canonical_tree(B([[1, 2], [2]]))
    dot = tree_to_dot(t)
    assert dot.startswith("digraph") and dot.count("->") == 2
    assert 'label="1 2"' in dot
    pdot = projection_to_dot(t, project_tree(t, 2))
    assert "wingtip" in pdot and "crown" in pdot
