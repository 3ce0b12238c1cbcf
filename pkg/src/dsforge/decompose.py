"""Sequence decomposition, derivation trees and projection-tree anatomy.

Block indices in this module are 1-based, matching :class:`Interval`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .ackermann import SATURATED, ack
from .seqcore import Block, BlockedSequence, Interval, contract

# ---------------------------------------------------------------- decomposition


def uniform_partition(m: int, width: int) -> list:
    """Intervals of ``width`` blocks; the last one may be shorter."""
    if width < 1 or width & (width - 1):
        raise ValueError("width must be a power of two")
    if m < 1:
        raise ValueError("need at least one block")
    return [Interval(a, min(a + width - 1, m)) for a in range(1, m + 1, width)]


def _restrict(blocks: Iterable[Block], keep) -> BlockedSequence:
    return BlockedSequence._trusted(Block(tuple(x for x in b.symbols if x in keep), b.live) for b in blocks)


@dataclass(frozen=True)
class Decomposition:
    """A blocked sequence split by a partition into local and global parts.

    ``local_parts[q]`` is the projection of interval q onto its local
    symbols; ``global_parts[q]`` onto the global ones, which are further
    split into first, last and middle parts.  ``contracted`` has one block
    per interval listing its global symbols.
    """

    source: BlockedSequence
    partition: tuple
    global_symbols: frozenset
    local_symbols: tuple
    local_parts: tuple
    global_seq: BlockedSequence
    global_parts: tuple
    first_parts: tuple
    last_parts: tuple
    middle_parts: tuple
    contracted: BlockedSequence

    @property
    def m_hat(self) -> int:
        return len(self.partition)

    @property
    def widths(self) -> list:
        return [iv.width for iv in self.partition]

    @property
    def n_hat(self) -> int:
        return len(self.global_symbols)

    @property
    def n_local(self) -> list:
        return [len(x) for x in self.local_symbols]

    @property
    def n_first(self) -> list:
        return [p.alphabet_size for p in self.first_parts]

    @property
    def n_last(self) -> list:
        return [p.alphabet_size for p in self.last_parts]

    @property
    def n_middle(self) -> list:
        return [p.alphabet_size for p in self.middle_parts]

    @property
    def local_length(self) -> int:
        return sum(p.length for p in self.local_parts)

    def interval_of(self, block_index: int) -> int:
        for q, iv in enumerate(self.partition):
            if iv.start_block <= block_index <= iv.end_block:
                return q
        raise IndexError(block_index)


def decompose(s: BlockedSequence, partition, order_rule: str = "first") -> Decomposition:
    partition = tuple(Interval(*iv) for iv in partition)
    # contract validates the partition
    contract(s, partition, order_rule)
    where: dict = {}
    for q, iv in enumerate(partition):
        for b in s.blocks[iv.start_block - 1: iv.end_block]:
            for x in b.symbols:
                where.setdefault(x, []).append(q)
    glob = frozenset(x for x, qs in where.items() if qs[0] != qs[-1])
    locs, lparts, gparts, fparts, lastparts, mparts = [], [], [], [], [], []
    for q, iv in enumerate(partition):
        blocks = s.blocks[iv.start_block - 1: iv.end_block]
        here = {x for b in blocks for x in b.symbols}
        loc = frozenset(here - glob)
        locs.append(loc)
        lparts.append(_restrict(blocks, loc))
        gparts.append(_restrict(blocks, glob))
        g = here & glob
        fparts.append(_restrict(blocks, {x for x in g if where[x][0] == q}))
        lastparts.append(_restrict(blocks, {x for x in g if where[x][-1] == q}))
        mparts.append(_restrict(blocks, {x for x in g if where[x][0] < q < where[x][-1]}))
    gseq = _restrict(s.blocks, glob)
    return Decomposition(
        source=s,
        partition=partition,
        global_symbols=glob,
        local_symbols=tuple(locs),
        local_parts=tuple(lparts),
        global_seq=gseq,
        global_parts=tuple(gparts),
        first_parts=tuple(fparts),
        last_parts=tuple(lastparts),
        middle_parts=tuple(mparts),
        contracted=contract(gseq, partition, order_rule),
    )


# ---------------------------------------------------------------- derivation trees


@dataclass(frozen=True)
class Node:
    parent: int | None
    children: tuple
    block: tuple | None


@dataclass(frozen=True)
class DerivationTree:
    """Arena of nodes.  ``leaves`` lists leaf ids in block order.

    ``crown``, ``lh`` and ``rh`` map each symbol to node ids.  A symbol
    living in a single block has only one head; the other is None.
    """

    source: BlockedSequence
    nodes: tuple
    root: int
    leaves: tuple
    crown: dict
    lh: dict
    rh: dict
    _order: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        order = {}
        stack = [self.root]
        while stack:
            v = stack.pop()
            order[v] = len(order)
            stack.extend(reversed(self.nodes[v].children))
        self._order.update(order)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def children(self, v: int) -> tuple:
        return self.nodes[v].children

    def parent(self, v: int):
        return self.nodes[v].parent

    def block(self, v: int):
        return self.nodes[v].block

    def preorder(self, v: int) -> int:
        return self._order[v]

    def height(self) -> int:
        best = 0
        for leaf in self.leaves:
            d, v = 0, leaf
            while self.nodes[v].parent is not None:
                v = self.nodes[v].parent
                d += 1
            best = max(best, d)
        return best

    def leaf_index(self, v: int) -> int:
        """1-based block index of a leaf."""
        return self.leaves.index(v) + 1


class _Arena:
    def __init__(self):
        self.parent: list = []
        self.children: list = []
        self.block: list = []
        self.crown: dict = {}
        self.lh: dict = {}
        self.rh: dict = {}

    def new(self, parent, block):
        v = len(self.parent)
        self.parent.append(parent)
        self.children.append([])
        self.block.append(block)
        if parent is not None:
            self.children[parent].append(v)
        return v


# a planner maps a block count to (width, planner for the contracted
# sequence, planner for the local sequences)
Planner = Callable[[int], tuple]


def _canonical_plan(m: int):
    return 2, _canonical_plan, _canonical_plan


def _ackermann_plan(i: int) -> Planner:
    def plan(m: int):
        j = 2
        while True:
            a = ack(i, j)
            if a is SATURATED or m <= a:
                break
            j += 1
        w = ack(i, j - 1)
        return w, _ackermann_plan(max(i - 1, 1)), plan

    return plan


def _grow(arena: _Arena, blocks: list, plan: Planner, root: int) -> list:
    """Build the tree for ``blocks`` under an existing root; return leaf ids."""
    m = len(blocks)
    if m <= 2:
        leaves = [arena.new(root, tuple(b)) for b in blocks]
        seen: dict = {}
        for v, b in zip(leaves, blocks):
            for x in b:
                seen.setdefault(x, []).append(v)
        for x, vs in seen.items():
            arena.crown[x] = root
            if m == 2 and vs[0] != leaves[0]:
                arena.lh[x], arena.rh[x] = None, vs[0]
            else:
                arena.lh[x] = vs[0]
                arena.rh[x] = vs[1] if len(vs) > 1 else None
        return leaves
    width, hat_plan, local_plan = plan(m)
    part = uniform_partition(m, width)
    bs = BlockedSequence._trusted(Block(tuple(b), True) for b in blocks)
    d = decompose(bs, part)
    hat_leaves = _grow(arena, [b.symbols for b in d.contracted.blocks], hat_plan, root)
    leaves = []
    for q, iv in enumerate(part):
        sub = [b.symbols for b in d.local_parts[q].blocks]
        got = _grow(arena, sub, local_plan, hat_leaves[q])
        for v, b in zip(got, blocks[iv.start_block - 1: iv.end_block]):
            arena.block[v] = tuple(b)
        leaves.extend(got)
    return leaves


def _freeze(s: BlockedSequence, arena: _Arena, root: int, leaves: list) -> DerivationTree:
    nodes = tuple(Node(p, tuple(c), b) for p, c, b in zip(arena.parent, arena.children, arena.block))
    return DerivationTree(s, nodes, root, tuple(leaves), dict(arena.crown), dict(arena.lh), dict(arena.rh))


def _build(s: BlockedSequence, plan: Planner) -> DerivationTree:
    if s.block_count < 2:
        raise ValueError("a derivation tree needs at least two blocks")
    arena = _Arena()
    root = arena.new(None, None)
    leaves = _grow(arena, [b.symbols for b in s.blocks], plan, root)
    return _freeze(s, arena, root, leaves)


def canonical_tree(s: BlockedSequence) -> DerivationTree:
    """Tree from repeatedly pairing adjacent blocks (width-2 partitions)."""
    return _build(s, _canonical_plan)


def ackermann_tree(s: BlockedSequence, i: int) -> DerivationTree:
    """Tree whose partition widths are a_{i,j-1} with j minimal for m <= a_{i,j}."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return _build(s, _ackermann_plan(i))


# ---------------------------------------------------------------- projections


@dataclass(frozen=True)
class ProjectionTree:
    """Induced tree of one symbol with its anatomy.

    ``roles`` maps node ids to a set of role names among wingtip, wing,
    quill, feather, dove and hawk.
    """

    symbol: int
    crown: int
    lh: int | None
    rh: int | None
    parent: dict
    children: dict
    leaves: tuple
    lt: int
    rt: int
    left_wing: tuple
    right_wing: tuple
    dove_quills: tuple
    hawk_quills: tuple
    dove_feathers: tuple
    hawk_feathers: tuple
    doves: frozenset
    hawks: frozenset

    @property
    def nodes(self) -> list:
        return list(self.parent)

    @property
    def wingtips(self) -> frozenset:
        return frozenset((self.lt, self.rt))

    @property
    def feathers(self) -> frozenset:
        return frozenset(self.dove_feathers + self.hawk_feathers)

    def height(self) -> int:
        best = 0
        for leaf in self.leaves:
            d, v = 0, leaf
            while self.parent[v] is not None:
                v = self.parent[v]
                d += 1
            best = max(best, d)
        return best

    def leaf_count(self, v: int) -> int:
        kids = self.children[v]
        return 1 if not kids else sum(self.leaf_count(c) for c in kids)

    def roles(self) -> dict:
        out = {v: set() for v in self.parent}
        out[self.crown].add("crown")
        for v in (self.lt, self.rt):
            out[v].add("wingtip")
        for v in self.left_wing + self.right_wing:
            out[v].add("wing")
        for v in self.dove_quills + self.hawk_quills:
            out[v].add("quill")
        for v in self.dove_feathers + self.hawk_feathers:
            out[v].add("feather")
        for v in self.doves:
            out[v].add("dove")
        for v in self.hawks:
            out[v].add("hawk")
        return out


def _extreme_leaf(children: dict, v: int, side: int) -> int:
    while children[v]:
        v = children[v][side]
    return v


def project_tree(t: DerivationTree, a: int) -> ProjectionTree:
    if a not in t.crown:
        raise ValueError(f"symbol {a} does not occur in the tree")
    cr = t.crown[a]
    keep = {cr} | {v for v, n in enumerate(t.nodes) if n.block is not None and a in n.block}
    parent: dict = {}
    for v in keep:
        if v == cr:
            parent[v] = None
            continue
        u = t.nodes[v].parent
        while u not in keep:
            u = t.nodes[u].parent
        parent[v] = u
    children: dict = {v: [] for v in keep}
    for v, p in parent.items():
        if p is not None:
            children[p].append(v)
    for v in children:
        children[v] = tuple(sorted(children[v], key=t.preorder))
    leaves = tuple(sorted((v for v in keep if not children[v] and v != cr), key=t.preorder))
    lh, rh = t.lh[a], t.rh[a]
    lt, rt = leaves[0], leaves[-1]

    def wing(head, side):
        if head is None:
            return ()
        path = [head]
        while children[path[-1]]:
            path.append(children[path[-1]][side])
        return tuple(path)

    lw, rw = wing(lh, 0), wing(rh, -1)
    dq = tuple(c for w in lw for c in children[w] if c not in lw)
    hq = tuple(c for w in rw for c in children[w] if c not in rw)

    def below(v):
        out, stack = set(), [v]
        while stack:
            u = stack.pop()
            out.add(u)
            stack.extend(children[u])
        return frozenset(out)

    return ProjectionTree(
        symbol=a,
        crown=cr,
        lh=lh,
        rh=rh,
        parent=parent,
        children=children,
        leaves=leaves,
        lt=lt,
        rt=rt,
        left_wing=lw,
        right_wing=rw,
        dove_quills=dq,
        hawk_quills=hq,
        dove_feathers=tuple(_extreme_leaf(children, q, -1) for q in dq),
        hawk_feathers=tuple(_extreme_leaf(children, q, 0) for q in hq),
        doves=below(lh) if lh is not None else frozenset(),
        hawks=below(rh) if rh is not None else frozenset(),
    )


def count_feathers(s: BlockedSequence, tree: DerivationTree, kind: str) -> int:
    """Feathers of one kind ("dove" or "hawk") summed over all symbols."""
    if kind not in ("dove", "hawk"):
        raise ValueError("kind must be 'dove' or 'hawk'")
    total = 0
    for a in sorted(s.alphabet):
        p = project_tree(tree, a)
        total += len(p.dove_feathers if kind == "dove" else p.hawk_feathers)
    return total


# ---------------------------------------------------------------- nesting


def _contains_word(word: list, seq: Iterable[int]) -> bool:
    it = iter(seq)
    return all(any(x == w for x in it) for w in word)


def double_nested(s: BlockedSequence, a: int, b: int, block_index: int) -> bool:
    """True iff ``a b b B b b a`` or ``b a a B a a b`` occurs around block ``block_index``."""
    if not 1 <= block_index <= s.block_count:
        raise IndexError(block_index)
    blk = s.blocks[block_index - 1].symbols
    if a not in blk or b not in blk:
        raise ValueError("both symbols must occur in the block")
    before = [x for bl in s.blocks[: block_index - 1] for x in bl.symbols]
    after = [x for bl in s.blocks[block_index:] for x in bl.symbols]
    for x, y in ((a, b), (b, a)):
        if _contains_word([x, y, y], before) and _contains_word([y, y, x], after):
            return True
    return False


# ---------------------------------------------------------------- roosts and eggs


@dataclass(frozen=True)
class MarkedSequence:
    """Blocked sequence whose occurrences are terminal unless listed.

    ``nonterminal`` holds (block_index, symbol) pairs for occurrences that
    stand for two or more original occurrences.
    """

    seq: BlockedSequence
    nonterminal: frozenset = frozenset()

    def tokens(self, lo: int, hi: int) -> list:
        """(symbol, weight) for blocks lo..hi inclusive; weight 2 if non-terminal."""
        out = []
        for q in range(max(lo, 1), min(hi, self.seq.block_count) + 1):
            for x in self.seq.blocks[q - 1].symbols:
                out.append((x, 2 if (q, x) in self.nonterminal else 1))
        return out


def _marked(s) -> MarkedSequence:
    return s if isinstance(s, MarkedSequence) else MarkedSequence(s)


def occurrence_marks(tree: DerivationTree, nodes: Iterable[int]) -> MarkedSequence:
    """The sequence of the given nodes' blocks with marks from the projection trees."""
    nodes = list(nodes)
    proj: dict = {}
    blocks, nonterm = [], set()
    for q, v in enumerate(nodes, 1):
        blk = tree.block(v) or ()
        blocks.append(Block(tuple(blk), True))
        for x in blk:
            if x not in proj:
                proj[x] = project_tree(tree, x)
            if proj[x].leaf_count(v) > 1:
                nonterm.add((q, x))
    return MarkedSequence(BlockedSequence._trusted(blocks), frozenset(nonterm))


def _match_forward(tokens: list, start: int, word: list) -> int | None:
    """Earliest end index after matching ``word`` of (symbol, need) items; need 2 means squared."""
    i = start
    for x, need in word:
        got = 0
        while i < len(tokens):
            y, w = tokens[i]
            i += 1
            if y == x:
                got = 2 if w == 2 else got + 1
                if got >= need:
                    break
        else:
            return None
    return i


def _side_ok(tokens: list, word: list) -> bool:
    return _match_forward(tokens, 0, word) is not None


def _left_word(tup) -> list:
    return [(x, 1) for x in tup] + [(x, 2) for x in reversed(tup)]


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")


def _both_sides(ms: MarkedSequence, lo: int, hi: int) -> list:
    left = {x for x, _ in ms.tokens(1, lo - 1)}
    right = {x for x, _ in ms.tokens(hi + 1, ms.seq.block_count)}
    return sorted(left & right)


def _roost_shape(left: list, right: list, tup) -> bool:
    word = _left_word(tup)
    return _side_ok(left, word) and _side_ok(right[::-1], word)


def k_roost(s, interval, k: int) -> bool:
    """True iff the blocks of ``interval`` form a k-roost.

    ``interval`` is an Interval; an empty one (end = start - 1) sits just
    before block ``start``.
    """
    _check_k(k)
    ms = _marked(s)
    lo, hi = interval
    if hi < lo - 1:
        raise ValueError("bad interval")
    left = ms.tokens(1, lo - 1)
    right = ms.tokens(hi + 1, ms.seq.block_count)
    cands = _both_sides(ms, lo, hi)
    if k > len(cands):
        return False
    return any(_roost_shape(left, right, tup) for tup in itertools.permutations(cands, k))


def k_mature(s, block_index: int, symbol: int, k: int, side: str) -> bool:
    """True iff this occurrence is the a_1 adjacent to some k-roost on ``side`` ("left" or "right").

    A left-mature occurrence closes the left part of the display and the
    roost is taken as the empty interval right after it; right is symmetric.
    """
    _check_k(k)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    ms = _marked(s)
    if symbol not in ms.seq.blocks[block_index - 1].symbols:
        raise ValueError("symbol does not occur in that block")
    m = ms.seq.block_count
    if side == "right":
        rev = BlockedSequence._trusted(reversed(ms.seq.blocks))
        flip = frozenset((m + 1 - q, x) for q, x in ms.nonterminal)
        return k_mature(MarkedSequence(rev, flip), m + 1 - block_index, symbol, k, "left")
    before = ms.tokens(1, block_index - 1)
    blk = ms.seq.blocks[block_index - 1].symbols
    own = blk.index(symbol)
    before += [(x, 2 if (block_index, x) in ms.nonterminal else 1) for x in blk[: own + 1]]
    after = ms.tokens(block_index + 1, m)
    weight = before[-1][1]
    others = sorted({x for x, _ in before} & {x for x, _ in after} - {symbol})
    if k - 1 > len(others):
        return False
    for rest in itertools.permutations(others, k - 1):
        tup = (symbol,) + rest
        word = _left_word(tup)
        head = word[:-1]
        end = _match_forward(before[:-1], 0, head)
        if end is None:
            continue
        # a terminal occurrence needs a second copy between the match and itself
        if weight == 1 and not any(x == symbol for x, _ in before[end:-1]):
            continue
        if _side_ok(after[::-1], word):
            return True
    return False


def k_egg(s, block_index: int, symbol: int, k: int) -> bool:
    """True iff the occurrence of ``symbol`` in block ``block_index`` is a k-egg."""
    _check_k(k)
    ms = _marked(s)
    if symbol not in ms.seq.blocks[block_index - 1].symbols:
        raise ValueError("symbol does not occur in that block")
    left = ms.tokens(1, block_index - 1)
    right = ms.tokens(block_index + 1, ms.seq.block_count)
    others = sorted(set(_both_sides(ms, block_index, block_index)) - {symbol})
    if k - 1 > len(others):
        return False
    for rest in itertools.permutations(others, k - 1):
        word = [(symbol, 1)] + [(x, 1) for x in rest] + [(x, 2) for x in reversed(rest)]
        if _side_ok(left, word) and _side_ok(right[::-1], word):
            return True
    return False


# ---------------------------------------------------------------- DOT output


def _label(block) -> str:
    return "-" if block is None else " ".join(map(str, block))


def tree_to_dot(t: DerivationTree) -> str:
    lines = ["digraph derivation {", "  node [shape=box];"]
    for v, n in enumerate(t.nodes):
        lines.append(f'  n{v} [label="{_label(n.block)}"];')
    for v, n in enumerate(t.nodes):
        for c in n.children:
            lines.append(f"  n{v} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def projection_to_dot(t: DerivationTree, p: ProjectionTree) -> str:
    roles = p.roles()
    lines = [f"digraph projection_{p.symbol} {{", "  node [shape=box];"]
    for v in sorted(p.parent, key=t.preorder):
        r = ",".join(sorted(roles[v]))
        lines.append(f'  n{v} [label="{_label(t.block(v))}", roles="{r}"];')
    for v in sorted(p.parent, key=t.preorder):
        for c in p.children[v]:
            lines.append(f"  n{v} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "uniform_partition",
    "Decomposition",
    "decompose",
    "Node",
    "DerivationTree",
    "canonical_tree",
    "ackermann_tree",
    "ProjectionTree",
    "project_tree",
    "count_feathers",
    "double_nested",
    "MarkedSequence",
    "occurrence_marks",
    "k_roost",
    "k_mature",
    "k_egg",
    "tree_to_dot",
    "projection_to_dot",
]
