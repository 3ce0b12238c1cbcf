"""The verification suite: twelve claims, each checked on exact small instances.

Every claim function takes ``(quick, seed)`` and returns ``(status, detail)``
with status pass, fail or skipped-budget.  ``quick`` shrinks the random and
exhaustive grids; the structured grids are the same in both modes.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable

from . import ackermann as ak
from . import coeffs, construct, containment, decompose, extremal
from .patterns import make_pattern, parse_pattern_spec
from .seqcore import BlockedSequence

SCHEMA = "dsforge-report/1"
GRID_GUARD = 10**6
DEFAULT_SEED = 20240101


@dataclass
class ClaimResult:
    claim_id: int
    anchor: str
    params: dict
    status: str
    elapsed: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "id": self.claim_id,
            "anchor": self.anchor,
            "params": self.params,
            "status": self.status,
            "elapsed": round(self.elapsed, 4),
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    claims: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.claims)

    def exit_code(self) -> int:
        return 1 if self.failed else 0


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    claims = sorted(report.claims, key=lambda c: c.claim_id)
    if fmt == "json":
        return json.dumps({"claims": [c.as_dict() for c in claims], "schema": SCHEMA}, separators=(",", ":"))
    if fmt != "text":
        raise ValueError("format must be json or text")
    rows = [f"{'id':>3}  {'status':<15} {'time':>8}  claim"]
    for c in claims:
        rows.append(f"{c.claim_id:>3}  {c.status:<15} {c.elapsed:>7.2f}s  {c.anchor}" + (f"  [{c.detail}]" if c.detail else ""))
    return "\n".join(rows)


# ---------------------------------------------------------------- helpers


def _in_guard(kind: str, *params) -> bool:
    st = construct.size_estimate(kind, *params)
    return not st.saturated and st.length <= GRID_GUARD


def _fail(msgs: list, limit: int = 3) -> tuple:
    return "fail", "; ".join(msgs[:limit]) + (f" (+{len(msgs) - limit} more)" if len(msgs) > limit else "")


def _verdict(msgs: list, detail: str = "") -> tuple:
    return _fail(msgs) if msgs else ("pass", detail)


ZIGZAG_T = ["uuuu", "uudu", "uduu", "uddu"]


# ---------------------------------------------------------------- claims


def claim_t_properties(quick: bool, seed: int) -> tuple:
    bad = []
    for rho, i, j in itertools.product((2, 3), (1, 2, 3), (1, 2, 3)):
        t = construct.t_rho(rho, i, j, guard=GRID_GUARD)
        counts = set(t.flatten().counts().values())
        live = {len(b.symbols) for b in t.blocks if b.live}
        dead = [len(b.symbols) for b in t.blocks if not b.live]
        if t.length != (i + 1) * j * t.live_block_count:
            bad.append(f"length t_rho({rho},{i},{j})")
        if live != {j}:
            bad.append(f"live block lengths t_rho({rho},{i},{j}) = {sorted(live)}")
        if counts != {i + 1}:
            bad.append(f"multiplicity t_rho({rho},{i},{j}) = {sorted(counts)}")
        if i >= 2 and any(d % rho for d in dead):
            bad.append(f"dead block length t_rho({rho},{i},{j})")
    return _verdict(bad)


def claim_order3(quick: bool, seed: int) -> tuple:
    bad = []
    for rho, i, j in itertools.product((2, 3), (1, 2, 3), (1, 2, 3)):
        t = construct.t_rho(rho, i, j, guard=GRID_GUARD).flatten()
        order = containment.ds_order(t)
        if order > 3:
            bad.append(f"ds_order t_rho({rho},{i},{j}) = {order}")
    return _verdict(bad)


def claim_multiplicity(quick: bool, seed: int) -> tuple:
    bad, skipped = [], []
    for s, i, j in itertools.product((2, 3, 4, 5), (1, 2, 3), (1, 2, 3)):
        want = construct.multiplicity("mu_s", s, i)
        if want != construct.multiplicity_closed_form("mu_s", s, i):
            bad.append(f"mu_{s},{i} recurrence vs closed form")
        if not _in_guard("u_s", s, i, j):
            skipped.append((s, i, j))
            continue
        got = set(construct.u_s(s, i, j, guard=GRID_GUARD).flatten().counts().values())
        if got != {want}:
            bad.append(f"u_s({s},{i},{j}) multiplicities {sorted(got)} != {want}")
    for i in (1, 2, 3):
        if construct.multiplicity("mu_s", 4, i) != 2**i:
            bad.append(f"mu_4,{i} != 2^{i}")
    if construct.multiplicity("mu_s", 5, 3) != 24:
        bad.append("mu_5,3 != 24")
    return _verdict(bad, f"{len(skipped)} out-of-guard (s,i,j) skipped")


def claim_perm_free(quick: bool, seed: int) -> tuple:
    rng = random.Random(seed)
    bad, skipped = [], []
    for i, j in itertools.product((1, 2), (1, 2)):
        if not _in_guard("u_s", 4, i, j):
            skipped.append(f"u_s(4,{i},{j})")
        else:
            flat = construct.u_s(4, i, j, guard=GRID_GUARD).flatten()
            for pair in itertools.combinations(sorted(flat.alphabet), 2):
                if containment.formation_count(flat, pair) >= 5:
                    bad.append(f"u_s(4,{i},{j}) pair {pair}")
                    break
        if not _in_guard("u_s", 5, i, j):
            skipped.append(f"u_s(5,{i},{j})")
            continue
        flat = construct.u_s(5, i, j, guard=GRID_GUARD).flatten()
        syms = sorted(flat.alphabet)
        triples = list(itertools.combinations(syms, 3))
        if len(triples) > 2000:
            triples = rng.sample(triples, 2000)
        for tri in triples:
            if containment.formation_count(flat, tri) >= 6:
                bad.append(f"u_s(5,{i},{j}) triple {tri}")
                break
    return _verdict(bad, "out of guard: " + ", ".join(skipped) if skipped else "")


def claim_zigzag(quick: bool, seed: int) -> tuple:
    bad, skipped = [], []
    m2 = make_pattern("M", 2)
    for pi, i, j in itertools.product(ZIGZAG_T, (1, 2, 3), (1, 2, 3)):
        if not _in_guard("t_pi", pi, i, j):
            skipped.append(f"t_pi({pi},{i},{j})")
            continue
        if containment.embeds(m2, construct.t_pi(pi, i, j, guard=GRID_GUARD).flatten()) is not None:
            bad.append(f"M_2 in t_pi({pi},{i},{j})")
    z3 = make_pattern("Z", 3)
    for i, j in itertools.product((1, 2), (1, 2)):
        if not _in_guard("u_pi", "uududd", i, j):
            skipped.append(f"u_pi(uududd,{i},{j})")
            continue
        if containment.embeds(z3, construct.u_pi("uududd", i, j, guard=GRID_GUARD).flatten()) is not None:
            bad.append(f"Z_3 in u_pi(uududd,{i},{j})")
    c2 = make_pattern("C", 2)
    for i, j in itertools.product((1, 2, 3), (1, 2, 3)):
        if not _in_guard("t_pi", "uudd", i, j):
            skipped.append(f"t_pi(uudd,{i},{j})")
            continue
        if containment.embeds(c2, construct.t_pi("uudd", i, j, guard=GRID_GUARD).flatten()) is not None:
            bad.append(f"C_2 in t_pi(uudd,{i},{j})")
    return _verdict(bad, f"{len(skipped)} out-of-guard instances skipped" if skipped else "")


def claim_coefficients(quick: bool, seed: int) -> tuple:
    bad = []
    for i in range(1, 21):
        if coeffs.coefficient("K", 3, i) != 2 * i + 2:
            bad.append(f"K(3,{i})")
        if coeffs.coefficient("K", 4, i) != 10 * 2**i - 4 * (i + 2):
            bad.append(f"K(4,{i})")
    for s in range(2, 9):
        for i in range(1, 31):
            if coeffs.coefficient("fea", s, i) != comb(i + s - 2, s - 2) - 1:
                bad.append(f"fea({s},{i})")
    return _verdict(bad)


def claim_ackermann(quick: bool, seed: int) -> tuple:
    bad = []
    bad += [f"ack(1,{j})" for j in range(1, 21) if ak.ack(1, j) != 2**j]
    bad += [f"ack({i},1)" for i in range(1, 11) if ak.ack(i, 1) != 2]
    checked = 0
    for i in range(1, 5):
        for j in range(1, 12):
            v = ak.ack(i, j)
            if v is ak.SATURATED:
                break
            checked += 1
            if ak.row_inverse(i, v) != j:
                bad.append(f"row_inverse({i}, ack({i},{j}))")
    if ak.alpha(8, 8) != 1:
        bad.append("alpha(8,8)")
    if ak.alpha(9, 9) != 2:
        bad.append("alpha(9,9)")
    return _verdict(bad, f"{checked} non-saturated entries inverted")


def claim_extremal(quick: bool, seed: int) -> tuple:
    bad = []
    aba, abab, abba = (parse_pattern_spec(p) for p in ("aba", "abab", "abba"))
    inexact = []

    def run(res, want, label):
        if not res.exact:
            inexact.append(label)
        elif res.max != want:
            bad.append(f"{label} = {res.max}, expected {want}")

    for n in range(1, 5):
        run(extremal.ex_bruteforce(aba, n), n, f"Ex(aba,{n})")
        run(extremal.ex_bruteforce(abab, n), 2 * n - 1, f"Ex(abab,{n})")
    for n in range(1, 4):
        run(extremal.ex_bruteforce(abba, n), 3 * n - 2, f"Ex(abba,{n})")
        for m in range(1, 5):
            # the formula needs room for two blocks; one block holds n distinct symbols
            want = 2 * n + m - 2 if m >= 2 else n
            run(extremal.ex_blocked_bruteforce(abab, n, m), want, f"Ex(abab,{n},{m})")
            run(extremal.ex_blocked_bruteforce(abba, n, m), want, f"Ex(abba,{n},{m})")
    if bad:
        return _fail(bad)
    if inexact:
        return "skipped-budget", "budget exhausted: " + ", ".join(inexact)
    return "pass", "blocked formulas for m >= 2; m = 1 gives n"


def segment_split_max(seq: tuple, alphabet: tuple) -> int:
    """Most consecutive segments that each contain every symbol of ``alphabet`` (exhaustive)."""
    need = set(alphabet)
    if not need:
        return 0

    @lru_cache(maxsize=None)
    def best(start: int) -> int:
        top = 0
        for end in range(start + 1, len(seq) + 1):
            if need <= set(seq[start:end]):
                top = max(top, 1 + best(end))
        return top

    return best(0)


def claim_formation_greedy(quick: bool, seed: int) -> tuple:
    bad = []
    max_len = 8 if quick else 10
    checked = 0
    for length in range(1, max_len + 1):
        for seq in itertools.product((1, 2, 3), repeat=length):
            alpha = tuple(sorted(set(seq)))
            checked += 1
            if containment.formation_count(seq, alpha) != segment_split_max(seq, alpha):
                bad.append(str(seq))
    return _verdict(bad, f"{checked} sequences")


def _random_blocked(rng: random.Random, m: int, n: int, min_blocks: int = 1) -> BlockedSequence:
    """Random blocked sequence in which every symbol occupies at least ``min_blocks`` blocks."""
    while True:
        blocks = [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(m)]
        seen: dict = {}
        for b in blocks:
            for x in b:
                seen[x] = seen.get(x, 0) + 1
        if all(c >= min_blocks for c in seen.values()):
            return BlockedSequence.from_lists(blocks)


def claim_trees(quick: bool, seed: int) -> tuple:
    rng = random.Random(seed)
    bad = []
    base = decompose.canonical_tree(BlockedSequence.from_lists([[1, 2], [2, 1]]))
    if base.node_count != 3:
        bad.append(f"base tree has {base.node_count} nodes")
    for _ in range(50):
        s = _random_blocked(rng, 2, 5)
        t = decompose.canonical_tree(s)
        if decompose.count_feathers(s, t, "dove") or decompose.count_feathers(s, t, "hawk"):
            bad.append(f"feathers in 2-block {s}")
    for _ in range(100 if quick else 300):
        s = _random_blocked(rng, rng.randint(2, 24), 6, min_blocks=2)
        t = decompose.canonical_tree(s)
        if decompose.count_feathers(s, t, "dove") > s.length - 2 * s.alphabet_size:
            bad.append(f"dove feathers exceed bound on {s}")
    for _ in range(60 if quick else 200):
        s = _random_blocked(rng, rng.randint(2, 64), 8)
        i = rng.randint(1, 3)
        t = decompose.ackermann_tree(s, i)
        for a in sorted(s.alphabet):
            h = decompose.project_tree(t, a).height()
            if h > i + 1:
                bad.append(f"height {h} > {i + 1} for symbol {a}")
    return _verdict(bad)


def double_nesting_instance(rng: random.Random, m: int, n: int) -> tuple:
    """One substitution scenario; returns (checked, counterexamples)."""
    sp = _random_blocked(rng, m, n)
    tree = decompose.canonical_tree(sp)
    proj = {a: decompose.project_tree(tree, a) for a in sp.alphabet}
    checked, bad = 0, []
    for v in tree.leaves:
        blk = tree.block(v)
        pairs = [
            (a, b)
            for a, b in itertools.combinations(sorted(blk), 2)
            if all(v not in proj[x].wingtips and v not in proj[x].feathers for x in (a, b))
        ]
        if not pairs:
            continue
        blocks, index = [], None
        for u in tree.leaves:
            if u == v:
                blocks.append(list(tree.block(u)))
                index = len(blocks)
                continue
            for _ in range(rng.randint(2, 3)):
                b = list(tree.block(u))
                rng.shuffle(b)
                blocks.append(b)
        s = BlockedSequence.from_lists(blocks)
        for a, b in pairs:
            checked += 1
            if not decompose.double_nested(s, a, b, index):
                bad.append((str(sp), a, b, index))
    return checked, bad


def claim_double_nesting(quick: bool, seed: int) -> tuple:
    rng = random.Random(seed)
    total, bad = 0, []
    for _ in range(50 if quick else 200):
        c, b = double_nesting_instance(rng, rng.randint(3, 16), rng.randint(2, 6))
        total += c
        bad += b
    return _verdict([str(x) for x in bad], f"{total} leaf/pair checks")


def claim_bookkeeping(quick: bool, seed: int) -> tuple:
    rng = random.Random(seed)
    bad = []
    for _ in range(100 if quick else 500):
        m = rng.randint(1, 32)
        s = BlockedSequence.from_lists(
            [rng.sample(range(1, 11), rng.randint(0, 5)) for _ in range(m)]
        )
        width = 2 ** rng.randint(0, 5)
        d = decompose.decompose(s, decompose.uniform_partition(m, width))
        if s.alphabet_size != d.n_hat + sum(d.n_local):
            bad.append(f"symbol count on {s} width {width}")
        if s.length != d.local_length + d.global_seq.length:
            bad.append(f"length on {s} width {width}")
        if not containment.contains(d.contracted.flatten(), d.global_seq.flatten()):
            bad.append(f"contracted not contained on {s} width {width}")
    return _verdict(bad)


@dataclass(frozen=True)
class Claim:
    claim_id: int
    anchor: str
    params: dict
    run: Callable


CLAIMS = [
    Claim(1, "T-properties of t_rho", {"rho": [2, 3], "i_max": 3, "j_max": 3, "guard": GRID_GUARD}, claim_t_properties),
    Claim(2, "t_rho is an order-3 DS sequence", {"rho": [2, 3], "i_max": 3, "j_max": 3}, claim_order3),
    Claim(3, "u_s multiplicity closed forms", {"s": [2, 3, 4, 5], "i_max": 3, "j_max": 3}, claim_multiplicity),
    Claim(4, "U_s is Perm(r, s+1)-free", {"s": [4, 5], "i_max": 2, "j_max": 2}, claim_perm_free),
    Claim(5, "zig-zag avoidance of M_2, Z_3, C_2", {"i_max": 3, "j_max": 3, "guard": GRID_GUARD}, claim_zigzag),
    Claim(6, "K and fea closed forms", {"K_i_max": 20, "fea_s_max": 8, "fea_i_max": 30}, claim_coefficients),
    Claim(7, "Ackermann table and inverses", {"j_max": 20, "i_max": 10}, claim_ackermann),
    Claim(8, "extremal oracle vs order-1/2 formulas", {"n_max": 4, "m_max": 4}, claim_extremal),
    Claim(9, "greedy formation count is optimal", {"max_len": 10, "alphabet": 3}, claim_formation_greedy),
    Claim(10, "derivation tree structure", {"m_max": 64, "i_max": 3}, claim_trees),
    Claim(11, "double nesting after substitution", {"instances": 200}, claim_double_nesting),
    Claim(12, "decomposition bookkeeping", {"instances": 500}, claim_bookkeeping),
]


def run_claim(claim: Claim, quick: bool = False, seed: int = DEFAULT_SEED) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        status, detail = claim.run(quick, seed)
    except construct.GuardExceeded as exc:
        status, detail = "skipped-budget", f"size estimate {exc.estimate.length} over cap {exc.cap}"
    return ClaimResult(claim.claim_id, claim.anchor, dict(claim.params, seed=seed), status, time.perf_counter() - t0, detail)


def run_all(quick: bool = False, seed: int = DEFAULT_SEED, only=None) -> VerificationReport:
    report = VerificationReport()
    for c in CLAIMS:
        if only is None or c.claim_id in only:
            report.claims.append(run_claim(c, quick, seed))
    return report


__all__ = [
    "SCHEMA",
    "ClaimResult",
    "VerificationReport",
    "emit_report",
    "CLAIMS",
    "run_claim",
    "run_all",
    "segment_split_max",
    "double_nesting_instance",
]
