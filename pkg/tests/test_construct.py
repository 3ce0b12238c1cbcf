import itertools
import re

import pytest

from dsforge import construct as C
from dsforge.seqcore import format_blocked as F
from dsforge.seqcore import parse_blocked as P


def test_compose_examples():
    assert F(C.compose(P("(1 2)<2 1>"), P("(1 2)<2 1>"))) == "(1 2)<2 1><2 1>"
    assert F(C.compose(P("(1)<1>"), P("(1)"))) == "(1)<1>"


def test_compose_multiplicities():
    out = C.compose(P("(1 2)<2 1>"), P("(1 2)<2 1>"))
    assert set(out.flatten().counts().values()) == {3}


def test_shuffle_examples():
    assert F(C.postshuffle(P("(1 2)"), P("()()"))) == "(1)(2)"
    assert F(C.postshuffle(P("(1 2)<2 1><2 1>"), P("()()"))) == "(1)(2)<2 1><2 1>"
    assert F(C.preshuffle(P("(1 2)"), P("()()"))) == "(1)(2)"
    assert F(C.preshuffle(P("(1 2)"), P("(1)(2)"))) == "(1 2)(3 4)"
    # a shared bot symbol shows which side the sub symbol lands on
    assert F(C.preshuffle(P("(1 2)"), P("(1)(1)"))) == "(1 2)(3 2)"
    assert F(C.postshuffle(P("(1 2)"), P("(1)(1)"))) == "(1 2)(1 3)"


def test_shuffle_live_block_identity():
    sub, bot = P("(1 2)<2 1>(3 4)"), P("()()")
    out = C.postshuffle(sub, bot)
    assert out.live_block_count == sub.live_block_count * bot.live_block_count


def test_t_rho_examples():
    assert F(C.t_rho(2, 1, 3)) == "(1 2 3)<3 2 1>"
    assert F(C.t_rho(2, 2, 1)) == "(1)(2)<2 1><2 1>"
    for i in (2, 3):
        assert F(C.t_rho(2, i, 0)) == "()()"
    # with i = 1 the single-level base V(0) applies
    assert F(C.t_rho(2, 1, 0)) == "()<>"


def test_u_s_examples():
    for i in range(0, 4):
        assert F(C.u_s(2, i, 2)) == "(1 2)(2 1)"
    for s, i in itertools.product((2, 3, 4, 5), (0, 1, 2, 3)):
        mu = C.multiplicity("mu_s", s, i)
        assert F(C.u_s(s, i, 1)) == "(1)" * mu
    assert set(C.u_s(4, 2, 2).flatten().counts().values()) == {4}


def test_t_pi_examples():
    for i in (1, 2, 3):
        assert F(C.t_pi("ud", i, 2)) == "(1 2)<2 1>"
        assert F(C.t_pi("uu", i, 2)) == "(1 2)<1 2>"
    for pi in ("uuu", "udu"):
        for j in (1, 2, 3):
            assert set(C.t_pi(pi, 2, j).flatten().counts().values()) == {3}


def test_t_pi_arrow_notation():
    assert C.t_pi("↗↘", 1, 2) == C.t_pi("ud", 1, 2)


def test_u_pi_examples():
    for i, j in itertools.product((0, 1, 2), (1, 2, 3)):
        assert F(C.u_pi("ud", i, j)) == "(" + " ".join(map(str, range(1, j + 1))) + ")(" + " ".join(map(str, range(j, 0, -1))) + ")"
    for j in (1, 2, 3):
        assert F(C.u_pi("uudd", 0, j)) == "(" + " ".join(map(str, range(1, j + 1))) + ")"
    assert set(C.u_pi("udud", 2, 2).flatten().counts().values()) == {4}
    assert C.multiplicity_closed_form("mu_pi", "udud", 2) == 4


def test_multiplicity_examples():
    for i in range(1, 6):
        assert C.multiplicity("nu", 2, i) == 2
        assert C.multiplicity("mu_s", 4, i) == 2**i
    assert C.multiplicity("mu_s", 5, 3) == 24


@pytest.mark.parametrize("kind", ["nu", "mu_s", "mu_pi"])
def test_multiplicity_closed_forms(kind):
    for a, i in itertools.product(range(2, 9), range(0, 8)):
        if kind == "nu" and i < 1:
            continue
        if kind == "mu_pi" and a % 2:
            continue
        assert C.multiplicity(kind, a, i) == C.multiplicity_closed_form(kind, a, i)


def test_size_estimate_examples():
    st = C.size_estimate("t_rho", 2, 1, 3)
    assert (st.length, st.alphabet, st.live_blocks, st.dead_blocks) == (6, 3, 1, 1)
    st = C.size_estimate("t_rho", 2, 2, 1)
    assert (st.length, st.alphabet, st.live_blocks, st.dead_blocks) == (6, 2, 2, 2)
    for i, j in itertools.product(range(0, 4), range(1, 6)):
        assert C.size_estimate("u_s", 2, i, j).length == 2 * j


GRID = (
    [("t_rho", r, i, j) for r in (2, 3) for i in (1, 2, 3) for j in (0, 1, 2, 3)]
    + [("u_s", s, i, j) for s in (2, 3, 4, 5) for i in (0, 1, 2, 3) for j in (1, 2, 3)]
    + [("t_pi", p, i, j) for p in ("ud", "uu", "udu", "uudu", "uudd", "uduu") for i in (1, 2) for j in (0, 1, 2, 3)]
    + [("u_pi", p, i, j) for p in ("ud", "udud", "uududd") for i in (0, 1, 2) for j in (1, 2)]
)
GRID = [g for g in GRID if not C.size_estimate(*g).saturated and C.size_estimate(*g).length <= 10**5]


@pytest.mark.parametrize("kind, a, i, j", GRID)
def test_estimate_matches_materialized(kind, a, i, j):
    est = C.size_estimate(kind, a, i, j)
    bs = C.build(kind, a, i, j)
    got = C.stats_of(bs)
    assert (got.length, got.alphabet, got.live_blocks, got.dead_blocks) == (
        est.length, est.alphabet, est.live_blocks, est.dead_blocks
    )
    if got.alphabet:
        assert got.multiplicity == est.multiplicity


def test_live_blocks_hold_first_occurrences():
    for r, i, j in itertools.product((2, 3), (1, 2, 3), (1, 2, 3)):
        seen = set()
        for b in C.t_rho(r, i, j).blocks:
            for x in b.symbols:
                assert (x not in seen) == b.live
                seen.add(x)


def _pair_violations(bs):
    flat = list(bs.flatten())
    first, where = {}, {}
    for k, x in enumerate(flat):
        first.setdefault(x, k)
    for q, b in enumerate(bs.blocks):
        for x in b.symbols:
            where.setdefault(x, set()).add(q)
    bad = []
    for a, b in itertools.combinations(sorted(bs.alphabet, key=first.get), 2):
        shared = where[a] & where[b]
        if not shared:
            continue
        proj = "".join("a" if x == a else "b" for x in flat if x in (a, b))
        if len(shared) > 1 or not (re.fullmatch(r"a*b*bab*a*", proj) or re.fullmatch(r"a*aba*b*", proj)):
            bad.append((a, b, proj))
    return bad


@pytest.mark.parametrize("s, i, j", [(4, 1, 2), (4, 1, 3), (4, 2, 2), (4, 3, 1), (5, 1, 3), (5, 2, 1), (5, 3, 1), (6, 1, 3), (6, 2, 1)])
def test_u_s_pair_shape(s, i, j):
    assert _pair_violations(C.u_s(s, i, j)) == []


def test_u_3_pairs_can_share_two_blocks():
    # dead blocks of t_rho repeat a pair in consecutive blocks, so the
    # reinterpreted u_s(3, .) does not have the one-shared-block property
    assert F(C.u_s(3, 2, 2)) == "(1 2)(3 4)(3 1)(3 1)(4 2)(4 2)"
    assert _pair_violations(C.u_s(3, 2, 2))


def test_guard():
    with pytest.raises(C.GuardExceeded) as exc:
        C.u_s(5, 2, 2)
    assert exc.value.estimate.length == 14843406974976
    with pytest.raises(C.GuardExceeded):
        C.t_rho(3, 3, 3, guard=100)
    assert C.t_rho(3, 3, 3, guard=972).length == 972


def test_guard_env(monkeypatch):
    monkeypatch.setenv("DSFORGE_SIZE_CAP", "10")
    with pytest.raises(C.GuardExceeded):
        C.t_rho(2, 2, 2)


def test_saturated_estimate():
    st = C.size_estimate("u_s", 5, 3, 3)
    assert st.saturated


def test_validation():
    with pytest.raises(ValueError):
        C.t_rho(1, 1, 1)
    with pytest.raises(ValueError):
        C.t_pi("du", 1, 1)
    with pytest.raises(ValueError):
        C.u_pi("uudu", 1, 1)
