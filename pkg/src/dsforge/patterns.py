"""Named forbidden patterns and catenated-permutation families."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterator

from .seqcore import Sequence, SeqInput, canonical_form

DEFAULT_MEMBER_CAP = 10**6


class FamilyTooLarge(ValueError):
    """Raised when full member enumeration would exceed the cap."""


def make_pattern(kind: str, k: int) -> Sequence:
    """Build alt/N/M/Z/C/D shapes.  For ``alt`` the parameter is the total length."""
    if k < 1:
        raise ValueError("k must be >= 1")
    up = list(range(1, k + 2))          # 1 .. k+1
    down = list(range(k, 0, -1))        # k .. 1
    up2 = list(range(2, k + 2))         # 2 .. k+1
    if kind == "alt":
        if k < 2:
            raise ValueError("alt length must be >= 2")
        seq = [1 + (i % 2) for i in range(k)]
    elif kind == "N":
        seq = up + down + up2
    elif kind == "M":
        seq = up + down + up2 + down
    elif kind == "Z":
        seq = up + down + up2 + down + up2
    elif kind == "C":
        top = k + 2
        seq = list(range(1, top + 1))
        for x in range(1, k + 2):
            seq += [x, top]
    elif kind == "D":
        top = k + 2
        seq = []
        for x in range(2, top + 1):
            seq += [1, x]
        seq.append(1)
        for x in range(2, k + 2):
            seq += [top, x]
        seq.append(top)
    else:
        raise ValueError(f"unknown pattern kind {kind!r}")
    return Sequence._trusted(seq)


def alt_for_order(s: int) -> Sequence:
    """The alternation abab... of length s+2 forbidden in order-s DS sequences."""
    return make_pattern("alt", s + 2)


def dbl(p: SeqInput) -> Sequence:
    """Double every letter except those at the first and last positions."""
    p = Sequence(p)
    out = []
    for i, x in enumerate(p):
        out.append(x)
        if 0 < i < len(p) - 1:
            out.append(x)
    return Sequence._trusted(out)


def splice(outer: SeqInput, inner: SeqInput, position: int | None = None) -> Sequence:
    """Insert ``inner`` between an adjacent equal pair of ``outer``.

    ``position`` is the 0-based index of the first letter of the pair; by
    default the leftmost adjacent pair is used.
    """
    outer = Sequence(outer)
    inner = Sequence(inner)
    if position is None:
        position = next((i for i in range(len(outer) - 1) if outer[i] == outer[i + 1]), None)
        if position is None:
            raise ValueError("outer has no adjacent equal pair")
    if not (0 <= position < len(outer) - 1) or outer[position] != outer[position + 1]:
        raise ValueError(f"no adjacent equal pair at position {position}")
    shift = max(outer, default=0) + 1
    moved = [x + shift for x in inner]
    joined = list(outer[: position + 1]) + moved + list(outer[position + 1:])
    return canonical_form(joined)


# ---------------------------------------------------------------- families


def _multiset_perms(counts: list) -> Iterator[tuple]:
    """Distinct arrangements of a multiset, lexicographic.  ``counts[v-1]`` copies of v."""
    total = sum(counts)
    cur: list = []

    def rec():
        if len(cur) == total:
            yield tuple(cur)
            return
        for v, c in enumerate(counts):
            if c:
                counts[v] -= 1
                cur.append(v + 1)
                yield from rec()
                cur.pop()
                counts[v] += 1

    yield from rec()


@dataclass(frozen=True)
class PatternFamily:
    """A finite set of forbidden sequences.

    ``kind`` is one of singleton, perm, binperm, dblperm, explicit.  For the
    generated kinds ``r`` is the alphabet size and ``parts`` the number of
    catenated segments.
    """

    kind: str
    r: int = 0
    parts: int = 0
    explicit: tuple = field(default=())

    def size(self) -> int:
        if self.kind in ("singleton", "explicit"):
            return len(self.explicit)
        if self.kind == "perm":
            return math.factorial(self.r) ** self.parts
        if self.kind == "binperm":
            return 2 ** self.parts if self.r > 1 else 1
        if self.kind == "dblperm":
            mid = math.factorial(2 * self.r) // 2 ** self.r
            ends = math.factorial(self.r) ** min(self.parts, 2)
            return ends * mid ** max(self.parts - 2, 0)
        raise ValueError(f"unknown family kind {self.kind!r}")

    def segment_choices(self) -> list:
        """Per-segment candidate lists, in segment order."""
        r = self.r
        perms = list(itertools.permutations(range(1, r + 1)))
        if self.kind == "perm":
            return [perms] * self.parts
        if self.kind == "binperm":
            ident = tuple(range(1, r + 1))
            opts = [ident] if r == 1 else [ident, ident[::-1]]
            return [opts] * self.parts
        if self.kind == "dblperm":
            if self.parts == 1:
                return [perms]
            mids = list(_multiset_perms([2] * r))
            return [perms] + [mids] * (self.parts - 2) + [perms]
        raise ValueError(f"family kind {self.kind!r} has no segments")

    def members(self, cap: int | None = DEFAULT_MEMBER_CAP) -> Iterator[Sequence]:
        if cap is not None and self.size() > cap:
            raise FamilyTooLarge(f"{self.kind} family has {self.size()} members, cap is {cap}")
        if self.kind in ("singleton", "explicit"):
            yield from self.explicit
            return
        for combo in itertools.product(*self.segment_choices()):
            yield Sequence._trusted(x for seg in combo for x in seg)

    def __iter__(self):
        return self.members()

    def alphabet_bound(self) -> int:
        """Largest pattern alphabet among members."""
        if self.kind in ("singleton", "explicit"):
            return max((p.alphabet_size for p in self.explicit), default=0)
        return self.r


def make_family(kind: str, r: int, parts: int) -> PatternFamily:
    if r < 1 or parts < 1:
        raise ValueError("r and parts must be >= 1")
    if kind not in ("perm", "binperm", "dblperm"):
        raise ValueError(f"unknown family kind {kind!r}")
    return PatternFamily(kind, r, parts)


def singleton(p: SeqInput) -> PatternFamily:
    return PatternFamily("singleton", explicit=(canonical_form(p),))


def explicit_family(patterns) -> PatternFamily:
    if isinstance(patterns, PatternFamily):
        return patterns
    pats = []
    for p in patterns:
        if isinstance(p, str):
            pats.append(parse_literal(p))
        else:
            pats.append(canonical_form(p))
    return PatternFamily("explicit", explicit=tuple(pats))


# ---------------------------------------------------------------- spec grammar


_SHAPE_RE = re.compile(r"^(alt|N|M|Z|C|D):(\d+)$")
_FAMILY_RE = re.compile(r"^(perm|binperm|dblperm):(\d+):(\d+)$")


def parse_literal(text: str) -> Sequence:
    """Letters (``abcacbc``), packed digits (``1212``) or separated ints (``1 2 1 2``)."""
    t = text.strip()
    if not t:
        return Sequence()
    if re.fullmatch(r"[A-Za-z]+", t):
        return canonical_form(ord(c) for c in t)
    if re.fullmatch(r"\d+", t):
        return Sequence(int(c) for c in t)
    parts = re.split(r"[\s,]+", t)
    try:
        return Sequence(int(p) for p in parts if p)
    except ValueError:
        raise ValueError(f"cannot parse pattern literal {text!r}") from None


def parse_pattern_spec(spec: str) -> PatternFamily:
    """Parse the CLI pattern grammar into a family.

    Accepted forms: ``alt:LEN``, ``N:k`` ``M:k`` ``Z:k`` ``C:k`` ``D:k``,
    ``perm:r:parts``, ``binperm:r:parts``, ``dblperm:r:parts``,
    ``dbl(<spec>)``, a literal, or several of these joined with ``+``.
    """
    spec = spec.strip()
    if "+" in spec and not spec.startswith("dbl("):
        fams = [parse_pattern_spec(p) for p in _split_top(spec, "+")]
        pats = []
        for f in fams:
            pats.extend(f.members())
        return PatternFamily("explicit", explicit=tuple(pats))
    m = re.fullmatch(r"dbl\((.*)\)", spec)
    if m:
        inner = parse_pattern_spec(m.group(1))
        pats = tuple(canonical_form(dbl(p)) for p in inner.members())
        kind = "singleton" if len(pats) == 1 else "explicit"
        return PatternFamily(kind, explicit=pats)
    m = _SHAPE_RE.match(spec)
    if m:
        return singleton(make_pattern(m.group(1), int(m.group(2))))
    m = _FAMILY_RE.match(spec)
    if m:
        return make_family(m.group(1), int(m.group(2)), int(m.group(3)))
    return singleton(parse_literal(spec))


def _split_top(spec: str, sep: str) -> list:
    out, depth, cur = [], 0, []
    for c in spec:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        if c == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    out.append("".join(cur))
    return out
