"""Counting closed traversal cycles of a gluing, grouped by word class.

A traversal cycle of length k is a cyclically closed sequence of
(side, turn) steps: from side s_j we exit through e_j =
next_side(s_j, turn_j) and enter s_{j+1} = partner(e_j).  Its word is
the turn sequence.  Two cycles are the same when one is a cyclic
rotation of the other's (entry, exit) pair sequence, or of its
reversal (pairs reversed in order and swapped componentwise, which
flips every turn).  The count Z_[w] is the number of cycle classes
whose word lies in the word class [w].

Three counters live here:

* count_cycles: depth-first search over (start, turns) with necklace
  pruning on the pair sequence; a closed sequence is counted when it
  equals the lexicographic minimum of its full rotation/reversal
  orbit, so every class is counted exactly once.  Authoritative.

* brute_force_counts: enumerates all 6N * 2^k raw sequences and
  dedupes them with an explicitly listed orbit per closure.  Slow and
  simple, kept as an independent cross-check.

* count_vector fast path: for a primitive word w, no cycle has a
  nontrivial orbit stabilizer (a stabilizer would force a label to be
  matched with itself), so Z_[w] = class_size * F / (2|w|) where F is
  the number of fixed points of the step-map composition along w.
  Composition of step permutations is cheap, which is what makes
  large Monte Carlo runs affordable.  Non-primitive classes fall back
  to the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from randsurf.gluing import Gluing, step_arrays, _next_arrays
from randsurf.words import WordClass, canonicalize, check_word

MAX_CYCLE_LENGTH = 16


def _check_max_length(m: int) -> None:
    if not 1 <= m <= MAX_CYCLE_LENGTH:
        raise ValueError(f"max cycle length must be in 1..{MAX_CYCLE_LENGTH}, got {m}")


@dataclass(frozen=True)
class SpectrumReport:
    """Cycle class counts of one gluing up to a length cap."""

    half_count: int
    max_length: int
    counts: Mapping[WordClass, int]
    shortest_geodesic_length: float | None

    def count_of(self, word: str) -> int:
        return self.counts.get(canonicalize(word), 0)


def _report(n: int, m: int, counts: dict[WordClass, int]) -> SpectrumReport:
    lengths = [c.length for c, k in counts.items() if k > 0 and not c.parabolic]
    return SpectrumReport(
        half_count=n,
        max_length=m,
        counts=dict(sorted(counts.items())),
        shortest_geodesic_length=min(lengths) if lengths else None,
    )


def _reversal_codes(seq: Sequence[int], base: int) -> list[int]:
    # swap (s, e) -> (e, s) in each code and reverse the order
    return [(c % base) * base + c // base for c in reversed(seq)]


def _canonical_cycle(seq: Sequence[int], base: int) -> tuple[int, ...]:
    k = len(seq)
    rev = _reversal_codes(seq, base)
    best = tuple(seq)
    for r in range(k):
        for cand in (tuple(seq[r:]) + tuple(seq[:r]), tuple(rev[r:]) + tuple(rev[:r])):
            if cand < best:
                best = cand
    return best


def count_cycles(
    g: Gluing, m: int, mirror_convention: bool = False
) -> SpectrumReport:
    """Count every cycle class of length <= m.

    Cost grows like 6N * 2^m before pruning.  With mirror_convention
    the Left/Right roles are exchanged, which mirrors every word.
    """
    _check_max_length(m)
    n = g.half_count
    base = 6 * n + 1
    partner = g.partner.tolist()
    nxt_l, nxt_r = (arr.tolist() for arr in _next_arrays(n))
    if mirror_convention:
        nxt_l, nxt_r = nxt_r, nxt_l
    turn_next = (("L", nxt_l), ("R", nxt_r))

    counts: dict[WordClass, int] = {}
    seq: list[int] = []
    turns: list[str] = []
    # active[j] lists rotation offsets still tied with the prefix after
    # seq[j] was placed; a strictly smaller rotation prunes the branch
    active: list[list[int]] = []

    def extend(s: int, depth: int, s0: int) -> None:
        for turn, nxt in turn_next:
            e = nxt[s]
            code = s * base + e
            if depth == 0:
                survivors: list[int] = []
            else:
                prev = active[depth - 1]
                survivors = []
                smaller = False
                for r in prev:
                    ref = seq[depth - r]
                    if code < ref:
                        smaller = True
                        break
                    if code == ref:
                        survivors.append(r)
                if not smaller:
                    ref = seq[0]
                    if code < ref:
                        smaller = True
                    elif code == ref:
                        survivors.append(depth)
                if smaller:
                    continue
            seq.append(code)
            turns.append(turn)
            active.append(survivors)
            nxt_s = partner[e]
            if nxt_s == s0 and tuple(seq) == _canonical_cycle(seq, base):
                cls = canonicalize("".join(turns))
                counts[cls] = counts.get(cls, 0) + 1
            if depth + 1 < m:
                extend(nxt_s, depth + 1, s0)
            seq.pop()
            turns.pop()
            active.pop()

    for s0 in range(1, 6 * n + 1):
        extend(s0, 0, s0)
    return _report(n, m, counts)


def brute_force_counts(g: Gluing, m: int) -> dict[WordClass, int]:
    """Independent reference counter: full enumeration, explicit orbits."""
    _check_max_length(m)
    n = g.half_count
    base = 6 * n + 1
    partner = g.partner.tolist()
    nxt = {"L": _next_arrays(n)[0].tolist(), "R": _next_arrays(n)[1].tolist()}

    counts: dict[WordClass, int] = {}
    seen: set[tuple[int, ...]] = set()
    for k in range(1, m + 1):
        for s0 in range(1, 6 * n + 1):
            for word in product("LR", repeat=k):
                s = s0
                codes = []
                for turn in word:
                    e = nxt[turn][s]
                    codes.append(s * base + e)
                    s = partner[e]
                if s != s0:
                    continue
                rev = _reversal_codes(codes, base)
                orbit = [tuple(codes[r:] + codes[:r]) for r in range(k)]
                orbit += [tuple(rev[r:] + rev[:r]) for r in range(k)]
                key = min(orbit)
                if key in seen:
                    continue
                seen.add(key)
                cls = canonicalize("".join(word))
                counts[cls] = counts.get(cls, 0) + 1
    return counts


def _compose_small(partner: list, nxt: dict, word: str, size: int) -> int:
    """Fixed points of the step composition, pure-python (small gluings)."""
    fix = 0
    for s0 in range(1, size + 1):
        s = s0
        for turn in word:
            s = partner[nxt[turn][s]]
        if s == s0:
            fix += 1
    return fix


def fixed_point_count(g: Gluing, word: str) -> int:
    """Number of sides s with the word-long step walk returning to s."""
    check_word(word)
    n = g.half_count
    if 6 * n <= 48:
        partner = g.partner.tolist()
        left, right = _next_arrays(n)
        return _compose_small(
            partner, {"L": left.tolist(), "R": right.tolist()}, word, 6 * n
        )
    step_l, step_r = step_arrays(g)
    f = np.arange(6 * n + 1)
    for turn in word:
        f = (step_l if turn == "L" else step_r)[f]
    return int(np.count_nonzero(f[1:] == np.arange(1, 6 * n + 1)))


def class_count_primitive(g: Gluing, cls: WordClass) -> int:
    """Z for a primitive class through the fixed-point identity."""
    if not cls.primitive:
        raise ValueError(f"class {cls.canonical} is not primitive")
    fix = fixed_point_count(g, cls.canonical)
    total = cls.class_size * fix
    twice_k = 2 * cls.word_length
    assert total % twice_k == 0, "orbit sizes of primitive-word cycles are full"
    return total // twice_k


def count_vector(g: Gluing, classes: Sequence[WordClass]) -> dict[WordClass, int]:
    """Counts for the requested classes only, zero-filled.

    Agrees with the restriction of count_cycles at the largest
    requested length; primitive classes take the fast path.
    """
    out: dict[WordClass, int] = {}
    laggards = [c for c in classes if not c.primitive]
    for c in classes:
        if c.word_length > MAX_CYCLE_LENGTH:
            raise ValueError(f"class {c.canonical} longer than {MAX_CYCLE_LENGTH}")
        if c.primitive:
            out[c] = class_count_primitive(g, c)
    if laggards:
        full = count_cycles(g, max(c.word_length for c in laggards))
        for c in laggards:
            out[c] = full.counts.get(c, 0)
    return {c: out[c] for c in classes}
