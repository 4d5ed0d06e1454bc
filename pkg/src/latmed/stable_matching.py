"""Stable marriage instances, deferred acceptance, and median matchings.

A matching is carried as a rank vector: entry i is the position of man
i's partner in his preference list, 0 meaning his top choice. Under
componentwise comparison of rank vectors (smaller = every man at least
as well off) the stable matchings form a distributive lattice, so the
coordinatewise median construction applies to them directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import bipartite
from .errors import (
    IndexOutOfRange,
    JOutOfRange,
    MalformedFile,
    NotAPermutation,
    NotStableInput,
    RankOutOfRange,
    SizeMismatch,
    TooLarge,
)
from .lattice_median import generalized_medians

ENUM_BOUND = 8


@dataclass(frozen=True)
class SMPInstance:
    """Preference lists for n men and n women, each a permutation of 0..n-1."""

    n: int
    men_prefs: tuple
    women_prefs: tuple

    @cached_property
    def men_rank(self):
        # men_rank[m][w] = position of woman w in man m's list
        return tuple(_rank_row(row) for row in self.men_prefs)

    @cached_property
    def women_rank(self):
        return tuple(_rank_row(row) for row in self.women_prefs)


def _rank_row(row):
    rank = [0] * len(row)
    for pos, other in enumerate(row):
        rank[other] = pos
    return tuple(rank)


def smp_instance(men_prefs, women_prefs):
    men = tuple(tuple(row) for row in men_prefs)
    women = tuple(tuple(row) for row in women_prefs)
    n = len(men)
    if len(women) != n:
        raise SizeMismatch(f"{n} men but {len(women)} women")
    for side, rows in (("man", men), ("woman", women)):
        for i, row in enumerate(rows):
            if sorted(row) != list(range(n)):
                raise NotAPermutation(
                    f"{side} {i}: {list(row)} is not a permutation of 0..{n - 1}"
                )
    return SMPInstance(n=n, men_prefs=men, women_prefs=women)


def parse_instance(text):
    """Read the `smp <n>` text format (see serialize_instance)."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("smp "):
        raise MalformedFile("expected header 'smp <n>'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise MalformedFile(f"bad header {lines[0]!r}") from None
    if n < 1:
        raise MalformedFile(f"instance size must be positive, got {n}")
    if len(lines) != 1 + 2 * n:
        raise MalformedFile(f"expected {1 + 2 * n} lines, got {len(lines)}")
    men = [_parse_pref_line(lines[1 + i], "man", i, n) for i in range(n)]
    women = [_parse_pref_line(lines[1 + n + i], "woman", i, n) for i in range(n)]
    return smp_instance(men, women)


def _parse_pref_line(line, side, i, n):
    head, sep, rest = line.partition(":")
    if not sep or head.split() != [side, str(i)]:
        raise MalformedFile(f"expected '{side} {i}: ...', got {line!r}")
    try:
        prefs = [int(tok) for tok in rest.split()]
    except ValueError:
        raise MalformedFile(f"non-integer preference in {line!r}") from None
    if len(prefs) != n:
        raise SizeMismatch(f"{side} {i}: expected {n} entries, got {len(prefs)}")
    return prefs


def serialize_instance(inst):
    lines = [f"smp {inst.n}"]
    for i, row in enumerate(inst.men_prefs):
        lines.append(f"man {i}: " + " ".join(str(w) for w in row))
    for i, row in enumerate(inst.women_prefs):
        lines.append(f"woman {i}: " + " ".join(str(m) for m in row))
    return "\n".join(lines) + "\n"


def woman_of(inst, assignment, i):
    """Partner of man i under a rank vector."""
    if i < 0 or i >= inst.n:
        raise IndexOutOfRange(f"man {i} outside 0..{inst.n - 1}")
    r = assignment[i]
    if r < 0 or r >= inst.n:
        raise RankOutOfRange(f"rank {r} for man {i} outside 0..{inst.n - 1}")
    return inst.men_prefs[i][r]


def assignment_to_matching(inst, assignment):
    """Rank vector to sorted (man, woman) pairs."""
    if len(assignment) != inst.n:
        raise SizeMismatch(f"expected {inst.n} ranks, got {len(assignment)}")
    return [(i, woman_of(inst, assignment, i)) for i in range(inst.n)]


def matching_to_assignment(inst, pairs):
    """Sorted (man, woman) pairs back to a rank vector."""
    pairs = list(pairs)
    if len(pairs) != inst.n:
        raise SizeMismatch(f"expected {inst.n} pairs, got {len(pairs)}")
    ranks = [-1] * inst.n
    for m, w in pairs:
        if not (0 <= m < inst.n and 0 <= w < inst.n):
            raise IndexOutOfRange(f"pair ({m}, {w}) outside 0..{inst.n - 1}")
        if ranks[m] != -1:
            raise SizeMismatch(f"man {m} appears twice")
        ranks[m] = inst.men_rank[m][w]
    return tuple(ranks)


@dataclass(frozen=True)
class StabilityReport:
    is_matching: bool
    blocking: tuple  # (man, woman) pairs in lex order

    @property
    def stable(self):
        return self.is_matching and not self.blocking


def stability_report(inst, assignment):
    """Check a rank vector for matching-ness and blocking pairs.

    A pair (m, w) blocks when m strictly prefers w to his partner and w
    strictly prefers m to hers. Blocking pairs are only meaningful for
    genuine matchings, so they are not computed otherwise.
    """
    wives = assignment_to_matching(inst, assignment)
    if len({w for _, w in wives}) != inst.n:
        return StabilityReport(is_matching=False, blocking=())
    husband = [-1] * inst.n
    for m, w in wives:
        husband[w] = m
    blocking = []
    for m in range(inst.n):
        for w in range(inst.n):
            if inst.men_rank[m][w] < assignment[m] and (
                inst.women_rank[w][m] < inst.women_rank[w][husband[w]]
            ):
                blocking.append((m, w))
    return StabilityReport(is_matching=True, blocking=tuple(blocking))


def gale_shapley(inst, proposing_side="men"):
    """Deferred acceptance; returns a rank vector.

    Men proposing yields the matching where every man does as well as in
    any stable matching (the componentwise minimum rank vector); women
    proposing yields the componentwise maximum.
    """
    if proposing_side == "men":
        prefs, rank = inst.men_prefs, inst.women_rank
    elif proposing_side == "women":
        prefs, rank = inst.women_prefs, inst.men_rank
    else:
        raise ValueError(f"proposing_side must be 'men' or 'women', got {proposing_side!r}")
    n = inst.n
    next_choice = [0] * n
    holds = [-1] * n  # responder -> proposer currently held
    free = list(range(n - 1, -1, -1))
    while free:
        p = free.pop()
        r = prefs[p][next_choice[p]]
        next_choice[p] += 1
        held = holds[r]
        if held == -1:
            holds[r] = p
        elif rank[r][p] < rank[r][held]:
            holds[r] = p
            free.append(held)
        else:
            free.append(p)
    if proposing_side == "men":
        wife = [-1] * n
        for w, m in enumerate(holds):
            wife[m] = w
        return tuple(inst.men_rank[m][wife[m]] for m in range(n))
    return tuple(inst.men_rank[m][holds[m]] for m in range(n))


def all_stable_matchings(inst, bound=ENUM_BOUND):
    """Every stable matching as a rank vector, in lexicographic order.

    Brute force over perfect matchings, assigning men in index order and
    abandoning any prefix that already contains a blocking pair. Refuses
    instances larger than `bound`.
    """
    if inst.n > bound:
        raise TooLarge(f"n={inst.n} exceeds enumeration bound {bound}")
    n = inst.n
    men_rank, women_rank = inst.men_rank, inst.women_rank
    wife = [-1] * n
    husband = [-1] * n
    found = []

    def prefix_blocked(m, w):
        # blocking pair among assigned people involving the new pair (m, w)
        for w2 in inst.men_prefs[m]:
            if w2 == w:
                break
            h = husband[w2]
            if h != -1 and women_rank[w2][m] < women_rank[w2][h]:
                return True
        for m2 in range(m):
            if men_rank[m2][w] < men_rank[m2][wife[m2]] and (
                women_rank[w][m2] < women_rank[w][m]
            ):
                return True
        return False

    def extend(m):
        if m == n:
            found.append(tuple(men_rank[i][wife[i]] for i in range(n)))
            return
        for w in range(n):
            if husband[w] == -1 and not prefix_blocked(m, w):
                wife[m], husband[w] = w, m
                extend(m + 1)
                wife[m], husband[w] = -1, -1

    extend(0)
    return sorted(found)


def median_stable(inst, matchings, j):
    """j-th (1-indexed) generalized median of stable rank vectors.

    Inputs are validated for stability, and the result is checked to be
    stable before being returned. Repeated vectors are legitimate: the
    median is taken over a multiset.
    """
    ms = [tuple(g) for g in matchings]
    for g in ms:
        if not stability_report(inst, g).stable:
            raise NotStableInput(f"{g} is not a stable matching")
    if not 1 <= j <= len(ms):
        raise JOutOfRange(f"j={j} outside 1..{len(ms)}")
    g = generalized_medians(ms)[j - 1]
    report = stability_report(inst, g)
    if not report.stable:
        raise AssertionError(
            f"median {g} of stable matchings is unstable, blocking={report.blocking}"
        )
    return g


def regret_le(i, j):
    """Predicate: man i's rank is at most man j's."""

    def pred(assignment):
        n = len(assignment)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"indices ({i}, {j}) outside 0..{n - 1}")
        return assignment[i] <= assignment[j]

    return pred


def regret_at_most(i, c):
    """Predicate: man i gets one of his top c+1 choices."""

    def pred(assignment):
        if not 0 <= i < len(assignment):
            raise IndexOutOfRange(f"index {i} outside 0..{len(assignment) - 1}")
        return assignment[i] <= c

    return pred


def forbids(inst, m, w):
    """Predicate: man m is not matched to woman w."""
    if not (0 <= m < inst.n and 0 <= w < inst.n):
        raise IndexOutOfRange(f"pair ({m}, {w}) outside 0..{inst.n - 1}")

    def pred(assignment):
        return woman_of(inst, assignment, m) != w

    return pred


def conjoin(*predicates):
    def pred(assignment):
        return all(p(assignment) for p in predicates)

    return pred


def satisfying_stable_set(inst, predicate, bound=ENUM_BOUND):
    """Stable matchings satisfying a predicate, in lexicographic order."""
    return [g for g in all_stable_matchings(inst, bound) if predicate(g)]
