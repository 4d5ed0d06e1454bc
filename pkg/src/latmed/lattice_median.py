"""Coordinatewise order statistics of lattice elements, and regularity checks.

Given k count vectors drawn from a finite distributive lattice, the j-th
median takes in every coordinate the j-th smallest of the k values there.
When the vectors all satisfy a predicate whose satisfying set is closed
under meet and join, every median satisfies it too; `check_median_theorem`
verifies that statement empirically for a concrete satisfying set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyInput, NotRegular, ShapeMismatch
from .order_core import format_vector, join, meet

EXHAUSTIVE_BOUND = 12


def _validated(vectors):
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise EmptyInput("need at least one vector")
    d = len(vs[0])
    for v in vs[1:]:
        if len(v) != d:
            raise ShapeMismatch(f"vector lengths differ: {d} vs {len(v)}")
    return vs


def generalized_medians(vectors):
    """All k medians of a k-element family, ascending in j.

    The j-th output (1-indexed) has in coordinate r the j-th smallest value
    among the inputs' r-th coordinates. Duplicates are kept: the family is
    a multiset. The first output is the meet of all inputs, the last their
    join, and the outputs form a chain.
    """
    vs = _validated(vectors)
    k = len(vs)
    cols = [sorted(col) for col in zip(*vs)]
    return [tuple(col[j] for col in cols) for j in range(k)]


def medians_via_meet_join(vectors):
    """Same family as generalized_medians, via whole-element meets and joins.

    Runs an insertion-style comparator network where each comparator
    replaces an adjacent pair (x, y) by (meet(x, y), join(x, y)); passes
    repeat until nothing changes. A comparator acts as (min, max) in every
    coordinate at once, so the stable state sorts all coordinates
    simultaneously.
    """
    work = _validated(vectors)
    changed = True
    while changed:
        changed = False
        for t in range(1, len(work)):
            for i in range(t - 1, -1, -1):
                lo = meet(work[i], work[i + 1])
                hi = join(work[i], work[i + 1])
                if (work[i], work[i + 1]) != (lo, hi):
                    work[i], work[i + 1] = lo, hi
                    changed = True
    return work


@dataclass(frozen=True)
class MedianFamily:
    """A vector family together with its medians, for reporting."""

    inputs: tuple
    medians: tuple

    @classmethod
    def compute(cls, vectors):
        vs = tuple(tuple(v) for v in vectors)
        return cls(inputs=vs, medians=tuple(generalized_medians(vs)))


def median_invariant_failures(inputs, medians):
    """Internal consistency of a median family, as failure strings.

    Checks per-coordinate multiset preservation and the ascending chain
    property; empty result means both hold.
    """
    failures = []
    for r in range(len(inputs[0])):
        got = sorted(m[r] for m in medians)
        want = sorted(v[r] for v in inputs)
        if got != want:
            failures.append(f"coordinate {r}: multiset {got} != {want}")
    for a, b in zip(medians, medians[1:]):
        if not all(x <= y for x, y in zip(a, b)):
            failures.append(
                f"chain broken: {format_vector(a)} !<= {format_vector(b)}"
            )
    return failures


@dataclass(frozen=True)
class PredicateReport:
    """Outcome of a closure check: a sublattice, or a witness that it is not."""

    regular: bool
    counterexample: tuple | None = None  # (x, y, "meet" | "join")


def check_regular(elements, satisfies=None):
    """Is the given set closed under pairwise meet and join?

    `satisfies` decides membership of the computed meets and joins; it
    defaults to membership in `elements` itself, which is the right oracle
    when `elements` is the complete satisfying set of a predicate. Pairs
    are scanned in input order and the first violation is reported.
    """
    vs = [tuple(v) for v in elements]
    if satisfies is None:
        members = set(vs)
        satisfies = members.__contains__
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            for op, fn in (("meet", meet), ("join", join)):
                if not satisfies(fn(vs[i], vs[j])):
                    return PredicateReport(False, (vs[i], vs[j], op))
    return PredicateReport(True)


@dataclass(frozen=True)
class MedianTheoremReport:
    subsets_checked: int
    violations: tuple  # (family, j, median) triples, sorted

    @property
    def passed(self):
        return not self.violations


def check_median_theorem(satisfying, k_max=5, trials=100, rng_seed=42):
    """Verify that medians of subsets of a regular set stay in the set.

    Requires `satisfying` to be closed under meet and join (NotRegular
    otherwise, since nothing is guaranteed then). Small sets are checked
    over every subset of size <= k_max; larger ones over `trials` sampled
    subsets, from a generator seeded with rng_seed.
    """
    vs = [tuple(v) for v in satisfying]
    report = check_regular(vs)
    if not report.regular:
        x, y, op = report.counterexample
        raise NotRegular(
            f"set not closed under {op} of {format_vector(x)} and {format_vector(y)}"
        )
    members = set(vs)
    if len(vs) <= EXHAUSTIVE_BOUND:
        families = [
            list(sub)
            for k in range(1, min(k_max, len(vs)) + 1)
            for sub in combinations(vs, k)
        ]
    else:
        rng = random.Random(rng_seed)
        families = [
            rng.sample(vs, rng.randint(1, min(k_max, len(vs))))
            for _ in range(trials)
        ]
    violations = []
    for family in families:
        for j, g in enumerate(generalized_medians(family), start=1):
            if g not in members:
                violations.append((tuple(family), j, g))
    violations.sort()
    return MedianTheoremReport(len(families), tuple(violations))
