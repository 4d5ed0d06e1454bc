"""Randomized verification batteries for the median construction.

Every battery draws from a single seeded Mersenne Twister generator, so a
run is reproducible from (seed, config) alone. Each battery returns
PropertyResult rows; a row fails only with a concrete counterexample
string attached.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import market_clearing as mc
from . import stable_matching as sm
from .errors import LatmedError, NotRegular
from .lattice_median import (
    check_median_theorem,
    check_regular,
    generalized_medians,
    median_invariant_failures,
    medians_via_meet_join,
)
from .order_core import (
    all_ideals,
    birkhoff_round_trip,
    chain_partition,
    format_vector,
    join,
    lattice_from_vectors,
    meet,
    poset_from_covers,
)

RNG_ALGORITHM = "mt19937"  # random.Random; stable across platforms and versions

WORKED_INPUTS = ((1, 0), (0, 1), (0, 2))
WORKED_MEDIANS = ((0, 0), (0, 1), (1, 2))


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 42
    smp_instances: int = 200
    smp_n_min: int = 3
    smp_n_max: int = 7
    subsets_per_instance: int = 20
    k_min: int = 2
    k_max: int = 5
    closure_pairs: int = 10
    median_families: int = 1000
    family_k_max: int = 8
    family_dim_max: int = 10
    family_coord_max: int = 10
    market_instances: int = 100
    market_n_min: int = 2
    market_n_max: int = 4
    market_max_valuation: int = 4
    market_subsets: int = 10
    constrained_instances: int = 50
    gate_trials: int = 200
    birkhoff_max_elements: int = 50


@dataclass(frozen=True)
class PropertyResult:
    name: str
    checked: int
    failures: tuple
    gated: int = 0  # predicate sets rejected as not regular (expected path)

    @property
    def passed(self):
        return not self.failures


class _Counter:
    def __init__(self, name):
        self.name = name
        self.checked = 0
        self.failures = []
        self.gated = 0

    def result(self):
        return PropertyResult(
            name=self.name,
            checked=self.checked,
            failures=tuple(self.failures),
            gated=self.gated,
        )


def random_smp_instance(rng, n):
    men = [rng.sample(range(n), n) for _ in range(n)]
    women = [rng.sample(range(n), n) for _ in range(n)]
    return sm.smp_instance(men, women)


def random_market_instance(rng, n, max_valuation):
    vals = [[rng.randint(0, max_valuation) for _ in range(n)] for _ in range(n)]
    return mc.market_instance(vals)


def _sample_family(rng, pool, k):
    # a true subset when the pool allows it, a multiset otherwise
    if len(pool) >= k:
        return rng.sample(pool, k)
    return [rng.choice(pool) for _ in range(k)]


def _note_medians(inv, inputs, medians):
    inv.checked += 1
    for msg in median_invariant_failures(inputs, medians):
        inv.failures.append(f"inputs {inputs}: {msg}")


def worked_example_battery():
    """The worked 2-coordinate example, via both implementations."""
    res = _Counter("paper-example")
    res.checked = 1
    direct = tuple(generalized_medians(WORKED_INPUTS))
    via_ops = tuple(medians_via_meet_join(WORKED_INPUTS))
    res.failures.extend(median_invariant_failures(WORKED_INPUTS, direct))
    if direct != WORKED_MEDIANS:
        res.failures.append(f"order-statistic medians gave {direct}")
    if via_ops != WORKED_MEDIANS:
        res.failures.append(f"meet/join medians gave {via_ops}")
    if meet((1, 0), (0, 1)) != (0, 0) or join((1, 0), (0, 2)) != (1, 2):
        res.failures.append("pairwise meet/join disagree with expected values")
    return res.result()


def smp_battery(rng, cfg):
    """Median stability, meet/join closure, and proposal-side extremes."""
    stab = _Counter("smp-median-stability")
    closure = _Counter("smp-meet-join-closure")
    extremes = _Counter("smp-proposal-extremes")
    inv = _Counter("median-invariants")
    for _ in range(cfg.smp_instances):
        n = rng.randint(cfg.smp_n_min, cfg.smp_n_max)
        inst = random_smp_instance(rng, n)
        stable = sm.all_stable_matchings(inst)
        stable_set = set(stable)
        tag = sm.serialize_instance(inst).replace("\n", "; ")

        extremes.checked += 1
        lo = sm.gale_shapley(inst, "men")
        hi = sm.gale_shapley(inst, "women")
        want_lo = tuple(min(c) for c in zip(*stable))
        want_hi = tuple(max(c) for c in zip(*stable))
        if lo != want_lo or lo not in stable_set:
            extremes.failures.append(f"{tag}: men-optimal {lo} != minimum {want_lo}")
        if hi != want_hi or hi not in stable_set:
            extremes.failures.append(f"{tag}: women-optimal {hi} != maximum {want_hi}")

        for _ in range(cfg.closure_pairs):
            closure.checked += 1
            a, b = rng.choice(stable), rng.choice(stable)
            if meet(a, b) not in stable_set or join(a, b) not in stable_set:
                closure.failures.append(f"{tag}: meet/join of {a}, {b} not stable")

        for _ in range(cfg.subsets_per_instance):
            k = rng.randint(cfg.k_min, cfg.k_max)
            family = _sample_family(rng, stable, k)
            medians = generalized_medians(family)
            _note_medians(inv, tuple(family), tuple(medians))
            for j, g in enumerate(medians, start=1):
                stab.checked += 1
                if not sm.stability_report(inst, g).stable or g not in stable_set:
                    stab.failures.append(
                        f"{tag}: median j={j} of {family} gave unstable {g}"
                    )
    return [stab.result(), closure.result(), extremes.result()], inv


def vector_family_battery(rng, cfg):
    """Order-statistic medians agree with the meet/join comparator network."""
    cross = _Counter("median-cross-implementation")
    inv = _Counter("median-invariants")
    for _ in range(cfg.median_families):
        k = rng.randint(1, cfg.family_k_max)
        dim = rng.randint(1, cfg.family_dim_max)
        family = [
            tuple(rng.randint(0, cfg.family_coord_max) for _ in range(dim))
            for _ in range(k)
        ]
        cross.checked += 1
        direct = generalized_medians(family)
        via_ops = medians_via_meet_join(family)
        if direct != via_ops:
            cross.failures.append(f"{family}: {direct} != {via_ops}")
        _note_medians(inv, tuple(family), tuple(direct))
    return cross.result(), inv


def market_battery(rng, cfg):
    """Clearing-set closure, auction minimality, and clearing medians."""
    closure = _Counter("market-closure")
    minimum = _Counter("market-auction-minimum")
    medians = _Counter("market-median-clearing")
    inv = _Counter("median-invariants")
    for _ in range(cfg.market_instances):
        n = rng.randint(cfg.market_n_min, cfg.market_n_max)
        inst = random_market_instance(rng, n, cfg.market_max_valuation)
        tag = mc.serialize_market(inst).replace("\n", "; ")
        clearing = mc.enumerate_clearing_vectors(inst)
        clearing_set = set(clearing)

        minimum.checked += 1
        if not clearing:
            minimum.failures.append(f"{tag}: no clearing vector in the box")
            continue
        auction = mc.min_clearing_prices(inst)
        want = tuple(min(c) for c in zip(*clearing))
        if auction != want or want not in clearing_set:
            minimum.failures.append(f"{tag}: auction {auction} != minimum {want}")

        for _ in range(cfg.closure_pairs):
            closure.checked += 1
            a, b = rng.choice(clearing), rng.choice(clearing)
            if meet(a, b) not in clearing_set or join(a, b) not in clearing_set:
                closure.failures.append(f"{tag}: meet/join of {a}, {b} not clearing")

        for _ in range(cfg.market_subsets):
            k = rng.randint(cfg.k_min, cfg.k_max)
            family = _sample_family(rng, clearing, k)
            meds = generalized_medians(family)
            _note_medians(inv, tuple(family), tuple(meds))
            for j, p in enumerate(meds, start=1):
                medians.checked += 1
                if not mc.is_market_clearing(inst, p) or p not in clearing_set:
                    medians.failures.append(
                        f"{tag}: median j={j} of {family} gave non-clearing {p}"
                    )
    return [closure.result(), minimum.result(), medians.result()], inv


def block_swap_instance(blocks):
    """2x2 swap gadgets side by side: 2^blocks stable matchings, a cube.

    Within block b, the two men rank the block's women first in opposite
    orders and the women rank the men oppositely to that, so each block
    flips independently. Useful for predicates that are not closed under
    meet/join, which need incomparable stable matchings to show it.
    """
    n = 2 * blocks
    men, women = [], []
    for b in range(blocks):
        base = 2 * b
        rest_w = [w for w in range(n) if w not in (base, base + 1)]
        rest_m = [m for m in range(n) if m not in (base, base + 1)]
        men.append([base, base + 1] + rest_w)
        men.append([base + 1, base] + rest_w)
        women.append([base + 1, base] + rest_m)
        women.append([base, base + 1] + rest_m)
    return sm.smp_instance(men, women)


def constrained_battery(rng, cfg):
    """Medians under side constraints, with the regularity gate.

    Regular satisfying sets must pass the median check; sets that are not
    closed under meet/join must be refused by the gate, and count as gated
    rather than failed. Random instances rarely produce irregular sets
    (small stable lattices are chains), so cube-shaped gadget instances
    are mixed in to force the gate path.
    """
    res = _Counter("smp-constrained-predicates")
    for blocks in (2, 3):
        inst = block_swap_instance(blocks)
        # the middle layer of the cube is never closed under meet
        satisfying = sm.satisfying_stable_set(inst, lambda g: sum(g) % 4 == 2)
        res.checked += 1
        try:
            check_median_theorem(satisfying, k_max=cfg.k_max)
            res.failures.append(f"gadget blocks={blocks}: gate missed the cube layer")
        except NotRegular:
            res.gated += 1
    for _ in range(cfg.constrained_instances):
        n = rng.randint(cfg.smp_n_min, cfg.smp_n_max)
        inst = random_smp_instance(rng, n)
        a, b = rng.sample(range(n), 2)
        m, w = rng.randrange(n), rng.randrange(n)
        predicates = [
            ("regret-le", sm.regret_le(a, b)),
            ("forbids", sm.forbids(inst, m, w)),
            ("conjoin", sm.conjoin(sm.regret_le(a, b), sm.forbids(inst, m, w))),
            ("odd-parity", lambda g: sum(g) % 2 == 1),
        ]
        tag = sm.serialize_instance(inst).replace("\n", "; ")
        for label, pred in predicates:
            res.checked += 1
            satisfying = sm.satisfying_stable_set(inst, pred)
            regular = check_regular(satisfying).regular
            try:
                report = check_median_theorem(
                    satisfying, k_max=cfg.k_max, trials=20,
                    rng_seed=rng.randrange(1 << 30),
                )
            except NotRegular:
                if regular:
                    res.failures.append(f"{tag}: {label}: gate fired on a regular set")
                else:
                    res.gated += 1
                continue
            if not regular:
                res.failures.append(f"{tag}: {label}: gate missed an irregular set")
            for family, j, g in report.violations:
                res.failures.append(
                    f"{tag}: {label}: median j={j} of {family} left the set: {g}"
                )
    return res.result()


def _close_under_ops(vectors):
    out = set(vectors)
    frontier = list(out)
    while frontier:
        fresh = []
        for a in list(out):
            for b in frontier:
                for c in (meet(a, b), join(a, b)):
                    if c not in out:
                        out.add(c)
                        fresh.append(c)
        frontier = fresh
    return sorted(out)


def regularity_gate_battery(rng, trials=200):
    """check_median_theorem must refuse exactly the irregular sets.

    Random vector sets are usually not closed under meet/join; closing a
    third of them by hand supplies the regular side. Both outcomes of the
    gate are exercised and cross-checked against check_regular.
    """
    res = _Counter("regularity-gate")
    for t in range(trials):
        dim = rng.randint(2, 4)
        raw = {
            tuple(rng.randint(0, 3) for _ in range(dim))
            for _ in range(rng.randint(2, 6))
        }
        vectors = sorted(raw)
        if t % 3 == 0:
            vectors = _close_under_ops(vectors)
        res.checked += 1
        regular = check_regular(vectors).regular
        try:
            report = check_median_theorem(
                vectors, trials=20, rng_seed=rng.randrange(1 << 30)
            )
        except NotRegular:
            if regular:
                res.failures.append(f"{vectors}: gate fired on a regular set")
            else:
                res.gated += 1
            continue
        if not regular:
            res.failures.append(f"{vectors}: gate missed an irregular set")
        if report.violations:
            res.failures.append(f"{vectors}: medians left a closed set")
    return res.result()


def chain_product_lattices(max_elements=50):
    """Products of two and three chains, up to the element bound."""
    out = []
    for a in range(2, max_elements // 2 + 1):
        for b in range(2, a + 1):
            if a * b <= max_elements:
                vecs = list(product(range(a), range(b)))
                out.append((f"chain-{a}x{b}", lattice_from_vectors(vecs)))
    for a in range(2, max_elements // 4 + 1):
        for b in range(2, a + 1):
            for c in range(2, b + 1):
                if a * b * c <= max_elements:
                    vecs = list(product(range(a), range(b), range(c)))
                    out.append((f"chain-{a}x{b}x{c}", lattice_from_vectors(vecs)))
    return out


def _ideal_lattice(elements, covers):
    poset = poset_from_covers(elements, covers)
    cp = chain_partition(poset)
    return lattice_from_vectors(all_ideals(poset, cp))


def fixed_lattices():
    """Five handcrafted distributive lattices of varied shape."""
    divisors = [d for d in range(1, 61) if 60 % d == 0]
    return [
        ("ideals-of-n-poset", _ideal_lattice(
            ["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])),
        ("boolean-cube-3", lattice_from_vectors(list(product((0, 1), repeat=3)))),
        ("divisors-of-60", lattice_from_vectors(
            [tuple(_multiplicity(d, p) for p in (2, 3, 5)) for d in divisors])),
        ("ideals-of-fence-5", _ideal_lattice(
            ["v", "w", "x", "y", "z"],
            [("v", "w"), ("x", "w"), ("x", "y"), ("z", "y")])),
        ("boolean-cube-4", lattice_from_vectors(list(product((0, 1), repeat=4)))),
    ]


def _multiplicity(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def birkhoff_battery(max_elements=50):
    """Round-trip every catalog lattice through its join-irreducibles."""
    res = _Counter("birkhoff-round-trip")
    for name, lat in chain_product_lattices(max_elements) + fixed_lattices():
        res.checked += 1
        try:
            jp, mapping = birkhoff_round_trip(lat)
        except LatmedError as e:
            res.failures.append(f"{name}: {type(e).__name__}: {e}")
            continue
        if len(mapping) != len(lat.elements):
            res.failures.append(f"{name}: mapping covers {len(mapping)} elements")
    return res.result()


def verify_suite(cfg=None):
    """Run every battery; an empty config (zero subsets) runs nothing."""
    cfg = cfg or VerifyConfig()
    if cfg.subsets_per_instance == 0:
        return []
    rng = random.Random(cfg.seed)
    results = [worked_example_battery()]
    inv_total = _Counter("median-invariants")

    smp_results, inv = smp_battery(rng, cfg)
    results.extend(smp_results)
    _merge(inv_total, inv)
    cross, inv = vector_family_battery(rng, cfg)
    results.append(cross)
    _merge(inv_total, inv)
    market_results, inv = market_battery(rng, cfg)
    results.extend(market_results)
    _merge(inv_total, inv)
    results.append(constrained_battery(rng, cfg))
    results.append(regularity_gate_battery(rng, cfg.gate_trials))
    results.append(birkhoff_battery(cfg.birkhoff_max_elements))
    results.append(inv_total.result())
    return results


def _merge(total, part):
    total.checked += part.checked
    total.failures.extend(part.failures)
    total.gated += part.gated
