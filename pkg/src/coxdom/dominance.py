"""Dominance predicate, dominated sets, elementary roots and the hierarchy.

The hierarchy is produced level by level: seeds come from reflecting the
previous level across pairings <= -1, then the level is closed under
reflections with pairing strictly between -1 and 0 until nothing new
appears.  Every emitted root is cross-validated against the direct per-root
computation of its dominated set; a mismatch raises instead of being
repaired silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .datum import CoxeterDatum
from .errors import ConsistencyError, LimitError
from .roots import (
    Root,
    depth,
    full_root_system,
    inner,
    inversion_set,
    minimal_word,
    negate,
    pair_with_simple,
    positive_roots_upto,
    precedes,
    reflect_root,
    reflect_simple,
    root_key,
    root_sign,
)
from .scalar import (
    AT_LEAST_ONE,
    AT_MOST_MINUS_ONE,
    POSITIVE_CLASSES,
    ScalarClass,
    classify,
)

DEFAULT_LEVEL_CAP = 100_000
DEFAULT_DEPTH_CAP = 30


@dataclass(frozen=True)
class DominanceRecord:
    """A positive root together with the set of positive roots it dominates."""

    root: Root
    n: int
    dominated: tuple[Root, ...]


@dataclass(frozen=True)
class HierarchyLevel:
    """All positive roots dominating exactly n others."""

    n: int
    records: tuple[DominanceRecord, ...]

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(rec.root for rec in self.records)


@dataclass(frozen=True)
class LawCheck:
    """Outcome of one structural law over the sampled roots."""

    name: str
    passed: bool
    checked: int
    failures: tuple[str, ...] = ()


def dominates(d: CoxeterDatum, x: Root, y: Root) -> bool:
    """Whether every group element sending x negative also sends y negative.

    Decided by the inner-product/depth criterion: for positive roots,
    (x, y) >= 1 with strictly larger depth (or x = y); a positive root
    dominates a negative one iff (x, y) >= 1; a negative root never
    dominates a positive one; two negatives reduce to their negatives.
    """
    sx = root_sign(d, x)
    sy = root_sign(d, y)
    if sx == sy and root_key(d, x) == root_key(d, y):
        return True
    geq_one = classify(inner(d, x, y), d.tolerance) in AT_LEAST_ONE
    if sx > 0 and sy > 0:
        return geq_one and depth(d, x) > depth(d, y)
    if sx > 0 > sy:
        return geq_one
    if sx < 0 < sy:
        return False
    return dominates(d, negate(y), negate(x))


def dominated_set(d: CoxeterDatum, x: Root) -> DominanceRecord:
    """D(x) for a positive root, via a minimal word and its inversion set.

    The dominated roots are exactly the inversions of w^{-1}, w any minimal
    word for x, whose pairing with x is >= 1; the count is independent of
    the descent tie-breaking.
    """
    word, _ = minimal_word(d, x)
    dominated = tuple(
        b
        for b in inversion_set(d, word)
        if classify(inner(d, x, b), d.tolerance) in AT_LEAST_ONE
    )
    return DominanceRecord(root=x, n=len(dominated), dominated=dominated)


def elementary_roots(d: CoxeterDatum, size_cap: int = DEFAULT_LEVEL_CAP) -> tuple[Root, ...]:
    """The elementary roots (those dominating nothing), computed by closure.

    Seeded with the simple roots and closed under reflections whose pairing
    lies strictly between -1 and 0.  Edges with pairing <= -1 are excluded:
    their image dominates the reflecting simple root, so it is never
    elementary.  Every member is re-verified to have an empty dominated set.
    """
    members: dict[tuple, Root] = {}
    queue: list[Root] = []
    for i in range(d.rank):
        x = d.simple_root(i)
        members[root_key(d, x)] = x
        queue.append(x)
    if len(members) > size_cap:
        raise LimitError(f"elementary-root closure exceeded cap {size_cap}")
    while queue:
        x = queue.pop()
        for a in range(d.rank):
            if classify(pair_with_simple(d, x, a), d.tolerance) is ScalarClass.OPEN_NEGATIVE:
                y = reflect_simple(d, a, x)
                key = root_key(d, y)
                if key not in members:
                    members[key] = y
                    queue.append(y)
                    if len(members) > size_cap:
                        raise LimitError(f"elementary-root closure exceeded cap {size_cap}")
    out = tuple(sorted(members.values()))
    for m in out:
        rec = dominated_set(d, m)
        if rec.n != 0:
            raise ConsistencyError(
                f"closure produced non-elementary root {m!r} with D(x) = {rec.dominated!r}"
            )
    return out


def _next_level_roots(
    d: CoxeterDatum,
    prev: Sequence[Root],
    level_cap: int,
) -> list[Root]:
    """One inductive step: seed across <= -1 pairings, then close over (-1, 0)."""
    found: dict[tuple, Root] = {}
    queue: list[Root] = []
    for x in prev:
        for a in range(d.rank):
            if classify(pair_with_simple(d, x, a), d.tolerance) in AT_MOST_MINUS_ONE:
                y = reflect_simple(d, a, x)
                key = root_key(d, y)
                if key not in found:
                    found[key] = y
                    queue.append(y)
    while queue:
        x = queue.pop()
        for a in range(d.rank):
            if classify(pair_with_simple(d, x, a), d.tolerance) is ScalarClass.OPEN_NEGATIVE:
                y = reflect_simple(d, a, x)
                key = root_key(d, y)
                if key not in found:
                    found[key] = y
                    queue.append(y)
                    if len(found) > level_cap:
                        raise LimitError(f"hierarchy level exceeded cap {level_cap}")
    return sorted(found.values())


def hierarchy(
    d: CoxeterDatum,
    n_max: int,
    *,
    level_cap: int = DEFAULT_LEVEL_CAP,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    size_cap: int = DEFAULT_LEVEL_CAP,
) -> list[HierarchyLevel]:
    """Levels 0..n_max of the dominance hierarchy.

    Finite systems are detected by enumeration self-terminating, in which
    case level 0 is the whole positive system and the rest are empty.  Every
    emitted root is cross-validated against dominated_set.
    """
    if n_max < 0:
        raise LimitError(f"n_max must be >= 0, got {n_max}")
    full = full_root_system(d, depth_cap)
    if full is not None:
        records = tuple(_validated_record(d, x, 0) for x in sorted(full))
        levels = [HierarchyLevel(n=0, records=records)]
        levels.extend(HierarchyLevel(n=n, records=()) for n in range(1, n_max + 1))
        return levels

    current: list[Root] = list(elementary_roots(d, size_cap=size_cap))
    levels = [HierarchyLevel(n=0, records=tuple(_validated_record(d, x, 0) for x in current))]
    for n in range(1, n_max + 1):
        current = _next_level_roots(d, current, level_cap)
        records = tuple(_validated_record(d, x, n) for x in current)
        levels.append(HierarchyLevel(n=n, records=records))
    return levels


def _validated_record(d: CoxeterDatum, x: Root, n: int) -> DominanceRecord:
    rec = dominated_set(d, x)
    if rec.n != n:
        raise ConsistencyError(
            f"hierarchy placed {x!r} at level {n} but its dominated set has size {rec.n}"
        )
    return rec


def check_laws(
    d: CoxeterDatum,
    levels: Sequence[HierarchyLevel],
    depth_cap: int = 8,
    *,
    reflecting_depth_cap: int = 4,
    max_witnesses: int = 3,
) -> list[LawCheck]:
    """Verify the structural laws of the hierarchy on the computed data.

    Failures are reported as data with witnesses, never raised.
    """
    eps = d.tolerance
    sampled = positive_roots_upto(d, depth_cap)
    d0_roots = list(levels[0].roots) if levels else []
    d0_keys = frozenset(root_key(d, x) for x in d0_roots)
    n_max = len(levels) - 1
    results: list[LawCheck] = []

    def level_of(x: Root) -> int:
        return dominated_set(d, x).n

    def run(name, pairs):
        checked = 0
        failures: list[str] = []
        for ok, witness in pairs:
            checked += 1
            if not ok and len(failures) < max_witnesses:
                failures.append(witness)
        results.append(
            LawCheck(name=name, passed=not failures, checked=checked, failures=tuple(failures))
        )

    # Every level-n root is r_a b with a elementary and b from a lower level.
    def containment_pairs():
        for n in range(1, n_max + 1):
            for x in levels[n].roots:
                kx = root_key(d, x)
                hit = any(
                    root_key(d, reflect_root(d, a, b)) == kx
                    for a in d0_roots
                    for lvl in levels[:n]
                    for b in lvl.roots
                )
                yield hit, f"level {n}: {x!r}"

    run("level_containment", containment_pairs())

    # Level 1 specifically comes from reflecting elementary roots in each other.
    def d1_pairs():
        if n_max < 1:
            return
        for x in levels[1].roots:
            kx = root_key(d, x)
            hit = any(
                root_key(d, reflect_root(d, a, b)) == kx
                for a in d0_roots
                for b in d0_roots
            )
            yield hit, f"{x!r}"

    run("d1_containment", d1_pairs())

    # Size bound per positive level in terms of the elementary-root count.
    k0 = len(d0_roots)
    run(
        "size_bound",
        (
            (len(levels[n].roots) <= k0 ** (n + 1) - k0**n, f"level {n}")
            for n in range(1, n_max + 1)
        ),
    )

    # Short words cannot carry an elementary root into a deep level.
    def short_word_pairs():
        if n_max < 1:
            return
        ball = oracle.cayley_ball(d, n_max - 1)
        for elem in ball:
            for a in d0_roots:
                image = oracle.act(elem.matrix, a)
                if root_sign(d, image) != 1:
                    continue
                m = level_of(image)
                yield m <= elem.length, f"w={elem.word!r} a={a!r} -> level {m}"

    run("short_words", short_word_pairs())

    # Simple reflections move an elementary root into -D0, D0 or D1.
    def rd0_pairs():
        for x in d0_roots:
            for a in range(d.rank):
                y = reflect_simple(d, a, x)
                if root_sign(d, y) == -1:
                    ok = root_key(d, negate(y)) in d0_keys
                else:
                    ok = level_of(y) <= 1
                yield ok, f"r_{d.labels[a]} {x!r}"

    run("rd0_neighbors", rd0_pairs())

    # Simple reflections change the dominated-set size by at most one.
    def rdn_pairs():
        for n in range(1, n_max + 1):
            for x in levels[n].roots:
                for a in range(d.rank):
                    m = level_of(reflect_simple(d, a, x))
                    yield abs(m - n) <= 1, f"level {n}, r_{d.labels[a]} {x!r} -> {m}"

    run("rdn_neighbors", rdn_pairs())

    # Exact trichotomy: the pairing against a simple root dictates the step.
    def trichotomy_pairs():
        for n in range(1, n_max + 1):
            for x in levels[n].roots:
                for a in range(d.rank):
                    m = level_of(reflect_simple(d, a, x))
                    cls = classify(pair_with_simple(d, x, a), eps)
                    if cls in AT_LEAST_ONE:
                        ok = m == n - 1
                    elif cls in AT_MOST_MINUS_ONE:
                        ok = m == n + 1
                    else:
                        ok = m == n
                    yield ok, f"level {n}, {x!r}, a={d.labels[a]}, class {cls.value}, -> {m}"

    run("step_trichotomy", trichotomy_pairs())

    # Precedence carries dominated sets forward: r_a D(y) inside D(r_a y).
    def transport_pairs():
        for x in sampled:
            if depth(d, x) < 2:
                continue
            rec_x = dominated_set(d, x)
            dx = {root_key(d, b) for b in rec_x.dominated}
            for a in range(d.rank):
                if classify(pair_with_simple(d, x, a), eps) not in POSITIVE_CLASSES:
                    continue
                y = reflect_simple(d, a, x)  # y precedes x via r_a
                rec_y = dominated_set(d, y)
                moved = {root_key(d, reflect_simple(d, a, b)) for b in rec_y.dominated}
                ok = moved <= dx and rec_y.n <= rec_x.n
                yield ok, f"{y!r} -> {x!r} via r_{d.labels[a]}"

    run("dominance_transport", transport_pairs())

    # Every root of a positive level is preceded by one a level below.
    def predecessor_pairs():
        for n in range(1, n_max + 1):
            for x in levels[n].roots:
                ok = any(
                    level_of(z) == n - 1 and precedes(d, z, x)
                    for z in _descent_chain(d, x)
                )
                yield ok, f"level {n}: {x!r}"

    run("lower_predecessor", predecessor_pairs())

    # Reflecting in any non-simple positive root with pairing >= 1 strictly
    # shrinks the dominated set; pairing <= -1 strictly grows it.
    def general_step_pairs():
        reflectors = [
            t for t in positive_roots_upto(d, reflecting_depth_cap) if depth(d, t) > 1
        ]
        for n in range(1, n_max + 1):
            for x in levels[n].roots:
                for t in reflectors:
                    cls = classify(inner(d, x, t), eps)
                    if cls not in AT_LEAST_ONE and cls not in AT_MOST_MINUS_ONE:
                        continue
                    y = reflect_root(d, t, x)
                    count = 0 if root_sign(d, y) == -1 else level_of(y)
                    ok = count < n if cls in AT_LEAST_ONE else count > n
                    yield ok, f"level {n}, {x!r}, t={t!r}, -> {count}"

    run("general_reflection_step", general_step_pairs())

    # Everything a minimal word inverts pairs strictly positively with the root.
    def minimal_inversion_pairs():
        for x in sampled:
            word, final = minimal_word(d, x)
            for b in inversion_set(d, word.letters + (final,)):
                cls = classify(inner(d, b, x), eps)
                yield cls in POSITIVE_CLASSES, f"x={x!r}, b={b!r}, class {cls.value}"

    run("minimal_word_inversions", minimal_inversion_pairs())

    # If a computed level is empty, all later computed levels are empty too.
    def emptiness_pairs():
        empty_seen = False
        for lvl in levels:
            if empty_seen:
                yield not lvl.records, f"level {lvl.n} nonempty after an empty one"
            if not lvl.records:
                empty_seen = True

    run("monotone_emptiness", emptiness_pairs())

    return results


def _descent_chain(d: CoxeterDatum, x: Root) -> list[Root]:
    """The roots visited by the greedy descent of x (excluding x itself)."""
    word, _ = minimal_word(d, x)
    chain = []
    cur = x
    for a in word.letters:
        cur = reflect_simple(d, a, cur)
        chain.append(cur)
    return chain


def dominated_set_all_branches(d: CoxeterDatum, x: Root) -> set[tuple[int, frozenset]]:
    """(n, D(x)) over every greedy-descent branch, for choice-independence tests."""
    from .roots import _simple_index

    outcomes: set[tuple[int, frozenset]] = set()

    def explore(cur: Root, letters: tuple[int, ...]):
        if _simple_index(d, cur) is not None:
            dominated = frozenset(
                root_key(d, b)
                for b in inversion_set(d, letters)
                if classify(inner(d, x, b), d.tolerance) in AT_LEAST_ONE
            )
            outcomes.add((len(dominated), dominated))
            return
        for a in range(d.rank):
            if classify(pair_with_simple(d, cur, a), d.tolerance) in POSITIVE_CLASSES:
                explore(reflect_simple(d, a, cur), letters + (a,))

    explore(x, ())
    return outcomes
