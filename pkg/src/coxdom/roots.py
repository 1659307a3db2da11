"""Root system engine: reflections, depth, inversion sets, layered enumeration.

Roots are plain coefficient tuples over the simple roots.  A root is a unit
vector for the Gram form whose coefficients are all >= 0 (positive root) or
all <= 0 (negative root); mixed signs never occur and are rejected loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .datum import CoxeterDatum
from .errors import (
    DimensionError,
    LimitError,
    NotARootError,
    NotReducedError,
    NotUnitError,
)
from .scalar import (
    NEGATIVE_CLASSES,
    POSITIVE_CLASSES,
    Number,
    ScalarClass,
    classify,
    tighten,
)

Root = tuple  # coefficient vector of length rank

DEFAULT_DESCENT_CAP = 10_000
DEFAULT_LAYER_CAP = 100_000


@dataclass(frozen=True)
class Word:
    """A product of simple reflections, leftmost factor applied last."""

    letters: tuple[int, ...]
    reduced: bool = False

    def __len__(self) -> int:
        return len(self.letters)


def root_key(d: CoxeterDatum, x: Root) -> tuple:
    """Canonical dedup key: the vector itself (exact) or a rounded copy (approx)."""
    if d.exact:
        return x
    return tuple(round(float(c), d.key_digits) for c in x)


def negate(x: Root) -> Root:
    return tuple(-c for c in x)


def pair_with_simple(d: CoxeterDatum, x: Root, a: int) -> Number:
    """(x, e_a), i.e. row a of the Gram matrix dotted with x."""
    row = d.gram[a]
    return sum(row[j] * xj for j, xj in enumerate(x) if xj)


def inner(d: CoxeterDatum, x: Root, y: Root) -> Number:
    """Bilinear form value x^T B y; preserved by the group action."""
    if len(x) != d.rank or len(y) != d.rank:
        raise DimensionError(
            f"expected vectors of length {d.rank}, got {len(x)} and {len(y)}"
        )
    gram = d.gram
    total: Number = 0
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
    return total


def reflect_simple(d: CoxeterDatum, a: int, x: Root) -> Root:
    """Image of x under the reflection in the a-th simple root."""
    if not 0 <= a < d.rank:
        raise IndexError(f"generator index out of range: {a}")
    out = list(x)
    out[a] = tighten(x[a] - 2 * pair_with_simple(d, x, a))
    return tuple(out)


def reflect_root(d: CoxeterDatum, t: Root, x: Root) -> Root:
    """Image of x under the reflection in an arbitrary unit root t."""
    norm = inner(d, t, t)
    if classify(norm, d.tolerance) is not ScalarClass.ONE:
        raise NotUnitError(f"reflecting vector has self inner product {norm!r}")
    p = inner(d, x, t)
    return tuple(tighten(xi - 2 * p * ti) for xi, ti in zip(x, t))


def root_sign(d: CoxeterDatum, x: Root) -> int:
    """+1 for a positive root, -1 for a negative one; mixed signs are an error."""
    eps = d.tolerance
    has_pos = any(c > eps for c in x)
    has_neg = any(c < -eps for c in x)
    if has_pos and has_neg:
        raise NotARootError(f"mixed-sign coefficient vector {x!r} is not a root")
    if not has_pos and not has_neg:
        raise NotARootError("zero vector is not a root")
    return 1 if has_pos else -1


def is_positive(d: CoxeterDatum, x: Root) -> bool:
    return root_sign(d, x) == 1


def _simple_index(d: CoxeterDatum, x: Root) -> int | None:
    eps = d.tolerance
    hit = None
    for i, c in enumerate(x):
        if abs(c - 1) <= eps:
            if hit is not None:
                return None
            hit = i
        elif abs(c) > eps:
            return None
    return hit


@lru_cache(maxsize=None)
def _descent(d: CoxeterDatum, x: Root, cap: int) -> tuple[tuple[int, ...], int]:
    """Greedy depth descent of a positive root down to a simple root.

    Returns the applied letters (in application order) and the index of the
    simple root reached.  Ties are broken by least generator index; a letter
    with positive pairing always exists for a non-simple positive root.
    """
    if root_sign(d, x) != 1:
        raise NotARootError(f"descent needs a positive root, got {x!r}")
    letters: list[int] = []
    cur = x
    while True:
        idx = _simple_index(d, cur)
        if idx is not None:
            return tuple(letters), idx
        step = None
        for a in range(d.rank):
            if classify(pair_with_simple(d, cur, a), d.tolerance) in POSITIVE_CLASSES:
                step = a
                break
        if step is None:
            raise LimitError(f"no descent letter for {cur!r}; not a root or tolerance failure")
        cur = reflect_simple(d, step, cur)
        letters.append(step)
        if len(letters) > cap:
            raise LimitError(f"descent exceeded {cap} steps from {x!r}")


def depth(d: CoxeterDatum, x: Root, cap: int = DEFAULT_DESCENT_CAP) -> int:
    """Minimal word length sending x negative (greedy descent count + 1)."""
    letters, _ = _descent(d, x, cap)
    return len(letters) + 1


def minimal_word(d: CoxeterDatum, x: Root, cap: int = DEFAULT_DESCENT_CAP) -> tuple[Word, int]:
    """A shortest w with w^{-1} x simple, plus the index of that simple root.

    The word has length depth(x) - 1 and is reduced by construction; appending
    the final simple reflection gives a shortest word sending x negative.
    """
    letters, final = _descent(d, x, cap)
    return Word(letters=letters, reduced=True), final


def apply_word(d: CoxeterDatum, w: Word | Sequence[int], x: Root) -> Root:
    """Act by the product of simple reflections (rightmost letter first)."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    for a in reversed(letters):
        x = reflect_simple(d, a, x)
    return x


def inversion_set(d: CoxeterDatum, w: Word | Sequence[int]) -> list[Root]:
    """Positive roots sent negative by the inverse of a reduced word.

    For w = r_{a_1} ... r_{a_l} these are r_{a_1}...r_{a_{i-1}} e_{a_i}; a
    reduced word yields exactly l distinct positive roots.
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    out: list[Root] = []
    seen: set[tuple] = set()
    for i, a in enumerate(letters):
        root = d.simple_root(a)
        for j in range(i - 1, -1, -1):
            root = reflect_simple(d, letters[j], root)
        key = root_key(d, root)
        if key in seen:
            raise NotReducedError(f"word {letters!r} repeats inversion {root!r}")
        if root_sign(d, root) != 1:
            raise NotReducedError(f"word {letters!r} produced negative inversion {root!r}")
        seen.add(key)
        out.append(root)
    return out


def enumerate_roots(
    d: CoxeterDatum,
    max_depth: int,
    layer_cap: int = DEFAULT_LAYER_CAP,
) -> list[list[Root]]:
    """Positive roots grouped by depth, layer k holding the roots of depth k.

    Layer 1 is the simple roots; each next layer follows only the
    depth-increasing edges (negative pairing with the reflecting simple
    root).  Enumeration stops early when a layer comes out empty, which
    happens exactly when the root system is finite.
    """
    if max_depth < 1:
        raise LimitError(f"max_depth must be >= 1, got {max_depth}")
    layers: list[list[Root]] = [[d.simple_root(i) for i in range(d.rank)]]
    seen = {root_key(d, x) for x in layers[0]}
    for _ in range(max_depth - 1):
        fresh: dict[tuple, Root] = {}
        for x in layers[-1]:
            for a in range(d.rank):
                if classify(pair_with_simple(d, x, a), d.tolerance) in NEGATIVE_CLASSES:
                    y = reflect_simple(d, a, x)
                    key = root_key(d, y)
                    if key not in seen and key not in fresh:
                        fresh[key] = y
        if not fresh:
            break
        if len(fresh) > layer_cap:
            raise LimitError(f"layer of size {len(fresh)} exceeds cap {layer_cap}")
        seen.update(fresh)
        layers.append(sorted(fresh.values()))
    return layers


def full_root_system(
    d: CoxeterDatum,
    depth_cap: int,
    probe_cap: int = 10_000,
) -> list[Root] | None:
    """All positive roots if enumeration self-terminates, else None.

    The probe aborts (returning None) once the root count exceeds probe_cap,
    so infinite systems are detected cheaply.
    """
    try:
        layers = enumerate_roots(d, depth_cap + 1, layer_cap=probe_cap)
    except LimitError:
        return None
    if len(layers) > depth_cap or sum(len(layer) for layer in layers) > probe_cap:
        return None
    return [x for layer in layers for x in layer]


@lru_cache(maxsize=None)
def precedes(d: CoxeterDatum, y: Root, x: Root) -> bool:
    """Whether y precedes x: x = wy with depth additive along some w.

    Decided by searching depth-decreasing simple-reflection paths from x; a
    length-l witness must lose exactly one unit of depth per letter, so the
    monotone search is exhaustive.
    """
    ky = root_key(d, y)
    target = depth(d, y)
    seen: set[tuple] = set()
    stack = [x]
    while stack:
        z = stack.pop()
        kz = root_key(d, z)
        if kz in seen:
            continue
        seen.add(kz)
        if kz == ky:
            return True
        if depth(d, z) <= target:
            continue
        for a in range(d.rank):
            if classify(pair_with_simple(d, z, a), d.tolerance) in POSITIVE_CLASSES:
                stack.append(reflect_simple(d, a, z))
    return False


def positive_roots_upto(d: CoxeterDatum, depth_cap: int) -> list[Root]:
    """Flattened enumeration convenience used by the law and oracle suites."""
    return [x for layer in enumerate_roots(d, depth_cap) for x in layer]
