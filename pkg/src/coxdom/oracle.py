"""Definitional brute force over a Cayley ball.

Group elements are materialized as matrices acting on the coefficient
space, deduplicated by matrix rather than by word, so no word-problem
machinery is needed.  The ball gives one-sided dominance verdicts: a
witness refutes dominance outright, while consistency over a finite ball
merely fails to refute it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .datum import CoxeterDatum
from .errors import LimitError
from .roots import Root, positive_roots_upto, root_key, root_sign
from .scalar import Number, tighten

DEFAULT_BALL_CAP = 200_000

Matrix = tuple[tuple[Number, ...], ...]


@dataclass(frozen=True)
class GroupElement:
    """A group element as its matrix, a shortest witness word, and its length."""

    matrix: Matrix
    word: tuple[int, ...]
    length: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of a ball search: consistent, or refuted with a witness."""

    consistent: bool
    witness: GroupElement | None = None


def simple_reflection_matrix(d: CoxeterDatum, a: int) -> Matrix:
    """Matrix of the a-th simple reflection on the coefficient space."""
    rows = []
    for i in range(d.rank):
        if i != a:
            rows.append(tuple(1 if j == i else 0 for j in range(d.rank)))
        else:
            rows.append(
                tuple(
                    tighten((1 if j == a else 0) - 2 * d.gram[a][j])
                    for j in range(d.rank)
                )
            )
    return tuple(rows)


def act(m: Matrix, x: Root) -> Root:
    return tuple(sum(row[j] * xj for j, xj in enumerate(x) if xj) for row in m)


def _matmul(m: Matrix, other: Matrix) -> Matrix:
    n = len(m)
    cols = list(zip(*other))
    return tuple(
        tuple(sum(m[i][k] * col[k] for k in range(n)) for col in cols)
        for i in range(n)
    )


def _matrix_key(d: CoxeterDatum, m: Matrix) -> tuple:
    if d.exact:
        return m
    digits = d.key_digits
    return tuple(tuple(round(float(v), digits) for v in row) for row in m)


@lru_cache(maxsize=8)
def cayley_ball(
    d: CoxeterDatum,
    max_len: int,
    element_cap: int = DEFAULT_BALL_CAP,
) -> tuple[GroupElement, ...]:
    """All distinct group elements of length <= max_len, in BFS order.

    Length equals the BFS layer, and the stored word is a shortest witness.
    """
    if max_len < 0:
        raise LimitError(f"max_len must be >= 0, got {max_len}")
    identity: Matrix = tuple(
        tuple(1 if i == j else 0 for j in range(d.rank)) for i in range(d.rank)
    )
    gens = [simple_reflection_matrix(d, a) for a in range(d.rank)]
    elements = [GroupElement(matrix=identity, word=(), length=0)]
    seen = {_matrix_key(d, identity)}
    frontier = elements[:]
    for length in range(1, max_len + 1):
        nxt: list[GroupElement] = []
        for elem in frontier:
            for a, gen in enumerate(gens):
                m = _matmul(elem.matrix, gen)
                key = _matrix_key(d, m)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(GroupElement(matrix=m, word=elem.word + (a,), length=length))
                if len(seen) > element_cap:
                    raise LimitError(f"Cayley ball exceeded cap {element_cap}")
        if not nxt:
            break
        elements.extend(nxt)
        frontier = nxt
    return tuple(elements)


def dominance_oracle(
    d: CoxeterDatum,
    x: Root,
    y: Root,
    max_len: int,
    element_cap: int = DEFAULT_BALL_CAP,
) -> Verdict:
    """Search the ball for an element sending x negative but y positive.

    A hit refutes dominance of y by x; no hit within the ball is merely
    consistent with it.  The BFS order makes any returned witness shortest.
    """
    for elem in cayley_ball(d, max_len, element_cap):
        if root_sign(d, act(elem.matrix, x)) == -1 and root_sign(d, act(elem.matrix, y)) == 1:
            return Verdict(consistent=False, witness=elem)
    return Verdict(consistent=True)


def depth_oracle(
    d: CoxeterDatum,
    x: Root,
    max_len: int,
    element_cap: int = DEFAULT_BALL_CAP,
) -> int | None:
    """Minimal length in the ball sending x negative; None when not found."""
    for elem in cayley_ball(d, max_len, element_cap):
        if root_sign(d, act(elem.matrix, x)) == -1:
            return elem.length
    return None


def nset_oracle(
    d: CoxeterDatum,
    w: GroupElement,
    depth_cap: int,
) -> list[Root]:
    """Inversion set of w by direct action on the enumerated positive roots.

    depth_cap must cover the length of w, since every inverted root has
    depth at most that length.
    """
    if depth_cap < w.length:
        raise LimitError(
            f"depth_cap {depth_cap} is below the element length {w.length}"
        )
    return [
        x
        for x in positive_roots_upto(d, depth_cap)
        if root_sign(d, act(w.matrix, x)) == -1
    ]


def negativity_masks(
    d: CoxeterDatum,
    elements: Sequence[GroupElement],
    roots: Sequence[Root],
) -> dict[tuple, int]:
    """Bitmask per root: bit i is set iff elements[i] sends the root negative.

    Lets large all-pairs dominance sweeps reduce to subset tests on ints.
    """
    masks: dict[tuple, int] = {}
    for x in roots:
        vec = tuple(tighten(c) for c in x)
        mask = 0
        for i, elem in enumerate(elements):
            if root_sign(d, act(elem.matrix, vec)) == -1:
                mask |= 1 << i
        masks[root_key(d, x)] = mask
    return masks
