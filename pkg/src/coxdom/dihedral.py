"""Infinite dihedral subsystems: canonical pairs and chain coordinates.

Every pair of roots with |(x, y)| >= 1 generates an infinite dihedral
reflection subgroup whose root subsystem is a pair of chains indexed by the
c-coefficients.  The canonical pair of the subsystem is found by greedy
depth reduction; an independent index-arithmetic construction is kept
alongside as a cross-check for inputs already given in frame coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .datum import CoxeterDatum
from .errors import (
    DomainError,
    FiniteDihedralError,
    NotInPlaneError,
    NotInSubsystemError,
)
from .roots import Root, depth, inner, negate, reflect_root, root_sign
from .scalar import AT_LEAST_ONE, AT_MOST_MINUS_ONE, Number, c_sequence, classify, tighten

ALPHA_SIDE = "alpha"
BETA_SIDE = "beta"


@dataclass(frozen=True)
class DihedralFrame:
    """Canonical pair (alpha, beta) of an infinite dihedral subsystem.

    q = -(alpha, beta) >= 1 parametrizes both chains through the
    c-coefficient recurrence; no angle is ever materialized.
    """

    alpha: Root
    beta: Root
    q: Number


@dataclass(frozen=True)
class ChainPosition:
    """Window index of a root inside a frame.

    alpha-side index i is the root c_i*alpha + c_{i-1}*beta, beta-side
    index i is c_i*alpha + c_{i+1}*beta; negative indices give the
    negative roots of the mirrored windows.
    """

    index: int
    family: str


@dataclass(frozen=True)
class DominancePairReport:
    """Structural verification of one dominance pair inside its frame."""

    frame: DihedralFrame
    x_position: ChainPosition
    y_position: ChainPosition
    inner_matches: bool
    consecutive: bool

    @property
    def passed(self) -> bool:
        return self.inner_matches and self.consecutive


def _positive_rep(d: CoxeterDatum, x: Root) -> Root:
    return x if root_sign(d, x) == 1 else negate(x)


def canonical_pair(d: CoxeterDatum, x: Root, y: Root) -> DihedralFrame:
    """Canonical roots of the subsystem generated by the reflections in x, y.

    Repeatedly replaces one member by (the positive representative of) its
    reflection in the other whenever that strictly reduces its depth; the
    depth sum strictly decreases, so the loop terminates, and the fixed
    point is the canonical pair.
    """
    if classify(inner(d, x, y), d.tolerance) not in AT_LEAST_ONE | AT_MOST_MINUS_ONE:
        raise FiniteDihedralError(
            f"|({x!r}, {y!r})| < 1 generates a finite dihedral subgroup"
        )
    x = _positive_rep(d, x)
    y = _positive_rep(d, y)
    while True:
        rx = _positive_rep(d, reflect_root(d, y, x))
        if depth(d, rx) < depth(d, x):
            x = rx
            continue
        ry = _positive_rep(d, reflect_root(d, x, y))
        if depth(d, ry) < depth(d, y):
            y = ry
            continue
        break
    alpha, beta = sorted((x, y))
    q = -inner(d, alpha, beta)
    if classify(-q, d.tolerance) not in AT_MOST_MINUS_ONE:
        raise FiniteDihedralError(
            f"canonicalization reached a finite pair with (a, b) = {-q!r}"
        )
    return DihedralFrame(alpha=alpha, beta=beta, q=q)


def _frame_coordinates(
    d: CoxeterDatum, frame: DihedralFrame, z: Root
) -> tuple[Number, Number]:
    """Solve z = s*alpha + t*beta, checking the residual on every coordinate."""
    alpha, beta = frame.alpha, frame.beta
    eps = d.tolerance
    pivot = None
    for p in range(len(alpha)):
        for r in range(p + 1, len(alpha)):
            det = alpha[p] * beta[r] - alpha[r] * beta[p]
            if abs(det) > eps:
                pivot = (p, r, det)
                break
        if pivot:
            break
    if pivot is None:
        raise NotInPlaneError("frame roots are not linearly independent")
    p, r, det = pivot
    num_s = z[p] * beta[r] - z[r] * beta[p]
    num_t = alpha[p] * z[r] - alpha[r] * z[p]
    if d.exact:
        s = tighten(Fraction(num_s) / Fraction(det))
        t = tighten(Fraction(num_t) / Fraction(det))
    else:
        s = num_s / det
        t = num_t / det
    scale = max(1, *(abs(c) for c in z))
    for j in range(len(z)):
        if abs(s * alpha[j] + t * beta[j] - z[j]) > eps * scale:
            raise NotInPlaneError(f"{z!r} is outside the span of the frame")
    return s, t


def chain_position(d: CoxeterDatum, frame: DihedralFrame, z: Root) -> ChainPosition:
    """Locate z in the frame's chains: its window index and family."""
    s, t = _frame_coordinates(d, frame, z)
    eps = d.tolerance
    bound = max(abs(s), abs(t))
    tol = eps * max(1, bound)
    i = 0
    while True:
        ci = c_sequence(frame.q, i, eps)
        if abs(ci - s) <= tol:
            break
        if abs(ci) > bound + 1 + tol:
            i = None
            break
        i = -i if i > 0 else -i + 1  # spiral 0, 1, -1, 2, -2, ...
    if i is None:
        raise NotInSubsystemError(f"{z!r}: coordinate {s!r} is no chain coefficient")
    if abs(c_sequence(frame.q, i + 1, eps) - t) <= tol:
        return ChainPosition(index=i, family=BETA_SIDE)
    if abs(c_sequence(frame.q, i - 1, eps) - t) <= tol:
        return ChainPosition(index=i, family=ALPHA_SIDE)
    raise NotInSubsystemError(f"{z!r}: coordinates ({s!r}, {t!r}) match no window")


def position_root(d: CoxeterDatum, frame: DihedralFrame, pos: ChainPosition) -> Root:
    """Root at a chain position, as an ambient coefficient vector."""
    if pos.family == BETA_SIDE:
        s = c_sequence(frame.q, pos.index, d.tolerance)
        t = c_sequence(frame.q, pos.index + 1, d.tolerance)
    elif pos.family == ALPHA_SIDE:
        s = c_sequence(frame.q, pos.index, d.tolerance)
        t = c_sequence(frame.q, pos.index - 1, d.tolerance)
    else:
        raise DomainError(f"unknown chain family {pos.family!r}")
    return tuple(s * a + t * b for a, b in zip(frame.alpha, frame.beta))


def dihedral_roots(
    d: CoxeterDatum,
    frame: DihedralFrame,
    i_min: int,
    i_max: int,
) -> list[tuple[ChainPosition, Root]]:
    """Both chains' roots for window indices i_min..i_max inclusive."""
    if i_min > i_max:
        raise DomainError(f"empty index range {i_min}..{i_max}")
    out = []
    for i in range(i_min, i_max + 1):
        for family in (ALPHA_SIDE, BETA_SIDE):
            pos = ChainPosition(index=i, family=family)
            out.append((pos, position_root(d, frame, pos)))
    return out


def canonical_positions(
    x_pos: ChainPosition, y_pos: ChainPosition
) -> tuple[ChainPosition, ChainPosition]:
    """Canonical pair of the subsystem generated by two frame-coordinate roots.

    Independent of the iterative depth reduction: pure index arithmetic with
    smallest residues, usable as a cross-check.  Inputs must be distinct
    positive roots of a common frame (beta-side index >= 0, alpha-side
    index >= 1).
    """
    fx, fy = x_pos.family, y_pos.family
    if fx != fy:
        alpha_pos = x_pos if fx == ALPHA_SIDE else y_pos
        beta_pos = y_pos if fx == ALPHA_SIDE else x_pos
        # Opposite chains pair at or below -1, so the inputs are canonical.
        return alpha_pos, beta_pos
    if x_pos.index == y_pos.index:
        raise DomainError("canonical pair needs two distinct roots")
    if fx == BETA_SIDE:
        m, n = sorted((x_pos.index, y_pos.index), reverse=True)
        step = m - n
        i = (-m) % step or step  # smallest positive residue
        j = m % step  # smallest non-negative residue
        return ChainPosition(index=i, family=ALPHA_SIDE), ChainPosition(
            index=j, family=BETA_SIDE
        )
    # Alpha-side windows i correspond to chain parameter i - 1.
    m, n = sorted((x_pos.index - 1, y_pos.index - 1), reverse=True)
    step = m - n
    p = m % step
    s = (-m) % step or step
    return ChainPosition(index=p + 1, family=ALPHA_SIDE), ChainPosition(
        index=s - 1, family=BETA_SIDE
    )


def verify_dominance_pair(d: CoxeterDatum, x: Root, y: Root) -> DominancePairReport:
    """Check a dominance pair against the rank-2 structure theory.

    For genuine dominance pairs the canonical pair must recover the inner
    product (up to sign) and the two roots must occupy consecutive windows
    of the same chain.
    """
    frame = canonical_pair(d, x, y)
    x_pos = chain_position(d, frame, x)
    y_pos = chain_position(d, frame, y)
    eps = max(d.tolerance, 1e-9) if not d.exact else 0
    inner_matches = abs(frame.q - inner(d, x, y)) <= eps
    consecutive = x_pos.family == y_pos.family and x_pos.index == y_pos.index + 1
    return DominancePairReport(
        frame=frame,
        x_position=x_pos,
        y_position=y_pos,
        inner_matches=inner_matches,
        consecutive=consecutive,
    )
