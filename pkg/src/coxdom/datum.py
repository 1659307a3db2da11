"""Coxeter datum: generator labels, bond matrix and the derived Gram matrix.

The datum is materialized over a basis indexed by the generators, so every
root has a unique coefficient vector and the zero-in-positive-cone pitfall of
a dependent simple system cannot occur.  The backend is exact (int/Fraction)
whenever every Gram entry is rational, which happens precisely when all
finite bonds have m in {2, 3}; other finite bonds force floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError
from .scalar import AT_MOST_MINUS_ONE, Number, classify, format_scalar, parse_scalar, tighten

#: Bond-order marker for an infinite bond.
INFINITY = 0

DEFAULT_TOLERANCE = 1e-9
DEFAULT_RANK_CAP = 10

_EXACT_ORDERS = {2, 3, INFINITY}


@dataclass(frozen=True)
class CoxeterDatum:
    """Validated Coxeter datum with its Gram matrix.

    Immutable and hashable; freely shareable.  Generator order is the file
    order and fixes all deterministic tie-breaking downstream.
    """

    labels: tuple[str, ...]
    orders: tuple[tuple[int, ...], ...]  # m_ij; INFINITY marks an infinite bond
    gram: tuple[tuple[Number, ...], ...]
    exact: bool
    tolerance: Number

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise ValidationError(f"unknown generator label {label!r}") from exc

    def gram_entry(self, i: int, j: int) -> Number:
        if not (0 <= i < self.rank and 0 <= j < self.rank):
            raise IndexError(f"generator index out of range: ({i}, {j})")
        return self.gram[i][j]

    def simple_root(self, i: int) -> tuple[Number, ...]:
        if not 0 <= i < self.rank:
            raise IndexError(f"generator index out of range: {i}")
        one: Number = 1 if self.exact else 1.0
        zero: Number = 0 if self.exact else 0.0
        return tuple(one if j == i else zero for j in range(self.rank))

    @property
    def key_digits(self) -> int:
        """Rounding digits for approximate-mode dedup keys."""
        if self.exact:
            return 0
        return max(1, math.ceil(-math.log10(float(self.tolerance))) - 2)

    def to_dict(self) -> dict:
        bonds = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.orders[i][j]
                if m == 2:
                    continue
                entry: dict = {"i": self.labels[i], "j": self.labels[j]}
                if m == INFINITY:
                    entry["m"] = "inf"
                    entry["weight"] = format_scalar(self.gram[i][j])
                else:
                    entry["m"] = m
                bonds.append(entry)
        return {"labels": list(self.labels), "bonds": bonds}

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def make_datum(
    labels: Sequence[str],
    bonds: Iterable[tuple],
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    exact: bool | None = None,
    rank_cap: int = DEFAULT_RANK_CAP,
) -> CoxeterDatum:
    """Build and validate a datum.

    bonds is an iterable of (label_i, label_j, m) or (label_i, label_j, m,
    weight) tuples; m is an integer >= 2, INFINITY, "inf" or math.inf.  A
    weight (a Fraction <= -1) is only meaningful on infinite bonds and
    defaults to -1.  Unlisted pairs get m = 2.
    """
    labels = tuple(str(lab) for lab in labels)
    rank = len(labels)
    if rank < 1:
        raise ValidationError("datum needs at least one generator")
    if rank > rank_cap:
        raise ValidationError(f"rank {rank} exceeds cap {rank_cap}")
    if len(set(labels)) != rank:
        raise ValidationError(f"duplicate generator labels in {labels!r}")
    pos = {lab: i for i, lab in enumerate(labels)}

    orders = [[2] * rank for _ in range(rank)]
    weights: dict[tuple[int, int], Fraction] = {}
    declared: dict[tuple[int, int], tuple] = {}
    for bond in bonds:
        if len(bond) == 3:
            li, lj, m = bond
            weight = None
        elif len(bond) == 4:
            li, lj, m, weight = bond
        else:
            raise ValidationError(f"bond must have 3 or 4 entries, got {bond!r}")
        for lab in (li, lj):
            if lab not in pos:
                raise ValidationError(f"bond references unknown label {lab!r}")
        i, j = pos[li], pos[lj]
        if i == j:
            raise ValidationError(f"bond joins {li!r} to itself")
        m = _normalize_order(m)
        if weight is not None:
            if m != INFINITY:
                raise ValidationError("weights are only allowed on infinite bonds")
            weight = Fraction(weight)
        if m == INFINITY and weight is None:
            weight = Fraction(-1)
        key = (min(i, j), max(i, j))
        if key in declared and declared[key] != (m, weight):
            raise ValidationError(
                f"conflicting declarations for bond {labels[key[0]]!r}-{labels[key[1]]!r}"
            )
        declared[key] = (m, weight)
        orders[i][j] = orders[j][i] = m
        if m == INFINITY:
            weights[key] = weight

    for key, w in weights.items():
        if classify(w) not in AT_MOST_MINUS_ONE:
            i, j = key
            raise ValidationError(
                f"infinite bond {labels[i]!r}-{labels[j]!r} needs weight <= -1, got {w}"
            )

    exact_possible = all(m in _EXACT_ORDERS for row in orders for m in row)
    if exact is None:
        exact = exact_possible
    elif exact and not exact_possible:
        raise ValidationError(
            "exact backend requires every finite bond to have m in {2, 3}"
        )

    gram = _build_gram(orders, weights, exact)
    for i in range(rank):
        for j in range(rank):
            assert gram[i][j] == gram[j][i]
        assert gram[i][i] == 1
    eff_tolerance: Number = 0 if exact else float(tolerance)
    if not exact and eff_tolerance <= 0:
        raise ValidationError("approximate backend needs a positive tolerance")
    return CoxeterDatum(
        labels=labels,
        orders=tuple(tuple(row) for row in orders),
        gram=gram,
        exact=exact,
        tolerance=eff_tolerance,
    )


def _normalize_order(m) -> int:
    if m in ("inf", "infinity"):
        return INFINITY
    if isinstance(m, float):
        if math.isinf(m):
            return INFINITY
        if not m.is_integer():
            raise ValidationError(f"bond order must be an integer or inf, got {m!r}")
        m = int(m)
    if not isinstance(m, int):
        raise ValidationError(f"bond order must be an integer or inf, got {m!r}")
    if m == INFINITY:
        return INFINITY
    if m < 2:
        raise ValidationError(f"bond order must be >= 2, got {m}")
    return m


def _build_gram(orders, weights, exact) -> tuple[tuple[Number, ...], ...]:
    rank = len(orders)
    gram = []
    for i in range(rank):
        row: list[Number] = []
        for j in range(rank):
            if i == j:
                row.append(1 if exact else 1.0)
                continue
            m = orders[i][j]
            if m == INFINITY:
                w = weights[(min(i, j), max(i, j))]
                row.append(tighten(w) if exact else float(w))
            elif exact:
                row.append({2: 0, 3: Fraction(-1, 2)}[m])
            else:
                row.append(-math.cos(math.pi / m))
        gram.append(tuple(row))
    return tuple(gram)


def parse_datum(
    text: str,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    exact: bool | None = None,
    rank_cap: int = DEFAULT_RANK_CAP,
) -> CoxeterDatum:
    """Parse the JSON-shaped datum file format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"datum file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("datum document must be a JSON object")
    labels = doc.get("labels")
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError('datum needs a "labels" list of strings')
    raw_bonds = doc.get("bonds", [])
    if not isinstance(raw_bonds, list):
        raise ParseError('"bonds" must be a list')
    bonds = []
    for entry in raw_bonds:
        if not isinstance(entry, dict) or "i" not in entry or "j" not in entry or "m" not in entry:
            raise ParseError(f'bond entries need "i", "j" and "m" keys: {entry!r}')
        m = entry["m"]
        if "weight" in entry:
            bonds.append((entry["i"], entry["j"], m, parse_scalar(entry["weight"])))
        else:
            bonds.append((entry["i"], entry["j"], m))
    return make_datum(labels, bonds, tolerance=tolerance, exact=exact, rank_cap=rank_cap)


def load_datum(path, **kwargs) -> CoxeterDatum:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_datum(handle.read(), **kwargs)
