"""Numeric backend: exact rationals (or plain ints) and tolerance-tagged floats.

Every case split downstream reduces to where a number sits relative to the
three thresholds -1, 0 and 1, so the seven-way classification lives here,
together with the integer recurrence for the chain coefficients of an
infinite dihedral pair.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .errors import DomainError, ParseError

# Exact values are int or Fraction; approximate values are float.
Number = int | Fraction | float


class ScalarClass(Enum):
    BELOW_MINUS_ONE = "below_minus_one"
    MINUS_ONE = "minus_one"
    OPEN_NEGATIVE = "open_negative"
    ZERO = "zero"
    OPEN_POSITIVE = "open_positive"
    ONE = "one"
    ABOVE_ONE = "above_one"


NEGATIVE_CLASSES = frozenset({
    ScalarClass.BELOW_MINUS_ONE,
    ScalarClass.MINUS_ONE,
    ScalarClass.OPEN_NEGATIVE,
})
POSITIVE_CLASSES = frozenset({
    ScalarClass.OPEN_POSITIVE,
    ScalarClass.ONE,
    ScalarClass.ABOVE_ONE,
})
AT_LEAST_ONE = frozenset({ScalarClass.ONE, ScalarClass.ABOVE_ONE})
AT_MOST_MINUS_ONE = frozenset({ScalarClass.MINUS_ONE, ScalarClass.BELOW_MINUS_ONE})


def classify(t: Number, eps: Number = 0) -> ScalarClass:
    """Classify t against the thresholds -1, 0, 1.

    With eps = 0 the classification is exact; with eps > 0 a value within
    eps of a threshold is assigned the threshold's label.
    """
    if eps < 0:
        raise DomainError(f"tolerance must be nonnegative, got {eps!r}")
    if abs(t + 1) <= eps:
        return ScalarClass.MINUS_ONE
    if abs(t) <= eps:
        return ScalarClass.ZERO
    if abs(t - 1) <= eps:
        return ScalarClass.ONE
    if t < -1:
        return ScalarClass.BELOW_MINUS_ONE
    if t < 0:
        return ScalarClass.OPEN_NEGATIVE
    if t < 1:
        return ScalarClass.OPEN_POSITIVE
    return ScalarClass.ABOVE_ONE


def c_sequence(q: Number, i: int, eps: Number = 0) -> Number:
    """i-th chain coefficient for an infinite dihedral pair with -(a,b) = q.

    Defined by c_0 = 0, c_1 = 1 and c_{i+1} = 2q*c_i - c_{i-1}, extended to
    negative indices by c_{-i} = -c_i.  For q = 1 this is just c_i = i; for
    q > 1 it equals sinh(i*theta)/sinh(theta) with cosh(theta) = q, but the
    recurrence is used so the exact backend never touches transcendentals.
    """
    if classify(q, eps) not in AT_LEAST_ONE:
        raise DomainError(f"chain coefficients need q >= 1, got {q!r}")
    if i < 0:
        return -c_sequence(q, -i, eps)
    prev: Number = 0
    cur: Number = 1
    if i == 0:
        return prev
    for _ in range(i - 1):
        prev, cur = cur, 2 * q * cur - prev
    return cur


def parse_scalar(text: str) -> Fraction:
    """Parse a decimal string or a rational string "p/q" into a Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse scalar {text!r}") from exc


def format_scalar(v: Number) -> str:
    """Canonical textual form: "p/q" or integer string when exact, repr otherwise."""
    if isinstance(v, (int, Fraction)):
        return str(tighten(v))
    return repr(float(v))


def tighten(v: Number) -> Number:
    """Collapse an integral Fraction to a plain int (keeps arithmetic fast)."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v
