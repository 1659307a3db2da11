import json
from fractions import Fraction

import pytest

from coxdom.datum import INFINITY, load_datum, make_datum, parse_datum
from coxdom.errors import ParseError, ValidationError


def test_exact_backend_selected_for_rational_gram(tilde_a1, tilde_a2, universal3):
    assert tilde_a1.exact
    assert tilde_a2.exact
    assert universal3.exact


def test_float_backend_for_order_four(b3):
    assert not b3.exact
    assert b3.tolerance > 0
    assert b3.gram[0][1] == pytest.approx(-(2 ** 0.5) / 2)


def test_gram_values(tilde_a2, hyperbolic):
    assert tilde_a2.gram[0][1] == Fraction(-1, 2)
    assert tilde_a2.gram[0][0] == 1
    assert hyperbolic.gram[0][1] == Fraction(-3, 2)
    assert hyperbolic.orders[0][1] == INFINITY


def test_simple_roots_are_standard_basis(tilde_a2):
    assert tilde_a2.simple_root(1) == (0, 1, 0)


def test_index_lookup(tilde_a2):
    assert tilde_a2.index("c") == 2
    with pytest.raises(ValidationError):
        tilde_a2.index("z")


def test_exact_flag_rejected_when_gram_irrational():
    with pytest.raises(ValidationError):
        make_datum(["a", "b"], [("a", "b", 5)], exact=True)


@pytest.mark.parametrize(
    "labels,bonds",
    [
        ([], []),
        (["a", "a"], []),
        (["a", "b"], [("a", "z", 3)]),
        (["a", "b"], [("a", "a", 3)]),
        (["a", "b"], [("a", "b", 1)]),
        (["a", "b"], [("a", "b", 3, Fraction(-2))]),  # weight on a finite bond
        (["a", "b"], [("a", "b", "inf", Fraction(-1, 2))]),  # weight > -1
        (["a", "b"], [("a", "b", 3), ("b", "a", 4)]),  # conflicting declarations
    ],
)
def test_validation_rejects(labels, bonds):
    with pytest.raises(ValidationError):
        make_datum(labels, bonds)


def test_rank_cap():
    labels = [f"g{i}" for i in range(11)]
    with pytest.raises(ValidationError):
        make_datum(labels, [])


def test_parse_datum_round_trip(tilde_a1):
    again = parse_datum(tilde_a1.serialize())
    assert again == tilde_a1


def test_parse_datum_weighted():
    d = parse_datum(
        json.dumps(
            {
                "labels": ["a", "b"],
                "bonds": [{"i": "a", "j": "b", "m": "inf", "weight": "-3/2"}],
            }
        )
    )
    assert d.gram[0][1] == Fraction(-3, 2)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"labels": "ab"}',
        '{"labels": ["a", "b"], "bonds": [{"i": "a", "j": "b"}]}',
        '{"labels": ["a", "b"], "bonds": {}}',
    ],
)
def test_parse_datum_rejects(text):
    with pytest.raises(ParseError):
        parse_datum(text)


def test_load_datum(tmp_path, tilde_a1):
    path = tmp_path / "d.json"
    path.write_text(tilde_a1.serialize())
    assert load_datum(path) == tilde_a1
