import pytest

from coxdom.errors import LimitError
from coxdom.oracle import (
    act,
    cayley_ball,
    depth_oracle,
    dominance_oracle,
    negativity_masks,
    nset_oracle,
    simple_reflection_matrix,
)
from coxdom.roots import (
    apply_word,
    depth,
    inversion_set,
    positive_roots_upto,
    root_key,
    root_sign,
)


def test_simple_reflection_matrix_matches_reflect(tilde_a2):
    m = simple_reflection_matrix(tilde_a2, 1)
    assert act(m, (1, 0, 0)) == (1, 1, 0)
    assert act(m, (0, 1, 0)) == (0, -1, 0)


def test_ball_sizes_finite_group(a2):
    # |A2| = 6; the ball saturates and stops growing
    assert len(cayley_ball(a2, 2)) == 5
    assert len(cayley_ball(a2, 3)) == 6
    assert len(cayley_ball(a2, 10)) == 6


def test_ball_sizes_infinite_dihedral(tilde_a1):
    # two elements per length in the infinite dihedral group
    ball = cayley_ball(tilde_a1, 6)
    assert len(ball) == 13
    by_len = {}
    for e in ball:
        by_len.setdefault(e.length, 0)
        by_len[e.length] += 1
    assert by_len == {0: 1, **{k: 2 for k in range(1, 7)}}


def test_ball_words_act_consistently(universal3):
    for elem in cayley_ball(universal3, 4):
        for i in range(3):
            x = universal3.simple_root(i)
            assert act(elem.matrix, x) == apply_word(universal3, elem.word, x)


def test_ball_cap(universal3):
    with pytest.raises(LimitError):
        cayley_ball(universal3, 10, element_cap=50)


def test_dominance_oracle(tilde_a1):
    assert dominance_oracle(tilde_a1, (3, 2), (2, 1), 8).consistent
    refuted = dominance_oracle(tilde_a1, (2, 1), (3, 2), 8)
    assert not refuted.consistent
    w = refuted.witness
    assert root_sign(tilde_a1, act(w.matrix, (2, 1))) == -1
    assert root_sign(tilde_a1, act(w.matrix, (3, 2))) == 1


def test_depth_oracle(tilde_a2):
    for x in positive_roots_upto(tilde_a2, 5):
        assert depth_oracle(tilde_a2, x, 8) == depth(tilde_a2, x)
    assert depth_oracle(tilde_a2, (1, 0, 0), 0) is None


def test_nset_oracle_matches_inversion_set(universal3):
    for elem in cayley_ball(universal3, 4):
        if not elem.word:
            continue
        expect = {
            root_key(universal3, r)
            for r in inversion_set(universal3, tuple(reversed(elem.word)))
        }
        got = {root_key(universal3, r) for r in nset_oracle(universal3, elem, 6)}
        assert got == expect, elem.word


def test_nset_oracle_depth_cap(tilde_a1):
    elem = cayley_ball(tilde_a1, 5)[-1]
    with pytest.raises(LimitError):
        nset_oracle(tilde_a1, elem, elem.length - 1)


def test_negativity_masks_agree_with_action(tilde_a1):
    ball = cayley_ball(tilde_a1, 6)
    roots = positive_roots_upto(tilde_a1, 4)
    masks = negativity_masks(tilde_a1, ball, roots)
    for x in roots:
        mask = masks[root_key(tilde_a1, x)]
        for i, elem in enumerate(ball):
            expect = root_sign(tilde_a1, act(elem.matrix, x)) == -1
            assert bool(mask >> i & 1) == expect


def test_inversion_subset_criterion(tilde_a1):
    # l(w v^-1) + l(v) = l(w) exactly when N(v) is contained in N(w)
    d = tilde_a1
    ball = cayley_ball(d, 12)
    lengths = {e.matrix: e.length for e in ball}
    small = [e for e in ball if e.length <= 6]
    nsets = {
        e.word: {root_key(d, r) for r in nset_oracle(d, e, 6)} for e in small
    }
    gens = [simple_reflection_matrix(d, a) for a in range(d.rank)]

    def matmul(m, other):
        return tuple(
            tuple(sum(m[i][k] * other[k][j] for k in range(d.rank)) for j in range(d.rank))
            for i in range(d.rank)
        )

    for w in small:
        for v in small:
            inv = w.matrix
            for a in reversed(v.word):  # v^-1 is the reversed word
                inv = matmul(inv, gens[a])
            additive = lengths[inv] + v.length == w.length
            assert additive == (nsets[v.word] <= nsets[w.word]), (w.word, v.word)


def test_approx_mode_ball_dedup(b3):
    # finite group of order 48; float dedup must still saturate
    ball = cayley_ball(b3, 24)
    assert len(ball) == 48
