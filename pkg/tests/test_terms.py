import pytest

from koszul_calculus.exceptions import NonComposable
from koszul_calculus.graded_algebra import nu
from koszul_calculus.terms import (
    Coef,
    Lit,
    Op,
    associator_homotopy_terms,
    bimodule_d_terms,
    cap_homotopy_terms,
    cap_left_terms,
    cap_right_terms,
    chain_bK_terms,
    cochain_bK_terms,
    cup_terms,
    derivation_terms,
    term,
)


def contiguous_stop(pieces):
    """End of the slices when Lit and Op pieces tile [0, stop) in order."""
    stop = 0
    for piece in pieces:
        assert piece.start == stop
        stop = piece.stop
    return stop


def test_empty_literals_are_dropped():
    t = term(1, Lit(0, 0), Op('f', 0, 2), Lit(2, 2))
    assert t.pieces == (Op('f', 0, 2),)


def test_negative_slice():
    with pytest.raises(NonComposable):
        term(1, Lit(3, 1))


@pytest.mark.parametrize('N', [2, 3, 4])
@pytest.mark.parametrize('p', range(5))
def test_cochain_bK_tiles_the_next_degree(N, p):
    terms = cochain_bK_terms(p, N)
    assert len(terms) == (2 if p % 2 == 0 else N)
    for t in terms:
        assert contiguous_stop(t.pieces) == nu(p + 1, N)


@pytest.mark.parametrize('N', [2, 3, 4])
@pytest.mark.parametrize('p', range(1, 6))
def test_chain_bK_outputs_cover_the_previous_degree(N, p):
    for t in chain_bK_terms(p, N):
        s, e = t.out
        assert e - s == nu(p - 1, N)
        assert sum(1 for piece in t.pieces if isinstance(piece, Coef)) == 1


@pytest.mark.parametrize('N', [2, 3])
@pytest.mark.parametrize('p', range(1, 5))
def test_bimodule_d_matches_chain_bK_outputs(N, p):
    assert [t.out for t in bimodule_d_terms(p, N)] == [t.out for t in chain_bK_terms(p, N)]


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_cup_term_counts(N):
    assert len(cup_terms(0, 1, N)) == 1
    assert len(cup_terms(2, 2, N)) == 1
    assert len(cup_terms(1, 1, N)) == N * (N - 1) // 2


@pytest.mark.parametrize('N', [2, 3, 4])
@pytest.mark.parametrize('p,q', [(0, 0), (0, 1), (1, 2), (2, 1), (1, 1), (1, 3), (3, 3)])
def test_cup_terms_tile_the_product_degree(N, p, q):
    for t in cup_terms(p, q, N):
        assert contiguous_stop(t.pieces) == nu(p + q, N)


@pytest.mark.parametrize('N', [2, 3, 4])
@pytest.mark.parametrize('p,q', [(0, 2), (1, 1), (1, 2), (1, 4), (2, 3), (3, 4)])
def test_cap_outputs_have_the_difference_degree(N, p, q):
    for terms in (cap_left_terms(p, q, N), cap_right_terms(p, q, N)):
        assert terms
        for t in terms:
            s, e = t.out
            assert e - s == nu(q - p, N)


def test_caps_vanish_below_the_cochain_degree():
    assert cap_left_terms(3, 2, 3) == []
    assert cap_right_terms(3, 2, 3) == []
    assert cap_homotopy_terms(1, 1, 1, 3) == []


@pytest.mark.parametrize('N,count', [(2, 0), (3, 1), (4, 4), (5, 10)])
def test_associator_homotopy_counts(N, count):
    assert len(associator_homotopy_terms(1, 1, 1, N)) == count


@pytest.mark.parametrize('N', [3, 4])
@pytest.mark.parametrize('p,q,r', [(1, 1, 1), (1, 3, 1), (3, 1, 3)])
def test_associator_homotopy_tiles_one_degree_below(N, p, q, r):
    for t in associator_homotopy_terms(p, q, r, N):
        assert contiguous_stop(t.pieces) == nu(p + q + r - 1, N)


@pytest.mark.parametrize('N', [3, 4])
def test_cap_homotopy_outputs(N):
    terms = cap_homotopy_terms(1, 1, 3, N)
    assert len(terms) == sum(N - 2 - i - j for i in range(N - 2) for j in range(N - 2 - i))
    for t in terms:
        s, e = t.out
        assert e - s == nu(3 - 1 - 1, N)


@pytest.mark.parametrize('m', range(4))
def test_derivation_terms(m):
    terms = derivation_terms(m)
    assert len(terms) == m
    for t in terms:
        assert contiguous_stop(t.pieces) == m


def test_word_value_of_the_euler_derivation(calculus):
    K = calculus('truncated:3')
    length, words = K.evaluator.word_value(derivation_terms(2), (0, 0), {'f': K.e_A()})
    assert length == 2
    assert words == {0: K.field(2)}


def test_operand_slice_must_cover_its_degree(calculus):
    K = calculus('truncated:3')
    with pytest.raises(NonComposable):
        K.evaluator.word_value([term(1, Op('f', 0, 2))], (0, 0), {'f': K.e_A()})
