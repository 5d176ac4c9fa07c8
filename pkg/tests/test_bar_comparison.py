import numpy as np
import pytest

from koszul_calculus.bar_comparison import (
    BarComplex,
    build_chi,
    class_morphism_check,
    closed_form_chi_truncated,
    non_morphism_witness,
)
from koszul_calculus.exact_linalg import matmul
from koszul_calculus.exceptions import ConfigurationError, WrongAlgebra
from koszul_calculus.graded_algebra import nu


@pytest.mark.parametrize('spec', ['truncated:3', 'full:2,3'])
def test_contracting_homotopy(algebra, spec):
    bar = BarComplex(algebra(spec))
    for p in range(3):
        for w in range(min(bar.window, p + 2) + 1):
            assert bar.contracting_homotopy_check(p, w)


@pytest.mark.parametrize('spec', ['truncated:3', 'truncated:4'])
def test_bar_and_hochschild_differentials_square_to_zero(algebra, spec):
    A = algebra(spec)
    bar = BarComplex(A)
    K = A.field
    for p in range(1, 4):
        for w in bar.homology_weights(p):
            assert not np.any(matmul(K, bar.bar_differential(p, w), bar.bar_differential(p + 1, w)) != 0)
            assert not np.any(matmul(K, bar.hochschild_b(p, w), bar.hochschild_b(p + 1, w)) != 0)


def test_euler_cochain_is_a_cocycle(algebra):
    bar = BarComplex(algebra('truncated:4'))
    D = bar.euler_cochain()
    assert not np.any(matmul(bar.field, bar.hochschild_b_cochain(1, 0), bar.cochain_vector(D)) != 0)


@pytest.mark.parametrize('N', [2, 3, 4])
def test_hochschild_matches_koszul_on_truncated(algebra, N):
    A = algebra(f'truncated:{N}')
    bar = BarComplex(A)
    for side in ('homology', 'cohomology'):
        hh = bar.hochschild_dims(side, 3)
        hk = bar.koszul.hk_dims(side, 3)
        assert hh.label == 'HH'
        assert hh.cells == {key: hk.cells[key] for key in hh.cells}
    assert bar.hochschild_dims('cohomology', 0).total(0) == N


def test_hochschild_dims_rejects_side(algebra):
    with pytest.raises(ConfigurationError):
        BarComplex(algebra('truncated:3')).hochschild_dims('both', 1)


@pytest.mark.parametrize('N', [2, 3, 4])
def test_closed_form_matches_recursion(algebra, N):
    A = algebra(f'truncated:{N}')
    chi = build_chi(A, 5)
    for p in range(6):
        assert closed_form_chi_truncated(A, p) == chi.generator(p, 0)


@pytest.mark.parametrize('spec,p_max', [('truncated:3', 4), ('full:2,3', 2), ('tensor:2,3', 2)])
def test_comparison_morphism(algebra, spec, p_max):
    A = algebra(spec, w_max=5) if spec.startswith('tensor') else algebra(spec)
    checks = build_chi(A, p_max).verify(p_max)
    assert checks['cells'] > 0
    assert checks['commuting_squares']
    assert checks['chain_squares']
    assert checks['cochain_squares']
    assert checks['injective']


@pytest.mark.parametrize('spec', ['truncated:3', 'full:2,3'])
def test_low_degree_isomorphisms(algebra, spec):
    iso = build_chi(algebra(spec), 2).low_degree_iso_check()
    assert iso['ok']
    assert {row['p'] for row in iso['cells']} == {0, 1}
    assert not iso['windowed']


def test_comparison_is_the_identity_in_degree_zero(algebra):
    A = algebra('truncated:3')
    chi = build_chi(A, 1)
    matrix = chi.chi_matrix(0, 2)
    assert matrix.shape[0] == matrix.shape[1]
    assert chi.injective(1, nu(1, 3) + 1)


@pytest.mark.parametrize('N', [3, 4])
def test_non_morphism_witness(algebra, N):
    witness = non_morphism_witness(build_chi(algebra(f'truncated:{N}'), 2))
    assert witness['ok']
    assert witness['chi_star_f_zero']
    assert witness['chi_star_cup'] == witness['chi_star_cup_expected']


def test_witness_and_closed_form_need_truncated(algebra):
    with pytest.raises(WrongAlgebra):
        non_morphism_witness(build_chi(algebra('truncated:2'), 2))
    with pytest.raises(WrongAlgebra):
        closed_form_chi_truncated(algebra('full:2,3'), 2)


def test_class_morphism_on_truncated(algebra, calculus):
    chi = build_chi(algebra('truncated:3'), 3)
    report = class_morphism_check(chi, calculus('truncated:3'), 3)
    assert report['ok']
    assert report['cup_checked'] > 0
    assert report['cap_checked'] > 0
