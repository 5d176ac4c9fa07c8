import itertools

import numpy as np
import pytest

from koszul_calculus.calculus import ASSOCIATOR_KINDS, E_OPERATORS, cap_associator_witness, cubic_associator_witness
from koszul_calculus.exceptions import ConfigurationError, NotACocycle, ParityMismatch, WrongAlgebra
from koszul_calculus.exact_linalg import matmul
from koszul_calculus.graded_algebra import nu

CUBIC = 'as_cubic:1,2,5'

CUP_CELLS = {
    'truncated:3': [((0, 1), (1, 0)), ((1, 0), (1, -1)), ((2, -3), (1, 1)), ((2, -2), (2, -3)), ((1, 1), (3, -3))],
    CUBIC: [((0, 1), (1, 0)), ((1, 0), (1, 0)), ((2, -1), (1, 1)), ((1, 0), (2, 0)), ((0, 2), (2, -2))],
}

CAP_CELLS = {
    'truncated:3': [((0, 1), (2, 4)), ((1, 0), (2, 3)), ((1, -1), (3, 5)), ((2, -3), (3, 4)), ((2, -2), (4, 7)),
                    ((1, 1), (1, 2))],
    CUBIC: [((1, 0), (2, 4)), ((0, 1), (1, 3)), ((2, -1), (3, 6)), ((1, 0), (3, 6)), ((2, 0), (2, 5))],
}

COCHAIN_CELLS = {
    'truncated:3': [(0, 2), (1, -1), (1, 0), (2, -3), (2, -2), (3, -4)],
    'truncated:4': [(0, 1), (1, 0), (1, 2), (2, -4), (3, -3)],
    CUBIC: [(0, 1), (1, 0), (1, 1), (2, -1), (2, 0)],
}

CHAIN_CELLS = {
    'truncated:3': [(0, 1), (1, 2), (2, 4), (3, 5), (4, 7)],
    'truncated:4': [(1, 1), (2, 6), (3, 7)],
    CUBIC: [(1, 3), (2, 5), (3, 6), (3, 7)],
}


def random_cocycle(cx, rng, p, n):
    cycles = cx.cohomology_cell(p, n).cycles
    return cx.cochain(p, n, matmul(cx.field, cx.field.random_array(rng, cycles.dim), cycles.basis))


@pytest.mark.parametrize('spec', ['truncated:2', 'truncated:3', 'truncated:5', 'full:2,3', 'tensor:2,3', CUBIC])
def test_fundamental_cocycle(calculus, spec):
    K = calculus(spec)
    e = K.e_A()
    assert K.koszul_derivation_check(e)
    assert K.cup(e, e).is_zero()


@pytest.mark.parametrize('spec', sorted(CUP_CELLS))
def test_cup_leibniz(calculus, rng, spec):
    K = calculus(spec)
    for (p, n1), (q, n2) in CUP_CELLS[spec]:
        for _ in range(3):
            f = K.complex.random_cochain(rng, p, n1)
            g = K.complex.random_cochain(rng, q, n2)
            assert K.leibniz_check_cup(f, g).is_zero()


@pytest.mark.parametrize('spec', sorted(CAP_CELLS))
def test_cap_leibniz(calculus, rng, spec):
    K = calculus(spec)
    for (p, n), (q, w) in CAP_CELLS[spec]:
        for _ in range(3):
            f = K.complex.random_cochain(rng, p, n)
            z = K.complex.random_chain(rng, q, w)
            left, right = K.leibniz_check_cap(f, z)
            assert left.is_zero()
            assert right.is_zero()


def test_leibniz_with_ground_field_coefficients(calculus, rng):
    K = calculus(CUBIC, coefficients='k')
    f = K.complex.random_cochain(rng, 1, -1)
    g = K.complex.random_cochain(rng, 2, -3)
    assert K.leibniz_check_cup(f, g).is_zero()
    z = K.complex.random_chain(rng, 3, 4)
    left, right = K.leibniz_check_cap(f, z)
    assert left.is_zero() and right.is_zero()


@pytest.mark.parametrize('spec', sorted(COCHAIN_CELLS))
def test_fundamental_formula(calculus, rng, spec):
    K = calculus(spec)
    for p, n in COCHAIN_CELLS[spec]:
        f = K.complex.random_cochain(rng, p, n)
        assert K.fundamental_formula_check(f).is_zero()
    for q, w in CHAIN_CELLS[spec]:
        z = K.complex.random_chain(rng, q, w)
        assert K.fundamental_formula_chain_check(z).is_zero()


def test_derivation_extension_of_fundamental_cocycle_is_euler(calculus):
    K = calculus(CUBIC)
    D = K.derivation_extension(K.e_A())
    for m in range(4):
        assert np.all(D.matrix(m) == K.algebra.euler_derivation(m))


def test_derivation_brackets(calculus, rng):
    K = calculus('truncated:3')
    cx = K.complex
    for nf in (0, 1):
        f = random_cocycle(cx, rng, 1, nf)
        for p, n in [(0, 1), (1, 0), (2, -3), (2, -2)]:
            assert K.derbra_check(f, random_cocycle(cx, rng, p, n)).is_zero()
        for q, w in [(1, 1), (2, 4), (3, 5)]:
            cycles = cx.homology_cell(q, w).cycles
            z = cx.chain(q, w, matmul(cx.field, cx.field.random_array(rng, cycles.dim), cycles.basis))
            assert K.derbra_chain_check(f, z).is_zero()


def test_derivation_preconditions(calculus):
    K = calculus('truncated:3')
    with pytest.raises(ConfigurationError):
        K.koszul_derivation_check(K.complex.zero_cochain(2, 0))
    # x ↦ 1 is not killed by the relation x^3
    f = K.complex.cochain(1, -1, K.field.array([[1]]))
    with pytest.raises(NotACocycle):
        K.derivation_extension(f)


@pytest.mark.parametrize('spec', ['truncated:3', 'full:2,3', CUBIC])
def test_associator_homotopy_for_odd_cocycles(calculus, rng, spec):
    K = calculus(spec)
    cx = K.complex
    odd = [(1, n) for n in cx.cochain_weights(1) if cx.cohomology_cell(1, n).cycles.dim]
    triples = [cells for cells in itertools.product(odd, repeat=3)
               if K.algebra.is_finite or sum(n for _, n in cells) in cx.cochain_weights(3)]
    assert triples
    for cells in triples[:6]:
        f, g, h = (random_cocycle(cx, rng, p, n) for p, n in cells)
        u = K.associator_homotopy_ooo(f, g, h)
        assert (u.p, u.n) == (2, sum(n for _, n in cells))
        assert K.bK(u) == K.associator_cup(f, g, h)


def test_cap_homotopy_on_boundaries(calculus, rng):
    K = calculus(CUBIC)
    e = K.e_A()
    for w in (6, 7):
        z = K.complex.random_chain(rng, 3, w)
        assert K.cap_homotopy_case3(e, e, z) == K.associator_cap('g_f_z', e, e, z).scale(K.field(-1))


def test_homotopies_need_odd_degrees(calculus):
    K = calculus('truncated:3')
    e = K.e_A()
    even = K.complex.zero_cochain(2, -3)
    with pytest.raises(ParityMismatch):
        K.associator_homotopy_ooo(e, even, e)
    with pytest.raises(ParityMismatch):
        K.cap_homotopy_map(e, e, K.complex.zero_chain(3, 4))


def test_unknown_associator_and_operator(calculus):
    K = calculus('truncated:3')
    e = K.e_A()
    with pytest.raises(ConfigurationError):
        K.associator_cap('f_g_z', e, e, K.complex.zero_chain(2, 3))
    with pytest.raises(ConfigurationError):
        K.e_operator('e_cup_middle')


def test_cubic_witness(calculus):
    witness = cubic_associator_witness(calculus(CUBIC))
    assert witness['agrees']
    assert witness['nonzero']
    assert witness['outside_relations']


def test_cubic_witness_needs_a_cubic_algebra(calculus):
    with pytest.raises(WrongAlgebra):
        cubic_associator_witness(calculus('truncated:3'))


def test_cap_witness_reports_each_associator(calculus):
    witness = cap_associator_witness(calculus(CUBIC))
    assert set(witness) == set(ASSOCIATOR_KINDS)
    with pytest.raises(WrongAlgebra):
        cap_associator_witness(calculus('truncated:2'))


@pytest.mark.parametrize('operator', E_OPERATORS)
def test_nth_iterates_vanish(calculus, rng, operator):
    for spec in ('truncated:4', CUBIC):
        K = calculus(spec)
        if operator in ('e_cup_left', 'cup_e_right'):
            operand = K.complex.random_cochain(rng, 1, 0)
        else:
            operand = K.complex.random_chain(rng, 3, 6)
        iterates = K.N_differential_check(operator, operand)
        assert len(iterates) == K.N
        assert iterates[-1].is_zero()


def test_second_iterate_of_constant_one(calculus):
    K = calculus(CUBIC)
    iterates = K.N_differential_check('e_cup_left', K.constant_one())
    assert not iterates[1].is_zero()
    assert iterates[2].is_zero()


def test_induced_products_with_the_unit(calculus, rng):
    K = calculus('truncated:3')
    unit = K.cohomology_class(K.complex.unit_cochain())
    beta = K.cohomology_class(random_cocycle(K.complex, rng, 2, -3))
    assert np.all(K.induced_cup(unit, beta).coords == beta.coords)
    gamma = K.basis_class('homology', 3, 5, 0)
    assert np.all(K.induced_cap_left(unit, gamma).coords == gamma.coords)
    assert np.all(K.induced_cap_right(gamma, unit).coords == gamma.coords)


@pytest.mark.parametrize('N', [2, 3, 4])
def test_higher_dimensions_of_truncated(calculus, N):
    K = calculus(f'truncated:{N}')
    cohomology = K.higher_dims('cohomology', 4)
    homology = K.higher_dims('homology', 4)
    assert cohomology.nonzero(0) == {N - 1: 1}
    assert homology.nonzero(0) == {0: 1}
    for p in range(1, 5):
        assert cohomology.total(p) == 0
        assert homology.total(p) == 0


@pytest.mark.parametrize('spec,weights', [('truncated:3', range(3)), (CUBIC, range(4))])
def test_degree_zero_higher_cohomology(calculus, spec, weights):
    K = calculus(spec)
    for n in weights:
        assert K.degree_zero_higher_cohomology(n) == K.higher_cell('cohomology', 0, n).dim


def test_class_boundary_squares_to_zero(calculus):
    K = calculus(CUBIC)
    for p in range(3):
        reachable = set(K.complex.cochain_weights(p + 1, higher=True))
        for n in K.complex.cochain_weights(p, higher=True):
            if n in reachable:
                outer = K.boundary_operator('cohomology', p + 1, n)
                inner = K.boundary_operator('cohomology', p, n)
                assert not np.any(matmul(K.field, outer, inner) != 0)


def test_higher_leibniz(calculus):
    K = calculus('truncated:3')
    alpha = K.basis_class('cohomology', 1, 0, 0)
    assert K.higher_leibniz_check(alpha, K.basis_class('cohomology', 2, -3, 0))
    assert K.higher_leibniz_check(alpha, K.basis_class('homology', 3, 4, 0))


def test_brackets_and_symmetry_on_truncated(calculus):
    K = calculus('truncated:3')
    brackets = K.bracket_experiment(4)
    assert brackets['all_zero'] and brackets['proven_cases_zero']
    assert brackets['cup'] and brackets['cap']
    symmetry = K.graded_symmetry_experiment(4)
    assert symmetry == {
        'commutative': True,
        'graded_commutative': True,
        'symmetric': False,
        'graded_symmetric': True,
    }


def test_class_associators_vanish_on_truncated(calculus):
    result = calculus('truncated:3').class_associators_vanish(4)
    assert result['cup'] and result['cap']
    assert result['checked'] > 0


def test_higher_products_vanish_on_truncated(calculus):
    assert calculus('truncated:4').higher_products_vanish(4) == {'cup': True, 'cap': True}


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_truncated_closed_forms(calculus, N):
    result = calculus(f'truncated:{N}').truncated_product_check(4)
    assert result['ok'], result['mismatches']
    assert result['checked'] > 0


@pytest.mark.parametrize('field,graded', [(None, False), ('F:2', True)])
def test_truncated_cochain_facts(calculus, rng, field, graded):
    facts = calculus('truncated:3', field=field).truncated_cochain_facts(rng, 8, 3)
    assert facts['cup_associative']
    assert facts['cup_commutative']
    assert facts['cap_associative']
    assert facts['cup_graded_commutative'] is graded


def test_truncated_checks_reject_other_algebras(calculus, rng):
    with pytest.raises(WrongAlgebra):
        calculus(CUBIC).truncated_product_check(2)
    with pytest.raises(WrongAlgebra):
        calculus('full:2,3').truncated_cochain_facts(rng, 1, 2)


def test_nu_matches_calculus(calculus):
    K = calculus('truncated:4')
    assert [K.nu(p) for p in range(5)] == [nu(p, 4) for p in range(5)]
