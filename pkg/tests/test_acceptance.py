"""
End-to-end checks with the full trial counts: 200 operands per parity case,
50 homotopy instances, 100 operands per e_A operator.
"""

import pytest

from conftest import load_calculus
from koszul_calculus import cli
from koszul_calculus.bar_comparison import (
    ComparisonMorphism,
    class_morphism_check,
    closed_form_chi_truncated,
    non_morphism_witness,
)
from koszul_calculus.calculus import E_OPERATORS, cubic_associator_witness
from koszul_calculus.graded_algebra import nu
from koszul_calculus.koszul_complex import BimoduleComplex, KoszulComplex
from koszul_calculus.suites import SUITE_NAMES, run_suite

TRIALS = 200
HOMOTOPY_TRIALS = 50
NDIFF_TRIALS = 100
SEED = 20240611
PROPERTY_ALGEBRAS = [('truncated:3', 4), ('truncated:4', 4), ('as_cubic:1,2,5', 3)]
TRUNCATED = [2, 3, 4, 5]


def suite(calculus, name, p_max):
    return run_suite(name, calculus, seed=SEED, trials=TRIALS, homotopy_trials=HOMOTOPY_TRIALS,
                     ndiff_trials=NDIFF_TRIALS, p_max=p_max)


def by_name(result):
    return {prop.name: prop for prop in result.properties}


def expected_homology(N, p):
    if p == 0:
        return {w: 1 for w in range(N)}
    ells = range(N - 1) if p % 2 else range(1, N)
    return {nu(p, N) + ell: 1 for ell in ells}


def expected_cohomology(N, p):
    if p == 0:
        return {n: 1 for n in range(N)}
    ells = range(1, N) if p % 2 else range(N - 1)
    return {ell - nu(p, N): 1 for ell in ells}


# ---------------------------------------------------------------------------
# Dimension tables of k[x]/(x^N)
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('N', TRUNCATED)
@pytest.mark.parametrize('field', [None, 'F:101', 'F:1009'])
def test_truncated_homology_table(algebra, N, field):
    table = KoszulComplex(algebra(f'truncated:{N}', field)).hk_dims('homology', 5)
    for p in range(6):
        assert table.nonzero(p) == expected_homology(N, p)
    assert table.totals() == {0: N, 1: N - 1, 2: N - 1, 3: N - 1, 4: N - 1, 5: N - 1}


@pytest.mark.parametrize('N', TRUNCATED)
@pytest.mark.parametrize('field', [None, 'F:101', 'F:1009'])
def test_truncated_cohomology_table(algebra, N, field):
    table = KoszulComplex(algebra(f'truncated:{N}', field)).hk_dims('cohomology', 5)
    for p in range(6):
        assert table.nonzero(p) == expected_cohomology(N, p)


@pytest.mark.parametrize('N', TRUNCATED)
@pytest.mark.parametrize('field', [None, 'F:101', 'F:1009'])
def test_truncated_higher_tables(calculus, N, field):
    K = calculus(f'truncated:{N}', field=field)
    homology = K.higher_dims('homology', 4)
    cohomology = K.higher_dims('cohomology', 4)
    assert homology.nonzero(0) == {0: 1}
    assert cohomology.nonzero(0) == {N - 1: 1}
    for p in range(1, 5):
        assert homology.total(p) == 0
        assert cohomology.total(p) == 0


@pytest.mark.parametrize('N', TRUNCATED)
@pytest.mark.parametrize('field', [None, 'F:101', 'F:1009'])
def test_truncated_closed_forms(calculus, N, field):
    report = calculus(f'truncated:{N}', field=field).truncated_product_check(5)
    assert report['ok'], report['mismatches']
    assert report['checked']


@pytest.mark.parametrize('N', TRUNCATED)
@pytest.mark.parametrize('field', ['F:101', 'F:1009'])
def test_finite_fields_match_the_rationals(calculus, N, field):
    spec = f'truncated:{N}'
    for side in ('homology', 'cohomology'):
        rational = calculus(spec).complex.hk_dims(side, 5)
        modular = calculus(spec, field=field).complex.hk_dims(side, 5)
        assert modular.cells == rational.cells
        assert calculus(spec, field=field).higher_dims(side, 4).cells == calculus(spec).higher_dims(side, 4).cells


# ---------------------------------------------------------------------------
# Non-associativity on the cubic algebra
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('spec', ['as_cubic:1,2,5', 'as_cubic:1,3,5'])
def test_cubic_associator_witness(calculus, spec):
    witness = cubic_associator_witness(calculus(spec))
    assert witness['agrees']
    assert witness['nonzero']
    assert witness['outside_relations']


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('spec,p_max', PROPERTY_ALGEBRAS)
def test_leibniz_suite(calculus, spec, p_max):
    result = suite(calculus(spec), 'leibniz', p_max)
    assert result.ok, result.failed()
    props = by_name(result)
    for name in ('cup_leibniz', 'cap_leibniz_left', 'cap_leibniz_right'):
        for case in ('even-even', 'even-odd', 'odd-even', 'odd-odd'):
            prop = props[f'{name}:{case}']
            assert prop.trials == TRIALS or prop.detail.get('skipped')
    assert props['bK_squared'].trials == 2 * TRIALS
    assert props['d_squared'].trials


@pytest.mark.parametrize('spec,p_max', PROPERTY_ALGEBRAS)
def test_fundamental_suite(calculus, spec, p_max):
    result = suite(calculus(spec), 'fundamental', p_max)
    assert result.ok, result.failed()
    props = by_name(result)
    for case in ('even', 'odd'):
        assert props[f'fundamental_cochain:{case}'].trials == TRIALS
        assert props[f'fundamental_chain:{case}'].trials == TRIALS
        assert props[f'derivation_bracket:{case}'].trials == TRIALS


@pytest.mark.parametrize('spec,p_max', PROPERTY_ALGEBRAS[:2])
def test_brackets_suite(calculus, spec, p_max):
    result = suite(calculus(spec), 'brackets', p_max)
    assert result.ok, result.failed()
    assert by_name(result)['higher_leibniz'].trials


# ---------------------------------------------------------------------------
# Associativity
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('N', [3, 4])
def test_class_associators_vanish(calculus, N):
    report = calculus(f'truncated:{N}').class_associators_vanish(5)
    assert report['cup'] and report['cap']
    assert report['checked']


@pytest.fixture(scope='module')
def associativity_results():
    return {spec: suite(load_calculus(spec), 'associativity', p_max) for spec, p_max in PROPERTY_ALGEBRAS}


def test_associativity_suites_pass(associativity_results):
    for spec, result in associativity_results.items():
        assert result.ok, (spec, result.failed())


def test_homotopy_instance_counts(associativity_results):
    for spec, result in associativity_results.items():
        props = by_name(result)
        assert props['cup_associator_homotopy'].trials == HOMOTOPY_TRIALS, spec
        assert props['cap_homotopy_case3'].trials == HOMOTOPY_TRIALS, spec


# ---------------------------------------------------------------------------
# N-differential
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('spec,p_max', PROPERTY_ALGEBRAS)
def test_n_differential_suite(calculus, spec, p_max):
    result = suite(calculus(spec), 'n_differential', p_max)
    assert result.ok, result.failed()
    props = by_name(result)
    for operator in E_OPERATORS:
        assert props[f'nth_iterate:{operator}'].trials == NDIFF_TRIALS
    if spec.startswith('as_cubic'):
        assert props['second_iterate_witness'].ok
        assert result.data['constant_one_second_iterate_zero'] is False


# ---------------------------------------------------------------------------
# Koszulity
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('spec', ['truncated:2', 'truncated:3', 'truncated:4', 'truncated:5', 'full:2,3', 'tensor:2,3'])
def test_koszul_up_to_bounds(algebra, spec):
    A = algebra(spec)
    p_max = 6 if A.g == 1 else 5
    report = BimoduleComplex(A).koszulity_report(p_max, A.w_max)
    assert report.verdict == 'KOSZUL_UP_TO_BOUNDS', report.nonzero_cells
    assert report.degree_zero_ok


@pytest.mark.parametrize('spec', ['as_cubic:1,2,5', 'point', 'full:2,2', 'tensor:3,2'])
def test_low_degree_homology_of_every_catalog_algebra(algebra, spec):
    A = algebra(spec)
    report = BimoduleComplex(A).koszulity_report(1, min(A.w_max, 4))
    assert report.degree_zero_ok
    assert not report.nonzero_cells


# ---------------------------------------------------------------------------
# Comparison morphism
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('N', [3, 4])
def test_comparison_morphism(calculus, N):
    K = calculus(f'truncated:{N}')
    chi = ComparisonMorphism(K.algebra).build(5)
    for p in range(6):
        assert closed_form_chi_truncated(K.algebra, p) == chi.generator(p, 0)
    checks = chi.verify(5)
    assert checks['commuting_squares'] and checks['chain_squares']
    assert checks['cochain_squares'] and checks['injective']
    witness = non_morphism_witness(chi)
    assert witness['cup_witness'] and witness['cap_witness']
    morphism = class_morphism_check(chi, K, 4)
    assert morphism['ok']
    assert morphism['cup_checked'] and morphism['cap_checked']


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------

def test_reports_are_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        run = []
        for name in SUITE_NAMES:
            code = cli.main(['verify', name, '--algebra', 'truncated:3', '--pmax', '4',
                             '--trials', '20', '--homotopy-trials', '10', '--ndiff-trials', '10',
                             '--format', 'json'])
            assert code == 0
            run.append(capsys.readouterr().out)
        outputs.append(run)
    assert outputs[0] == outputs[1]
