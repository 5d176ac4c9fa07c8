import pytest

from koszul_calculus.exceptions import ConfigurationError, NonComposable
from koszul_calculus.graded_algebra import build_algebra, nu
from koszul_calculus.koszul_complex import BimoduleComplex, KoszulComplex
from koszul_calculus.presentation import parse_presentation

# xyx overlaps itself in xyxyx, so the algebra is not 3-Koszul
OVERLAP = """
field Q
generators x y
degree 3
rel (x y x)
"""


def truncated_homology(N, p):
    if p == 0:
        return {w: 1 for w in range(N)}
    powers = range(N - 1) if p % 2 else range(1, N)
    return {nu(p, N) + l: 1 for l in powers}


def truncated_cohomology(N, p):
    if p == 0:
        return {n: 1 for n in range(N)}
    powers = range(1, N) if p % 2 else range(N - 1)
    return {l - nu(p, N): 1 for l in powers}


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_truncated_homology(calculus, N):
    table = calculus(f'truncated:{N}').complex.hk_dims('homology', 5)
    for p in range(6):
        assert table.nonzero(p) == truncated_homology(N, p)
        assert table.total(p) == (N if p == 0 else N - 1)


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_truncated_cohomology(calculus, N):
    table = calculus(f'truncated:{N}').complex.hk_dims('cohomology', 5)
    for p in range(6):
        assert table.nonzero(p) == truncated_cohomology(N, p)


@pytest.mark.parametrize('field', ['F:7', 'F:101'])
def test_truncated_homology_over_prime_fields(calculus, field):
    table = calculus('truncated:3', field=field).complex.hk_dims('homology', 4)
    assert table.totals() == {0: 3, 1: 2, 2: 2, 3: 2, 4: 2}


@pytest.mark.parametrize('spec,expected', [
    ('truncated:3', [1, 1, 1, 1, 1]),
    ('as_cubic:1,2,5', [1, 2, 2, 1, 0]),
    ('tensor:2,3', [1, 2, 0, 0, 0]),
])
def test_ground_field_coefficients_give_w(calculus, spec, expected):
    cx = calculus(spec, coefficients='k').complex
    assert not cx.windowed
    homology = cx.hk_dims('homology', 4)
    cohomology = cx.hk_dims('cohomology', 4)
    assert [homology.total(p) for p in range(5)] == expected
    assert [cohomology.total(p) for p in range(5)] == expected
    assert list(cohomology.cells) == [(p, -nu(p, cx.N)) for p in range(5)]


def test_chain_d_squared(calculus, rng):
    cx = calculus('as_cubic:1,2,5').complex
    for p, w in [(2, 5), (3, 6), (2, 7), (3, 7)]:
        z = cx.random_chain(rng, p, w)
        assert cx.chain_bK(cx.chain_bK(z)).is_zero()


def test_cochain_d_squared(calculus, rng):
    cx = calculus('as_cubic:1,2,5').complex
    for p, n in [(0, 1), (1, 0), (1, 1), (2, -1)]:
        f = cx.random_cochain(rng, p, n)
        assert cx.cochain_bK(cx.cochain_bK(f)).is_zero()


def test_chain_below_degree_zero_is_null(calculus, rng):
    cx = calculus('truncated:3').complex
    boundary = cx.chain_bK(cx.random_chain(rng, 0, 2))
    assert boundary.p == -1
    assert boundary.is_zero()


def test_windows(calculus):
    tensor = calculus('tensor:2,3').complex
    assert tensor.windowed
    w_max = tensor.algebra.w_max
    assert tensor.cochain_weights(1) == list(range(-1, w_max - 3 + 1))
    assert tensor.cochain_weights(1, higher=True) == list(range(-1, w_max - 4 + 1))
    assert tensor.chain_weights(2) == list(range(3, w_max + 1))
    finite = calculus('truncated:4').complex
    assert finite.cochain_weights(2) == [-4, -3, -2, -1]
    assert finite.chain_weights(3) == [5, 6, 7, 8]


@pytest.mark.parametrize('spec', ['truncated:3', 'full:2,3', 'as_cubic:1,2,5', 'tensor:2,3'])
def test_degree_zero_against_commutators_and_center(calculus, spec):
    check = calculus(spec).complex.hochschild_zero_check()
    assert check['ok']
    assert check['homology'] and check['cohomology']


def test_degree_zero_check_needs_algebra_coefficients(calculus):
    with pytest.raises(ConfigurationError):
        calculus('truncated:3', coefficients='k').complex.hochschild_zero_check()


def test_rejects_unknown_coefficients_and_side(algebra):
    with pytest.raises(ConfigurationError):
        KoszulComplex(algebra('truncated:3'), 'B')
    with pytest.raises(ConfigurationError):
        KoszulComplex(algebra('truncated:3')).hk_dims('both', 2)


def test_mismatched_cells_do_not_add(calculus):
    cx = calculus('truncated:3').complex
    with pytest.raises(NonComposable):
        cx.zero_cochain(1, 0) + cx.zero_cochain(1, 1)
    with pytest.raises(NonComposable):
        cx.zero_chain(1, 1) - cx.zero_chain(2, 3)


def test_dimension_table_frame_and_payload(calculus):
    table = calculus('truncated:3').complex.hk_dims('homology', 2)
    frame = table.to_frame()
    assert list(frame.index) == [0, 1, 2]
    assert list(frame['total']) == [3, 2, 2]
    payload = table.to_payload()
    assert payload['totals'] == {'0': 3, '1': 2, '2': 2}
    assert {'p': 1, 'weight': 1, 'dim': 1} in payload['cells']


@pytest.mark.parametrize('spec,p_max,w_max', [
    ('truncated:3', 4, 9),
    ('truncated:4', 3, 9),
    ('full:2,3', 3, 6),
    ('tensor:2,3', 3, 5),
])
def test_koszul_algebras(algebra, spec, p_max, w_max):
    report = BimoduleComplex(algebra(spec)).koszulity_report(p_max, w_max)
    assert report.verdict == 'KOSZUL_UP_TO_BOUNDS'
    assert report.degree_zero_ok
    assert report.d_squared_ok
    assert report.nonzero_cells == []


def test_overlapping_monomial_relation_is_not_koszul():
    A = build_algebra(parse_presentation(OVERLAP), 6)
    report = BimoduleComplex(A).koszulity_report(3, 6)
    assert report.verdict == 'NOT_KOSZUL'
    assert report.degree_zero_ok
    assert any(p == 2 and w == 5 for p, w, _ in report.nonzero_cells)
    payload = report.to_payload()
    assert payload['verdict'] == 'NOT_KOSZUL'
    assert payload['windowed']


def test_bimodule_d_squared(algebra):
    K = BimoduleComplex(algebra('as_cubic:1,2,5'))
    assert K.check_d_squared(2, 5)
    assert K.check_d_squared(3, 6)
