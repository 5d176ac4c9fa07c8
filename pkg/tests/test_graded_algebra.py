import numpy as np
import pytest

from koszul_calculus.config import Config
from koszul_calculus.exceptions import ConfigurationError, ResourceCapExceeded
from koszul_calculus.graded_algebra import GroundField, build_algebra, nu, nu_additive
from koszul_calculus.presentation import catalog_presentation, parse_presentation

POLYNOMIAL = """
field Q
generators x y
degree 2
rel (x y) - (y x)
"""


@pytest.mark.parametrize('N,expected', [(2, [0, 1, 2, 3, 4]), (3, [0, 1, 3, 4, 6]), (5, [0, 1, 5, 6, 10])])
def test_nu(N, expected):
    assert [nu(p, N) for p in range(5)] == expected


def test_nu_additive_fails_only_for_two_odd_degrees():
    for p in range(5):
        for q in range(5):
            assert nu_additive(p, q, 3) == (p % 2 == 0 or q % 2 == 0)
            assert nu_additive(p, q, 2)


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_truncated_polynomial(algebra, N):
    A = algebra(f'truncated:{N}')
    assert A.is_finite and A.is_truncated
    assert A.dims() == [1] * N
    assert A.top_weight == N - 1
    assert [A.w_dim(p) for p in range(2 * N + 1)] == [1] * (2 * N + 1)


def test_full_relations_is_finite(algebra):
    A = algebra('full:2,3')
    assert A.dims() == [1, 2, 4]
    assert A.w_dim(3) == 8
    assert A.w_dim(4) == 16
    assert not A.is_truncated


def test_tensor_algebra_has_no_higher_w(algebra):
    A = algebra('tensor:2,3')
    assert not A.is_finite
    assert A.dims() == [2 ** m for m in range(A.w_max + 1)]
    assert A.w_dim(2) == 4
    assert A.w_dim(3) == 0
    assert A.w_dim(4) == 0


def test_cubic_algebra_dimensions(algebra):
    A = algebra('as_cubic:1,2,5')
    assert A.dims()[:5] == [1, 2, 4, 6, 9]
    assert A.w_dim(3) == 2
    assert A.w_dim(4) == 1


def test_commutative_polynomial_ring(Q):
    A = build_algebra(parse_presentation(POLYNOMIAL), 5)
    assert A.dims() == [m + 1 for m in range(6)]
    x, y = A.from_word((0,)), A.from_word((1,))
    assert A.multiply(x, y) == A.multiply(y, x)
    assert A.w_dim(2) == 1
    assert A.w_dim(3) == 0
    assert A.center_dim(range(4)) == {m: m + 1 for m in range(4)}


def test_truncated_products(algebra):
    A = algebra('truncated:3')
    x = A.from_word((0,))
    x2 = A.multiply(x, x)
    assert not x2.is_zero()
    assert A.multiply(x2, x).is_zero()
    assert A.multiply(A.unit(), x) == x


def test_product_table_matches_multiply(algebra):
    A = algebra('as_cubic:1,2,5')
    table = A.product_table(1, 2)
    for i in range(A.dim(1)):
        for j in range(A.dim(2)):
            product = A.multiply(A.basis_element(1, i), A.basis_element(2, j))
            assert np.all(table[i, j, :] == product.coords)


def test_euler_derivation(algebra):
    A = algebra('truncated:4')
    assert np.all(A.euler_derivation(2) == A.field.identity(1) * A.field(2))


def test_ground_field_module(algebra):
    k = GroundField(algebra('truncated:3'))
    assert [k.dim(m) for m in range(3)] == [1, 0, 0]
    assert k.lift(1, np.array([], dtype=object)) == {}


def test_weight_window_is_enforced(algebra):
    A = algebra('tensor:2,3')
    with pytest.raises(ResourceCapExceeded):
        A.dim(A.w_max + 1)


def test_tensor_cap_is_enforced(monkeypatch):
    monkeypatch.setattr(Config, 'TENSOR_CAP_G2', 4)
    with pytest.raises(ResourceCapExceeded):
        build_algebra(catalog_presentation('tensor:2,2'), 5)


def test_generator_cap_is_enforced():
    names = ' '.join(f'x{i}' for i in range(7))
    text = f'field Q\ngenerators {names}\ndegree 2\nrel (x0 x1)\n'
    with pytest.raises(ResourceCapExceeded):
        build_algebra(parse_presentation(text), 2)


def test_window_must_reach_relations():
    with pytest.raises(ConfigurationError):
        build_algebra(catalog_presentation('truncated:4'), 3)


def test_dependent_relations_are_removed():
    text = POLYNOMIAL + 'rel 2*(x y) - 2*(y x)\n'
    A = build_algebra(parse_presentation(text), 3)
    assert A.relations.dim == 1
    assert A.dims() == [1, 2, 3, 4]


@pytest.mark.parametrize('spec', ['point', 'truncated:2', 'truncated:4', 'full:2,3'])
def test_dims_stop_at_top_weight(algebra, spec):
    A = algebra(spec)
    assert len(A.dims()) == A.top_weight + 1
    assert all(A.dims())
    assert A.dim(A.top_weight + 1) == 0


def test_point_algebra(algebra):
    A = algebra('point')
    assert A.g == 0
    assert A.dims() == [1]
    assert A.w_dim(0) == 1
    assert A.w_dim(1) == 0
