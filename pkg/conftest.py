"""
Shared fixtures: cached catalog algebras and calculi, fields, seeded generators.
"""

from functools import lru_cache
from typing import Optional

import numpy as np
import pytest

from koszul_calculus.calculus import KoszulCalculus
from koszul_calculus.config import Config
from koszul_calculus.exact_linalg import make_field
from koszul_calculus.graded_algebra import GradedAlgebra, build_algebra
from koszul_calculus.presentation import catalog_presentation

# as_cubic cells grow fast with the weight window; tests use a smaller one
TEST_W_MAX = {'as_cubic': 7, 'tensor': 6}


@lru_cache(maxsize=None)
def load_algebra(spec: str, field: Optional[str] = None, w_max: Optional[int] = None) -> GradedAlgebra:
    presentation = catalog_presentation(spec, field)
    if w_max is None:
        w_max = TEST_W_MAX.get(spec.partition(':')[0], Config.default_bounds(presentation.g)[1])
    return build_algebra(presentation, w_max)


@lru_cache(maxsize=None)
def load_calculus(spec: str, coefficients: str = 'A', field: Optional[str] = None,
                  w_max: Optional[int] = None) -> KoszulCalculus:
    return KoszulCalculus(load_algebra(spec, field, w_max), coefficients)


@pytest.fixture
def algebra():
    """Factory: algebra('truncated:3', field=None, w_max=None)."""
    return load_algebra


@pytest.fixture
def calculus():
    """Factory: calculus('truncated:3', coefficients='A', field=None, w_max=None)."""
    return load_calculus


@pytest.fixture
def Q():
    return make_field('Q')


@pytest.fixture
def F7():
    return make_field('F:7')


@pytest.fixture
def rng():
    return np.random.default_rng(Config.SEED)
