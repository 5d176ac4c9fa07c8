"""
Exact Linear Algebra
====================
Echelon forms, kernels, images, subspace lattice operations and homology of
two composable maps, over Q or a prime field F_p.

Matrices are numpy object arrays holding elements of a sympy domain (QQ or
GF(p)); every elimination is delegated to
sympy.polys.matrices.DomainMatrix, which works sparsely on the nonzero
entries.

Notes:
- Subspaces are always stored by their reduced row echelon basis, so equality
  of subspaces is equality of arrays
- Quotient complements are the non-pivot coordinates of the subspace
- Nothing here rounds: all arithmetic is exact
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from koszul_calculus.exceptions import (
    ConfigurationError,
    NonComposable,
    NotAComplex,
    NotMember,
)
from koszul_calculus.logger import get_logger

logger = get_logger()

ScalarLike = Union[int, Fraction, str]


class Field:
    """An exact ground field: Q or F_p."""

    def __init__(self, characteristic: int = 0):
        if characteristic and not isprime(characteristic):
            raise ConfigurationError(f'F_{characteristic}: modulus must be prime')
        self.characteristic = characteristic
        self.domain = GF(characteristic) if characteristic else QQ
        self.zero = self.domain.zero
        self.one = self.domain.one
        self.name = f'F:{characteristic}' if characteristic else 'Q'

    def __call__(self, value: ScalarLike):
        """
        Convert an int, Fraction or 'p/q' string into a field element.

        Args:
            value: Value to convert

        Returns:
            Domain element
        """
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            numerator = self.domain.convert(value.numerator)
            denominator = self.domain.convert(value.denominator)
            if denominator == self.zero:
                raise ConfigurationError(f'{value} is not defined over {self.name}')
            return numerator / denominator
        if isinstance(value, (int, np.integer)):
            return self.domain.convert(int(value))
        return self.domain.convert(value)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(('Field', self.characteristic))

    def __repr__(self) -> str:
        return f'Field({self.name})'

    def to_str(self, x) -> str:
        """Render an element for reports: '3/2' over Q, '0'..'p-1' over F_p."""
        if self.characteristic:
            return str(int(self.domain.to_int(x)) % self.characteristic)
        return str(self.domain.to_sympy(x))

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, self.zero, dtype=object)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def array(self, values) -> np.ndarray:
        """Convert a nested list of ScalarLike values into an object array."""
        raw = np.asarray(values, dtype=object)
        out = self.zeros(raw.shape)
        for index in np.ndindex(raw.shape):
            out[index] = self(raw[index])
        return out

    def random_element(self, rng: np.random.Generator, bound: int = 3):
        """Small random element: integers in [-bound, bound] over Q, uniform over F_p."""
        if self.characteristic:
            return self(int(rng.integers(0, self.characteristic)))
        return self(int(rng.integers(-bound, bound + 1)))

    def random_array(self, rng: np.random.Generator, shape) -> np.ndarray:
        out = self.zeros(shape)
        for index in np.ndindex(out.shape):
            out[index] = self.random_element(rng)
        return out


def make_field(spec: Optional[str], degree: Optional[int] = None) -> Field:
    """
    Build a field from a 'Q' / 'F:p' spec.

    Args:
        spec: Field spec ('Q', 'F:7', 'F7' or 'F 7'); None means Q
        degree: Relation degree N; F_p with p | N is rejected

    Returns:
        Field instance

    Raises:
        ConfigurationError: malformed spec, non-prime modulus, or p dividing N
    """
    if spec is None or spec.strip().upper() in ('Q', 'QQ'):
        return Field(0)

    text = spec.strip().upper().replace(' ', '').replace('_', ':')
    if not text.startswith('F'):
        raise ConfigurationError(f'Unknown field {spec!r}; use Q or F:p')
    digits = text[1:].lstrip(':')
    if not digits.isdigit():
        raise ConfigurationError(f'Unknown field {spec!r}; use Q or F:p')

    p = int(digits)
    field_ = Field(p)
    if degree is not None and degree % p == 0:
        raise ConfigurationError(f'characteristic {p} divides N = {degree}')
    return field_


# ---------------------------------------------------------------------------
# Matrix helpers
# ---------------------------------------------------------------------------

def is_zero(m: np.ndarray) -> bool:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return True
    return not any(x != 0 for x in m.flat)


def matmul(K: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that tolerates zero inner dimension."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape[-1] != b.shape[0]:
        raise NonComposable(f'cannot compose {a.shape} with {b.shape}')
    out_shape = a.shape[:-1] + b.shape[1:]
    if a.shape[-1] == 0 or 0 in out_shape:
        return K.zeros(out_shape)
    return a @ b


def to_domain_matrix(K: Field, m: np.ndarray) -> DomainMatrix:
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    dok = {}
    for i, j in zip(*np.nonzero(m != K.zero)):
        dok[(int(i), int(j))] = m[i, j]
    return DomainMatrix.from_dok(dok, (rows, cols), K.domain)


def from_domain_matrix(K: Field, dm: DomainMatrix) -> np.ndarray:
    out = K.zeros(dm.shape)
    for (i, j), value in dm.to_dok().items():
        out[i, j] = value
    return out


def rref(K: Field, m: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...], int]:
    """
    Reduced row echelon form.

    Args:
        K: Field
        m: Matrix (rows x cols)

    Returns:
        Tuple of (rref matrix, pivot columns, rank)
    """
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    if rows == 0 or cols == 0 or is_zero(m):
        return K.zeros((rows, cols)), (), 0
    reduced, pivots = to_domain_matrix(K, m).rref()
    pivots = tuple(int(p) for p in pivots)
    return from_domain_matrix(K, reduced), pivots, len(pivots)


def rank(K: Field, m: np.ndarray) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return to_domain_matrix(K, m).rank()


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of K^n stored by its reduced row echelon basis."""

    field: Field
    ambient_dim: int
    basis: np.ndarray = dataclass_field(repr=False)
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @classmethod
    def zero(cls, K: Field, n: int) -> 'Subspace':
        return cls(K, n, K.zeros((0, n)), ())

    @classmethod
    def full(cls, K: Field, n: int) -> 'Subspace':
        return cls(K, n, K.identity(n), tuple(range(n)))

    @classmethod
    def from_rref(cls, K: Field, basis: np.ndarray, pivots: Sequence[int]) -> 'Subspace':
        """Trusted constructor: basis must already be in reduced echelon form."""
        basis = np.asarray(basis, dtype=object)
        return cls(K, basis.shape[1], basis, tuple(int(p) for p in pivots))

    @classmethod
    def from_rows(cls, K: Field, rows: np.ndarray, ambient_dim: int) -> 'Subspace':
        """Span of the given row vectors."""
        rows = np.asarray(rows, dtype=object)
        if rows.ndim == 1:
            rows = rows.reshape(1, ambient_dim) if ambient_dim else K.zeros((0, 0))
        if rows.shape[0] == 0:
            return cls.zero(K, ambient_dim)
        reduced, pivots, r = rref(K, rows)
        return cls(K, ambient_dim, reduced[:r].copy(), pivots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivots))

    def contains(self, v: np.ndarray) -> bool:
        try:
            coords_in_subspace(v, self)
        except NotMember:
            return False
        return True


def kernel(K: Field, m: np.ndarray) -> Subspace:
    """
    Kernel of m acting on column vectors.

    Args:
        K: Field
        m: Matrix (rows x cols)

    Returns:
        Subspace of K^cols
    """
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    reduced, pivots, r = rref(K, m)
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    if not free:
        return Subspace.zero(K, cols)

    rows = K.zeros((len(free), cols))
    for row, j in enumerate(free):
        rows[row, j] = K.one
        for i, p in enumerate(pivots):
            rows[row, p] = -reduced[i, j]
    return Subspace.from_rows(K, rows, cols)


def image(K: Field, m: np.ndarray) -> Subspace:
    """Column span of m."""
    m = np.asarray(m, dtype=object)
    return Subspace.from_rows(K, m.T, m.shape[0])


def _check_ambient(spaces: Sequence[Subspace]) -> int:
    if not spaces:
        raise ValueError('need at least one subspace')
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise NonComposable('subspaces live in different ambient spaces')
    return n


def _intersect_two(U: Subspace, W: Subspace) -> Subspace:
    K = U.field
    n = U.ambient_dim
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(K, n)
    if U.dim == n:
        return W
    if W.dim == n:
        return U
    stacked = np.concatenate([U.basis.T, -W.basis.T], axis=1)
    relations = kernel(K, stacked)
    if relations.dim == 0:
        return Subspace.zero(K, n)
    vectors = matmul(K, relations.basis[:, :U.dim], U.basis)
    return Subspace.from_rows(K, vectors, n)


def intersect(spaces: Sequence[Subspace]) -> Subspace:
    """
    Intersection of subspaces of a common ambient space.

    Args:
        spaces: Nonempty list of subspaces

    Returns:
        Echelonized intersection
    """
    _check_ambient(spaces)
    result = spaces[0]
    for other in spaces[1:]:
        result = _intersect_two(result, other)
        if result.dim == 0:
            break
    return result


def sum_subspaces(spaces: Sequence[Subspace]) -> Subspace:
    """Echelonized span of the union of bases."""
    n = _check_ambient(spaces)
    K = spaces[0].field
    nonzero = [s.basis for s in spaces if s.dim]
    if not nonzero:
        return Subspace.zero(K, n)
    return Subspace.from_rows(K, np.concatenate(nonzero, axis=0), n)


def coords_in_subspace(v: np.ndarray, S: Subspace) -> np.ndarray:
    """
    Coefficients of v in the echelon basis of S.

    Args:
        v: Vector of length S.ambient_dim
        S: Subspace

    Returns:
        Coefficient vector c with c · basis = v

    Raises:
        NotMember: if v is not in S
    """
    K = S.field
    v = np.asarray(v, dtype=object)
    if v.shape != (S.ambient_dim,):
        raise NonComposable(f'vector of length {v.shape} in ambient {S.ambient_dim}')
    c = v[list(S.pivots)] if S.dim else K.zeros(0)
    reconstructed = matmul(K, c, S.basis) if S.dim else K.zeros(S.ambient_dim)
    if not np.all(reconstructed == v):
        raise NotMember('vector is not in the subspace')
    return c


class QuotientMap:
    """
    The quotient K^n -> K^n / S with complement coordinates = non-pivots of S.

    project(v) keeps the non-pivot coordinates after eliminating the pivot
    coordinates with the echelon basis; section(c) places c on the non-pivots.
    """

    def __init__(self, S: Subspace):
        K = S.field
        n = S.ambient_dim
        pivot_set = set(S.pivots)
        self.field = K
        self.subspace = S
        self.ambient_dim = n
        self.complement: Tuple[int, ...] = tuple(j for j in range(n) if j not in pivot_set)
        self.dim = len(self.complement)

        P = K.zeros((self.dim, n))
        for row, j in enumerate(self.complement):
            P[row, j] = K.one
        if S.dim and self.dim:
            P[:, list(S.pivots)] = -S.basis[:, list(self.complement)].T
        self.matrix = P

    def project(self, v: np.ndarray) -> np.ndarray:
        return matmul(self.field, self.matrix, np.asarray(v, dtype=object))

    def section(self, coords: np.ndarray) -> np.ndarray:
        v = self.field.zeros(self.ambient_dim)
        if self.dim:
            v[list(self.complement)] = coords
        return v


def quotient_map(S: Subspace) -> QuotientMap:
    return QuotientMap(S)


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomologyBasis:
    """
    Homology of C_in --d_in--> C --d_out--> C_out at C.

    representatives are cycle rows; coordinate_matrix @ v gives the class
    coordinates of any cycle v.
    """

    field: Field
    representatives: np.ndarray = dataclass_field(repr=False)
    coordinate_matrix: np.ndarray = dataclass_field(repr=False)
    cycles: Subspace = dataclass_field(repr=False)
    boundaries: Subspace = dataclass_field(repr=False)

    @property
    def dim(self) -> int:
        return self.representatives.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.cycles.ambient_dim

    def coordinates(self, v: np.ndarray, check: bool = True) -> np.ndarray:
        """
        Class coordinates of a cycle.

        Args:
            v: Cycle vector
            check: Verify that v is a cycle first

        Returns:
            Coordinate vector of length dim
        """
        v = np.asarray(v, dtype=object)
        if check and not self.cycles.contains(v):
            raise NotMember('vector is not a cycle')
        return matmul(self.field, self.coordinate_matrix, v)

    def is_boundary(self, v: np.ndarray) -> bool:
        return self.boundaries.contains(np.asarray(v, dtype=object))

    def representative(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=object)
        return matmul(self.field, coords, self.representatives)


def homology(K: Field, d_out: np.ndarray, d_in: np.ndarray) -> HomologyBasis:
    """
    Homology ker(d_out) / im(d_in).

    Args:
        K: Field
        d_out: Outgoing differential (c_{out} x c)
        d_in: Incoming differential (c x c_{in})

    Returns:
        HomologyBasis

    Raises:
        NonComposable: shapes do not match
        NotAComplex: d_out · d_in != 0
    """
    d_out = np.asarray(d_out, dtype=object)
    d_in = np.asarray(d_in, dtype=object)
    if d_out.shape[1] != d_in.shape[0]:
        raise NonComposable(f'd_out {d_out.shape} and d_in {d_in.shape} do not compose')
    if not is_zero(matmul(K, d_out, d_in)):
        raise NotAComplex('d_out · d_in is nonzero')

    n = d_out.shape[1]
    cycles = kernel(K, d_out)
    boundaries = image(K, d_in)
    b_piv = list(boundaries.pivots)

    reduced = cycles.basis.copy()
    if cycles.dim and boundaries.dim:
        reduced = reduced - matmul(K, reduced[:, b_piv], boundaries.basis)
    classes = Subspace.from_rows(K, reduced, n)
    reps = classes.basis
    c_piv = list(classes.pivots)

    coord = K.zeros((len(c_piv), n))
    for i, j in enumerate(c_piv):
        coord[i, j] = K.one
    if boundaries.dim and c_piv:
        coord[:, b_piv] = -boundaries.basis[:, c_piv].T

    logger.debug('Homology cell', ambient=n, cycles=cycles.dim,
                 boundaries=boundaries.dim, classes=len(c_piv))
    return HomologyBasis(K, reps, coord, cycles, boundaries)


def stack_columns(K: Field, columns: Iterable[np.ndarray], rows: int) -> np.ndarray:
    """Assemble a matrix from column vectors of a known length."""
    columns = list(columns)
    out = K.zeros((rows, len(columns)))
    for j, col in enumerate(columns):
        if rows:
            out[:, j] = col
    return out
