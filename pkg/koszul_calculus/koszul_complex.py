"""
Koszul Complex
==============
The bimodule complex K(A) with K_p = A ⊗ W_{ν(p)} ⊗ A, the Koszul chain and
cochain complexes with coefficients in A or k, their homology per weight and
Koszulity certification up to bounds.

Notes:
- A p-chain of total weight w is a matrix (dim M_{w−ν(p)} x dim W_{ν(p)});
  its flattened coordinates are algebra-index major
- A p-cochain of internal weight n is a matrix (dim M_{ν(p)+n} x dim W_{ν(p)})
- Chain cells are indexed by total weight w, cochain cells by internal weight n
- For infinite-dimensional A every table is windowed by w_max and labeled as such
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from sympy.polys.matrices import DomainMatrix

from koszul_calculus.exact_linalg import (
    Field,
    HomologyBasis,
    homology,
    is_zero,
    rank,
    stack_columns,
)
from koszul_calculus.exceptions import ConfigurationError, NonComposable, NotAComplex
from koszul_calculus.graded_algebra import GradedAlgebra, GroundField, nu
from koszul_calculus.logger import get_logger
from koszul_calculus.terms import (
    TermEvaluator,
    bimodule_d_terms,
    chain_bK_terms,
    cochain_bK_terms,
)

logger = get_logger()

COEFFICIENTS = ('A', 'k')
SIDES = ('homology', 'cohomology')


# ---------------------------------------------------------------------------
# Chains and cochains
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KoszulCochain:
    """A weight-homogeneous linear map W_{ν(p)} → M_{ν(p)+n}."""

    p: int
    n: int
    matrix: np.ndarray = dataclass_field(repr=False)
    module: object = dataclass_field(repr=False)

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def flat(self) -> np.ndarray:
        return self.matrix.reshape(-1)

    def _check(self, other: 'KoszulCochain') -> None:
        if (self.p, self.n) != (other.p, other.n) or self.matrix.shape != other.matrix.shape:
            raise NonComposable(f'cochains ({self.p}, {self.n}) and ({other.p}, {other.n}) differ')

    def __add__(self, other: 'KoszulCochain') -> 'KoszulCochain':
        self._check(other)
        return KoszulCochain(self.p, self.n, self.matrix + other.matrix, self.module)

    def __sub__(self, other: 'KoszulCochain') -> 'KoszulCochain':
        self._check(other)
        return KoszulCochain(self.p, self.n, self.matrix - other.matrix, self.module)

    def scale(self, c) -> 'KoszulCochain':
        return KoszulCochain(self.p, self.n, self.matrix * c, self.module)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KoszulCochain):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and self.matrix.shape == other.matrix.shape \
            and bool(np.all(self.matrix == other.matrix))

    def __hash__(self) -> int:
        return hash((self.p, self.n))


@dataclass(frozen=True, eq=False)
class KoszulChain:
    """A weight-homogeneous element of M ⊗ W_{ν(p)} of total weight w."""

    p: int
    w: int
    matrix: np.ndarray = dataclass_field(repr=False)
    module: object = dataclass_field(repr=False)

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def flat(self) -> np.ndarray:
        return self.matrix.reshape(-1)

    def _check(self, other: 'KoszulChain') -> None:
        if (self.p, self.w) != (other.p, other.w) or self.matrix.shape != other.matrix.shape:
            raise NonComposable(f'chains ({self.p}, {self.w}) and ({other.p}, {other.w}) differ')

    def __add__(self, other: 'KoszulChain') -> 'KoszulChain':
        self._check(other)
        return KoszulChain(self.p, self.w, self.matrix + other.matrix, self.module)

    def __sub__(self, other: 'KoszulChain') -> 'KoszulChain':
        self._check(other)
        return KoszulChain(self.p, self.w, self.matrix - other.matrix, self.module)

    def scale(self, c) -> 'KoszulChain':
        return KoszulChain(self.p, self.w, self.matrix * c, self.module)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KoszulChain):
            return NotImplemented
        return (self.p, self.w) == (other.p, other.w) and self.matrix.shape == other.matrix.shape \
            and bool(np.all(self.matrix == other.matrix))

    def __hash__(self) -> int:
        return hash((self.p, self.w))


def null_chain(p: int, w: int, module) -> KoszulChain:
    """The zero chain of a negative degree."""
    return KoszulChain(p, w, np.empty((0, 0), dtype=object), module)


# ---------------------------------------------------------------------------
# Dimension tables
# ---------------------------------------------------------------------------

@dataclass
class DimensionTable:
    """Dimensions per (degree, weight) cell."""

    side: str
    coefficients: str
    cells: Dict[Tuple[int, int], int]
    windowed: bool = False
    label: str = 'HK'

    def degrees(self) -> List[int]:
        return sorted({p for p, _ in self.cells})

    def weights(self) -> List[int]:
        return sorted({w for _, w in self.cells})

    def total(self, p: int) -> int:
        return sum(d for (q, _), d in self.cells.items() if q == p)

    def totals(self) -> Dict[int, int]:
        return {p: self.total(p) for p in self.degrees()}

    def nonzero(self, p: int) -> Dict[int, int]:
        return {w: d for (q, w), d in sorted(self.cells.items()) if q == p and d}

    def to_frame(self) -> pd.DataFrame:
        weights = self.weights()
        rows = []
        for p in self.degrees():
            row = {w: self.cells.get((p, w), '') for w in weights}
            row['total'] = self.total(p)
            rows.append(row)
        frame = pd.DataFrame(rows, index=self.degrees(), columns=[*weights, 'total'])
        frame.index.name = 'p'
        return frame

    def to_payload(self) -> dict:
        return {
            'side': self.side,
            'coefficients': self.coefficients,
            'windowed': self.windowed,
            'cells': [
                {'p': p, 'weight': w, 'dim': d}
                for (p, w), d in sorted(self.cells.items())
            ],
            'totals': {str(p): t for p, t in self.totals().items()},
        }


# ---------------------------------------------------------------------------
# Koszul chain / cochain complexes
# ---------------------------------------------------------------------------

class KoszulComplex:
    """
    (M ⊗ W_{ν(•)}, b_K) and (Hom(W_{ν(•)}, M), b_K) for M = A or M = k.

    Differential matrices and homology cells are cached per cell.
    """

    def __init__(self, algebra: GradedAlgebra, coefficients: str = 'A'):
        if coefficients not in COEFFICIENTS:
            raise ConfigurationError(f'coefficients must be A or k, got {coefficients!r}')
        self.algebra = algebra
        self.field: Field = algebra.field
        self.N = algebra.N
        self.coefficients = coefficients
        self.module = algebra if coefficients == 'A' else GroundField(algebra)
        self.evaluator = TermEvaluator(algebra)
        self._cochain_d: Dict[Tuple[int, int], np.ndarray] = {}
        self._chain_d: Dict[Tuple[int, int], np.ndarray] = {}
        self._cohomology: Dict[Tuple[int, int], HomologyBasis] = {}
        self._homology: Dict[Tuple[int, int], HomologyBasis] = {}

    def nu(self, p: int) -> int:
        return nu(p, self.N)

    # ------------------------------------------------------------------
    # Cell shapes and windows
    # ------------------------------------------------------------------

    def cochain_shape(self, p: int, n: int) -> Tuple[int, int]:
        v = self.nu(p)
        return self.module.dim(v + n), self.algebra.w_dim(v)

    def chain_shape(self, p: int, w: int) -> Tuple[int, int]:
        v = self.nu(p)
        return self.module.dim(w - v), self.algebra.w_dim(v)

    def cochain_dim(self, p: int, n: int) -> int:
        a, b = self.cochain_shape(p, n)
        return a * b

    def chain_dim(self, p: int, w: int) -> int:
        a, b = self.chain_shape(p, w)
        return a * b

    @property
    def windowed(self) -> bool:
        return self.coefficients == 'A' and not self.algebra.is_finite

    def cochain_weights(self, p: int, higher: bool = False) -> List[int]:
        """Internal weights n of the computable cohomology cells in degree p."""
        v = self.nu(p)
        if self.coefficients == 'k':
            return [-v]
        if self.algebra.is_finite:
            return list(range(-v, self.algebra.top_weight - v + 1))
        ahead = self.nu(p + 2 if higher else p + 1)
        return list(range(-v, self.algebra.w_max - ahead + 1))

    def chain_weights(self, p: int) -> List[int]:
        """Total weights w of the computable homology cells in degree p."""
        v = self.nu(p)
        if self.coefficients == 'k':
            return [v]
        top = v + self.algebra.top_weight if self.algebra.is_finite else self.algebra.w_max
        return list(range(v, top + 1))

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def cochain(self, p: int, n: int, matrix) -> KoszulCochain:
        matrix = np.asarray(matrix, dtype=object)
        shape = self.cochain_shape(p, n)
        if matrix.shape != shape:
            matrix = matrix.reshape(shape)
        return KoszulCochain(p, n, matrix, self.module)

    def chain(self, p: int, w: int, matrix) -> KoszulChain:
        matrix = np.asarray(matrix, dtype=object)
        shape = self.chain_shape(p, w)
        if matrix.shape != shape:
            matrix = matrix.reshape(shape)
        return KoszulChain(p, w, matrix, self.module)

    def zero_cochain(self, p: int, n: int) -> KoszulCochain:
        return KoszulCochain(p, n, self.field.zeros(self.cochain_shape(p, n)), self.module)

    def zero_chain(self, p: int, w: int) -> KoszulChain:
        return KoszulChain(p, w, self.field.zeros(self.chain_shape(p, w)), self.module)

    def unit_cochain(self) -> KoszulCochain:
        """The degree-0 cochain 1 ∈ M_0."""
        matrix = self.field.zeros(self.cochain_shape(0, 0))
        matrix[0, 0] = self.field.one
        return KoszulCochain(0, 0, matrix, self.module)

    def random_cochain(self, rng: np.random.Generator, p: int, n: int) -> KoszulCochain:
        return KoszulCochain(p, n, self.field.random_array(rng, self.cochain_shape(p, n)), self.module)

    def random_chain(self, rng: np.random.Generator, p: int, w: int) -> KoszulChain:
        return KoszulChain(p, w, self.field.random_array(rng, self.chain_shape(p, w)), self.module)

    # ------------------------------------------------------------------
    # Differentials
    # ------------------------------------------------------------------

    def cochain_bK(self, f: KoszulCochain) -> KoszulCochain:
        """b_K f, a (p+1)-cochain of the same internal weight."""
        terms = cochain_bK_terms(f.p, self.N)
        matrix = self.evaluator.cochain(terms, f.p + 1, f.n, {'f': f}, self.module)
        return KoszulCochain(f.p + 1, f.n, matrix, self.module)

    def chain_bK(self, z: KoszulChain) -> KoszulChain:
        """b_K z, a (p−1)-chain of the same total weight (empty below degree 0)."""
        p_out = z.p - 1
        if z.p <= 0:
            return null_chain(p_out, z.w, z.module)
        terms = chain_bK_terms(z.p, self.N)
        matrix = self.evaluator.chain(terms, z, p_out, z.w - self.nu(p_out), {}, self.module)
        return KoszulChain(p_out, z.w, matrix, self.module)

    def cochain_bK_matrix(self, p: int, n: int) -> np.ndarray:
        """Matrix of b_K from the (p, n) cochain cell to the (p+1, n) cell."""
        key = (p, n)
        if key not in self._cochain_d:
            rows = self.cochain_dim(p + 1, n)
            shape = self.cochain_shape(p, n)
            columns = []
            for index in np.ndindex(*shape):
                basis = self.field.zeros(shape)
                basis[index] = self.field.one
                columns.append(self.cochain_bK(KoszulCochain(p, n, basis, self.module)).flat())
            matrix = stack_columns(self.field, columns, rows)
            logger.debug('Cochain differential', p=p, n=n, shape=list(matrix.shape))
            self._cochain_d[key] = matrix
        return self._cochain_d[key]

    def chain_bK_matrix(self, p: int, w: int) -> np.ndarray:
        """Matrix of b_K from the (p, w) chain cell to the (p−1, w) cell."""
        key = (p, w)
        if key not in self._chain_d:
            if p == 0:
                return self.field.zeros((0, self.chain_dim(0, w)))
            rows = self.chain_dim(p - 1, w)
            shape = self.chain_shape(p, w)
            columns = []
            for index in np.ndindex(*shape):
                basis = self.field.zeros(shape)
                basis[index] = self.field.one
                columns.append(self.chain_bK(KoszulChain(p, w, basis, self.module)).flat())
            matrix = stack_columns(self.field, columns, rows)
            logger.debug('Chain differential', p=p, w=w, shape=list(matrix.shape))
            self._chain_d[key] = matrix
        return self._chain_d[key]

    # ------------------------------------------------------------------
    # Homology cells
    # ------------------------------------------------------------------

    def cohomology_cell(self, p: int, n: int) -> HomologyBasis:
        key = (p, n)
        if key not in self._cohomology:
            d_out = self.cochain_bK_matrix(p, n)
            if p == 0:
                d_in = self.field.zeros((self.cochain_dim(0, n), 0))
            else:
                d_in = self.cochain_bK_matrix(p - 1, n)
            self._cohomology[key] = homology(self.field, d_out, d_in)
        return self._cohomology[key]

    def homology_cell(self, p: int, w: int) -> HomologyBasis:
        key = (p, w)
        if key not in self._homology:
            d_out = self.chain_bK_matrix(p, w)
            d_in = self.chain_bK_matrix(p + 1, w)
            self._homology[key] = homology(self.field, d_out, d_in)
        return self._homology[key]

    def cell(self, side: str, p: int, weight: int) -> HomologyBasis:
        if side == 'cohomology':
            return self.cohomology_cell(p, weight)
        return self.homology_cell(p, weight)

    def weights(self, side: str, p: int, higher: bool = False) -> List[int]:
        return self.cochain_weights(p, higher) if side == 'cohomology' else self.chain_weights(p)

    def hk_dims(self, side: str, p_max: int, weights: Optional[List[int]] = None) -> DimensionTable:
        """
        HK_•(A, M) or HK^•(A, M) dimensions per (p, weight).

        Args:
            side: 'homology' (weights are total weights w) or 'cohomology'
                  (weights are internal weights n)
            p_max: Largest degree
            weights: Restrict to these weights (default: every computable weight)

        Returns:
            DimensionTable
        """
        if side not in SIDES:
            raise ConfigurationError(f'side must be homology or cohomology, got {side!r}')
        cells: Dict[Tuple[int, int], int] = {}
        for p in range(p_max + 1):
            for weight in self.weights(side, p):
                if weights is not None and weight not in weights:
                    continue
                cells[(p, weight)] = self.cell(side, p, weight).dim
        logger.info('Koszul dimensions computed', side=side, coefficients=self.coefficients,
                    p_max=p_max, cells=len(cells))
        return DimensionTable(side, self.coefficients, cells, self.windowed)

    # ------------------------------------------------------------------
    # Degree-zero cross-checks
    # ------------------------------------------------------------------

    def commutator_quotient_dim(self, m: int) -> int:
        """dim (A/[A,A])_m; [A,A]_m is spanned by the [u, x] with u ∈ A_{m−1}."""
        A = self.algebra
        dim = A.dim(m)
        if m == 0 or dim == 0 or A.g == 0:
            return dim
        blocks = [
            A.right_multiplication((k,), m - 1) - A.left_multiplication((k,), m - 1)
            for k in range(A.g)
        ]
        return dim - rank(self.field, np.concatenate(blocks, axis=1))

    def hochschild_zero_check(self) -> dict:
        """
        HK_0(A) against A/[A,A] and HK^0(A) against Z(A), weight by weight.

        Returns:
            Dict with per-weight rows and an overall 'ok' flag
        """
        if self.coefficients != 'A':
            raise ConfigurationError('the degree-zero check needs coefficients in A')
        A = self.algebra
        homology_rows, cohomology_rows = [], []
        for w in self.chain_weights(0):
            hk = self.homology_cell(0, w).dim
            homology_rows.append({'weight': w, 'HK_0': hk, 'A/[A,A]': self.commutator_quotient_dim(w)})
        center_weights = [n for n in self.cochain_weights(0) if A.is_finite or n + 1 <= A.w_max]
        centers = A.center_dim(center_weights)
        for n in center_weights:
            hk = self.cohomology_cell(0, n).dim
            cohomology_rows.append({'weight': n, 'HK^0': hk, 'Z(A)': centers[n]})
        ok = all(r['HK_0'] == r['A/[A,A]'] for r in homology_rows) and \
            all(r['HK^0'] == r['Z(A)'] for r in cohomology_rows)
        return {'homology': homology_rows, 'cohomology': cohomology_rows, 'ok': ok}


# ---------------------------------------------------------------------------
# Bimodule complex K(A)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BimoduleBlock:
    a: int
    b: int
    offset: int
    left_dim: int
    w_dim: int
    right_dim: int

    @property
    def size(self) -> int:
        return self.left_dim * self.w_dim * self.right_dim

    def index(self, i: int, r: int, j: int) -> int:
        return self.offset + (i * self.w_dim + r) * self.right_dim + j


@dataclass(frozen=True)
class BimoduleCell:
    """⊕_{a+ν(p)+b=w} A_a ⊗ W_{ν(p)} ⊗ A_b, blocks ordered by a."""

    p: int
    w: int
    blocks: Tuple[BimoduleBlock, ...]

    @property
    def dim(self) -> int:
        return sum(block.size for block in self.blocks)

    def block(self, a: int) -> Optional[BimoduleBlock]:
        for block in self.blocks:
            if block.a == a:
                return block
        return None


@dataclass
class KoszulityReport:
    p_max: int
    w_max: int
    cells: Dict[Tuple[int, int], int]
    degree_zero_ok: bool
    d_squared_ok: bool
    windowed: bool

    @property
    def nonzero_cells(self) -> List[Tuple[int, int, int]]:
        return [(p, w, d) for (p, w), d in sorted(self.cells.items()) if p >= 1 and d]

    @property
    def verdict(self) -> str:
        return 'NOT_KOSZUL' if self.nonzero_cells else 'KOSZUL_UP_TO_BOUNDS'

    def to_frame(self) -> pd.DataFrame:
        table = DimensionTable('homology', 'K(A)', self.cells, self.windowed)
        return table.to_frame()

    def to_payload(self) -> dict:
        return {
            'verdict': self.verdict,
            'p_max': self.p_max,
            'w_max': self.w_max,
            'degree_zero_ok': self.degree_zero_ok,
            'd_squared_ok': self.d_squared_ok,
            'windowed': self.windowed,
            'cells': [{'p': p, 'weight': w, 'dim': d} for (p, w), d in sorted(self.cells.items())],
            'nonzero_cells': [{'p': p, 'weight': w, 'dim': d} for p, w, d in self.nonzero_cells],
        }


class BimoduleComplex:
    """K(A) per total weight, with sparse exact differentials."""

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        self.N = algebra.N
        self.evaluator = TermEvaluator(algebra)
        self._cells: Dict[Tuple[int, int], BimoduleCell] = {}
        self._d: Dict[Tuple[int, int], DomainMatrix] = {}
        self._projections: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}

    def cell(self, p: int, w: int) -> BimoduleCell:
        key = (p, w)
        if key not in self._cells:
            A = self.algebra
            v = nu(p, self.N)
            blocks = []
            offset = 0
            if w >= v:
                w_dim = A.w_dim(v)
                for a in range(w - v + 1):
                    b = w - v - a
                    block = BimoduleBlock(a, b, offset, A.dim(a), w_dim, A.dim(b))
                    if block.size:
                        blocks.append(block)
                        offset += block.size
            self._cells[key] = BimoduleCell(p, w, tuple(blocks))
        return self._cells[key]

    def _projection(self, m: int, word_idx: int) -> List[Tuple[int, object]]:
        """Nonzero entries of the projection of a single word into A_m."""
        key = (m, word_idx)
        if key not in self._projections:
            column = self.algebra.quotient(m).matrix[:, word_idx]
            self._projections[key] = [(s, x) for s, x in enumerate(column) if x != 0]
        return self._projections[key]

    def bimodule_d(self, p: int, w: int) -> DomainMatrix:
        """
        d: K_p → K_{p−1} on the weight-w cells.

        Args:
            p: Degree (≥ 1)
            w: Total weight

        Returns:
            Sparse DomainMatrix (dim cell(p−1, w) x dim cell(p, w))
        """
        if p < 1:
            raise NonComposable('d is defined on K_p for p >= 1')
        key = (p, w)
        if key in self._d:
            return self._d[key]

        A = self.algebra
        source, target = self.cell(p, w), self.cell(p - 1, w)
        terms = bimodule_d_terms(p, self.N)
        frame = A.w_frame(nu(p, self.N))
        frame_out = A.w_frame(nu(p - 1, self.N))
        dok: Dict[Tuple[int, int], object] = {}

        for block in source.blocks:
            left_words = A.quotient(block.a).complement
            right_words = A.quotient(block.b).complement
            for i, left_word in enumerate(left_words):
                for r, row in enumerate(frame.rows):
                    for j, right_word in enumerate(right_words):
                        column = block.index(i, r, j)
                        images = self.evaluator.bimodule_images(
                            terms, row,
                            (block.a, {left_word: self.field.one}),
                            (block.b, {right_word: self.field.one}),
                        )
                        for coeff, a_out, lw, out_idx, b_out, rw in images:
                            r_out = frame_out.pivot_row.get(out_idx)
                            target_block = target.block(a_out)
                            if r_out is None or target_block is None:
                                continue
                            for s, x in self._projection(a_out, lw):
                                for t, y in self._projection(b_out, rw):
                                    row_idx = target_block.index(s, r_out, t)
                                    value = dok.get((row_idx, column), self.field.zero) + coeff * x * y
                                    dok[(row_idx, column)] = value

        dok = {k: v for k, v in dok.items() if v != 0}
        matrix = DomainMatrix.from_dok(dok, (target.dim, source.dim), self.field.domain)
        logger.debug('Bimodule differential', p=p, w=w, shape=[target.dim, source.dim], nnz=len(dok))
        self._d[key] = matrix
        return matrix

    def bimodule_d_dense(self, p: int, w: int) -> np.ndarray:
        matrix = self.bimodule_d(p, w)
        out = self.field.zeros(matrix.shape)
        for (i, j), x in matrix.to_dok().items():
            out[i, j] = x
        return out

    def _rank(self, p: int, w: int) -> int:
        if p < 1 or w < nu(p, self.N):
            return 0
        matrix = self.bimodule_d(p, w)
        if 0 in matrix.shape:
            return 0
        return matrix.rank()

    def check_d_squared(self, p: int, w: int) -> bool:
        if p < 2 or w < nu(p, self.N):
            return True
        outer, inner = self.bimodule_d(p - 1, w), self.bimodule_d(p, w)
        if 0 in outer.shape or 0 in inner.shape:
            return True
        return outer.matmul(inner).is_zero_matrix

    def homology_dim(self, p: int, w: int) -> int:
        return self.cell(p, w).dim - self._rank(p, w) - self._rank(p + 1, w)

    def koszulity_report(self, p_max: int, w_max: int) -> KoszulityReport:
        """
        Homology of K(A) on every cell with p ≤ p_max and w ≤ w_max.

        Raises:
            NotAComplex: d² ≠ 0 on some cell
        """
        A = self.algebra
        cells: Dict[Tuple[int, int], int] = {}
        degree_zero_ok = True
        for p in range(p_max + 1):
            for w in range(nu(p, self.N), w_max + 1):
                if not self.check_d_squared(p, w) or not self.check_d_squared(p + 1, w):
                    raise NotAComplex(f'd² is nonzero on K_{p} in weight {w}')
                cells[(p, w)] = self.homology_dim(p, w)
                logger.debug('Koszul bimodule cell', p=p, w=w, dim=cells[(p, w)])
            if p == 0:
                degree_zero_ok = all(cells[(0, w)] == A.dim(w) for w in range(w_max + 1))
        report = KoszulityReport(p_max, w_max, cells, degree_zero_ok, True,
                                 not A.is_finite)
        logger.info('Koszulity report', verdict=report.verdict, nonzero=len(report.nonzero_cells))
        return report
