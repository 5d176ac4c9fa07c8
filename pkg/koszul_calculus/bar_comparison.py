"""
Bar Comparison
==============
The normalized bar resolution B(A) with A-bar identified with A_+, Hochschild
(co)homology, the comparison morphism χ: K(A) → B(A) built from the extra
degeneracy, and its induced maps χ̃ on chains and χ* on cochains.

Elements of A ⊗ A_+^{⊗p} ⊗ A are sparse dicts keyed by slot tuples; a slot is
(weight, index of a basis element of A_weight).

Notes:
- Finite-dimensional A is handled exactly; otherwise every bar cell is
  windowed by Config.BAR_WEIGHT_CAP and labeled as such
- b_H on cochains carries the sign (−1)^{p+1} of b_K, so χ* commutes with
  the two coboundaries without correction
- χ_p on generators is cached; everything else is a per-cell matrix
"""

from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from koszul_calculus.config import Config
from koszul_calculus.exact_linalg import HomologyBasis, homology, is_zero, matmul, rank, stack_columns
from koszul_calculus.exceptions import ConfigurationError, ResourceCapExceeded, WrongAlgebra
from koszul_calculus.graded_algebra import GradedAlgebra, nu
from koszul_calculus.koszul_complex import (
    BimoduleComplex,
    DimensionTable,
    KoszulChain,
    KoszulCochain,
    KoszulComplex,
)
from koszul_calculus.logger import get_logger
from koszul_calculus.terms import TermEvaluator, bimodule_d_terms

logger = get_logger()

Slot = Tuple[int, int]
Key = Tuple[Slot, ...]
BarElement = Dict[Key, object]


def _compositions(total: int, lows: Sequence[int], high: int) -> Iterator[Tuple[int, ...]]:
    """Weight tuples with w_i ≥ lows[i], w_i ≤ high and Σ w_i = total."""
    if not lows:
        if total == 0:
            yield ()
        return
    rest_low = sum(lows[1:])
    for w in range(lows[0], min(high, total - rest_low) + 1):
        for tail in _compositions(total - w, lows[1:], high):
            yield (w,) + tail


def _add(acc: BarElement, key: Key, c) -> None:
    acc[key] = acc.get(key, 0) + c


def _prune(acc: BarElement) -> BarElement:
    return {k: c for k, c in acc.items() if c != 0}


@dataclass(frozen=True)
class BarCell:
    """A basis of one weight component, with its index."""

    p: int
    weight: int
    keys: Tuple = dataclass_field(repr=False)
    index: Dict = dataclass_field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.keys)

    @classmethod
    def from_keys(cls, p: int, weight: int, keys) -> 'BarCell':
        keys = tuple(keys)
        return cls(p, weight, keys, {k: i for i, k in enumerate(keys)})


@dataclass(frozen=True, eq=False)
class HochschildChain:
    """An element of A ⊗ A_+^{⊗p}, keyed by p+1 slots."""

    p: int
    w: int
    coeffs: BarElement = dataclass_field(repr=False)

    def is_zero(self) -> bool:
        return not any(c != 0 for c in self.coeffs.values())


@dataclass(frozen=True, eq=False)
class HochschildCochain:
    """A weight-homogeneous map A_+^{⊗p} → A, by its values on slot tuples."""

    p: int
    n: int
    values: Dict[Key, np.ndarray] = dataclass_field(repr=False)

    def value(self, key: Key) -> Optional[np.ndarray]:
        return self.values.get(key)

    def is_zero(self) -> bool:
        return all(is_zero(v) for v in self.values.values())


class BarComplex:
    """
    B(A), Hochschild chains A ⊗ A_+^{⊗•} and cochains Hom(A_+^{⊗•}, A).

    Cells and differentials are cached per (degree, weight).
    """

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        self.windowed = not algebra.is_finite
        if algebra.is_finite:
            self.window = algebra.top_weight
        else:
            self.window = min(Config.BAR_WEIGHT_CAP, algebra.w_max)
        self.koszul = KoszulComplex(algebra, 'A')
        self._products: Dict[Tuple[Slot, Slot], List[Tuple[Slot, object]]] = {}
        self._cells: Dict[tuple, BarCell] = {}
        self._matrices: Dict[tuple, np.ndarray] = {}
        self._homology: Dict[tuple, HomologyBasis] = {}

    # ------------------------------------------------------------------
    # Products of basis slots
    # ------------------------------------------------------------------

    def _slot_high(self) -> int:
        return self.algebra.top_weight if self.algebra.is_finite else self.window

    def _check_weight(self, w: int) -> None:
        if self.windowed and w > self.window:
            raise ResourceCapExceeded(f'bar weight {w} is beyond the window {self.window}')

    def mul(self, x: Slot, y: Slot) -> List[Tuple[Slot, object]]:
        """Product of two basis elements of A, as (slot, coefficient) pairs."""
        key = (x, y)
        if key not in self._products:
            A = self.algebra
            w = x[0] + y[0]
            if w > A.max_weight:
                self._products[key] = []
            else:
                column = A.product_table(x[0], y[0])[x[1], y[1], :]
                self._products[key] = [((w, k), c) for k, c in enumerate(column) if c != 0]
        return self._products[key]

    def left_vector(self, x: Slot, m: int, v: np.ndarray) -> np.ndarray:
        """x · v for v ∈ A_m."""
        table = self.algebra.product_table(x[0], m)
        if table.size == 0:
            return self.field.zeros(table.shape[2])
        return matmul(self.field, v, table[x[1], :, :])

    def right_vector(self, m: int, v: np.ndarray, y: Slot) -> np.ndarray:
        """v · y for v ∈ A_m."""
        table = self.algebra.product_table(m, y[0])
        if table.size == 0:
            return self.field.zeros(table.shape[2])
        return matmul(self.field, v, table[:, y[1], :])

    def _expand(self, weights: Sequence[int]) -> Iterator[Key]:
        A = self.algebra
        ranges = [range(A.dim(w)) for w in weights]
        for indices in product(*ranges):
            yield tuple(zip(weights, indices))

    # ------------------------------------------------------------------
    # Cells
    # ------------------------------------------------------------------

    def cell(self, p: int, w: int) -> BarCell:
        """Weight-w basis of A ⊗ A_+^{⊗p} ⊗ A."""
        key = ('bar', p, w)
        if key not in self._cells:
            self._check_weight(w)
            lows = [0] + [1] * p + [0]
            keys = [k for ws in _compositions(w, lows, self._slot_high()) for k in self._expand(ws)]
            self._cells[key] = BarCell.from_keys(p, w, keys)
            logger.debug('Bar cell', p=p, w=w, dim=len(keys))
        return self._cells[key]

    def chain_cell(self, p: int, w: int) -> BarCell:
        """Weight-w basis of the Hochschild chains A ⊗ A_+^{⊗p}."""
        key = ('chain', p, w)
        if key not in self._cells:
            self._check_weight(w)
            lows = [0] + [1] * p
            keys = [k for ws in _compositions(w, lows, self._slot_high()) for k in self._expand(ws)]
            self._cells[key] = BarCell.from_keys(p, w, keys)
        return self._cells[key]

    def input_window(self, n: int) -> int:
        """Largest input weight of a cochain of internal weight n."""
        A = self.algebra
        if A.is_finite:
            return A.top_weight - n
        return min(self.window - n, A.w_max)

    def cochain_cell(self, p: int, n: int) -> BarCell:
        """Basis (input slots, output index) of Hom(A_+^{⊗p}, A) in internal weight n."""
        key = ('cochain', p, n)
        if key not in self._cells:
            A = self.algebra
            keys = []
            for u in range(max(p, -n), self.input_window(n) + 1):
                out_dim = A.dim(u + n)
                if not out_dim:
                    continue
                for ws in _compositions(u, [1] * p, self._slot_high()):
                    for inputs in self._expand(ws):
                        keys.extend((inputs, s) for s in range(out_dim))
            self._cells[key] = BarCell.from_keys(p, n, keys)
        return self._cells[key]

    # ------------------------------------------------------------------
    # Conversions
    # ------------------------------------------------------------------

    def vector(self, cell: BarCell, element: BarElement) -> np.ndarray:
        v = self.field.zeros(cell.dim)
        for key, c in element.items():
            if c != 0:
                v[cell.index[key]] = v[cell.index[key]] + c
        return v

    def element(self, cell: BarCell, v: np.ndarray) -> BarElement:
        return {cell.keys[i]: c for i, c in enumerate(v) if c != 0}

    def chain(self, p: int, w: int, v: np.ndarray) -> HochschildChain:
        return HochschildChain(p, w, self.element(self.chain_cell(p, w), v))

    def chain_vector(self, z: HochschildChain) -> np.ndarray:
        return self.vector(self.chain_cell(z.p, z.w), z.coeffs)

    def cochain(self, p: int, n: int, v: np.ndarray) -> HochschildCochain:
        cell = self.cochain_cell(p, n)
        values: Dict[Key, np.ndarray] = {}
        for i, c in enumerate(v):
            if c == 0:
                continue
            inputs, s = cell.keys[i]
            if inputs not in values:
                u = sum(w for w, _ in inputs)
                values[inputs] = self.field.zeros(self.algebra.dim(u + n))
            values[inputs][s] = c
        return HochschildCochain(p, n, values)

    def cochain_vector(self, f: HochschildCochain) -> np.ndarray:
        cell = self.cochain_cell(f.p, f.n)
        v = self.field.zeros(cell.dim)
        for inputs, values in f.values.items():
            for s, c in enumerate(values):
                if c != 0:
                    v[cell.index[(inputs, s)]] = c
        return v

    def cochain_from_function(self, p: int, n: int, fn) -> HochschildCochain:
        """Tabulate a cochain from fn(input slots) -> coordinates in A_{u+n} (or None)."""
        cell = self.cochain_cell(p, n)
        values: Dict[Key, np.ndarray] = {}
        for inputs, _ in cell.keys:
            if inputs in values:
                continue
            value = fn(inputs)
            if value is not None and not is_zero(value):
                values[inputs] = value
        return HochschildCochain(p, n, values)

    # ------------------------------------------------------------------
    # Differentials
    # ------------------------------------------------------------------

    def merge(self, element: BarElement, i: int) -> BarElement:
        """Multiply slots i and i+1."""
        acc: BarElement = {}
        for key, c in element.items():
            for slot, d in self.mul(key[i], key[i + 1]):
                _add(acc, key[:i] + (slot,) + key[i + 2:], c * d)
        return _prune(acc)

    def b_prime(self, element: BarElement, p: int) -> BarElement:
        """b′ = Σ_{i=0}^{p} (−1)^i merge(i) on A ⊗ A_+^{⊗p} ⊗ A."""
        acc: BarElement = {}
        for i in range(p + 1):
            sign = -1 if i % 2 else 1
            for key, c in self.merge(element, i).items():
                _add(acc, key, c if sign == 1 else -c)
        return _prune(acc)

    def extra_degeneracy(self, element: BarElement) -> BarElement:
        """s(a_0 ⊗ … ⊗ a_{p+1}) = 1 ⊗ ā_0 ⊗ … ⊗ a_{p+1}; zero when a_0 is a scalar."""
        return {((0, 0),) + key: c for key, c in element.items() if key[0][0] > 0 and c != 0}

    def unit_section(self, w: int, v: np.ndarray) -> BarElement:
        """s_{−1}: A → A ⊗ A, a ↦ 1 ⊗ a."""
        return {((0, 0), (w, s)): c for s, c in enumerate(v) if c != 0}

    def augmentation(self, element: BarElement, w: int) -> np.ndarray:
        """μ: A ⊗ A → A."""
        out = self.field.zeros(self.algebra.dim(w))
        for key, c in element.items():
            for (_, k), d in self.mul(key[0], key[1]):
                out[k] = out[k] + c * d
        return out

    def bar_differential(self, p: int, w: int) -> np.ndarray:
        """
        b′ from the (p, w) bar cell to the (p−1, w) cell; μ into A_w when p = 0.

        Returns:
            Dense matrix
        """
        key = ('bprime', p, w)
        if key not in self._matrices:
            source = self.cell(p, w)
            if p == 0:
                columns = [self.augmentation({k: self.field.one}, w) for k in source.keys]
                matrix = stack_columns(self.field, columns, self.algebra.dim(w))
            else:
                target = self.cell(p - 1, w)
                columns = [self.vector(target, self.b_prime({k: self.field.one}, p)) for k in source.keys]
                matrix = stack_columns(self.field, columns, target.dim)
            self._matrices[key] = matrix
        return self._matrices[key]

    def extra_degeneracy_matrix(self, p: int, w: int) -> np.ndarray:
        source, target = self.cell(p, w), self.cell(p + 1, w)
        columns = [self.vector(target, self.extra_degeneracy({k: self.field.one})) for k in source.keys]
        return stack_columns(self.field, columns, target.dim)

    def contracting_homotopy_check(self, p: int, w: int) -> bool:
        """b′s + sb′ = id on the (p, w) cell; at p = 0, b′s + s_{−1}μ = id."""
        K = self.field
        s_up = self.extra_degeneracy_matrix(p, w)
        lhs = matmul(K, self.bar_differential(p + 1, w), s_up)
        if p == 0:
            section = stack_columns(
                K, [self.vector(self.cell(0, w), self.unit_section(w, row)) for row in K.identity(self.algebra.dim(w))],
                self.cell(0, w).dim,
            )
            lhs = lhs + matmul(K, section, self.bar_differential(0, w))
        else:
            lhs = lhs + matmul(K, self.extra_degeneracy_matrix(p - 1, w), self.bar_differential(p, w))
        return bool(np.all(lhs == K.identity(self.cell(p, w).dim)))

    def hochschild_b_element(self, z: HochschildChain) -> HochschildChain:
        """b(m ⊗ a_1…a_p) = m a_1 ⊗ … + Σ (−1)^i … a_i a_{i+1} … + (−1)^p a_p m ⊗ a_1…a_{p−1}."""
        p = z.p
        acc: BarElement = {}
        for i in range(p):
            sign = -1 if i % 2 else 1
            for key, c in self.merge(z.coeffs, i).items():
                _add(acc, key, c if sign == 1 else -c)
        last_sign = -1 if p % 2 else 1
        for key, c in z.coeffs.items():
            for slot, d in self.mul(key[p], key[0]):
                _add(acc, (slot,) + key[1:p], c * d if last_sign == 1 else -c * d)
        return HochschildChain(p - 1, z.w, _prune(acc))

    def hochschild_b(self, p: int, w: int) -> np.ndarray:
        """Hochschild boundary from the (p, w) chain cell to the (p−1, w) cell."""
        key = ('b', p, w)
        if key not in self._matrices:
            source = self.chain_cell(p, w)
            if p == 0:
                matrix = self.field.zeros((0, source.dim))
            else:
                target = self.chain_cell(p - 1, w)
                columns = [
                    self.vector(target, self.hochschild_b_element(HochschildChain(p, w, {k: self.field.one})).coeffs)
                    for k in source.keys
                ]
                matrix = stack_columns(self.field, columns, target.dim)
            self._matrices[key] = matrix
        return self._matrices[key]

    def hochschild_b_cochain(self, p: int, n: int) -> np.ndarray:
        """
        b_H = (−1)^{p+1} δ from the (p, n) cochain cell to the (p+1, n) cell, where
        δf(a_1…a_{p+1}) = a_1 f(a_2…) + Σ_{i=1}^{p} (−1)^i f(…a_i a_{i+1}…) + (−1)^{p+1} f(a_1…a_p) a_{p+1}.
        """
        key = ('bH', p, n)
        if key in self._matrices:
            return self._matrices[key]

        A, K = self.algebra, self.field
        source, target = self.cochain_cell(p, n), self.cochain_cell(p + 1, n)
        matrix = K.zeros((target.dim, source.dim))
        overall = K(-1 if (p + 1) % 2 else 1)
        seen = set()
        for inputs, _ in target.keys:
            if inputs in seen:
                continue
            seen.add(inputs)
            out_weight = sum(w for w, _ in inputs) + n

            def put(t, source_key, c):
                col = source.index.get(source_key)
                if col is not None:
                    row = target.index[(inputs, t)]
                    matrix[row, col] = matrix[row, col] + overall * c

            first = inputs[0]
            rest = inputs[1:]
            for s in range(A.dim(out_weight - first[0])):
                for (_, t), c in self.mul(first, (out_weight - first[0], s)):
                    put(t, (rest, s), c)
            for i in range(1, p + 1):
                sign = K(-1 if i % 2 else 1)
                for slot, d in self.mul(inputs[i - 1], inputs[i]):
                    merged = inputs[:i - 1] + (slot,) + inputs[i + 1:]
                    for s in range(A.dim(out_weight)):
                        put(s, (merged, s), sign * d)
            last = inputs[-1]
            head = inputs[:-1]
            last_sign = K(-1 if (p + 1) % 2 else 1)
            for s in range(A.dim(out_weight - last[0])):
                for (_, t), c in self.mul((out_weight - last[0], s), last):
                    put(t, (head, s), last_sign * c)

        logger.debug('Hochschild coboundary', p=p, n=n, shape=list(matrix.shape))
        self._matrices[key] = matrix
        return matrix

    # ------------------------------------------------------------------
    # Hochschild (co)homology
    # ------------------------------------------------------------------

    def homology_cell(self, p: int, w: int) -> HomologyBasis:
        key = ('HH_', p, w)
        if key not in self._homology:
            self._homology[key] = homology(self.field, self.hochschild_b(p, w), self.hochschild_b(p + 1, w))
        return self._homology[key]

    def cohomology_cell(self, p: int, n: int) -> HomologyBasis:
        key = ('HH^', p, n)
        if key not in self._homology:
            d_out = self.hochschild_b_cochain(p, n)
            if p == 0:
                d_in = self.field.zeros((self.cochain_cell(0, n).dim, 0))
            else:
                d_in = self.hochschild_b_cochain(p - 1, n)
            self._homology[key] = homology(self.field, d_out, d_in)
        return self._homology[key]

    def hochschild_dims(self, side: str, p_max: int,
                        weights: Optional[Dict[int, Sequence[int]]] = None) -> DimensionTable:
        """
        HH_p / HH^p dimensions per weight.

        Args:
            side: 'homology' (total weights) or 'cohomology' (internal weights)
            p_max: Largest degree
            weights: Degree -> weights to compute (default: the Koszul weights of
                     that degree, clipped to the bar window)

        Returns:
            DimensionTable labeled HH
        """
        if side not in ('homology', 'cohomology'):
            raise ConfigurationError(f'side must be homology or cohomology, got {side!r}')
        cells: Dict[Tuple[int, int], int] = {}
        for p in range(p_max + 1):
            if weights is not None:
                chosen = list(weights.get(p, ()))
            elif side == 'homology':
                chosen = self.homology_weights(p)
            else:
                chosen = self.cohomology_weights(p)
            for weight in chosen:
                cell = self.homology_cell(p, weight) if side == 'homology' else self.cohomology_cell(p, weight)
                cells[(p, weight)] = cell.dim
        logger.info('Hochschild dimensions computed', side=side, p_max=p_max, cells=len(cells))
        return DimensionTable(side, 'A', cells, self.windowed, label='HH')

    def homology_weights(self, p: int) -> List[int]:
        """Koszul chain weights of degree p inside the bar window."""
        weights = self.koszul.chain_weights(p)
        if not self.windowed:
            return weights
        return [w for w in weights if w <= self.window]

    def cohomology_weights(self, p: int) -> List[int]:
        """Koszul cochain weights of degree p whose windowed cells are exact."""
        weights = self.koszul.cochain_weights(p)
        if not self.windowed:
            return weights
        # inputs must reach every relation and every generator of degree p+1
        reach = max(self.algebra.N, nu(p + 1, self.algebra.N))
        return [n for n in weights if self.input_window(n) >= reach and n <= self.window]

    # ------------------------------------------------------------------
    # Products
    # ------------------------------------------------------------------

    def _product_vector(self, m1: int, v1: np.ndarray, m2: int, v2: np.ndarray) -> np.ndarray:
        return self.algebra.multiply_coords(m1, v1, m2, v2)

    def cup(self, f: HochschildCochain, g: HochschildCochain) -> HochschildCochain:
        """(f⌣g)(a_1…a_{p+q}) = (−1)^{pq} f(a_1…a_p) g(a_{p+1}…a_{p+q})."""
        K = self.field
        sign = K(-1 if (f.p * g.p) % 2 else 1)

        def value(inputs: Key):
            left, right = inputs[:f.p], inputs[f.p:]
            fv, gv = f.value(left), g.value(right)
            if fv is None or gv is None:
                return None
            m1 = sum(w for w, _ in left) + f.n
            m2 = sum(w for w, _ in right) + g.n
            return self._product_vector(m1, fv, m2, gv) * sign

        return self.cochain_from_function(f.p + g.p, f.n + g.n, value)

    def cap_left(self, f: HochschildCochain, z: HochschildChain) -> HochschildChain:
        """f ⌢ (m ⊗ a_1…a_q) = (−1)^{(q−p)p} f(a_{q−p+1}…a_q) m ⊗ a_1…a_{q−p}."""
        p, q = f.p, z.p
        if q < p:
            return HochschildChain(q - p, z.w + f.n, {})
        K = self.field
        sign = K(-1 if ((q - p) * p) % 2 else 1)
        acc: BarElement = {}
        for key, c in z.coeffs.items():
            m, front, back = key[0], key[1:q - p + 1], key[q - p + 1:]
            fv = f.value(back)
            if fv is None:
                continue
            fw = sum(w for w, _ in back) + f.n
            for s, x in enumerate(fv):
                if x == 0:
                    continue
                for slot, d in self.mul((fw, s), m):
                    _add(acc, (slot,) + front, sign * c * x * d)
        return HochschildChain(q - p, z.w + f.n, _prune(acc))

    def cap_right(self, z: HochschildChain, f: HochschildCochain) -> HochschildChain:
        """(m ⊗ a_1…a_q) ⌢ f = (−1)^{pq} m f(a_1…a_p) ⊗ a_{p+1}…a_q."""
        p, q = f.p, z.p
        if q < p:
            return HochschildChain(q - p, z.w + f.n, {})
        K = self.field
        sign = K(-1 if (p * q) % 2 else 1)
        acc: BarElement = {}
        for key, c in z.coeffs.items():
            m, front, back = key[0], key[1:p + 1], key[p + 1:]
            fv = f.value(front)
            if fv is None:
                continue
            fw = sum(w for w, _ in front) + f.n
            for s, x in enumerate(fv):
                if x == 0:
                    continue
                for slot, d in self.mul(m, (fw, s)):
                    _add(acc, (slot,) + back, sign * c * x * d)
        return HochschildChain(q - p, z.w + f.n, _prune(acc))

    def euler_cochain(self) -> HochschildCochain:
        """The Euler derivation D_A as a Hochschild 1-cochain of internal weight 0."""
        A = self.algebra

        def value(inputs: Key):
            (w, s), = inputs
            return A.euler_derivation(w)[:, s]

        return self.cochain_from_function(1, 0, value)


# ---------------------------------------------------------------------------
# Comparison morphism
# ---------------------------------------------------------------------------

class ComparisonMorphism:
    """
    χ: K(A) → B(A), with χ_0 = id and χ_p(1⊗ω⊗1) = s(χ_{p−1}(d(1⊗ω⊗1))),
    extended A-bilinearly.
    """

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        self.N = algebra.N
        self.bar = BarComplex(algebra)
        self.bimodule = BimoduleComplex(algebra)
        self.koszul = self.bar.koszul
        self.evaluator = TermEvaluator(algebra)
        self._generators: Dict[Tuple[int, int], BarElement] = {}

    def nu(self, p: int) -> int:
        return nu(p, self.N)

    # ------------------------------------------------------------------
    # Generators
    # ------------------------------------------------------------------

    def _left(self, element: BarElement, m: int, v: np.ndarray) -> BarElement:
        """v · element on the first slot, v ∈ A_m."""
        acc: BarElement = {}
        for s, x in enumerate(v):
            if x == 0:
                continue
            for key, c in element.items():
                for slot, d in self.bar.mul((m, s), key[0]):
                    _add(acc, (slot,) + key[1:], x * c * d)
        return _prune(acc)

    def _right(self, element: BarElement, m: int, v: np.ndarray) -> BarElement:
        """element · v on the last slot, v ∈ A_m."""
        acc: BarElement = {}
        for s, x in enumerate(v):
            if x == 0:
                continue
            for key, c in element.items():
                for slot, d in self.bar.mul(key[-1], (m, s)):
                    _add(acc, key[:-1] + (slot,), x * c * d)
        return _prune(acc)

    def generator(self, p: int, r: int) -> BarElement:
        """χ_p(1 ⊗ ω_r ⊗ 1) for the r-th basis row ω_r of W_{ν(p)}."""
        key = (p, r)
        if key in self._generators:
            return self._generators[key]

        A, K = self.algebra, self.field
        unit = ((0, 0), (0, 0))
        if p == 0:
            self._generators[key] = {unit: K.one}
            return self._generators[key]

        frame = A.w_frame(self.nu(p))
        frame_out = A.w_frame(self.nu(p - 1))
        images = self.evaluator.bimodule_images(
            bimodule_d_terms(p, self.N), frame.rows[r], (0, {0: K.one}), (0, {0: K.one})
        )
        acc: BarElement = {}
        for coeff, l_len, l_idx, out_idx, r_len, r_idx in images:
            r_out = frame_out.pivot_row.get(out_idx)
            if r_out is None:
                continue
            left = A.project(l_len, {l_idx: K.one})
            right = A.project(r_len, {r_idx: K.one})
            if is_zero(left) or is_zero(right):
                continue
            image = self._right(self._left(self.generator(p - 1, r_out), l_len, left), r_len, right)
            for k, c in image.items():
                _add(acc, k, coeff * c)
        self._generators[key] = self.bar.extra_degeneracy(_prune(acc))
        return self._generators[key]

    def build(self, p_max: int) -> 'ComparisonMorphism':
        for p in range(p_max + 1):
            for r in range(self.algebra.w_dim(self.nu(p))):
                self.generator(p, r)
        logger.info('Comparison morphism built', p_max=p_max, generators=len(self._generators))
        return self

    # ------------------------------------------------------------------
    # χ on K(A)
    # ------------------------------------------------------------------

    def chi_matrix(self, p: int, w: int) -> np.ndarray:
        """χ_p from the (p, w) cell of K(A) to the (p, w) bar cell."""
        A, K = self.algebra, self.field
        source = self.bimodule.cell(p, w)
        target = self.bar.cell(p, w)
        matrix = K.zeros((target.dim, source.dim))
        for block in source.blocks:
            for i in range(block.left_dim):
                left = A.basis_element(block.a, i).coords
                for r in range(block.w_dim):
                    gen = self._left(self.generator(p, r), block.a, left)
                    for j in range(block.right_dim):
                        right = A.basis_element(block.b, j).coords
                        image = self._right(gen, block.b, right)
                        matrix[:, block.index(i, r, j)] = self.bar.vector(target, image)
        return matrix

    def commuting_square(self, p: int, w: int) -> bool:
        """b′ ∘ χ_p = χ_{p−1} ∘ d on the weight-w cells."""
        if p < 1:
            return True
        K = self.field
        lhs = matmul(K, self.bar.bar_differential(p, w), self.chi_matrix(p, w))
        rhs = matmul(K, self.chi_matrix(p - 1, w), self.bimodule.bimodule_d_dense(p, w))
        return bool(np.all(lhs == rhs))

    def injective(self, p: int, w: int) -> bool:
        matrix = self.chi_matrix(p, w)
        return rank(self.field, matrix) == matrix.shape[1]

    # ------------------------------------------------------------------
    # χ̃ and χ*
    # ------------------------------------------------------------------

    def chi_tilde(self, z: KoszulChain) -> HochschildChain:
        """χ̃(m ⊗ ω) = Σ c · a_{p+1} m a_0 ⊗ a_1…a_p over χ_p(1⊗ω⊗1) = Σ c · a_0 ⊗ … ⊗ a_{p+1}."""
        p = z.p
        m_weight = z.w - self.nu(p)
        acc: BarElement = {}
        for r in range(z.matrix.shape[1]):
            m = z.matrix[:, r]
            if is_zero(m):
                continue
            for key, c in self.generator(p, r).items():
                first, last = key[0], key[-1]
                value = self.bar.left_vector(last, m_weight, m)
                value = self.bar.right_vector(m_weight + last[0], value, first)
                weight = m_weight + last[0] + first[0]
                for s, x in enumerate(value):
                    if x != 0:
                        _add(acc, ((weight, s),) + key[1:-1], c * x)
        return HochschildChain(p, z.w, _prune(acc))

    def chi_star(self, f: HochschildCochain) -> KoszulCochain:
        """χ*(f)(ω) = Σ c · a_0 f(a_1…a_p) a_{p+1}."""
        A, K = self.algebra, self.field
        p, n = f.p, f.n
        v = self.nu(p)
        out = K.zeros((A.dim(v + n), A.w_dim(v)))
        for r in range(out.shape[1]):
            column = K.zeros(out.shape[0])
            for key, c in self.generator(p, r).items():
                inputs = key[1:-1]
                value = f.value(inputs)
                if value is None:
                    continue
                m = sum(w for w, _ in inputs) + n
                value = self.bar.left_vector(key[0], m, value)
                value = self.bar.right_vector(m + key[0][0], value, key[-1])
                column = column + value * c
            out[:, r] = column
        return KoszulCochain(p, n, out, A)

    def chi_tilde_matrix(self, p: int, w: int) -> np.ndarray:
        K = self.field
        shape = self.koszul.chain_shape(p, w)
        target = self.bar.chain_cell(p, w)
        columns = []
        for index in np.ndindex(*shape):
            basis = K.zeros(shape)
            basis[index] = K.one
            columns.append(self.bar.chain_vector(self.chi_tilde(KoszulChain(p, w, basis, self.algebra))))
        return stack_columns(K, columns, target.dim)

    def chi_star_matrix(self, p: int, n: int) -> np.ndarray:
        K = self.field
        source = self.bar.cochain_cell(p, n)
        rows = self.koszul.cochain_dim(p, n)
        columns = []
        for i in range(source.dim):
            basis = K.zeros(source.dim)
            basis[i] = K.one
            columns.append(self.chi_star(self.bar.cochain(p, n, basis)).flat())
        return stack_columns(K, columns, rows)

    def chain_square(self, p: int, w: int) -> bool:
        """b ∘ χ̃_p = χ̃_{p−1} ∘ b_K."""
        if p < 1:
            return True
        K = self.field
        lhs = matmul(K, self.bar.hochschild_b(p, w), self.chi_tilde_matrix(p, w))
        rhs = matmul(K, self.chi_tilde_matrix(p - 1, w), self.koszul.chain_bK_matrix(p, w))
        return bool(np.all(lhs == rhs))

    def cochain_square(self, p: int, n: int) -> bool:
        """χ* ∘ b_H = b_K ∘ χ*."""
        K = self.field
        lhs = matmul(K, self.chi_star_matrix(p + 1, n), self.bar.hochschild_b_cochain(p, n))
        rhs = matmul(K, self.koszul.cochain_bK_matrix(p, n), self.chi_star_matrix(p, n))
        return bool(np.all(lhs == rhs))

    # ------------------------------------------------------------------
    # Induced maps on classes
    # ------------------------------------------------------------------

    def induced_homology(self, p: int, w: int) -> np.ndarray:
        """H(χ̃) on the (p, w) cell: HH coordinates of χ̃ of the HK class basis."""
        source = self.koszul.homology_cell(p, w)
        target = self.bar.homology_cell(p, w)
        columns = []
        for rep in source.representatives:
            z = self.koszul.chain(p, w, rep)
            columns.append(target.coordinates(self.bar.chain_vector(self.chi_tilde(z))))
        return stack_columns(self.field, columns, target.dim)

    def induced_cohomology(self, p: int, n: int) -> np.ndarray:
        """H(χ*) on the (p, n) cell: HK coordinates of χ* of the HH class basis."""
        source = self.bar.cohomology_cell(p, n)
        target = self.koszul.cohomology_cell(p, n)
        columns = []
        for rep in source.representatives:
            f = self.bar.cochain(p, n, rep)
            columns.append(target.coordinates(self.chi_star(f).flat()))
        return stack_columns(self.field, columns, target.dim)

    def is_iso(self, matrix: np.ndarray) -> bool:
        rows, cols = matrix.shape
        return rows == cols and rank(self.field, matrix) == rows

    def low_degree_iso_check(self) -> dict:
        """H(χ̃)_p and H(χ*)_p for p = 0, 1, per weight."""
        rows = []
        for p in (0, 1):
            for w in self.bar.homology_weights(p):
                rows.append({'side': 'homology', 'p': p, 'weight': w,
                             'iso': self.is_iso(self.induced_homology(p, w))})
            for n in self.bar.cohomology_weights(p):
                rows.append({'side': 'cohomology', 'p': p, 'weight': n,
                             'iso': self.is_iso(self.induced_cohomology(p, n))})
        ok = all(row['iso'] for row in rows)
        logger.info('Low-degree comparison', cells=len(rows), ok=ok)
        return {'cells': rows, 'ok': ok, 'windowed': self.bar.windowed}

    def verify(self, p_max: int) -> dict:
        """Commuting squares and injectivity of χ on every computed cell up to p_max."""
        squares, chain_squares, cochain_squares, injective = True, True, True, True
        cells = 0
        for p in range(p_max + 1):
            for w in self.bar.homology_weights(p):
                squares &= self.commuting_square(p, w)
                injective &= self.injective(p, w)
                chain_squares &= self.chain_square(p, w)
                cells += 1
            if p < p_max:
                for n in self.bar.cohomology_weights(p):
                    cochain_squares &= self.cochain_square(p, n)
        return {
            'cells': cells,
            'commuting_squares': bool(squares),
            'chain_squares': bool(chain_squares),
            'cochain_squares': bool(cochain_squares),
            'injective': bool(injective),
        }


def build_chi(algebra: GradedAlgebra, p_max: int) -> ComparisonMorphism:
    return ComparisonMorphism(algebra).build(p_max)


# ---------------------------------------------------------------------------
# k[x]/(x^N)
# ---------------------------------------------------------------------------

def _require_truncated(algebra: GradedAlgebra) -> None:
    if not algebra.is_truncated:
        raise WrongAlgebra('this comparison is specific to k[x]/(x^N)')


def closed_form_chi_truncated(algebra: GradedAlgebra, p: int) -> BarElement:
    """
    χ_p(1 ⊗ x^{ν(p)} ⊗ 1) on k[x]/(x^N) without recursion.

    For p = 2p′ it is the sum of 1 ⊗ x^{i_1} ⊗ x ⊗ … ⊗ x^{i_{p′}} ⊗ x ⊗ x^{(N−1)p′−Σi}
    over 1 ≤ i_k ≤ N−1 with Σi ≥ (N−1)(p′−1); odd p puts one more x in front.
    """
    _require_truncated(algebra)
    K, N = algebra.field, algebra.N
    if p == 0:
        return {((0, 0), (0, 0)): K.one}
    half, odd = divmod(p, 2)
    acc: BarElement = {}
    for exponents in product(range(1, N), repeat=half):
        rest = (N - 1) * half - sum(exponents)
        if not 0 <= rest <= N - 1:
            continue
        middle = [(1, 0)] if odd else []
        for i in exponents:
            middle += [(i, 0), (1, 0)]
        _add(acc, ((0, 0),) + tuple(middle) + ((rest, 0),), K.one)
    return _prune(acc)


def non_morphism_witness(chi: ComparisonMorphism) -> dict:
    """
    χ* is not multiplicative and χ̃ is not a bimodule map, on k[x]/(x^N), N > 2.

    f(x^i) = δ_{i,2} has χ*(f) = 0 while χ*(f⌣D_A)(x^N) = −x^{N−2}; for
    z = x ⊗ x^N, χ̃(χ*(f) ⌢ z) = 0 while χ̃(z) ⌢ f = x^{N−2} ⊗ x.
    """
    A, K, N = chi.algebra, chi.field, chi.N
    _require_truncated(A)
    if N < 3:
        raise WrongAlgebra('the non-morphism witness needs N > 2')
    bar = chi.bar

    def f_value(inputs):
        (w, _), = inputs
        return np.array([K.one], dtype=object) if w == 2 else None

    f = bar.cochain_from_function(1, -2, f_value)
    D = bar.euler_cochain()
    chi_f = chi.chi_star(f)
    product_value = chi.chi_star(bar.cup(f, D)).matrix[:, 0]
    expected_product = -A.from_word((0,) * (N - 2)).coords

    z = chi.koszul.chain(2, N + 1, np.array([[K.one]], dtype=object))
    cap_value = bar.cap_right(chi.chi_tilde(z), f)
    expected_cap = {((N - 2, 0), (1, 0)): K.one}

    report = {
        'chi_star_f_zero': chi_f.is_zero(),
        'chi_star_cup': [K.to_str(c) for c in product_value],
        'chi_star_cup_expected': [K.to_str(c) for c in expected_product],
        'cup_witness': bool(np.all(product_value == expected_product)) and not is_zero(product_value),
        'chi_tilde_cap': {_key_text(k): K.to_str(c) for k, c in sorted(cap_value.coeffs.items())},
        'cap_witness': cap_value.coeffs == expected_cap,
    }
    report['ok'] = report['chi_star_f_zero'] and report['cup_witness'] and report['cap_witness']
    logger.info('Non-morphism witness', ok=report['ok'])
    return report


def _key_text(key: Key) -> str:
    return ' ⊗ '.join(f'a{w}.{i}' for w, i in key)


def class_morphism_check(chi: ComparisonMorphism, calculus, p_max: int) -> dict:
    """
    H(χ*) and H(χ̃) on class bases up to total degree p_max.

    Checks that both are bijective per cell, that H(χ*) carries Hochschild cup
    products to Koszul cup products and that H(χ̃) carries Koszul cap actions to
    Hochschild ones.
    """
    _require_truncated(chi.algebra)
    bar, koszul = chi.bar, chi.koszul
    bijective = cup_ok = cap_ok = True

    cohomology = [(p, n) for p in range(p_max + 1) for n in koszul.cochain_weights(p)]
    for p, n in cohomology:
        bijective &= chi.is_iso(chi.induced_cohomology(p, n))
    homology_cells = [(q, w) for q in range(p_max + 1) for w in koszul.chain_weights(q)]
    for q, w in homology_cells:
        bijective &= chi.is_iso(chi.induced_homology(q, w))

    def hh_reps(p, n):
        return [bar.cochain(p, n, rep) for rep in bar.cohomology_cell(p, n).representatives]

    cup_checked = 0
    for p, n1 in cohomology:
        for q, n2 in cohomology:
            if p + q > p_max or n1 + n2 not in koszul.cochain_weights(p + q):
                continue
            target = koszul.cohomology_cell(p + q, n1 + n2)
            for f in hh_reps(p, n1):
                for g in hh_reps(q, n2):
                    lhs = target.coordinates(chi.chi_star(bar.cup(f, g)).flat())
                    rhs = target.coordinates(calculus.cup(chi.chi_star(f), chi.chi_star(g)).flat())
                    cup_ok &= bool(np.all(lhs == rhs))
                    cup_checked += 1

    cap_checked = 0
    for p, n in cohomology:
        for q, w in homology_cells:
            if q < p or w + n not in koszul.chain_weights(q - p):
                continue
            target = bar.homology_cell(q - p, w + n)
            for g in hh_reps(p, n):
                g_k = chi.chi_star(g)
                for rep in koszul.homology_cell(q, w).representatives:
                    z = koszul.chain(q, w, rep)
                    z_bar = chi.chi_tilde(z)
                    pairs = (
                        (chi.chi_tilde(calculus.cap_left(g_k, z)), bar.cap_left(g, z_bar)),
                        (chi.chi_tilde(calculus.cap_right(z, g_k)), bar.cap_right(z_bar, g)),
                    )
                    for koszul_side, bar_side in pairs:
                        lhs = target.coordinates(bar.chain_vector(koszul_side))
                        rhs = target.coordinates(bar.chain_vector(bar_side))
                        cap_ok &= bool(np.all(lhs == rhs))
                        cap_checked += 1

    report = {
        'p_max': p_max,
        'bijective': bool(bijective),
        'cup': bool(cup_ok),
        'cap': bool(cap_ok),
        'cup_checked': cup_checked,
        'cap_checked': cap_checked,
    }
    report['ok'] = report['bijective'] and report['cup'] and report['cap']
    logger.info('Class morphism check', **report)
    return report
