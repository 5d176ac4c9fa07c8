"""
Graded Algebra
==============
The N-homogeneous algebra A = T(V)/(R): weight components A_m as quotients
V^{⊗m} / I_m, multiplication by lift-concatenate-project, the spaces W_p and
the ν map.

Notes:
- A_m has the non-pivot words of I_m as basis; basis element i lifts to the
  single word complement[i]
- When some A_m vanishes the algebra is finite-dimensional and every higher
  weight is zero; otherwise weights above w_max raise ResourceCapExceeded
- GroundField is the trivial bimodule k = A/A_+, sharing the module interface
  (dim / lift / project) with GradedAlgebra
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from koszul_calculus.config import Config
from koszul_calculus.exact_linalg import (
    Field,
    QuotientMap,
    Subspace,
    intersect,
    kernel,
    matmul,
    sum_subspaces,
)
from koszul_calculus.exceptions import ConfigurationError, ResourceCapExceeded
from koszul_calculus.logger import get_logger
from koszul_calculus.tensor_space import (
    TensorElement,
    Word,
    full_space,
    index_word,
    padded_relation_space,
    sparse_concat,
    tensor_subspaces,
    word_index,
)

logger = get_logger()

WordDict = Dict[int, object]


def nu(p: int, N: int) -> int:
    """ν(2p') = Np', ν(2p'+1) = Np'+1."""
    return N * (p // 2) + p % 2


def nu_additive(p: int, q: int, N: int) -> bool:
    return nu(p + q, N) == nu(p, N) + nu(q, N)


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators, degree N and weight-N relations of T(V)/(R)."""

    field: Field
    generators: Tuple[str, ...]
    degree: int
    relations: Tuple[TensorElement, ...] = ()
    name: str = 'custom'

    @property
    def g(self) -> int:
        return len(self.generators)

    def relation_matrix(self) -> np.ndarray:
        n = self.g ** self.degree
        if not self.relations:
            return self.field.zeros((0, n))
        return np.stack([r.coeffs for r in self.relations])

    def to_text(self) -> str:
        """Render in the presentation file format (parsable by presentation.parse_presentation)."""
        K = self.field
        lines = [f'# {self.name}']
        lines.append(f'field F {K.characteristic}' if K.characteristic else 'field Q')
        lines.append(' '.join(['generators', *self.generators]).rstrip())
        lines.append(f'degree {self.degree}')
        for relation in self.relations:
            terms = []
            for idx in np.nonzero(relation.coeffs != K.zero)[0]:
                word = index_word(int(idx), self.degree, self.g)
                letters = ' '.join(self.generators[k] for k in word)
                coeff = K.to_str(relation.coeffs[idx])
                sign = '+'
                if coeff.startswith('-'):
                    sign, coeff = '-', coeff[1:]
                terms.append((sign, f'{coeff}*({letters})'))
            if not terms:
                continue
            first_sign, first = terms[0]
            text = ('-' if first_sign == '-' else '') + first
            for sign, term in terms[1:]:
                text += f' {sign} {term}'
            lines.append(f'rel {text}')
        return '\n'.join(lines) + '\n'


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A homogeneous element of A_m in complement coordinates."""

    weight: int
    coords: np.ndarray = dataclass_field(repr=False)

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self.coords)

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        if self.weight != other.weight:
            raise ValueError('cannot add elements of different weights')
        return AlgebraElement(self.weight, self.coords + other.coords)

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        if self.weight != other.weight:
            raise ValueError('cannot subtract elements of different weights')
        return AlgebraElement(self.weight, self.coords - other.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.weight == other.weight and bool(np.all(self.coords == other.coords))

    def __hash__(self) -> int:
        return hash(self.weight)


@dataclass(frozen=True)
class WFrame:
    """W_p with its basis rows as sparse word lists and a pivot lookup."""

    length: int
    space: Subspace
    rows: Tuple[Tuple[Tuple[Word, object], ...], ...]
    pivot_row: Dict[int, int]

    @property
    def dim(self) -> int:
        return self.space.dim


class GradedAlgebra:
    """
    A = T(V)/(R) with cached weight components up to w_max.

    Build once; every query afterwards is read-only.
    """

    is_ground = False
    name = 'A'

    def __init__(self, presentation: Presentation, w_max: int):
        K = presentation.field
        g = presentation.g
        N = presentation.degree

        if N < 2:
            raise ConfigurationError(f'relation degree must be at least 2, got {N}')
        if g > Config.MAX_GENERATORS:
            raise ResourceCapExceeded(f'{g} generators exceed the cap of {Config.MAX_GENERATORS}')
        if K.characteristic and N % K.characteristic == 0:
            raise ConfigurationError(f'characteristic {K.characteristic} divides N = {N}')
        if w_max < N:
            raise ConfigurationError(f'w_max = {w_max} must be at least N = {N}')

        self.presentation = presentation
        self.field = K
        self.g = g
        self.N = N
        self.w_max = w_max
        self.tensor_cap = Config.tensor_cap(g)

        relation_rows = presentation.relation_matrix()
        self.relations = Subspace.from_rows(K, relation_rows, g ** N)
        if self.relations.dim < len(presentation.relations):
            logger.warning(
                'Dependent relations removed',
                algebra=presentation.name,
                given=len(presentation.relations),
                independent=self.relations.dim,
            )

        self._ideals: Dict[int, Subspace] = {}
        self._quotients: Dict[int, QuotientMap] = {}
        self._w_frames: Dict[int, WFrame] = {}
        self._products: Dict[Tuple[int, int], np.ndarray] = {}
        self.top_weight: Optional[int] = None

        for m in range(w_max + 1):
            if m > self.tensor_cap:
                raise ResourceCapExceeded(
                    f'weight {m} exceeds the tensor cap {self.tensor_cap} for {g} generators'
                )
            ideal = self._build_ideal(m)
            quotient = QuotientMap(ideal)
            self._ideals[m] = ideal
            self._quotients[m] = quotient
            if quotient.dim == 0:
                self.top_weight = m - 1
                break

        logger.debug('Algebra built', algebra=presentation.name,
                     dims=self.dims(), finite=self.is_finite)

    # ------------------------------------------------------------------
    # Weight components
    # ------------------------------------------------------------------

    def _build_ideal(self, m: int) -> Subspace:
        K, g, N = self.field, self.g, self.N
        if m < N:
            return Subspace.zero(K, g ** m)
        if m == N:
            return self.relations
        return sum_subspaces([
            tensor_subspaces(self._ideals[m - 1], full_space(K, g, 1)),
            padded_relation_space(m - N, self.relations, 0, g),
        ])

    @property
    def is_finite(self) -> bool:
        return self.top_weight is not None

    @property
    def is_truncated(self) -> bool:
        """True for k[x]/(x^N)."""
        return self.g == 1 and self.relations.dim == 1 and self.top_weight == self.N - 1

    @property
    def max_weight(self) -> int:
        """Largest weight with possibly nonzero A_m inside the window."""
        return self.top_weight if self.is_finite else self.w_max

    def _check_weight(self, m: int) -> bool:
        """True when A_m may be nonzero and is cached."""
        if m < 0:
            return False
        if self.is_finite and m > self.top_weight:
            return False
        if m > self.w_max:
            raise ResourceCapExceeded(f'weight {m} is beyond w_max = {self.w_max}')
        return True

    def dim(self, m: int) -> int:
        if not self._check_weight(m):
            return 0
        return self._quotients[m].dim

    def dims(self) -> List[int]:
        return [self._quotients[m].dim for m in range(self.max_weight + 1)]

    def ideal(self, m: int) -> Subspace:
        if not self._check_weight(m):
            raise ResourceCapExceeded(f'I_{m} is not cached')
        return self._ideals[m]

    def quotient(self, m: int) -> QuotientMap:
        if not self._check_weight(m):
            raise ResourceCapExceeded(f'A_{m} is not cached')
        return self._quotients[m]

    def basis_word(self, m: int, i: int) -> Word:
        return index_word(self._quotients[m].complement[i], m, self.g)

    # ------------------------------------------------------------------
    # Module interface (shared with GroundField)
    # ------------------------------------------------------------------

    def lift(self, m: int, coords: np.ndarray) -> WordDict:
        """Sparse tensor lift of an element of A_m."""
        if not self._check_weight(m):
            return {}
        complement = self._quotients[m].complement
        return {complement[i]: c for i, c in enumerate(coords) if c != 0}

    def project(self, m: int, words: WordDict) -> np.ndarray:
        """Coordinates in A_m of a sparse tensor of weight m."""
        if not self._check_weight(m):
            return self.field.zeros(0)
        quotient = self._quotients[m]
        if not words or quotient.dim == 0:
            return self.field.zeros(quotient.dim)
        indices = list(words)
        values = np.empty(len(indices), dtype=object)
        values[:] = [words[i] for i in indices]
        return matmul(self.field, quotient.matrix[:, indices], values)

    # ------------------------------------------------------------------
    # Elements and products
    # ------------------------------------------------------------------

    def element(self, m: int, coords) -> AlgebraElement:
        coords = np.asarray(coords, dtype=object)
        if coords.shape != (self.dim(m),):
            raise ValueError(f'A_{m} has dimension {self.dim(m)}, got {coords.shape}')
        return AlgebraElement(m, coords)

    def unit(self) -> AlgebraElement:
        return AlgebraElement(0, np.array([self.field.one], dtype=object))

    def zero(self, m: int) -> AlgebraElement:
        return AlgebraElement(m, self.field.zeros(self.dim(m)))

    def basis_element(self, m: int, i: int) -> AlgebraElement:
        coords = self.field.zeros(self.dim(m))
        coords[i] = self.field.one
        return AlgebraElement(m, coords)

    def from_word(self, word: Sequence[int]) -> AlgebraElement:
        m = len(word)
        return AlgebraElement(m, self.project(m, {word_index(word, self.g): self.field.one}))

    def from_tensor(self, t: TensorElement) -> AlgebraElement:
        words = {int(i): t.coeffs[i] for i in np.nonzero(t.coeffs != self.field.zero)[0]}
        return AlgebraElement(t.m, self.project(t.m, words))

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        """
        Product in A.

        Args:
            u: Element of A_{m_u}
            v: Element of A_{m_v}

        Returns:
            Element of A_{m_u + m_v}
        """
        m = u.weight + v.weight
        words = sparse_concat(self.lift(u.weight, u.coords), u.weight,
                              self.lift(v.weight, v.coords), v.weight, self.g)
        return AlgebraElement(m, self.project(m, words))

    def product_table(self, m1: int, m2: int) -> np.ndarray:
        """
        Structure constants T[i, j, :] = coords of (basis i of A_m1)(basis j of A_m2).
        """
        key = (m1, m2)
        if key not in self._products:
            d1, d2, d12 = self.dim(m1), self.dim(m2), self.dim(m1 + m2)
            table = self.field.zeros((d1, d2, d12))
            if d1 and d2 and d12:
                P = self._quotients[m1 + m2].matrix
                shift = self.g ** m2
                left = self._quotients[m1].complement
                right = self._quotients[m2].complement
                for i, a in enumerate(left):
                    for j, b in enumerate(right):
                        table[i, j, :] = P[:, a * shift + b]
            self._products[key] = table
        return self._products[key]

    def multiply_coords(self, m1: int, c1: np.ndarray, m2: int, c2: np.ndarray) -> np.ndarray:
        table = self.product_table(m1, m2)
        d1, d2, d12 = table.shape
        if table.size == 0:
            return self.field.zeros(d12)
        partial = matmul(self.field, c1, table.reshape(d1, d2 * d12)).reshape(d2, d12)
        return matmul(self.field, c2, partial)

    def left_multiplication(self, word: Sequence[int], m: int) -> np.ndarray:
        """Matrix of a -> w·a from A_m to A_{m+len(w)}."""
        return self._multiplication(word, m, left=True)

    def right_multiplication(self, word: Sequence[int], m: int) -> np.ndarray:
        """Matrix of a -> a·w from A_m to A_{m+len(w)}."""
        return self._multiplication(word, m, left=False)

    def _multiplication(self, word: Sequence[int], m: int, left: bool) -> np.ndarray:
        l = len(word)
        d_in, d_out = self.dim(m), self.dim(m + l)
        out = self.field.zeros((d_out, d_in))
        if not d_in or not d_out:
            return out
        w_idx = word_index(word, self.g)
        P = self._quotients[m + l].matrix
        for i, c in enumerate(self._quotients[m].complement):
            idx = w_idx * self.g ** m + c if left else c * self.g ** l + w_idx
            out[:, i] = P[:, idx]
        return out

    def commutator_matrix(self, m: int) -> np.ndarray:
        """u -> (u x_k - x_k u)_k from A_m to ⊕_k A_{m+1}."""
        blocks = [
            self.right_multiplication((k,), m) - self.left_multiplication((k,), m)
            for k in range(self.g)
        ]
        if not blocks:
            return self.field.zeros((0, self.dim(m)))
        return np.concatenate(blocks, axis=0)

    def center_dim(self, weights: Iterable[int]) -> Dict[int, int]:
        """
        dim Z(A)_m per weight.

        Args:
            weights: Weights m with m + 1 inside the window

        Returns:
            Dict weight -> dimension of the center
        """
        return {m: kernel(self.field, self.commutator_matrix(m)).dim for m in weights}

    def euler_derivation(self, m: int) -> np.ndarray:
        """The Euler derivation D_A = m·id on A_m."""
        return self.field.identity(self.dim(m)) * self.field(m)

    # ------------------------------------------------------------------
    # Koszul building blocks
    # ------------------------------------------------------------------

    def nu(self, p: int) -> int:
        return nu(p, self.N)

    def nu_additive(self, p: int, q: int) -> bool:
        return nu_additive(p, q, self.N)

    def W_space(self, p: int) -> Subspace:
        return self.w_frame(p).space

    def w_frame(self, p: int) -> WFrame:
        """
        W_p with sparse rows.

        W_p = V^{⊗p} for p < N, W_N = R, and
        W_p = (W_{p-1} ⊗ V) ∩ (V^{⊗(p-N)} ⊗ R) beyond.
        """
        if p in self._w_frames:
            return self._w_frames[p]
        if p > self.tensor_cap:
            raise ResourceCapExceeded(f'W_{p} exceeds the tensor cap {self.tensor_cap}')

        K, g, N = self.field, self.g, self.N
        if p < N:
            space = full_space(K, g, p)
        elif p == N:
            space = self.relations
        else:
            space = intersect([
                tensor_subspaces(self.W_space(p - 1), full_space(K, g, 1)),
                padded_relation_space(p - N, self.relations, 0, g),
            ])

        rows = []
        for row in space.basis:
            nonzero = np.nonzero(row != K.zero)[0]
            rows.append(tuple((index_word(int(j), p, g), row[j]) for j in nonzero))
        frame = WFrame(p, space, tuple(rows), {j: r for r, j in enumerate(space.pivots)})
        self._w_frames[p] = frame
        logger.debug('W space', p=p, dim=space.dim)
        return frame

    def w_dim(self, p: int) -> int:
        return self.w_frame(p).dim


class GroundField:
    """The trivial bimodule k = A/A_+: dimension 1 in weight 0, A_+ acts by zero."""

    is_ground = True
    name = 'k'

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        self.g = algebra.g

    def dim(self, m: int) -> int:
        return 1 if m == 0 else 0

    def lift(self, m: int, coords: np.ndarray) -> WordDict:
        if m != 0 or coords[0] == 0:
            return {}
        return {0: coords[0]}

    def project(self, m: int, words: WordDict) -> np.ndarray:
        if m != 0:
            return self.field.zeros(0)
        return np.array([words.get(0, self.field.zero)], dtype=object)


def build_algebra(presentation: Presentation, w_max: int) -> GradedAlgebra:
    return GradedAlgebra(presentation, w_max)
