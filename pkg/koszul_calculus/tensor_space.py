"""
Tensor Space
============
Word-indexed bases of V^{⊗m}, concatenation of tensors, tensor products of
subspaces and the padded relation spaces V^{⊗i} ⊗ R ⊗ V^{⊗j}.

Notes:
- Words are tuples of generator indices 0..g-1
- Word order is big-endian: the leftmost letter is the most significant digit
- Dense coefficient vectors of length g^m
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterator, Sequence, Tuple

import numpy as np

from koszul_calculus.exact_linalg import Field, Subspace
from koszul_calculus.exceptions import GeneratorMismatch, WordIndexError

Word = Tuple[int, ...]


def word_index(word: Sequence[int], g: int) -> int:
    """
    Position of a word in the lexicographic basis of V^{⊗len(word)}.

    Args:
        word: Sequence of generator indices
        g: Number of generators

    Returns:
        Index in 0..g^m - 1
    """
    index = 0
    for letter in word:
        if not 0 <= letter < g:
            raise WordIndexError(f'letter {letter} out of range for {g} generators')
        index = index * g + letter
    return index


def index_word(i: int, m: int, g: int) -> Word:
    """Inverse of word_index for words of length m."""
    if not 0 <= i < g ** m:
        raise WordIndexError(f'index {i} out of range for words of length {m}')
    letters = []
    for _ in range(m):
        i, letter = divmod(i, g)
        letters.append(letter)
    return tuple(reversed(letters))


@dataclass(frozen=True)
class WordBasis:
    """Lexicographic basis of V^{⊗m} for g generators."""

    g: int
    m: int

    @property
    def dim(self) -> int:
        return self.g ** self.m

    def index(self, word: Sequence[int]) -> int:
        if len(word) != self.m:
            raise WordIndexError(f'word of length {len(word)} in V^(x){self.m}')
        return word_index(word, self.g)

    def word(self, i: int) -> Word:
        return index_word(i, self.m, self.g)

    def words(self) -> Iterator[Word]:
        for i in range(self.dim):
            yield self.word(i)


@dataclass(frozen=True, eq=False)
class TensorElement:
    """An element of V^{⊗m} as a dense coefficient vector over words."""

    field: Field
    g: int
    m: int
    coeffs: np.ndarray = dataclass_field(repr=False)

    def __post_init__(self):
        if self.coeffs.shape != (self.g ** self.m,):
            raise WordIndexError(f'{self.coeffs.shape[0]} coefficients for V^(x){self.m}')

    @classmethod
    def word(cls, K: Field, g: int, word: Sequence[int], coeff=None) -> 'TensorElement':
        coeffs = K.zeros(g ** len(word))
        coeffs[word_index(word, g)] = K.one if coeff is None else coeff
        return cls(K, g, len(word), coeffs)

    @classmethod
    def unit(cls, K: Field, g: int) -> 'TensorElement':
        return cls.word(K, g, ())

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        _check_same(self, other)
        return TensorElement(self.field, self.g, self.m, self.coeffs + other.coeffs)

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        _check_same(self, other)
        return TensorElement(self.field, self.g, self.m, self.coeffs - other.coeffs)

    def scale(self, c) -> 'TensorElement':
        return TensorElement(self.field, self.g, self.m, self.coeffs * c)

    def __mul__(self, other: 'TensorElement') -> 'TensorElement':
        return concat(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.g, self.m) == (other.g, other.m) and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self) -> int:
        return hash((self.g, self.m))


def _check_same(t1: TensorElement, t2: TensorElement) -> None:
    if t1.g != t2.g:
        raise GeneratorMismatch(f'{t1.g} vs {t2.g} generators')
    if t1.m != t2.m:
        raise WordIndexError(f'weights {t1.m} and {t2.m} differ')


def concat(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """
    Multiplication in T(V).

    Args:
        t1: Element of V^{⊗m1}
        t2: Element of V^{⊗m2}

    Returns:
        Element of V^{⊗(m1+m2)}
    """
    if t1.g != t2.g:
        raise GeneratorMismatch(f'{t1.g} vs {t2.g} generators')
    coeffs = np.multiply.outer(t1.coeffs, t2.coeffs).ravel()
    if coeffs.size == 0:
        coeffs = t1.field.zeros(0)
    return TensorElement(t1.field, t1.g, t1.m + t2.m, coeffs)


def sparse_concat(left: Dict[int, object], left_len: int,
                  right: Dict[int, object], right_len: int, g: int) -> Dict[int, object]:
    """
    concat on sparse word dictionaries {word index: coefficient}.

    Keys of the result are distinct for distinct (left, right) pairs, so no
    accumulation is needed.
    """
    shift = g ** right_len
    return {
        i * shift + j: a * b
        for i, a in left.items()
        for j, b in right.items()
    }


def full_space(K: Field, g: int, m: int) -> Subspace:
    return Subspace.full(K, g ** m)


def tensor_subspaces(U: Subspace, W: Subspace) -> Subspace:
    """
    U ⊗ W inside V^{⊗(a+b)}.

    The Kronecker product of two echelon bases is again an echelon basis
    (rows ordered by (row of U, row of W)), so no elimination is needed.

    Args:
        U: Subspace of V^{⊗a}
        W: Subspace of V^{⊗b}

    Returns:
        Subspace of V^{⊗(a+b)} of dimension dim U · dim W
    """
    if U.field != W.field:
        raise GeneratorMismatch('subspaces over different fields')
    K = U.field
    n = U.ambient_dim * W.ambient_dim
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(K, n)

    basis = np.multiply.outer(U.basis, W.basis)  # (dU, nU, dW, nW)
    basis = basis.transpose(0, 2, 1, 3).reshape(U.dim * W.dim, n)
    pivots = [pu * W.ambient_dim + pw for pu in U.pivots for pw in W.pivots]
    return Subspace.from_rref(K, basis, pivots)


def padded_relation_space(i: int, R: Subspace, j: int, g: int) -> Subspace:
    """V^{⊗i} ⊗ R ⊗ V^{⊗j}."""
    K = R.field
    right = tensor_subspaces(R, full_space(K, g, j)) if j else R
    return tensor_subspaces(full_space(K, g, i), right) if i else right
