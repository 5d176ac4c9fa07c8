"""
Word-Slice Terms
================
Every formula-driven map of the calculus (Koszul differentials, cup and cap
products, the associativity homotopies, derivation extensions) is a signed sum
of terms that cut an input word x_1 ... x_L into consecutive slices and
multiply the pieces back together:

    Lit(s, t)      the letters x_{s+1} ... x_t themselves
    Op(name, s, t) an operand cochain evaluated on x_{s+1} ... x_t
    Coef()         the coefficient m of a chain m ⊗ x_1 ... x_L

A chain-valued term also says which slice out = (s, t) stays behind as the
output W-word. TermEvaluator runs such sums on W-frame rows in the tensor
algebra and projects the results into A (or k) once per output column.

Notes:
- Slices are 0-based half-open intervals
- An operand is extended from W_{ν(p)} to all words by reading it at the
  echelon pivots of W_{ν(p)}; on W_{ν(p)} this agrees with the operand
- Output columns of chain maps are read at the pivot words of the output W
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from koszul_calculus.config import Config
from koszul_calculus.exceptions import NonComposable, NotMember
from koszul_calculus.graded_algebra import WordDict, nu
from koszul_calculus.logger import get_logger
from koszul_calculus.tensor_space import Word, sparse_concat, word_index

logger = get_logger()


@dataclass(frozen=True)
class Lit:
    start: int
    stop: int


@dataclass(frozen=True)
class Op:
    name: str
    start: int
    stop: int


@dataclass(frozen=True)
class Coef:
    """Chain coefficient (left coefficient for bimodule terms)."""


@dataclass(frozen=True)
class CoefRight:
    """Right coefficient of a bimodule term."""


Piece = Union[Lit, Op, Coef, CoefRight]


@dataclass(frozen=True)
class Term:
    sign: int
    pieces: Tuple[Piece, ...]
    out: Optional[Tuple[int, int]] = None
    right: Tuple[Piece, ...] = ()


def _clean(pieces: Sequence[Piece]) -> Tuple[Piece, ...]:
    cleaned = []
    for piece in pieces:
        if isinstance(piece, Lit):
            if piece.stop < piece.start:
                raise NonComposable(f'negative slice {piece}')
            if piece.stop == piece.start:
                continue
        cleaned.append(piece)
    return tuple(cleaned)


def term(sign: int, *pieces: Piece, out: Optional[Tuple[int, int]] = None,
         right: Sequence[Piece] = ()) -> Term:
    return Term(sign, _clean(pieces), out, _clean(right))


# ---------------------------------------------------------------------------
# Term builders
# ---------------------------------------------------------------------------

def cochain_bK_terms(p: int, N: int) -> List[Term]:
    """b_K on p-cochains: (−1)^{p+1} f∘d, evaluated on W_{ν(p+1)}."""
    L = nu(p + 1, N)
    if p % 2 == 0:
        return [
            term(1, Op('f', 0, L - 1), Lit(L - 1, L)),
            term(-1, Lit(0, 1), Op('f', 1, L)),
        ]
    v = nu(p, N)
    return [term(1, Lit(0, i), Op('f', i, i + v), Lit(i + v, L)) for i in range(N)]


def chain_bK_terms(p: int, N: int) -> List[Term]:
    """b_K on p-chains m ⊗ x_1 ... x_{ν(p)}."""
    v = nu(p, N)
    if p % 2 == 1:
        return [
            term(1, Coef(), Lit(0, 1), out=(1, v)),
            term(-1, Lit(v - 1, v), Coef(), out=(0, v - 1)),
        ]
    pp = p // 2
    shift = N * pp - N + 1
    return [
        term(1, Lit(i + shift, N * pp), Coef(), Lit(0, i), out=(i, i + shift))
        for i in range(N)
    ]


def bimodule_d_terms(p: int, N: int) -> List[Term]:
    """d on K_p = A ⊗ W_{ν(p)} ⊗ A; pieces are the left factor, right the right factor."""
    v = nu(p, N)
    if p % 2 == 1:
        return [
            term(1, Coef(), Lit(0, 1), out=(1, v), right=[CoefRight()]),
            term(-1, Coef(), out=(0, v - 1), right=[Lit(v - 1, v), CoefRight()]),
        ]
    shift = v - N + 1
    return [
        term(1, Coef(), Lit(0, i), out=(i, i + shift), right=[Lit(i + shift, v), CoefRight()])
        for i in range(N)
    ]


def cup_terms(p: int, q: int, N: int) -> List[Term]:
    """f ⌣ g for a p-cochain f and a q-cochain g."""
    a, b = nu(p, N), nu(q, N)
    if not (p % 2 == 1 and q % 2 == 1):
        return [term(1, Op('f', 0, a), Op('g', a, a + b))]
    L = a + b + N - 2
    terms = []
    for i in range(N - 1):
        for j in range(N - 1 - i):
            g_start = a + N - j - 2
            terms.append(term(
                -1,
                Lit(0, i), Op('f', i, i + a), Lit(i + a, g_start),
                Op('g', g_start, g_start + b), Lit(g_start + b, L),
            ))
    return terms


def cap_left_terms(p: int, q: int, N: int) -> List[Term]:
    """f ⌢ z for a p-cochain f and a q-chain z; empty when q < p."""
    if q < p:
        return []
    a, c, d = nu(p, N), nu(q, N), nu(q - p, N)
    if not (p % 2 == 1 and (q - p) % 2 == 1):
        return [term(1, Op('f', d, c), Coef(), out=(0, d))]
    pp, qq = p // 2, q // 2
    D = N * qq - N * pp
    terms = []
    for i in range(N - 1):
        for j in range(N - 1 - i):
            terms.append(term(
                -1,
                Lit(D - N + i + 1, D - j - 1), Op('f', D - j - 1, N * qq - j),
                Lit(N * qq - j, N * qq), Coef(), Lit(0, i),
                out=(i, i + D - N + 1),
            ))
    return terms


def cap_right_terms(p: int, q: int, N: int) -> List[Term]:
    """z ⌢ f for a q-chain z and a p-cochain f; empty when q < p."""
    if q < p:
        return []
    a, c = nu(p, N), nu(q, N)
    if not (p % 2 == 1 and (q - p) % 2 == 1):
        sign = -1 if (p * q) % 2 else 1
        return [term(sign, Coef(), Op('f', 0, a), out=(a, c))]
    pp, qq = p // 2, q // 2
    terms = []
    for i in range(N - 1):
        for j in range(N - 1 - i):
            terms.append(term(
                1,
                Lit(N * qq - j, N * qq), Coef(), Lit(0, i),
                Op('f', i, N * pp + i + 1), Lit(N * pp + i + 1, N * pp + N - j - 1),
                out=(N * pp + N - j - 1, N * qq - j),
            ))
    return terms


def associator_homotopy_terms(p: int, q: int, r: int, N: int) -> List[Term]:
    """
    The cochain u with b_K(u) = (f⌣g)⌣h − f⌣(g⌣h) for p, q, r all odd.

    u is the sum over 1 ≤ k ≤ N−2, 0 ≤ i ≤ N−2−k, 0 ≤ ℓ ≤ k−1 of the
    telescoping pieces; the sum is empty for N = 2.
    """
    pp, qq, rr = p // 2, q // 2, r // 2
    m = N * (pp + qq + rr + 1)
    fP, gQ = N * pp, N * qq
    terms = []
    for k in range(1, N - 1):
        for i in range(N - 1 - k):
            for ell in range(k):
                terms.append(term(
                    1,
                    Lit(0, ell),
                    Op('f', ell, ell + fP + 1),
                    Lit(ell + fP + 1, fP + i + 1 + ell),
                    Op('g', fP + i + 1 + ell, fP + gQ + i + 2 + ell),
                    Lit(fP + gQ + i + 2 + ell, fP + gQ + N - k + ell),
                    Op('h', fP + gQ + N - k + ell, m - k + 1 + ell),
                    Lit(m - k + 1 + ell, m),
                ))
    return terms


def cap_homotopy_terms(p: int, q: int, r: int, N: int) -> List[Term]:
    """
    The map F on (r−1)-chains, p = deg f, q = deg g, all of p, q, r odd.

    F(b_K z) = −(g⌢(f⌢z) − (g⌣f)⌢z); empty when r < p + q or N = 2.
    """
    if r < p + q:
        return []
    pp, qq, rr = p // 2, q // 2, r // 2
    R = N * rr
    S = R - N * pp - N * qq
    terms = []
    for i in range(N - 2):
        for j in range(N - 2 - i):
            for k in range(N - 2 - i - j):
                terms.append(term(
                    1,
                    Lit(S - N + i + 1, S - j - k - 2),
                    Op('g', S - j - k - 2, R - N * pp - j - k - 1),
                    Lit(R - N * pp - j - k - 1, R - N * pp - k - 1),
                    Op('f', R - N * pp - k - 1, R - k),
                    Lit(R - k, R), Coef(), Lit(0, i),
                    out=(i, S - N + i + 1),
                ))
    return terms


def derivation_terms(m: int) -> List[Term]:
    """D_f on a word of length m: Σ_k x_1 ... x_k f(x_{k+1}) x_{k+2} ... x_m."""
    return [term(1, Lit(0, k), Op('f', k, k + 1), Lit(k + 1, m)) for k in range(m)]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

Value = Tuple[int, WordDict]


class TermEvaluator:
    """
    Runs term sums for one algebra.

    Operands are objects with attributes p, matrix, module and either n
    (cochains) or w (chains), as defined in koszul_complex.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.field = algebra.field
        self.g = algebra.g
        self.N = algebra.N

    # ------------------------------------------------------------------
    # Operand tables
    # ------------------------------------------------------------------

    def _operand_table(self, cochain) -> Tuple[int, int, Dict[int, WordDict]]:
        """Lifted operand values keyed by the pivot words of W_{ν(p)}."""
        v = nu(cochain.p, self.N)
        weight = v + cochain.n
        frame = self.algebra.w_frame(v)
        table: Dict[int, WordDict] = {}
        for word_idx, r in frame.pivot_row.items():
            lifted = cochain.module.lift(weight, cochain.matrix[:, r])
            if lifted:
                table[word_idx] = lifted
        return v, weight, table

    def _tables(self, operands: Mapping[str, object]):
        return {name: self._operand_table(op) for name, op in operands.items()}

    # ------------------------------------------------------------------
    # Single products
    # ------------------------------------------------------------------

    def _product(self, pieces: Sequence[Piece], word: Word, tables,
                 coef: Optional[Value] = None, coef_right: Optional[Value] = None) -> Optional[Value]:
        g = self.g
        length, acc = 0, {0: self.field.one}
        for piece in pieces:
            if isinstance(piece, Lit):
                piece_len = piece.stop - piece.start
                value = {word_index(word[piece.start:piece.stop], g): self.field.one}
            elif isinstance(piece, Op):
                v, piece_len, table = tables[piece.name]
                if piece.stop - piece.start != v:
                    raise NonComposable(f'{piece} does not cover W_{v}')
                value = table.get(word_index(word[piece.start:piece.stop], g))
                if value is None:
                    return None
            else:
                piece_len, value = coef if isinstance(piece, Coef) else coef_right
                if not value:
                    return None
            acc = sparse_concat(acc, length, value, piece_len, g)
            length += piece_len
        return length, acc

    def word_value(self, terms: Sequence[Term], word: Word,
                   operands: Mapping[str, object]) -> Value:
        """Sum of the term products on a single word (no projection)."""
        tables = self._tables(operands)
        return self._accumulate(terms, word, self.field.one, tables, None)

    def _accumulate(self, terms, word, c, tables, length) -> Value:
        acc: WordDict = {}
        for t in terms:
            value = self._product(t.pieces, word, tables)
            if value is None:
                continue
            l, words = value
            if length is None:
                length = l
            elif l != length:
                raise NonComposable(f'term weights {l} and {length} differ')
            scale = c if t.sign == 1 else -c
            for k, x in words.items():
                acc[k] = acc.get(k, self.field.zero) + scale * x
        return (length if length is not None else 0), acc

    # ------------------------------------------------------------------
    # Cochain-valued sums
    # ------------------------------------------------------------------

    def cochain(self, terms: Sequence[Term], p_out: int, n_out: int,
                operands: Mapping[str, object], module) -> np.ndarray:
        """
        Matrix of a cochain-valued term sum.

        Args:
            terms: Term list over words of W_{ν(p_out)}
            p_out: Output degree
            n_out: Output internal weight
            operands: Name -> cochain
            module: Target coefficient module (algebra or ground field)

        Returns:
            Matrix of shape (dim M_{ν(p_out)+n_out}, dim W_{ν(p_out)})
        """
        K = self.field
        v = nu(p_out, self.N)
        weight = v + n_out
        frame = self.algebra.w_frame(v)
        out = K.zeros((module.dim(weight), frame.dim))
        if out.size == 0 or not terms:
            return out
        tables = self._tables(operands)
        for r, row in enumerate(frame.rows):
            acc: WordDict = {}
            for word, c in row:
                _, words = self._accumulate(terms, word, c, tables, weight)
                for k, x in words.items():
                    acc[k] = acc.get(k, K.zero) + x
            out[:, r] = module.project(weight, acc)
        return out

    # ------------------------------------------------------------------
    # Chain-valued sums
    # ------------------------------------------------------------------

    def chain(self, terms: Sequence[Term], z, p_out: int, coef_weight: int,
              operands: Mapping[str, object], module) -> np.ndarray:
        """
        Matrix of a chain-valued term sum applied to the chain z.

        Args:
            terms: Term list over words of W_{ν(z.p)}, each with an output slice
            z: Input chain
            p_out: Output degree
            coef_weight: Weight of the output coefficients
            operands: Name -> cochain
            module: Target coefficient module

        Returns:
            Matrix of shape (dim M_{coef_weight}, dim W_{ν(p_out)})
        """
        K, g = self.field, self.g
        v_in = nu(z.p, self.N)
        v_out = nu(p_out, self.N)
        frame_in = self.algebra.w_frame(v_in)
        frame_out = self.algebra.w_frame(v_out)
        out = K.zeros((module.dim(coef_weight), frame_out.dim))
        if out.size == 0 or not terms:
            return out

        tables = self._tables(operands)
        z_weight = z.w - v_in
        per_word: Dict[int, WordDict] = {}
        for r, row in enumerate(frame_in.rows):
            m_r = z.module.lift(z_weight, z.matrix[:, r])
            if not m_r:
                continue
            coef = (z_weight, m_r)
            for word, c in row:
                for t in terms:
                    s, e = t.out
                    if e - s != v_out:
                        raise NonComposable(f'output slice {t.out} does not cover W_{v_out}')
                    value = self._product(t.pieces, word, tables, coef=coef)
                    if value is None:
                        continue
                    length, words = value
                    if length != coef_weight:
                        raise NonComposable(f'coefficient weight {length}, expected {coef_weight}')
                    target = per_word.setdefault(word_index(word[s:e], g), {})
                    scale = c if t.sign == 1 else -c
                    for k, x in words.items():
                        target[k] = target.get(k, K.zero) + scale * x

        for word_idx, r_out in frame_out.pivot_row.items():
            if word_idx in per_word:
                out[:, r_out] = module.project(coef_weight, per_word[word_idx])

        if Config.STRICT_MEMBERSHIP:
            self._check_membership(out, per_word, frame_out, coef_weight, module)
        return out

    def _check_membership(self, out, per_word, frame_out, coef_weight, module) -> None:
        K = self.field
        n_words = self.g ** frame_out.length
        rebuilt = K.zeros((out.shape[0], n_words))
        if frame_out.dim and out.shape[0]:
            rebuilt = out @ frame_out.space.basis
        actual = K.zeros((out.shape[0], n_words))
        for word_idx, words in per_word.items():
            actual[:, word_idx] = module.project(coef_weight, words)
        if not np.all(rebuilt == actual):
            logger.error('Chain value outside M ⊗ W', length=frame_out.length)
            raise NotMember(f'chain value is not in M ⊗ W_{frame_out.length}')

    # ------------------------------------------------------------------
    # Bimodule images
    # ------------------------------------------------------------------

    def bimodule_images(self, terms: Sequence[Term], row, left: Value,
                        right: Value) -> List[Tuple[object, int, int, int, int, int]]:
        """
        Images of left ⊗ (W row) ⊗ right under a bimodule term sum.

        Returns:
            List of (coefficient, left weight, left word, out word, right weight, right word)
        """
        K, g = self.field, self.g
        images = []
        for word, c in row:
            for t in terms:
                lv = self._product(t.pieces, word, {}, coef=left)
                rv = self._product(t.right, word, {}, coef_right=right)
                if lv is None or rv is None:
                    continue
                (l_len, l_words), (r_len, r_words) = lv, rv
                s, e = t.out
                out_idx = word_index(word[s:e], g)
                scale = c if t.sign == 1 else -c
                for li, a in l_words.items():
                    for ri, b in r_words.items():
                        images.append((scale * a * b, l_len, li, out_idx, r_len, ri))
        return images
