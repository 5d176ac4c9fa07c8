"""
Koszul Calculus
===============
Cup and cap products, brackets, the fundamental 1-cocycle e_A, associators
and their homotopies, Koszul derivations, products on classes and higher
Koszul (co)homology.

Notes:
- Values of ⊗_A are collapsed at once by multiplication in A (or in k)
- A product lands in k as soon as one operand has coefficients in k
- e_A and Koszul derivations always take values in A
- Class-level structure constants are cached per pair of cells
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from koszul_calculus.exact_linalg import (
    HomologyBasis,
    QuotientMap,
    image,
    is_zero,
    kernel,
    matmul,
    stack_columns,
    homology,
)
from koszul_calculus.exceptions import (
    ConfigurationError,
    NotACocycle,
    NotACycle,
    ParityMismatch,
    WrongAlgebra,
)
from koszul_calculus.graded_algebra import GradedAlgebra, GroundField, nu
from koszul_calculus.koszul_complex import (
    DimensionTable,
    KoszulChain,
    KoszulCochain,
    KoszulComplex,
    null_chain,
)
from koszul_calculus.logger import get_logger
from koszul_calculus.tensor_space import TensorElement, word_index
from koszul_calculus.terms import (
    TermEvaluator,
    associator_homotopy_terms,
    cap_homotopy_terms,
    cap_left_terms,
    cap_right_terms,
    cup_terms,
    derivation_terms,
)

logger = get_logger()

ASSOCIATOR_KINDS = ('g_f_z', 'z_f_g', 'g_z_f')
E_OPERATORS = ('e_cup_left', 'cup_e_right', 'e_cap_left', 'cap_e_right')


@dataclass(frozen=True, eq=False)
class HomologyClass:
    """A class in a (co)homology cell, by coordinates in the cell's HomologyBasis."""

    side: str
    p: int
    weight: int
    coords: np.ndarray = dataclass_field(repr=False)

    def is_zero(self) -> bool:
        return is_zero(self.coords)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class KoszulCalculus:
    """
    The calculus of one algebra with coefficients M = A or k.

    Cochains and chains of the M complex are the operands; e_A and Koszul
    derivations come from the A complex.
    """

    def __init__(self, algebra: GradedAlgebra, coefficients: str = 'A'):
        self.algebra = algebra
        self.field = algebra.field
        self.N = algebra.N
        self.coefficients = coefficients
        self.complex = KoszulComplex(algebra, coefficients)
        self._complexes = {coefficients: self.complex}
        self.a_complex = self.complex_for(algebra)
        self.ground = self.complex.module if coefficients == 'k' else GroundField(algebra)
        self.evaluator = TermEvaluator(algebra)
        self._structure: Dict[tuple, np.ndarray] = {}
        self._boundary_ops: Dict[tuple, np.ndarray] = {}

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def nu(self, p: int) -> int:
        return nu(p, self.N)

    def _target(self, *operands):
        if any(getattr(op.module, 'is_ground', False) for op in operands):
            return self.ground
        return self.algebra

    def _cochain(self, terms, p: int, n: int, operands: dict) -> KoszulCochain:
        module = self._target(*operands.values())
        matrix = self.evaluator.cochain(terms, p, n, operands, module)
        return KoszulCochain(p, n, matrix, module)

    def _chain(self, terms, z: KoszulChain, p: int, w: int, operands: dict) -> KoszulChain:
        module = self._target(z, *operands.values())
        if p < 0:
            return null_chain(p, w, module)
        matrix = self.evaluator.chain(terms, z, p, w - self.nu(p), operands, module)
        return KoszulChain(p, w, matrix, module)

    def complex_for(self, module) -> KoszulComplex:
        """The complex whose coefficients are the given module."""
        key = 'k' if module.is_ground else 'A'
        if key not in self._complexes:
            self._complexes[key] = KoszulComplex(self.algebra, key)
        return self._complexes[key]

    def bK(self, x):
        """b_K of a cochain or a chain."""
        if isinstance(x, KoszulCochain):
            return self.complex_for(x.module).cochain_bK(x)
        return self.complex_for(x.module).chain_bK(x)

    # ------------------------------------------------------------------
    # The fundamental 1-cocycle
    # ------------------------------------------------------------------

    def e_A(self) -> KoszulCochain:
        """e_A: V → A_1, the identity of V."""
        g = self.algebra.g
        return KoszulCochain(1, 0, self.field.identity(g).reshape(self.algebra.dim(1), g), self.algebra)

    def constant_one(self) -> KoszulCochain:
        """The 1-cochain h with h(x) = 1 for every generator x."""
        g = self.algebra.g
        matrix = self.field.zeros((1, g))
        matrix[0, :] = self.field.one
        return KoszulCochain(1, -1, matrix, self.algebra)

    # ------------------------------------------------------------------
    # Products
    # ------------------------------------------------------------------

    def cup(self, f: KoszulCochain, g: KoszulCochain) -> KoszulCochain:
        """Koszul cup product, a (p+q)-cochain of internal weight n_f + n_g."""
        return self._cochain(cup_terms(f.p, g.p, self.N), f.p + g.p, f.n + g.n, {'f': f, 'g': g})

    def cap_left(self, f: KoszulCochain, z: KoszulChain) -> KoszulChain:
        """f ⌢ z, a (q−p)-chain of total weight w + n_f."""
        return self._chain(cap_left_terms(f.p, z.p, self.N), z, z.p - f.p, z.w + f.n, {'f': f})

    def cap_right(self, z: KoszulChain, f: KoszulCochain) -> KoszulChain:
        """z ⌢ f, a (q−p)-chain of total weight w + n_f."""
        return self._chain(cap_right_terms(f.p, z.p, self.N), z, z.p - f.p, z.w + f.n, {'f': f})

    def cup_bracket(self, f: KoszulCochain, g: KoszulCochain) -> KoszulCochain:
        """[f, g] = f⌣g − (−1)^{pq} g⌣f."""
        return self.cup(f, g) - self.cup(g, f).scale(self.field(_sign(f.p * g.p)))

    def cap_bracket(self, f: KoszulCochain, z: KoszulChain) -> KoszulChain:
        """[f, z] = f⌢z − (−1)^{pq} z⌢f."""
        return self.cap_left(f, z) - self.cap_right(z, f).scale(self.field(_sign(f.p * z.p)))

    # ------------------------------------------------------------------
    # Leibniz and fundamental formulas
    # ------------------------------------------------------------------

    def leibniz_check_cup(self, f: KoszulCochain, g: KoszulCochain) -> KoszulCochain:
        """b_K(f⌣g) − b_K(f)⌣g − (−1)^p f⌣b_K(g)."""
        sign = self.field(_sign(f.p))
        return self.bK(self.cup(f, g)) - self.cup(self.bK(f), g) - self.cup(f, self.bK(g)).scale(sign)

    def leibniz_check_cap(self, f: KoszulCochain, z: KoszulChain) -> Tuple[KoszulChain, KoszulChain]:
        """
        Residuals of the two cap Leibniz rules.

        Returns:
            (b_K(f⌢z) − b_K(f)⌢z − (−1)^p f⌢b_K(z),
             b_K(z⌢f) − b_K(z)⌢f − (−1)^q z⌢b_K(f))
        """
        left = self.bK(self.cap_left(f, z)) - self.cap_left(self.bK(f), z) \
            - self.cap_left(f, self.bK(z)).scale(self.field(_sign(f.p)))
        right = self.bK(self.cap_right(z, f)) - self.cap_right(self.bK(z), f) \
            - self.cap_right(z, self.bK(f)).scale(self.field(_sign(z.p)))
        return left, right

    def _fundamental_factor(self, odd: bool):
        return self.field(1 - self.N) if odd else self.field(-1)

    def fundamental_formula_check(self, f: KoszulCochain) -> KoszulCochain:
        """[e_A, f] − c·b_K(f), c = −1 for p even and 1 − N for p odd."""
        c = self._fundamental_factor(f.p % 2 == 1)
        return self.cup_bracket(self.e_A(), f) - self.bK(f).scale(c)

    def fundamental_formula_chain_check(self, z: KoszulChain) -> KoszulChain:
        """[e_A, z] − c·b_K(z), c = −1 for q odd and 1 − N for q even."""
        c = self._fundamental_factor(z.p % 2 == 0)
        return self.cap_bracket(self.e_A(), z) - self.bK(z).scale(c)

    # ------------------------------------------------------------------
    # Koszul derivations
    # ------------------------------------------------------------------

    def koszul_derivation_check(self, f: KoszulCochain) -> bool:
        """True iff Σ x_1…x_i f(x_{i+1}) x_{i+2}…x_N vanishes on R, i.e. b_K(f) = 0."""
        if f.p != 1:
            raise ConfigurationError(f'a Koszul derivation is a 1-cochain, got degree {f.p}')
        return self.bK(f).is_zero()

    def derivation_extension(self, f: KoszulCochain) -> 'DerivationExtension':
        if not self.koszul_derivation_check(f):
            raise NotACocycle('f is not a Koszul derivation')
        return DerivationExtension(self, f)

    def derbra_check(self, f: KoszulCochain, g: KoszulCochain) -> KoszulCochain:
        """[f, g] − b_K(D_f ∘ g) for a Koszul derivation f and a cocycle g."""
        if not self.bK(g).is_zero():
            raise NotACocycle('g is not a Koszul cocycle')
        D = self.derivation_extension(f)
        return self.cup_bracket(f, g) - self.bK(D.apply_cochain(g))

    def derbra_chain_check(self, f: KoszulCochain, z: KoszulChain) -> KoszulChain:
        """[f, z] − b_K(D_f(z)) for a Koszul derivation f and a cycle z."""
        if not self.bK(z).is_zero():
            raise NotACycle('z is not a Koszul cycle')
        D = self.derivation_extension(f)
        return self.cap_bracket(f, z) - self.bK(D.apply_chain(z))

    # ------------------------------------------------------------------
    # Associators
    # ------------------------------------------------------------------

    def associator_cup(self, f: KoszulCochain, g: KoszulCochain, h: KoszulCochain) -> KoszulCochain:
        """(f⌣g)⌣h − f⌣(g⌣h)."""
        return self.cup(self.cup(f, g), h) - self.cup(f, self.cup(g, h))

    def associator_homotopy_ooo(self, f: KoszulCochain, g: KoszulCochain,
                                h: KoszulCochain) -> KoszulCochain:
        """The (p+q+r−1)-cochain u with b_K(u) = associator_cup(f, g, h); p, q, r odd."""
        if not (f.p % 2 and g.p % 2 and h.p % 2):
            raise ParityMismatch(f'degrees ({f.p}, {g.p}, {h.p}) are not all odd')
        terms = associator_homotopy_terms(f.p, g.p, h.p, self.N)
        return self._cochain(terms, f.p + g.p + h.p - 1, f.n + g.n + h.n, {'f': f, 'g': g, 'h': h})

    def associator_cap(self, kind: str, f: KoszulCochain, g: KoszulCochain,
                       z: KoszulChain) -> KoszulChain:
        """
        Cap associators.

        Args:
            kind: 'g_f_z' for g⌢(f⌢z) − (g⌣f)⌢z,
                  'z_f_g' for (z⌢f)⌢g − z⌢(f⌣g),
                  'g_z_f' for g⌢(z⌢f) − (g⌢z)⌢f
            f, g: Cochains
            z: Chain

        Returns:
            Chain of degree r − p − q
        """
        if kind == 'g_f_z':
            return self.cap_left(g, self.cap_left(f, z)) - self.cap_left(self.cup(g, f), z)
        if kind == 'z_f_g':
            return self.cap_right(self.cap_right(z, f), g) - self.cap_right(z, self.cup(f, g))
        if kind == 'g_z_f':
            return self.cap_left(g, self.cap_right(z, f)) - self.cap_right(self.cap_left(g, z), f)
        raise ConfigurationError(f'unknown associator {kind!r}; choose from {", ".join(ASSOCIATOR_KINDS)}')

    def cap_homotopy_map(self, g: KoszulCochain, f: KoszulCochain, z_prev: KoszulChain) -> KoszulChain:
        """F on an (r−1)-chain, for odd p = deg f, q = deg g and r = z_prev.p + 1."""
        r = z_prev.p + 1
        if not (f.p % 2 and g.p % 2 and r % 2):
            raise ParityMismatch(f'degrees p={f.p}, q={g.p}, r={r} are not all odd')
        terms = cap_homotopy_terms(f.p, g.p, r, self.N)
        return self._chain(terms, z_prev, r - f.p - g.p, z_prev.w + f.n + g.n, {'f': f, 'g': g})

    def cap_homotopy_case3(self, g: KoszulCochain, f: KoszulCochain, z: KoszulChain) -> KoszulChain:
        """F(b_K(z)), equal to −as(g, f, z) for every chain z."""
        return self.cap_homotopy_map(g, f, self.bK(z))

    # ------------------------------------------------------------------
    # N-differentials
    # ------------------------------------------------------------------

    def e_operator(self, operator: str) -> Callable:
        e = self.e_A()
        operators = {
            'e_cup_left': lambda x: self.cup(e, x),
            'cup_e_right': lambda x: self.cup(x, e),
            'e_cap_left': lambda x: self.cap_left(e, x),
            'cap_e_right': lambda x: self.cap_right(x, e),
        }
        if operator not in operators:
            raise ConfigurationError(f'unknown operator {operator!r}; choose from {", ".join(E_OPERATORS)}')
        return operators[operator]

    def N_differential_check(self, operator: str, operand) -> List:
        """
        Iterates T(x), T²(x), ..., T^N(x) of an e_A operator.

        Returns:
            List of N iterates; the last one is zero
        """
        T = self.e_operator(operator)
        iterates = []
        x = operand
        for _ in range(self.N):
            x = T(x)
            iterates.append(x)
        return iterates

    # ------------------------------------------------------------------
    # Classes
    # ------------------------------------------------------------------

    def cell(self, side: str, p: int, weight: int) -> HomologyBasis:
        return self.complex.cell(side, p, weight)

    def cohomology_class(self, f: KoszulCochain) -> HomologyClass:
        cell = self.complex.cohomology_cell(f.p, f.n)
        return HomologyClass('cohomology', f.p, f.n, cell.coordinates(f.flat()))

    def homology_class(self, z: KoszulChain) -> HomologyClass:
        cell = self.complex.homology_cell(z.p, z.w)
        return HomologyClass('homology', z.p, z.w, cell.coordinates(z.flat()))

    def representative(self, cls: HomologyClass):
        cell = self.cell(cls.side, cls.p, cls.weight)
        vector = cell.representative(cls.coords)
        if cls.side == 'cohomology':
            return self.complex.cochain(cls.p, cls.weight, vector)
        return self.complex.chain(cls.p, cls.weight, vector)

    def basis_class(self, side: str, p: int, weight: int, i: int) -> HomologyClass:
        cell = self.cell(side, p, weight)
        coords = self.field.zeros(cell.dim)
        coords[i] = self.field.one
        return HomologyClass(side, p, weight, coords)

    def in_window(self, side: str, p: int, weight: int) -> bool:
        if p < 0:
            return False
        return weight in self.complex.weights(side, p)

    def cup_structure(self, p: int, n1: int, q: int, n2: int) -> np.ndarray:
        """T[i, j, :] = class coordinates of rep_i ⌣ rep_j in the (p+q, n1+n2) cell."""
        key = ('cup', p, n1, q, n2)
        if key not in self._structure:
            A_cell = self.complex.cohomology_cell(p, n1)
            B_cell = self.complex.cohomology_cell(q, n2)
            C_cell = self.complex.cohomology_cell(p + q, n1 + n2)
            table = self.field.zeros((A_cell.dim, B_cell.dim, C_cell.dim))
            for i in range(A_cell.dim):
                f = self.representative(self.basis_class('cohomology', p, n1, i))
                for j in range(B_cell.dim):
                    g = self.representative(self.basis_class('cohomology', q, n2, j))
                    table[i, j, :] = C_cell.coordinates(self.cup(f, g).flat())
            self._structure[key] = table
        return self._structure[key]

    def cap_structure(self, side: str, p: int, n: int, q: int, w: int) -> np.ndarray:
        """T[i, j, :] = class coordinates of rep_i ⌢ rep_j (side 'left') or rep_j ⌢ rep_i ('right')."""
        key = ('cap', side, p, n, q, w)
        if key not in self._structure:
            A_cell = self.complex.cohomology_cell(p, n)
            Z_cell = self.complex.homology_cell(q, w)
            C_cell = self.complex.homology_cell(q - p, w + n)
            table = self.field.zeros((A_cell.dim, Z_cell.dim, C_cell.dim))
            for i in range(A_cell.dim):
                f = self.representative(self.basis_class('cohomology', p, n, i))
                for j in range(Z_cell.dim):
                    z = self.representative(self.basis_class('homology', q, w, j))
                    product = self.cap_left(f, z) if side == 'left' else self.cap_right(z, f)
                    table[i, j, :] = C_cell.coordinates(product.flat())
            self._structure[key] = table
        return self._structure[key]

    def induced_cup(self, alpha: HomologyClass, beta: HomologyClass) -> HomologyClass:
        f, g = self.representative(alpha), self.representative(beta)
        product = self.cup(f, g)
        cell = self.complex.cohomology_cell(product.p, product.n)
        return HomologyClass('cohomology', product.p, product.n, cell.coordinates(product.flat()))

    def _induced_cap(self, alpha: HomologyClass, gamma: HomologyClass, left: bool) -> HomologyClass:
        f, z = self.representative(alpha), self.representative(gamma)
        product = self.cap_left(f, z) if left else self.cap_right(z, f)
        if product.p < 0:
            return HomologyClass('homology', product.p, product.w, self.field.zeros(0))
        cell = self.complex.homology_cell(product.p, product.w)
        return HomologyClass('homology', product.p, product.w, cell.coordinates(product.flat()))

    def induced_cap_left(self, alpha: HomologyClass, gamma: HomologyClass) -> HomologyClass:
        return self._induced_cap(alpha, gamma, left=True)

    def induced_cap_right(self, gamma: HomologyClass, alpha: HomologyClass) -> HomologyClass:
        return self._induced_cap(alpha, gamma, left=False)

    # ------------------------------------------------------------------
    # Higher Koszul (co)homology
    # ------------------------------------------------------------------

    def boundary_operator(self, side: str, p: int, weight: int) -> np.ndarray:
        """
        Class-level ∂: HK^p → HK^{p+1} (e_A ⌣ −) or HK_p → HK_{p−1} (e_A ⌢ −) on one cell.

        Returns:
            Matrix (target cell dim x source cell dim)
        """
        key = (side, p, weight)
        if key in self._boundary_ops:
            return self._boundary_ops[key]

        source = self.cell(side, p, weight)
        target_p = p + 1 if side == 'cohomology' else p - 1
        if target_p < 0:
            matrix = self.field.zeros((0, source.dim))
        else:
            target = self.cell(side, target_p, weight)
            e = self.e_A()
            columns = []
            for i in range(source.dim):
                rep = self.representative(self.basis_class(side, p, weight, i))
                value = self.cup(e, rep) if side == 'cohomology' else self.cap_left(e, rep)
                columns.append(target.coordinates(value.flat()))
            matrix = stack_columns(self.field, columns, target.dim)
        self._boundary_ops[key] = matrix
        return matrix

    def higher_cell(self, side: str, p: int, weight: int) -> HomologyBasis:
        """Homology of the class-level complex at (p, weight), in class coordinates."""
        d_out = self.boundary_operator(side, p, weight)
        incoming_p = p - 1 if side == 'cohomology' else p + 1
        if incoming_p < 0:
            d_in = self.field.zeros((self.cell(side, p, weight).dim, 0))
        else:
            d_in = self.boundary_operator(side, incoming_p, weight)
        return homology(self.field, d_out, d_in)

    def higher_dims(self, side: str, p_max: int, weights: Optional[Sequence[int]] = None) -> DimensionTable:
        """
        Higher Koszul (co)homology dimensions.

        ∂² = 0 is verified on classes before homology is taken.
        """
        cells: Dict[Tuple[int, int], int] = {}
        for p in range(p_max + 1):
            for weight in self.complex.weights(side, p, higher=True):
                if weights is not None and weight not in weights:
                    continue
                cells[(p, weight)] = self.higher_cell(side, p, weight).dim
        logger.info('Higher Koszul dimensions computed', side=side, p_max=p_max, cells=len(cells))
        return DimensionTable(side, self.coefficients, cells, self.complex.windowed, label='HK_hi')

    def degree_zero_higher_cohomology(self, n: int) -> int:
        """
        dim of {u ∈ Z(A)_n : u·x = v·x − x·v for some v ∈ A_n and every generator x}.
        """
        A = self.algebra
        if self.coefficients != 'A':
            raise ConfigurationError('degree-zero higher cohomology is computed for coefficients in A')
        K = self.field
        if A.dim(n) == 0:
            return 0
        commutator = A.commutator_matrix(n)
        center = kernel(K, commutator)
        if center.dim == 0:
            return 0
        if A.g == 0:
            return center.dim
        right = np.concatenate([A.right_multiplication((k,), n) for k in range(A.g)], axis=0)
        quotient = QuotientMap(image(K, commutator))
        condition = matmul(K, quotient.matrix, matmul(K, right, center.basis.T))
        return kernel(K, condition).dim

    def higher_leibniz_check(self, alpha: HomologyClass, beta: HomologyClass) -> bool:
        """
        Derivation rules of ∂ on classes.

        For two cohomology classes: ∂(α⌣β) = ∂(α)⌣β = (−1)^p α⌣∂(β).
        For a cohomology class α and a homology class γ:
        ∂(α⌢γ) = ∂(α)⌢γ = (−1)^p α⌢∂(γ) and ∂(γ⌢α) = ∂(γ)⌢α = (−1)^q γ⌢∂(α).
        """
        e = self.e_A()
        f = self.representative(alpha)
        x = self.representative(beta)
        K = self.field
        if beta.side == 'cohomology':
            values = [
                self.cup(e, self.cup(f, x)),
                self.cup(self.cup(e, f), x),
                self.cup(f, self.cup(e, x)).scale(K(_sign(f.p))),
            ]
            return self._same_cohomology_class(values)
        left = [
            self.cap_left(e, self.cap_left(f, x)),
            self.cap_left(self.cup(e, f), x),
            self.cap_left(f, self.cap_left(e, x)).scale(K(_sign(f.p))),
        ]
        right = [
            self.cap_left(e, self.cap_right(x, f)),
            self.cap_right(self.cap_left(e, x), f),
            self.cap_right(x, self.cup(e, f)).scale(K(_sign(x.p))),
        ]
        return self._same_homology_class(left) and self._same_homology_class(right)

    def _same_cohomology_class(self, values: Sequence[KoszulCochain]) -> bool:
        first = values[0]
        cell = self.complex.cohomology_cell(first.p, first.n)
        coords = [cell.coordinates(v.flat()) for v in values]
        return all(np.all(c == coords[0]) for c in coords[1:])

    def _same_homology_class(self, values: Sequence[KoszulChain]) -> bool:
        first = values[0]
        if first.p < 0:
            return True
        cell = self.complex.homology_cell(first.p, first.w)
        coords = [cell.coordinates(v.flat()) for v in values]
        return all(np.all(c == coords[0]) for c in coords[1:])

    # ------------------------------------------------------------------
    # Experiments on class bases
    # ------------------------------------------------------------------

    def cohomology_cells(self, p_max: int) -> List[Tuple[int, int]]:
        return [(p, n) for p in range(p_max + 1) for n in self.complex.cochain_weights(p)
                if self.complex.cohomology_cell(p, n).dim]

    def homology_cells(self, p_max: int) -> List[Tuple[int, int]]:
        return [(p, w) for p in range(p_max + 1) for w in self.complex.chain_weights(p)
                if self.complex.homology_cell(p, w).dim]

    def bracket_experiment(self, p_max: int) -> dict:
        """
        [α, β]_⌣ and [α, γ]_⌢ on class bases with total degree ≤ p_max.

        Returns:
            Dict with one row per pair of cells: degrees, weights, nonzero count and
            whether the cell falls in a case where the bracket is known to vanish
        """
        cup_rows, cap_rows = [], []
        cohomology = self.cohomology_cells(p_max)
        homology_cells = self.homology_cells(p_max)
        for p, n1 in cohomology:
            for q, n2 in cohomology:
                if p + q > p_max or not self.in_window('cohomology', p + q, n1 + n2):
                    continue
                T = self.cup_structure(p, n1, q, n2)
                S = self.cup_structure(q, n2, p, n1)
                bracket = T - np.transpose(S, (1, 0, 2)) * self.field(_sign(p * q))
                cup_rows.append({
                    'p': p, 'n1': n1, 'q': q, 'n2': n2,
                    'nonzero': int(sum(1 for x in bracket.flat if x != 0)),
                    'proven_zero': p in (0, 1) or q in (0, 1),
                })
        for p, n in cohomology:
            for q, w in homology_cells:
                if q < p or not self.in_window('homology', q - p, w + n):
                    continue
                L = self.cap_structure('left', p, n, q, w)
                R = self.cap_structure('right', p, n, q, w)
                bracket = L - R * self.field(_sign(p * q))
                cap_rows.append({
                    'p': p, 'n': n, 'q': q, 'w': w,
                    'nonzero': int(sum(1 for x in bracket.flat if x != 0)),
                    'proven_zero': p in (0, 1) or p == q,
                })
        all_zero = all(r['nonzero'] == 0 for r in cup_rows + cap_rows)
        proven_ok = all(r['nonzero'] == 0 for r in cup_rows + cap_rows if r['proven_zero'])
        return {'cup': cup_rows, 'cap': cap_rows, 'all_zero': all_zero, 'proven_cases_zero': proven_ok}

    def graded_symmetry_experiment(self, p_max: int) -> dict:
        """
        Compare α⌣β with β⌣α and α⌢γ with γ⌢α on class bases, with and without
        the Koszul sign.

        Returns:
            Dict of booleans: commutative, graded_commutative, symmetric, graded_symmetric
        """
        commutative = graded_commutative = True
        symmetric = graded_symmetric = True
        cohomology = self.cohomology_cells(p_max)
        for p, n1 in cohomology:
            for q, n2 in cohomology:
                if p + q > p_max or not self.in_window('cohomology', p + q, n1 + n2):
                    continue
                T = self.cup_structure(p, n1, q, n2)
                S = np.transpose(self.cup_structure(q, n2, p, n1), (1, 0, 2))
                commutative &= bool(np.all(T == S))
                graded_commutative &= bool(np.all(T == S * self.field(_sign(p * q))))
        for p, n in cohomology:
            for q, w in self.homology_cells(p_max):
                if q < p or not self.in_window('homology', q - p, w + n):
                    continue
                L = self.cap_structure('left', p, n, q, w)
                R = self.cap_structure('right', p, n, q, w)
                symmetric &= bool(np.all(L == R))
                graded_symmetric &= bool(np.all(L == R * self.field(_sign(p * q))))
        return {
            'commutative': commutative,
            'graded_commutative': graded_commutative,
            'symmetric': symmetric,
            'graded_symmetric': graded_symmetric,
        }

    def class_associators_vanish(self, p_max: int) -> dict:
        """Cup and cap associators on full class bases with total degree ≤ p_max."""
        K = self.field
        cohomology = self.cohomology_cells(p_max)
        homology_cells = self.homology_cells(p_max)
        cup_ok = cap_ok = True
        checked = 0
        for p, n1 in cohomology:
            for q, n2 in cohomology:
                for r, n3 in cohomology:
                    if p + q + r > p_max or not self.in_window('cohomology', p + q + r, n1 + n2 + n3):
                        continue
                    target = self.complex.cohomology_cell(p + q + r, n1 + n2 + n3)
                    for f in self._reps('cohomology', p, n1):
                        for g in self._reps('cohomology', q, n2):
                            for h in self._reps('cohomology', r, n3):
                                value = self.associator_cup(f, g, h)
                                cup_ok &= bool(np.all(target.coordinates(value.flat()) == 0))
                                checked += 1
        for p, n1 in cohomology:
            for q, n2 in cohomology:
                for r, w in homology_cells:
                    if r < p + q or r > p_max or not self.in_window('homology', r - p - q, w + n1 + n2):
                        continue
                    target = self.complex.homology_cell(r - p - q, w + n1 + n2)
                    for f in self._reps('cohomology', p, n1):
                        for g in self._reps('cohomology', q, n2):
                            for z in self._reps('homology', r, w):
                                for kind in ASSOCIATOR_KINDS:
                                    value = self.associator_cap(kind, f, g, z)
                                    cap_ok &= bool(np.all(target.coordinates(value.flat()) == 0))
                                    checked += 1
        return {'cup': cup_ok, 'cap': cap_ok, 'checked': checked}

    def _contract(self, a: np.ndarray, b: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Σ_ij a_i b_j T[i, j, :]."""
        d1, d2, d3 = T.shape
        if T.size == 0:
            return self.field.zeros(d3)
        partial = matmul(self.field, a, T.reshape(d1, d2 * d3)).reshape(d2, d3)
        return matmul(self.field, b, partial)

    def _reps(self, side: str, p: int, weight: int) -> List:
        cell = self.cell(side, p, weight)
        return [self.representative(self.basis_class(side, p, weight, i)) for i in range(cell.dim)]

    def higher_products_vanish(self, p_max: int) -> dict:
        """
        Products of higher classes, read in higher (co)homology.

        A product vanishes there when its class lies in the image of ∂.
        """
        cup_ok = cap_ok = True
        cells = [(p, n) for p in range(p_max + 1) for n in self.complex.cochain_weights(p, higher=True)]
        hi = {key: self.higher_cell('cohomology', *key) for key in cells}
        hi = {key: cell for key, cell in hi.items() if cell.dim}
        for (p, n1), H1 in hi.items():
            for (q, n2), H2 in hi.items():
                target_key = (p + q, n1 + n2)
                if p + q > p_max or target_key[1] not in self.complex.cochain_weights(p + q, higher=True):
                    continue
                T = self.cup_structure(p, n1, q, n2)
                target = self.higher_cell('cohomology', *target_key)
                for a in H1.representatives:
                    for b in H2.representatives:
                        coords = self._contract(a, b, T)
                        cup_ok &= target.is_boundary(coords) if target.ambient_dim else True
        chain_cells = [(q, w) for q in range(p_max + 1) for w in self.complex.chain_weights(q)]
        hi_chain = {key: self.higher_cell('homology', *key) for key in chain_cells}
        hi_chain = {key: cell for key, cell in hi_chain.items() if cell.dim}
        for (p, n), H1 in hi.items():
            for (q, w), H2 in hi_chain.items():
                if q < p or not self.in_window('homology', q - p, w + n):
                    continue
                target = self.higher_cell('homology', q - p, w + n)
                for side in ('left', 'right'):
                    T = self.cap_structure(side, p, n, q, w)
                    for a in H1.representatives:
                        for b in H2.representatives:
                            coords = self._contract(a, b, T)
                            cap_ok &= target.is_boundary(coords) if target.ambient_dim else True
        return {'cup': bool(cup_ok), 'cap': bool(cap_ok)}

    # ------------------------------------------------------------------
    # Cochain-level facts for k[x]/(x^N)
    # ------------------------------------------------------------------

    def _require_truncated(self) -> None:
        if not self.algebra.is_truncated:
            raise WrongAlgebra('this check is specific to k[x]/(x^N)')

    def truncated_product_check(self, p_max: int) -> dict:
        """
        Cochain-level closed forms on k[x]/(x^N), for all basis operands with p + q ≤ p_max.

        Cup: f⌣g = x^{i+j} unless p, q are both odd, then −N(N−1)/2 x^{N−2+i+j}.
        Cap (f: x^{ν(p)} ↦ x^i, z = x^j ⊗ x^{ν(q)}): f⌢z = (−1)^{pq} z⌢f = x^{i+j} ⊗ x^{ν(q−p)}
        unless p is odd and q even, then f⌢z = −z⌢f = −N(N−1)/2 x^{N−2+i+j} ⊗ x^{ν(q−p)}.
        """
        self._require_truncated()
        A, K, N = self.algebra, self.field, self.N
        constant = K(-(N * (N - 1) // 2))
        top = A.top_weight
        mismatches = []
        checked = 0

        def power(m):
            return A.from_word((0,) * m).coords if m <= top else K.zeros(0)

        def expected_value(weight, factor):
            if weight > top:
                return K.zeros(0)
            return power(weight) * factor

        for p in range(p_max + 1):
            for q in range(p_max + 1 - p):
                both_odd = p % 2 == 1 and q % 2 == 1
                for i in range(N):
                    for j in range(N):
                        f = self._truncated_cochain(p, i)
                        g = self._truncated_cochain(q, j)
                        value = self.cup(f, g).matrix[:, 0]
                        if both_odd:
                            want = expected_value(N - 2 + i + j, constant)
                        else:
                            want = expected_value(i + j, K.one)
                        checked += 1
                        if value.shape != want.shape or not np.all(value == want):
                            mismatches.append({'product': 'cup', 'p': p, 'q': q, 'i': i, 'j': j})
        for p in range(p_max + 1):
            for q in range(p, p_max + 1):
                case_two = p % 2 == 1 and (q - p) % 2 == 1
                for i in range(N):
                    for j in range(N):
                        f = self._truncated_cochain(p, i)
                        z = self._truncated_chain(q, j)
                        left = self.cap_left(f, z)
                        right = self.cap_right(z, f)
                        if case_two:
                            want_left = expected_value(N - 2 + i + j, constant)
                            want_right = expected_value(N - 2 + i + j, -constant)
                        else:
                            want_left = expected_value(i + j, K.one)
                            want_right = expected_value(i + j, K(_sign(p * q)))
                        checked += 1
                        for name, chain, want in (('cap_left', left, want_left), ('cap_right', right, want_right)):
                            value = chain.matrix[:, 0] if chain.matrix.size else K.zeros(0)
                            if value.shape != want.shape or not np.all(value == want):
                                mismatches.append({'product': name, 'p': p, 'q': q, 'i': i, 'j': j})
        return {'checked': checked, 'mismatches': mismatches, 'ok': not mismatches}

    def _truncated_cochain(self, p: int, i: int) -> KoszulCochain:
        """f_i: x^{ν(p)} ↦ x^i."""
        v = self.nu(p)
        matrix = self.algebra.from_word((0,) * i).coords.reshape(-1, 1)
        return KoszulCochain(p, i - v, matrix, self.algebra)

    def _truncated_chain(self, p: int, j: int) -> KoszulChain:
        """x^j ⊗ x^{ν(p)}."""
        v = self.nu(p)
        matrix = self.algebra.from_word((0,) * j).coords.reshape(-1, 1)
        return KoszulChain(p, j + v, matrix, self.algebra)

    def truncated_cochain_facts(self, rng: np.random.Generator, trials: int, p_max: int) -> dict:
        """
        Cochain-level structure of k[x]/(x^N) on random operands.

        Returns:
            Dict of booleans: cup associative, cup commutative, cup graded commutative
            (expected False in char ≠ 2 via an odd-odd witness), and the three
            cap associativity relations
        """
        self._require_truncated()
        A, K, N = self.algebra, self.field, self.N
        cx = self.complex
        top = A.top_weight

        def random_cochain(p):
            return cx.random_cochain(rng, p, int(rng.integers(0, top + 1)) - self.nu(p))

        def random_chain(p):
            return cx.random_chain(rng, p, self.nu(p) + int(rng.integers(0, top + 1)))

        associative = commutative = cap_associative = True
        for _ in range(trials):
            p, q, r = (int(x) for x in rng.integers(0, p_max + 1, size=3))
            f, g, h = random_cochain(p), random_cochain(q), random_cochain(r)
            associative &= self.associator_cup(f, g, h).is_zero()
            commutative &= self.cup(f, g) == self.cup(g, f)
            z = random_chain(int(rng.integers(p + q, p + q + p_max + 1)))
            for kind in ASSOCIATOR_KINDS:
                cap_associative &= self.associator_cap(kind, f, g, z).is_zero()

        # f⌣f = −f⌣f fails for the odd cochain x ↦ 1 unless 2 = 0
        one = self._truncated_cochain(1, 0)
        graded_commutative = self.cup(one, one).scale(K(2)).is_zero()
        return {
            'cup_associative': bool(associative),
            'cup_commutative': bool(commutative),
            'cup_graded_commutative': bool(graded_commutative),
            'cap_associative': bool(cap_associative),
        }


class DerivationExtension:
    """
    The derivation D_f: A → M extending a Koszul derivation f: V → M.

    D_f(x_1 … x_m) = Σ_k x_1 … x_k f(x_{k+1}) x_{k+2} … x_m, well defined on A
    because f kills the relations.
    """

    def __init__(self, calculus: KoszulCalculus, f: KoszulCochain):
        self.calculus = calculus
        self.f = f
        self.n = f.n
        self.module = f.module
        self._matrices: Dict[int, np.ndarray] = {}

    def matrix(self, m: int) -> np.ndarray:
        """D_f from A_m to M_{m+n}."""
        if m not in self._matrices:
            A = self.calculus.algebra
            K = A.field
            target = m + self.n
            columns = []
            terms = derivation_terms(m)
            for i in range(A.dim(m)):
                word = A.basis_word(m, i)
                _, words = self.calculus.evaluator.word_value(terms, word, {'f': self.f})
                columns.append(self.module.project(target, words))
            self._matrices[m] = stack_columns(K, columns, self.module.dim(target))
        return self._matrices[m]

    def apply(self, m: int, coords: np.ndarray) -> np.ndarray:
        return matmul(self.calculus.field, self.matrix(m), coords)

    def apply_cochain(self, g: KoszulCochain) -> KoszulCochain:
        """D_f ∘ g."""
        m = self.calculus.nu(g.p) + g.n
        return KoszulCochain(g.p, g.n + self.n, matmul(self.calculus.field, self.matrix(m), g.matrix),
                             self.module)

    def apply_chain(self, z: KoszulChain) -> KoszulChain:
        """(D_f ⊗ id)(z)."""
        m = z.w - self.calculus.nu(z.p)
        return KoszulChain(z.p, z.w + self.n, matmul(self.calculus.field, self.matrix(m), z.matrix),
                           self.module)


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

def cubic_associator_witness(calculus: KoszulCalculus) -> dict:
    """
    as(e_A, e_A, h) on W_4 for a cubic algebra on x, y with h ≡ 1, against
    (a−b)(xy−yx)(x−y), a and b read off the first relation.

    Returns:
        Dict with the associator value, the expected value (coordinates in A_3),
        whether they agree, whether the value is nonzero and whether
        (xy−yx)(x−y) lies outside span(r_1, r_2)
    """
    A = calculus.algebra
    K = calculus.field
    if A.g != 2 or A.N != 3 or A.w_dim(4) != 1:
        raise WrongAlgebra('the cubic witness needs two generators, N = 3 and dim W_4 = 1')

    e, h = calculus.e_A(), calculus.constant_one()
    value = calculus.associator_cup(e, e, h)
    x, y = 0, 1
    r1 = A.presentation.relations[0]
    a = r1.coeffs[word_index((y, y, x), 2)]
    b = r1.coeffs[word_index((y, x, y), 2)]

    def word(*letters):
        return TensorElement.word(K, 2, letters)

    commutator = word(x, y) - word(y, x)
    difference = word(x) - word(y)
    target = (commutator * difference)
    expected = A.from_tensor(target.scale(a - b)).coords

    # W_4 = span(row); w = x r_1 + y r_2 is λ·row with λ its pivot coordinate
    r2 = A.presentation.relations[1]
    w = word(x) * r1 + word(y) * r2
    frame = A.w_frame(4)
    pivot = frame.space.pivots[0]
    lam = w.coeffs[pivot]
    observed = value.matrix[:, 0] * lam

    outside = not A.relations.contains(target.coeffs)
    agrees = bool(np.all(observed == expected))
    nonzero = not is_zero(observed)
    logger.info('Cubic associator witness', agrees=agrees, nonzero=nonzero, outside=outside)
    return {
        'value': [K.to_str(c) for c in observed],
        'expected': [K.to_str(c) for c in expected],
        'agrees': agrees,
        'nonzero': nonzero,
        'outside_relations': outside,
    }


def cap_associator_witness(calculus: KoszulCalculus) -> dict:
    """The three cap associators at f = g = e_A, z = 1 ⊗ r_1 (a relation row of W_3)."""
    A = calculus.algebra
    if A.N < 3 or A.w_dim(A.N) == 0:
        raise WrongAlgebra('the cap witness needs N > 2 and a nonzero relation space')
    e = calculus.e_A()
    z = calculus.complex.chain(2, A.N, _unit_row(A, 0))
    values = {kind: calculus.associator_cap(kind, e, e, z) for kind in ASSOCIATOR_KINDS}
    return {kind: (not v.is_zero()) for kind, v in values.items()}


def _unit_row(A: GradedAlgebra, r: int) -> np.ndarray:
    matrix = A.field.zeros((1, A.w_dim(A.N)))
    matrix[0, r] = A.field.one
    return matrix
