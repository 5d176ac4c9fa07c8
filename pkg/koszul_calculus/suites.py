"""
Verification Suites
===================
Seeded randomized and exhaustive checks of the calculus identities, grouped
the way `verify SUITE` runs them.

Notes:
- Every suite draws from numpy.random.default_rng(seed); one seed gives one report
- Operands are sampled from cells that fit the weight window, so a suite never
  raises ResourceCapExceeded halfway through
- A property fails on its first nonzero residual count; the suite fails if any
  asserted property fails. Experiments that are not asserted land in `data`
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from koszul_calculus.bar_comparison import (
    ComparisonMorphism,
    class_morphism_check,
    closed_form_chi_truncated,
    non_morphism_witness,
)
from koszul_calculus.calculus import (
    ASSOCIATOR_KINDS,
    E_OPERATORS,
    KoszulCalculus,
    cap_associator_witness,
    cubic_associator_witness,
)
from koszul_calculus.exact_linalg import matmul
from koszul_calculus.exceptions import ConfigurationError
from koszul_calculus.graded_algebra import nu
from koszul_calculus.koszul_complex import BimoduleComplex, KoszulChain, KoszulCochain
from koszul_calculus.logger import get_logger

logger = get_logger()

SUITE_NAMES = ('leibniz', 'fundamental', 'associativity', 'n_differential', 'brackets', 'comparison')

Cell = Tuple[int, int]


def parity(*degrees: int) -> str:
    return '-'.join('odd' if d % 2 else 'even' for d in degrees)


@dataclass
class PropertyResult:
    """Pass/fail tally of one property."""

    name: str
    trials: int = 0
    failures: int = 0
    detail: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, passed: bool) -> None:
        self.trials += 1
        if not passed:
            self.failures += 1

    def to_payload(self) -> dict:
        return {'name': self.name, 'trials': self.trials, 'failures': self.failures,
                'ok': self.ok, **self.detail}


@dataclass
class SuiteResult:
    suite: str
    seed: int
    properties: List[PropertyResult] = field(default_factory=list)
    data: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(prop.ok for prop in self.properties)

    def add(self, name: str, **detail) -> PropertyResult:
        prop = PropertyResult(name, detail=detail)
        self.properties.append(prop)
        return prop

    def check(self, name: str, passed: bool, **detail) -> PropertyResult:
        """A property decided by a single computation."""
        prop = self.add(name, **detail)
        prop.record(bool(passed))
        return prop

    def failed(self) -> List[str]:
        return [prop.name for prop in self.properties if not prop.ok]

    def to_payload(self) -> dict:
        return {
            'suite': self.suite,
            'seed': self.seed,
            'ok': self.ok,
            'failed': self.failed(),
            'properties': [prop.to_payload() for prop in self.properties],
            'data': self.data,
        }


class Sampler:
    """Random operands drawn from window-safe cells of one calculus."""

    def __init__(self, calculus: KoszulCalculus, rng: np.random.Generator, p_max: int):
        self.calculus = calculus
        self.complex = calculus.complex
        self.algebra = calculus.algebra
        self.field = calculus.field
        self.rng = rng
        windowed = not self.algebra.is_finite
        self.cochain_degree = min(p_max, 3)
        self.chain_degree = min(p_max, 3 if windowed else 5)

    def cochain_cells(self, p_max: Optional[int] = None, higher: bool = False) -> List[Cell]:
        top = self.cochain_degree if p_max is None else p_max
        return [(p, n) for p in range(top + 1) for n in self.complex.cochain_weights(p, higher)
                if self.complex.cochain_dim(p, n)]

    def chain_cells(self, q_max: Optional[int] = None) -> List[Cell]:
        top = self.chain_degree if q_max is None else q_max
        return [(q, w) for q in range(top + 1) for w in self.complex.chain_weights(q)
                if self.complex.chain_dim(q, w)]

    def fits_cochain(self, p: int, n: int) -> bool:
        return n in self.complex.cochain_weights(p)

    def fits_chain(self, q: int, w: int) -> bool:
        return q < 0 or w in self.complex.chain_weights(q)

    def reaches_cochain(self, p: int, n: int) -> bool:
        """Cells outside the weights of a finite algebra are zero, hence computable."""
        return self.algebra.is_finite or self.fits_cochain(p, n)

    def reaches_chain(self, q: int, w: int) -> bool:
        return self.algebra.is_finite or self.fits_chain(q, w)

    def choose(self, candidates: Sequence):
        return candidates[int(self.rng.integers(len(candidates)))]

    def cochain(self, p: int, n: int) -> KoszulCochain:
        return self.complex.random_cochain(self.rng, p, n)

    def chain(self, q: int, w: int) -> KoszulChain:
        return self.complex.random_chain(self.rng, q, w)

    def cocycle(self, p: int, n: int) -> KoszulCochain:
        cycles = self.complex.cohomology_cell(p, n).cycles
        coeffs = self.field.random_array(self.rng, cycles.dim)
        return self.complex.cochain(p, n, matmul(self.field, coeffs, cycles.basis))

    def cycle(self, q: int, w: int) -> KoszulChain:
        cycles = self.complex.homology_cell(q, w).cycles
        coeffs = self.field.random_array(self.rng, cycles.dim)
        return self.complex.chain(q, w, matmul(self.field, coeffs, cycles.basis))

    def cocycle_cells(self, p_max: Optional[int] = None) -> List[Cell]:
        return [c for c in self.cochain_cells(p_max) if self.complex.cohomology_cell(*c).cycles.dim]

    def cycle_cells(self, q_max: Optional[int] = None) -> List[Cell]:
        return [c for c in self.chain_cells(q_max) if self.complex.homology_cell(*c).cycles.dim]

    def cup_pairs(self) -> Dict[str, List[Tuple[int, int, int, int]]]:
        """(p, n1, q, n2) grouped by parity, with every product in the window."""
        cells = self.cochain_cells()
        pairs: Dict[str, list] = {}
        for p, n1 in cells:
            for q, n2 in cells:
                if self.fits_cochain(p + q, n1 + n2):
                    pairs.setdefault(parity(p, q), []).append((p, n1, q, n2))
        return pairs

    def cap_pairs(self) -> Dict[str, List[Tuple[int, int, int, int]]]:
        """(p, n, q, w) grouped by parity with q ≥ p and the cap in the window."""
        pairs: Dict[str, list] = {}
        for p, n in self.cochain_cells():
            for q, w in self.chain_cells():
                if q >= p and self.fits_chain(q - p, w + n):
                    pairs.setdefault(parity(p, q), []).append((p, n, q, w))
        return pairs


def _run_parity_cases(result: SuiteResult, sampler: Sampler, name: str, pairs: Dict[str, list],
                      trials: int, check: Callable[[tuple], bool]) -> None:
    for case in ('even-even', 'even-odd', 'odd-even', 'odd-odd'):
        prop = result.add(f'{name}:{case}')
        candidates = pairs.get(case, [])
        if not candidates:
            prop.detail['skipped'] = 'no cell in the window'
            continue
        for _ in range(trials):
            prop.record(check(sampler.choose(candidates)))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def run_leibniz(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult, trials: int,
                p_max: int, **_) -> None:
    """Compatibility of cup and both caps with b_K; b_K² = 0 and d² = 0."""
    cx = calculus.complex

    def cup_case(args):
        p, n1, q, n2 = args
        return calculus.leibniz_check_cup(sampler.cochain(p, n1), sampler.cochain(q, n2)).is_zero()

    def cap_case(args, side):
        p, n, q, w = args
        left, right = calculus.leibniz_check_cap(sampler.cochain(p, n), sampler.chain(q, w))
        return (left if side == 0 else right).is_zero()

    _run_parity_cases(result, sampler, 'cup_leibniz', sampler.cup_pairs(), trials, cup_case)
    cap_pairs = sampler.cap_pairs()
    _run_parity_cases(result, sampler, 'cap_leibniz_left', cap_pairs, trials, lambda a: cap_case(a, 0))
    _run_parity_cases(result, sampler, 'cap_leibniz_right', cap_pairs, trials, lambda a: cap_case(a, 1))

    squared = result.add('bK_squared')
    higher_cells = sampler.cochain_cells(higher=True)
    chain_cells = sampler.chain_cells()
    for _ in range(trials):
        p, n = sampler.choose(higher_cells)
        squared.record(cx.cochain_bK(cx.cochain_bK(sampler.cochain(p, n))).is_zero())
        q, w = sampler.choose(chain_cells)
        squared.record(cx.chain_bK(cx.chain_bK(sampler.chain(q, w))).is_zero())

    A = calculus.algebra
    bimodule = BimoduleComplex(A)
    d_squared = result.add('d_squared')
    for p in range(2, p_max + 1):
        v = nu(p, A.N)
        top = v + 2 * A.top_weight if A.is_finite else A.w_max
        for w in range(v, min(top, A.w_max) + 1):
            d_squared.record(bimodule.check_d_squared(p, w))


def run_fundamental(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult, trials: int,
                    **_) -> None:
    """[e_A, −] against b_K on cochains and chains; derivation brackets against b_K(D_f ∘ −)."""
    by_parity: Dict[str, list] = {}
    for p, n in sampler.cochain_cells():
        by_parity.setdefault(parity(p), []).append((p, n))
    chains: Dict[str, list] = {}
    for q, w in sampler.chain_cells():
        if q >= 1:
            chains.setdefault(parity(q), []).append((q, w))

    for case in ('even', 'odd'):
        prop = result.add(f'fundamental_cochain:{case}')
        for _ in range(trials if by_parity.get(case) else 0):
            p, n = sampler.choose(by_parity[case])
            prop.record(calculus.fundamental_formula_check(sampler.cochain(p, n)).is_zero())
        prop = result.add(f'fundamental_chain:{case}')
        for _ in range(trials if chains.get(case) else 0):
            q, w = sampler.choose(chains[case])
            prop.record(calculus.fundamental_formula_chain_check(sampler.chain(q, w)).is_zero())

    if calculus.coefficients != 'A':
        result.data['derivation_brackets'] = 'skipped for coefficients in k'
        return

    derivations = [(p, n) for p, n in sampler.cocycle_cells(1) if p == 1]
    cocycles = sampler.cocycle_cells()
    cycles = [(q, w) for q, w in sampler.cycle_cells() if q >= 1]
    cochain_pairs: Dict[str, list] = {}
    chain_pairs: Dict[str, list] = {}
    for _, nf in derivations:
        for q, n2 in cocycles:
            # on k[x]/(x^N) every odd q lands in a zero cell of degree q + 1
            if sampler.reaches_cochain(q, n2 + nf) and sampler.reaches_cochain(q + 1, n2 + nf):
                cochain_pairs.setdefault(parity(q), []).append((nf, q, n2))
        for q, w in cycles:
            if sampler.reaches_chain(q, w + nf):
                chain_pairs.setdefault(parity(q), []).append((nf, q, w))

    for case in ('even', 'odd'):
        prop = result.add(f'derivation_bracket:{case}')
        for _ in range(trials if cochain_pairs.get(case) else 0):
            nf, q, n2 = sampler.choose(cochain_pairs[case])
            f, g = sampler.cocycle(1, nf), sampler.cocycle(q, n2)
            prop.record(calculus.derbra_check(f, g).is_zero())
        prop = result.add(f'derivation_bracket_chain:{case}')
        for _ in range(trials if chain_pairs.get(case) else 0):
            nf, q, w = sampler.choose(chain_pairs[case])
            f, z = sampler.cocycle(1, nf), sampler.cycle(q, w)
            prop.record(calculus.derbra_chain_check(f, z).is_zero())


def _class_degree(calculus: KoszulCalculus, p_max: int) -> int:
    return min(p_max, 5 if calculus.algebra.is_finite else 3)


def run_associativity(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult, trials: int,
                      homotopy_trials: int, p_max: int, **_) -> None:
    """Cochain-level associators, the two homotopies, class-level vanishing and witnesses."""
    K, N = calculus.field, calculus.N
    cells = sampler.cochain_cells()
    chain_cells = sampler.chain_cells()

    def triples(pool, condition):
        found = []
        for p, n1 in pool:
            for q, n2 in pool:
                for r, n3 in pool:
                    if condition(p, q, r) and sampler.fits_cochain(p + q + r, n1 + n2 + n3) \
                            and sampler.fits_cochain(p + q, n1 + n2) and sampler.fits_cochain(q + r, n2 + n3):
                        found.append((p, n1, q, n2, r, n3))
        return found

    additive = triples(cells, lambda p, q, r: (p % 2) + (q % 2) + (r % 2) <= 1)
    prop = result.add('cup_associator_additive')
    for _ in range(homotopy_trials if additive else 0):
        p, n1, q, n2, r, n3 = sampler.choose(additive)
        f, g, h = sampler.cochain(p, n1), sampler.cochain(q, n2), sampler.cochain(r, n3)
        prop.record(calculus.associator_cup(f, g, h).is_zero())

    # all-odd triples: b_K(u) = as(f, g, h) for any cochains
    odd = [t for t in triples(cells, lambda p, q, r: p % 2 and q % 2 and r % 2)
           if sampler.fits_cochain(t[0] + t[2] + t[4] - 1, t[1] + t[3] + t[5])]
    prop = result.add('cup_associator_homotopy')
    for _ in range(homotopy_trials if odd and N > 2 else 0):
        p, n1, q, n2, r, n3 = sampler.choose(odd)
        f, g, h = sampler.cochain(p, n1), sampler.cochain(q, n2), sampler.cochain(r, n3)
        u = calculus.associator_homotopy_ooo(f, g, h)
        prop.record(calculus.bK(u) == calculus.associator_cup(f, g, h))

    # odd p, q, r: F(b_K(z)) = −as(g, f, z) for any cochains and chain
    odd_cochains = [(p, n) for p, n in cells if p % 2]
    case3 = []
    for p, n1 in odd_cochains:
        for q, n2 in odd_cochains:
            for r, w in chain_cells:
                if r % 2 and r > p + q and sampler.fits_chain(r - p - q, w + n1 + n2) \
                        and sampler.fits_chain(r - p, w + n1) and sampler.fits_cochain(p + q, n1 + n2):
                    case3.append((p, n1, q, n2, r, w))
    prop = result.add('cap_homotopy_case3')
    for _ in range(homotopy_trials if case3 and N > 2 else 0):
        p, n1, q, n2, r, w = sampler.choose(case3)
        f, g, z = sampler.cochain(p, n1), sampler.cochain(q, n2), sampler.chain(r, w)
        lhs = calculus.cap_homotopy_case3(g, f, z)
        rhs = calculus.associator_cap('g_f_z', f, g, z).scale(K(-1))
        prop.record(lhs == rhs)

    # ν(r − p − q) = ν(r) − ν(p) − ν(q): all three cap associators vanish
    additive_caps = []
    for p, n1 in cells:
        for q, n2 in cells:
            for r, w in chain_cells:
                if r < p + q or nu(r - p - q, N) != nu(r, N) - nu(p, N) - nu(q, N):
                    continue
                if sampler.fits_cochain(p + q, n1 + n2) and sampler.fits_chain(r - p, w + n1) \
                        and sampler.fits_chain(r - q, w + n2) and sampler.fits_chain(r - p - q, w + n1 + n2):
                    additive_caps.append((p, n1, q, n2, r, w))
    prop = result.add('cap_associator_additive')
    for _ in range(homotopy_trials if additive_caps else 0):
        p, n1, q, n2, r, w = sampler.choose(additive_caps)
        f, g, z = sampler.cochain(p, n1), sampler.cochain(q, n2), sampler.chain(r, w)
        prop.record(all(calculus.associator_cap(kind, f, g, z).is_zero() for kind in ASSOCIATOR_KINDS))

    # class products do not depend on the representative
    prop = result.add('representative_independence')
    pairs = [pair for case in sampler.cup_pairs().values() for pair in case
             if calculus.complex.cohomology_cell(pair[0], pair[1]).dim
             and calculus.complex.cohomology_cell(pair[2], pair[3]).dim
             and pair[0] >= 1 and sampler.fits_cochain(pair[0] - 1, pair[1])]
    for _ in range(homotopy_trials if pairs else 0):
        p, n1, q, n2 = sampler.choose(pairs)
        f, g = sampler.cocycle(p, n1), sampler.cocycle(q, n2)
        shifted = f + calculus.bK(sampler.cochain(p - 1, n1))
        same = calculus.cohomology_class(calculus.cup(f, g)).coords
        other = calculus.cohomology_class(calculus.cup(shifted, g)).coords
        prop.record(bool(np.all(same == other)))

    degree = _class_degree(calculus, p_max)
    classes = calculus.class_associators_vanish(degree)
    result.check('class_cup_associators', classes['cup'], degree=degree, checked=classes['checked'])
    result.check('class_cap_associators', classes['cap'], degree=degree)

    A = calculus.algebra
    if calculus.coefficients == 'A' and A.g == 2 and N == 3 and A.w_dim(4) == 1:
        witness = cubic_associator_witness(calculus)
        result.data['cubic_witness'] = witness
        result.check('cubic_witness', witness['agrees'] and witness['nonzero'] and witness['outside_relations'])
    if calculus.coefficients == 'A' and N > 2 and A.w_dim(N):
        result.data['cap_witness'] = cap_associator_witness(calculus)

    if calculus.coefficients == 'A' and A.is_truncated:
        facts = calculus.truncated_cochain_facts(sampler.rng, homotopy_trials, min(p_max, 3))
        result.data['truncated_cochain_facts'] = facts
        result.check('truncated_cup_associative', facts['cup_associative'])
        result.check('truncated_cup_commutative', facts['cup_commutative'])
        expect_graded = K.characteristic == 2
        result.check('truncated_cup_graded_commutative', facts['cup_graded_commutative'] == expect_graded,
                     expected=expect_graded)
        result.check('truncated_cap_associative', facts['cap_associative'])


def run_n_differential(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult,
                       ndiff_trials: int, p_max: int, **_) -> None:
    """N-th iterates of the four e_A operators vanish; e_A⌣e_A = 0; ∂² = 0 on classes."""
    A, K, N = calculus.algebra, calculus.field, calculus.N
    cochains = [(p, n) for p, n in sampler.cochain_cells()
                if A.is_finite or sampler.fits_cochain(p + N - 1, n)]
    chains = sampler.chain_cells()
    for operator in E_OPERATORS:
        prop = result.add(f'nth_iterate:{operator}')
        pool = cochains if operator in ('e_cup_left', 'cup_e_right') else chains
        draw = sampler.cochain if pool is cochains else sampler.chain
        for _ in range(ndiff_trials if pool else 0):
            iterates = calculus.N_differential_check(operator, draw(*sampler.choose(pool)))
            prop.record(iterates[-1].is_zero())

    e = calculus.e_A()
    result.check('e_cup_e_zero', calculus.cup(e, e).is_zero())

    if calculus.coefficients == 'A' and A.g and N > 2 and (A.is_finite or A.w_max >= nu(3, N) - 1):
        h = calculus.constant_one()
        second = calculus.N_differential_check('e_cup_left', h)
        result.data['constant_one_second_iterate_zero'] = second[1].is_zero()
        if A.g == 2 and N == 3 and A.w_dim(4) == 1:
            result.check('second_iterate_witness', not second[1].is_zero())

    prop = result.add('class_boundary_squared')
    degree = _class_degree(calculus, p_max)
    for p in range(degree):
        reachable = set(calculus.complex.weights('cohomology', p + 1, higher=True))
        for n in calculus.complex.weights('cohomology', p, higher=True):
            if n not in reachable:
                continue
            outer = calculus.boundary_operator('cohomology', p + 1, n)
            inner = calculus.boundary_operator('cohomology', p, n)
            prop.record(not np.any(matmul(K, outer, inner) != 0))
    for q in range(2, degree + 1):
        for w in calculus.complex.weights('homology', q):
            outer = calculus.boundary_operator('homology', q - 1, w)
            inner = calculus.boundary_operator('homology', q, w)
            prop.record(not np.any(matmul(K, outer, inner) != 0))


def run_brackets(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult, p_max: int,
                 **_) -> None:
    """Bracket vanishing, graded symmetry and the higher (co)homology class identities."""
    A, K = calculus.algebra, calculus.field
    truncated = A.is_truncated and calculus.coefficients == 'A'
    degree = _class_degree(calculus, p_max)

    brackets = calculus.bracket_experiment(degree)
    result.data['brackets'] = {
        'cup_cells': len(brackets['cup']),
        'cap_cells': len(brackets['cap']),
        'all_zero': brackets['all_zero'],
    }
    result.check('bracket_proven_cases', brackets['proven_cases_zero'])
    if truncated:
        result.check('bracket_all_zero', brackets['all_zero'])

    symmetry = calculus.graded_symmetry_experiment(degree)
    result.data['graded_symmetry'] = symmetry
    if truncated:
        result.check('classes_commutative', symmetry['commutative'])
        result.check('classes_graded_commutative', symmetry['graded_commutative'])
        result.check('classes_graded_symmetric', symmetry['graded_symmetric'])
        if degree >= 2:
            expect = K.characteristic == 2
            result.check('classes_symmetric', symmetry['symmetric'] == expect, expected=expect)

    prop = result.add('higher_leibniz')
    cohomology = [c for c in sampler.cochain_cells(degree) if calculus.complex.cohomology_cell(*c).dim]
    homology_cells = [c for c in sampler.chain_cells(degree) if calculus.complex.homology_cell(*c).dim]
    for p, n1 in cohomology:
        for q, n2 in cohomology:
            if p + q + 1 > degree or not sampler.fits_cochain(p + q + 1, n1 + n2):
                continue
            if not sampler.fits_cochain(p + 1, n1) or not sampler.fits_cochain(q + 1, n2):
                continue
            for i in range(calculus.cell('cohomology', p, n1).dim):
                for j in range(calculus.cell('cohomology', q, n2).dim):
                    alpha = calculus.basis_class('cohomology', p, n1, i)
                    beta = calculus.basis_class('cohomology', q, n2, j)
                    prop.record(calculus.higher_leibniz_check(alpha, beta))
        for q, w in homology_cells:
            if q < p + 1 or not sampler.fits_chain(q - p - 1, w + n1) or not sampler.fits_cochain(p + 1, n1):
                continue
            for i in range(calculus.cell('cohomology', p, n1).dim):
                for j in range(calculus.cell('homology', q, w).dim):
                    alpha = calculus.basis_class('cohomology', p, n1, i)
                    gamma = calculus.basis_class('homology', q, w, j)
                    prop.record(calculus.higher_leibniz_check(alpha, gamma))

    if calculus.coefficients == 'A':
        prop = result.add('degree_zero_higher_cohomology')
        for n in calculus.complex.weights('cohomology', 0, higher=True):
            prop.record(calculus.degree_zero_higher_cohomology(n) == calculus.higher_cell('cohomology', 0, n).dim)
    if truncated:
        products = calculus.higher_products_vanish(degree)
        result.check('higher_products_vanish', products['cup'] and products['cap'])
        closed = calculus.truncated_product_check(degree)
        result.check('truncated_closed_forms', closed['ok'], checked=closed['checked'])


def run_comparison(calculus: KoszulCalculus, sampler: Sampler, result: SuiteResult, p_max: int,
                   **_) -> None:
    """Bar resolution, the comparison morphism χ and, for k[x]/(x^N), its (non-)morphism properties."""
    A = calculus.algebra
    a_calculus = calculus if calculus.coefficients == 'A' else KoszulCalculus(A, 'A')
    chi = ComparisonMorphism(A)
    bar = chi.bar
    degree = min(p_max, 5 if A.is_finite else 3)
    chi.build(degree)

    homotopy = result.add('contracting_homotopy')
    bar_squared = result.add('bar_differential_squared')
    hochschild_squared = result.add('hochschild_b_squared')
    K = A.field
    for p in range(min(degree, 3) + 1):
        for w in bar.homology_weights(p):
            if w > min(bar.window, nu(p, A.N) + 2):
                continue
            homotopy.record(bar.contracting_homotopy_check(p, w))
            if p >= 1:
                bar_squared.record(not np.any(matmul(K, bar.bar_differential(p, w),
                                                     bar.bar_differential(p + 1, w)) != 0))
                hochschild_squared.record(not np.any(matmul(K, bar.hochschild_b(p, w),
                                                            bar.hochschild_b(p + 1, w)) != 0))

    checks = chi.verify(degree)
    for name in ('commuting_squares', 'chain_squares', 'cochain_squares', 'injective'):
        result.check(name, checks[name], cells=checks['cells'])

    iso = chi.low_degree_iso_check()
    result.check('low_degree_iso', iso['ok'], cells=len(iso['cells']), windowed=iso['windowed'])

    if A.is_truncated:
        prop = result.add('closed_form')
        for p in range(degree + 1):
            prop.record(closed_form_chi_truncated(A, p) == chi.generator(p, 0))

        hh = bar.hochschild_dims('homology', degree)
        hk = chi.koszul.hk_dims('homology', degree)
        result.check('hh_matches_hk', all(hk.cells.get(key) == dim for key, dim in hh.cells.items()),
                     cells=len(hh.cells))
        result.data['hh_totals'] = {str(p): t for p, t in hh.totals().items()}

        if A.N > 2:
            witness = non_morphism_witness(chi)
            result.data['non_morphism_witness'] = witness
            result.check('non_morphism_witness', witness['ok'])
        morphism = class_morphism_check(chi, a_calculus, min(p_max, 4))
        result.check('class_morphism', morphism['ok'],
                     cup_checked=morphism['cup_checked'], cap_checked=morphism['cap_checked'])


SUITES: Dict[str, Callable] = {
    'leibniz': run_leibniz,
    'fundamental': run_fundamental,
    'associativity': run_associativity,
    'n_differential': run_n_differential,
    'brackets': run_brackets,
    'comparison': run_comparison,
}


def run_suite(name: str, calculus: KoszulCalculus, *, seed: int, trials: int,
              homotopy_trials: int, ndiff_trials: int, p_max: int) -> SuiteResult:
    """
    Run one verification suite.

    Args:
        name: One of SUITE_NAMES
        calculus: Calculus to verify (its coefficients are used where they matter)
        seed: Seed of numpy.random.default_rng
        trials: Random operands per parity case
        homotopy_trials: Random operands for the homotopy and associator checks
        ndiff_trials: Random operands per e_A operator
        p_max: Largest homological degree

    Returns:
        SuiteResult
    """
    runner = SUITES.get(name)
    if runner is None:
        raise ConfigurationError(f'unknown suite {name!r}; choose from {", ".join(SUITE_NAMES)}')

    rng = np.random.default_rng(seed)
    sampler = Sampler(calculus, rng, p_max)
    result = SuiteResult(name, seed)
    logger.info('Running suite', suite=name, seed=seed, trials=trials, p_max=p_max)
    runner(calculus, sampler, result, trials=trials, homotopy_trials=homotopy_trials,
           ndiff_trials=ndiff_trials, p_max=p_max)
    logger.info('Suite finished', suite=name, ok=result.ok, failed=result.failed())
    return result
