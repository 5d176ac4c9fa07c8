"""
Command Handlers
================
One handler per CLI subcommand. Handlers receive a validated RunConfig and a
built algebra context, and return a result dictionary:

    {'success': bool, 'data': payload, 'tables': [(caption, DataFrame)], 'lines': [...]}

Notes:
- Only whitelisted commands reach execute_command
- 'success' is False only for failed verification properties (exit code 1);
  errors raise KoszulError subclasses and are mapped by the CLI
- Payloads hold ints, bools and strings only, so reports serialize deterministically
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List

import numpy as np
import pandas as pd

from koszul_calculus.bar_comparison import (
    ComparisonMorphism,
    closed_form_chi_truncated,
    non_morphism_witness,
)
from koszul_calculus.calculus import KoszulCalculus
from koszul_calculus.config import Config
from koszul_calculus.exceptions import ConfigurationError
from koszul_calculus.graded_algebra import GradedAlgebra, Presentation, build_algebra
from koszul_calculus.koszul_complex import BimoduleComplex, DimensionTable, KoszulComplex
from koszul_calculus.logger import get_logger
from koszul_calculus.presentation import catalog_presentation
from koszul_calculus.suites import run_suite
from koszul_calculus.validators import RunConfig

logger = get_logger()


@dataclass
class AlgebraContext:
    presentation: Presentation
    algebra: GradedAlgebra
    p_max: int
    w_max: int

    @property
    def summary(self) -> Dict[str, Any]:
        A = self.algebra
        return {
            'name': self.presentation.name,
            'generators': list(self.presentation.generators),
            'N': A.N,
            'field': A.field.name,
            'relations': A.relations.dim,
            'dims': A.dims(),
            'finite': A.is_finite,
            'top_weight': A.top_weight,
        }


def load_context(run: RunConfig) -> AlgebraContext:
    """
    Resolve the presentation, fill in default bounds and build the algebra.

    Args:
        run: Validated request

    Returns:
        AlgebraContext
    """
    presentation = catalog_presentation(run.algebra, run.field)
    p_default, w_default = Config.default_bounds(presentation.g)
    p_max = run.p_max if run.p_max is not None else p_default
    w_max = run.w_max if run.w_max is not None else w_default
    if w_max < presentation.degree:
        raise ConfigurationError(f'--wmax {w_max} must be at least N = {presentation.degree}')
    algebra = build_algebra(presentation, w_max)
    logger.info('Algebra ready', algebra=presentation.name, p_max=p_max, w_max=w_max,
                dims=algebra.dims())
    return AlgebraContext(presentation, algebra, p_max, w_max)


def _table_caption(table: DimensionTable, algebra: str) -> str:
    sub = '_' if table.side == 'homology' else '^'
    return f'{table.label}{sub}p({algebra}; {table.coefficients}) per (p, weight)' + \
        (' [windowed]' if table.windowed else '')


def _totals_line(table: DimensionTable) -> str:
    return 'totals: ' + ', '.join(f'p={p}: {t}' for p, t in table.totals().items())


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def cmd_dims(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """
    Koszul (co)homology dimensions per (p, weight).

    Returns:
        Dictionary with 'success' flag, payload, tables and summary lines
    """
    complex_ = KoszulComplex(ctx.algebra, run.coefficients)
    table = complex_.hk_dims(run.side, ctx.p_max)
    data: Dict[str, Any] = {'algebra': ctx.summary, 'table': table.to_payload()}
    lines = [_totals_line(table)]
    if run.coefficients == 'A':
        degree_zero = complex_.hochschild_zero_check()
        data['degree_zero'] = degree_zero
        lines.append(f"degree zero: HK_0 = A/[A,A] and HK^0 = Z(A): {'ok' if degree_zero['ok'] else 'MISMATCH'}")
    return {
        'success': True,
        'data': data,
        'tables': [(_table_caption(table, ctx.presentation.name), table.to_frame())],
        'lines': lines,
    }


def cmd_koszulity(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Homology of the bimodule complex K(A) and the Koszulity verdict."""
    report = BimoduleComplex(ctx.algebra).koszulity_report(ctx.p_max, ctx.w_max)
    lines = [f'verdict: {report.verdict}',
             f"degree zero: H_0(K(A)) = A: {'ok' if report.degree_zero_ok else 'MISMATCH'}"]
    if report.windowed:
        lines.append(f'bounds: p <= {ctx.p_max}, weight <= {ctx.w_max} (A is infinite dimensional)')
    return {
        'success': True,
        'data': {'algebra': ctx.summary, 'koszulity': report.to_payload()},
        'tables': [(f'H_p(K({ctx.presentation.name})) per (p, weight)', report.to_frame())],
        'lines': lines,
    }


def cmd_higher(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Higher Koszul (co)homology tables."""
    calculus = KoszulCalculus(ctx.algebra, run.coefficients)
    table = calculus.higher_dims(run.side, ctx.p_max)
    data: Dict[str, Any] = {'algebra': ctx.summary, 'table': table.to_payload()}
    lines = [_totals_line(table)]
    if run.coefficients == 'A' and run.side == 'cohomology':
        direct = {str(n): calculus.degree_zero_higher_cohomology(n)
                  for n in calculus.complex.weights('cohomology', 0, higher=True)}
        data['degree_zero_direct'] = direct
        agrees = all(table.cells.get((0, int(n))) == d for n, d in direct.items())
        data['degree_zero_agrees'] = agrees
        lines.append(f"degree zero (direct computation): {'agrees' if agrees else 'DISAGREES'}")
    return {
        'success': True,
        'data': data,
        'tables': [(_table_caption(table, ctx.presentation.name), table.to_frame())],
        'lines': lines,
    }


def cmd_verify(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Run one verification suite; success is False when any property fails."""
    calculus = KoszulCalculus(ctx.algebra, run.coefficients)
    result = run_suite(
        run.suite, calculus,
        seed=run.seed,
        trials=run.trials,
        homotopy_trials=run.homotopy_trials,
        ndiff_trials=run.ndiff_trials,
        p_max=ctx.p_max,
    )
    rows = [{'property': prop.name, 'trials': prop.trials, 'failures': prop.failures,
             'status': 'pass' if prop.ok else ('skipped' if not prop.trials else 'FAIL')}
            for prop in result.properties]
    frame = pd.DataFrame(rows, columns=['property', 'trials', 'failures', 'status'])
    lines = [f"suite {run.suite}: {'PASS' if result.ok else 'FAIL'}"]
    if not result.ok:
        lines.append('failed: ' + ', '.join(result.failed()))
    return {
        'success': result.ok,
        'data': {'algebra': ctx.summary, 'suite': result.to_payload()},
        'tables': [(f'verify {run.suite}', frame)],
        'lines': lines,
    }


def _sparse_entries(calculus: KoszulCalculus, table: np.ndarray) -> List[List[Any]]:
    K = calculus.field
    return [[int(i), int(j), int(k), K.to_str(table[i, j, k])]
            for i, j, k in zip(*np.nonzero(table != K.zero))]


def cmd_cup_table(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Structure constants of the cup product on HK^• in class bases."""
    calculus = KoszulCalculus(ctx.algebra, 'A')
    cells = calculus.cohomology_cells(ctx.p_max)
    blocks, rows = [], []
    for p, n1 in cells:
        for q, n2 in cells:
            if p + q > ctx.p_max or not calculus.in_window('cohomology', p + q, n1 + n2):
                continue
            table = calculus.cup_structure(p, n1, q, n2)
            entries = _sparse_entries(calculus, table)
            blocks.append({'left': [p, n1], 'right': [q, n2], 'target': [p + q, n1 + n2],
                           'shape': list(table.shape), 'entries': entries})
            rows.append({'left': f'({p},{n1})', 'right': f'({q},{n2})', 'target': f'({p + q},{n1 + n2})',
                         'shape': 'x'.join(map(str, table.shape)), 'nonzero': len(entries)})
    frame = pd.DataFrame(rows, columns=['left', 'right', 'target', 'shape', 'nonzero'])
    data: Dict[str, Any] = {'algebra': ctx.summary, 'cup': blocks}
    lines = [f'{len(blocks)} cell pairs, {sum(r["nonzero"] for r in rows)} nonzero constants']
    if ctx.algebra.is_truncated:
        closed = calculus.truncated_product_check(ctx.p_max)
        data['closed_forms'] = closed
        lines.append(f"closed forms on cochains: {'ok' if closed['ok'] else 'MISMATCH'}")
    return {'success': True, 'data': data, 'tables': [('cup structure constants', frame)], 'lines': lines}


def cmd_cap_table(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Structure constants of the HK^•-bimodule HK_• in class bases."""
    calculus = KoszulCalculus(ctx.algebra, 'A')
    cohomology = calculus.cohomology_cells(ctx.p_max)
    homology = calculus.homology_cells(ctx.p_max)
    blocks, rows = [], []
    for p, n in cohomology:
        for q, w in homology:
            if q < p or not calculus.in_window('homology', q - p, w + n):
                continue
            for side in ('left', 'right'):
                table = calculus.cap_structure(side, p, n, q, w)
                entries = _sparse_entries(calculus, table)
                blocks.append({'side': side, 'cochain': [p, n], 'chain': [q, w], 'target': [q - p, w + n],
                               'shape': list(table.shape), 'entries': entries})
                rows.append({'side': side, 'cochain': f'({p},{n})', 'chain': f'({q},{w})',
                             'target': f'({q - p},{w + n})', 'nonzero': len(entries)})
    frame = pd.DataFrame(rows, columns=['side', 'cochain', 'chain', 'target', 'nonzero'])
    lines = [f'{len(blocks)} cell pairs, {sum(r["nonzero"] for r in rows)} nonzero constants']
    return {
        'success': True,
        'data': {'algebra': ctx.summary, 'cap': blocks},
        'tables': [('cap structure constants', frame)],
        'lines': lines,
    }


def cmd_chi(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """Comparison morphism χ: K(A) → B̄(A) report."""
    A = ctx.algebra
    degree = min(ctx.p_max, 5 if A.is_finite else 3)
    chi = ComparisonMorphism(A).build(degree)
    checks = chi.verify(degree)
    iso = chi.low_degree_iso_check()
    hh = chi.bar.hochschild_dims('homology', degree)
    data: Dict[str, Any] = {
        'algebra': ctx.summary,
        'p_max': degree,
        'checks': checks,
        'low_degree_iso': iso,
        'hochschild': hh.to_payload(),
    }
    lines = [f"{name}: {'ok' if checks[name] else 'FAIL'}"
             for name in ('commuting_squares', 'chain_squares', 'cochain_squares', 'injective')]
    lines.append(f"low-degree isomorphisms: {'ok' if iso['ok'] else 'FAIL'}")
    if A.is_truncated:
        closed = [closed_form_chi_truncated(A, p) == chi.generator(p, 0) for p in range(degree + 1)]
        data['closed_form'] = closed
        lines.append(f"closed form up to p = {degree}: {'ok' if all(closed) else 'MISMATCH'}")
        if A.N > 2:
            witness = non_morphism_witness(chi)
            data['non_morphism_witness'] = witness
            lines.append(f"non-morphism witness: {'reproduced' if witness['ok'] else 'NOT reproduced'}")
    iso_frame = pd.DataFrame(iso['cells'], columns=['side', 'p', 'weight', 'iso'])
    return {
        'success': True,
        'data': data,
        'tables': [(f'HH_p({ctx.presentation.name}) per (p, weight)', hh.to_frame()),
                   ('H(χ) in degrees 0 and 1', iso_frame)],
        'lines': lines,
    }


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig, AlgebraContext], Dict[str, Any]]] = {
    'dims': cmd_dims,
    'koszulity': cmd_koszulity,
    'higher': cmd_higher,
    'verify': cmd_verify,
    'cup-table': cmd_cup_table,
    'cap-table': cmd_cap_table,
    'chi': cmd_chi,
}


def execute_command(run: RunConfig, ctx: AlgebraContext) -> Dict[str, Any]:
    """
    Execute a command handler.

    Args:
        run: Validated request (command must be whitelisted)
        ctx: Built algebra context

    Returns:
        Result dictionary from the handler
    """
    handler = COMMAND_HANDLERS.get(run.command)

    if not handler:
        return {
            'success': False,
            'error': f'No handler for command: {run.command}'
        }

    return handler(run, ctx)
