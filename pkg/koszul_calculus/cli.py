"""
Command-Line Entry Point
========================
    python -m koszul_calculus <command> [flags]

Flow:
1. Validate configuration (exit 2 on failure)
2. Validate the request
3. Build the algebra
4. Dispatch to the command handler
5. Emit the table or JSON report
6. Map the outcome to an exit code: 0 ok, 1 failed property, 2 configuration
   or parse error, 3 resource cap exceeded

Error Handling:
- KoszulError messages are printed as-is with their exit code
- Anything else is logged with its stack trace; the user sees a generic message
"""

import argparse
import sys
import uuid
from typing import List, Optional

from koszul_calculus.commands import execute_command, load_context
from koszul_calculus.config import Config
from koszul_calculus.exceptions import KoszulError, exit_code_for
from koszul_calculus.logger import get_logger
from koszul_calculus.presentation import catalog_presentation
from koszul_calculus.report import Report, Timings, emit, render_text
from koszul_calculus.validators import ALLOWED_SUITES, validate_run_request

logger = get_logger()

COMMAND_HELP = {
    'dims': 'Koszul (co)homology dimensions per (p, weight)',
    'koszulity': 'homology of the bimodule Koszul complex and the Koszulity verdict',
    'higher': 'higher Koszul (co)homology dimensions',
    'verify': 'run a verification suite',
    'cup-table': 'cup structure constants of HK^ in class bases',
    'cap-table': 'cap structure constants of HK_ in class bases',
    'chi': 'comparison morphism from the Koszul to the bar resolution',
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--algebra', required=True,
                        help='truncated:N | tensor:g,N | full:g,N | as_cubic[:a,b,c] | point[:N] | file:PATH')
    common.add_argument('--field', default=None, help='Q (default) or F:p')
    common.add_argument('--pmax', dest='p_max', default=None, help='largest homological degree')
    common.add_argument('--wmax', dest='w_max', default=None, help='largest weight of A that is built')
    common.add_argument('--seed', default=None, help=f'random seed (default {Config.SEED})')
    common.add_argument('--trials', default=None, help='random operands per parity case')
    common.add_argument('--homotopy-trials', dest='homotopy_trials', default=None)
    common.add_argument('--ndiff-trials', dest='ndiff_trials', default=None)
    common.add_argument('--format', default=None, help='table (default) or json')
    common.add_argument('--output', default=None, help='write the report here instead of stdout')
    common.add_argument('--coeff', dest='coefficients', default=None, help='coefficients A (default) or k')
    common.add_argument('--side', default=None, help='homology (default) or cohomology')
    common.add_argument('--dump-presentation', dest='dump_presentation', action='store_true',
                        help='print the presentation in the input format and exit')

    parser = argparse.ArgumentParser(prog='koszul_calculus',
                                     description='Exact Koszul calculus of N-homogeneous algebras')
    parser.add_argument('--version', action='version', version=f'%(prog)s {Config.VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)
    for name, help_text in COMMAND_HELP.items():
        command = sub.add_parser(name, parents=[common], help=help_text)
        if name == 'verify':
            command.add_argument('suite', help=' | '.join(sorted(ALLOWED_SUITES)))
    return parser


def _fail(message: str, code: int) -> int:
    print(f'error: {message}', file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Process exit code
    """
    # Validate configuration before anything else
    try:
        Config.validate()
    except ValueError as e:
        logger.critical('Configuration validation failed', error=e)
        return _fail(str(e), 2)

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    is_valid, run, validation_error = validate_run_request(vars(args))
    if not is_valid:
        logger.warning('Request validation failed', error=validation_error)
        return _fail(validation_error, 2)

    run_id = uuid.uuid4().hex[:12]
    logger.log_command_start(run_id, run.command, run.algebra, suite=run.suite, field=run.field)

    try:
        if run.dump_presentation:
            presentation = catalog_presentation(run.algebra, run.field)
            emit(presentation.to_text(), run.output)
            logger.log_command_end(run_id, run.command, 0)
            return 0

        timings = Timings()
        with timings.stage('build'):
            ctx = load_context(run)
        with timings.stage(run.command):
            result = execute_command(run, ctx)

        if 'error' in result:
            logger.log_command_end(run_id, run.command, 2)
            return _fail(result['error'], 2)

        title = f'{run.command}' + (f' {run.suite}' if run.suite else '') + f' {ctx.presentation.name}'
        if run.format == 'json':
            report = Report(
                config=run.echo(ctx.p_max, ctx.w_max),
                payload={'command': run.command, **result['data']},
                timings=timings.to_payload(),
            )
            emit(report.to_json(), run.output)
        else:
            emit(render_text(title, result['tables'], result['lines']), run.output)

        code = 0 if result['success'] else 1
        logger.log_command_end(run_id, run.command, code)
        return code

    except KoszulError as e:
        code = exit_code_for(e)
        logger.log_command_end(run_id, run.command, code, error_type=type(e).__name__)
        return _fail(str(e), code)

    except Exception as e:
        # Unexpected: log the trace, show a generic message
        logger.error('Unexpected error', error=e, run_id=run_id, command=run.command)
        return _fail('internal error; rerun with KOSZUL_LOG_LEVEL=DEBUG for details', 1)
