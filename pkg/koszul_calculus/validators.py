"""
Run Request Validation
======================
Whitelist validation of command-line requests before any algebra is built.

Notes:
- Unknown commands, suites, catalog entries, sides, coefficients and formats
  are rejected by whitelist
- Every validate_* function returns (is_valid, parsed_value, error_message);
  no exception crosses this module's boundary
- validate_run_request chains the checks and returns a RunConfig
"""

import re
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from sympy import isprime

from koszul_calculus.config import Config
from koszul_calculus.logger import get_logger
from koszul_calculus.presentation import CATALOG_NAMES, catalog_degree

logger = get_logger()


ALLOWED_COMMANDS = {
    'dims',
    'koszulity',
    'higher',
    'verify',
    'cup-table',
    'cap-table',
    'chi',
}

ALLOWED_SUITES = {
    'leibniz',
    'fundamental',
    'associativity',
    'n_differential',
    'brackets',
    'comparison',
}

ALLOWED_CATALOG = set(CATALOG_NAMES)
ALLOWED_SIDES = {'homology', 'cohomology'}
ALLOWED_COEFFICIENTS = {'A', 'k'}
ALLOWED_FORMATS = {'table', 'json'}

# accepted parameter counts per catalog entry
_CATALOG_ARITY = {'truncated': (1,), 'tensor': (2,), 'full': (2,), 'point': (0, 1), 'as_cubic': (0, 3)}
_RATIONAL = re.compile(r'-?\d+(/\d+)?$')


class RunConfig(BaseModel):
    """A validated request; bounds left as None are resolved from the algebra."""

    model_config = ConfigDict(frozen=True)

    command: str
    suite: Optional[str] = None
    algebra: str
    field: Optional[str] = None
    p_max: Optional[int] = None
    w_max: Optional[int] = None
    seed: int = Config.SEED
    trials: int = Config.TRIALS
    homotopy_trials: int = Config.HOMOTOPY_TRIALS
    ndiff_trials: int = Config.NDIFF_TRIALS
    format: str = 'table'
    output: Optional[str] = None
    coefficients: str = 'A'
    side: str = 'homology'
    dump_presentation: bool = False

    def echo(self, p_max: int, w_max: int) -> Dict[str, Any]:
        """Config section of the report, with the resolved bounds."""
        data = self.model_dump(exclude={'output', 'format', 'dump_presentation'})
        data.update(p_max=p_max, w_max=w_max, field=self.field or 'Q')
        return data


def _whitelisted(value: Any, allowed: set, label: str) -> Tuple[bool, Optional[str], Optional[str]]:
    if not value:
        return False, None, f'{label} is required'
    if value not in allowed:
        logger.warning(f'Rejected unknown {label}', value=str(value))
        return False, None, f'Unknown {label}: {value}. Allowed: {sorted(allowed)}'
    return True, value, None


def validate_command(command: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    """
    Validate that the command is in the whitelist.

    Args:
        command: Subcommand name

    Returns:
        Tuple of (is_valid, command, error_message)
    """
    return _whitelisted(command, ALLOWED_COMMANDS, 'command')


def validate_suite(suite: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    return _whitelisted(suite, ALLOWED_SUITES, 'suite')


def validate_side(side: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    return _whitelisted(side, ALLOWED_SIDES, 'side')


def validate_coefficients(coefficients: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    return _whitelisted(coefficients, ALLOWED_COEFFICIENTS, 'coefficients')


def validate_format(fmt: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    return _whitelisted(fmt, ALLOWED_FORMATS, 'format')


def validate_algebra(spec: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    """
    Validate a catalog spec such as truncated:4 or as_cubic:1,2,5.

    Parameters are type-checked here; ranges (N ≥ 2, g ≥ 1) are checked by the
    catalog when the presentation is built.

    Args:
        spec: Catalog spec string

    Returns:
        Tuple of (is_valid, spec, error_message)
    """
    if not spec or not isinstance(spec, str):
        return False, None, 'Algebra is required'

    name, _, arg = spec.partition(':')
    is_valid, _, error = _whitelisted(name, ALLOWED_CATALOG, 'algebra')
    if not is_valid:
        return False, None, error

    if name == 'file':
        if not arg:
            return False, None, 'file: needs a path'
        if not Path(arg).is_file():
            return False, None, f'Presentation file not found: {arg}'
        return True, spec, None

    params = [p.strip() for p in arg.split(',')] if arg else []
    if len(params) not in _CATALOG_ARITY[name]:
        return False, None, f'{name} takes {" or ".join(map(str, _CATALOG_ARITY[name]))} parameter(s)'
    if name == 'as_cubic':
        if not all(_RATIONAL.match(p) for p in params):
            return False, None, 'as_cubic parameters must be rationals like 1, -2 or 5/3'
    elif not all(p.isdigit() for p in params):
        return False, None, f'{name} parameters must be non-negative integers'
    return True, spec, None


def validate_field(spec: Any, degree: Optional[int] = None) -> Tuple[bool, Optional[str], Optional[str]]:
    """
    Validate Q or F:p with p prime and p ∤ N.

    Args:
        spec: Field spec (None means Q, or the file's own field)
        degree: Relation degree N when it is known without parsing

    Returns:
        Tuple of (is_valid, spec, error_message)
    """
    if spec is None:
        return True, None, None
    if not isinstance(spec, str):
        return False, None, 'Field must be a string'

    text = spec.strip().upper()
    if text in ('Q', 'QQ'):
        return True, 'Q', None
    match = re.fullmatch(r'F:?(\d+)', text)
    if not match:
        return False, None, f'Unknown field {spec!r}; use Q or F:p'
    p = int(match.group(1))
    if not isprime(p):
        return False, None, f'{p} is not prime'
    if degree is not None and degree % p == 0:
        return False, None, f'characteristic {p} divides N = {degree}'
    return True, f'F:{p}', None


def validate_bound(value: Any, name: str, minimum: int = 0) -> Tuple[bool, Optional[int], Optional[str]]:
    """
    Validate an optional integer bound.

    Args:
        value: Bound (int, string or None)
        name: Flag name used in the message
        minimum: Smallest accepted value

    Returns:
        Tuple of (is_valid, parsed_bound, error_message)
    """
    if value is None:
        return True, None, None
    try:
        bound = int(value)
    except (ValueError, TypeError):
        return False, None, f'{name} must be an integer'
    if bound < minimum:
        return False, None, f'{name} must be at least {minimum}'
    return True, bound, None


def validate_output(path: Any) -> Tuple[bool, Optional[str], Optional[str]]:
    if path is None:
        return True, None, None
    parent = Path(path).expanduser().resolve().parent
    if not parent.is_dir():
        return False, None, f'Output directory does not exist: {parent}'
    return True, str(path), None


def validate_run_request(args: Dict[str, Any]) -> Tuple[bool, Optional[RunConfig], Optional[str]]:
    """
    Validate a complete request.

    Args:
        args: Parsed command-line arguments as a dict

    Returns:
        Tuple of (is_valid, run_config, error_message)
    """
    # 1. Command and suite
    is_valid, command, error = validate_command(args.get('command'))
    if not is_valid:
        return False, None, error
    suite = None
    if command == 'verify':
        is_valid, suite, error = validate_suite(args.get('suite'))
        if not is_valid:
            return False, None, error

    # 2. Algebra and field
    is_valid, algebra, error = validate_algebra(args.get('algebra'))
    if not is_valid:
        return False, None, error
    try:
        degree = catalog_degree(algebra)
    except ValueError:
        degree = None
    is_valid, field_spec, error = validate_field(args.get('field'), degree)
    if not is_valid:
        return False, None, error

    # 3. Bounds and trial counts
    parsed: Dict[str, Any] = {}
    for key, flag, minimum in (
        ('p_max', '--pmax', 0),
        ('w_max', '--wmax', 2),
        ('seed', '--seed', 0),
        ('trials', '--trials', 1),
        ('homotopy_trials', '--homotopy-trials', 1),
        ('ndiff_trials', '--ndiff-trials', 1),
    ):
        is_valid, value, error = validate_bound(args.get(key), flag, minimum)
        if not is_valid:
            return False, None, error
        if value is not None:
            parsed[key] = value

    # 4. Output
    for key, validator in (('format', validate_format), ('coefficients', validate_coefficients),
                           ('side', validate_side)):
        value = args.get(key)
        if value is None:
            continue
        is_valid, value, error = validator(value)
        if not is_valid:
            return False, None, error
        parsed[key] = value
    is_valid, output, error = validate_output(args.get('output'))
    if not is_valid:
        return False, None, error

    return True, RunConfig(
        command=command,
        suite=suite,
        algebra=algebra,
        field=field_spec,
        output=output,
        dump_presentation=bool(args.get('dump_presentation')),
        **parsed,
    ), None
