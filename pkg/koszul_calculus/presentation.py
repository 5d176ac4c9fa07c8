"""
Presentations
=============
Text format for N-homogeneous presentations and the built-in algebra catalog.

File format (one statement per line, '#' starts a comment):

    field Q                 # or: field F 7
    generators x y
    degree 3
    rel 1*(y y x) + 2*(y x y) + 1*(x y y) + 5*(x x x)

Notes:
- Coefficients are integers or fractions p/q; a bare word means coefficient 1
- Every word must have exactly N letters
- Parse errors carry the 1-based line and column
"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from koszul_calculus.exact_linalg import Field, make_field
from koszul_calculus.exceptions import ConfigurationError, PresentationParseError
from koszul_calculus.graded_algebra import Presentation
from koszul_calculus.logger import get_logger
from koszul_calculus.tensor_space import TensorElement, word_index

logger = get_logger()

CATALOG_NAMES = ('truncated', 'tensor', 'full', 'as_cubic', 'point', 'file')

_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*$')
_TERM = re.compile(
    r'\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+(?:/\d+)?)\s*\*?\s*)?\((?P<word>[^()]*)\)\s*'
)


def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0]


def _parse_relation(body: str, offset: int, line_no: int, K: Field,
                    generators: Dict[str, int], degree: int) -> TensorElement:
    g = len(generators)
    coeffs = K.zeros(g ** degree)
    pos = 0
    first = True
    while pos < len(body):
        if not body[pos:].strip():
            break
        match = _TERM.match(body, pos)
        if not match:
            raise PresentationParseError('expected a term like 2*(x y z)', line_no, offset + pos + 1)
        if not first and match.group('sign') is None:
            raise PresentationParseError("expected '+' or '-' between terms", line_no, offset + pos + 1)
        first = False

        coeff = Fraction(match.group('coeff') or '1')
        if match.group('sign') == '-':
            coeff = -coeff

        letters = match.group('word').split()
        column = offset + match.start('word') + 1
        if len(letters) != degree:
            raise PresentationParseError(
                f'word has {len(letters)} letters, expected {degree}', line_no, column
            )
        unknown = [letter for letter in letters if letter not in generators]
        if unknown:
            raise PresentationParseError(f'unknown generator {unknown[0]!r}', line_no, column)

        index = word_index([generators[letter] for letter in letters], g)
        try:
            coeffs[index] = coeffs[index] + K(coeff)
        except ConfigurationError as e:
            raise PresentationParseError(str(e), line_no, offset + pos + 1) from e
        pos = match.end()

    if first:
        raise PresentationParseError('empty relation', line_no, offset + 1)
    return TensorElement(K, g, degree, coeffs)


def parse_presentation(text: str, field_override: Optional[Field] = None,
                       name: str = 'file') -> Presentation:
    """
    Parse the presentation text format.

    Args:
        text: File contents
        field_override: Field to use instead of the file's 'field' line
        name: Name recorded on the presentation

    Returns:
        Presentation

    Raises:
        PresentationParseError: on any syntax or consistency error
    """
    field_spec: Optional[str] = None
    generators: Optional[List[str]] = None
    degree: Optional[int] = None
    pending: List[Tuple[int, int, str]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        keyword, _, rest = stripped.partition(' ')
        rest_offset = indent + len(keyword) + 1

        if keyword == 'field':
            field_spec = rest.strip()
            if not field_spec:
                raise PresentationParseError('missing field', line_no, rest_offset)
        elif keyword == 'generators':
            names = rest.split()
            for name_ in names:
                if not _IDENTIFIER.match(name_):
                    raise PresentationParseError(
                        f'invalid generator name {name_!r}', line_no, indent + line[indent:].find(name_) + 1
                    )
            if len(set(names)) != len(names):
                raise PresentationParseError('duplicate generator name', line_no, rest_offset)
            generators = names
        elif keyword == 'degree':
            try:
                degree = int(rest.strip())
            except ValueError:
                raise PresentationParseError('degree must be an integer', line_no, rest_offset + 1)
            if degree < 2:
                raise PresentationParseError('degree must be at least 2', line_no, rest_offset + 1)
        elif keyword == 'rel':
            pending.append((line_no, rest_offset, rest))
        else:
            raise PresentationParseError(f'unknown statement {keyword!r}', line_no, indent + 1)

    if generators is None:
        raise PresentationParseError("missing 'generators' statement", 1, 1)
    if degree is None:
        raise PresentationParseError("missing 'degree' statement", 1, 1)

    if field_override is not None:
        K = field_override
    else:
        try:
            K = make_field(field_spec, degree)
        except ConfigurationError as e:
            raise PresentationParseError(str(e), 1, 1) from e

    index = {name_: i for i, name_ in enumerate(generators)}
    relations = tuple(
        _parse_relation(body, offset, line_no, K, index, degree)
        for line_no, offset, body in pending
    )
    return Presentation(K, tuple(generators), degree, relations, name)


def load_presentation(path: str, field_override: Optional[Field] = None) -> Presentation:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigurationError(f'cannot read presentation file {path}: {e.strerror}') from e
    return parse_presentation(text, field_override, name=f'file:{path}')


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

def _ints(params: List[str], count: int, name: str) -> List[int]:
    if len(params) != count:
        raise ConfigurationError(f'{name} takes {count} parameter(s), got {len(params)}')
    try:
        return [int(p) for p in params]
    except ValueError:
        raise ConfigurationError(f'{name} parameters must be integers: {params}')


def truncated(K: Field, N: int) -> Presentation:
    """k[x]/(x^N)."""
    relation = TensorElement.word(K, 1, (0,) * N)
    return Presentation(K, ('x',), N, (relation,), f'truncated:{N}')


def tensor_algebra(K: Field, g: int, N: int) -> Presentation:
    """T(V) with R = 0."""
    names = tuple(f'x{i}' for i in range(g)) if g > 2 else ('x', 'y')[:g]
    return Presentation(K, names, N, (), f'tensor:{g},{N}')


def full_relations(K: Field, g: int, N: int) -> Presentation:
    """R = V^{⊗N}: A is k ⊕ V ⊕ ... ⊕ V^{⊗(N-1)}."""
    names = tuple(f'x{i}' for i in range(g)) if g > 2 else ('x', 'y')[:g]
    relations = tuple(
        TensorElement(K, g, N, row) for row in K.identity(g ** N)
    )
    return Presentation(K, names, N, relations, f'full:{g},{N}')


def as_cubic(K: Field, a: Fraction, b: Fraction, c: Fraction) -> Presentation:
    """
    Cubic Artin-Schelter regular algebra of type A on x, y:

        r1 = a y²x + b yxy + a xy² + c x³
        r2 = a x²y + b xyx + a yx² + c y³
    """
    x, y = 0, 1
    A, B, C = K(a), K(b), K(c)

    def relation(terms):
        coeffs = K.zeros(8)
        for coeff, word in terms:
            idx = word_index(word, 2)
            coeffs[idx] = coeffs[idx] + coeff
        return TensorElement(K, 2, 3, coeffs)

    r1 = relation([(A, (y, y, x)), (B, (y, x, y)), (A, (x, y, y)), (C, (x, x, x))])
    r2 = relation([(A, (x, x, y)), (B, (x, y, x)), (A, (y, x, x)), (C, (y, y, y))])
    name = f'as_cubic:{a},{b},{c}'
    return Presentation(K, ('x', 'y'), 3, (r1, r2), name)


def point(K: Field, N: int = 2) -> Presentation:
    """The ground field as an N-homogeneous algebra with V = 0."""
    return Presentation(K, (), N, (), f'point:{N}' if N != 2 else 'point')


def catalog_degree(spec: str) -> Optional[int]:
    """Relation degree of a catalog spec without building it (None for files)."""
    name, _, arg = spec.partition(':')
    params = [p for p in arg.split(',') if p] if arg else []
    if name == 'truncated' and params:
        return int(params[0])
    if name in ('tensor', 'full') and len(params) == 2:
        return int(params[1])
    if name == 'as_cubic':
        return 3
    if name == 'point':
        return int(params[0]) if params else 2
    return None


def catalog_presentation(spec: str, field_spec: Optional[str] = None) -> Presentation:
    """
    Resolve a catalog name into a presentation.

    Args:
        spec: truncated:N | tensor:g,N | full:g,N | as_cubic[:a,b,c] | point[:N] | file:PATH
        field_spec: 'Q' or 'F:p' (None keeps the file's own field, else Q)

    Returns:
        Presentation

    Raises:
        ConfigurationError: unknown entry or bad parameters
        PresentationParseError: file entries that fail to parse
    """
    name, _, arg = spec.partition(':')
    if name not in CATALOG_NAMES:
        logger.warning('Unknown catalog entry requested', algebra=spec)
        raise ConfigurationError(f'unknown algebra {name!r}; choose from {", ".join(CATALOG_NAMES)}')

    if name == 'file':
        if not arg:
            raise ConfigurationError('file: needs a path')
        override = make_field(field_spec) if field_spec is not None else None
        presentation = load_presentation(arg, override)
        if override is not None and override.characteristic \
                and presentation.degree % override.characteristic == 0:
            raise ConfigurationError(
                f'characteristic {override.characteristic} divides N = {presentation.degree}'
            )
        return presentation

    params = [p.strip() for p in arg.split(',') if p.strip()] if arg else []

    if name == 'truncated':
        (N,) = _ints(params, 1, name)
        if N < 2:
            raise ConfigurationError('truncated:N requires N >= 2')
        return truncated(make_field(field_spec, N), N)

    if name in ('tensor', 'full'):
        g, N = _ints(params, 2, name)
        if g < 1 or N < 2:
            raise ConfigurationError(f'{name}:g,N requires g >= 1 and N >= 2')
        K = make_field(field_spec, N)
        return tensor_algebra(K, g, N) if name == 'tensor' else full_relations(K, g, N)

    if name == 'as_cubic':
        if not params:
            params = ['1', '2', '5']
        if len(params) != 3:
            raise ConfigurationError('as_cubic takes three parameters a,b,c')
        try:
            a, b, c = (Fraction(p) for p in params)
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError(f'as_cubic parameters must be rationals: {params}')
        return as_cubic(make_field(field_spec, 3), a, b, c)

    # point
    N = _ints(params, 1, name)[0] if params else 2
    if N < 2:
        raise ConfigurationError('point:N requires N >= 2')
    return point(make_field(field_spec, N), N)
