import pytest

from koszul_calculus.exceptions import (
    ConfigurationError,
    KoszulError,
    NotACocycle,
    PresentationParseError,
    ResourceCapExceeded,
    WrongAlgebra,
    exit_code_for,
)


@pytest.mark.parametrize('error,code', [
    (None, 0),
    (ConfigurationError('x'), 2),
    (PresentationParseError('x', 1, 1), 2),
    (WrongAlgebra('x'), 2),
    (ResourceCapExceeded('x'), 3),
    (NotACocycle('x'), 1),
    (RuntimeError('x'), 1),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


def test_errors_are_value_errors():
    assert issubclass(KoszulError, ValueError)
    with pytest.raises(ValueError):
        raise ResourceCapExceeded('tensor cap')


def test_parse_error_position():
    error = PresentationParseError('unknown generator z', 3, 7)
    assert (error.line, error.column) == (3, 7)
    assert str(error) == 'line 3, column 7: unknown generator z'
