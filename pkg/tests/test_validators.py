import pytest

from koszul_calculus.config import Config
from koszul_calculus.validators import (
    validate_algebra,
    validate_bound,
    validate_command,
    validate_field,
    validate_output,
    validate_run_request,
    validate_suite,
)


def request(**overrides):
    args = {'command': 'dims', 'algebra': 'truncated:3'}
    args.update(overrides)
    return args


@pytest.mark.parametrize('command', ['dims', 'koszulity', 'higher', 'verify', 'cup-table', 'cap-table', 'chi'])
def test_known_commands(command):
    assert validate_command(command) == (True, command, None)


@pytest.mark.parametrize('value', [None, '', 'solve', 'DIMS'])
def test_unknown_commands(value):
    is_valid, parsed, error = validate_command(value)
    assert not is_valid and parsed is None and error


def test_suites_are_whitelisted():
    assert validate_suite('leibniz')[0]
    assert not validate_suite('all')[0]


@pytest.mark.parametrize('spec', ['truncated:3', 'tensor:2,3', 'full:3,2', 'as_cubic', 'as_cubic:1,-2,5/3',
                                  'point', 'point:3'])
def test_catalog_specs(spec):
    assert validate_algebra(spec) == (True, spec, None)


@pytest.mark.parametrize('spec', [None, '', 'polynomial:2', 'truncated', 'truncated:x', 'tensor:2',
                                  'as_cubic:1,2', 'as_cubic:a,b,c', 'file:', 'file:/no/such/file'])
def test_rejected_specs(spec):
    is_valid, parsed, error = validate_algebra(spec)
    assert not is_valid and parsed is None and error


def test_file_spec_needs_an_existing_file(tmp_path):
    path = tmp_path / 'p.txt'
    path.write_text('generators x\ndegree 2\nrel (x x)\n', encoding='utf-8')
    assert validate_algebra(f'file:{path}')[0]


@pytest.mark.parametrize('spec,normalized', [(None, None), ('Q', 'Q'), ('qq', 'Q'), ('F:7', 'F:7'), ('f101', 'F:101')])
def test_fields(spec, normalized):
    assert validate_field(spec) == (True, normalized, None)


@pytest.mark.parametrize('spec,degree', [('F:4', None), ('R', None), ('F:3', 3), ('F:2', 4), (7, None)])
def test_rejected_fields(spec, degree):
    assert not validate_field(spec, degree)[0]


def test_bounds():
    assert validate_bound(None, '--pmax') == (True, None, None)
    assert validate_bound('4', '--pmax') == (True, 4, None)
    assert not validate_bound('four', '--pmax')[0]
    assert not validate_bound(1, '--wmax', 2)[0]


def test_output_directory_must_exist(tmp_path):
    assert validate_output(str(tmp_path / 'report.json'))[0]
    assert not validate_output(str(tmp_path / 'missing' / 'report.json'))[0]


def test_run_request_defaults():
    is_valid, run, error = validate_run_request(request())
    assert is_valid and error is None
    assert run.seed == Config.SEED
    assert run.trials == Config.TRIALS
    assert (run.format, run.coefficients, run.side) == ('table', 'A', 'homology')
    assert run.p_max is None and run.field is None


def test_run_request_parses_flags():
    is_valid, run, _ = validate_run_request(request(
        command='verify', suite='brackets', field='F:101', p_max='3', w_max='8', seed='5',
        trials='10', format='json', coefficients='k', side='cohomology',
    ))
    assert is_valid
    assert (run.suite, run.field, run.p_max, run.w_max, run.seed, run.trials) == ('brackets', 'F:101', 3, 8, 5, 10)
    assert run.echo(3, 8)['field'] == 'F:101'
    assert 'output' not in run.echo(3, 8)


@pytest.mark.parametrize('overrides', [
    {'command': 'verify'},
    {'command': 'verify', 'suite': 'all'},
    {'algebra': 'polynomial:2'},
    {'field': 'F:3'},
    {'p_max': '-1'},
    {'w_max': '1'},
    {'trials': '0'},
    {'format': 'yaml'},
    {'coefficients': 'M'},
    {'side': 'both'},
])
def test_run_request_rejects(overrides):
    is_valid, run, error = validate_run_request(request(**overrides))
    assert not is_valid
    assert run is None
    assert error


def test_echo_resolves_bounds_and_default_field():
    _, run, _ = validate_run_request(request())
    echo = run.echo(6, 12)
    assert (echo['p_max'], echo['w_max'], echo['field']) == (6, 12, 'Q')
    assert echo['command'] == 'dims'
