import json

import pytest

from koszul_calculus import cli
from koszul_calculus.config import Config
from koszul_calculus.presentation import parse_presentation


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dims_table(capsys):
    code, out, _ = run_main(capsys, 'dims', '--algebra', 'truncated:3', '--pmax', '3')
    assert code == 0
    assert out.startswith('dims truncated:3\n')
    assert 'totals:' in out


def test_json_report_is_byte_identical_across_runs(capsys):
    argv = ('verify', 'leibniz', '--algebra', 'truncated:3', '--pmax', '3', '--trials', '4',
            '--seed', '11', '--format', 'json')
    first = run_main(capsys, *argv)
    second = run_main(capsys, *argv)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    report = json.loads(first[1])
    assert report['payload']['command'] == 'verify'
    assert report['config']['seed'] == 11
    assert report['config']['p_max'] == 3
    assert report['timings'] == {}


def test_output_file(capsys, tmp_path):
    path = tmp_path / 'report.json'
    code, out, _ = run_main(capsys, 'koszulity', '--algebra', 'truncated:3', '--pmax', '3',
                            '--wmax', '8', '--format', 'json', '--output', str(path))
    assert code == 0 and out == ''
    report = json.loads(path.read_text(encoding='utf-8'))
    assert report['payload']['koszulity']['verdict'] == 'KOSZUL_UP_TO_BOUNDS'


def test_non_koszul_file_presentation(capsys, tmp_path):
    path = tmp_path / 'overlap.txt'
    path.write_text('generators x y\ndegree 3\nrel (x y x)\n', encoding='utf-8')
    code, out, _ = run_main(capsys, 'koszulity', '--algebra', f'file:{path}', '--pmax', '3', '--wmax', '6')
    assert code == 0
    assert 'verdict: NOT_KOSZUL' in out


def test_dump_presentation_round_trips(capsys):
    code, out, _ = run_main(capsys, 'dims', '--algebra', 'as_cubic:1,2,5', '--dump-presentation')
    assert code == 0
    presentation = parse_presentation(out)
    assert presentation.generators == ('x', 'y')
    assert presentation.degree == 3
    assert len(presentation.relations) == 2


def test_version(capsys):
    code, out, _ = run_main(capsys, '--version')
    assert code == 0
    assert Config.VERSION in out


@pytest.mark.parametrize('argv', [
    ('dims', '--algebra', 'polynomial:2'),
    ('dims', '--algebra', 'truncated:3', '--field', 'F:3'),
    ('dims', '--algebra', 'truncated:3', '--wmax', '1'),
    ('verify', 'everything', '--algebra', 'truncated:3'),
    ('dims',),
])
def test_bad_requests_exit_2(capsys, argv):
    code, _, err = run_main(capsys, *argv)
    assert code == 2
    assert err


def test_window_below_the_relations_exits_2(capsys):
    code, _, err = run_main(capsys, 'dims', '--algebra', 'truncated:5', '--wmax', '3')
    assert code == 2
    assert 'error: --wmax 3' in err


def test_parse_error_exits_2(capsys, tmp_path):
    path = tmp_path / 'broken.txt'
    path.write_text('generators x\ndegree 2\nrel (x z)\n', encoding='utf-8')
    code, _, err = run_main(capsys, 'dims', '--algebra', f'file:{path}')
    assert code == 2
    assert 'line 3' in err


def test_wrong_algebra_exits_2(capsys, monkeypatch):
    from koszul_calculus.exceptions import WrongAlgebra

    def refuse(run, ctx):
        raise WrongAlgebra('only for k[x]/(x^N)')

    monkeypatch.setattr(cli, 'execute_command', refuse)
    code, _, err = run_main(capsys, 'chi', '--algebra', 'as_cubic', '--pmax', '2', '--wmax', '4')
    assert code == 2
    assert 'only for k[x]/(x^N)' in err


def test_resource_cap_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(Config, 'MAX_GENERATORS', 1)
    code, _, err = run_main(capsys, 'dims', '--algebra', 'tensor:2,3')
    assert code == 3
    assert 'exceed the cap' in err


def test_failed_property_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, 'execute_command', lambda run, ctx: {
        'success': False, 'data': {}, 'tables': [], 'lines': ['suite leibniz: FAIL'],
    })
    code, out, _ = run_main(capsys, 'verify', 'leibniz', '--algebra', 'truncated:3', '--pmax', '2')
    assert code == 1
    assert 'suite leibniz: FAIL' in out


def test_unexpected_error_exits_1(capsys, monkeypatch):
    def explode(run, ctx):
        raise RuntimeError('boom')

    monkeypatch.setattr(cli, 'execute_command', explode)
    code, _, err = run_main(capsys, 'dims', '--algebra', 'truncated:3', '--pmax', '2')
    assert code == 1
    assert 'internal error' in err
    assert 'boom' not in err.splitlines()[-1]


def test_invalid_environment_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(Config, 'TRIALS', 0)
    code, _, err = run_main(capsys, 'dims', '--algebra', 'truncated:3')
    assert code == 2
    assert 'KOSZUL_TRIALS' in err
