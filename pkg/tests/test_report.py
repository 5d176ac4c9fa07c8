import json

import numpy as np
import pandas as pd
import pytest

from koszul_calculus.config import Config
from koszul_calculus.exceptions import ConfigurationError
from koszul_calculus.report import Report, Timings, emit, jsonable, render_text


def test_jsonable_flattens_numpy_and_tuple_keys():
    value = {(1, 2): np.int64(3), 'flag': np.bool_(True), 'arr': np.array([1, 2]), 'pair': (4, 5)}
    assert jsonable(value) == {'1,2': 3, 'flag': True, 'arr': [1, 2], 'pair': [4, 5]}


def test_jsonable_stringifies_field_elements():
    from fractions import Fraction
    assert jsonable([Fraction(1, 3)]) == ['1/3']


def test_report_json_is_sorted_and_newline_terminated():
    report = Report(config={'seed': 1, 'algebra': 'truncated:3'}, payload={'b': 1, 'a': [1, 2]})
    text = report.to_json()
    assert text.endswith('}\n')
    data = json.loads(text)
    assert data['version'] == Config.VERSION
    assert data['timings'] == {}
    assert list(data) == sorted(data)
    assert text.index('"algebra"') < text.index('"seed"')


def test_same_report_same_bytes():
    make = lambda: Report(config={'x': 1}, payload={'cells': {(0, 1): 2}}).to_json()
    assert make() == make()


def test_timings_disabled_records_nothing():
    timings = Timings(enabled=False)
    with timings.stage('build'):
        pass
    assert timings.to_payload() == {}


def test_timings_enabled_records_stages():
    timings = Timings(enabled=True)
    with timings.stage('build'):
        pass
    assert set(timings.to_payload()) == {'build'}
    assert timings.to_payload()['build'] >= 0


def test_render_text():
    frame = pd.DataFrame({'p': [0, 1], 'dim': [1, 2]})
    text = render_text('dims truncated:3', [('table', frame), ('nothing', pd.DataFrame())], ['verdict: ok'])
    lines = text.splitlines()
    assert lines[0] == 'dims truncated:3'
    assert lines[1] == '=' * len(lines[0])
    assert '(empty)' in lines
    assert lines[-1] == 'verdict: ok'
    assert text.endswith('\n')


def test_emit_to_stdout(capsys):
    emit('hello\n', None)
    assert capsys.readouterr().out == 'hello\n'


def test_emit_to_file(tmp_path):
    path = tmp_path / 'report.json'
    emit('{}\n', str(path))
    assert path.read_text(encoding='utf-8') == '{}\n'


def test_emit_to_unwritable_path(tmp_path):
    with pytest.raises(ConfigurationError):
        emit('{}\n', str(tmp_path / 'missing' / 'report.json'))
