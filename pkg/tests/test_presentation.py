import numpy as np
import pytest

from koszul_calculus.exceptions import ConfigurationError, PresentationParseError
from koszul_calculus.presentation import (
    catalog_degree,
    catalog_presentation,
    load_presentation,
    parse_presentation,
)
from koszul_calculus.tensor_space import word_index

CUBIC = """
# cubic algebra on two generators
field Q
generators x y
degree 3
rel 1*(y y x) + 2*(y x y) + 1*(x y y) + 5*(x x x)
rel 1*(x x y) + 2*(x y x) + 1*(y x x) + 5*(y y y)
"""


def test_parse_cubic_matches_catalog():
    parsed = parse_presentation(CUBIC)
    catalog = catalog_presentation('as_cubic:1,2,5')
    assert parsed.generators == ('x', 'y')
    assert parsed.degree == 3
    assert np.all(parsed.relation_matrix() == catalog.relation_matrix())


def test_coefficients_and_signs():
    text = 'field Q\ngenerators x y\ndegree 2\nrel 3/2*(x y) - (y x) + (x y)\n'
    relation = parse_presentation(text).relations[0]
    K = relation.field
    assert relation.coeffs[word_index((0, 1), 2)] == K('5/2')
    assert relation.coeffs[word_index((1, 0), 2)] == K(-1)


def test_field_line_and_override():
    text = 'field F 7\ngenerators x\ndegree 3\nrel (x x x)\n'
    assert parse_presentation(text).field.characteristic == 7
    override = catalog_presentation('truncated:3', 'F:101').field
    assert parse_presentation(text, override).field.characteristic == 101


@pytest.mark.parametrize('text,line', [
    ('generators x y\ndegree 2\nrel (x y z)\n', 3),
    ('generators x y\ndegree 2\nrel (x w)\n', 3),
    ('generators x y\ndegree 2\nrel (x y) (y x)\n', 3),
    ('generators x y\ndegree 2\nrel\n', 3),
    ('generators x y\ndegree two\n', 2),
    ('generators x x\ndegree 2\n', 1),
    ('generators x y\nweight 2\n', 2),
    ('generators x y\ndegree 1\n', 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(PresentationParseError) as info:
        parse_presentation(text)
    assert info.value.line == line
    assert info.value.column >= 1


def test_missing_statements():
    with pytest.raises(PresentationParseError):
        parse_presentation('degree 2\n')
    with pytest.raises(PresentationParseError):
        parse_presentation('generators x\n')


@pytest.mark.parametrize('spec', ['truncated:4', 'tensor:2,3', 'full:2,2', 'as_cubic:1,2,5', 'as_cubic:1,-1,3/2', 'point'])
def test_to_text_round_trips(spec):
    presentation = catalog_presentation(spec)
    again = parse_presentation(presentation.to_text())
    assert again.generators == presentation.generators
    assert again.degree == presentation.degree
    assert np.all(again.relation_matrix() == presentation.relation_matrix())


def test_catalog_defaults_and_degrees():
    assert catalog_presentation('as_cubic').name == 'as_cubic:1,2,5'
    assert catalog_degree('truncated:5') == 5
    assert catalog_degree('full:3,2') == 2
    assert catalog_degree('as_cubic') == 3
    assert catalog_degree('point') == 2
    assert catalog_degree('file:x.txt') is None


@pytest.mark.parametrize('spec', ['polynomial:2', 'truncated:1', 'truncated:a', 'tensor:2', 'as_cubic:1,2', 'file:'])
def test_catalog_rejects(spec):
    with pytest.raises(ConfigurationError):
        catalog_presentation(spec)


def test_characteristic_dividing_degree_is_rejected():
    with pytest.raises(ConfigurationError):
        catalog_presentation('truncated:3', 'F:3')


def test_file_entries(tmp_path):
    path = tmp_path / 'cubic.txt'
    path.write_text(CUBIC, encoding='utf-8')
    presentation = catalog_presentation(f'file:{path}')
    assert presentation.name == f'file:{path}'
    assert catalog_presentation(f'file:{path}', 'F:101').field.characteristic == 101
    with pytest.raises(ConfigurationError):
        catalog_presentation(f'file:{path}', 'F:3')
    with pytest.raises(ConfigurationError):
        load_presentation(str(tmp_path / 'missing.txt'))
