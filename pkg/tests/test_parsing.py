from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _roundtrip import CONTEXTS, CORPUS
from mzvoa.commva import LaurentElement
from mzvoa.fock import FockElement, Heisenberg
from mzvoa.findim import AlgebraError
from mzvoa.parsing import (FileFormatError, ParseError, format_element, parse_algebra_text, parse_element,
                           parse_fock, parse_laurent, parse_poly, parse_spec_text, parse_subspace_text)
from mzvoa.poly import PolyElement, image_variables, x_variables

H1 = Heisenberg.orthonormal(1)


def test_fock_examples():
    v = parse_fock("a1(-2) a1(-1) vac", H1)
    assert v == H1.state([(1, 2), (1, 1)])
    assert parse_fock("1/2 * a1(-1) a1(-1) vac", H1) == H1.conformal_vector()


@pytest.mark.parametrize("text", ["a1(0) vac", "a1(2) vac"])
def test_annihilation_modes_rejected_with_hint(text):
    with pytest.raises(ParseError) as err:
        parse_fock(text, H1)
    assert err.value.pos == 3
    assert "apply" in err.value.hint


@pytest.mark.parametrize("text, pos", [
    ("a1(-1", 5), ("a1(-1) vac +", 12), ("a3(-1) vac", 0), ("x1 vac", 0), ("vac a1(-1)", 4),
    ("a1(-1) vac $", 11), ("", 0), ("1/0", 2), ("b1(-1) vac", 0)])
def test_fock_errors_are_positioned(text, pos):
    with pytest.raises(ParseError) as err:
        parse_fock(text, H1)
    assert err.value.pos == pos
    assert f"col {pos + 1}" in str(err.value)


def test_poly_and_laurent_parsing():
    xs = x_variables(2)
    assert parse_poly("x1^2 x2 - 3", xs) == PolyElement(xs, {(2, 1): 1, (0, 0): -3})
    iv = image_variables(1)
    assert parse_poly("1 - ζ1 x1", iv) == parse_poly("1 - z1 x1", iv)
    assert parse_laurent("t + t^-1") == LaurentElement({1: 1, -1: 1})
    with pytest.raises(ParseError):
        parse_poly("x1^-1", xs)
    with pytest.raises(ParseError):
        parse_poly("x3", xs)
    with pytest.raises(ParseError):
        parse_laurent("x")


def test_canonical_printing():
    assert format_element(H1.conformal_vector()) == "1/2 * a1(-1) a1(-1) vac"
    assert format_element(FockElement()) == "0"
    v = parse_fock("vac - 2 a1(-1) a1(-2) vac + a1(-1) vac", H1)
    assert format_element(v) == "vac + a1(-1) vac - 2 * a1(-2) a1(-1) vac"
    H = Heisenberg.image_configuration(1)
    assert format_element(parse_fock("b1(-1) a1(-1) vac", H), H) == "a1(-1) b1(-1) vac"


@pytest.mark.parametrize("ctx_name, text", CORPUS)
def test_round_trip_corpus(ctx_name, text):
    ctx = CONTEXTS[ctx_name]
    H = getattr(ctx, "H", None)
    e = parse_element(text, ctx)
    printed = format_element(e, H)
    assert parse_element(printed, ctx) == e
    assert format_element(parse_element(printed, ctx), H) == printed


def test_corpus_size():
    assert len(CORPUS) == 50


@given(st.dictionaries(st.sampled_from(Heisenberg.orthonormal(2).basis_upto(4)),
                       st.fractions(-5, 5, max_denominator=7), max_size=4))
def test_round_trip_random_fock(terms):
    H = Heisenberg.orthonormal(2)
    v = FockElement(terms)
    assert parse_fock(format_element(v, H), H) == v


@given(st.dictionaries(st.integers(-6, 6), st.fractions(-5, 5, max_denominator=7), max_size=4))
def test_round_trip_random_laurent(terms):
    v = LaurentElement(terms)
    assert parse_laurent(format_element(v)) == v


# -------------------------------------------------------------------- files


SPEC = """# comment
kind = c2-ideal
variables = 1
generator = x1 - 2   # trailing comment
degree_bound = 3
"""


def test_spec_file():
    spec = parse_spec_text(SPEC)
    assert spec.kind == "c2-ideal" and spec.degree_bound == 3 and spec.power_window == 6
    assert spec.generators == [parse_poly("x1 - 2", ("x1",))]


@pytest.mark.parametrize("text, line", [
    ("kind = c2-ideal\nvariables = 1\ngenerator = x2\n", 3),
    ("kind = nope\nvariables = 1\n", 1),
    ("kind = c2-span\nvariables = 1\nfoo = 3\n", 3),
    ("kind = c2-span\nvariables = one\n", 2),
    ("kind = c2-span\nvariables = 1\ngenerator\n", 3),
])
def test_spec_file_errors(text, line):
    with pytest.raises(FileFormatError) as err:
        parse_spec_text(text, "s.spec")
    assert err.value.line == line
    assert str(err.value).startswith(f"s.spec:{line}:")


ALG = """dim = 2
labels = 1 e
unit = 1 0
1 1 1 1
1 2 2 1
2 1 2 1
"""


def test_algebra_and_subspace_files():
    A = parse_algebra_text(ALG)
    assert A.dim == 2 and A.labels == ["1", "e"]
    U = parse_subspace_text("0 1\n", A)
    assert U.dim == 1
    assert parse_subspace_text("whole\n", A).is_whole()
    with pytest.raises(FileFormatError):
        parse_subspace_text("1 2 3\n", A)


@pytest.mark.parametrize("mutate, line", [
    (lambda s: s.replace("2 1 2 1\n", ""), 5),            # e1*e2 given, e2*e1 missing
    (lambda s: s.replace("unit = 1 0", "unit = 0 1"), 3),
    (lambda s: s + "1 1 3 1\n", 7),
    (lambda s: s + "1 1 1\n", 7),
    (lambda s: s.replace("dim = 2", "dim = x"), 1),
])
def test_algebra_file_errors_are_line_numbered(mutate, line):
    with pytest.raises(FileFormatError) as err:
        parse_algebra_text(mutate(ALG), "a.alg")
    assert err.value.line == line
