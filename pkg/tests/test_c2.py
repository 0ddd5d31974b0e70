import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mzvoa import linalg
from mzvoa.c2 import (c2_reduce, cn_spanning_set, is_c2_monomial_span, monomial_c2_span, poisson_bracket,
                      poisson_product, poly_to_fock)
from mzvoa.fock import FockElement, Heisenberg
from mzvoa.poly import PolyElement

H1 = Heisenberg.orthonormal(1)
H2 = Heisenberg.orthonormal(2)
VAC = FockElement.vacuum()


def same_span(a: linalg.Echelon, b: linalg.Echelon) -> bool:
    return len(a) == len(b) and all(b.contains(r) for r in a.basis())


def test_c2_examples_d1():
    assert [b for b in cn_spanning_set(H1, 2, 2).basis] == [H1.generator(1, 2)]
    c3 = cn_spanning_set(H1, 3, 2)
    assert len(c3) == 0
    assert cn_spanning_set(H1, 3, 3).basis == [H1.generator(1, 3)]


@pytest.mark.parametrize("H", [H1, H2], ids=["d1", "d2"])
def test_c2_equals_monomial_characterization(H):
    for bound in range(6):
        span = cn_spanning_set(H, 2, bound)
        assert same_span(span._ech, monomial_c2_span(H, bound)), bound
        assert all(len(set(b.weights())) == 1 and b.max_weight() <= bound for b in span.basis)


@pytest.mark.parametrize("H", [H1, H2], ids=["d1", "d2"])
def test_cn_containment(H):
    bound = 5
    spans = {n: cn_spanning_set(H, n, bound) for n in (2, 3, 4)}
    for p, q in [(3, 2), (4, 2), (4, 3)]:
        assert all(b in spans[q] for b in spans[p].basis)


def test_c1_contains_c2_and_d():
    c1 = cn_spanning_set(H1, 1, 4)
    c2 = cn_spanning_set(H1, 2, 4)
    assert all(b in c1 for b in c2.basis)
    assert H1.generator(1, 2) in c1


def test_cn_rejects_bad_arguments():
    with pytest.raises(ValueError):
        cn_spanning_set(H1, 0, 3)
    with pytest.raises(ValueError):
        cn_spanning_set(H1, 2, -1)


def test_reduce_examples():
    x = PolyElement.var(("x1",), 0)
    assert c2_reduce(H1, H1.state([(1, 1), (1, 1)])) == x * x
    assert c2_reduce(H1, H1.state([(1, 2), (1, 1)])) == 0
    assert c2_reduce(H1, VAC) == 1
    xs = ("x1", "x2")
    assert c2_reduce(H2, H2.state([(1, 1), (2, 1)]) - 3 * VAC) == PolyElement(xs, {(1, 1): 1, (0, 0): -3})


@pytest.mark.parametrize("H", [H1, H2], ids=["d1", "d2"])
def test_reduce_kernel_is_c2(H):
    for bound in range(5):
        span = cn_spanning_set(H, 2, bound)
        assert all(c2_reduce(H, b) == 0 for b in span.basis)
        kernel_dim = sum(1 for m in H.basis_upto(bound) if any(k >= 2 for _, k in m))
        assert len(span) == kernel_dim


@given(st.sampled_from(H2.basis_upto(4)), st.integers(0, 10), st.fractions(-2, 2, max_denominator=3))
def test_reduce_well_defined(mon, i, c):
    span = cn_spanning_set(H2, 2, 4)
    w = span.basis[i % len(span.basis)]
    a = FockElement.monomial(mon)
    assert c2_reduce(H2, a + c * w) == c2_reduce(H2, a)


def test_fast_path_matches_span():
    span = cn_spanning_set(H2, 2, 4)
    for mon in H2.basis_upto(4):
        v = FockElement.monomial(mon)
        assert is_c2_monomial_span(v) == (v in span)


def test_poisson_examples():
    g = H1.generator(1)
    x = PolyElement.var(("x1",), 0)
    assert poisson_product(H1, g, g) == x * x
    for mon in H1.basis_upto(3):
        b = FockElement.monomial(mon)
        assert poisson_product(H1, VAC, b) == c2_reduce(H1, b)
        assert poisson_bracket(H1, VAC, b) == 0
    assert poisson_product(H1, H1.generator(1, 2), g) == 0
    assert poisson_bracket(H1, g, g) == 0
    assert poisson_bracket(H1, H1.state([(1, 1), (1, 1)]), g) == 0


@pytest.mark.parametrize("H", [H1, H2], ids=["d1", "d2"])
def test_product_is_polynomial_multiplication(H):
    for a, b in itertools.product(H.basis_upto(3), repeat=2):
        A, B = FockElement.monomial(a), FockElement.monomial(b)
        assert poisson_product(H, A, B) == c2_reduce(H, A) * c2_reduce(H, B)


def test_poisson_product_well_defined_on_classes():
    span = cn_spanning_set(H2, 2, 3)
    for a in H2.basis_upto(2):
        A = FockElement.monomial(a)
        for b in H2.basis_upto(2):
            B = FockElement.monomial(b)
            for w in span.basis:
                assert poisson_product(H2, A + w, B) == poisson_product(H2, A, B)
                assert poisson_product(H2, A, B + w) == poisson_product(H2, A, B)


def test_lift_is_a_section():
    xs = ("x1", "x2")
    p = PolyElement(xs, {(2, 1): 3, (0, 0): -1, (0, 2): 1})
    assert c2_reduce(H2, poly_to_fock(H2, p)) == p
