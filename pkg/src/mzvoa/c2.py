"""C_n subspaces of M(1) and the Poisson algebra M(1)/C_2.

The quotient map sends ``a_{i1}(-1)...a_{ik}(-1) vac`` to ``x_{i1}...x_{ik}``
and every monomial carrying a mode >= 2 to zero.  In the image configuration
the variables are ``z1..zn, x1..xn`` and flavor ``i`` maps to variable ``i``,
so ``alpha^i -> z_i`` and ``beta^i -> x_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from . import linalg
from .fock import FockElement, Heisenberg
from .poly import PolyElement, image_variables, x_variables


def variables_for(H: Heisenberg):
    if H.image_n is not None:
        return image_variables(H.image_n)
    return x_variables(H.d)


@dataclass
class CnSpan:
    n: int
    weight_bound: int
    basis: List[FockElement]
    _ech: linalg.Echelon = field(default=None, repr=False)

    def __post_init__(self):
        if self._ech is None:
            self._ech = linalg.Echelon(b.terms for b in self.basis)

    def __contains__(self, v: FockElement) -> bool:
        return self._ech.contains(v.terms)

    def __len__(self):
        return len(self.basis)

    def dimension_at(self, wt: int) -> int:
        return sum(1 for b in self.basis if b.max_weight() == wt)


def cn_spanning_set(H: Heisenberg, n: int, weight_bound: int) -> CnSpan:
    """Row-reduced spanning set of ``C_n(M(1))`` up to ``weight_bound``.

    For ``n >= 2`` this enumerates ``u_{-n} v`` over basis pairs; ``n = 1``
    uses ``a_{-1} b`` (``a, b`` of positive weight) and ``L(-1) w``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if weight_bound < 0:
        raise ValueError("weight_bound must be >= 0")
    basis = [FockElement.monomial(m) for m in H.basis_upto(weight_bound)]
    ech = linalg.Echelon()
    if n >= 2:
        for u in basis:
            for v in basis:
                if u.max_weight() + v.max_weight() + n - 1 <= weight_bound:
                    ech.add(H.mode_action(u, -n, v).terms)
    else:
        for a in basis:
            for b in basis:
                wa, wb = a.max_weight(), b.max_weight()
                if wa >= 1 and wb >= 1 and wa + wb <= weight_bound:
                    ech.add(H.mode_action(a, -1, b).terms)
        for w in basis:
            if w.max_weight() + 1 <= weight_bound:
                ech.add(H.virasoro_mode(-1, w).terms)
    # homogeneous rows: every generator above is homogeneous and the pivots
    # are monomials, so reduction never mixes weights
    rows = [FockElement(r) for r in ech.basis()]
    return CnSpan(n, weight_bound, rows, ech)


def is_c2_monomial_span(v: FockElement) -> bool:
    """Fast path: ``v`` lies in C_2 iff each monomial has a mode >= 2."""
    return all(any(m >= 2 for _, m in mon) for mon in v.terms)


def c2_reduce(H: Heisenberg, v: FockElement) -> PolyElement:
    variables = variables_for(H)
    terms = {}
    for mon, c in v.terms.items():
        if any(m != 1 for _, m in mon):
            continue
        e = [0] * H.d
        for f, _ in mon:
            e[f - 1] += 1
        e = tuple(e)
        terms[e] = terms.get(e, Fraction(0)) + c
    return PolyElement(variables, terms)


def poly_to_fock(H: Heisenberg, p: PolyElement) -> FockElement:
    """Canonical lift of a polynomial: ``x_i -> a_i(-1)``."""
    out = {}
    for e, c in p.terms.items():
        pairs = [(i + 1, 1) for i, k in enumerate(e) for _ in range(k)]
        out[H.monomial(pairs)] = c
    return FockElement(out)


def poisson_product(H: Heisenberg, a: FockElement, b: FockElement) -> PolyElement:
    """Class of ``a_{-1} b`` in M(1)/C_2."""
    return c2_reduce(H, H.mode_action(a, -1, b))


def poisson_bracket(H: Heisenberg, a: FockElement, b: FockElement) -> PolyElement:
    """Class of ``a_0 b`` in M(1)/C_2."""
    return c2_reduce(H, H.mode_action(a, 0, b))


def monomial_c2_span(H: Heisenberg, weight_bound: int) -> linalg.Echelon:
    """Span of all monomials of weight <= bound containing a mode >= 2."""
    return linalg.Echelon({m: 1} for m in H.basis_upto(weight_bound) if any(k >= 2 for _, k in m))
