"""Commutative vertex algebras ``Y(a, z) b = (e^{z d} a) b`` from a derivation.

Two carriers are provided: truncated polynomials ``Q[t]/(t^k)`` and Laurent
polynomials restricted to an exponent window ``[-E, E]``.  Elements of both
are :class:`LaurentElement` (exponent -> Fraction).  Leaving the window is an
error, never a silent truncation; in the truncated carrier ``t^j = 0`` for
``j >= k`` is the honest quotient relation, not a truncation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional

from .verdict import BoundOverflow, Verdict, inconclusive, proved, refuted


class WindowOverflow(BoundOverflow):
    """A Laurent computation produced an exponent outside the declared window."""


class LaurentElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[int, object]] = None):
        t: Dict[int, Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[int(e)] = t.get(int(e), 0) + c
                if not t[int(e)]:
                    del t[int(e)]
        self.terms = t

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentElement":
        return cls({e: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentElement(t)

    def __neg__(self):
        return LaurentElement({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LaurentElement):
            raise TypeError("multiply elements through their DerivationAlgebra")
        s = Fraction(scalar)
        return LaurentElement({e: c * s for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"LaurentElement({dict(sorted(self.terms.items()))})"

    def items(self):
        return sorted(self.terms.items())

    def exponents(self) -> List[int]:
        return sorted(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def max_weight(self) -> int:
        # the grid helpers only use this for ordering
        return max(self.terms, default=0)


class DerivationAlgebra:
    """A commutative algebra ``A`` with derivation ``d``, viewed as a vertex algebra.

    ``derivation`` is the element ``p`` with ``d = p(t) d/dt``.
    """

    def __init__(self, kind: str, size: int, derivation: Optional[LaurentElement] = None):
        if kind not in ("truncated", "laurent"):
            raise ValueError("kind must be 'truncated' or 'laurent'")
        if size < 1 and kind == "truncated":
            raise ValueError("truncation order must be >= 1")
        if size < 0:
            raise ValueError("window must be >= 0")
        self.kind = kind
        self.size = size
        self.p = derivation if derivation is not None else LaurentElement({0: 1})
        if kind == "truncated" and any(e < 0 for e in self.p.terms):
            raise ValueError("truncated carrier needs a polynomial derivation")
        self._check_leibniz()

    @classmethod
    def truncated(cls, k: int, derivation: Optional[LaurentElement] = None) -> "DerivationAlgebra":
        """``Q[t]/(t^k)``; the default derivation is ``t d/dt``.

        Plain ``d/dt`` does not preserve the ideal ``(t^k)``, so it is
        rejected here by the Leibniz check.
        """
        return cls("truncated", k, derivation if derivation is not None else LaurentElement({1: 1}))

    @classmethod
    def laurent(cls, window: int, derivation: Optional[LaurentElement] = None) -> "DerivationAlgebra":
        return cls("laurent", window, derivation)

    # ----------------------------------------------------------- carrier

    def exponents(self) -> range:
        if self.kind == "truncated":
            return range(0, self.size)
        return range(-self.size, self.size + 1)

    def _place(self, terms: Dict[int, Fraction]) -> LaurentElement:
        out = {}
        for e, c in terms.items():
            if not c:
                continue
            if self.kind == "truncated":
                if e >= self.size:
                    continue
            elif abs(e) > self.size:
                raise WindowOverflow(f"exponent {e} outside window [-{self.size}, {self.size}]")
            out[e] = c
        return LaurentElement(out)

    def element(self, terms: Mapping[int, object]) -> LaurentElement:
        v = LaurentElement(terms)
        for e in v.terms:
            if e not in self.exponents():
                raise WindowOverflow(f"exponent {e} outside the carrier")
        return v

    def basis(self) -> List[LaurentElement]:
        return [LaurentElement.monomial(e) for e in self.exponents()]

    def one(self) -> LaurentElement:
        return LaurentElement.monomial(0)

    def zero(self) -> LaurentElement:
        return LaurentElement()

    def mul(self, a: LaurentElement, b: LaurentElement) -> LaurentElement:
        out: Dict[int, Fraction] = {}
        for (e1, c1), (e2, c2) in itertools.product(a.terms.items(), b.terms.items()):
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return self._place(out)

    def power(self, a: LaurentElement, m: int) -> LaurentElement:
        out = self.one()
        for _ in range(m):
            out = self.mul(out, a)
        return out

    def derive(self, a: LaurentElement) -> LaurentElement:
        raw: Dict[int, Fraction] = {}
        for e, c in a.terms.items():
            if e:
                raw[e - 1] = c * e
        return self.mul(self.p, LaurentElement(raw)) if raw else self.zero()

    def _check_leibniz(self):
        # window edges: products leaving the window are not constraints
        for a, b in itertools.combinations_with_replacement(self.basis(), 2):
            try:
                lhs = self.derive(self.mul(a, b))
                rhs = self.mul(self.derive(a), b) + self.mul(a, self.derive(b))
            except WindowOverflow:
                continue
            if lhs != rhs:
                raise ValueError(f"derivation violates Leibniz on t^{a.exponents()[0]}, t^{b.exponents()[0]}")

    # ------------------------------------------------------ vertex structure

    def mode_action(self, a: LaurentElement, n: int, b: LaurentElement) -> LaurentElement:
        """``a_n b``: zero for ``n >= 0``, ``(d^j a / j!) b`` for ``n = -1-j``."""
        if n >= 0:
            return self.zero()
        j = -1 - n
        da = a
        for _ in range(j):
            da = self.derive(da)
        return self.mul(da, b) * Fraction(1, factorial(j))

    comm_mode_action = mode_action

    def d_operator(self, v: LaurentElement) -> LaurentElement:
        return self.mode_action(v, -2, self.one())

    def top_nonneg(self, u, v) -> int:
        return -1

    def grid_pairs(self):
        return list(itertools.product(self.basis(), repeat=2))

    def grid_triples(self):
        return list(itertools.product(self.basis(), repeat=3))

    def as_findim(self):
        """The truncated carrier as a :class:`~mzvoa.findim.FinDimAlgebra`."""
        from .findim import FinDimAlgebra

        if self.kind != "truncated":
            raise ValueError("only the truncated carrier is finite-dimensional")
        return FinDimAlgebra.truncated_poly(self.size, "t")

    def to_coords(self, v: LaurentElement):
        return tuple(v.terms.get(e, Fraction(0)) for e in self.exponents())


def strings(max_length: int, min_length: int = 1) -> Iterator[tuple]:
    for t in range(min_length, max_length + 1):
        yield from itertools.product((0, -1), repeat=t)


def string_radical_member(alg: DerivationAlgebra, a: LaurentElement, contains) -> bool:
    """Radical membership via {0,-1}-strings on a truncated carrier.

    Strings containing a 0 vanish, so only ``a_{-1}^t a = a^{t+1}`` matter;
    for dimension ``n`` the window ``t+1 in [n, 2n+1]`` is exact.
    """
    if alg.kind != "truncated":
        raise ValueError("exact string radical needs a finite-dimensional carrier")
    n = alg.size
    for t in range(n - 1, 2 * n + 1):
        for s in itertools.product((0, -1), repeat=t):
            out = a
            for m in reversed(s):
                out = alg.mode_action(a, m, out)
            if not contains(out):
                return False
    return True


def laurent_radical_member(v: LaurentElement, window: int, powers: int) -> Verdict:
    """Is ``v`` in the radical of the constant-term-zero subspace of ``Q[t, 1/t]``?

    Exponents of one sign form a semigroup avoiding 0, so such ``v`` is proved
    outright.  Otherwise powers ``1..powers`` are expanded inside the window
    looking for a nonzero constant term.
    """
    alg = DerivationAlgebra.laurent(window)
    v = alg.element(v.terms)
    bounds = {"window": window, "powers": powers}
    exps = v.exponents()
    if not exps:
        return proved("structural: zero element", bounds=bounds)
    if all(e > 0 for e in exps) or all(e < 0 for e in exps):
        return proved("structural: exponents share one sign", bounds=bounds)
    x = alg.one()
    for m in range(1, powers + 1):
        x = alg.mul(x, v)
        if x.constant_term():
            return refuted(m, reason=f"constant term of v^{m} is {x.constant_term()}",
                           bounds=bounds, certificate={"constant_term": x.constant_term()})
    return inconclusive(f"no nonzero constant term among powers 1..{powers}", bounds=bounds)
