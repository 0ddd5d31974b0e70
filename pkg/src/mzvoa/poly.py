"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]


class PolyElement:
    """Polynomial in a fixed, named roster of variables.

    ``terms`` maps exponent vectors (one slot per variable) to nonzero
    Fractions.  Two polynomials compare equal only if they share the roster.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, object]] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        t: Dict[Exponent, Fraction] = {}
        n = len(self.variables)
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = Fraction(c)
            if c:
                t[e] = t.get(e, 0) + c
                if not t[e]:
                    del t[e]
        self.terms = t

    # construction helpers
    @classmethod
    def const(cls, variables, c=1) -> "PolyElement":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name_or_index) -> "PolyElement":
        variables = tuple(variables)
        i = variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    def _new(self, terms) -> "PolyElement":
        p = PolyElement.__new__(PolyElement)
        p.variables = self.variables
        p.terms = terms
        return p

    def _coerce(self, other) -> "PolyElement":
        if isinstance(other, PolyElement):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variable rosters")
            return other
        return PolyElement.const(self.variables, other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PolyElement):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == PolyElement.const(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyElement):
            s = Fraction(other)
            return self._new({e: c * s for e, c in self.terms.items()} if s else {})
        other = self._coerce(other)
        t: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = PolyElement.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"PolyElement({self.variables}, {dict(sorted(self.terms.items()))})"

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, indices: Sequence[int]) -> int:
        return max((sum(e[i] for i in indices) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def diff(self, i: int) -> "PolyElement":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return self._new(t)

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def items(self):
        return sorted(self.terms.items())


def monomials_upto(nvars: int, degree: int) -> List[Exponent]:
    """All exponent vectors of total degree <= ``degree``, sorted."""
    out = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(set(out))


def x_variables(d: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, d + 1))


def image_variables(n: int) -> Tuple[str, ...]:
    """``z1..zn`` (the zeta block) followed by ``x1..xn``."""
    return tuple(f"z{i}" for i in range(1, n + 1)) + tuple(f"x{i}" for i in range(1, n + 1))
