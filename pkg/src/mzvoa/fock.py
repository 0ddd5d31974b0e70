"""The Heisenberg vertex operator algebra M(1) on a Fock space.

A basis monomial is a tuple of ``(flavor, mode)`` pairs, one per creation
operator ``a_flavor(-mode)``, sorted by decreasing mode and then increasing
flavor.  The empty tuple is the vacuum.  Flavors are 1-based.

``Heisenberg`` holds the bilinear form and implements every mode product.
Two engines compute ``u_n v``:

* :meth:`Heisenberg.mode_action` peels the highest-mode creation operator off
  ``u`` and recurses with the iterate formula at ``m = -1``;
* :meth:`Heisenberg.normal_order_oracle` expands ``Y(u, z)`` as the normally
  ordered product of derivatives of generator fields and reads off one
  coefficient.  It shares nothing with the recursive engine beyond the single
  generator action.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg

FockMonomial = Tuple[Tuple[int, int], ...]
VACUUM: FockMonomial = ()

INHOMOGENEOUS = "inhomogeneous"


class ValidationError(ValueError):
    """Malformed input to a Fock-space constructor."""


class WeightBoundExceeded(ArithmeticError):
    """An intermediate state would exceed the declared maximum weight."""


def _sort_key(pair):
    return (-pair[1], pair[0])


def canonical(pairs: Iterable[Tuple[int, int]]) -> FockMonomial:
    return tuple(sorted(pairs, key=_sort_key))


def make_monomial(pairs: Iterable[Tuple[int, int]], d: Optional[int] = None) -> FockMonomial:
    """Canonical monomial from ``(flavor, mode)`` pairs in any order."""
    out = []
    for flavor, mode in pairs:
        if int(mode) != mode or mode < 1:
            raise ValidationError(f"mode must be >= 1, got {mode}")
        if int(flavor) != flavor or flavor < 1 or (d is not None and flavor > d):
            raise ValidationError(f"flavor {flavor} out of range 1..{d}")
        out.append((int(flavor), int(mode)))
    return canonical(out)


def monomial_weight(mon: FockMonomial) -> int:
    return sum(m for _, m in mon)


def binom(a: int, r: int) -> Fraction:
    """Generalized binomial coefficient ``a choose r`` for integer ``a``, ``r >= 0``."""
    if r < 0:
        return Fraction(0)
    num = 1
    for i in range(r):
        num *= a - i
    return Fraction(num, factorial(r))


class FockElement:
    """Finite rational combination of Fock monomials.  Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[FockMonomial, object]] = None):
        t = {}
        if terms:
            for mon, c in terms.items():
                c = Fraction(c)
                if c:
                    t[mon] = c
        self.terms: Dict[FockMonomial, Fraction] = t
        self._hash = None

    @classmethod
    def monomial(cls, mon: FockMonomial, coeff=1) -> "FockElement":
        return cls({mon: coeff})

    @classmethod
    def vacuum(cls) -> "FockElement":
        return cls({VACUUM: 1})

    @classmethod
    def _raw(cls, terms: Dict[FockMonomial, Fraction]) -> "FockElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, FockElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "FockElement") -> "FockElement":
        t = dict(self.terms)
        linalg.axpy(t, Fraction(1), other.terms)
        return FockElement._raw(t)

    def __sub__(self, other: "FockElement") -> "FockElement":
        t = dict(self.terms)
        linalg.axpy(t, Fraction(-1), other.terms)
        return FockElement._raw(t)

    def __neg__(self):
        return FockElement._raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar) -> "FockElement":
        s = Fraction(scalar)
        if not s:
            return FockElement()
        return FockElement._raw({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if not self.terms:
            return "FockElement(0)"
        return "FockElement({%s})" % ", ".join(f"{m!r}: {c}" for m, c in sorted(self.terms.items()))

    def items(self):
        return sorted(self.terms.items())

    def weights(self) -> List[int]:
        return sorted({monomial_weight(m) for m in self.terms})

    def component(self, wt: int) -> "FockElement":
        return FockElement._raw({m: c for m, c in self.terms.items() if monomial_weight(m) == wt})

    def max_weight(self) -> int:
        return max((monomial_weight(m) for m in self.terms), default=0)


def weight(v: FockElement) -> Union[int, str]:
    """Common weight of a nonzero element, or ``INHOMOGENEOUS``."""
    if not v:
        raise ValueError("the zero element has no weight")
    ws = v.weights()
    return ws[0] if len(ws) == 1 else INHOMOGENEOUS


def _scatter(out: Dict[FockMonomial, Fraction], coeff: Fraction, terms: Mapping[FockMonomial, Fraction]):
    for mon, c in terms.items():
        v = out.get(mon, 0) + coeff * c
        if v:
            out[mon] = v
        else:
            out.pop(mon, None)


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class Heisenberg:
    """M(1) for ``d`` flavors with Gram matrix ``gram``.

    ``max_weight`` (optional) is a guard: any mode product whose output weight
    would exceed it raises :class:`WeightBoundExceeded`.
    """

    def __init__(self, gram: Sequence[Sequence], max_weight: Optional[int] = None, image_n: Optional[int] = None):
        g = [[Fraction(x) for x in row] for row in gram]
        d = len(g)
        if any(len(row) != d for row in g):
            raise ValidationError("Gram matrix must be square")
        for i in range(d):
            for j in range(d):
                if g[i][j] != g[j][i]:
                    raise ValidationError("Gram matrix must be symmetric")
        self.d = d
        self.gram = tuple(tuple(row) for row in g)
        self.max_weight = max_weight
        self.image_n = image_n
        self._cache: Dict[Tuple[FockMonomial, int, FockMonomial], Dict[FockMonomial, Fraction]] = {}
        self._omega: Optional[FockElement] = None

    @classmethod
    def orthonormal(cls, d: int, **kw) -> "Heisenberg":
        return cls([[int(i == j) for j in range(d)] for i in range(d)], **kw)

    @classmethod
    def image_configuration(cls, n: int, **kw) -> "Heisenberg":
        """Flavors ``1..n`` are alpha^1..alpha^n, ``n+1..2n`` are beta^1..beta^n.

        Both blocks are orthonormal and mutually orthogonal.
        """
        return cls([[int(i == j) for j in range(2 * n)] for i in range(2 * n)], image_n=n, **kw)

    def alpha(self, i: int) -> int:
        self._require_image()
        return i

    def beta(self, i: int) -> int:
        self._require_image()
        return self.image_n + i

    def _require_image(self):
        if self.image_n is None:
            raise ValidationError("operation needs the 2n-flavor image configuration")

    # ------------------------------------------------------------------ states

    def monomial(self, pairs: Iterable[Tuple[int, int]]) -> FockMonomial:
        return make_monomial(pairs, self.d)

    def state(self, pairs: Iterable[Tuple[int, int]], coeff=1) -> FockElement:
        return FockElement.monomial(self.monomial(pairs), coeff)

    def generator(self, flavor: int, mode: int = 1) -> FockElement:
        """The state ``a_flavor(-mode) vac``."""
        return self.state([(flavor, mode)])

    def basis(self, wt: int) -> List[FockMonomial]:
        """All basis monomials of the given weight, in canonical order."""
        out = set()
        for part in partitions(wt):
            for flavors in itertools.product(range(1, self.d + 1), repeat=len(part)):
                out.add(canonical(zip(flavors, part)))
        return sorted(out)

    def basis_upto(self, wt: int) -> List[FockMonomial]:
        return [m for w in range(wt + 1) for m in self.basis(w)]

    # ------------------------------------------------------- generator action

    def _gen_action_mon(self, flavor: int, m: int, mon: FockMonomial) -> Dict[FockMonomial, Fraction]:
        if m < 0:
            return {canonical(mon + ((flavor, -m),)): Fraction(1)}
        if m == 0:
            return {}
        out: Dict[FockMonomial, Fraction] = {}
        row = self.gram[flavor - 1]
        seen = set()
        for idx, pair in enumerate(mon):
            if pair[1] != m or pair in seen:
                continue
            seen.add(pair)
            g = row[pair[0] - 1]
            if not g:
                continue
            mult = sum(1 for q in mon if q == pair)
            rest = mon[:idx] + mon[idx + 1:]
            out[rest] = out.get(rest, 0) + m * g * mult
        return out

    def generator_mode_action(self, flavor: int, m: int, v: FockElement) -> FockElement:
        """Action of the Heisenberg mode ``a_flavor(m)`` on ``v``."""
        out: Dict[FockMonomial, Fraction] = {}
        for mon, c in v.terms.items():
            _scatter(out, c, self._gen_action_mon(flavor, m, mon))
        return FockElement._raw(out)

    # ------------------------------------------------------------- mode engine

    def _check_weight(self, wt: int, max_weight: Optional[int]):
        bound = self.max_weight if max_weight is None else max_weight
        if bound is not None and wt > bound:
            raise WeightBoundExceeded(f"intermediate weight {wt} exceeds bound {bound}")

    def _mode_mon(self, u: FockMonomial, n: int, w: FockMonomial) -> Dict[FockMonomial, Fraction]:
        key = (u, n, w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not u:
            res = {w: Fraction(1)} if n == -1 else {}
            self._cache[key] = res
            return res
        wu, ww = monomial_weight(u), monomial_weight(w)
        if wu + ww - n - 1 < 0:
            self._cache[key] = {}
            return {}
        # u = x_{-1} u' with x = a_f(-k) vac the highest-mode factor, and
        # (x_{-1} u')_n w = sum_i x_{-1-i} u'_{n+i} w + u'_{n-1-i} x_i w
        # where x_j = binom(k-j-2, k-1) a_f(j-k+1).
        f, k = u[0]
        rest = u[1:]
        wr = wu - k
        out: Dict[FockMonomial, Fraction] = {}
        for i in range(0, max(0, wr + ww - n)):
            inner = self._mode_mon(rest, n + i, w)
            if not inner:
                continue
            coeff = binom(k + i - 1, k - 1)
            mode = i + k
            for mon, c in inner.items():
                new = canonical(mon + ((f, mode),))
                v = out.get(new, 0) + coeff * c
                if v:
                    out[new] = v
                else:
                    out.pop(new, None)
        for i in range(k, k + ww):
            ann = self._gen_action_mon(f, i - k + 1, w)
            if not ann:
                continue
            coeff = binom(k - i - 2, k - 1)
            for mon, c in ann.items():
                _scatter(out, coeff * c, self._mode_mon(rest, n - 1 - i, mon))
        self._cache[key] = out
        return out

    def mode_action(self, u: FockElement, n: int, v: FockElement, max_weight: Optional[int] = None) -> FockElement:
        """The vertex-algebra product ``u_n v``."""
        out: Dict[FockMonomial, Fraction] = {}
        for mu, cu in u.terms.items():
            wu = monomial_weight(mu)
            for mv, cv in v.terms.items():
                self._check_weight(wu + monomial_weight(mv) - n - 1, max_weight)
                _scatter(out, cu * cv, self._mode_mon(mu, n, mv))
        return FockElement._raw(out)

    # ----------------------------------------------------------------- oracle

    def normal_order_oracle(self, u, n: int, v: FockElement) -> FockElement:
        """``u_n v`` from the normally ordered product of generator fields.

        ``Y(a_1(-n_1)...a_k(-n_k) vac, z)`` is the normally ordered product of
        the fields ``d^(n_j - 1) a_j(z) / (n_j - 1)!``, whose mode-``m`` term is
        ``binom(-m-1, n_j-1) a_j(m) z^(-m-n_j)``.  The coefficient of
        ``z^(-n-1)`` is a finite sum over mode assignments with all creation
        operators to the left of all annihilation operators.
        """
        if isinstance(u, FockElement):
            out = FockElement()
            for mon, c in u.items():
                out = out + c * self.normal_order_oracle(mon, n, v)
            return out
        factors = list(u)
        k = len(factors)
        total = n + 1 - monomial_weight(u)
        out: Dict[FockMonomial, Fraction] = {}
        for w, cw in v.terms.items():
            ww = monomial_weight(w)
            # choose which factor positions act as annihilators (mode >= 1);
            # mode 0 kills every state of M(1)
            for mask in range(1 << k):
                ann = [j for j in range(k) if mask >> j & 1]
                cre = [j for j in range(k) if not mask >> j & 1]
                for modes in _bounded_tuples(len(ann), ww):
                    state = {w: Fraction(cw)}
                    coeff = Fraction(1)
                    for j, m in zip(ann, modes):
                        fl, nj = factors[j]
                        coeff *= binom(-m - 1, nj - 1)
                        nxt: Dict[FockMonomial, Fraction] = {}
                        for mon, c in state.items():
                            _scatter(nxt, c, self._gen_action_mon(fl, m, mon))
                        state = nxt
                        if not state or not coeff:
                            break
                    if not state or not coeff:
                        continue
                    # creators take modes -c_j <= -1 summing to the remainder
                    need = -(total - sum(modes))
                    if need < len(cre) or (not cre and need != 0):
                        continue
                    for comp in compositions(need, len(cre)):
                        cc = coeff
                        extra = []
                        for j, c_j in zip(cre, comp):
                            fl, nj = factors[j]
                            cc *= binom(c_j - 1, nj - 1)
                            extra.append((fl, c_j))
                        if not cc:
                            continue
                        for mon, c in state.items():
                            new = canonical(mon + tuple(extra))
                            v_ = out.get(new, 0) + cc * c
                            if v_:
                                out[new] = v_
                            else:
                                out.pop(new, None)
        return FockElement._raw(out)

    # ----------------------------------------------------- derived operators

    def d_operator(self, v: FockElement) -> FockElement:
        """``D(v) = v_{-2} vac``."""
        return self.mode_action(v, -2, FockElement.vacuum())

    def d_power(self, v: FockElement, i: int) -> FockElement:
        for _ in range(i):
            v = self.d_operator(v)
        return v

    def conformal_vector(self) -> FockElement:
        """``omega = 1/2 sum_ij g^{ij} a_i(-1) a_j(-1) vac``."""
        if self._omega is None:
            try:
                ginv = linalg.inverse(self.gram)
            except ValueError:
                raise ValidationError("Gram matrix is singular; no conformal vector") from None
            t: Dict[FockMonomial, Fraction] = {}
            for i in range(self.d):
                for j in range(self.d):
                    if ginv[i][j]:
                        mon = canonical([(i + 1, 1), (j + 1, 1)])
                        t[mon] = t.get(mon, 0) + ginv[i][j] / 2
            self._omega = FockElement(t)
        return self._omega

    def virasoro_mode(self, m: int, v: FockElement) -> FockElement:
        """``L(m) v = omega_{m+1} v``."""
        return self.mode_action(self.conformal_vector(), m + 1, v)

    @property
    def central_charge(self) -> int:
        return self.d

    def top_nonneg(self, u: FockElement, v: FockElement) -> int:
        """Largest ``i >= 0`` for which ``u_i v`` can be nonzero (-1 if none)."""
        if not u or not v:
            return -1
        return u.max_weight() + v.max_weight() - 1

    def zero(self) -> FockElement:
        return FockElement()


def _bounded_tuples(length: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of positive ints of given length with sum <= budget."""
    if length == 0:
        yield ()
        return
    for first in range(1, budget - length + 2):
        for rest in _bounded_tuples(length - 1, budget - first):
            yield (first,) + rest
