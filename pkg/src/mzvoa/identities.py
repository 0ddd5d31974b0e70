"""Exact checks of the vertex-algebra identities on finite grids.

The generic checks only need an algebra object exposing ``mode_action``,
``d_operator`` and ``top_nonneg`` (the largest ``i >= 0`` with ``u_i v``
possibly nonzero), and elements supporting ``+``, ``-``, scalar ``*`` and
``==``.  Both :class:`~mzvoa.fock.Heisenberg` and
:class:`~mzvoa.commva.DerivationAlgebra` qualify.

Suites are addressed by tag (``eq7``, ``eq13``, ``c2v``, ...); each returns a
:class:`SuiteResult` listing every failing instance with both sides.

Grid convention for M(1): an identity in two states uses every pair of basis
monomials with each weight ``<= W``; an identity in three states uses every
triple whose weights sum to ``<= W``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

from . import linalg
from .c2 import c2_reduce, cn_spanning_set
from .fock import FockElement, Heisenberg, binom, monomial_weight

MODES = range(-3, 4)
VIRASORO_MODES = range(-2, 3)


@dataclass
class Failure:
    tag: str
    inputs: Dict[str, object]
    lhs: object
    rhs: object


@dataclass
class SuiteResult:
    tag: str
    checks: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, inputs, lhs, rhs) -> bool:
        self.checks += 1
        if lhs != rhs:
            self.failures.append(Failure(self.tag, dict(inputs), lhs, rhs))
            return False
        return True


# ------------------------------------------------------------------ generic


def _sum(terms, zero):
    out = zero
    for t in terms:
        out = out + t
    return out


def check_commutator(va, triples, modes=MODES, tag="eq7") -> SuiteResult:
    """``[u_m, v_n] w = sum_i binom(m, i) (u_i v)_{m+n-i} w``."""
    res = SuiteResult(tag)
    mode = va.mode_action
    for u, v, w in triples:
        top = va.top_nonneg(u, v)
        u_iv = [mode(u, i, v) for i in range(top + 1)]
        for m in modes:
            for n in modes:
                lhs = mode(u, m, mode(v, n, w)) - mode(v, n, mode(u, m, w))
                rhs = _sum((binom(m, i) * mode(u_iv[i], m + n - i, w) for i in range(top + 1) if u_iv[i]), va.zero())
                res.record({"u": u, "v": v, "w": w, "m": m, "n": n}, lhs, rhs)
    return res


def check_iterate(va, triples, modes=MODES, outer: Optional[Callable] = None, tag="eq8") -> SuiteResult:
    """``(u_m v)_n w = sum_i (-1)^i binom(m,i) (u_{m-i} v_{n+i} w - (-1)^m v_{m+n-i} u_i w)``.

    ``outer`` computes the left side's outer product; pass an independent
    engine to make the check two-sided.
    """
    res = SuiteResult(tag)
    mode = va.mode_action
    outer = outer or mode
    for u, v, w in triples:
        top_vw, top_uw = va.top_nonneg(v, w), va.top_nonneg(u, w)
        for m in modes:
            umv = mode(u, m, v)
            sign_m = -1 if m % 2 else 1
            for n in modes:
                lhs = outer(umv, n, w)
                terms = []
                for i in range(0, max(top_vw - n, top_uw, 0) + 1):
                    c = binom(m, i)
                    if not c:
                        continue
                    s = c if i % 2 == 0 else -c
                    a = mode(u, m - i, mode(v, n + i, w))
                    b = mode(v, m + n - i, mode(u, i, w))
                    terms.append(s * (a - sign_m * b))
                res.record({"u": u, "v": v, "w": w, "m": m, "n": n}, lhs, _sum(terms, va.zero()))
    return res


def check_special_cases(va, triples, tag="eq9-12") -> SuiteResult:
    """The m, n in {0, -1} specializations of the commutator and iterate formulas."""
    res = SuiteResult(tag)
    mode = va.mode_action
    for u, v, w in triples:
        top = va.top_nonneg(u, v)
        lhs = mode(u, -1, mode(v, -1, w)) - mode(v, -1, mode(u, -1, w))
        rhs = _sum(((-1) ** i * mode(mode(u, i, v), -2 - i, w) for i in range(top + 1)), va.zero())
        res.record({"u": u, "v": v, "w": w, "case": "[u_-1,v_-1]"}, lhs, rhs)
        u0v = mode(u, 0, v)
        res.record({"u": u, "v": v, "w": w, "case": "(u_0v)_0"}, mode(u0v, 0, w),
                   mode(u, 0, mode(v, 0, w)) - mode(v, 0, mode(u, 0, w)))
        res.record({"u": u, "v": v, "w": w, "case": "(u_0v)_-1"}, mode(u0v, -1, w),
                   mode(u, 0, mode(v, -1, w)) - mode(v, -1, mode(u, 0, w)))
        top2 = max(va.top_nonneg(v, w), va.top_nonneg(u, w)) + 2
        rhs = _sum((mode(u, -1 - i, mode(v, -1 + i, w)) + mode(v, -2 - i, mode(u, i, w)) for i in range(top2 + 1)),
                   va.zero())
        res.record({"u": u, "v": v, "w": w, "case": "(u_-1v)_-1"}, mode(mode(u, -1, v), -1, w), rhs)
    return res


def check_d_relation(va, pairs, modes=MODES, tag="eq13") -> SuiteResult:
    """``[D, v_n] w = (D v)_n w = -n v_{n-1} w``."""
    res = SuiteResult(tag)
    mode, D = va.mode_action, va.d_operator
    for v, w in pairs:
        dv = D(v)
        for n in modes:
            rhs = -n * mode(v, n - 1, w)
            res.record({"v": v, "w": w, "n": n, "side": "[D,v_n]"}, D(mode(v, n, w)) - mode(v, n, D(w)), rhs)
            res.record({"v": v, "w": w, "n": n, "side": "(Dv)_n"}, mode(dv, n, w), rhs)
    return res


def _d_series(va, terms):
    """``sum_i c_i D^i(x_i)`` for ``terms = [(i, c_i, x_i), ...]``."""
    out = va.zero()
    for i, c, x in terms:
        if not c or not x:
            continue
        for _ in range(i):
            x = va.d_operator(x)
        out = out + c * x
    return out


def check_skew(va, pairs, modes=MODES, tag="skew") -> SuiteResult:
    """``u_n v = -sum_i (-1)^(i+n)/i! D^i(v_{i+n} u)``."""
    res = SuiteResult(tag)
    mode = va.mode_action
    for u, v in pairs:
        top = va.top_nonneg(v, u)
        for n in modes:
            terms = [(i, Fraction((-1) ** ((i + n) % 2 + 1), factorial(i)), mode(v, i + n, u))
                     for i in range(max(0, top - n + 1) + 1)]
            res.record({"u": u, "v": v, "n": n}, mode(u, n, v), _d_series(va, terms))
    return res


def check_u0v(va, pairs, tag="eq15") -> SuiteResult:
    res = SuiteResult(tag)
    mode = va.mode_action
    for u, v in pairs:
        top = va.top_nonneg(v, u)
        terms = [(i, -Fraction((-1) ** i, factorial(i)), mode(v, i, u)) for i in range(1, top + 1)]
        res.record({"u": u, "v": v}, mode(u, 0, v), -mode(v, 0, u) + _d_series(va, terms))
    return res


def check_u0u(va, states, tag="eq16") -> SuiteResult:
    """``u_0 u = 1/2 sum_{i>=1} (-1)^(i+1) D^i(u_i u) / i!``."""
    res = SuiteResult(tag)
    mode = va.mode_action
    for u in states:
        top = va.top_nonneg(u, u)
        terms = [(i, Fraction((-1) ** (i + 1), 2 * factorial(i)), mode(u, i, u)) for i in range(1, top + 1)]
        res.record({"u": u}, mode(u, 0, u), _d_series(va, terms))
    return res


def check_u_1v(va, pairs, tag="eq17") -> SuiteResult:
    res = SuiteResult(tag)
    mode = va.mode_action
    for u, v in pairs:
        top = va.top_nonneg(v, u)
        terms = [(i, -Fraction((-1) ** (i + 1), factorial(i)), mode(v, i - 1, u)) for i in range(1, top + 2)]
        res.record({"u": u, "v": v}, mode(u, -1, v), mode(v, -1, u) + _d_series(va, terms))
    return res


def check_eq18(va, pairs, tag="eq18") -> SuiteResult:
    """``u_0 D(v) = D(u_0 v)`` and ``u_{-1} D(v) = D(u_{-1} v) - u_{-2} v``."""
    res = SuiteResult(tag)
    mode, D = va.mode_action, va.d_operator
    for u, v in pairs:
        dv = D(v)
        res.record({"u": u, "v": v, "n": 0}, mode(u, 0, dv), D(mode(u, 0, v)))
        res.record({"u": u, "v": v, "n": -1}, mode(u, -1, dv), D(mode(u, -1, v)) - mode(u, -2, v))
    return res


# ------------------------------------------------------------------- grids


def fock_states(H: Heisenberg, max_weight: int) -> List[FockElement]:
    return [FockElement.monomial(m) for m in H.basis_upto(max_weight)]


def fock_pairs(H: Heisenberg, max_weight: int):
    states = fock_states(H, max_weight)
    return list(itertools.product(states, states))


def fock_triples(H: Heisenberg, total_weight: int):
    states = fock_states(H, total_weight)
    return [(u, v, w) for u, v, w in itertools.product(states, repeat=3)
            if u.max_weight() + v.max_weight() + w.max_weight() <= total_weight]


# ------------------------------------------------------------- M(1) only


def check_u0u_in_image_of_d(H: Heisenberg, states, tag="eq16-DV") -> SuiteResult:
    """Solve ``D(w) = u_0 u`` exactly at the right weight."""
    res = SuiteResult(tag)
    for u in states:
        target = H.mode_action(u, 0, u)
        if not target:
            res.record({"u": u}, True, True)
            continue
        wt = target.max_weight() - 1
        cols = [H.d_operator(FockElement.monomial(m)).terms for m in H.basis(wt)]
        x = linalg.solve(cols, target.terms)
        res.record({"u": u, "u_0u": target}, x is not None, True)
    return res


def check_dual_engine(H: Heisenberg, max_weight: int, modes=MODES, tag="dual") -> SuiteResult:
    res = SuiteResult(tag)
    for um in H.basis_upto(max_weight):
        for vm in H.basis_upto(max_weight):
            v = FockElement.monomial(vm)
            for n in modes:
                res.record({"u": um, "n": n, "v": vm},
                           H.mode_action(FockElement.monomial(um), n, v), H.normal_order_oracle(um, n, v))
    return res


def check_grading(H: Heisenberg, max_weight: int, modes=MODES, tag="grading") -> SuiteResult:
    """``wt(u_m v) = wt u + wt v - m - 1``."""
    res = SuiteResult(tag)
    for u, v in fock_pairs(H, max_weight):
        for m in modes:
            out = H.mode_action(u, m, v)
            if out:
                res.record({"u": u, "v": v, "m": m}, out.weights(), [u.max_weight() + v.max_weight() - m - 1])
    return res


def check_virasoro(H: Heisenberg, max_weight: int, modes=VIRASORO_MODES, tag="virasoro") -> SuiteResult:
    """Virasoro relations with ``c = d``, ``L(0) = wt`` and ``L(-1) = D``."""
    res = SuiteResult(tag)
    L = H.virasoro_mode
    c = H.central_charge
    for w in fock_states(H, max_weight):
        res.record({"w": w, "op": "L(0)"}, L(0, w), w.max_weight() * w)
        res.record({"w": w, "op": "L(-1)=D"}, L(-1, w), H.d_operator(w))
        for m in modes:
            for n in modes:
                lhs = L(m, L(n, w)) - L(n, L(m, w))
                rhs = (m - n) * L(m + n, w)
                if m + n == 0:
                    rhs = rhs + Fraction(m ** 3 - m, 12) * c * w
                res.record({"w": w, "m": m, "n": n}, lhs, rhs)
    return res


# ------------------------------------------------------------- C_2 suites


def check_remark_dv(H: Heisenberg, max_weight: int, tag="remark-dv") -> SuiteResult:
    """``D(V)``, ``u_{-n} v`` (n >= 2) and ``a_0 w``, ``a_{-1} w`` (w in C_2) lie in C_2."""
    res = SuiteResult(tag)
    span = cn_spanning_set(H, 2, max_weight)
    states = fock_states(H, max_weight)
    for v in states:
        dv = H.d_operator(v)
        if dv.max_weight() <= max_weight:
            res.record({"v": v, "part": "D(V)"}, dv in span, True)
    for u, v in itertools.product(states, repeat=2):
        for n in range(2, max_weight + 1):
            if u.max_weight() + v.max_weight() + n - 1 <= max_weight:
                res.record({"u": u, "v": v, "n": -n, "part": "u_-n v"}, H.mode_action(u, -n, v) in span, True)
    for a in states:
        for w in span.basis:
            for s in (0, -1):
                if a.max_weight() + w.max_weight() - s - 1 <= max_weight:
                    res.record({"a": a, "w": w, "s": s, "part": "closure"}, H.mode_action(a, s, w) in span, True)
    return res


def check_c2v(H: Heisenberg, total_weight: int, tag="c2v") -> SuiteResult:
    """The Poisson identities on ``V/C_2``, plus commutativity of the product."""
    res = SuiteResult(tag)
    mode = H.mode_action
    red = lambda x: c2_reduce(H, x)
    for a, b, v in fock_triples(H, total_weight):
        ins = {"a": a, "b": b, "v": v}
        res.record(dict(ins, part="derivation"), mode(mode(a, 0, b), 0, v),
                   mode(a, 0, mode(b, 0, v)) - mode(b, 0, mode(a, 0, v)))
        res.record(dict(ins, part="antisymmetry"), red(mode(a, 0, b)), red(-mode(b, 0, a)))
        res.record(dict(ins, part="commutativity"), red(mode(a, -1, b)), red(mode(b, -1, a)))
        res.record(dict(ins, part="associativity"), red(mode(mode(a, -1, b), -1, v)), red(mode(a, -1, mode(b, -1, v))))
        res.record(dict(ins, part="leibniz"), red(mode(mode(a, -1, b), 0, v)),
                   red(mode(a, -1, mode(b, 0, v)) + mode(b, -1, mode(a, 0, v))))
        res.record(dict(ins, part="bracket-zero"), red(mode(a, 0, b)), red(H.zero()))
    return res


def string_apply(H: Heisenberg, a: FockElement, string: Sequence[int]) -> FockElement:
    out = a
    for n in reversed(string):
        out = H.mode_action(a, n, out)
    return out


def check_cor_a01a(H: Heisenberg, elements, max_length: int = 4, tag="cor-a01a") -> SuiteResult:
    """``a_0...a_0 a`` lies in C_2 (single ``a_0 a`` even in ``D(V)``); mixed
    strings reduce like the sorted string, i.e. to zero mod C_2."""
    res = SuiteResult(tag)
    for a in elements:
        if not a:
            continue
        for t in range(1, max_length + 1):
            for string in itertools.product((0, -1), repeat=t):
                k = string.count(-1)
                if k == t:
                    continue
                lhs = c2_reduce(H, string_apply(H, a, string))
                sorted_string = (-1,) * k + (0,) * (t - k)
                rhs = c2_reduce(H, string_apply(H, a, sorted_string))
                res.record({"a": a, "string": string}, lhs, rhs)
                res.record({"a": a, "string": string, "part": "zero"}, lhs, c2_reduce(H, H.zero()))
        aa = H.mode_action(a, 0, a)
        if aa:
            wt = aa.max_weight() - 1
            x = None
            if all(monomial_weight(m) == wt + 1 for m in aa.terms):
                cols = [H.d_operator(FockElement.monomial(m)).terms for m in H.basis(wt)]
                x = linalg.solve(cols, aa.terms)
            else:
                # inhomogeneous a: solve componentwise over all weights
                cols = [H.d_operator(FockElement.monomial(m)).terms for m in H.basis_upto(wt)]
                x = linalg.solve(cols, aa.terms)
            res.record({"a": a, "part": "a_0 a in D(V)"}, x is not None, True)
    return res


def check_thm_rel_congruence(H: Heisenberg, elements, bs, max_t: int = 3, tag="thm-rel") -> SuiteResult:
    """``b_0(v_{-1}^t v) == (t+1) (v_{-1}^{t-1} v)_{-1}(b_0 v)`` mod C_2, with the
    exact commutator step ``b_0(v_{-1} X) = v_{-1} b_0 X + (b_0 v)_{-1} X``."""
    res = SuiteResult(tag)
    mode = H.mode_action
    for v in elements:
        powers = [v]
        for _ in range(max_t):
            powers.append(mode(v, -1, powers[-1]))
        for b in bs:
            b0v = mode(b, 0, v)
            for t in range(1, max_t + 1):
                x_prev = powers[t - 1]
                lhs = mode(b, 0, powers[t])
                step = mode(v, -1, mode(b, 0, x_prev)) + mode(b0v, -1, x_prev)
                res.record({"b": b, "v": v, "t": t, "part": "exact step"}, lhs, step)
                rhs = (t + 1) * mode(x_prev, -1, b0v)
                res.record({"b": b, "v": v, "t": t, "part": "congruence"}, c2_reduce(H, lhs), c2_reduce(H, rhs))
    return res


# ----------------------------------------------------------------- registry


def _fock_sample_elements(H: Heisenberg, max_weight: int) -> List[FockElement]:
    states = fock_states(H, max_weight)
    vac = FockElement.vacuum()
    g = H.generator(1)
    extra = [vac + g, g - 2 * vac, g + H.mode_action(g, -1, g), H.generator(1, 2) + g]
    if H.d > 1:
        extra.append(g + H.generator(2))
    return states + [e for e in extra if e.max_weight() <= max_weight]


def suite_registry(H: Heisenberg, weight: int) -> Dict[str, Callable[[], SuiteResult]]:
    """Suite tag -> zero-argument runner for the M(1) grid of the given weight."""
    pairs = lambda: fock_pairs(H, weight)
    triples = lambda: fock_triples(H, weight)
    return {
        "eq7": lambda: check_commutator(H, triples()),
        "eq8": lambda: check_iterate(H, triples(), outer=H.normal_order_oracle),
        "eq9-12": lambda: check_special_cases(H, triples()),
        "eq13": lambda: check_d_relation(H, pairs()),
        "skew": lambda: check_skew(H, pairs()),
        "eq15": lambda: check_u0v(H, pairs()),
        "eq16": lambda: _merge(check_u0u(H, fock_states(H, weight)),
                               check_u0u_in_image_of_d(H, fock_states(H, weight))),
        "eq17": lambda: check_u_1v(H, pairs()),
        "eq18": lambda: check_eq18(H, pairs()),
        "grading": lambda: check_grading(H, weight),
        "dual": lambda: check_dual_engine(H, weight),
        "virasoro": lambda: check_virasoro(H, weight),
        "remark-dv": lambda: check_remark_dv(H, weight + 1),
        "c2v": lambda: check_c2v(H, weight),
        "cor-a01a": lambda: check_cor_a01a(H, _fock_sample_elements(H, min(weight, 2))),
        "thm-rel": lambda: check_thm_rel_congruence(
            H, _fock_sample_elements(H, min(weight, 2)), fock_states(H, min(weight, 2))),
    }


def _merge(a: SuiteResult, b: SuiteResult) -> SuiteResult:
    out = SuiteResult(a.tag, a.checks + b.checks, a.failures + b.failures)
    for f in b.failures:
        f.tag = a.tag
    return out


def run_suites(H: Heisenberg, weight: int, tags: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    reg = suite_registry(H, weight)
    if tags is None:
        tags = list(reg)
    unknown = [t for t in tags if t not in reg]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(reg)}")
    return [reg[t]() for t in tags]
