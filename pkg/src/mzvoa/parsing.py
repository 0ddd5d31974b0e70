"""Element grammar, canonical printers and the spec/algebra file readers.

Grammar (whitespace-insensitive)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational ['*' factors] | rational? factors
    factors  := factor (['*'] factor)*
    factor   := gen '(' '-' int ')' | 'vac' | var ['^' ['-'] int]
    gen      := ('a'|'b') index
    rational := int ['/' posint]

State literals only carry creation modes; ``a1(0) vac`` is rejected.
``b<i>`` names the second flavor block of the image configuration.
Polynomial variables are ``x<i>`` and ``z<i>`` (``ζ<i>`` is accepted);
Laurent elements use ``t`` with possibly negative exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .commva import LaurentElement
from .fock import FockElement, Heisenberg, make_monomial, monomial_weight
from .poly import PolyElement, x_variables


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: Optional[int] = None, hint: str = ""):
        self.message, self.text, self.pos, self.hint = message, text, pos, hint
        lines = [message if pos is None else f"col {pos + 1}: {message}"]
        if pos is not None and text:
            lines += ["  " + text, "  " + " " * pos + "^"]
        if hint:
            lines.append(f"hint: {hint}")
        super().__init__("\n".join(lines))


# ------------------------------------------------------------------ contexts


@dataclass(frozen=True)
class FockContext:
    H: Heisenberg


@dataclass(frozen=True)
class PolyContext:
    variables: Tuple[str, ...]


@dataclass(frozen=True)
class LaurentContext:
    pass


Context = Union[FockContext, PolyContext, LaurentContext]
Element = Union[FockElement, PolyElement, LaurentElement]


# ----------------------------------------------------------------- tokenizer

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-zζ]+)(?P<idx>\d*)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # num, id, op, end
    value: object
    pos: int
    index: Optional[int] = None


def _tokenize(text: str) -> List[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "id")
        if m.group("num"):
            out.append(_Tok("num", int(m.group("num")), start))
        elif m.group("id"):
            idx = m.group("idx")
            out.append(_Tok("id", m.group("id"), start, int(idx) if idx else None))
        else:
            out.append(_Tok("op", m.group("op"), start))
        pos = m.end()
    out.append(_Tok("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text, self.ctx = text, ctx
        self.toks = _tokenize(text)
        self.i = 0

    # helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None, hint=""):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos, hint)

    def accept(self, op) -> bool:
        if self.tok.kind == "op" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def expect(self, op):
        if not self.accept(op):
            self.error(f"expected {op!r}")

    def integer(self) -> int:
        if self.tok.kind != "num":
            self.error("expected an integer")
        v = self.tok.value
        self.i += 1
        return v

    # grammar
    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression")
        terms = []
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        terms.append((sign, self.term()))
        while self.tok.kind != "end":
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                self.error("expected '+' or '-' between terms")
            terms.append((sign, self.term()))
        return terms

    def term(self):
        coeff = Fraction(1)
        explicit = False
        if self.tok.kind == "num":
            num = self.integer()
            den = 1
            if self.accept("/"):
                t = self.tok
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", t)
            coeff = Fraction(num, den)
            explicit = True
            if self.accept("*"):
                if not self._factor_start():
                    self.error("expected a factor after '*'")
        factors = []
        while self._factor_start():
            factors.append(self.factor())
            if factors and self.accept("*") and not self._factor_start():
                self.error("expected a factor after '*'")
        if not factors and not explicit:
            self.error("expected a term")
        return coeff, factors

    def _factor_start(self) -> bool:
        return self.tok.kind == "id"

    def factor(self):
        tok = self.tok
        name, idx = tok.value, tok.index
        self.i += 1
        ctx = self.ctx
        if isinstance(ctx, FockContext):
            if name == "vac" and idx is None:
                return ("vac", tok)
            if name in ("a", "b") and idx is not None:
                self.expect("(")
                neg = self.accept("-")
                mtok = self.tok
                mode = self.integer()
                self.expect(")")
                if not neg or mode == 0:
                    self.error("state literals only take creation modes (<= -1)", mtok,
                               hint="use the `apply` (alias `product`) command to act with modes >= 0")
                return ("gen", tok, name, idx, mode)
            self.error(f"unknown factor {name}{idx if idx is not None else ''!s}", tok)
        if isinstance(ctx, PolyContext):
            vname = ("z" if name == "ζ" else name) + (str(idx) if idx is not None else "")
            if vname not in ctx.variables:
                self.error(f"unknown variable {vname!r}; expected one of {', '.join(ctx.variables)}", tok)
            return ("var", tok, ctx.variables.index(vname), self._exponent(allow_negative=False))
        if name != "t" or idx is not None:
            self.error("Laurent elements use the single variable 't'", tok)
        return ("t", tok, self._exponent(allow_negative=True))

    def _exponent(self, allow_negative: bool) -> int:
        if not self.accept("^"):
            return 1
        neg = self.accept("-")
        tok = self.tok
        e = self.integer()
        if neg and not allow_negative:
            self.error("negative exponents are only allowed for Laurent elements", tok)
        return -e if neg else e


def _build_fock(terms, parser: _Parser) -> FockElement:
    H = parser.ctx.H
    out: Dict = {}
    for sign, (coeff, factors) in terms:
        pairs = []
        seen_vac = False
        for f in factors:
            if seen_vac:
                parser.error("'vac' must be the last factor of a state", f[1])
            if f[0] == "vac":
                seen_vac = True
                continue
            _, tok, gen, idx, mode = f
            if gen == "b":
                if H.image_n is None:
                    parser.error("'b' generators need the image configuration", tok)
                if not 1 <= idx <= H.image_n:
                    parser.error(f"flavor index out of range 1..{H.image_n}", tok)
                flavor = H.beta(idx)
            else:
                top = H.image_n if H.image_n is not None else H.d
                if not 1 <= idx <= top:
                    parser.error(f"flavor index out of range 1..{top}", tok)
                flavor = idx
            pairs.append((flavor, mode))
        mon = make_monomial(pairs, H.d)
        out[mon] = out.get(mon, 0) + sign * coeff
    return FockElement(out)


def _build_poly(terms, ctx: PolyContext) -> PolyElement:
    out: Dict = {}
    n = len(ctx.variables)
    for sign, (coeff, factors) in terms:
        e = [0] * n
        for _, _, i, k in factors:
            e[i] += k
        e = tuple(e)
        out[e] = out.get(e, 0) + sign * coeff
    return PolyElement(ctx.variables, out)


def _build_laurent(terms) -> LaurentElement:
    out: Dict = {}
    for sign, (coeff, factors) in terms:
        e = sum(f[2] for f in factors)
        out[e] = out.get(e, 0) + sign * coeff
    return LaurentElement(out)


def parse_element(text: str, ctx: Context) -> Element:
    p = _Parser(text, ctx)
    terms = p.parse()
    if isinstance(ctx, FockContext):
        return _build_fock(terms, p)
    if isinstance(ctx, PolyContext):
        return _build_poly(terms, ctx)
    return _build_laurent(terms)


def parse_fock(text: str, H: Heisenberg) -> FockElement:
    return parse_element(text, FockContext(H))


def parse_poly(text: str, variables: Sequence[str]) -> PolyElement:
    return parse_element(text, PolyContext(tuple(variables)))


def parse_laurent(text: str) -> LaurentElement:
    return parse_element(text, LaurentContext())


# ------------------------------------------------------------------ printers


def _join(terms: List[Tuple[Fraction, str]]) -> str:
    """Join ``(coeff, body)`` pairs; empty body means a bare constant."""
    if not terms:
        return "0"
    parts = []
    for k, (c, body) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a} * {body}"
        if k == 0:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)


def _gen_name(H: Optional[Heisenberg], flavor: int) -> str:
    if H is not None and H.image_n is not None and flavor > H.image_n:
        return f"b{flavor - H.image_n}"
    return f"a{flavor}"


def format_fock(v: FockElement, H: Optional[Heisenberg] = None) -> str:
    items = sorted(v.terms.items(), key=lambda kv: (monomial_weight(kv[0]), kv[0]))
    terms = []
    for mon, c in items:
        body = " ".join(f"{_gen_name(H, f)}({-m})" for f, m in mon)
        terms.append((c, (body + " vac") if body else "vac"))
    return _join(terms)


def format_poly(p: PolyElement) -> str:
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))
    terms = []
    for e, c in items:
        body = " ".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.variables, e) if k)
        terms.append((c, body))
    return _join(terms)


def format_laurent(v: LaurentElement) -> str:
    terms = []
    for e, c in sorted(v.terms.items()):
        terms.append((c, "" if e == 0 else ("t" if e == 1 else f"t^{e}")))
    return _join(terms)


def format_element(x, H: Optional[Heisenberg] = None) -> str:
    if isinstance(x, FockElement):
        return format_fock(x, H)
    if isinstance(x, PolyElement):
        return format_poly(x)
    if isinstance(x, LaurentElement):
        return format_laurent(x)
    raise TypeError(f"cannot format {type(x).__name__}")


# --------------------------------------------------------------------- files


class FileFormatError(ValueError):
    def __init__(self, path: str, line: Optional[int], message: str):
        self.path, self.line = path, line
        super().__init__(f"{path}:{line}: {message}" if line else f"{path}: {message}")


def _logical_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_spec_text(text: str, path: str = "<spec>"):
    """Read a SubspaceSpec file: ``key = value`` lines, ``generator`` repeatable."""
    from .mzvertex import KINDS, SubspaceSpec

    fields: Dict[str, Tuple[int, str]] = {}
    gens: List[Tuple[int, str]] = []
    for no, line in _logical_lines(text):
        if "=" not in line:
            raise FileFormatError(path, no, "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "generator":
            gens.append((no, value))
        elif key in ("kind", "variables", "degree_bound", "power_window"):
            if key in fields:
                raise FileFormatError(path, no, f"duplicate key {key!r}")
            fields[key] = (no, value)
        else:
            raise FileFormatError(path, no, f"unknown key {key!r}")
    for key in ("kind", "variables"):
        if key not in fields:
            raise FileFormatError(path, None, f"missing key {key!r}")
    kno, kind = fields["kind"]
    if kind not in KINDS:
        raise FileFormatError(path, kno, f"kind must be one of {', '.join(KINDS)}")

    def integer(key, default):
        if key not in fields:
            return default
        no, value = fields[key]
        try:
            return int(value)
        except ValueError:
            raise FileFormatError(path, no, f"{key} must be an integer") from None

    nvars = integer("variables", 1)
    if nvars < 1:
        raise FileFormatError(path, fields["variables"][0], "variables must be >= 1")
    variables = x_variables(nvars)
    polys = []
    for no, g in gens:
        try:
            p = parse_poly(g, variables)
        except ParseError as e:
            raise FileFormatError(path, no, str(e)) from None
        if not p:
            raise FileFormatError(path, no, "generators must be nonzero")
        polys.append(p)
    try:
        return SubspaceSpec(kind, nvars, polys, integer("degree_bound", 4), integer("power_window", 6))
    except ValueError as e:
        raise FileFormatError(path, None, str(e)) from None


def parse_algebra_text(text: str, path: str = "<algebra>"):
    """Read an algebra file.

    ``dim = n``, ``labels = l1 ... ln``, ``unit = c1 ... cn`` and one
    structure constant ``i j k c`` per line (1-based: ``e_i e_j += c e_k``).
    """
    from .findim import AlgebraError, FinDimAlgebra

    dim = labels = unit = None
    lines: Dict[str, int] = {}
    triples, where = [], {}
    for no, line in _logical_lines(text):
        if "=" in line:
            key, value = (s.strip() for s in line.split("=", 1))
            lines[key] = no
            if key == "dim":
                try:
                    dim = int(value)
                except ValueError:
                    raise FileFormatError(path, no, "dim must be an integer") from None
                if dim < 1:
                    raise FileFormatError(path, no, "dim must be >= 1")
            elif key == "labels":
                labels = value.split()
            elif key == "unit":
                unit = _rationals(value.split(), path, no)
            else:
                raise FileFormatError(path, no, f"unknown key {key!r}")
            continue
        if dim is None:
            raise FileFormatError(path, no, "structure constants must follow 'dim = n'")
        parts = line.split()
        if len(parts) != 4:
            raise FileFormatError(path, no, "expected 'i j k c'")
        try:
            i, j, k = (int(x) for x in parts[:3])
        except ValueError:
            raise FileFormatError(path, no, "indices must be integers") from None
        if not all(1 <= x <= dim for x in (i, j, k)):
            raise FileFormatError(path, no, f"index out of range 1..{dim}")
        c = _rationals(parts[3:], path, no)[0]
        triples.append((i - 1, j - 1, k - 1, c))
        where.setdefault((i - 1, j - 1), no)
    if dim is None:
        raise FileFormatError(path, None, "missing 'dim = n'")
    if unit is None:
        raise FileFormatError(path, None, "missing 'unit = ...'")
    if len(unit) != dim:
        raise FileFormatError(path, lines["unit"], f"unit needs {dim} coordinates")
    if labels is not None and len(labels) != dim:
        raise FileFormatError(path, lines["labels"], f"labels needs {dim} entries")
    try:
        return FinDimAlgebra.from_triples(dim, triples, unit, labels)
    except AlgebraError as e:
        no = None
        if e.pair is not None:
            i, j = e.pair
            no = where.get((i, j)) or where.get((j, i))
        elif e.unit:
            no = lines.get("unit")
        raise FileFormatError(path, no, str(e)) from None


def _rationals(parts, path, no) -> List[Fraction]:
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(path, no, f"bad rational in {' '.join(parts)!r}") from None


def parse_subspace_text(text: str, A, path: str = "<subspace>"):
    """One coordinate vector per line; ``whole`` selects the entire algebra."""
    from .findim import Subspace

    vectors = []
    for no, line in _logical_lines(text):
        if line == "whole":
            vectors.extend(A.basis())
            continue
        v = _rationals(line.split(), path, no)
        if len(v) != A.dim:
            raise FileFormatError(path, no, f"expected {A.dim} coordinates")
        vectors.append(v)
    return Subspace(A, vectors)
