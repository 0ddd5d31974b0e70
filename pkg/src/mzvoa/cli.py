"""Command-line interface (``mzvoa``).

Exit codes: 0 success or Proved, 1 Refuted (or an axiom failure),
2 Inconclusive, 3 usage error, 4 bound overflow.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from . import findim, mzvertex
from .c2 import c2_reduce, poisson_bracket, poisson_product
from .commva import LaurentElement, laurent_radical_member
from .fock import FockElement, Heisenberg, ValidationError, WeightBoundExceeded, weight
from .identities import run_suites
from .parsing import (FileFormatError, ParseError, format_element, parse_algebra_text, parse_fock,
                      parse_laurent, parse_poly, parse_spec_text, parse_subspace_text)
from .poly import PolyElement, image_variables
from .verdict import BoundOverflow, Verdict

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------------- output

_PLAIN = re.compile(r"^[^\s\"\\=]+$")


def quote(value: str) -> str:
    """Record values are bare unless they contain spaces, quotes, '=' or are empty."""
    return value if _PLAIN.match(value) else json.dumps(value, ensure_ascii=False)


def render(value, H: Optional[Heisenberg] = None) -> str:
    if isinstance(value, (FockElement, PolyElement, LaurentElement)):
        return format_element(value, H)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(render(v, H) for v in value) + "]"
    if isinstance(value, findim.Subspace):
        return "span{" + "; ".join(value.ambient.format(b) for b in value.basis()) + "}"
    return str(value)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, fields: List[Tuple[str, object]], text: Optional[str] = None, H=None):
        if self.fmt == "records":
            line = " ".join(f"{k}={quote(render(v, H))}" for k, v in fields)
        else:
            line = text if text is not None else "\n".join(f"{k}: {render(v, H)}" for k, v in fields)
        print(line, file=self.stream)


def verdict_fields(v: Verdict, H=None) -> List[Tuple[str, object]]:
    fields: List[Tuple[str, object]] = [("status", v.status), ("exit", v.exit_code)]
    if v.witness is not None:
        fields.append(("witness", _witness(v.witness)))
    if v.reason:
        fields.append(("reason", v.reason))
    fields += [(f"bound.{k}", val) for k, val in sorted(v.bounds.items())]
    fields += [(f"cert.{k}", val) for k, val in sorted(v.certificate.items())]
    return fields


def _witness(w):
    if isinstance(w, dict):
        return [f"{k}={render(x)}" for k, x in w.items()]
    return w


# ----------------------------------------------------------------- contexts


def _heisenberg(args) -> Heisenberg:
    if args.image is not None:
        if args.image < 1:
            raise UsageError("--image must be >= 1")
        return Heisenberg.image_configuration(args.image)
    if args.flavors < 1:
        raise UsageError("--flavors must be >= 1")
    return Heisenberg.orthonormal(args.flavors)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# ----------------------------------------------------------------- commands


def cmd_product(args, out: Output) -> int:
    H = _heisenberg(args)
    u, v = parse_fock(args.u, H), parse_fock(args.v, H)
    r = H.mode_action(u, args.n, v, max_weight=args.max_weight)
    out.emit([("command", "product"), ("u", u), ("n", args.n), ("v", v), ("result", r)], format_element(r, H), H)
    return EXIT_OK


def cmd_reduce(args, out):
    H = _heisenberg(args)
    v = parse_fock(args.v, H)
    r = c2_reduce(H, v)
    out.emit([("command", "reduce"), ("v", v), ("result", r)], format_element(r), H)
    return EXIT_OK


def _poisson(name, fn):
    def run(args, out):
        H = _heisenberg(args)
        a, b = parse_fock(args.a, H), parse_fock(args.b, H)
        r = fn(H, a, b)
        out.emit([("command", name), ("a", a), ("b", b), ("result", r)], format_element(r), H)
        return EXIT_OK
    return run


def cmd_weight(args, out):
    H = _heisenberg(args)
    v = parse_fock(args.v, H)
    if not v:
        raise UsageError("the zero element has no weight")
    w = weight(v)
    out.emit([("command", "weight"), ("v", v), ("result", w)], str(w), H)
    return EXIT_OK


def cmd_dop(args, out):
    H = _heisenberg(args)
    v = parse_fock(args.v, H)
    r = H.d_operator(v)
    out.emit([("command", "dop"), ("v", v), ("result", r)], format_element(r, H), H)
    return EXIT_OK


def cmd_lmode(args, out):
    H = _heisenberg(args)
    v = parse_fock(args.v, H)
    r = H.virasoro_mode(args.m, v)
    out.emit([("command", "lmode"), ("m", args.m), ("v", v), ("result", r)], format_element(r, H), H)
    return EXIT_OK


def cmd_string(args, out):
    H = _heisenberg(args)
    a = parse_fock(args.a, H)
    string = _int_list(args.modes)
    try:
        r = mzvertex.string_product(H, a, string, max_weight=args.max_weight)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out.emit([("command", "string"), ("a", a), ("string", string), ("result", r)], format_element(r, H), H)
    return EXIT_OK


def _emit_verdict(out, name, subject, v: Verdict, H=None) -> int:
    fields = [("command", name), ("input", subject)] + verdict_fields(v, H)
    text = [f"{v.status}" + (f" ({v.reason})" if v.reason else "")]
    if v.witness is not None:
        text.append(f"witness: {render(_witness(v.witness), H)}")
    for k, val in sorted(v.bounds.items()):
        text.append(f"{k}: {val}")
    for k, val in sorted(v.certificate.items()):
        text.append(f"{k}: {render(val, H)}")
    out.emit(fields, "\n".join(text), H)
    return v.exit_code


def _spec(args):
    try:
        return parse_spec_text(_read(args.spec), args.spec)
    except FileFormatError as e:
        raise UsageError(str(e)) from None


def cmd_radical(args, out):
    spec = _spec(args)
    if spec.kind == mzvertex.IMAGE:
        raise UsageError("radical needs a c2-span or c2-ideal spec")
    H = spec.heisenberg()
    a = parse_fock(args.a, H)
    return _emit_verdict(out, "radical", a, mzvertex.vertex_radical_member(H, a, spec), H)


def cmd_strong_radical(args, out):
    spec = _spec(args)
    if spec.kind == mzvertex.IMAGE:
        raise UsageError("strong-radical needs a c2-span or c2-ideal spec")
    H = spec.heisenberg()
    a = parse_fock(args.a, H)
    v = mzvertex.strong_radical_member(H, a, spec, args.probe_weight)
    return _emit_verdict(out, "strong-radical", a, v, H)


def cmd_image(args, out):
    if args.n < 1 or args.bound < 0:
        raise UsageError("--n must be >= 1 and --bound >= 0")
    p = parse_poly(args.p, image_variables(args.n))
    return _emit_verdict(out, "image", p, mzvertex.image_member(p, args.n, args.bound))


def cmd_findim(args, out):
    try:
        A = parse_algebra_text(_read(args.algebra), args.algebra)
        U = parse_subspace_text(_read(args.subspace), A, args.subspace)
    except FileFormatError as e:
        raise UsageError(str(e)) from None
    v = findim.mz_verdict(U)
    N = findim.nilradical(A)
    out.emit([("command", "findim-mz"), ("dim", A.dim), ("subspace_dim", U.dim),
              ("nilradical", N)], f"algebra dim {A.dim}, subspace dim {U.dim}, nilradical {render(N)}")
    return _emit_verdict(out, "findim-mz", U, v)


def cmd_laurent(args, out):
    if args.window < 0 or args.powers < 1:
        raise UsageError("--window must be >= 0 and --powers >= 1")
    v = parse_laurent(args.v)
    return _emit_verdict(out, "laurent-radical", v, laurent_radical_member(v, args.window, args.powers))


def cmd_axioms(args, out):
    if args.flavors < 1 or args.weight < 0:
        raise UsageError("--flavors must be >= 1 and --weight >= 0")
    H = Heisenberg.orthonormal(args.flavors)
    try:
        results = run_suites(H, args.weight, args.suite)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    failures = 0
    for r in results:
        out.emit([("command", "axioms"), ("suite", r.tag), ("checks", r.checks),
                  ("failures", len(r.failures)), ("status", "ok" if r.ok else "FAIL")],
                 f"{r.tag:10} {r.checks:7d} checks  {'ok' if r.ok else f'{len(r.failures)} FAILED'}", H)
        for f in r.failures:
            failures += 1
            inputs = ", ".join(f"{k}={render(v, H)}" for k, v in f.inputs.items())
            out.emit([("command", "axioms-failure"), ("suite", f.tag), ("inputs", inputs),
                      ("lhs", f.lhs), ("rhs", f.rhs)],
                     f"  FAIL [{f.tag}] {inputs}\n    lhs = {render(f.lhs, H)}\n    rhs = {render(f.rhs, H)}", H)
    out.emit([("command", "axioms-summary"), ("weight", args.weight), ("flavors", args.flavors),
              ("suites", len(results)), ("failures", failures)],
             f"{len(results)} suites, {failures} failures", H)
    return EXIT_OK if failures == 0 else EXIT_REFUTED


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    fock = _Parser(add_help=False)
    fock.add_argument("--flavors", type=int, default=1, help="number of orthonormal flavors d")
    fock.add_argument("--image", type=int, metavar="N", help="use the 2N-flavor image configuration (a1..aN, b1..bN)")
    fock.add_argument("--max-weight", type=int, help="fail if an intermediate weight exceeds this")

    p = _Parser(prog="mzvoa", description="Exact computations in M(1), its C2 quotient and MZ subspaces.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help, parents=(common, fock), aliases=()):
        sp = sub.add_parser(name, help=help, parents=list(parents), aliases=list(aliases))
        sp.set_defaults(run=fn)
        return sp

    sp = add("product", cmd_product, "u_n v", aliases=("apply",))
    sp.add_argument("u")
    sp.add_argument("n", type=int)
    sp.add_argument("v")
    add("reduce", cmd_reduce, "class of v in M(1)/C2").add_argument("v")
    for name, fn, help in (("bracket", poisson_bracket, "Poisson bracket a_0 b mod C2"),
                           ("pprod", poisson_product, "Poisson product a_{-1} b mod C2")):
        sp = add(name, _poisson(name, fn), help)
        sp.add_argument("a")
        sp.add_argument("b")
    add("weight", cmd_weight, "L(0)-weight of v").add_argument("v")
    add("dop", cmd_dop, "D(v) = v_{-2} vac").add_argument("v")
    sp = add("lmode", cmd_lmode, "L(m) v")
    sp.add_argument("m", type=int)
    sp.add_argument("v")
    sp = add("string", cmd_string, "a_{n1}(a_{n2}(... a)) for modes in {0,-1}")
    sp.add_argument("a")
    sp.add_argument("modes", help="comma-separated, e.g. -1,0,-1")
    sp = add("radical", cmd_radical, "radical membership for M = C2 + spec", parents=(common,))
    sp.add_argument("a")
    sp.add_argument("--spec", required=True)
    sp = add("strong-radical", cmd_strong_radical, "strong radical membership", parents=(common,))
    sp.add_argument("a")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--probe-weight", type=int, required=True)
    sp = add("image", cmd_image, "membership in sum_i (d/dx_i - z_i) Q[z, x]", parents=(common,))
    sp.add_argument("p")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp = add("findim-mz", cmd_findim, "MZ verdict in a finite-dimensional algebra", parents=(common,))
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--subspace", required=True)
    sp = add("laurent-radical", cmd_laurent, "radical of the constant-term-zero subspace of Q[t, 1/t]",
             parents=(common,))
    sp.add_argument("v")
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--powers", type=int, required=True)
    sp = add("axioms", cmd_axioms, "run the identity suites", parents=(common,))
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--flavors", type=int, required=True)
    sp.add_argument("--suite", action="append", help="suite tag (repeatable); default: all")
    return p


_NEG_LIST = re.compile(r"^-\d+(,\s*-?\d+)+$")


def _protect_negative_lists(argv: Sequence[str]) -> List[str]:
    # argparse would read "-1,0" as an option; a leading space keeps it positional
    return [" " + a if _NEG_LIST.match(a) else a for a in argv]


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if any(a in ("-h", "--help") for a in argv):
            try:
                parser.parse_args(argv)
            except SystemExit as e:
                return EXIT_OK if not e.code else EXIT_USAGE
        args = parser.parse_args(_protect_negative_lists(argv))
        return args.run(args, Output(args.format, stdout))
    except UsageError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    except (BoundOverflow, WeightBoundExceeded) as e:
        print(f"bound overflow: {e}", file=stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())
