"""Command-line front end: ``ternalg verify | construct | derive | search-rb``.

Exit codes: 0 pass, 1 mathematical failure, 2 parse or shape error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import io
from .derivations import Role, SOLVERS, closure_report
from .linalg import Matrix
from .operators import (
    BudgetExceeded,
    find_symplectic,
    ldend_from_O,
    ldend_from_rb,
    ldend_from_rb_pair,
    ldend_from_symplectic,
    prelie_from_O,
    search_rb,
    trace_induced_3lie,
)
from .representations import adjoint_3lie, adjoint_prelie, dual_rep, semidirect_3lie, semidirect_3prelie
from .structures import AlgebraError, Kind, TernaryAlgebra, VerificationReport, horizontal_tensor, verify, vertical_tensor

EXIT_OK, EXIT_MATH, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
SPACE_NAMES = {"der": Role.DER, "qder": Role.QDER_PAIR, "gder": Role.GDER_QUAD, "c": Role.CENTROID, "qc": Role.QCENTROID}


class Report:
    """Ordered report sections rendered as text or JSON with stable ordering."""

    def __init__(self, command: str, args: Sequence[str]):
        self.data: dict = {"command": " ".join([command, *args])}
        self.emit_payload: str | None = None

    def add(self, key: str, value) -> None:
        self.data[key] = value

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        lines = []
        for key, value in self.data.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {item}" for item in value)
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                for k, v in value.items():
                    if isinstance(v, list):
                        lines.append(f"  {k}:")
                        lines.extend(f"    {item}" for item in v)
                    else:
                        lines.append(f"  {k}: {v}")
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _verdicts(report: VerificationReport) -> list[str]:
    out = []
    witnesses = {v.identity: v for v in report.violations}
    for name, ok in report.verdicts():
        if ok:
            out.append(f"{name}: pass")
        else:
            out.append(f"{name}: FAIL {witnesses[name].describe()}")
    if report.reason:
        out.append(f"reason: {report.reason}")
    return out


def _fmt_vector(v) -> str:
    return " ".join(str(x) for x in v)


def _fmt_matrix(m: Matrix) -> str:
    return "[" + "; ".join(_fmt_vector(r) for r in m.tolist()) + "]"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(ns: argparse.Namespace, rep: Report) -> int:
    f = io.load(ns.path)
    rep.add("input", _digest(ns.path))
    if ns.kind and ns.kind != f.kind:
        raise io.ParseError(f"file kind {f.kind} does not match --kind {ns.kind}")
    rep.add("kind", f.kind)
    if f.kind == io.LIE_KIND:
        # binary Lie algebras are checked while parsing
        rep.add("verdicts", ["skew: pass", "jacobi: pass"])
        rep.add("result", "pass")
        return EXIT_OK
    report = verify(f.ternary)
    rep.add("verdicts", _verdicts(report))
    rep.add("result", "pass" if report.passed else "fail")
    return EXIT_OK if report.passed else EXIT_MATH


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _operator(f: io.AlgebraFile, names: list[str], index: int) -> Matrix:
    if len(names) <= index:
        raise AlgebraError(f"construction needs operator #{index + 1} (use --operator NAME)")
    name = names[index]
    if name not in f.operators:
        raise AlgebraError(f"operator {name!r} not found in file")
    return f.operators[name]


def _prelie_rep(a: TernaryAlgebra, which: str):
    base = adjoint_prelie(a)
    return dual_rep(base) if which == "dual" else base


def _construct(f: io.AlgebraFile, via: str, names: list[str], which_rep: str) -> TernaryAlgebra:
    if via == "trace":
        if f.kind != io.LIE_KIND:
            raise AlgebraError("--via trace needs a binary Lie algebra file")
        cov = names[0] if names else (sorted(f.covectors)[0] if len(f.covectors) == 1 else None)
        if cov is None or cov not in f.covectors:
            raise AlgebraError("--via trace needs a covector (use --operator NAME)")
        return trace_induced_3lie(f.algebra, f.covectors[cov])
    a = f.ternary
    if via == "rb":
        return ldend_from_rb(a, _operator(f, names, 0))
    if via == "o-op":
        T = _operator(f, names, 0)
        if a.kind is Kind.THREE_LIE:
            return prelie_from_O(a, adjoint_3lie(a), T)
        a._expect(Kind.THREE_PRE_LIE)
        return ldend_from_O(a, _prelie_rep(a, which_rep), T)
    if via == "rb-pair":
        return ldend_from_rb_pair(a, _operator(f, names, 0), _operator(f, names, 1))
    if via == "symplectic":
        if names:
            if names[0] not in f.forms:
                raise AlgebraError(f"form {names[0]!r} not found in file")
            form = f.forms[names[0]]
        else:
            form = find_symplectic(a)
            if form is None:
                raise AlgebraError("symplectic check failed: no nondegenerate closed form found")
        return ldend_from_symplectic(a, form)
    if via in ("horizontal", "vertical"):
        a._expect(Kind.THREE_L_DENDRIFORM)
        build = horizontal_tensor if via == "horizontal" else vertical_tensor
        return TernaryAlgebra.three_prelie(build(a.t1, a.t2))
    if via == "sub-adjacent":
        if a.kind is Kind.THREE_L_DENDRIFORM:
            return TernaryAlgebra.three_lie(horizontal_tensor(a.t1, a.t2).cyclic_sum())
        a._expect(Kind.THREE_PRE_LIE)
        return TernaryAlgebra.three_lie(a.t1.cyclic_sum())
    if via == "semidirect":
        if a.kind is Kind.THREE_LIE:
            return semidirect_3lie(a, adjoint_3lie(a))
        return semidirect_3prelie(a, _prelie_rep(a, which_rep))
    if via == "dual-rep":
        a._expect(Kind.THREE_PRE_LIE)
        return semidirect_3prelie(a, dual_rep(adjoint_prelie(a)))
    raise AlgebraError(f"unknown construction {via!r}")


def cmd_construct(ns: argparse.Namespace, rep: Report) -> int:
    f = io.load(ns.path)
    names = ns.operator or []
    rep.add("input", _digest(ns.path))
    provenance = {"via": ns.via, "operators": ", ".join(names) or "-"}
    if ns.via in ("o-op", "semidirect"):
        provenance["rep"] = ns.rep
    rep.add("provenance", provenance)
    out = _construct(f, ns.via, names, ns.rep)
    report = verify(out)
    rep.add("output-kind", out.kind.value)
    rep.add("verdicts", _verdicts(report))
    if not report.passed:
        rep.add("result", "fail (output not written)")
        return EXIT_MATH
    text = io.to_text(io.algebra_file(out))
    rep.add("output", "sha256:" + hashlib.sha256(text.encode()).hexdigest())
    rep.add("result", "pass")
    if ns.out:
        Path(ns.out).write_text(text, encoding="utf-8")
    else:
        rep.emit_payload = text
    return EXIT_OK


# ---------------------------------------------------------------------------
# derive
# ---------------------------------------------------------------------------

def cmd_derive(ns: argparse.Namespace, rep: Report) -> int:
    f = io.load(ns.path)
    a = f.ternary
    rep.add("input", _digest(ns.path))
    report = verify(a)
    rep.add("verification", "pass" if report.passed else "fail")
    if not report.passed and not ns.allow_unverified:
        rep.add("verdicts", _verdicts(report))
        rep.add("result", "fail (input does not verify; pass --allow-unverified to proceed)")
        return EXIT_MATH
    spaces = [s.strip() for s in ns.spaces.split(",") if s.strip()] if ns.spaces else []
    for s in spaces:
        if s not in SPACE_NAMES:
            raise io.ParseError(f"unknown space {s!r}; choose from {sorted(SPACE_NAMES)}")
    for s in spaces:
        sub = SOLVERS[SPACE_NAMES[s]](a, require_verified=False)
        basis = [" | ".join(_fmt_matrix(m) for m in t) for t in sub.tuples()]
        rep.add(s, {"dim": sub.dim, "basis": basis})
    status = EXIT_OK
    if ns.closure:
        cr = closure_report(a, require_verified=False)
        rep.add("closure", {name: "pass" if ok else "FAIL" for name, ok in cr.checks})
        rep.add("closure-dims", {name: d for name, d in cr.dims})
        if not cr.passed:
            status = EXIT_MATH
    rep.add("result", "pass" if status == EXIT_OK else "fail")
    return status


# ---------------------------------------------------------------------------
# search-rb
# ---------------------------------------------------------------------------

def _parse_support(f: io.AlgebraFile, raw: str | None):
    if raw is None:
        return None
    raw = raw.strip()
    if raw.startswith("@"):
        name = raw[1:]
        if name not in f.operators:
            raise io.ParseError(f"operator {name!r} not found in file")
        m = f.operators[name]
        return [(r, c) for r in range(m.rows) for c in range(m.cols) if m[r, c]]
    out = []
    for item in raw.split(","):
        try:
            r, c = item.split(":")
            out.append((int(r), int(c)))
        except ValueError:
            raise io.ParseError(f"support entries look like ROW:COL, got {item!r}") from None
    return out


def cmd_search_rb(ns: argparse.Namespace, rep: Report) -> int:
    f = io.load(ns.path)
    a = f.ternary
    coeffs = [io.parse_scalar(c.strip()) for c in ns.coeffs.split(",") if c.strip()]
    if not coeffs:
        raise io.ParseError("--coeffs needs at least one value")
    support = _parse_support(f, ns.support)
    rep.add("input", _digest(ns.path))
    rep.add("grid", {"coeffs": " ".join(str(c) for c in coeffs),
                     "support": "all" if support is None else " ".join(f"{r}:{c}" for r, c in sorted(set(support)))})
    found = search_rb(a, coeffs, support, budget=ns.budget)
    rep.add("found", len(found))
    rep.add("operators", [_fmt_matrix(m) for m in found])
    if ns.out:
        width = len(str(len(found)))
        ops = {f"RB{str(i + 1).zfill(width)}": m for i, m in enumerate(found)}
        io.dump(io.algebra_file(a, operators=ops), ns.out)
    rep.add("result", "pass")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ternalg", description="Exact workbench for ternary algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("path", help="algebra file (JSON)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="check the axioms of the file's kind")
    common(p)
    p.add_argument("--kind", choices=[k.value for k in Kind] + [io.LIE_KIND])
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("construct", help="build a new algebra and re-verify it")
    common(p)
    p.add_argument("--via", required=True, choices=("rb", "o-op", "rb-pair", "symplectic", "trace", "horizontal",
                                                     "vertical", "sub-adjacent", "semidirect", "dual-rep"))
    p.add_argument("--operator", action="append", help="operator, form or covector name (repeatable)")
    p.add_argument("--rep", choices=("adjoint", "dual"), default="adjoint",
                   help="representation used by o-op and semidirect on 3-pre-Lie input")
    p.add_argument("--out", help="output file (default: standard output)")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("derive", help="derivation-type spaces and closure checks")
    common(p)
    p.add_argument("--spaces", default="der", help="comma list from der,qder,gder,c,qc")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--allow-unverified", action="store_true", help="solve even if the input fails its axioms")
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("search-rb", help="exhaustive Rota-Baxter search over a finite grid")
    common(p)
    p.add_argument("--coeffs", required=True, help="comma list of rationals, e.g. -1,0,1")
    p.add_argument("--support", help="ROW:COL,... positions or @NAME for an operator's nonzero pattern")
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--out", help="write the algebra with the found operators to this file")
    p.set_defaults(handler=cmd_search_rb)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = build_parser().parse_args(argv)
    rep = Report(ns.command, argv[1:])
    handler: Callable[[argparse.Namespace, Report], int] = ns.handler
    try:
        code = handler(ns, rep)
    except io.ParseError as exc:
        rep.add("error", f"parse: {exc}")
        code = EXIT_PARSE
    except BudgetExceeded as exc:
        rep.add("error", f"budget: {exc}")
        code = EXIT_BUDGET
    except AlgebraError as exc:
        rep.add("error", str(exc))
        code = EXIT_MATH
    text = rep.render(ns.format)
    if rep.emit_payload is not None:
        stderr.write(text)
        stdout.write(rep.emit_payload)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
