"""JSON algebra files with exact rational coefficients.

Coefficients are written as strings (``"3"``, ``"-1/2"``); indices are 0-based.
Emission is canonical: fixed key order, entries sorted, nonzero entries only,
so equal values always produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .linalg import Matrix, Vector
from .operators import BinaryLieAlgebra, SkewBilinearForm
from .structures import PRODUCT_NAMES, AlgebraError, Kind, StructureTensor, TernaryAlgebra

SCHEMA_VERSION = "1"
LIE_KIND = "Lie"


class ParseError(ValueError):
    """Malformed or inconsistent algebra file."""


def parse_scalar(raw: Any) -> Fraction:
    if isinstance(raw, bool):
        raise ParseError(f"not a rational number: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational number: {raw!r}") from None
    raise ParseError(f"coefficients must be integers or 'p/q' strings, got {raw!r}")


def format_scalar(x: Fraction) -> str:
    return str(x)


def _vector(raw: Any, dim: int, what: str) -> Vector:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ParseError(f"{what}: expected a list of {dim} coefficients")
    return tuple(parse_scalar(x) for x in raw)


def _index(raw: Any, dim: int, what: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int) or not 0 <= raw < dim:
        raise ParseError(f"{what}: index {raw!r} out of range 0..{dim - 1}")
    return raw


def _matrix(raw: Any, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != rows:
        raise ParseError(f"{what}: expected {rows} rows")
    return Matrix([_vector(r, cols, what) for r in raw], cols)


@dataclass
class AlgebraFile:
    dim: int
    kind: str
    algebra: Union[TernaryAlgebra, BinaryLieAlgebra]
    operators: dict[str, Matrix] = field(default_factory=dict)
    forms: dict[str, SkewBilinearForm] = field(default_factory=dict)
    covectors: dict[str, Vector] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    @property
    def ternary(self) -> TernaryAlgebra:
        if not isinstance(self.algebra, TernaryAlgebra):
            raise AlgebraError("file holds a binary Lie algebra, not a ternary one")
        return self.algebra

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        return to_text(self) == to_text(other)


def _parse_products(kind: str, dim: int, raw: Any) -> Union[TernaryAlgebra, BinaryLieAlgebra]:
    if not isinstance(raw, dict):
        raise ParseError("products must be an object")
    arity = 2 if kind == LIE_KIND else 3
    expected = ("lie",) if kind == LIE_KIND else PRODUCT_NAMES[Kind(kind)]
    if sorted(raw) != sorted(expected):
        raise ParseError(f"kind {kind} needs products {list(expected)}, got {sorted(raw)}")
    tables = {}
    for name in expected:
        entries = raw[name]
        if not isinstance(entries, list):
            raise ParseError(f"product {name}: expected a list of entries")
        table = {}
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != arity + 1:
                raise ParseError(f"product {name}: entries are [{', '.join('ijk'[:arity])}, coeffs]")
            key = tuple(_index(x, dim, f"product {name}") for x in entry[:arity])
            if key in table:
                raise ParseError(f"product {name}: duplicate entry {list(key)}")
            table[key] = _vector(entry[arity], dim, f"product {name} at {list(key)}")
        tables[name] = table
    try:
        if kind == LIE_KIND:
            return BinaryLieAlgebra(dim, tables["lie"])
        tensors = [StructureTensor(dim, tables[name]) for name in expected]
        return TernaryAlgebra(dim, Kind(kind), *tensors)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None


def from_data(data: Any) -> AlgebraFile:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    unknown = set(data) - {"schema_version", "dim", "kind", "products", "operators", "forms", "covectors"}
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ParseError("dim must be a non-negative integer")
    kind = data.get("kind")
    valid = [k.value for k in Kind] + [LIE_KIND]
    if kind not in valid:
        raise ParseError(f"kind must be one of {valid}")
    algebra = _parse_products(kind, dim, data.get("products"))
    operators = {name: _matrix(m, dim, dim, f"operator {name}") for name, m in data.get("operators", {}).items()}
    forms = {}
    for name, g in data.get("forms", {}).items():
        try:
            forms[name] = SkewBilinearForm(_matrix(g, dim, dim, f"form {name}"))
        except AlgebraError as exc:
            raise ParseError(f"form {name}: {exc}") from None
    covectors = {name: _vector(v, dim, f"covector {name}") for name, v in data.get("covectors", {}).items()}
    return AlgebraFile(dim, kind, algebra, operators, forms, covectors, version)


def loads(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_data(data)


def load(path: Union[str, Path]) -> AlgebraFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text)


def _fmt_vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _product_entries(algebra) -> dict[str, list]:
    if isinstance(algebra, BinaryLieAlgebra):
        return {"lie": [[i, j, _fmt_vec(v)] for (i, j), v in algebra.items()]}
    return {name: [[*key, _fmt_vec(v)] for key, v in t.items()]
            for name, t in algebra.products.items()}


def to_text(f: AlgebraFile) -> str:
    """Canonical JSON text, one product entry or matrix row per line."""
    lines = ["{",
             f'  "schema_version": {_dump(f.schema_version)},',
             f'  "dim": {f.dim},',
             f'  "kind": {_dump(f.kind)},']
    sections = []

    def block(name: str, items: list[tuple[str, list[str]]]) -> str:
        if not items:
            return f'  "{name}": {{}}'
        inner = []
        for key, rows in items:
            if rows:
                body = ",\n".join(f"      {r}" for r in rows)
                inner.append(f"    {_dump(key)}: [\n{body}\n    ]")
            else:
                inner.append(f"    {_dump(key)}: []")
        return f'  "{name}": {{\n' + ",\n".join(inner) + "\n  }"

    products = _product_entries(f.algebra)
    sections.append(block("products", [(k, [_dump(e) for e in products[k]]) for k in sorted(products)]))
    sections.append(block("operators", [(k, [_dump(_fmt_vec(r)) for r in f.operators[k].tolist()])
                                        for k in sorted(f.operators)]))
    sections.append(block("forms", [(k, [_dump(_fmt_vec(r)) for r in f.forms[k].gram.tolist()])
                                    for k in sorted(f.forms)]))
    if f.covectors:
        lines_cov = [f"    {_dump(k)}: {_dump(_fmt_vec(f.covectors[k]))}" for k in sorted(f.covectors)]
        sections.append('  "covectors": {\n' + ",\n".join(lines_cov) + "\n  }")
    return "\n".join(lines) + "\n" + ",\n".join(sections) + "\n}\n"


def dump(f: AlgebraFile, path: Union[str, Path]) -> None:
    Path(path).write_text(to_text(f), encoding="utf-8")


def algebra_file(algebra: Union[TernaryAlgebra, BinaryLieAlgebra], **extras) -> AlgebraFile:
    kind = LIE_KIND if isinstance(algebra, BinaryLieAlgebra) else algebra.kind.value
    return AlgebraFile(algebra.dim, kind, algebra, **extras)
