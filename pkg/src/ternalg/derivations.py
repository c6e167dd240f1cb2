"""Derivation-type spaces as exact nullspaces, plus the closure and transport checks.

Unknown endomorphisms are flattened row-major, so entry ``D[r][c]`` sits at
``r * n + c`` and ``D e_c`` is column ``c``.  Tuple spaces (QDer pairs, GDer
quadruples) concatenate the flattened blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, Subspace, nullspace_basis
from .operators import check_rb, ldend_from_rb
from .structures import (
    AlgebraError,
    Kind,
    ReportBuilder,
    StructureTensor,
    TernaryAlgebra,
    VerificationReport,
    eval_tensor,
    horizontal_tensor,
    vertical_tensor,
    verify,
)


class Role(str, Enum):
    DER = "der"
    QDER_PAIR = "qder"
    GDER_QUAD = "gder"
    CENTROID = "c"
    QCENTROID = "qc"


BLOCKS = {Role.DER: 1, Role.QDER_PAIR: 2, Role.GDER_QUAD: 4, Role.CENTROID: 1, Role.QCENTROID: 1}

# A term is (sign, position, block): position "out" applies the block to the
# product value, positions 0/1/2 apply it to that argument.  An identity is a
# list of terms whose sum must vanish for every product and basis triple.
Term = tuple[int, object, int]

IDENTITIES: dict[Role, list[list[Term]]] = {
    Role.DER: [[(1, "out", 0), (-1, 0, 0), (-1, 1, 0), (-1, 2, 0)]],
    Role.QDER_PAIR: [[(1, "out", 1), (-1, 0, 0), (-1, 1, 0), (-1, 2, 0)]],
    Role.GDER_QUAD: [[(1, "out", 3), (-1, 0, 0), (-1, 1, 1), (-1, 2, 2)]],
    Role.CENTROID: [[(1, "out", 0), (-1, 0, 0)], [(1, "out", 0), (-1, 1, 0)], [(1, "out", 0), (-1, 2, 0)]],
    Role.QCENTROID: [[(1, 0, 0), (-1, 1, 0)], [(1, 1, 0), (-1, 2, 0)]],
}


@dataclass(frozen=True)
class EndoSubspace:
    """A subspace of ``k``-tuples of ``n x n`` matrices with a role tag."""

    role: Role
    n: int
    space: Subspace
    blocks: int = field(default=1)

    def __post_init__(self):
        if self.space.ambient_dim != self.blocks * self.n * self.n:
            raise ValueError("ambient dimension does not match the tuple shape")

    @property
    def dim(self) -> int:
        return self.space.dim

    def split(self, v: Sequence) -> tuple[Matrix, ...]:
        m = self.n * self.n
        return tuple(Matrix.from_flat(v[b * m:(b + 1) * m], self.n, self.n) for b in range(self.blocks))

    def tuples(self) -> list[tuple[Matrix, ...]]:
        return [self.split(v) for v in self.space.basis]

    def matrices(self) -> list[Matrix]:
        """Basis as matrices; only meaningful for single-block roles."""
        if self.blocks != 1:
            raise ValueError("matrices() needs a single-block role")
        return [t[0] for t in self.tuples()]

    def projection(self, block: int = 0) -> Subspace:
        """Image of the tuple space under the ``block``-th component projection."""
        m = self.n * self.n
        return Subspace.span(m, [v[block * m:(block + 1) * m] for v in self.space.basis])

    def contains_tuple(self, mats: Sequence[Matrix]) -> bool:
        flat = [x for mat in mats for x in mat.flat()]
        return self.space.contains(flat)


def _products(a: TernaryAlgebra) -> tuple[StructureTensor, ...]:
    return (a.t1, a.t2) if a.kind is Kind.THREE_L_DENDRIFORM else (a.t1,)


def _gate(a: TernaryAlgebra, require_verified: bool) -> None:
    if require_verified and not (a.verified or verify(a).passed):
        raise AlgebraError(f"input does not pass the {a.kind.value} verifier")


def identity_rows(t: StructureTensor, identity: Sequence[Term], blocks: int) -> list[dict[int, Fraction]]:
    """Sparse constraint rows, one per (basis triple, output coordinate)."""
    n = t.dim
    m = n * n
    rows = []
    for i, j, k in itertools.product(range(n), repeat=3):
        acc: list[dict[int, Fraction]] = [dict() for _ in range(n)]
        args = (i, j, k)
        for sign, pos, block in identity:
            base = block * m
            if pos == "out":
                val = t.get(i, j, k)
                for c, x in enumerate(val):
                    if x:
                        for r in range(n):
                            key = base + r * n + c
                            acc[r][key] = acc[r].get(key, 0) + sign * x
            else:
                src = args[pos]
                for r in range(n):
                    moved = list(args)
                    moved[pos] = r
                    val = t.get(*moved)
                    key = base + r * n + src
                    for out, x in enumerate(val):
                        if x:
                            acc[out][key] = acc[out].get(key, 0) + sign * x
        rows.extend({k: v for k, v in row.items() if v} for row in acc)
    return [r for r in rows if r]


def commuting_rows(R: Matrix, blocks: int) -> list[dict[int, Fraction]]:
    """Rows forcing every block to commute with ``R``."""
    n = R.rows
    m = n * n
    rows = []
    for b in range(blocks):
        for r, c in itertools.product(range(n), repeat=2):
            row: dict[int, Fraction] = {}
            for k in range(n):
                # (D R)[r][c] - (R D)[r][c]
                if R[k, c]:
                    key = b * m + r * n + k
                    row[key] = row.get(key, 0) + R[k, c]
                if R[r, k]:
                    key = b * m + k * n + c
                    row[key] = row.get(key, 0) - R[r, k]
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def _nullspace(sparse_rows: list[dict[int, Fraction]], ncols: int) -> Subspace:
    dense = []
    for row in sparse_rows:
        line = [Fraction(0)] * ncols
        for k, v in row.items():
            line[k] = Fraction(v)
        dense.append(line)
    _, basis = nullspace_basis(dense, ncols)
    return Subspace.span(ncols, basis)


def solve_space(a: TernaryAlgebra, role: Role, *, products: Sequence[StructureTensor] | None = None,
                commuting_with: Matrix | None = None, require_verified: bool = True) -> EndoSubspace:
    """Generic solver: the identities of ``role`` imposed on every product of ``a``."""
    _gate(a, require_verified)
    role = Role(role)
    blocks = BLOCKS[role]
    n = a.dim
    rows = []
    for t in (products if products is not None else _products(a)):
        for identity in IDENTITIES[role]:
            rows.extend(identity_rows(t, identity, blocks))
    if commuting_with is not None:
        rows.extend(commuting_rows(commuting_with, blocks))
    return EndoSubspace(role, n, _nullspace(rows, blocks * n * n), blocks)


def solve_der(a: TernaryAlgebra, require_verified: bool = True) -> EndoSubspace:
    return solve_space(a, Role.DER, require_verified=require_verified)


def solve_qder(a: TernaryAlgebra, require_verified: bool = True) -> EndoSubspace:
    return solve_space(a, Role.QDER_PAIR, require_verified=require_verified)


def solve_gder(a: TernaryAlgebra, require_verified: bool = True,
               commuting_with: Matrix | None = None) -> EndoSubspace:
    return solve_space(a, Role.GDER_QUAD, require_verified=require_verified, commuting_with=commuting_with)


def solve_centroid(a: TernaryAlgebra, require_verified: bool = True) -> EndoSubspace:
    return solve_space(a, Role.CENTROID, require_verified=require_verified)


def solve_qcentroid(a: TernaryAlgebra, require_verified: bool = True) -> EndoSubspace:
    return solve_space(a, Role.QCENTROID, require_verified=require_verified)


SOLVERS = {
    Role.DER: solve_der,
    Role.QDER_PAIR: solve_qder,
    Role.GDER_QUAD: solve_gder,
    Role.CENTROID: solve_centroid,
    Role.QCENTROID: solve_qcentroid,
}


# ---------------------------------------------------------------------------
# direct identity evaluation
# ---------------------------------------------------------------------------

def gder_residual(t: StructureTensor, quad: Sequence[Matrix], order: str = "statement"):
    """First basis triple violating the GDer identity for ``quad = (D, D', D'', D''')``.

    ``order="statement"`` checks ``D'''t(x,y,z) = t(Dx,y,z) + t(x,D'y,z) + t(x,y,D''z)``;
    ``order="proof"`` checks the right-hand side ``t(Dy,x,z) + t(y,D'x,z) + t(y,x,D''z)``.
    Returns ``(triple, residual)`` or None.
    """
    if order not in ("statement", "proof"):
        raise ValueError("order must be 'statement' or 'proof'")
    d0, d1, d2, d3 = quad
    n = t.dim
    cols = [[q.column(i) for i in range(n)] for q in (d0, d1, d2)]
    e = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = d3.apply(t.get(x, y, z))
        if order == "statement":
            parts = (eval_tensor(t, cols[0][x], e[y], e[z]), eval_tensor(t, e[x], cols[1][y], e[z]),
                     eval_tensor(t, e[x], e[y], cols[2][z]))
        else:
            parts = (eval_tensor(t, cols[0][y], e[x], e[z]), eval_tensor(t, e[y], cols[1][x], e[z]),
                     eval_tensor(t, e[y], e[x], cols[2][z]))
        res = tuple(l - p - q - s for l, p, q, s in zip(lhs, *parts))
        if any(res):
            return (x, y, z), res
    return None


def in_gder(a: TernaryAlgebra, quad: Sequence[Matrix]) -> bool:
    return all(gder_residual(t, quad) is None for t in _products(a))


def gder_transport_dendriform(d: TernaryAlgebra, quad: Sequence[Matrix], order: str = "statement") -> VerificationReport:
    """Whether a GDer quadruple of ``d`` is a GDer of its horizontal and vertical 3-pre-Lie products."""
    d._expect(Kind.THREE_L_DENDRIFORM)
    if not in_gder(d, quad):
        raise AlgebraError("quadruple is not a generalized derivation of the input")
    b = ReportBuilder()
    b.check("horizontal", gder_residual(horizontal_tensor(d.t1, d.t2), quad, order))
    b.check("vertical", gder_residual(vertical_tensor(d.t1, d.t2), quad, order))
    return b.build()


def gder_rb_transport(a: TernaryAlgebra, R: Matrix, quad: Sequence[Matrix]) -> VerificationReport:
    """Whether a GDer quadruple commuting with the RB operator ``R`` is a GDer of ``ldend_from_rb(a, R)``."""
    a._expect(Kind.THREE_PRE_LIE)
    problems = []
    if not in_gder(a, quad):
        problems.append("quadruple is not a generalized derivation of the input")
    if not check_rb(a, R).passed:
        problems.append("rota-baxter check failed")
    for name, q in zip(("D", "D'", "D''", "D'''"), quad):
        if not q.commutator(R).is_zero():
            problems.append(f"{name} does not commute with R")
    if problems:
        raise AlgebraError("; ".join(problems))
    d = ldend_from_rb(a, R)
    b = ReportBuilder()
    b.check("gder-nw", gder_residual(d.t1, quad))
    b.check("gder-ne", gder_residual(d.t2, quad))
    return b.build()


# ---------------------------------------------------------------------------
# closure report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureReport:
    checks: tuple[tuple[str, bool], ...]
    dims: tuple[tuple[str, int], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def __bool__(self) -> bool:
        return self.passed


def closure_report(a: TernaryAlgebra, require_verified: bool = True) -> ClosureReport:
    """The inclusion and commutator properties relating Der, QDer, GDer, C and QC."""
    _gate(a, require_verified)
    der = solve_der(a, False)
    qder = solve_qder(a, False)
    gder = solve_gder(a, False)
    cen = solve_centroid(a, False)
    qc = solve_qcentroid(a, False)
    der_m, cen_m = der.matrices(), cen.matrices()
    qder_proj, gder_proj = qder.projection(0), gder.projection(0)
    checks = [
        ("der-bracket-closed", all(der.space.contains(x.commutator(y).flat())
                                   for x, y in itertools.combinations(der_m, 2))),
        ("der-centroid-bracket-in-centroid", all(cen.space.contains(x.commutator(y).flat())
                                                 for x in der_m for y in cen_m)),
        ("centroid-in-qcentroid", cen.space.issubspace(qc.space)),
        ("centroid-in-qder", cen.space.issubspace(qder_proj)),
        ("der-plus-centroid-in-qder", (der.space + cen.space).issubspace(qder_proj)),
        ("qder-plus-qcentroid-in-gder", (qder_proj + qc.space).issubspace(gder_proj)),
    ]
    dims = [
        ("der", der.dim), ("qder", qder.dim), ("gder", gder.dim), ("c", cen.dim), ("qc", qc.dim),
        ("proj-qder", qder_proj.dim), ("proj-gder", gder_proj.dim),
        ("der-meet-c", (der.space & cen.space).dim),
    ]
    return ClosureReport(tuple(checks), tuple(dims))
