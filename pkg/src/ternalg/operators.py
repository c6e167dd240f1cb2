"""O-operators, Rota-Baxter operators, symplectic forms and trace-induced brackets.

Linear operators are plain :class:`~ternalg.linalg.Matrix` objects acting on
column coordinate vectors (column ``j`` is the image of ``e_j``).  Every
constructor checks its operator condition first and raises
:class:`~ternalg.structures.AlgebraError` naming the failed check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, Subspace, Vector, inverse, nullspace_basis, solve, to_scalar, vec, zero_vec
from .representations import PairMap, PreLieRep
from .structures import (
    AlgebraError,
    Kind,
    ReportBuilder,
    StructureTensor,
    TernaryAlgebra,
    VerificationReport,
    eval_tensor,
    horizontal_tensor,
)


class BudgetExceeded(AlgebraError):
    """The requested search grid is larger than the configured budget."""


def _require(report: VerificationReport, check: str) -> None:
    if not report.passed:
        detail = report.reason or report.violations[0].describe()
        raise AlgebraError(f"{check} check failed: {detail}")


def _shape(T: Matrix, rows: int, cols: int, what: str) -> None:
    if T.shape != (rows, cols):
        raise AlgebraError(f"{what} has shape {T.shape}, expected {(rows, cols)}")


def _first_mismatch(lhs: StructureTensor, rhs: StructureTensor):
    items = (lhs - rhs).items()
    return (items[0][0], items[0][1]) if items else None


# ---------------------------------------------------------------------------
# O-operators and Rota-Baxter operators
# ---------------------------------------------------------------------------

def check_O_3lie(a: TernaryAlgebra, rep: PairMap, T: Matrix) -> VerificationReport:
    """``[Tu,Tv,Tw] = T(rho(Tu,Tv)w + rho(Tv,Tw)u + rho(Tw,Tu)v)`` on basis triples of V."""
    a._expect(Kind.THREE_LIE)
    _shape(T, a.dim, rep.dim_v, "O-operator")
    m = rep.dim_v
    images = [T.column(u) for u in range(m)]
    rho = {(u, v): rep(images[u], images[v]) for u, v in itertools.product(range(m), repeat=2)}
    b = ReportBuilder()
    found = None
    for u, v, w in itertools.product(range(m), repeat=3):
        lhs = eval_tensor(a.t1, images[u], images[v], images[w])
        inner = [x + y + z for x, y, z in zip(rho[u, v].column(w), rho[v, w].column(u), rho[w, u].column(v))]
        res = tuple(x - y for x, y in zip(lhs, T.apply(inner)))
        if any(res):
            found = ((u, v, w), res)
            break
    b.check("O-operator", found)
    return b.build()


def check_O_3prelie(a: TernaryAlgebra, rep: PreLieRep, T: Matrix) -> VerificationReport:
    """``{Tu,Tv,Tw} = T(l(Tu,Tv)w - r(Tu,Tw)v + r(Tv,Tw)u)`` on basis triples of V."""
    a._expect(Kind.THREE_PRE_LIE)
    _shape(T, a.dim, rep.dim_v, "O-operator")
    m = rep.dim_v
    images = [T.column(u) for u in range(m)]
    pairs = list(itertools.product(range(m), repeat=2))
    lmat = {p: rep.l(images[p[0]], images[p[1]]) for p in pairs}
    rmat = {p: rep.r(images[p[0]], images[p[1]]) for p in pairs}
    b = ReportBuilder()
    found = None
    for u, v, w in itertools.product(range(m), repeat=3):
        lhs = eval_tensor(a.t1, images[u], images[v], images[w])
        inner = [x - y + z for x, y, z in zip(lmat[u, v].column(w), rmat[u, w].column(v), rmat[v, w].column(u))]
        res = tuple(x - y for x, y in zip(lhs, T.apply(inner)))
        if any(res):
            found = ((u, v, w), res)
            break
    b.check("O-operator", found)
    return b.build()


def rb_sides(t: StructureTensor, R: Matrix) -> tuple[StructureTensor, StructureTensor]:
    """Both sides of the weight-zero Rota-Baxter identity as tensors."""
    lhs = t.precompose(R, R, R)
    rhs = (t.precompose(R, R, None) + t.precompose(R, None, R) + t.precompose(None, R, R)).postcompose(R)
    return lhs, rhs


def check_rb(a: TernaryAlgebra, R: Matrix) -> VerificationReport:
    """``P(Rx,Ry,Rz) = R(P(Rx,Ry,z) + P(Rx,y,Rz) + P(x,Ry,Rz))`` for the product P of ``a``."""
    if a.kind is Kind.THREE_L_DENDRIFORM:
        raise AlgebraError("Rota-Baxter operators are checked on 3-Lie or 3-pre-Lie algebras")
    _shape(R, a.dim, a.dim, "Rota-Baxter operator")
    b = ReportBuilder()
    b.check("rota-baxter", _first_mismatch(*rb_sides(a.t1, R)))
    return b.build()


def _is_rb_fast(dense: list, n: int, cols: list[Vector]) -> bool:
    # early-exit RB test on a dense coefficient table; used by the grid search
    basis = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]

    def ev(x, y, z):
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        c = x[i] * y[j]
                        for k in range(n):
                            if z[k]:
                                row = dense[i][j][k]
                                if row is not None:
                                    ck = c * z[k]
                                    for l in range(n):
                                        if row[l]:
                                            out[l] += ck * row[l]
        return out

    for i, j, k in itertools.product(range(n), repeat=3):
        rx, ry, rz = cols[i], cols[j], cols[k]
        lhs = ev(rx, ry, rz)
        inner = [p + q + s for p, q, s in zip(ev(rx, ry, basis[k]), ev(rx, basis[j], rz), ev(basis[i], ry, rz))]
        rhs = [sum((cols[m][l] * inner[m] for m in range(n) if inner[m]), Fraction(0)) for l in range(n)]
        if lhs != rhs:
            return False
    return True


def search_rb(a: TernaryAlgebra, coeff_set: Sequence, support: Iterable[tuple[int, int]] | None = None,
              budget: int = 200_000) -> list[Matrix]:
    """Every operator with entries from ``coeff_set`` on ``support`` (zero elsewhere) that is Rota-Baxter.

    ``support`` lists ``(row, col)`` matrix positions; None means all ``n*n`` entries.
    Results follow the grid order: positions sorted, coefficients in the given order.
    """
    if a.kind is Kind.THREE_L_DENDRIFORM:
        raise AlgebraError("Rota-Baxter operators are searched on 3-Lie or 3-pre-Lie algebras")
    n = a.dim
    coeffs = list(dict.fromkeys(to_scalar(c) for c in coeff_set))
    positions = sorted(set(support)) if support is not None else list(itertools.product(range(n), repeat=2))
    for r, c in positions:
        if not (0 <= r < n and 0 <= c < n):
            raise AlgebraError(f"support position {(r, c)} out of range")
    size = len(coeffs) ** len(positions)
    if size > budget:
        raise BudgetExceeded(f"grid of {size} candidates exceeds budget {budget}")
    dense = [[[None] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in a.t1.items():
        dense[i][j][k] = v
    found = []
    for values in itertools.product(coeffs, repeat=len(positions)):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (r, c), x in zip(positions, values):
            rows[r][c] = x
        R = Matrix(rows, n)
        if _is_rb_fast(dense, n, [R.column(j) for j in range(n)]):
            found.append(R)
    return found


def transport(t: StructureTensor, T: Matrix) -> StructureTensor:
    """``(x, y, z) -> T t(T^-1 x, T^-1 y, T^-1 z)`` for invertible ``T``."""
    Ti = inverse(T)
    return t.precompose(Ti, Ti, Ti).postcompose(T)


def prelie_from_O(a: TernaryAlgebra, rep: PairMap, T: Matrix) -> TernaryAlgebra:
    """3-pre-Lie product ``{u,v,w} = rho(Tu,Tv)w`` on V."""
    _require(check_O_3lie(a, rep, T), "O-operator")
    m = rep.dim_v
    images = [T.column(u) for u in range(m)]
    coeffs = {}
    for u, v in itertools.product(range(m), repeat=2):
        mat = rep(images[u], images[v])
        for w in range(m):
            coeffs[(u, v, w)] = mat.column(w)
    return TernaryAlgebra.three_prelie(StructureTensor(m, coeffs))


def morphism_report(source: StructureTensor, target: StructureTensor, T: Matrix,
                    name: str = "morphism") -> VerificationReport:
    """``T source(u,v,w) = target(Tu,Tv,Tw)`` on basis triples of the source space."""
    _shape(T, target.dim, source.dim, "morphism")
    images = [T.column(u) for u in range(source.dim)]
    found = None
    for u, v, w in itertools.product(range(source.dim), repeat=3):
        res = tuple(x - y for x, y in zip(T.apply(source.get(u, v, w)),
                                          eval_tensor(target, images[u], images[v], images[w])))
        if any(res):
            found = ((u, v, w), res)
            break
    b = ReportBuilder()
    b.check(name, found)
    return b.build()


def ldend_from_O(a: TernaryAlgebra, rep: PreLieRep, T: Matrix) -> TernaryAlgebra:
    """``nw(u,v,w) = l(Tu,Tv)w`` and ``ne(u,v,w) = r(Tv,Tw)u`` on V."""
    _require(check_O_3prelie(a, rep, T), "O-operator")
    m = rep.dim_v
    images = [T.column(u) for u in range(m)]
    nw, ne = {}, {}
    for u, v in itertools.product(range(m), repeat=2):
        lm = rep.l(images[u], images[v])
        rm = rep.r(images[u], images[v])
        for w in range(m):
            nw[(u, v, w)] = lm.column(w)
            # r(Tv,Tw) applied to u lands at ne(u, v, w); here (u, v) play (v, w)
            ne[(w, u, v)] = rm.column(w)
    return TernaryAlgebra.three_ldendriform(StructureTensor(m, nw), StructureTensor(m, ne))


def ldend_from_rb(a: TernaryAlgebra, R: Matrix) -> TernaryAlgebra:
    """``nw(x,y,z) = {Rx,Ry,z}`` and ``ne(x,y,z) = {x,Ry,Rz}``."""
    a._expect(Kind.THREE_PRE_LIE)
    _require(check_rb(a, R), "rota-baxter")
    return TernaryAlgebra.three_ldendriform(a.t1.precompose(R, R, None), a.t1.precompose(None, R, R))


def rb_pair_prelie(a: TernaryAlgebra, R1: Matrix) -> TernaryAlgebra:
    """The 3-pre-Lie product ``{x,y,z} = [R1 x, R1 y, z]``."""
    a._expect(Kind.THREE_LIE)
    return TernaryAlgebra.three_prelie(a.t1.precompose(R1, R1, None))


def ldend_from_rb_pair(a: TernaryAlgebra, R1: Matrix, R2: Matrix) -> TernaryAlgebra:
    """``nw(x,y,z) = [R1R2x, R1R2y, z]`` and ``ne(x,y,z) = [R1x, R1R2y, R2z]`` for commuting RB operators."""
    a._expect(Kind.THREE_LIE)
    if not R1.commutator(R2).is_zero():
        raise AlgebraError("commuting check failed: R1 R2 != R2 R1")
    _require(check_rb(a, R1), "rota-baxter (R1)")
    _require(check_rb(a, R2), "rota-baxter (R2)")
    middle = rb_pair_prelie(a, R1)
    _require(check_rb(middle, R2), "rota-baxter (R2 on the induced 3-pre-Lie algebra)")
    return ldend_from_rb(middle, R2)


# ---------------------------------------------------------------------------
# symplectic forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SkewBilinearForm:
    gram: Matrix

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols:
            raise AlgebraError("gram matrix must be square")
        if g != -g.transpose():
            raise AlgebraError("gram matrix is not skew-symmetric")

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def nondegenerate(self) -> bool:
        return self.gram.rank() == self.dim

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        gy = self.gram.apply(y)
        return sum((a * b for a, b in zip(x, gy) if a and b), Fraction(0))

    def pair(self, i: int, v: Sequence) -> Fraction:
        """``B(e_i, v)``."""
        return sum((a * b for a, b in zip(self.gram.row(i), v) if a and b), Fraction(0))

    def rpair(self, v: Sequence, j: int) -> Fraction:
        """``B(v, e_j)``."""
        return sum((a * b for a, b in zip(v, self.gram.column(j)) if a and b), Fraction(0))


def _closedness(p: StructureTensor, c: StructureTensor, B: SkewBilinearForm, x, y, z, w) -> Fraction:
    # B({x,y,z},w) - B(z,[x,y,w]^C) - B(y,{w,x,z}) + B(x,{w,y,z})
    return (B.rpair(p.get(x, y, z), w) - B.pair(z, c.get(x, y, w))
            - B.pair(y, p.get(w, x, z)) + B.pair(x, p.get(w, y, z)))


def check_symplectic(a: TernaryAlgebra, B: SkewBilinearForm) -> VerificationReport:
    """Closedness on every basis 4-tuple, then nondegeneracy."""
    a._expect(Kind.THREE_PRE_LIE)
    if B.dim != a.dim:
        raise AlgebraError("form and algebra dimensions differ")
    p = a.t1
    c = p.cyclic_sum()
    b = ReportBuilder()
    found = None
    for idx in itertools.product(range(a.dim), repeat=4):
        r = _closedness(p, c, B, *idx)
        if r:
            found = (idx, (r,))
            break
    b.check("closed", found)
    if not B.nondegenerate:
        b.reason = "degenerate"
    return b.build()


def closed_forms(a: TernaryAlgebra) -> Subspace:
    """All closed skew forms, as a subspace of flattened n x n gram matrices."""
    a._expect(Kind.THREE_PRE_LIE)
    n = a.dim
    p = a.t1
    c = p.cyclic_sum()
    unknowns = [(i, j) for i in range(n) for j in range(i + 1, n)]
    generators = []
    for i, j in unknowns:
        rows = [[0] * n for _ in range(n)]
        rows[i][j], rows[j][i] = 1, -1
        generators.append(SkewBilinearForm(Matrix(rows, n)))
    columns = [[_closedness(p, c, g, *idx) for idx in itertools.product(range(n), repeat=4)]
               for g in generators]
    rows = [list(r) for r in zip(*columns)] if columns else []
    _, kernel = nullspace_basis(rows, len(unknowns))
    forms = []
    for coeffs in kernel:
        total = Matrix.zeros(n, n)
        for x, g in zip(coeffs, generators):
            if x:
                total = total + g.gram.scale(x)
        forms.append(total.flat())
    return Subspace.span(n * n, forms)


def find_symplectic(a: TernaryAlgebra, max_coeff: int = 2) -> SkewBilinearForm | None:
    """A nondegenerate closed form, searching small integer combinations of the closed-form basis."""
    n = a.dim
    space = closed_forms(a)
    basis = [Matrix.from_flat(v, n, n) for v in space.basis]
    if not basis:
        return None
    values = range(-max_coeff, max_coeff + 1)
    for coeffs in itertools.product(values, repeat=len(basis)):
        if not any(coeffs):
            continue
        g = Matrix.zeros(n, n)
        for x, m in zip(coeffs, basis):
            if x:
                g = g + m.scale(x)
        if g.rank() == n:
            return SkewBilinearForm(g)
    return None


def _solve_against_form(B: SkewBilinearForm, rhs: Sequence[Fraction]) -> Vector:
    # value v with B(v, e_w) = rhs[w] for every w, i.e. gram^T v = rhs
    v = solve(B.gram.transpose(), rhs)
    if v is None:
        raise AlgebraError("symplectic check failed: degenerate")
    return v


def ldend_from_symplectic(a: TernaryAlgebra, B: SkewBilinearForm) -> TernaryAlgebra:
    """``B(nw(x,y,z), w) = B(z, [x,y,w]^C)`` and ``B(ne(x,y,z), w) = -B(x, {w,y,z})``."""
    _require(check_symplectic(a, B), "symplectic")
    n = a.dim
    p = a.t1
    c = p.cyclic_sum()
    nw, ne = {}, {}
    for x, y, z in itertools.product(range(n), repeat=3):
        nw[(x, y, z)] = _solve_against_form(B, [B.pair(z, c.get(x, y, w)) for w in range(n)])
        ne[(x, y, z)] = _solve_against_form(B, [-B.pair(x, p.get(w, y, z)) for w in range(n)])
    return TernaryAlgebra.three_ldendriform(StructureTensor(n, nw), StructureTensor(n, ne))


def prelie_prime_from_symplectic(a: TernaryAlgebra, B: SkewBilinearForm) -> TernaryAlgebra:
    """``B({x,y,z}', w) = B(z,[x,y,w]^C) - B(z,{w,x,y}) + B(z,{w,y,x})``."""
    _require(check_symplectic(a, B), "symplectic")
    n = a.dim
    p = a.t1
    c = p.cyclic_sum()
    out = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        rhs = [B.pair(z, c.get(x, y, w)) - B.pair(z, p.get(w, x, y)) + B.pair(z, p.get(w, y, x))
               for w in range(n)]
        out[(x, y, z)] = _solve_against_form(B, rhs)
    return TernaryAlgebra.three_prelie(StructureTensor(n, out))


# ---------------------------------------------------------------------------
# trace-induced 3-Lie brackets
# ---------------------------------------------------------------------------

class BinaryLieAlgebra:
    """A Lie algebra by structure constants ``[e_i, e_j] = sum_k c[i,j][k] e_k``; checked on construction."""

    def __init__(self, dim: int, coeffs: Mapping[tuple[int, int], Sequence]):
        self.dim = dim
        self._coeffs = {}
        for (i, j), v in coeffs.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"pair {(i, j)} out of range")
            v = vec(v)
            if len(v) != dim:
                raise AlgebraError(f"coefficient vector at {(i, j)} has wrong length")
            if any(v):
                self._coeffs[(i, j)] = v
        self._check()

    @classmethod
    def from_table(cls, dim: int, table: Mapping[tuple[int, int], Sequence]) -> "BinaryLieAlgebra":
        """Fill in ``[e_j, e_i] = -[e_i, e_j]`` from representatives."""
        full = {}
        for (i, j), v in table.items():
            v = vec(v)
            full[(i, j)] = v
            full[(j, i)] = tuple(-x for x in v)
        return cls(dim, full)

    def get(self, i: int, j: int) -> Vector:
        return self._coeffs.get((i, j)) or zero_vec(self.dim)

    def items(self):
        return sorted(self._coeffs.items())

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for (i, j), v in self._coeffs.items():
            c = x[i] * y[j]
            if c:
                for k, a in enumerate(v):
                    out[k] += c * a
        return tuple(out)

    def _check(self) -> None:
        n = self.dim
        e = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            if any(x + y for x, y in zip(self.get(i, j), self.get(j, i))):
                raise AlgebraError(f"bracket is not skew at {(i, j)}")
        for i, j, k in itertools.combinations(range(n), 3):
            jac = [a + b + c for a, b, c in zip(self.bracket(e[i], self.get(j, k)),
                                                 self.bracket(e[j], self.get(k, i)),
                                                 self.bracket(e[k], self.get(i, j)))]
            if any(jac):
                raise AlgebraError(f"Jacobi identity fails at {(i, j, k)}")


def is_trace(g: BinaryLieAlgebra, tau: Sequence) -> bool:
    tau = vec(tau)
    return all(not sum((a * b for a, b in zip(tau, v)), Fraction(0)) for _, v in g.items())


def trace_induced_3lie(g: BinaryLieAlgebra, tau: Sequence) -> TernaryAlgebra:
    """``[x,y,z]_tau = tau(x)[y,z] + tau(y)[z,x] + tau(z)[x,y]`` for a trace function ``tau``."""
    tau = vec(tau)
    if len(tau) != g.dim:
        raise AlgebraError("trace covector has the wrong length")
    if not is_trace(g, tau):
        raise AlgebraError("trace check failed: tau does not vanish on brackets")
    n = g.dim
    coeffs = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        coeffs[(i, j, k)] = [tau[i] * a + tau[j] * b + tau[k] * c
                             for a, b, c in zip(g.get(j, k), g.get(k, i), g.get(i, j))]
    return TernaryAlgebra.three_lie(StructureTensor(n, coeffs))


def trace_rb_pair_ldend(g: BinaryLieAlgebra, tau: Sequence, R1: Matrix, R2: Matrix) -> TernaryAlgebra:
    """The 3-L-dendriform structure written directly in terms of ``tau`` and the binary bracket.

    ``nw(x,y,z) = tau(Px)[Py,z] + tau(Py)[z,Px] + tau(z)[Px,Py]`` with ``P = R1 R2``;
    ``ne(x,y,z) = tau(R1x)[Py,R2z] + tau(Py)[R2z,R1x] + tau(R2z)[R1x,Py]``.
    Agrees with :func:`ldend_from_rb_pair` on the trace-induced bracket.
    """
    tau = vec(tau)
    n = g.dim
    P = R1 @ R2
    e = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]
    t = lambda v: sum((a * b for a, b in zip(tau, v)), Fraction(0))  # noqa: E731

    def comb(s1, u, s2, v, s3, w):
        terms = (g.bracket(u, v), g.bracket(v, w), g.bracket(w, u))
        return [s3 * a + s1 * b + s2 * c for a, b, c in zip(*terms)]

    nw, ne = {}, {}
    for i, j, k in itertools.product(range(n), repeat=3):
        px, py, z = P.column(i), P.column(j), e[k]
        # tau(px)[py,z] + tau(py)[z,px] + tau(z)[px,py]
        nw[(i, j, k)] = [t(px) * a + t(py) * b + t(z) * c
                         for a, b, c in zip(g.bracket(py, z), g.bracket(z, px), g.bracket(px, py))]
        r1x, r2z = R1.column(i), R2.column(k)
        ne[(i, j, k)] = [t(r1x) * a + t(py) * b + t(r2z) * c
                         for a, b, c in zip(g.bracket(py, r2z), g.bracket(r2z, r1x), g.bracket(r1x, py))]
    return TernaryAlgebra.three_ldendriform(StructureTensor(n, nw), StructureTensor(n, ne))


def compatible_horizontal(d: TernaryAlgebra, product: StructureTensor) -> bool:
    """Whether the horizontal bracket of ``d`` reproduces ``product`` entrywise."""
    return horizontal_tensor(d.t1, d.t2) == product
