"""Representations of 3-Lie and 3-pre-Lie algebras as matrix-valued pair maps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .linalg import Matrix, Vector
from .structures import (
    AlgebraError,
    Kind,
    ReportBuilder,
    StructureTensor,
    TernaryAlgebra,
    VerificationReport,
    horizontal_tensor,
)


class PairMap:
    """Bilinear map A x A -> gl(V), stored on basis pairs.

    Skew maps keep only pairs ``i < j``; the rest follow from ``rho(j,i) = -rho(i,j)``
    and ``rho(i,i) = 0``.
    """

    __slots__ = ("dim_a", "dim_v", "skew", "_mats")

    def __init__(self, dim_a: int, dim_v: int, mats: Mapping[tuple[int, int], Matrix], skew: bool):
        self.dim_a = dim_a
        self.dim_v = dim_v
        self.skew = skew
        store = {}
        for (i, j), m in mats.items():
            if not (0 <= i < dim_a and 0 <= j < dim_a):
                raise AlgebraError(f"pair {(i, j)} out of range")
            if m.shape != (dim_v, dim_v):
                raise AlgebraError(f"matrix at {(i, j)} has shape {m.shape}, expected {(dim_v, dim_v)}")
            if skew and i >= j:
                raise AlgebraError("skew pair maps store only pairs with i < j")
            if not m.is_zero():
                store[(i, j)] = m
        self._mats = store

    @classmethod
    def from_function(cls, dim_a: int, dim_v: int, f: Callable[[int, int], Matrix],
                      skew: bool) -> "PairMap":
        """Tabulate ``f`` on basis pairs; for skew maps the full grid is checked for skewness."""
        if not skew:
            return cls(dim_a, dim_v, {p: f(*p) for p in itertools.product(range(dim_a), repeat=2)}, False)
        mats = {}
        for i, j in itertools.product(range(dim_a), repeat=2):
            m = f(i, j)
            if i < j:
                mats[(i, j)] = m
                if f(j, i) != -m:
                    raise AlgebraError(f"map is not skew at pair {(i, j)}")
            elif i == j and not m.is_zero():
                raise AlgebraError(f"map is not skew: nonzero value at diagonal pair {(i, i)}")
        return cls(dim_a, dim_v, mats, True)

    @classmethod
    def zero(cls, dim_a: int, dim_v: int, skew: bool = True) -> "PairMap":
        return cls(dim_a, dim_v, {}, skew)

    def at(self, i: int, j: int) -> Matrix:
        if self.skew:
            if i == j:
                return Matrix.zeros(self.dim_v, self.dim_v)
            if i > j:
                m = self._mats.get((j, i))
                return -m if m is not None else Matrix.zeros(self.dim_v, self.dim_v)
        return self._mats.get((i, j)) or Matrix.zeros(self.dim_v, self.dim_v)

    def __call__(self, x: Sequence, y: Sequence) -> Matrix:
        """Bilinear extension to coordinate vectors of A."""
        out = Matrix.zeros(self.dim_v, self.dim_v)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    m = self.at(i, j)
                    if not m.is_zero():
                        out = out + m.scale(a * b)
        return out

    def full_grid(self) -> dict[tuple[int, int], Matrix]:
        return {p: self.at(*p) for p in itertools.product(range(self.dim_a), repeat=2)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairMap):
            return NotImplemented
        return (self.dim_a, self.dim_v) == (other.dim_a, other.dim_v) and self.full_grid() == other.full_grid()

    def __hash__(self) -> int:
        return hash((self.dim_a, self.dim_v, tuple(sorted(self.full_grid().items()))))

    def __add__(self, other: "PairMap") -> "PairMap":
        return _combine(self, other, 1)

    def __sub__(self, other: "PairMap") -> "PairMap":
        return _combine(self, other, -1)

    def swapped(self) -> "PairMap":
        """``(x, y) -> self(y, x)``."""
        return PairMap.from_function(self.dim_a, self.dim_v, lambda i, j: self.at(j, i), self.skew)

    def mapped(self, f: Callable[[Matrix], Matrix], skew: bool | None = None) -> "PairMap":
        skew = self.skew if skew is None else skew
        return PairMap.from_function(self.dim_a, self.dim_v, lambda i, j: f(self.at(i, j)), skew)

    def __repr__(self) -> str:
        return f"PairMap(dim_a={self.dim_a}, dim_v={self.dim_v}, skew={self.skew})"


def _combine(p: PairMap, q: PairMap, sign: int) -> PairMap:
    if (p.dim_a, p.dim_v) != (q.dim_a, q.dim_v):
        raise AlgebraError("pair map dimension mismatch")
    skew = p.skew and q.skew
    if sign > 0:
        f = lambda i, j: p.at(i, j) + q.at(i, j)  # noqa: E731
    else:
        f = lambda i, j: p.at(i, j) - q.at(i, j)  # noqa: E731
    try:
        return PairMap.from_function(p.dim_a, p.dim_v, f, skew)
    except AlgebraError:
        return PairMap.from_function(p.dim_a, p.dim_v, f, False)


@dataclass(frozen=True)
class PreLieRep:
    """A pair (l, r) acting on V; ``l`` is skew, ``r`` arbitrary."""

    l: PairMap
    r: PairMap

    def __post_init__(self):
        if (self.l.dim_a, self.l.dim_v) != (self.r.dim_a, self.r.dim_v):
            raise AlgebraError("l and r act between different spaces")

    @property
    def dim_a(self) -> int:
        return self.l.dim_a

    @property
    def dim_v(self) -> int:
        return self.l.dim_v

    def mu(self, x: Sequence, y: Sequence) -> Matrix:
        return self.l(x, y) + self.r(x, y) - self.r(y, x)


def _basis(n: int) -> list[Vector]:
    return [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]


def _first_failure(builder: ReportBuilder, name: str, n: int, arity: int,
                   residual: Callable[..., Matrix]) -> None:
    found = None
    for idx in itertools.product(range(n), repeat=arity):
        m = residual(*idx)
        if not m.is_zero():
            found = (idx, m.flat())
            break
    builder.check(name, found)


# ---------------------------------------------------------------------------
# 3-Lie representations
# ---------------------------------------------------------------------------

def adjoint_3lie(a: TernaryAlgebra) -> PairMap:
    """``ad(x, y) z = [x, y, z]``."""
    a._expect(Kind.THREE_LIE)
    return _left_multiplication(a.t1)


def _left_multiplication(t: StructureTensor, skew: bool = True) -> PairMap:
    n = t.dim
    return PairMap.from_function(
        n, n, lambda i, j: Matrix.from_columns([t.get(i, j, k) for k in range(n)], n), skew)


def verify_3lie_rep(a: TernaryAlgebra, rep: PairMap) -> VerificationReport:
    """Both representation conditions on every basis 4-tuple, plus skewness of ``rep``."""
    a._expect(Kind.THREE_LIE)
    return _lie_rep_report(a.t1, rep)


def _lie_rep_report(bracket: StructureTensor, rep: PairMap) -> VerificationReport:
    n = bracket.dim
    if rep.dim_a != n:
        raise AlgebraError(f"representation of a {rep.dim_a}-dim algebra used with a {n}-dim one")
    b = ReportBuilder()
    if not rep.skew:
        _first_failure(b, "skew", n, 2, lambda i, j: rep.at(i, j) + rep.at(j, i))
    at = rep.at
    e = _basis(n)
    br = lambda i, j, k: bracket.get(i, j, k)  # noqa: E731

    def cond_i(x1, x2, x3, x4):
        return (at(x1, x2) @ at(x3, x4) - at(x3, x4) @ at(x1, x2)
                - rep(br(x1, x2, x3), e[x4]) + rep(br(x1, x2, x4), e[x3]))

    def cond_ii(x1, x2, x3, x4):
        return (rep(br(x1, x2, x3), e[x4]) - at(x1, x2) @ at(x3, x4)
                - at(x2, x3) @ at(x1, x4) - at(x3, x1) @ at(x2, x4))

    _first_failure(b, "rep-i", n, 4, cond_i)
    _first_failure(b, "rep-ii", n, 4, cond_ii)
    return b.build()


def semidirect_3lie(a: TernaryAlgebra, rep: PairMap, check: bool = True) -> TernaryAlgebra:
    """A ⋉ V with ``[x1+v1, x2+v2, x3+v3] = [x1,x2,x3] + rho(x1,x2)v3 + rho(x3,x1)v2 + rho(x2,x3)v1``."""
    a._expect(Kind.THREE_LIE)
    if check:
        report = verify_3lie_rep(a, rep)
        if not report.passed:
            raise AlgebraError(f"not a representation: {report.violations[0].describe()}")
    n, m = a.dim, rep.dim_v
    coeffs: dict[tuple[int, int, int], Vector] = {}
    for key, v in a.t1.items():
        coeffs[key] = v + (Fraction(0),) * m

    def lift(col: Vector) -> Vector:
        return (Fraction(0),) * n + tuple(col)

    for i, j in itertools.product(range(n), repeat=2):
        mat = rep.at(i, j)
        if mat.is_zero():
            continue
        for c in range(m):
            col = mat.column(c)
            if any(col):
                w = lift(col)
                coeffs[(i, j, n + c)] = w    # rho(x1,x2) v3
                coeffs[(j, n + c, i)] = w    # rho(x3,x1) v2 with x3=e_i, x1=e_j
                coeffs[(n + c, i, j)] = w    # rho(x2,x3) v1
    return TernaryAlgebra.three_lie(StructureTensor(n + m, coeffs))


# ---------------------------------------------------------------------------
# 3-pre-Lie representations
# ---------------------------------------------------------------------------

def adjoint_prelie(a: TernaryAlgebra) -> PreLieRep:
    """``L(x,y)z = {x,y,z}`` and ``R(x,y)z = {z,x,y}``."""
    a._expect(Kind.THREE_PRE_LIE)
    t = a.t1
    n = a.dim
    right = PairMap.from_function(
        n, n, lambda i, j: Matrix.from_columns([t.get(k, i, j) for k in range(n)], n), False)
    return PreLieRep(_left_multiplication(t), right)


def verify_3prelie_rep(a: TernaryAlgebra, rep: PreLieRep) -> VerificationReport:
    """``l`` represents the sub-adjacent 3-Lie algebra, and the four mixed identities hold."""
    a._expect(Kind.THREE_PRE_LIE)
    p = a.t1
    n = a.dim
    if rep.dim_a != n:
        raise AlgebraError(f"representation of a {rep.dim_a}-dim algebra used with a {n}-dim one")
    report = VerificationReport(()).merged(_lie_rep_report(p.cyclic_sum(), rep.l), prefix="l:")
    b = ReportBuilder()
    l, r = rep.l.at, rep.r
    e = _basis(n)
    c = p.cyclic_sum()
    rr = r.at
    mu = {(i, j): l(i, j) + rr(i, j) - rr(j, i) for i, j in itertools.product(range(n), repeat=2)}

    def rep1(x1, x2, x3, x4):
        return (l(x1, x2) @ rr(x3, x4) - rr(x3, x4) @ mu[x1, x2]
                - r(c.get(x1, x2, x3), e[x4]) - r(e[x3], p.get(x1, x2, x4)))

    def rep2(x1, x2, x3, x4):
        return (r(c.get(x1, x2, x3), e[x4]) - l(x1, x2) @ rr(x3, x4)
                - l(x2, x3) @ rr(x1, x4) - l(x3, x1) @ rr(x2, x4))

    def rep3(x1, x2, x3, x4):
        return (r(e[x1], p.get(x2, x3, x4)) - rr(x3, x4) @ mu[x1, x2]
                + rr(x2, x4) @ mu[x1, x3] - l(x2, x3) @ rr(x1, x4))

    def rep4(x1, x2, x3, x4):
        return (rr(x3, x4) @ mu[x1, x2] - l(x1, x2) @ rr(x3, x4)
                + r(e[x2], p.get(x1, x3, x4)) - r(e[x1], p.get(x2, x3, x4)))

    for name, f in (("rep1", rep1), ("rep2", rep2), ("rep3", rep3), ("rep4", rep4)):
        _first_failure(b, name, n, 4, f)
    return report.merged(b.build())


def semidirect_3prelie(a: TernaryAlgebra, rep: PreLieRep, check: bool = True) -> TernaryAlgebra:
    """A ⋉ V with ``{x1+u1, x2+u2, x3+u3} = {x1,x2,x3} + l(x1,x2)u3 - r(x1,x3)u2 + r(x2,x3)u1``."""
    a._expect(Kind.THREE_PRE_LIE)
    if check:
        report = verify_3prelie_rep(a, rep)
        if not report.passed:
            raise AlgebraError(f"not a representation: {report.violations[0].describe()}")
    n, m = a.dim, rep.dim_v
    coeffs: dict[tuple[int, int, int], list[Fraction]] = {}

    def add(key, w):
        cur = coeffs.setdefault(key, [Fraction(0)] * (n + m))
        for idx, x in enumerate(w):
            cur[idx] += x

    for key, v in a.t1.items():
        add(key, tuple(v) + (Fraction(0),) * m)
    zero_a = (Fraction(0),) * n
    for i, j in itertools.product(range(n), repeat=2):
        lm, rm = rep.l.at(i, j), rep.r.at(i, j)
        for c in range(m):
            lc, rc = lm.column(c), rm.column(c)
            if any(lc):
                add((i, j, n + c), zero_a + lc)                    # l(x1,x2) u3
            if any(rc):
                add((i, n + c, j), zero_a + tuple(-x for x in rc))  # -r(x1,x3) u2
                add((n + c, i, j), zero_a + rc)                     # r(x2,x3) u1
    return TernaryAlgebra.three_prelie(StructureTensor(n + m, coeffs))


def induced_sub_adjacent_rep(rep: PreLieRep) -> PairMap:
    """``(x, y) -> l(x,y) - r(y,x) + r(x,y)``, a representation of the sub-adjacent 3-Lie algebra."""
    l, r = rep.l, rep.r
    return PairMap.from_function(rep.dim_a, rep.dim_v,
                                 lambda i, j: l.at(i, j) - r.at(j, i) + r.at(i, j), True)


def star(m: Matrix) -> Matrix:
    """Dual action on V* in dual-basis coordinates: ``-m^T``."""
    return -m.transpose()


def dual_rep(rep: PreLieRep) -> PreLieRep:
    """``(l* - r*tau + r*, -r*)`` acting on V*."""
    l, r = rep.l, rep.r
    new_l = PairMap.from_function(
        rep.dim_a, rep.dim_v, lambda i, j: star(l.at(i, j)) - star(r.at(j, i)) + star(r.at(i, j)), True)
    new_r = PairMap.from_function(rep.dim_a, rep.dim_v, lambda i, j: -star(r.at(i, j)), False)
    return PreLieRep(new_l, new_r)


def dendriform_reps(d: TernaryAlgebra) -> tuple[PairMap, PairMap, PairMap]:
    """``L_nw(x,y)z = nw(x,y,z)``, ``R_ne(x,y)z = ne(z,x,y)`` and
    ``rho(x,y)z = nw(x,y,z) + ne(z,x,y) - ne(z,y,x)``."""
    d._expect(Kind.THREE_L_DENDRIFORM)
    nw, ne = d.t1, d.t2
    n = d.dim
    left = _left_multiplication(nw)
    right = PairMap.from_function(
        n, n, lambda i, j: Matrix.from_columns([ne.get(k, i, j) for k in range(n)], n), False)
    rho = PairMap.from_function(
        n, n, lambda i, j: left.at(i, j) + right.at(i, j) - right.at(j, i), True)
    return left, right, rho


def horizontal_of(d: TernaryAlgebra) -> TernaryAlgebra:
    """Horizontal 3-pre-Lie product without the verification gate (internal use)."""
    return TernaryAlgebra.three_prelie(horizontal_tensor(d.t1, d.t2))
