"""Ternary products as structure constants, and exact verification of their axioms.

A :class:`StructureTensor` stores ``prod(e_i, e_j, e_k) = sum_l c[i,j,k][l] e_l``
sparsely.  A :class:`TernaryAlgebra` bundles one tensor (3-Lie bracket or
3-pre-Lie product) or two (the ``nw``/``ne`` pair of a 3-L-dendriform algebra).

Five-variable identities are evaluated on every basis 5-tuple, but not by
looping over the grid: each identity is a signed sum of nested compositions
``outer(..., inner(...), ...)`` and every composition is contracted sparsely,
so only tuples with a nonzero contribution are ever visited.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Matrix, Vector, vec, zero_vec

__all__ = [
    "AlgebraError",
    "Kind",
    "StructureTensor",
    "TernaryAlgebra",
    "Violation",
    "VerificationReport",
    "commutator_3lie",
    "embed_prelie",
    "ensure_verified",
    "eval_tensor",
    "horizontal_prelie",
    "sub_adjacent_3lie",
    "verify",
    "verify_3ldendriform",
    "verify_3lie",
    "verify_3prelie",
    "vertical_prelie",
]


class AlgebraError(ValueError):
    """Raised when an input violates a precondition (wrong kind, unverified, shape)."""


class Kind(str, enum.Enum):
    THREE_LIE = "3-Lie"
    THREE_PRE_LIE = "3-pre-Lie"
    THREE_L_DENDRIFORM = "3-L-dendriform"


PRODUCT_NAMES = {
    Kind.THREE_LIE: ("bracket",),
    Kind.THREE_PRE_LIE: ("curly",),
    Kind.THREE_L_DENDRIFORM: ("nw", "ne"),
}


class StructureTensor:
    """Sparse trilinear map on Q^dim.  Only nonzero coefficient vectors are stored."""

    __slots__ = ("dim", "_coeffs")

    def __init__(self, dim: int, coeffs: Mapping[tuple[int, int, int], Sequence] | None = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        store: dict[tuple[int, int, int], Vector] = {}
        for key, value in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != 3 or any(not 0 <= i < dim for i in key):
                raise AlgebraError(f"index triple {key} out of range for dimension {dim}")
            v = vec(value)
            if len(v) != dim:
                raise AlgebraError(f"coefficient vector at {key} has length {len(v)}, expected {dim}")
            if any(v):
                store[key] = v
        self._coeffs = store

    @classmethod
    def zero(cls, dim: int) -> "StructureTensor":
        return cls(dim)

    @classmethod
    def from_function(cls, dim: int, f: Callable[[int, int, int], Sequence]) -> "StructureTensor":
        return cls(dim, {t: f(*t) for t in itertools.product(range(dim), repeat=3)})

    @classmethod
    def from_table(cls, dim: int, table: Mapping[tuple[int, int, int], Sequence],
                   skew: str | None = None) -> "StructureTensor":
        """Build from representative products, filling in the partners forced by skew-symmetry.

        ``skew="12"`` adds ``(j,i,k) -> -v``; ``skew="all"`` adds every permutation
        with its sign.  Conflicting entries raise AlgebraError.
        """
        full: dict[tuple[int, int, int], Vector] = {}

        def put(key, v):
            if key in full and full[key] != v:
                raise AlgebraError(f"conflicting entries for {key}")
            full[key] = v

        for (i, j, k), v in table.items():
            v = vec(v)
            put((i, j, k), v)
            neg = tuple(-x for x in v)
            if skew == "12":
                put((j, i, k), neg)
            elif skew == "all":
                for perm in itertools.permutations(range(3)):
                    idx = (i, j, k)
                    put(tuple(idx[p] for p in perm), v if _parity(perm) == 0 else neg)
            elif skew is not None:
                raise ValueError(f"unknown skew mode {skew!r}")
        return cls(dim, full)

    def get(self, i: int, j: int, k: int) -> Vector:
        return self._coeffs.get((i, j, k)) or zero_vec(self.dim)

    def items(self) -> list[tuple[tuple[int, int, int], Vector]]:
        """Nonzero entries in lexicographic index order."""
        return sorted(self._coeffs.items())

    def nnz(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.items())))

    def __repr__(self) -> str:
        return f"StructureTensor(dim={self.dim}, nnz={self.nnz()})"

    def _combine(self, other: "StructureTensor", sign: int) -> "StructureTensor":
        if self.dim != other.dim:
            raise AlgebraError("dimension mismatch")
        out = dict(self._coeffs)
        for key, v in other._coeffs.items():
            base = out.get(key, zero_vec(self.dim))
            out[key] = tuple(a + sign * b for a, b in zip(base, v))
        return StructureTensor(self.dim, out)

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        return self._combine(other, 1)

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        return self._combine(other, -1)

    def __neg__(self) -> "StructureTensor":
        return self.scale(-1)

    def scale(self, c) -> "StructureTensor":
        c = Fraction(c)
        return StructureTensor(self.dim, {k: tuple(c * x for x in v) for k, v in self._coeffs.items()})

    def rearranged(self, order: tuple[int, int, int]) -> "StructureTensor":
        """The map ``(x0, x1, x2) -> self(x[order[0]], x[order[1]], x[order[2]])``."""
        out = {}
        inv = [order.index(p) for p in range(3)]
        for key, v in self._coeffs.items():
            out[tuple(key[inv[p]] for p in range(3))] = v
        return StructureTensor(self.dim, out)

    def cyclic_sum(self) -> "StructureTensor":
        """``(x, y, z) -> t(x,y,z) + t(y,z,x) + t(z,x,y)``."""
        return self + self.rearranged((1, 2, 0)) + self.rearranged((2, 0, 1))

    def evaluate(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        return eval_tensor(self, x, y, z)

    def precompose(self, m1: Matrix | None, m2: Matrix | None, m3: Matrix | None) -> "StructureTensor":
        """The map ``(x, y, z) -> self(m1 x, m2 y, m3 z)``; None stands for the identity."""
        n = self.dim
        cols = [None if m is None else [m.column(j) for j in range(n)] for m in (m1, m2, m3)]
        basis = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]
        images = [basis if c is None else c for c in cols]
        return StructureTensor.from_function(
            n, lambda i, j, k: eval_tensor(self, images[0][i], images[1][j], images[2][k]))

    def postcompose(self, m: Matrix) -> "StructureTensor":
        """The map ``(x, y, z) -> m self(x, y, z)``."""
        return StructureTensor(self.dim, {k: m.apply(v) for k, v in self._coeffs.items()})

    def by_slot(self, slot: int) -> dict[int, list[tuple[int, int, Vector]]]:
        """Entries grouped by the index sitting in ``slot``: ``m -> [(a, b, vector)]``."""
        groups: dict[int, list[tuple[int, int, Vector]]] = defaultdict(list)
        others = [p for p in range(3) if p != slot]
        for key, v in self._coeffs.items():
            groups[key[slot]].append((key[others[0]], key[others[1]], v))
        return groups


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return inversions % 2


def eval_tensor(t: StructureTensor, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """Trilinear extension of the basis products to arbitrary coordinate vectors."""
    n = t.dim
    if len(x) != n or len(y) != n or len(z) != n:
        raise AlgebraError(f"arguments must have length {n}")
    out = [Fraction(0)] * n
    for (i, j, k), v in t._coeffs.items():
        c = x[i] * y[j] * z[k]
        if c:
            for l, a in enumerate(v):
                if a:
                    out[l] += c * a
    return tuple(out)


# ---------------------------------------------------------------------------
# nested-composition identity engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Nest:
    """One term ``sign * outer(..., inner(x_p, x_q, x_r) in `slot`, ...)``.

    ``outer_vars`` names the variables feeding the two remaining outer slots
    (in slot order), ``inner_vars`` the variables feeding the inner product.
    Variables are numbered from 0.
    """

    sign: int
    outer: StructureTensor
    slot: int
    inner: StructureTensor
    outer_vars: tuple[int, int]
    inner_vars: tuple[int, int, int]


def _accumulate(terms: Iterable[Nest], arity: int, dim: int) -> dict[tuple[int, ...], dict[int, Fraction]]:
    acc: dict[tuple[int, ...], dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for term in terms:
        groups = term.outer.by_slot(term.slot)
        if not groups:
            continue
        for (p, q, r), ivec in term.inner._coeffs.items():
            for m, cm in enumerate(ivec):
                if not cm or m not in groups:
                    continue
                factor = term.sign * cm
                for a, b, ovec in groups[m]:
                    key = [0] * arity
                    key[term.outer_vars[0]] = a
                    key[term.outer_vars[1]] = b
                    key[term.inner_vars[0]] = p
                    key[term.inner_vars[1]] = q
                    key[term.inner_vars[2]] = r
                    slot_acc = acc[tuple(key)]
                    for l, co in enumerate(ovec):
                        if co:
                            slot_acc[l] += factor * co
    return acc


def first_residual(terms: Iterable[Nest], arity: int, dim: int) -> tuple[tuple[int, ...], Vector] | None:
    """Lexicographically first basis tuple where the signed sum of terms is nonzero."""
    acc = _accumulate(terms, arity, dim)
    bad = sorted(key for key, v in acc.items() if any(v.values()))
    if not bad:
        return None
    key = bad[0]
    residual = [Fraction(0)] * dim
    for l, c in acc[key].items():
        residual[l] = c
    return key, tuple(residual)


def count_residuals(terms: Iterable[Nest], arity: int, dim: int) -> int:
    acc = _accumulate(terms, arity, dim)
    return sum(1 for v in acc.values() if any(v.values()))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple[int, ...]
    residual: tuple

    def describe(self) -> str:
        res = ", ".join(str(x) for x in self.residual)
        return f"{self.identity} fails at {self.indices}: residual ({res})"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a list of identities; one Violation per failing identity."""

    identities: tuple[str, ...]
    violations: tuple[Violation, ...] = ()
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return not self.violations and self.reason is None

    def __bool__(self) -> bool:
        return self.passed

    def failed_identities(self) -> tuple[str, ...]:
        return tuple(v.identity for v in self.violations)

    def verdicts(self) -> list[tuple[str, bool]]:
        failed = set(self.failed_identities())
        return [(name, name not in failed) for name in self.identities]

    def merged(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        return VerificationReport(
            self.identities + tuple(prefix + n for n in other.identities),
            self.violations + tuple(Violation(prefix + v.identity, v.indices, v.residual)
                                    for v in other.violations),
            self.reason or other.reason,
        )


class ReportBuilder:
    def __init__(self):
        self.identities: list[str] = []
        self.violations: list[Violation] = []
        self.reason: str | None = None

    def check(self, name: str, found: tuple[tuple[int, ...], tuple] | None) -> None:
        self.identities.append(name)
        if found is not None:
            self.violations.append(Violation(name, tuple(found[0]), tuple(found[1])))

    def check_nested(self, name: str, terms: Sequence[Nest], arity: int, dim: int) -> None:
        self.check(name, first_residual(terms, arity, dim))

    def build(self) -> VerificationReport:
        return VerificationReport(tuple(self.identities), tuple(self.violations), self.reason)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TernaryAlgebra:
    """A finite-dimensional ternary algebra given by structure constants.

    ``t1`` is the bracket (3-Lie), the product (3-pre-Lie) or ``nw``
    (3-L-dendriform); ``t2`` holds ``ne`` and is present only for the latter.
    """

    dim: int
    kind: Kind
    t1: StructureTensor
    t2: StructureTensor | None = None
    _verified: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.t1.dim != self.dim or (self.t2 is not None and self.t2.dim != self.dim):
            raise AlgebraError("tensor dimension does not match algebra dimension")
        if (self.kind is Kind.THREE_L_DENDRIFORM) != (self.t2 is not None):
            raise AlgebraError(f"{self.kind.value} algebra has the wrong number of products")

    @classmethod
    def three_lie(cls, bracket: StructureTensor) -> "TernaryAlgebra":
        return cls(bracket.dim, Kind.THREE_LIE, bracket)

    @classmethod
    def three_prelie(cls, product: StructureTensor) -> "TernaryAlgebra":
        return cls(product.dim, Kind.THREE_PRE_LIE, product)

    @classmethod
    def three_ldendriform(cls, nw: StructureTensor, ne: StructureTensor) -> "TernaryAlgebra":
        return cls(nw.dim, Kind.THREE_L_DENDRIFORM, nw, ne)

    @classmethod
    def zero(cls, kind: Kind, dim: int) -> "TernaryAlgebra":
        z = StructureTensor.zero(dim)
        return cls(dim, kind, z, z if Kind(kind) is Kind.THREE_L_DENDRIFORM else None)

    @property
    def verified(self) -> bool:
        return self._verified

    @property
    def products(self) -> dict[str, StructureTensor]:
        names = PRODUCT_NAMES[self.kind]
        tensors = (self.t1, self.t2)
        return {name: t for name, t in zip(names, tensors)}

    @property
    def nw(self) -> StructureTensor:
        self._expect(Kind.THREE_L_DENDRIFORM)
        return self.t1

    @property
    def ne(self) -> StructureTensor:
        self._expect(Kind.THREE_L_DENDRIFORM)
        return self.t2

    def _expect(self, kind: Kind) -> None:
        if self.kind is not kind:
            raise AlgebraError(f"expected a {kind.value} algebra, got {self.kind.value}")

    def same_structure(self, other: "TernaryAlgebra") -> bool:
        return (self.dim, self.kind, self.t1, self.t2) == (other.dim, other.kind, other.t1, other.t2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TernaryAlgebra):
            return NotImplemented
        return self.same_structure(other)

    def __hash__(self) -> int:
        return hash((self.dim, self.kind, self.t1, self.t2))


def _mark(a: TernaryAlgebra, report: VerificationReport) -> VerificationReport:
    if report.passed:
        object.__setattr__(a, "_verified", True)
    return report


def _first_entry(t: StructureTensor):
    items = t.items()
    return (items[0][0], items[0][1]) if items else None


def _check_skew12(b: ReportBuilder, name: str, t: StructureTensor) -> None:
    b.check(name, _first_entry(t + t.rearranged((1, 0, 2))))


def _check_alternating(b: ReportBuilder, t: StructureTensor) -> None:
    # transpositions (0 1), (1 2), (0 2) generate all permutations; each must flip the sign
    for name, order in (("skew(1,2)", (1, 0, 2)), ("skew(2,3)", (0, 2, 1)), ("skew(1,3)", (2, 1, 0))):
        b.check(name, _first_entry(t + t.rearranged(order)))


def verify_3lie(a: TernaryAlgebra) -> VerificationReport:
    """Alternating bracket plus the fundamental identity on every basis 5-tuple."""
    a._expect(Kind.THREE_LIE)
    br = a.t1
    b = ReportBuilder()
    _check_alternating(b, br)
    b.check_nested("fundamental-identity", fundamental_identity_terms(br), 5, a.dim)
    return _mark(a, b.build())


def fundamental_identity_terms(br: StructureTensor) -> list[Nest]:
    # [x1,x2,[x3,x4,x5]] - [[x1,x2,x3],x4,x5] - [x3,[x1,x2,x4],x5] - [x3,x4,[x1,x2,x5]]
    return [
        Nest(1, br, 2, br, (0, 1), (2, 3, 4)),
        Nest(-1, br, 0, br, (3, 4), (0, 1, 2)),
        Nest(-1, br, 1, br, (2, 4), (0, 1, 3)),
        Nest(-1, br, 2, br, (2, 3), (0, 1, 4)),
    ]


def prelie_identity_terms(p: StructureTensor) -> tuple[list[Nest], list[Nest]]:
    c = p.cyclic_sum()
    first = [
        Nest(1, p, 2, p, (0, 1), (2, 3, 4)),
        Nest(-1, p, 0, c, (3, 4), (0, 1, 2)),
        Nest(-1, p, 1, c, (2, 4), (0, 1, 3)),
        Nest(-1, p, 2, p, (2, 3), (0, 1, 4)),
    ]
    second = [
        Nest(1, p, 0, c, (3, 4), (0, 1, 2)),
        Nest(-1, p, 2, p, (0, 1), (2, 3, 4)),
        Nest(-1, p, 2, p, (1, 2), (0, 3, 4)),
        Nest(-1, p, 2, p, (2, 0), (1, 3, 4)),
    ]
    return first, second


def verify_3prelie(a: TernaryAlgebra) -> VerificationReport:
    """Skew-symmetry in the first two slots plus both five-variable identities."""
    a._expect(Kind.THREE_PRE_LIE)
    p = a.t1
    b = ReportBuilder()
    _check_skew12(b, "skew(1,2)", p)
    first, second = prelie_identity_terms(p)
    b.check_nested("prelie-1", first, 5, a.dim)
    b.check_nested("prelie-2", second, 5, a.dim)
    return _mark(a, b.build())


def horizontal_tensor(nw: StructureTensor, ne: StructureTensor) -> StructureTensor:
    # {x,y,z}^h = nw(x,y,z) + ne(x,y,z) - ne(y,x,z)
    return nw + ne - ne.rearranged((1, 0, 2))


def vertical_tensor(nw: StructureTensor, ne: StructureTensor) -> StructureTensor:
    # {x,y,z}^v = nw(x,y,z) + ne(z,x,y) - ne(z,y,x)
    return nw + ne.rearranged((2, 0, 1)) - ne.rearranged((2, 1, 0))


def dendriform_identity_terms(nw: StructureTensor, ne: StructureTensor) -> dict[str, list[Nest]]:
    """The six five-variable identities of a 3-L-dendriform algebra, as ``lhs - rhs``.

    Variables x1..x5 are numbered 0..4.
    """
    h = horizontal_tensor(nw, ne)
    v = vertical_tensor(nw, ne)
    c = h.cyclic_sum()
    return {
        # nw(x1,x2,nw(x3,x4,x5)) - nw(x3,x4,nw(x1,x2,x5))
        #   = nw([x1,x2,x3]^C,x4,x5) - nw([x1,x2,x4]^C,x3,x5)
        "ldend-2": [
            Nest(1, nw, 2, nw, (0, 1), (2, 3, 4)),
            Nest(-1, nw, 2, nw, (2, 3), (0, 1, 4)),
            Nest(-1, nw, 0, c, (3, 4), (0, 1, 2)),
            Nest(1, nw, 0, c, (2, 4), (0, 1, 3)),
        ],
        # nw(x1,x2,ne(x5,x3,x4)) - ne(x5,x3,{x1,x2,x4}^h)
        #   = ne(x5,[x1,x2,x3]^C,x4) + ne({x1,x2,x5}^v,x3,x4)
        "ldend-3": [
            Nest(1, nw, 2, ne, (0, 1), (4, 2, 3)),
            Nest(-1, ne, 2, h, (4, 2), (0, 1, 3)),
            Nest(-1, ne, 1, c, (4, 3), (0, 1, 2)),
            Nest(-1, ne, 0, v, (2, 3), (0, 1, 4)),
        ],
        # ne(x5,x1,{x2,x3,x4}^h) - nw(x2,x3,ne(x5,x1,x4))
        #   = ne({x1,x2,x5}^v,x3,x4) - ne({x1,x3,x5}^v,x2,x4)
        "ldend-4": [
            Nest(1, ne, 2, h, (4, 0), (1, 2, 3)),
            Nest(-1, nw, 2, ne, (1, 2), (4, 0, 3)),
            Nest(-1, ne, 0, v, (2, 3), (0, 1, 4)),
            Nest(1, ne, 0, v, (1, 3), (0, 2, 4)),
        ],
        # nw([x1,x2,x3]^C,x4,x5) = cyclic_{1,2,3} nw(x1,x2,nw(x3,x4,x5))
        "ldend-5": [
            Nest(1, nw, 0, c, (3, 4), (0, 1, 2)),
            Nest(-1, nw, 2, nw, (0, 1), (2, 3, 4)),
            Nest(-1, nw, 2, nw, (1, 2), (0, 3, 4)),
            Nest(-1, nw, 2, nw, (2, 0), (1, 3, 4)),
        ],
        # ne(x5,[x1,x2,x3]^C,x4) = cyclic_{1,2,3} nw(x1,x2,ne(x5,x3,x4))
        "ldend-6": [
            Nest(1, ne, 1, c, (4, 3), (0, 1, 2)),
            Nest(-1, nw, 2, ne, (0, 1), (4, 2, 3)),
            Nest(-1, nw, 2, ne, (1, 2), (4, 0, 3)),
            Nest(-1, nw, 2, ne, (2, 0), (4, 1, 3)),
        ],
        # nw(x1,x2,ne(x5,x3,x4)) + ne(x5,x1,{x2,x3,x4}^h)
        #   = ne(x5,x2,{x1,x3,x4}^h) + ne({x1,x2,x5}^v,x3,x4)
        "ldend-7": [
            Nest(1, nw, 2, ne, (0, 1), (4, 2, 3)),
            Nest(1, ne, 2, h, (4, 0), (1, 2, 3)),
            Nest(-1, ne, 2, h, (4, 1), (0, 2, 3)),
            Nest(-1, ne, 0, v, (2, 3), (0, 1, 4)),
        ],
    }


def verify_3ldendriform(a: TernaryAlgebra) -> VerificationReport:
    """``nw`` skew in its first two slots plus the six five-variable identities."""
    a._expect(Kind.THREE_L_DENDRIFORM)
    b = ReportBuilder()
    _check_skew12(b, "ldend-1", a.t1)
    for name, terms in dendriform_identity_terms(a.t1, a.t2).items():
        b.check_nested(name, terms, 5, a.dim)
    return _mark(a, b.build())


_VERIFIERS = {
    Kind.THREE_LIE: verify_3lie,
    Kind.THREE_PRE_LIE: verify_3prelie,
    Kind.THREE_L_DENDRIFORM: verify_3ldendriform,
}


def verify(a: TernaryAlgebra) -> VerificationReport:
    """Run the verifier matching ``a.kind``."""
    return _VERIFIERS[a.kind](a)


def ensure_verified(a: TernaryAlgebra, kind: Kind | None = None) -> TernaryAlgebra:
    """Check kind and run the verifier unless ``a`` already passed; raise on failure."""
    if kind is not None:
        a._expect(kind)
    if not a.verified:
        report = verify(a)
        if not report.passed:
            raise AlgebraError(f"input {a.kind.value} algebra does not verify: "
                               f"{report.violations[0].describe()}")
    return a


def horizontal_prelie(a: TernaryAlgebra) -> TernaryAlgebra:
    ensure_verified(a, Kind.THREE_L_DENDRIFORM)
    return TernaryAlgebra.three_prelie(horizontal_tensor(a.t1, a.t2))


def vertical_prelie(a: TernaryAlgebra) -> TernaryAlgebra:
    ensure_verified(a, Kind.THREE_L_DENDRIFORM)
    return TernaryAlgebra.three_prelie(vertical_tensor(a.t1, a.t2))


def commutator_3lie(a: TernaryAlgebra) -> TernaryAlgebra:
    ensure_verified(a, Kind.THREE_L_DENDRIFORM)
    return TernaryAlgebra.three_lie(horizontal_tensor(a.t1, a.t2).cyclic_sum())


def sub_adjacent_3lie(a: TernaryAlgebra) -> TernaryAlgebra:
    ensure_verified(a, Kind.THREE_PRE_LIE)
    return TernaryAlgebra.three_lie(a.t1.cyclic_sum())


def embed_prelie(a: TernaryAlgebra) -> TernaryAlgebra:
    """A 3-pre-Lie algebra viewed as a 3-L-dendriform one with ``ne = 0``."""
    a._expect(Kind.THREE_PRE_LIE)
    return TernaryAlgebra.three_ldendriform(a.t1, StructureTensor.zero(a.dim))
