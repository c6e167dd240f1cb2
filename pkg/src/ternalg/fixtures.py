"""The worked examples as in-memory objects (basis e1..e4 is indices 0..3)."""

from __future__ import annotations

from .linalg import Matrix
from .operators import BinaryLieAlgebra
from .structures import StructureTensor, TernaryAlgebra


def _e(n: int, *terms: tuple[int, int]) -> tuple[int, ...]:
    """Coordinate vector from ``(coefficient, 1-based basis index)`` pairs."""
    out = [0] * n
    for c, i in terms:
        out[i - 1] += c
    return tuple(out)


def _key(*one_based: int) -> tuple[int, ...]:
    return tuple(i - 1 for i in one_based)


def fix_l4() -> TernaryAlgebra:
    """4-dim simple 3-Lie algebra: [e1,e2,e3]=e4, [e1,e2,e4]=e3, [e1,e3,e4]=e2, [e2,e3,e4]=e1."""
    table = {
        _key(1, 2, 3): _e(4, (1, 4)),
        _key(1, 2, 4): _e(4, (1, 3)),
        _key(1, 3, 4): _e(4, (1, 2)),
        _key(2, 3, 4): _e(4, (1, 1)),
    }
    return TernaryAlgebra.three_lie(StructureTensor.from_table(4, table, skew="all"))


def fix_p1() -> TernaryAlgebra:
    """{e1,e2,e3} = -{e1,e2,e4} = e1+e2."""
    table = {
        _key(1, 2, 3): _e(4, (1, 1), (1, 2)),
        _key(1, 2, 4): _e(4, (-1, 1), (-1, 2)),
    }
    return TernaryAlgebra.three_prelie(StructureTensor.from_table(4, table, skew="12"))


def fix_p2() -> TernaryAlgebra:
    table = {
        _key(1, 2, 3): _e(4, (1, 4)),
        _key(1, 2, 4): _e(4, (1, 3)),
        _key(1, 3, 3): _e(4, (1, 2)),
        _key(1, 4, 4): _e(4, (-1, 2)),
        _key(2, 3, 3): _e(4, (1, 1)),
        _key(2, 4, 4): _e(4, (-1, 1)),
    }
    return TernaryAlgebra.three_prelie(StructureTensor.from_table(4, table, skew="12"))


def _operator(n: int, images: dict[int, tuple[int, ...]]) -> Matrix:
    """Matrix whose column j is the image of e_{j+1}; missing images are zero."""
    cols = [images.get(j + 1, (0,) * n) for j in range(n)]
    return Matrix.from_columns(cols, n)


def fix_r1() -> Matrix:
    """R(e1)=e1+e2, R(e2)=e3+e4, R(e3)=R(e4)=0 (Rota-Baxter on fix_p1)."""
    return _operator(4, {1: _e(4, (1, 1), (1, 2)), 2: _e(4, (1, 3), (1, 4))})


def fix_r2() -> Matrix:
    """R(e1)=e2, R(e2)=-e1, R(e3)=e4, R(e4)=e3 (Rota-Baxter on fix_p2)."""
    return _operator(4, {1: _e(4, (1, 2)), 2: _e(4, (-1, 1)), 3: _e(4, (1, 4)), 4: _e(4, (1, 3))})


def fix_d() -> TernaryAlgebra:
    """The 3-L-dendriform table induced on fix_p2 by fix_r2, entered by hand."""
    nw = {
        _key(1, 2, 3): _e(4, (1, 4)),
        _key(1, 2, 4): _e(4, (1, 3)),
    }
    ne = {
        _key(1, 1, 3): _e(4, (1, 3)),
        _key(2, 2, 3): _e(4, (1, 3)),
        _key(1, 1, 4): _e(4, (1, 4)),
        _key(2, 2, 4): _e(4, (1, 4)),
        _key(1, 3, 3): _e(4, (-1, 2)),
        _key(1, 4, 4): _e(4, (1, 2)),
        _key(2, 3, 3): _e(4, (-1, 1)),
        _key(2, 4, 4): _e(4, (1, 1)),
    }
    return TernaryAlgebra.three_ldendriform(
        StructureTensor.from_table(4, nw, skew="12"), StructureTensor(4, ne))


ALGEBRAS = {"L4": fix_l4, "P1": fix_p1, "P2": fix_p2, "D": fix_d}
OPERATORS = {"R1": fix_r1, "R2": fix_r2}


def fix_r2_corrected() -> Matrix:
    """R(e1)=e2, R(e2)=e1, R(e3)=e4, R(e4)=e3: a genuine Rota-Baxter operator on fix_p2."""
    return _operator(4, {1: _e(4, (1, 2)), 2: _e(4, (1, 1)), 3: _e(4, (1, 4)), 4: _e(4, (1, 3))})


def plane_pair() -> tuple[Matrix, Matrix]:
    """Commuting Rota-Baxter pair on fix_l4: projection onto span(e1,e2) and a rotation of that plane."""
    proj = _operator(4, {1: _e(4, (1, 1)), 2: _e(4, (1, 2))})
    rot = _operator(4, {1: _e(4, (1, 2)), 2: _e(4, (-1, 1))})
    return proj, rot


def fix_h4() -> tuple[BinaryLieAlgebra, tuple[int, ...]]:
    """Heisenberg algebra [e1,e2]=e3 plus a central e4, with the trace tau = e4*."""
    return BinaryLieAlgebra.from_table(4, {_key(1, 2): _e(4, (1, 3))}), _e(4, (1, 4))


OPERATORS["R2c"] = fix_r2_corrected
