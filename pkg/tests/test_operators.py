from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from ternalg.fixtures import (
    fix_d,
    fix_h4,
    fix_l4,
    fix_p1,
    fix_p2,
    fix_r1,
    fix_r2,
    fix_r2_corrected,
    plane_pair,
)
from ternalg.linalg import Matrix, inverse
from ternalg.operators import (
    BinaryLieAlgebra,
    BudgetExceeded,
    SkewBilinearForm,
    check_O_3lie,
    check_O_3prelie,
    check_rb,
    check_symplectic,
    closed_forms,
    find_symplectic,
    ldend_from_O,
    ldend_from_rb,
    ldend_from_rb_pair,
    ldend_from_symplectic,
    morphism_report,
    prelie_from_O,
    prelie_prime_from_symplectic,
    rb_pair_prelie,
    search_rb,
    trace_induced_3lie,
    trace_rb_pair_ldend,
    transport,
)
from ternalg.representations import PairMap, PreLieRep, adjoint_3lie, adjoint_prelie
from ternalg.structures import (
    AlgebraError,
    StructureTensor,
    TernaryAlgebra,
    embed_prelie,
    horizontal_tensor,
    verify,
)


def _rows(m: Matrix):
    return m.tolist()


def _single_entry_prelie(key, out):
    return TernaryAlgebra.three_prelie(
        StructureTensor.from_table(4, {key: tuple(int(m == out) for m in range(4))}, skew="12"))


# ---------------------------------------------------------------------------
# Rota-Baxter operators
# ---------------------------------------------------------------------------

def test_r1_is_rota_baxter_on_p1():
    assert check_rb(fix_p1(), fix_r1()).passed
    assert oracle.is_rota_baxter(fix_p1().t1, _rows(fix_r1()))


def test_printed_r2_is_not_rota_baxter_on_p2():
    report = check_rb(fix_p2(), fix_r2())
    assert not report.passed
    v = report.violations[0]
    assert v.indices == (0, 2, 2)
    assert v.residual == (-2, 0, 0, 0)
    assert not oracle.is_rota_baxter(fix_p2().t1, _rows(fix_r2()))


def test_corrected_r2_is_rota_baxter_on_p2():
    assert check_rb(fix_p2(), fix_r2_corrected()).passed
    assert oracle.is_rota_baxter(fix_p2().t1, _rows(fix_r2_corrected()))


def test_rb_rejects_dendriform_input():
    with pytest.raises(AlgebraError):
        check_rb(fix_d(), Matrix.identity(4))


def test_search_with_zero_coefficients_returns_zero_operator():
    assert search_rb(fix_p2(), [0]) == [Matrix.zeros(4, 4)]


def test_search_finds_r1_on_its_support():
    support = [(r, c) for r in range(4) for c in range(4) if fix_r1()[r, c]]
    found = search_rb(fix_p1(), [0, 1], support)
    assert fix_r1() in found


def test_search_on_r2_support_finds_corrected_operator_only():
    support = [(r, c) for r in range(4) for c in range(4) if fix_r2()[r, c]]
    found = search_rb(fix_p2(), [-1, 0, 1], support)
    assert fix_r2_corrected() in found
    assert fix_r2() not in found
    # search results agree with the dense oracle, in both directions
    assert all(oracle.is_rota_baxter(fix_p2().t1, _rows(m)) for m in found)
    assert len(found) == 21


def test_search_is_deterministic_and_budgeted():
    support = [(0, 1), (1, 0)]
    assert search_rb(fix_p2(), [-1, 0, 1], support) == search_rb(fix_p2(), [-1, 0, 1], support)
    with pytest.raises(BudgetExceeded):
        search_rb(fix_p2(), [-1, 0, 1], budget=1000)


def test_rb_equals_O_operator_on_adjoint():
    for a, R in ((fix_p1(), fix_r1()), (fix_p2(), fix_r2_corrected())):
        assert check_O_3prelie(a, adjoint_prelie(a), R).passed
        d1 = ldend_from_rb(a, R)
        d2 = ldend_from_O(a, adjoint_prelie(a), R)
        assert d1.t1 == d2.t1 and d1.t2 == d2.t2
        assert verify(d1).passed


def test_rb_outputs_pass_dense_dendriform_oracle():
    d = ldend_from_rb(fix_p2(), fix_r2_corrected())
    assert oracle.ldend_failures(d.t1, d.t2) == set()


def test_ldend_from_rb_refuses_printed_r2():
    with pytest.raises(AlgebraError, match="rota-baxter"):
        ldend_from_rb(fix_p2(), fix_r2())


def test_raw_rb_formula_with_printed_r2_differs_from_fixture_table():
    p, R = fix_p2(), fix_r2()
    nw, ne = p.t1.precompose(R, R, None), p.t1.precompose(None, R, R)
    d = fix_d()
    assert nw != d.t1 and ne != d.t2


# ---------------------------------------------------------------------------
# O-operators
# ---------------------------------------------------------------------------

def test_zero_operator_is_O_operator():
    a = fix_l4()
    assert check_O_3lie(a, adjoint_3lie(a), Matrix.zeros(4, 4)).passed
    p = fix_p2()
    assert check_O_3prelie(p, adjoint_prelie(p), Matrix.zeros(4, 4)).passed


def test_identity_is_not_O_operator_on_l4_adjoint():
    a = fix_l4()
    report = check_O_3lie(a, adjoint_3lie(a), Matrix.identity(4))
    assert not report.passed
    (i, j, k), res = report.violations[0].indices, report.violations[0].residual
    lhs = a.t1.get(i, j, k)
    assert tuple(res) == tuple(-2 * x for x in lhs)


def test_identity_on_adjoint_fails_for_nonzero_products():
    # {x,y,z} = l(x,y)z - r(x,z)y + r(y,z)x = 3{x,y,z} on the adjoint pair
    p = fix_p2()
    report = check_O_3prelie(p, adjoint_prelie(p), Matrix.identity(4))
    assert not report.passed
    idx, res = report.violations[0].indices, report.violations[0].residual
    assert tuple(res) == tuple(-2 * x for x in p.t1.get(*idx))


def test_identity_is_O_operator_for_left_part_of_compatible_structure():
    p = fix_p2()
    d = embed_prelie(p)
    rep = PreLieRep(adjoint_prelie(p).l, PairMap.zero(4, 4, skew=False))
    assert check_O_3prelie(p, rep, Matrix.identity(4)).passed
    out = ldend_from_O(p, rep, Matrix.identity(4))
    assert out.t1 == d.t1 and out.t2 == d.t2
    assert horizontal_tensor(out.t1, out.t2) == p.t1


def test_search_result_is_O_operator_on_l4_adjoint():
    a = fix_l4()
    proj, _ = plane_pair()
    assert proj in search_rb(a, [0, 1], [(0, 0), (1, 1)])
    assert check_O_3lie(a, adjoint_3lie(a), proj).passed


def test_prelie_from_O_is_morphism():
    a = fix_l4()
    proj, rot = plane_pair()
    for T in (proj, rot):
        out = prelie_from_O(a, adjoint_3lie(a), T)
        assert verify(out).passed
        assert morphism_report(out.t1.cyclic_sum(), a.t1, T).passed


def test_ldend_from_O_homomorphism_and_transport():
    p = fix_p2()
    T = fix_r2_corrected()
    d = ldend_from_O(p, adjoint_prelie(p), T)
    assert verify(d).passed
    h = horizontal_tensor(d.t1, d.t2)
    assert morphism_report(h, p.t1, T).passed
    # T is invertible, so the transported horizontal product is the source product
    assert transport(h, T) == p.t1


def test_transport_round_trip():
    T = fix_r2_corrected()
    p = fix_p2().t1
    assert transport(transport(p, T), inverse(T)) == p


def test_O_operator_shape_mismatch():
    with pytest.raises(AlgebraError):
        check_O_3lie(fix_l4(), adjoint_3lie(fix_l4()), Matrix.zeros(3, 3))


# ---------------------------------------------------------------------------
# commuting Rota-Baxter pairs
# ---------------------------------------------------------------------------

def test_plane_pair_on_l4():
    a = fix_l4()
    r1, r2 = plane_pair()
    assert r1.commutator(r2).is_zero()
    assert check_rb(a, r1).passed and check_rb(a, r2).passed
    middle = rb_pair_prelie(a, r1)
    assert verify(middle).passed
    assert check_rb(middle, r2).passed
    d = ldend_from_rb_pair(a, r1, r2)
    assert verify(d).passed
    assert d.t1.nnz() > 0
    p = r1 @ r2
    assert d.t1 == a.t1.precompose(p, p, None)
    assert d.t2 == a.t1.precompose(r1, p, r2)


def test_rb_pair_rejects_non_commuting():
    a = fix_l4()
    r1, _ = plane_pair()
    shear = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]], 4)
    with pytest.raises(AlgebraError, match="commuting"):
        ldend_from_rb_pair(a, r1, shear)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=2, max_size=2), st.lists(st.integers(-1, 1), min_size=4, max_size=4))
def test_lemma_holds_for_plane_operators(diag, block):
    # operators acting on span(e1,e2) and killing e3,e4 are RB on l4 and pairwise commute when diagonal/rotational
    a = fix_l4()
    r1 = Matrix([[diag[0], 0, 0, 0], [0, diag[0], 0, 0], [0] * 4, [0] * 4], 4)
    r2 = Matrix([[block[0], block[1], 0, 0], [block[2], block[3], 0, 0], [0] * 4, [0] * 4], 4)
    assert check_rb(a, r1).passed and check_rb(a, r2).passed
    assert check_rb(rb_pair_prelie(a, r1), r2).passed
    assert verify(ldend_from_rb_pair(a, r1, r2)).passed


# ---------------------------------------------------------------------------
# trace-induced brackets
# ---------------------------------------------------------------------------

def test_trace_induced_bracket_on_h4():
    g, tau = fix_h4()
    a = trace_induced_3lie(g, tau)
    assert verify(a).passed
    assert a.t1.get(0, 1, 3) == (0, 0, 1, 0)
    assert oracle.failing_fundamental(a.t1) == []


def test_center_covector_is_not_a_trace():
    g, _ = fix_h4()
    with pytest.raises(AlgebraError, match="trace"):
        trace_induced_3lie(g, (0, 0, 1, 0))


def test_trivial_trace_cases():
    g, _ = fix_h4()
    assert trace_induced_3lie(g, (0, 0, 0, 0)).t1.is_zero()
    abelian = BinaryLieAlgebra(2, {})
    assert trace_induced_3lie(abelian, (1, 1)).t1.is_zero()


def test_heisenberg_traces_give_zero_bracket():
    heis = BinaryLieAlgebra.from_table(3, {(0, 1): (0, 0, 1)})
    for tau in ((1, 0, 0), (0, 1, 0)):
        assert trace_induced_3lie(heis, tau).t1.is_zero()
    with pytest.raises(AlgebraError):
        trace_induced_3lie(heis, (0, 0, 1))


def test_binary_lie_algebra_checks_jacobi():
    with pytest.raises(AlgebraError, match="Jacobi"):
        BinaryLieAlgebra.from_table(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, 0, 1)})


def test_trace_rb_pair_formula_matches_general_construction():
    g, tau = fix_h4()
    r1, r2 = plane_pair()
    direct = trace_rb_pair_ldend(g, tau, r1, r2)
    general = ldend_from_rb_pair(trace_induced_3lie(g, tau), r1, r2)
    assert direct.t1 == general.t1 and direct.t2 == general.t2
    assert direct.t1.nnz() > 0
    assert verify(direct).passed


# ---------------------------------------------------------------------------
# symplectic forms
# ---------------------------------------------------------------------------

def test_zero_form_is_degenerate():
    report = check_symplectic(fix_p2(), SkewBilinearForm(Matrix.zeros(4, 4)))
    assert not report.passed
    assert report.reason == "degenerate"
    assert not report.violations


def test_form_must_be_skew():
    with pytest.raises(AlgebraError):
        SkewBilinearForm(Matrix.identity(2))


def _closed_by_oracle(a, g) -> bool:
    p = oracle.evaluator(a.t1)
    n = a.dim

    def B(x, y):
        return sum(x[i] * g[i, j] * y[j] for i in range(n) for j in range(n))

    def c(x, y, z):
        return oracle.add(p(x, y, z), p(y, z, x), p(z, x, y))

    for idx in itertools.product(range(n), repeat=4):
        x, y, z, w = (oracle.unit(n, i) for i in idx)
        if B(p(x, y, z), w) - B(z, c(x, y, w)) - B(y, p(w, x, z)) + B(x, p(w, y, z)):
            return False
    return True


@pytest.mark.parametrize("make", [fix_p2, fix_p1], ids=["P2", "P1"])
def test_closed_forms_are_closed(make):
    a = make()
    space = closed_forms(a)
    for v in space.basis:
        g = Matrix.from_flat(v, 4, 4)
        assert _closed_by_oracle(a, g)
        assert check_symplectic(a, SkewBilinearForm(g)).violations == ()


def test_fixtures_have_no_small_symplectic_form():
    assert closed_forms(fix_p2()).dim == 1
    assert find_symplectic(fix_p2()) is None
    assert find_symplectic(fix_p1()) is None


def test_symplectic_example_with_valid_output():
    a = _single_entry_prelie((0, 1, 0), 1)
    B = find_symplectic(a, 1)
    assert check_symplectic(a, B).passed
    d = ldend_from_symplectic(a, B)
    assert verify(d).passed
    assert horizontal_tensor(d.t1, d.t2) == a.t1
    assert verify(prelie_prime_from_symplectic(a, B)).passed
    # the defining relations hold exactly
    c = a.t1.cyclic_sum()
    for x, y, z, w in itertools.product(range(4), repeat=4):
        assert B.rpair(d.t1.get(x, y, z), w) == B.pair(z, c.get(x, y, w))
        assert B.rpair(d.t2.get(x, y, z), w) == -B.pair(x, a.t1.get(w, y, z))


def test_symplectic_output_keeps_compatibility_even_when_identities_fail():
    a = _single_entry_prelie((0, 1, 0), 0)
    B = find_symplectic(a, 1)
    assert check_symplectic(a, B).passed
    d = ldend_from_symplectic(a, B)
    assert horizontal_tensor(d.t1, d.t2) == a.t1
    assert set(verify(d).failed_identities()) == {"ldend-3", "ldend-4", "ldend-7"}
    assert oracle.ldend_failures(d.t1, d.t2) == {"ldend-3", "ldend-4", "ldend-7"}


def test_symplectic_requires_nondegenerate_form():
    a = _single_entry_prelie((0, 1, 0), 1)
    with pytest.raises(AlgebraError, match="symplectic"):
        ldend_from_symplectic(a, SkewBilinearForm(Matrix.zeros(4, 4)))


def test_random_forms_compatibility():
    # every symplectic pair found among single-entry products keeps the horizontal product
    count = 0
    keys = [(i, j, k) for i in range(4) for j in range(i + 1, 4) for k in range(4)]
    for key, out in itertools.islice(itertools.product(keys, range(4)), 0, 40):
        a = _single_entry_prelie(key, out)
        if not verify(a).passed:
            continue
        B = find_symplectic(a, 1)
        if B is None:
            continue
        d = ldend_from_symplectic(a, B)
        assert horizontal_tensor(d.t1, d.t2) == a.t1
        count += 1
    assert count > 0
    assert Fraction(count) > 0
