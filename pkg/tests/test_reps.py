import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antialg import reps
from antialg.exactla import Matrix, coords_in_span
from antialg.reps import (
    GradedMatrix,
    RepDef,
    RepError,
    block_parity,
    casimir_ideal_characterization,
    check_rep,
    direct_sum,
    induce_superrep,
    jordan_product,
    k3_osp_relations,
    super_commutator,
    zero_rep,
)
from antialg.search import _consistent, _half_action_solutions, _idempotent, search_k3_reps
from antialg.superalg import EVEN, ODD, AlgebraDef, Element, Symbol, k3

half = Fraction(1, 2)
eps, a = Symbol("eps", EVEN), Symbol("a", ODD)


def eps_a_algebra():
    """Sub-antialgebra of K3 spanned by eps and a."""
    E = Element.basis
    table = {(eps, eps): E(eps), (eps, a): E(a, half), (a, eps): E(a, half), (a, a): Element()}
    return AlgebraDef("eps-a", (eps, a), table, profile="antialgebra")


def eps_a_rep():
    dims = (1, 2)
    E = GradedMatrix.build([[1, 0, 0], [0, 0, 0], [0, 0, 0]], dims)
    A = GradedMatrix.build([[0, 2, -3], [1, 0, 0], [5, 0, 0]], dims)
    return RepDef(eps_a_algebra(), {eps: E, a: A}, dims)


def random_odd(rng, dims):
    n = sum(dims)
    rows = [[rng.randint(-3, 3) if (i >= dims[0]) != (j >= dims[0]) else 0 for j in range(n)] for i in range(n)]
    return GradedMatrix.build(rows, dims, ODD)


def test_block_parity():
    assert block_parity(Matrix([[1, 0], [0, 0]], cols=2), (1, 1)) == EVEN
    assert block_parity(Matrix([[0, 1], [0, 0]], cols=2), (1, 1)) == ODD
    assert block_parity(Matrix([[1, 1], [0, 0]], cols=2), (1, 1)) == "mixed"
    assert block_parity(Matrix.zeros(2, 2), (1, 1)) is None
    with pytest.raises(RepError):
        GradedMatrix.build([[1, 1], [0, 0]], (1, 1))


def test_jordan_product_and_commutator():
    dims = (1, 1)
    x = GradedMatrix.build([[0, 1], [0, 0]], dims)
    y = GradedMatrix.build([[0, 0], [1, 0]], dims)
    # odd-odd: (XY - YX)/2 and XY + YX
    assert jordan_product(x, y).matrix.tolist() == [[half, 0], [0, -half]]
    assert super_commutator(x, y).matrix.tolist() == [[1, 0], [0, 1]]


def test_eps_a_rep_and_induction():
    rep = eps_a_rep()
    assert check_rep(rep).passed
    ind = induce_superrep(rep)
    assert ind.report.passed
    assert ind.adjoint.dims == (1, 1)


def test_direct_sums_stay_reps():
    rep = eps_a_rep()
    zero = zero_rep(rep.algebra, (2, 1))
    for r in (direct_sum(rep, rep), direct_sum(rep, zero), direct_sum(zero, rep)):
        assert check_rep(r).passed
        assert induce_superrep(r).report.passed


def test_non_rep_rejected():
    rep = eps_a_rep()
    # relations are linear in A, so break E instead: EA + AE = 2A != A
    bad = RepDef(rep.algebra, {eps: GradedMatrix.identity(rep.dims), a: rep.assignment[a]}, rep.dims)
    assert not check_rep(bad).passed
    with pytest.raises(RepError):
        induce_superrep(bad)


@pytest.mark.parametrize("dims", [(0, 1), (1, 0), (1, 1), (2, 3)])
def test_zero_reps_of_k3(dims):
    rep = zero_rep(k3(), dims)
    assert check_rep(rep).passed
    assert induce_superrep(rep).report.passed
    e, x, y = (rep.assignment[s] for s in k3().basis)
    r = k3_osp_relations(x, y, e)
    assert r.info["phase1"] == "pass" and r.info["phase2"] == "pass"


def test_phase1_failure_is_reported():
    dims = (1, 1)
    A = GradedMatrix.build([[0, 1], [0, 0]], dims)
    B = GradedMatrix.build([[0, 0], [1, 0]], dims)
    E = GradedMatrix.identity(dims)
    r = k3_osp_relations(A, B, E)
    assert r.info["phase1"] == "input is not a K3 representation"
    assert r.info["phase2"] == "not run"


@pytest.mark.parametrize("seed", range(5))
def test_induced_scale_is_forced(seed):
    """With Y' = s Y the bracket-compatibility [Y'1 Y'2 + Y'2 Y'1, Y'3] = s rho(y1(y2 y3) + y2(y1 y3))
    holds for arbitrary odd matrices exactly when s^2 = 1/4."""
    rng = random.Random(seed)
    dims = (2, 2)
    Y = [random_odd(rng, dims) for _ in range(3)]

    def rho_pair(u, v):  # rho(y_u y_v) for the even product
        return jordan_product(Y[u], Y[v])

    def rho_chain(u, v, w):  # rho(y_u (y_v y_w))
        return jordan_product(Y[u], rho_pair(v, w))

    rhs_core = rho_chain(0, 1, 2) + rho_chain(1, 0, 2)

    def compatible(s):
        Z = [y.scale(s) for y in Y]
        lhs = super_commutator(super_commutator(Z[0], Z[1]), Z[2])
        return lhs == rhs_core.scale(s)

    c = super_commutator(super_commutator(Y[0], Y[1]), Y[2])
    assume_nonzero = not c.is_zero()
    assert assume_nonzero
    assert compatible(reps.INDUCED_SCALE)
    assert compatible(-half)
    assert not compatible(1)
    assert not compatible(Fraction(1, 4))


def test_casimir_stub():
    assert "Casimir" in casimir_ideal_characterization()


# -- search oracle -----------------------------------------------------------------

def test_search_finds_no_nonzero_k3_rep():
    result = search_k3_reps(3)
    assert result.found == []
    for entry in result.entries:
        if sum(entry.ranks):
            assert entry.trace_obstructed and entry.solutions == 0
    assert any(e.searched > 1 for e in result.entries)


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_half_action_solution_space(d0, d1, data):
    if d0 + d1 == 0:
        return
    r0 = data.draw(st.integers(0, d0))
    r1 = data.draw(st.integers(0, d1))
    dims = (d0, d1)
    e = _idempotent(dims, (r0, r1))
    for x in _half_action_solutions(dims, e):
        assert x @ e + e @ x == x
        assert block_parity(x, dims) == ODD
    # dimension count: odd slots joining the 1- and 0-eigenspaces of E
    expected = r0 * (d1 - r1) + (d0 - r0) * r1
    assert len(_half_action_solutions(dims, e)) == 2 * expected


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_consistent_matches_rational_solve(columns, target):
    exact = coords_in_span([Fraction(v) for v in target], [[Fraction(v) for v in c] for c in columns])
    assert _consistent(columns, target) == (exact is not None)


@given(st.integers(0, 10))
def test_trace_obstruction(seed):
    rng = random.Random(seed)
    A, B = random_odd(rng, (2, 2)), random_odd(rng, (2, 2))
    c = (A @ B - B @ A).matrix
    assert sum(c[i, i] for i in range(4)) == 0


@pytest.mark.slow
def test_search_to_dimension_six():
    result = search_k3_reps(6)
    assert result.found == []
    assert all(e.trace_obstructed for e in result.entries if sum(e.ranks))
