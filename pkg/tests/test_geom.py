from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antialg import geom
from antialg.axioms import check_axiom, check_profile
from antialg.geom import (
    P,
    Q,
    TAU,
    GeomError,
    SuperFunction,
    abracket,
    biderivation,
    bivector_in_span,
    calibrate,
    euler_degree,
    extract_table,
    invariant_bivectors,
    lambda_bivector,
    lie_derivative_residual,
    parse_superfunction,
    pbracket,
    poisson_bivector,
)
from antialg.superalg import builtin, k3, sign

half = Fraction(1, 2)
F = parse_superfunction


def bit(f):
    return 0 if f.parity() == "even" else 1


# homogeneous superfunctions with small Laurent exponents
monomials = st.builds(
    lambda i, j, t, c: SuperFunction.monomial(i, j, t, c),
    st.integers(-2, 3), st.integers(-2, 3), st.integers(0, 1),
    st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool),
)


@st.composite
def homogeneous(draw):
    t = draw(st.integers(0, 1))
    terms = draw(st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3),
                                    st.integers(-3, 3).filter(bool)), min_size=1, max_size=3))
    f = SuperFunction()
    for i, j, c in terms:
        f = f + SuperFunction.monomial(i, j, t, c)
    return f if f else SuperFunction.monomial(0, 0, t)


def test_worked_brackets():
    assert pbracket(P, Q) == SuperFunction.const(1)
    assert pbracket(P * P, Q) == P * 2
    assert abracket(TAU, TAU) == TAU
    assert abracket(TAU, Q) == Q * half
    assert abracket(Q, P) == TAU * half


def test_euler_degree():
    assert euler_degree(F("p^2 q^-1")) == 1
    assert euler_degree(F("t p")) == 2
    assert euler_degree(F("3 p q + q^2")) == 2
    with pytest.raises(GeomError):
        euler_degree(F("p + q^2"))
    with pytest.raises(GeomError):
        euler_degree(SuperFunction())


def test_mixed_parity_rejected():
    mixed = F("p + t")
    assert mixed.parity() == "mixed"
    with pytest.raises(GeomError):
        pbracket(mixed, P)
    with pytest.raises(GeomError):
        abracket(P, mixed)


@pytest.mark.parametrize("bad", ["", "p +", "t^2", "t t", "1/0 p", "2 3 p", "x"])
def test_parser_errors(bad):
    with pytest.raises(GeomError):
        parse_superfunction(bad)


def test_parser_examples():
    assert F("3/2 p^2 q^-1 t - q") == SuperFunction.monomial(2, -1, 1, half * 3) - Q
    assert F("-p") == -P
    assert F("p q p") == SuperFunction.monomial(2, 1)


@given(st.lists(monomials, max_size=4))
def test_parser_round_trip(terms):
    f = SuperFunction()
    for m in terms:
        f = f + m
    if not f:
        return
    assert parse_superfunction(str(f)) == f


def test_calibration_unique():
    cands = calibrate()
    assert len(cands) == 16
    accepted = [c for c in cands if c.accepted]
    assert len(accepted) == 1
    (c,) = accepted
    assert (c.sigma, c.signs) == (geom.SIGMA_P, geom.LAMBDA_SIGNS)
    # the other sigma still gives a Lie superalgebra on quadratics; equivariance decides
    assert any(c.jacobi_ok and c.sigma != geom.SIGMA_P for c in cands)


def test_invariant_bivectors():
    dims = [len(invariant_bivectors(d)) for d in range(3)]
    assert dims == [1, 2, 2]
    basis = invariant_bivectors(2)
    assert bivector_in_span(poisson_bivector(), basis)
    assert bivector_in_span(lambda_bivector(), basis)
    assert not bivector_in_span(poisson_bivector(-geom.SIGMA_P), basis)
    with pytest.raises(GeomError):
        invariant_bivectors(-1)


@pytest.mark.parametrize("H", geom.hamiltonians(), ids=str)
@given(homogeneous(), homogeneous())
def test_bivectors_invariant(H, f, g):
    assert not lie_derivative_residual(H, poisson_bivector(), f, g)
    assert not lie_derivative_residual(H, lambda_bivector(), f, g)


# -- dual routes: explicit formula vs bivector contraction ----------------------------

@given(homogeneous(), homogeneous())
def test_pbracket_is_poisson_bivector(f, g):
    assert pbracket(f, g) == biderivation(poisson_bivector(), f, g)


@given(homogeneous(), homogeneous())
def test_abracket_is_lambda_contraction(f, g):
    assert abracket(f, g) == biderivation(lambda_bivector(), f, g) * Fraction(-sign(bit(f)), 2)


# -- algebraic properties ---------------------------------------------------------

@given(homogeneous(), homogeneous())
def test_poisson_skew(f, g):
    assert pbracket(f, g) == -pbracket(g, f) * sign(bit(f) * bit(g))


@given(homogeneous(), homogeneous(), homogeneous())
def test_poisson_jacobi_and_leibniz(f, g, h):
    a, b = bit(f), bit(g)
    assert pbracket(f, pbracket(g, h)) == (pbracket(pbracket(f, g), h)
                                           + pbracket(g, pbracket(f, h)) * sign(a * b))
    assert pbracket(f, g * h) == pbracket(f, g) * h + g * pbracket(f, h) * sign(a * b)


@given(homogeneous(), homogeneous())
def test_abracket_supercommutative_in_shifted_parity(f, g):
    a, b = bit(f) + 1, bit(g) + 1
    assert abracket(f, g) == abracket(g, f) * sign(a * b)


@given(homogeneous(), homogeneous())
def test_equivariance(f, g):
    """{H, ]F,G[} = ]{H,F},G[ + (-1)^{|H|(|F|+1)} ]F,{H,G}[ for quadratic H."""
    for H in geom.hamiltonians():
        s = sign(bit(H) * (bit(f) + 1))
        assert pbracket(H, abracket(f, g)) == abracket(pbracket(H, f), g) + abracket(f, pbracket(H, g)) * s


@given(homogeneous(), homogeneous())
def test_degree_rules(f, g):
    try:
        df, dg = euler_degree(f), euler_degree(g)
    except GeomError:
        return
    pb, ab = pbracket(f, g), abracket(f, g)
    if pb:
        assert euler_degree(pb) == df + dg - 2
    if ab:
        assert euler_degree(ab) == df + dg - 1


@given(homogeneous(), homogeneous(), homogeneous())
def test_bilinear(f, g, h):
    if f.parity() != g.parity():
        return
    assert pbracket(f + g, h) == pbracket(f, h) + pbracket(g, h)
    assert abracket(h, f + g) == abracket(h, f) + abracket(h, g)


# -- extraction -------------------------------------------------------------------

def test_linear_space_is_k3():
    assert extract_table("linear") == k3()


@pytest.mark.parametrize("bound", [2, 4, 6])
def test_deg1_window_is_ak1(bound):
    assert extract_table(f"deg1-window({bound})") == builtin("ak1", bound)
    assert extract_table("deg1-window", bound) == builtin("ak1", bound)


def test_quadratic_is_lie_superalgebra():
    alg = extract_table("quadratic")
    assert alg.dims == (3, 2)
    assert check_profile(alg, alg.profile).passed
    assert check_axiom(alg, "graded-jacobi").passed


@pytest.mark.parametrize("bound", [1, 3])
def test_deg2_window_is_lie_superalgebra(bound):
    alg = extract_table("deg2-window", bound)
    assert check_profile(alg, alg.profile).passed


def test_extract_errors():
    with pytest.raises(GeomError):
        extract_table("deg1-window")
    with pytest.raises(GeomError):
        extract_table("cubic")
