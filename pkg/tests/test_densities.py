from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from antialg.axioms import check_profile
from antialg.densities import (
    Density,
    DensityError,
    action,
    antiproduct,
    check_compatibility,
    check_poisson_leibniz,
    dbracket,
    dmul,
    parse_density,
    realize_window,
    superbracket,
    window_basis,
)
from antialg.superalg import EVEN, ODD, Element, Symbol, WindowSpec, builtin

half = Fraction(1, 2)
z = sympy.Symbol("z")


def to_sympy(d: Density):
    return sum((sympy.Rational(c.numerator, c.denominator) * z**e for e, c in d.poly), sympy.Integer(0))


def from_sympy(expr, weight) -> Density:
    expr = sympy.expand(expr)
    poly = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        c, m = term.as_coeff_Mul()
        e = 0 if m == 1 else sympy.degree(m, z) if m.is_polynomial(z) else -sympy.degree(1 / m, z)
        poly[int(e)] = poly.get(int(e), 0) + Fraction(int(c.p), int(c.q))
    return Density.make(poly, weight)


def oracle_bracket(a: Density, b: Density) -> Density:
    f, g = to_sympy(a), to_sympy(b)
    mu, lam = sympy.Rational(a.weight2, 2), sympy.Rational(b.weight2, 2)
    return from_sympy(-mu * f * sympy.diff(g, z) + lam * sympy.diff(f, z) * g, a.weight + b.weight + 1)


weights2 = st.integers(-6, 6)
densities = st.builds(
    lambda terms, w2: Density.make(dict(terms), Fraction(w2, 2)),
    st.lists(st.tuples(st.integers(-4, 4), st.fractions(min_value=-3, max_value=3, max_denominator=4)),
             max_size=3),
    weights2,
)


def test_examples():
    e = lambda n: Density.monomial(-n, 0)  # noqa: E731
    a = lambda k: Density.monomial((1 - k) // 2, -half)  # noqa: E731  k is doubled
    assert antiproduct(e(1), e(2)) == e(3)
    assert antiproduct(e(2), a(1)) == a(5).scale(half)
    # a_{1/2} a_{-1/2} = 1/2 (i - j) e_{i+j}
    assert antiproduct(a(1), a(-1)) == e(0).scale(half)
    assert parse_density("3/2 z^-2 @ -1/2") == Density.monomial(-2, -half, Fraction(3, 2))


@given(densities, densities)
def test_bracket_matches_symbolic(a, b):
    assert dbracket(a, b) == oracle_bracket(a, b)


@given(densities, densities)
def test_bracket_skew(a, b):
    assert dbracket(a, b) == -dbracket(b, a)


@given(densities, densities, densities)
def test_leibniz_explicit(a, b, c):
    """{a, bc} = -mu f (gh)' + (beta + gamma) f' g h."""
    mu = sympy.Rational(a.weight2, 2)
    s = sympy.Rational(b.weight2 + c.weight2, 2)
    f, g, h = map(to_sympy, (a, b, c))
    expected = from_sympy(-mu * f * sympy.diff(g * h, z) + s * sympy.diff(f, z) * g * h,
                          a.weight + b.weight + c.weight + 1)
    assert dbracket(a, dmul(b, c)) == expected
    assert dbracket(a, dmul(b, c)) == dmul(dbracket(a, b), c) + dmul(b, dbracket(a, c))


@given(densities, densities)
def test_action_is_bracket_with_vector_field(f, g):
    vf = Density.make(f.terms, -1)
    assert action(vf, g) == dbracket(vf, g)
    with pytest.raises(DensityError):
        action(Density.make(f.terms, 0), g)


@given(densities, densities)
def test_odd_antiproduct_formula(a, b):
    """For weights -1/2 the product is 1/2 f g' - 1/2 f' g."""
    a, b = Density.make(a.terms, -half), Density.make(b.terms, -half)
    f, g = to_sympy(a), to_sympy(b)
    expected = from_sympy((f * sympy.diff(g, z) - sympy.diff(f, z) * g) / 2, 0)
    assert antiproduct(a, b) == expected


@given(densities, densities, densities)
def test_compatibility_formula(a, b, c):
    """[y1 . y2, y3] = 1/2 phi gamma psi' - 1/4 (phi gamma)' psi for y1 = phi, y2 = gamma, y3 = psi."""
    y1, y2, y3 = (Density.make(d.terms, -half) for d in (a, b, c))
    pg = to_sympy(y1) * to_sympy(y2)
    psi = to_sympy(y3)
    expected = from_sympy(pg * sympy.diff(psi, z) / 2 - sympy.diff(pg, z) * psi / 4, -half)
    assert superbracket(superbracket(y1, y2), y3) == expected
    rhs = antiproduct(y1, antiproduct(y2, y3)) + antiproduct(y2, antiproduct(y1, y3))
    assert superbracket(superbracket(y1, y2), y3) == rhs


def test_weight_mismatch_errors():
    with pytest.raises(DensityError):
        Density.monomial(0, 0) + Density.monomial(0, 1)
    with pytest.raises(DensityError):
        antiproduct(Density.monomial(0, 1), Density.monomial(0, 0))
    with pytest.raises(DensityError):
        superbracket(Density.monomial(0, 0), Density.monomial(0, -1))
    with pytest.raises(TypeError):
        Density.make({0: 0.5}, 0)


@given(densities)
def test_parser_round_trip(d):
    assert parse_density(str(d)) == d


@pytest.mark.parametrize("bad", ["", "z @", "z^2", "1/0 z @ 0", "z @ 1/3", "x @ 0"])
def test_parser_errors(bad):
    with pytest.raises(DensityError):
        parse_density(bad)


def test_parity_from_weight():
    assert Density.monomial(0, -half).parity == ODD
    assert Density.monomial(0, -1).parity == EVEN


# -- windows ---------------------------------------------------------------------

def test_witt_relations():
    w = WindowSpec(Fraction(4))
    alg = realize_window("liesuper", w)
    L = lambda n: Symbol("L", EVEN, 2 * n)  # noqa: E731
    G = lambda k: Symbol("G", ODD, k)  # noqa: E731  doubled
    for n in range(-2, 3):
        for m in range(-2, 3):
            assert alg.table[(L(n), L(m))] == Element.basis(L(n + m), n - m)
        for k in (-3, -1, 1, 3):
            if abs(2 * n + k) <= 8:
                assert alg.table[(L(n), G(k))] == Element.basis(G(2 * n + k), Fraction(n, 2) - Fraction(k, 2))
    for i in (-3, -1, 1, 3):
        for j in (-3, -1, 1, 3):
            assert alg.table[(G(i), G(j))] == Element.basis(L((i + j) // 2), half)


@pytest.mark.parametrize("bound", range(0, 11))
def test_realization_matches_ak1(bound):
    assert realize_window("antialgebra", bound) == builtin("ak1", bound)


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_realizations_satisfy_profiles(bound):
    for space in ("antialgebra", "liesuper"):
        alg = realize_window(space, bound)
        assert check_profile(alg, alg.profile).passed


@pytest.mark.parametrize("bound", [2, 4])
def test_compatibility_report(bound):
    r = check_compatibility(WindowSpec(Fraction(bound)))
    assert r.passed and r.checked > 0


def test_poisson_leibniz_report():
    r = check_poisson_leibniz(200, seed=3)
    assert r.passed
    assert {c.check for c in r.children} == {"leibniz", "weight-bracket", "weight-product", "action"}


def test_window_basis_labels():
    basis = window_basis("antialgebra", WindowSpec(Fraction(1)))
    assert [str(s) for s, _ in basis][:3] == ["e[-1]", "e[0]", "e[1]"]
    with pytest.raises(DensityError):
        window_basis("cubic", WindowSpec(Fraction(1)))


@pytest.mark.slow
@pytest.mark.parametrize("bound", range(4, 11))
def test_realization_profile_up_to_ten(bound):
    w = WindowSpec(Fraction(bound), Fraction(bound, 3))
    r = check_profile(realize_window("antialgebra", w), "antialgebra")
    assert r.passed and r.guarded_skipped == 0
