from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antialg.superalg import (
    AK1_FAMILY,
    EVEN,
    ODD,
    OUT_OF_WINDOW,
    AlgebraDef,
    AlgebraError,
    Element,
    OutOfWindow,
    Symbol,
    WindowSpec,
    builtin,
    k3,
    materialize_window,
    parity_of,
)

half = Fraction(1, 2)
eps, a, b = Symbol("eps", EVEN), Symbol("a", ODD), Symbol("b", ODD)


def test_k3_table():
    alg = k3()
    e = Element.basis
    assert alg.product(eps, eps) == e(eps)
    assert alg.product(eps, a) == e(a, half)
    assert alg.product(eps, b) == e(b, half)
    assert alg.product(a, b) == e(eps, half)
    assert alg.product(b, a) == e(eps, -half)
    assert alg.product(a, a) == 0 and alg.product(b, b) == 0
    assert alg.dims == (1, 2)


def test_symbol_labels():
    s = Symbol("a", ODD, -3)
    assert s.label == Fraction(-3, 2)
    assert str(s) == "a[-3/2]"
    assert str(Symbol("e", EVEN, 4)) == "e[2]"
    with pytest.raises(AlgebraError):
        Symbol("x", 2)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elements = st.builds(lambda x, y, z: Element({eps: x, a: y, b: z}), coeffs, coeffs, coeffs)


@given(elements, elements, elements)
def test_element_vector_space(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == 0
    assert (x + y) * 3 == x * 3 + y * 3


@given(elements, elements)
def test_k3_multiply_bilinear(x, y):
    alg = k3()
    assert alg.multiply(x + y, y) == alg.multiply(x, y) + alg.multiply(y, y)
    assert alg.multiply(x * 2, y) == alg.multiply(x, y) * 2


def test_parity_of():
    assert parity_of(Element()) == "even"
    assert parity_of(Element.basis(a)) == "odd"
    assert parity_of(Element({eps: 1, a: 1})) == "mixed"


def test_table_must_be_total_and_graded():
    with pytest.raises(AlgebraError):
        AlgebraDef("bad", (eps,), {})
    with pytest.raises(AlgebraError):
        AlgebraDef("bad", (eps, a), {(eps, eps): Element.basis(a), (eps, a): Element(),
                                     (a, eps): Element(), (a, a): Element()})


def test_window_spec():
    w = WindowSpec(3, 1)
    assert w.contains(Symbol("a", ODD, 5)) and not w.contains(Symbol("a", ODD, 7))
    assert w.guards(Symbol("e", EVEN, 2)) and not w.guards(Symbol("e", EVEN, 4))
    assert WindowSpec(2).guard == 2
    with pytest.raises(AlgebraError):
        WindowSpec(1, 2)


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_ak1_rule(n, m):
    # doubled labels: e_n is 2n, a_i is 2i with i half-integer
    x, y = Symbol("e", EVEN, 2 * n), Symbol("e", EVEN, 2 * m)
    assert AK1_FAMILY.rule(x, y) == [(1, Symbol("e", EVEN, 2 * n + 2 * m))]
    i2, j2 = 2 * n + 1, 2 * m - 1
    ai, aj = Symbol("a", ODD, i2), Symbol("a", ODD, j2)
    assert AK1_FAMILY.rule(x, ai) == [(half, Symbol("a", ODD, 2 * n + i2))]
    ((c, s),) = AK1_FAMILY.rule(ai, aj)
    assert c == Fraction(i2 - j2, 2) / 2
    assert s == Symbol("e", EVEN, i2 + j2)


def test_ak1_window_marks_escapes():
    alg = builtin("ak1", WindowSpec(2))
    e1, e2 = alg.find("e[1]"), alg.find("e[2]")
    assert alg.table[(e1, e2)] is OUT_OF_WINDOW
    with pytest.raises(OutOfWindow):
        alg.product(e1, e2)
    a32 = alg.find("a[3/2]")
    # a_i a_i = 0 stays inside even when 2i leaves the window
    assert alg.product(a32, a32) == 0
    assert alg.dims == (5, 4)


def test_empty_window():
    alg = materialize_window(AK1_FAMILY, WindowSpec(0))
    (e0,) = alg.basis
    assert alg.product(e0, e0) == Element.basis(e0)


def test_builtin_errors():
    with pytest.raises(AlgebraError):
        builtin("nope")
    with pytest.raises(AlgebraError):
        builtin("ak1")


def test_witt_is_even_part_of_k1():
    w = WindowSpec(2)
    k1, witt = builtin("k1", w), builtin("witt", w)
    assert witt.basis == k1.even
    assert all(witt.table[(x, y)] is k1.table[(x, y)] or witt.table[(x, y)] == k1.table[(x, y)]
               for x in witt.basis for y in witt.basis)
