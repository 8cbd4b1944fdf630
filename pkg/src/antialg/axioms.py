"""Identity checks for Lie antialgebras and related graded algebras.

Every check runs over basis tuples.  A tuple whose evaluation needs a
product outside the materialized window is counted as skipped and never
contributes to the verdict.

Sign conventions (homogeneous x, y, z, w; ``|x|`` is the parity):

supercomm
    ``xy = (-1)^{|x||y|} yx``
anti-supercomm
    ``xy = -(-1)^{|x||y|} yx``
even-assoc
    ``(x1 x2) x3 = x1 (x2 x3)`` on even triples
odd-deriv
    right multiplication ``R_y: a -> ay`` by an odd ``y`` obeys
    ``(ab)y = (ay)b + (-1)^{|a|} a(by)``.  This is the left Koszul form of an
    odd derivation; it is the one under which K3 passes.
half-action
    ``x1 (x2 y) = 1/2 (x1 x2) y`` on even x1, x2 and odd y
commutative-action
    ``x1 (x2 y) = x2 (x1 y)`` on even x1, x2 and odd y
graded-jacobi
    ``(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0``
jordan-super
    the linearization of ``(x^2 y) x = x^2 (yx)``::

        ((xz)y)w + ((zw)y)x + ((wx)y)z = (xz)(yw) + (zw)(yx) + (wx)(yz)

    with each monomial multiplied by the Koszul sign of the permutation that
    takes ``x, y, z, w`` to the order in which the letters occur in it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .superalg import (
    EVEN,
    ODD,
    AlgebraDef,
    AlgebraError,
    Element,
    OutOfWindow,
    Symbol,
    sign,
)

AXIOMS = (
    "supercomm",
    "anti-supercomm",
    "even-assoc",
    "odd-deriv",
    "half-action",
    "commutative-action",
    "graded-jacobi",
    "jordan-super",
)

PROFILES = {
    "antialgebra": ("supercomm", "even-assoc", "odd-deriv", "commutative-action", "half-action"),
    "lie-super": ("anti-supercomm", "graded-jacobi"),
    "jordan-super": ("supercomm", "jordan-super"),
}

MAX_WITNESSES = 25


@dataclass(frozen=True)
class Witness:
    check: str
    symbols: tuple[Symbol, ...]
    lhs: Element
    rhs: Element

    def __str__(self) -> str:
        args = ",".join(str(s) for s in self.symbols)
        return f"({args}) lhs={self.lhs} rhs={self.rhs}"


@dataclass
class Report:
    """Outcome of one check or an aggregate of several."""

    check: str
    checked: int = 0
    skipped: int = 0
    failures: int = 0
    guarded_checked: int = 0
    guarded_skipped: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.failures:
            return "fail"
        if self.checked == 0 and self.skipped > 0:
            return "skipped-out-of-window"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, symbols, lhs: Element, rhs: Element, guarded: bool) -> None:
        self.checked += 1
        if guarded:
            self.guarded_checked += 1
        if lhs != rhs:
            self.failures += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(Witness(self.check, tuple(symbols), lhs, rhs))

    def skip(self, guarded: bool) -> None:
        self.skipped += 1
        if guarded:
            self.guarded_skipped += 1

    def fail(self, symbols, lhs: Element, rhs: Element) -> None:
        self.record(symbols, lhs, rhs, guarded=True)

    def absorb(self, child: "Report") -> None:
        self.children.append(child)
        self.checked += child.checked
        self.skipped += child.skipped
        self.failures += child.failures
        self.guarded_checked += child.guarded_checked
        self.guarded_skipped += child.guarded_skipped
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses.extend(child.witnesses[:max(room, 0)])

    def leaves(self) -> list["Report"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]


def _run(alg: AlgebraDef, name: str, tuples: Iterable[tuple[Symbol, ...]],
         evaluate: Callable[..., tuple[Element, Element]]) -> Report:
    report = Report(name)
    for tup in tuples:
        guarded = alg.in_guard(*tup)
        try:
            lhs, rhs = evaluate(*tup)
        except OutOfWindow:
            report.skip(guarded)
            continue
        report.record(tup, lhs, rhs, guarded)
    return report


def _basis_ops(alg: AlgebraDef):
    el = {s: Element.basis(s) for s in alg.basis}
    mul = alg.multiply

    def p(x, y):
        return mul(x if isinstance(x, Element) else el[x], y if isinstance(y, Element) else el[y])

    return el, p


def check_axiom(alg: AlgebraDef, ax: str) -> Report:
    """Check one identity on all basis tuples of ``alg``."""
    if ax not in AXIOMS:
        raise AlgebraError(f"unknown axiom {ax!r}; choose from {', '.join(AXIOMS)}")
    el, p = _basis_ops(alg)
    B, E, O = alg.basis, alg.even, alg.odd
    half = Fraction(1, 2)

    if ax == "supercomm":
        return _run(alg, ax, itertools.product(B, B),
                    lambda x, y: (p(x, y), p(y, x) * sign(x.parity * y.parity)))
    if ax == "anti-supercomm":
        return _run(alg, ax, itertools.product(B, B),
                    lambda x, y: (p(x, y), p(y, x) * -sign(x.parity * y.parity)))
    if ax == "even-assoc":
        return _run(alg, ax, itertools.product(E, E, E),
                    lambda x1, x2, x3: (p(p(x1, x2), x3), p(x1, p(x2, x3))))
    if ax == "odd-deriv":
        def deriv(a, b, y):
            lhs = p(p(a, b), y)
            rhs = p(p(a, y), b) + p(a, p(b, y)) * sign(a.parity)
            return lhs, rhs

        return _run(alg, ax, ((a, b, y) for y in O for a in B for b in B), deriv)
    if ax == "half-action":
        return _run(alg, ax, itertools.product(E, E, O),
                    lambda x1, x2, y: (p(x1, p(x2, y)), p(p(x1, x2), y) * half))
    if ax == "commutative-action":
        return _run(alg, ax, itertools.product(E, E, O),
                    lambda x1, x2, y: (p(x1, p(x2, y)), p(x2, p(x1, y))))
    if ax == "graded-jacobi":
        zero = Element()

        def jacobi(x, y, z):
            total = (
                p(x, p(y, z)) * sign(x.parity * z.parity)
                + p(y, p(z, x)) * sign(y.parity * x.parity)
                + p(z, p(x, y)) * sign(z.parity * y.parity)
            )
            return total, zero

        return _run(alg, ax, itertools.product(B, B, B), jacobi)
    return _run(alg, ax, itertools.product(B, B, B, B), _jordan_evaluator(p))


def koszul_sign(parities: tuple[int, ...], order: tuple[int, ...]) -> int:
    """Sign of reordering graded letters: (-1)^(number of odd-odd inversions)."""
    n = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j] and parities[order[i]] and parities[order[j]]:
                n += 1
    return sign(n)


# letters x=0, y=1, z=2, w=3; (shape, letters in order of occurrence, coefficient)
JORDAN_TERMS = (
    ("((..).).", (0, 2, 1, 3), 1),
    ("((..).).", (2, 3, 1, 0), 1),
    ("((..).).", (3, 0, 1, 2), 1),
    ("(..)(..)", (0, 2, 1, 3), -1),
    ("(..)(..)", (2, 3, 1, 0), -1),
    ("(..)(..)", (3, 0, 1, 2), -1),
)


def _jordan_evaluator(p):
    zero = Element()

    def jordan(*letters):
        parities = tuple(s.parity for s in letters)
        total = zero
        for shape, order, coeff in JORDAN_TERMS:
            a, b, c, d = (letters[i] for i in order)
            if shape == "((..).).":
                m = p(p(p(a, b), c), d)
            else:
                m = p(p(a, b), p(c, d))
            total = total + m * (coeff * koszul_sign(parities, order))
        return total, zero

    return jordan


def check_profile(alg: AlgebraDef, profile: str) -> Report:
    """Aggregate the member axioms of ``profile``."""
    if profile not in PROFILES:
        raise AlgebraError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    report = Report(profile)
    for ax in PROFILES[profile]:
        report.absorb(check_axiom(alg, ax))
    return report


@dataclass
class GenerationStep:
    vector: list[Fraction]
    expression: str


def check_generated_by_odd(alg: AlgebraDef) -> tuple[bool, list[GenerationStep]]:
    """Does the subalgebra generated by the odd basis contain the even part?

    Returns the verdict and a trace: a basis of the generated even subspace,
    each vector paired with an expression for it in terms of odd generators.
    Products leaving the window are ignored.
    """
    from .exactla import coords_in_span, span_basis

    even = alg.even
    if not even:
        return True, []
    odd = alg.odd
    # generated elements as (Element, expression); we track even/odd spans separately
    gens_odd: list[tuple[Element, str]] = [(Element.basis(y), str(y)) for y in odd]
    gens_even: list[tuple[Element, str]] = []
    trace: list[GenerationStep] = []

    def try_add(e: Element, expr: str) -> bool:
        if not e:
            return False
        pool = gens_even if e.parity() == "even" else gens_odd
        syms = even if e.parity() == "even" else odd
        vecs = [alg.vector(g, syms) for g, _ in pool]
        v = alg.vector(e, syms)
        if vecs and coords_in_span(v, vecs) is not None:
            return False
        pool.append((e, expr))
        if pool is gens_even:
            trace.append(GenerationStep(v, expr))
        return True

    changed = True
    while changed:
        changed = False
        current = gens_even + gens_odd
        for (u, eu), (v, ev) in itertools.product(current, current):
            try:
                prod = alg.multiply(u, v)
            except OutOfWindow:
                continue
            if try_add(prod, f"({eu})*({ev})"):
                changed = True
        if len(gens_even) == len(even) and len(gens_odd) == len(odd):
            break
    full = len(span_basis([s.vector for s in trace])) == len(even) if trace else False
    return full, trace


def coordinate_expression(alg: AlgebraDef, target: Symbol, trace: list[GenerationStep]) -> str | None:
    """Express an even basis symbol through the generation trace, if possible."""
    from .exactla import coords_in_span

    v = alg.vector(Element.basis(target), alg.even)
    coords = coords_in_span(v, [s.vector for s in trace])
    if coords is None:
        return None
    parts = [f"{c}*{s.expression}" for c, s in zip(coords, trace) if c]
    return " + ".join(parts)
