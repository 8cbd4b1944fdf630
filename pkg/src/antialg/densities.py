"""Tensor densities f(z) dz^lambda on the sphere with poles at 0 and infinity.

Weights are half-integers stored doubled.  Parity lives in the weight: a
density of half-integer (non-integer) weight is odd, one of integer weight is
even.

The antialgebra on F_0 + F_{-1/2} uses the dictionary
``e[n] -> z^{-n}`` and ``a[i] -> z^{1/2 - i} dz^{-1/2}``; its adjoint on
F_{-1} + F_{-1/2} uses ``L[n] -> z^{1-n} dz^{-1}`` and ``G[i] -> z^{1/2 - i} dz^{-1/2}``.
With z -> 1/z instead, a[i] a[j] comes out as 1/2 (j - i) e[i+j], the
opposite sign to the AK(1) table.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .axioms import Report
from .superalg import (
    EVEN,
    ODD,
    OUT_OF_WINDOW,
    AlgebraDef,
    AlgebraError,
    Element,
    Symbol,
    WindowSpec,
)


class DensityError(AlgebraError):
    pass


def _doubled(weight) -> int:
    w = Fraction(weight)
    if (2 * w).denominator != 1:
        raise DensityError(f"weight {w} is not a half-integer")
    return int(2 * w)


@dataclass(frozen=True)
class Density:
    """Laurent polynomial in z with a weight; ``weight2`` is twice the weight."""

    poly: tuple[tuple[int, Fraction], ...]
    weight2: int

    @classmethod
    def make(cls, poly: Mapping[int, object], weight) -> Density:
        clean = {}
        for e, c in poly.items():
            if isinstance(c, float):
                raise TypeError("float coefficients are not exact")
            c = Fraction(c)
            if c:
                clean[int(e)] = clean.get(int(e), 0) + c
        return cls(tuple(sorted((e, c) for e, c in clean.items() if c)), _doubled(weight))

    @classmethod
    def monomial(cls, exponent: int, weight, coeff=1) -> Density:
        return cls.make({exponent: coeff}, weight)

    @classmethod
    def parse(cls, text: str) -> Density:
        return parse_density(text)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight2, 2)

    @property
    def parity(self) -> int:
        return ODD if self.weight2 % 2 else EVEN

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self.poly)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def _same_weight(self, other: Density) -> None:
        if self.weight2 != other.weight2 and self and other:
            raise DensityError(f"cannot add densities of weights {self.weight} and {other.weight}")

    def __add__(self, other: Density) -> Density:
        self._same_weight(other)
        acc = self.terms
        for e, c in other.poly:
            acc[e] = acc.get(e, 0) + c
        w2 = self.weight2 if self else other.weight2
        return Density.make(acc, Fraction(w2, 2))

    def __neg__(self) -> Density:
        return self.scale(-1)

    def __sub__(self, other: Density) -> Density:
        return self + (-other)

    def scale(self, c) -> Density:
        c = Fraction(c)
        return Density.make({e: c * v for e, v in self.poly}, self.weight)

    def derivative(self) -> dict[int, Fraction]:
        """f'(z) as a Laurent polynomial (the weight is not touched)."""
        return {e - 1: c * e for e, c in self.poly if e}

    def __str__(self) -> str:
        return f"{_poly_str(self.terms)} @ {self.weight}"


def _poly_str(poly: Mapping[int, Fraction]) -> str:
    if not any(poly.values()):
        return "0"
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        if not c:
            continue
        mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag} {mono}")
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


_DTOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|(z)(?:\^(-?\d+))?|([+-]))")


def parse_density(text: str) -> Density:
    """Parse ``3/2 z^-2 @ -1/2``: a Laurent polynomial, ``@``, then the weight."""
    if "@" not in text:
        raise DensityError(f"density literal {text!r} lacks '@ weight'")
    body, _, wtext = text.rpartition("@")
    try:
        weight = Fraction(wtext.strip())
    except (ValueError, ZeroDivisionError):
        raise DensityError(f"malformed weight {wtext.strip()!r}") from None
    if "." in wtext:
        raise DensityError("decimal weights are not exact")
    poly: dict[int, Fraction] = {}
    pos, sgn, coeff, expo, started = 0, 1, None, 0, False
    body = body.strip()

    def flush():
        if started:
            c = Fraction(1) if coeff is None else coeff
            poly[expo] = poly.get(expo, 0) + sgn * c

    while pos < len(body):
        m = _DTOKEN.match(body, pos)
        if not m or m.end() == pos:
            raise DensityError(f"cannot parse density {text!r} at position {pos}")
        pos = m.end()
        num, z, exp, op = m.groups()
        if op:
            flush()
            sgn, coeff, expo, started = (1 if op == "+" else -1), None, 0, False
            continue
        started = True
        if num:
            if coeff is not None:
                raise DensityError(f"two coefficients in one term of {text!r}")
            try:
                coeff = Fraction(num)
            except ZeroDivisionError:
                raise DensityError(f"malformed rational {num!r}") from None
        else:
            expo += 1 if exp is None else int(exp)
    if not started:
        raise DensityError(f"empty or dangling polynomial in {text!r}")
    flush()
    return Density.make(poly, weight)


def _pmul(f: Mapping[int, Fraction], g: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def dmul(a: Density, b: Density) -> Density:
    """(f dz^mu, g dz^lam) -> fg dz^(lam + mu)."""
    return Density.make(_pmul(a.terms, b.terms), a.weight + b.weight)


def dbracket(a: Density, b: Density) -> Density:
    """(f dz^mu, g dz^lam) -> (-mu f g' + lam f' g) dz^(lam + mu + 1)."""
    mu, lam = a.weight, b.weight
    out = {e: -mu * c for e, c in _pmul(a.terms, b.derivative()).items()}
    for e, c in _pmul(a.derivative(), b.terms).items():
        out[e] = out.get(e, 0) + lam * c
    return Density.make(out, lam + mu + 1)


def action(f: Density, g: Density) -> Density:
    """Vector field f dz^-1 acting on g dz^lam: (f g' + lam f' g) dz^lam."""
    if f.weight2 != -2:
        raise DensityError("action needs a vector field of weight -1")
    lam = g.weight
    out = _pmul(f.terms, g.derivative())
    for e, c in _pmul(f.derivative(), g.terms).items():
        out[e] = out.get(e, 0) + lam * c
    return Density.make(out, lam)


HALF = Fraction(1, 2)


def antiproduct(a: Density, b: Density) -> Density:
    """The antialgebra product on F_0 + F_{-1/2}."""
    for x in (a, b):
        if x.weight2 not in (0, -1):
            raise DensityError(f"antiproduct needs weights 0 or -1/2, got {x.weight}")
    if a.weight2 == 0 and b.weight2 == 0:
        return dmul(a, b)
    if a.weight2 == -1 and b.weight2 == -1:
        return dbracket(a, b)
    return dmul(a, b).scale(HALF)


def superbracket(a: Density, b: Density) -> Density:
    """The adjoint Lie superalgebra bracket on F_{-1} + F_{-1/2}."""
    for x in (a, b):
        if x.weight2 not in (-2, -1):
            raise DensityError(f"superbracket needs weights -1 or -1/2, got {x.weight}")
    if a.weight2 == -1 and b.weight2 == -1:
        return dmul(a, b).scale(HALF)
    if a.weight2 == -1:
        return -dbracket(b, a)
    return dbracket(a, b)


# -- windows --------------------------------------------------------------------

SPACES = ("antialgebra", "liesuper")


def _labels(w: WindowSpec, odd: bool) -> list[int]:
    top = int(2 * w.bound)
    return [k for k in range(-top, top + 1) if (k % 2 == 1) == odd]


def window_basis(space: str, w: WindowSpec) -> list[tuple[Symbol, Density]]:
    """Symbols (doubled labels) with their densities."""
    if space == "antialgebra":
        evens = [(Symbol("e", EVEN, k), Density.monomial(-k // 2, 0)) for k in _labels(w, False)]
    elif space == "liesuper":
        evens = [(Symbol("L", EVEN, k), Density.monomial(1 - k // 2, -1)) for k in _labels(w, False)]
    else:
        raise DensityError(f"unknown space {space!r}; choose from {', '.join(SPACES)}")
    name = "a" if space == "antialgebra" else "G"
    odds = [(Symbol(name, ODD, k), Density.monomial((1 - k) // 2, Fraction(-1, 2))) for k in _labels(w, True)]
    return evens + odds


def _decompose(d: Density, lookup: dict) -> Element | None:
    terms = []
    for e, c in d.poly:
        key = (e, d.weight2)
        if key not in lookup:
            return None
        s, unit = lookup[key]
        terms.append((s, c / unit))
    return Element(terms)


def realize_window(space: str, w: WindowSpec) -> AlgebraDef:
    """Structure constants of the density realization restricted to a window."""
    if not isinstance(w, WindowSpec):
        w = WindowSpec(Fraction(w))
    basis = window_basis(space, w)
    op = antiproduct if space == "antialgebra" else superbracket
    lookup = {}
    for s, d in basis:
        ((e, c),) = d.poly
        lookup[(e, d.weight2)] = (s, c)
    table = {}
    for x, dx in basis:
        for y, dy in basis:
            el = _decompose(op(dx, dy), lookup)
            table[(x, y)] = OUT_OF_WINDOW if el is None else el
    prefix = "density-ak1" if space == "antialgebra" else "density-k1"
    profile = "antialgebra" if space == "antialgebra" else "lie-super"
    return AlgebraDef(name=f"{prefix}[{w.bound}]", basis=tuple(s for s, _ in basis), table=table,
                      profile=profile, window=w)


def _odd_density(k: int) -> Density:
    return Density.monomial((1 - k) // 2, Fraction(-1, 2))


def check_compatibility(w: WindowSpec) -> Report:
    """[y1 . y2, y3] = y1(y2 y3) + y2(y1 y3) on odd monomials inside the guard band.

    The left side uses the superbracket (y1 . y2 is the superbracket of the two
    odd densities), the right side uses the antiproduct.
    """
    report = Report("compatibility")
    labels = [k for k in _labels(w, True) if abs(k) <= 2 * w.guard]
    for k1 in labels:
        for k2 in labels:
            for k3 in labels:
                y1, y2, y3 = (_odd_density(k) for k in (k1, k2, k3))
                lhs = superbracket(superbracket(y1, y2), y3)
                rhs = antiproduct(y1, antiproduct(y2, y3)) + antiproduct(y2, antiproduct(y1, y3))
                syms = tuple(Symbol("G", ODD, k) for k in (k1, k2, k3))
                report.record(syms, lhs, rhs, guarded=True)
    return report


WEIGHT_RANGE = range(-6, 7)  # doubled weights: 1/2 Z intersected with [-3, 3]


def _random_monomial(rng: random.Random) -> Density:
    coeff = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
    return Density.monomial(rng.randint(-5, 5), Fraction(rng.choice(WEIGHT_RANGE), 2), coeff)


def check_poisson_leibniz(samples: int, seed: int = 0) -> Report:
    """Leibniz rule {a, b c} = {a, b} c + b {a, c} and weight bookkeeping on random monomials."""
    rng = random.Random(seed)
    report = Report("poisson")
    leib, wb, wm, act = Report("leibniz"), Report("weight-bracket"), Report("weight-product"), Report("action")
    for _ in range(samples):
        a, b, c = (_random_monomial(rng) for _ in range(3))
        syms = ()
        lhs = dbracket(a, dmul(b, c))
        rhs = dmul(dbracket(a, b), c) + dmul(b, dbracket(a, c))
        leib.record(syms, lhs, rhs, guarded=True)
        wb.record(syms, lhs.weight, a.weight + b.weight + c.weight + 1, guarded=True)
        wm.record(syms, dmul(b, c).weight, b.weight + c.weight, guarded=True)
        vf = Density.make(a.terms, -1)
        act.record(syms, dbracket(vf, b), action(vf, b), guarded=True)
    for r in (leib, wb, wm, act):
        report.absorb(r)
    return report
