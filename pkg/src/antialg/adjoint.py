"""Adjoint Lie superalgebra of a Lie antialgebra, and derivation algebras.

For an antialgebra ``a = a0 + a1`` the adjoint superalgebra has odd part
``a1`` and even part the symmetric square of ``a1`` over ``a0``: formal
products ``y1.y2`` modulo ``y1.y2 = y2.y1`` and ``(y1 x).y2 = y1.(y2 x)``.
Brackets::

    [y1, y2]           = y1.y2
    [y1.y2, y3]        = y1 (y2 y3) + y2 (y1 y3)   = -[y3, y1.y2]
    [y1.y2, y3.y4]     = [y1.y2, y3].y4 + [y1.y2, y4].y3

Quotient representatives are the non-pivot ambient products after row
reducing the relation span, with ambient products ordered
lexicographically by basis position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import Report, check_profile
from .exactla import Matrix, coords_in_span, nullspace, rank, rref
from .superalg import (
    EVEN,
    ODD,
    OUT_OF_WINDOW,
    AlgebraDef,
    AlgebraError,
    Element,
    OutOfWindow,
    Symbol,
    sign,
)


class AdjointError(AlgebraError):
    pass


def _require_antialgebra(a: AlgebraDef) -> None:
    report = check_profile(a, "antialgebra")
    if not report.passed:
        first = report.witnesses[0] if report.witnesses else None
        raise AdjointError(f"{a.name} is not a Lie antialgebra: {first.check}: {first}")


@dataclass(frozen=True, eq=False)
class SymSpace:
    """Symmetric square of the odd part over the even part."""

    source: AlgebraDef
    odd: tuple[Symbol, ...]
    ambient: tuple[tuple[Symbol, Symbol], ...]
    relations: tuple[tuple[Fraction, ...], ...]
    reduced: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]
    free: tuple[int, ...]
    symbols: tuple[Symbol, ...]
    _pos: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.free)

    def pair_vector(self, u: Element, v: Element) -> list[Fraction]:
        """Ambient coordinates of u.v for odd elements u, v."""
        vec = [Fraction(0)] * len(self.ambient)
        for s, c in u.items():
            for t, d in v.items():
                k = self._pos[(s, t)]
                vec[k] += c * d
        return vec

    def reduce(self, vec) -> list[Fraction]:
        """Quotient coordinates of an ambient vector."""
        vec = list(vec)
        for row, pc in zip(self.reduced, self.pivots):
            f = vec[pc]
            if f:
                for k, r in enumerate(row):
                    if r:
                        vec[k] -= f * r
        return [vec[k] for k in self.free]

    def reduce_to_element(self, vec) -> Element:
        return Element(zip(self.symbols, self.reduce(vec)))

    def representative(self, s: Symbol) -> tuple[Symbol, Symbol]:
        return self.ambient[self.free[self.symbols.index(s)]]

    def lift(self, e: Element) -> list[Fraction]:
        vec = [Fraction(0)] * len(self.ambient)
        for s, c in e.items():
            vec[self.free[self.symbols.index(s)]] += c
        return vec


def _product_symbol(y1: Symbol, y2: Symbol) -> Symbol:
    return Symbol(f"{y1}.{y2}", EVEN)


def sym2_quotient(a: AlgebraDef, check: bool = True) -> SymSpace:
    """Quotient of Sym^2(a1) by the relations (y1 x).y2 = y1.(y2 x)."""
    if check:
        _require_antialgebra(a)
    odd = a.odd
    ambient = tuple((odd[i], odd[j]) for i in range(len(odd)) for j in range(i, len(odd)))
    pos = {}
    for k, (s, t) in enumerate(ambient):
        pos[(s, t)] = k
        pos[(t, s)] = k
    space_args = dict(source=a, odd=odd, ambient=ambient, _pos=pos)
    probe = SymSpace(relations=(), reduced=(), pivots=(), free=(), symbols=(), **space_args)
    relations = []
    for x in a.even:
        ex = Element.basis(x)
        for y1, y2 in itertools.product(odd, odd):
            try:
                left = probe.pair_vector(a.multiply(Element.basis(y1), ex), Element.basis(y2))
                right = probe.pair_vector(Element.basis(y1), a.multiply(Element.basis(y2), ex))
            except OutOfWindow:
                continue
            rel = [l - r for l, r in zip(left, right)]
            if any(rel):
                relations.append(tuple(rel))
    if relations:
        red, pivots = rref(Matrix(relations, cols=len(ambient)))
        reduced = tuple(red.row(i) for i in range(len(pivots)))
    else:
        reduced, pivots = (), []
    free = tuple(k for k in range(len(ambient)) if k not in set(pivots))
    symbols = tuple(_product_symbol(*ambient[k]) for k in free)
    return SymSpace(relations=tuple(relations), reduced=reduced, pivots=tuple(pivots), free=free,
                    symbols=symbols, **space_args)


@dataclass(frozen=True, eq=False)
class LieSuperDef:
    """A Lie superalgebra built from another algebra.

    ``algebra`` holds the bracket table.  ``symspace`` is set for adjoint
    algebras and ``matrices`` for derivation algebras.
    """

    algebra: AlgebraDef
    source: AlgebraDef
    symspace: SymSpace | None = None
    matrices: dict | None = None

    @property
    def dims(self) -> tuple[int, int]:
        return self.algebra.dims


class _AdjointBracket:
    def __init__(self, a: AlgebraDef, sym: SymSpace):
        self.a = a
        self.sym = sym

    def act(self, vec, y: Element) -> Element:
        """[u, y] for u given by ambient coordinates and odd y."""
        a = self.a
        out = Element()
        for k, c in enumerate(vec):
            if not c:
                continue
            y1, y2 = self.sym.ambient[k]
            e1, e2 = Element.basis(y1), Element.basis(y2)
            term = a.multiply(e1, a.multiply(e2, y)) + a.multiply(e2, a.multiply(e1, y))
            out = out + term * c
        return out

    def even_even(self, u, v) -> list[Fraction]:
        """Ambient coordinates of [u, v] for ambient vectors u, v."""
        out = [Fraction(0)] * len(self.sym.ambient)
        for k, c in enumerate(v):
            if not c:
                continue
            y3, y4 = self.sym.ambient[k]
            e3, e4 = Element.basis(y3), Element.basis(y4)
            first = self.sym.pair_vector(self.act(u, e3), e4)
            second = self.sym.pair_vector(self.act(u, e4), e3)
            for i in range(len(out)):
                out[i] += c * (first[i] + second[i])
        return out


def well_definedness_report(a: AlgebraDef, sym: SymSpace | None = None) -> Report:
    """Check [y1.(y2 x), y3] = [(y1 x).y2, y3] on all basis tuples."""
    sym = sym or sym2_quotient(a, check=False)
    br = _AdjointBracket(a, sym)
    report = Report("well-defined")
    for x in a.even:
        ex = Element.basis(x)
        for y1, y2, y3 in itertools.product(a.odd, repeat=3):
            guarded = a.in_guard(x, y1, y2, y3)
            e1, e2, e3 = Element.basis(y1), Element.basis(y2), Element.basis(y3)
            try:
                lhs = br.act(sym.pair_vector(e1, a.multiply(e2, ex)), e3)
                rhs = br.act(sym.pair_vector(a.multiply(e1, ex), e2), e3)
            except OutOfWindow:
                report.skip(guarded)
                continue
            report.record((y1, y2, x, y3), lhs, rhs, guarded)
    return report


def _quotient_consistency(a: AlgebraDef, sym: SymSpace, br: _AdjointBracket) -> Report:
    """Relations act trivially and the even-even bracket respects them in both slots."""
    report = Report("quotient-consistency")
    zero = Element()
    for rel in sym.reduced:
        for k in range(len(sym.ambient)):
            unit = [Fraction(0)] * len(sym.ambient)
            unit[k] = Fraction(1)
            try:
                left = sym.reduce_to_element(br.even_even(rel, unit))
                right = sym.reduce_to_element(br.even_even(unit, rel))
            except OutOfWindow:
                report.skip(False)
                continue
            report.record(sym.ambient[k], left, zero, True)
            report.record(sym.ambient[k], right, zero, True)
        for y in sym.odd:
            try:
                v = br.act(rel, Element.basis(y))
            except OutOfWindow:
                report.skip(False)
                continue
            report.record((y,), v, zero, True)
    return report


def adjoint_algebra(a: AlgebraDef, check: bool = True) -> LieSuperDef:
    """The adjoint Lie superalgebra with even part Sym^2 over a0 and odd part a1."""
    if check:
        _require_antialgebra(a)
    sym = sym2_quotient(a, check=False)
    br = _AdjointBracket(a, sym)
    wd = well_definedness_report(a, sym)
    if not wd.passed:
        raise AdjointError(f"bracket is not well defined on the quotient: {wd.witnesses[0]}")
    qc = _quotient_consistency(a, sym, br)
    if not qc.passed:
        raise AdjointError(f"bracket does not respect the quotient: {qc.witnesses[0]}")

    even = sym.symbols
    odd = a.odd
    reps = {s: sym.lift(Element.basis(s)) for s in even}
    table = {}
    for y1 in odd:
        for y2 in odd:
            table[(y1, y2)] = sym.reduce_to_element(sym.pair_vector(Element.basis(y1), Element.basis(y2)))
    for s in even:
        for y in odd:
            try:
                v = br.act(reps[s], Element.basis(y))
            except OutOfWindow:
                table[(s, y)] = table[(y, s)] = OUT_OF_WINDOW
                continue
            table[(s, y)] = v
            table[(y, s)] = -v
    for s in even:
        for t in even:
            try:
                table[(s, t)] = sym.reduce_to_element(br.even_even(reps[s], reps[t]))
            except OutOfWindow:
                table[(s, t)] = OUT_OF_WINDOW
    alg = AlgebraDef(name=f"g({a.name})", basis=even + odd, table=table, profile="lie-super",
                     window=a.window)
    return LieSuperDef(algebra=alg, source=a, symspace=sym)


# -- derivations --------------------------------------------------------------

def _right_mult(a: AlgebraDef, y: Element) -> Matrix:
    cols = [a.vector(a.multiply(Element.basis(s), y)) for s in a.basis]
    return Matrix.from_columns(cols, rows=len(a.basis))


def _apply(m: Matrix, a: AlgebraDef, e: Element) -> Element:
    return a.element(m.apply(a.vector(e)))


def derivation_residual(a: AlgebraDef, d: Matrix, parity: int) -> list[tuple[Symbol, Symbol, Element]]:
    """Pairs where D(xy) != D(x)y + (-1)^{|D||x|} x D(y)."""
    bad = []
    for x in a.basis:
        for y in a.basis:
            ex, ey = Element.basis(x), Element.basis(y)
            lhs = _apply(d, a, a.multiply(ex, ey))
            rhs = a.multiply(_apply(d, a, ex), ey) + a.multiply(ex, _apply(d, a, ey)) * sign(parity * x.parity)
            if lhs != rhs:
                bad.append((x, y, lhs - rhs))
    return bad


def is_derivation(a: AlgebraDef, d: Matrix, parity: int) -> bool:
    n = len(a.basis)
    for i, s in enumerate(a.basis):
        for j, t in enumerate(a.basis):
            if d[i, j] and s.parity != (t.parity + parity) % 2:
                return False
    return not derivation_residual(a, d, parity)


def _derivation_basis(a: AlgebraDef, parity: int) -> list[Matrix]:
    n = len(a.basis)
    slots = [(i, j) for i, s in enumerate(a.basis) for j, t in enumerate(a.basis)
             if s.parity == (t.parity + parity) % 2]
    columns = []
    for i, j in slots:
        unit = Matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], cols=n)
        col = []
        for x, y in itertools.product(a.basis, a.basis):
            ex, ey = Element.basis(x), Element.basis(y)
            res = (_apply(unit, a, a.multiply(ex, ey))
                   - a.multiply(_apply(unit, a, ex), ey)
                   - a.multiply(ex, _apply(unit, a, ey)) * sign(parity * x.parity))
            col.extend(a.vector(res))
        columns.append(col)
    if not columns:
        return []
    system = Matrix.from_columns(columns)
    out = []
    for vec in nullspace(system):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in zip(slots, vec):
            m[i][j] = c
        out.append(Matrix(m, cols=n))
    return out


def then(x: Matrix, y: Matrix) -> Matrix:
    """Composite "apply x, then y" of operators acting on the right, z -> (z x) y."""
    return y @ x


def super_commutator(x: Matrix, px: int, y: Matrix, py: int) -> Matrix:
    """Super commutator of right-acting operators: x.y - (-1)^{|x||y|} y.x, with . = then."""
    return then(x, y) - then(y, x).scale(sign(px * py))


def derivations(a: AlgebraDef) -> LieSuperDef:
    """Der(a) as a Lie superalgebra under the super commutator."""
    if a.out_of_window_count():
        raise AlgebraError("derivations need a finite algebra without window truncation")
    blocks = {EVEN: _derivation_basis(a, EVEN), ODD: _derivation_basis(a, ODD)}
    symbols = {EVEN: [Symbol("D", EVEN, 2 * k) for k in range(len(blocks[EVEN]))],
               ODD: [Symbol("Dodd", ODD, 2 * k) for k in range(len(blocks[ODD]))]}
    flat = {p: [_flatten(m) for m in blocks[p]] for p in blocks}
    table = {}
    for p, q in itertools.product((EVEN, ODD), repeat=2):
        for s, m in zip(symbols[p], blocks[p]):
            for t, k in zip(symbols[q], blocks[q]):
                c = super_commutator(m, p, k, q)
                r = (p + q) % 2
                coords = coords_in_span(_flatten(c), flat[r]) if flat[r] else (None if not c.is_zero() else [])
                if coords is None:
                    raise AdjointError("derivations are not closed under the super commutator")
                table[(s, t)] = Element(zip(symbols[r], coords))
    basis = tuple(symbols[EVEN] + symbols[ODD])
    alg = AlgebraDef(name=f"Der({a.name})", basis=basis, table=table, profile="lie-super")
    matrices = {s: m for p in (EVEN, ODD) for s, m in zip(symbols[p], blocks[p])}
    return LieSuperDef(algebra=alg, source=a, matrices=matrices)


def _flatten(m: Matrix) -> list[Fraction]:
    return [v for r in m.tolist() for v in r]


# -- embedding g(a) -> Der(a) ------------------------------------------------

# Right multiplications compose as right actions, z -> (z y1) y2, so End(a) is
# taken with the "then" product throughout this module.  Under the usual
# function composition the map y -> R_y is not bracket compatible.

def _symmetrized(right: dict, y1: Symbol, y2: Symbol) -> Matrix:
    return then(right[y1], right[y2]) + then(right[y2], right[y1])


def embedding_images(a: AlgebraDef, g: LieSuperDef) -> dict[Symbol, Matrix]:
    """iota(y) = R_y and iota(y1.y2) = R_y1 R_y2 + R_y2 R_y1."""
    sym = g.symspace
    right = {y: _right_mult(a, Element.basis(y)) for y in a.odd}
    images = dict(right)
    n = len(a.basis)
    for s in sym.symbols:
        images[s] = _ambient_image(right, sym, sym.lift(Element.basis(s)), n)
    return images


def _ambient_image(right: dict, sym: SymSpace, vec, n: int) -> Matrix:
    total = Matrix.zeros(n, n)
    for k, coeff in enumerate(vec):
        if coeff:
            total = total + _symmetrized(right, *sym.ambient[k]).scale(coeff)
    return total


def embedding_check(a: AlgebraDef) -> Report:
    """Check that y -> R_y extends to an injective morphism g(a) -> Der(a)."""
    _require_antialgebra(a)
    g = adjoint_algebra(a, check=False)
    sym = g.symspace
    report = Report("embedding")
    n = len(a.basis)

    right = {y: _right_mult(a, Element.basis(y)) for y in a.odd}
    wd = Report("iota-well-defined")
    for rel in sym.relations:
        total = _ambient_image(right, sym, rel, n)
        wd.record(("relation",), _matrix_element(total), Element(), True)
    report.absorb(wd)

    images = embedding_images(a, g)
    der = Report("iota-derivation")
    for s, m in images.items():
        bad = derivation_residual(a, m, s.parity)
        for x, y, res in bad[:1]:
            der.record((s, x, y), res, Element(), True)
        if not bad:
            der.record((s,), Element(), Element(), True)
    report.absorb(der)

    hom = Report("iota-homomorphism")
    basis = g.algebra.basis
    for u in basis:
        for v in basis:
            bracket = g.algebra.product(u, v)
            lhs = Matrix.zeros(n, n)
            for s, coeff in bracket.items():
                lhs = lhs + images[s].scale(coeff)
            rhs = super_commutator(images[u], u.parity, images[v], v.parity)
            hom.record((u, v), _matrix_element(lhs), _matrix_element(rhs), True)
    report.absorb(hom)

    flat = [_flatten(images[s]) for s in basis]
    image_rank = rank(Matrix(flat, cols=n * n)) if flat else 0
    injective = image_rank == len(basis)
    inj = Report("iota-injective")
    inj.record((), Element({Symbol("rank", EVEN): image_rank}) if image_rank else Element(),
               Element({Symbol("rank", EVEN): len(basis)}) if basis else Element(), True)
    report.absorb(inj)

    d = derivations(a)
    report.info.update(
        adjoint_dims=g.dims,
        derivation_dims=d.dims,
        image_rank=image_rank,
        injective=injective,
        surjective=injective and image_rank == sum(d.dims),
    )
    return report


def _matrix_element(m: Matrix) -> Element:
    """Encode a matrix as an Element on placeholder symbols so Reports can compare it."""
    return Element(
        (Symbol(f"m{i}_{j}", EVEN), m[i, j]) for i in range(m.rows) for j in range(m.cols) if m[i, j]
    )
