"""Representations of Lie antialgebras and the induced superalgebra action.

Operators act on a graded space ``V = V0 + V1`` from the left; the basis of
``V`` lists the ``dim V0`` even vectors first.  Products of operators are
ordinary matrix products here, unlike :mod:`antialg.adjoint` where right
multiplications act on the right.

A representation must satisfy ``rho(ab) = [rho(a), rho(b)]_+`` on all pairs
and ``rho(x1 x2) = rho(x1) rho(x2)`` on even pairs.  The induced
representation of the adjoint superalgebra sends an odd ``y`` to
``rho(y) / 2`` and ``y1.y2`` to ``(Y1 Y2 + Y2 Y1) / 4``.  The factor 1/2 is
forced: it is the only scale (up to sign) for which the odd images and their
anticommutators satisfy the brackets of the adjoint algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .adjoint import LieSuperDef, adjoint_algebra
from .axioms import Report
from .exactla import Matrix
from .superalg import EVEN, ODD, AlgebraDef, AlgebraError, Element, OutOfWindow, Symbol, sign


class RepError(AlgebraError):
    pass


INDUCED_SCALE = Fraction(1, 2)


@dataclass(frozen=True)
class GradedMatrix:
    """Homogeneous operator on V = V0 + V1."""

    matrix: Matrix
    dims: tuple[int, int]
    parity: int

    def __post_init__(self):
        n = sum(self.dims)
        if self.matrix.shape != (n, n):
            raise RepError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")
        if block_parity(self.matrix, self.dims) not in (self.parity, None):
            raise RepError(f"matrix entries are not supported on {'odd' if self.parity else 'even'} blocks")

    @classmethod
    def zero(cls, dims: tuple[int, int], parity: int = EVEN) -> GradedMatrix:
        n = sum(dims)
        return cls(Matrix.zeros(n, n), dims, parity)

    @classmethod
    def identity(cls, dims: tuple[int, int]) -> GradedMatrix:
        return cls(Matrix.identity(sum(dims)), dims, EVEN)

    @classmethod
    def build(cls, rows, dims: tuple[int, int], parity: int | None = None) -> GradedMatrix:
        m = Matrix(rows, cols=sum(dims))
        if parity is None:
            parity = block_parity(m, dims)
            if parity is None:
                parity = EVEN
            elif parity == "mixed":
                raise RepError("matrix mixes even and odd blocks")
        return cls(m, dims, parity)

    def _check(self, other: GradedMatrix) -> None:
        if self.dims != other.dims:
            raise RepError(f"dimension mismatch {self.dims} vs {other.dims}")

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        self._check(other)
        return GradedMatrix(self.matrix @ other.matrix, self.dims, (self.parity + other.parity) % 2)

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        self._check(other)
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise RepError("cannot add operators of different parity")
        parity = self.parity if not self.is_zero() else other.parity
        return GradedMatrix(self.matrix + other.matrix, self.dims, parity)

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> GradedMatrix:
        return GradedMatrix(self.matrix.scale(c), self.dims, self.parity)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedMatrix) and self.dims == other.dims and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.matrix, self.dims))


def block_parity(m: Matrix, dims: tuple[int, int]):
    """0 or 1 for homogeneous support, None for the zero matrix, 'mixed' otherwise."""
    d0 = dims[0]
    seen = set()
    for i in range(m.rows):
        for j in range(m.cols):
            if m[i, j]:
                seen.add(int(i >= d0) ^ int(j >= d0))
    if not seen:
        return None
    return seen.pop() if len(seen) == 1 else "mixed"


def jordan_product(x: GradedMatrix, y: GradedMatrix) -> GradedMatrix:
    """[X, Y]_+ = (XY + (-1)^{|X||Y|} YX) / 2."""
    x._check(y)
    s = sign(x.parity * y.parity)
    return GradedMatrix((x.matrix @ y.matrix + (y.matrix @ x.matrix).scale(s)).scale(Fraction(1, 2)),
                        x.dims, (x.parity + y.parity) % 2)


def super_commutator(x: GradedMatrix, y: GradedMatrix) -> GradedMatrix:
    """[X, Y] = XY - (-1)^{|X||Y|} YX."""
    x._check(y)
    s = sign(x.parity * y.parity)
    return GradedMatrix(x.matrix @ y.matrix - (y.matrix @ x.matrix).scale(s), x.dims,
                        (x.parity + y.parity) % 2)


@dataclass(frozen=True, eq=False)
class RepDef:
    algebra: AlgebraDef
    assignment: Mapping[Symbol, GradedMatrix]
    dims: tuple[int, int]

    def __post_init__(self):
        for s in self.algebra.basis:
            if s not in self.assignment:
                raise RepError(f"no matrix assigned to {s}")
        for s, m in self.assignment.items():
            if m.dims != tuple(self.dims):
                raise RepError(f"matrix for {s} has dims {m.dims}, expected {self.dims}")
            if not m.is_zero() and m.parity != s.parity:
                raise RepError(f"matrix for {s} has the wrong parity")

    def image(self, e: Element) -> GradedMatrix:
        parity = EVEN if e.parity() != "odd" else ODD
        total = GradedMatrix.zero(tuple(self.dims), parity)
        for s, c in e.items():
            total = total + self.assignment[s].scale(c)
        return total


def zero_rep(alg: AlgebraDef, dims: tuple[int, int]) -> RepDef:
    return RepDef(alg, {s: GradedMatrix.zero(dims, s.parity) for s in alg.basis}, dims)


def direct_sum(r1: RepDef, r2: RepDef) -> RepDef:
    """Block sum, keeping the even vectors of both summands first."""
    if r1.algebra is not r2.algebra and r1.algebra != r2.algebra:
        raise RepError("direct sum of representations of different algebras")
    dims = (r1.dims[0] + r2.dims[0], r1.dims[1] + r2.dims[1])
    return RepDef(r1.algebra, {s: _block_sum(r1.assignment[s], r2.assignment[s], dims)
                               for s in r1.algebra.basis}, dims)


def _block_sum(x: GradedMatrix, y: GradedMatrix, dims: tuple[int, int]) -> GradedMatrix:
    # new order: V0(x), V0(y), V1(x), V1(y)
    def positions(d, offset0, offset1):
        return [offset0 + i for i in range(d[0])] + [offset1 + i for i in range(d[1])]

    n = sum(dims)
    px = positions(x.dims, 0, dims[0])
    py = positions(y.dims, x.dims[0], dims[0] + x.dims[1])
    rows = [[Fraction(0)] * n for _ in range(n)]
    for src, pos in ((x, px), (y, py)):
        for i, pi in enumerate(pos):
            for j, pj in enumerate(pos):
                rows[pi][pj] = src.matrix[i, j]
    parity = x.parity if not x.is_zero() else y.parity
    return GradedMatrix(Matrix(rows, cols=n), dims, parity)


def _as_element(m: GradedMatrix) -> Element:
    return Element((Symbol(f"m{i}_{j}", EVEN), m.matrix[i, j])
                   for i in range(m.matrix.rows) for j in range(m.matrix.cols) if m.matrix[i, j])


def check_rep(rep: RepDef) -> Report:
    """Both representation conditions on all (resp. all even) basis pairs."""
    alg = rep.algebra
    report = Report("representation")
    jordan = Report("rho(ab)=[rho(a),rho(b)]_+")
    assoc = Report("rho(x1x2)=rho(x1)rho(x2)")
    for a in alg.basis:
        for b in alg.basis:
            guarded = alg.in_guard(a, b)
            try:
                prod = alg.product(a, b)
            except OutOfWindow:
                jordan.skip(guarded)
                if a.parity == EVEN and b.parity == EVEN:
                    assoc.skip(guarded)
                continue
            lhs = rep.image(prod)
            jordan.record((a, b), _as_element(lhs),
                          _as_element(jordan_product(rep.assignment[a], rep.assignment[b])), guarded)
            if a.parity == EVEN and b.parity == EVEN:
                assoc.record((a, b), _as_element(lhs),
                             _as_element(rep.assignment[a] @ rep.assignment[b]), guarded)
    report.absorb(jordan)
    report.absorb(assoc)
    return report


@dataclass(frozen=True, eq=False)
class InducedRep:
    rep: RepDef
    adjoint: LieSuperDef
    report: Report

    @property
    def assignment(self) -> dict[Symbol, GradedMatrix]:
        return self.rep.assignment


def induce_superrep(rep: RepDef, g: LieSuperDef | None = None) -> InducedRep:
    """The representation of the adjoint superalgebra determined by the odd images."""
    base = check_rep(rep)
    if not base.passed:
        raise RepError(f"not a representation: {base.witnesses[0]}")
    g = g or adjoint_algebra(rep.algebra)
    sym = g.symspace
    dims = tuple(rep.dims)
    odd_images = {y: rep.assignment[y].scale(INDUCED_SCALE) for y in rep.algebra.odd}

    def ambient_image(vec) -> GradedMatrix:
        total = GradedMatrix.zero(dims, EVEN)
        for k, c in enumerate(vec):
            if c:
                y1, y2 = sym.ambient[k]
                total = total + super_commutator(odd_images[y1], odd_images[y2]).scale(c)
        return total

    report = Report("induced")
    wd = Report("quotient-well-defined")
    for rel in sym.relations:
        wd.record(("relation",), _as_element(ambient_image(rel)), Element(), True)
    report.absorb(wd)
    if not wd.passed:
        raise RepError("induced map does not vanish on the symmetric-square relations")

    assignment = dict(odd_images)
    for s in sym.symbols:
        assignment[s] = ambient_image(sym.lift(Element.basis(s)))
    induced = RepDef(g.algebra, assignment, dims)

    hom = Report("bracket-compatible")
    for u in g.algebra.basis:
        for v in g.algebra.basis:
            guarded = g.algebra.in_guard(u, v)
            try:
                lhs = induced.image(g.algebra.product(u, v))
            except OutOfWindow:
                hom.skip(guarded)
                continue
            rhs = super_commutator(assignment[u], assignment[v])
            hom.record((u, v), _as_element(lhs), _as_element(rhs), guarded)
    report.absorb(hom)
    return InducedRep(induced, g, report)


def k3_osp_relations(a: GradedMatrix, b: GradedMatrix, e: GradedMatrix) -> Report:
    """K3 relations on A, B, E, then the sl(2)/osp(1,2) relations they imply.

    Phase 2 uses H = -(AB + BA), E' = A^2, F = -B^2 and checks
    [H,E'] = 2E', [H,F] = -2F, [E',F] = H, [H,A] = A, [H,B] = -B,
    [E',A] = 0, [E',B] = A, [F,A] = B, [F,B] = 0.
    """
    if a.parity != ODD or b.parity != ODD or e.parity != EVEN:
        raise RepError("expected odd A, B and even E")
    for m in (b, e):
        a._check(m)

    def mm(x, y):
        return x.matrix @ y.matrix

    report = Report("k3-osp")
    phase1 = Report("k3-relations")
    phase1.record(("AB-BA=E",), _mat(mm(a, b) - mm(b, a)), _mat(e.matrix), True)
    phase1.record(("AE+EA=A",), _mat(mm(a, e) + mm(e, a)), _mat(a.matrix), True)
    phase1.record(("BE+EB=B",), _mat(mm(b, e) + mm(e, b)), _mat(b.matrix), True)
    phase1.record(("E^2=E",), _mat(mm(e, e)), _mat(e.matrix), True)
    report.absorb(phase1)
    if not phase1.passed:
        report.info["phase1"] = "input is not a K3 representation"
        report.info["phase2"] = "not run"
        return report

    h = (mm(a, b) + mm(b, a)).scale(-1)
    ep = mm(a, a)
    f = mm(b, b).scale(-1)
    A, B = a.matrix, b.matrix

    def comm(x, y):
        return x @ y - y @ x

    phase2 = Report("osp-relations")
    for name, lhs, rhs in (
        ("[H,E]=2E", comm(h, ep), ep.scale(2)),
        ("[H,F]=-2F", comm(h, f), f.scale(-2)),
        ("[E,F]=H", comm(ep, f), h),
        ("[H,A]=A", comm(h, A), A),
        ("[H,B]=-B", comm(h, B), B.scale(-1)),
        ("[E,A]=0", comm(ep, A), Matrix.zeros(*A.shape)),
        ("[E,B]=A", comm(ep, B), A),
        ("[F,A]=B", comm(f, A), B),
        ("[F,B]=0", comm(f, B), Matrix.zeros(*A.shape)),
    ):
        phase2.record((name,), _mat(lhs), _mat(rhs), True)
    report.absorb(phase2)
    report.info["phase1"] = "pass"
    report.info["phase2"] = "pass" if phase2.passed else "fail"
    return report


def _mat(m: Matrix) -> Element:
    return Element((Symbol(f"m{i}_{j}", EVEN), m[i, j]) for i in range(m.rows) for j in range(m.cols) if m[i, j])


def casimir_ideal_characterization() -> str:
    """The converse direction (representations of g(a) killing an ideal of U(g(a))).

    Only the statement is represented; the Casimir element generating the
    ideal for K3 is not available in closed form here, so no check is offered.
    """
    return ("a representation of g(a) induces one of a exactly when it vanishes on an ideal of "
            "U(g(a)); for K3 that ideal is generated by the Casimir element of osp(1,2). "
            "Not constructible: the Casimir normalization is not provided.")
