"""Desk search for finite-dimensional K3 representations.

For each graded dimension the image E of eps is an even idempotent, so up to
an even change of basis it is diag(1..1, 0..0) on each of V0 and V1.  The
relations AE + EA = A and BE + EB = B are linear and cut A, B down to a
parameter space; A is enumerated over small integer parameters and, for each
A, AB - BA = E is solved for B exactly.  Independently, every candidate with E != 0 is also
ruled out by taking traces of AB - BA = E.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import Matrix, coords_in_span, nullspace
from .reps import GradedMatrix, RepDef
from .superalg import EVEN, ODD, k3


@dataclass
class SearchEntry:
    dims: tuple[int, int]
    ranks: tuple[int, int]
    parameters: int
    searched: int
    solutions: int
    trace_obstructed: bool
    note: str


@dataclass
class SearchResult:
    found: list[RepDef] = field(default_factory=list)
    entries: list[SearchEntry] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [
            f"dims={e.dims[0]}|{e.dims[1]} rank(E)={e.ranks[0]}|{e.ranks[1]} params={e.parameters} "
            f"searched={e.searched} solutions={e.solutions} {e.note}"
            for e in self.entries
        ]


def _idempotent(dims, ranks) -> Matrix:
    d0, d1 = dims
    r0, r1 = ranks
    diag = [1 if i < r0 else 0 for i in range(d0)] + [1 if i < r1 else 0 for i in range(d1)]
    n = d0 + d1
    return Matrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def _odd_slots(dims):
    d0 = dims[0]
    n = sum(dims)
    return [(i, j) for i in range(n) for j in range(n) if (i >= d0) != (j >= d0)]


def _half_action_solutions(dims, e: Matrix) -> list[Matrix]:
    """Basis of odd X with XE + EX = X."""
    n = sum(dims)
    slots = _odd_slots(dims)
    columns = []
    for i, j in slots:
        unit = Matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], cols=n)
        res = unit @ e + e @ unit - unit
        columns.append([v for row in res.tolist() for v in row])
    if not columns:
        return []
    system = Matrix.from_columns(columns)
    out = []
    for vec in nullspace(system):
        scale = math.lcm(*(c.denominator for c in vec))
        vec = [c * scale for c in vec]
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in zip(slots, vec):
            rows[i][j] = c
        out.append(Matrix(rows, cols=n))
    return out


def search_k3_reps(max_total_dim: int = 6, values=(-1, 0, 1), max_parameters: int = 8) -> SearchResult:
    """Enumerate graded dims d0 + d1 <= max_total_dim and look for nonzero reps.

    A runs over ``values`` on the parameter lattice; for each A the relation
    AB - BA = E is linear in B and is solved exactly over the rationals, so
    the search for B is complete rather than restricted to ``values``.
    """
    alg = k3()
    eps, a, b = alg.basis
    result = SearchResult()
    for total in range(1, max_total_dim + 1):
        for d0 in range(total + 1):
            dims = (d0, total - d0)
            for r0 in range(dims[0] + 1):
                for r1 in range(dims[1] + 1):
                    result.entries.append(_search_cell(dims, (r0, r1), values, max_parameters,
                                                       result.found, alg))
    return result


def _search_cell(dims, ranks, values, max_parameters, found, alg) -> SearchEntry:
    eps, a, b = alg.basis
    e = _idempotent(dims, ranks)
    basis = _half_action_solutions(dims, e)
    k = len(basis)
    if sum(ranks) == 0:
        return SearchEntry(dims, ranks, k, 0, 0, False, "E=0 forces A=B=0 (zero rep only)")
    note = "trace(AB-BA)=0 but trace(E)>0"
    if k > max_parameters:
        return SearchEntry(dims, ranks, k, 0, 0, True, note + "; search skipped (too many parameters)")
    target = [int(v) for v in _flatten(e)]
    # C[i][j] = basis_i basis_j - basis_j basis_i, flattened; integral because
    # the basis is scaled to integer entries
    comm = [[[int(v) for v in _flatten(x @ y - y @ x)] for y in basis] for x in basis]
    searched = solutions = 0
    for alpha in itertools.product(values, repeat=k):
        searched += 1
        columns = []
        for j in range(k):
            col = [0] * len(target)
            for i, c in enumerate(alpha):
                if c:
                    col = [u + c * v for u, v in zip(col, comm[i][j])]
            columns.append(col)
        if not _consistent(columns, target):
            continue
        beta = coords_in_span([Fraction(v) for v in target], [[Fraction(v) for v in c] for c in columns])
        solutions += 1
        A = _combine(alpha, basis, dims)
        B = _combine(beta, basis, dims)
        found.append(RepDef(alg, {
            eps: GradedMatrix(e, dims, EVEN),
            a: GradedMatrix(A, dims, ODD),
            b: GradedMatrix(B, dims, ODD),
        }, dims))
    return SearchEntry(dims, ranks, k, searched, solutions, True, note)


def _consistent(columns: list[list[int]], target: list[int]) -> bool:
    """Is target in the span of the integer columns?  Fraction-free elimination."""
    rows = [[c[r] for c in columns] + [target[r]] for r in range(len(target))]
    ncols = len(columns)
    pivot_row = 0
    for col in range(ncols):
        piv = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        p = rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                f = rows[r][col]
                new = [p[col] * u - f * v for u, v in zip(rows[r], p)]
                g = math.gcd(*new)
                rows[r] = [u // g for u in new] if g > 1 else new
        pivot_row += 1
    return not any(row[-1] for row in rows[pivot_row:])


def _flatten(m: Matrix) -> list[Fraction]:
    return [Fraction(v) for row in m.tolist() for v in row]


def _combine(coeffs, basis, dims) -> Matrix:
    n = sum(dims)
    total = Matrix.zeros(n, n)
    for c, m in zip(coeffs, basis):
        if c:
            total = total + m.scale(c)
    return total
