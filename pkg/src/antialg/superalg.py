"""Z/2-graded algebras given by structure constants.

Basis symbols carry a parity and an optional index.  Indices of the
infinite families are stored doubled so that half-integer labels stay
integral: a stored index ``k`` means the label ``k/2``.

Infinite families are only ever materialized on a finite window.  A
product whose result leaves the window is recorded as
:data:`OUT_OF_WINDOW`, which is distinct from zero; multiplying through
such an entry raises :class:`OutOfWindow` so that checks can skip the
offending tuple instead of reporting a false verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

EVEN = 0
ODD = 1
PARITY_NAMES = {EVEN: "even", ODD: "odd"}


class AlgebraError(ValueError):
    """Malformed algebra data or an input that does not belong to the algebra."""


class UnknownSymbol(AlgebraError):
    pass


class OutOfWindow(Exception):
    """A product left the materialized window of an infinite family."""

    def __init__(self, left, right):
        super().__init__(f"{left} * {right} leaves the window")
        self.left = left
        self.right = right


class _OutOfWindowMarker:
    __slots__ = ()

    def __repr__(self) -> str:
        return "OUT_OF_WINDOW"

    def __reduce__(self):
        return "OUT_OF_WINDOW"


OUT_OF_WINDOW = _OutOfWindowMarker()


def format_label(doubled: int) -> str:
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


@dataclass(frozen=True)
class Symbol:
    name: str
    parity: int
    index: int | None = None

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise AlgebraError(f"bad parity {self.parity!r} for {self.name}")

    @property
    def label(self) -> Fraction | None:
        """The (possibly half-integer) index label, or None."""
        return None if self.index is None else Fraction(self.index, 2)

    def __str__(self) -> str:
        if self.index is None:
            return self.name
        return f"{self.name}[{format_label(self.index)}]"


class Element:
    """Finite linear combination of basis symbols with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Symbol, object] | Iterable[tuple[Symbol, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Symbol, Fraction] = {}
        for s, c in items:
            c = Fraction(c)
            if c:
                acc[s] = acc.get(s, 0) + c
        self._terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def basis(cls, s: Symbol, coeff=1) -> Element:
        return cls({s: coeff})

    @classmethod
    def _raw(cls, terms: dict) -> Element:
        e = cls.__new__(cls)
        e._terms = terms
        return e

    def items(self):
        return self._terms.items()

    def symbols(self):
        return self._terms.keys()

    def coeff(self, s: Symbol) -> Fraction:
        return self._terms.get(s, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return isinstance(other, Element) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: Element) -> Element:
        out = dict(self._terms)
        for s, c in other._terms.items():
            v = out.get(s, 0) + c
            if v:
                out[s] = v
            else:
                out.pop(s, None)
        return Element._raw(out)

    def __neg__(self) -> Element:
        return Element._raw({s: -c for s, c in self._terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __mul__(self, c) -> Element:
        if isinstance(c, Element):
            raise TypeError("use an algebra to multiply two elements")
        c = Fraction(c)
        if not c:
            return Element()
        return Element._raw({s: c * v for s, v in self._terms.items()})

    __rmul__ = __mul__

    def parity(self):
        return parity_of(self)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s, c in self._terms.items():
            if c == 1:
                parts.append(str(s))
            elif c == -1:
                parts.append(f"-{s}")
            else:
                parts.append(f"{c} {s}")
        return " + ".join(parts).replace("+ -", "- ")


def parity_of(e: Element) -> str:
    """'even', 'odd' or 'mixed'.  The zero element is even by convention."""
    parities = {s.parity for s in e.symbols()}
    if not parities:
        return "even"
    if len(parities) == 1:
        return PARITY_NAMES[parities.pop()]
    return "mixed"


@dataclass(frozen=True)
class WindowSpec:
    """Finite truncation of an indexed family.

    Symbols with ``|label| <= bound`` are materialized.  ``guard`` is the inner
    band used when reporting which identity tuples lie well inside the window.
    """

    bound: Fraction
    guard: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))
        guard = self.bound if self.guard is None else Fraction(self.guard)
        object.__setattr__(self, "guard", guard)
        if self.bound < 0:
            raise AlgebraError("window bound must be nonnegative")
        if guard < 0 or guard > self.bound:
            raise AlgebraError("guard must satisfy 0 <= guard <= bound")

    def contains(self, s: Symbol) -> bool:
        return s.index is None or abs(s.label) <= self.bound

    def guards(self, s: Symbol) -> bool:
        return s.index is None or abs(s.label) <= self.guard


@dataclass(frozen=True, eq=False)
class AlgebraDef:
    """A graded algebra with an explicit multiplication table.

    ``table`` maps ordered basis pairs to an :class:`Element` or to
    :data:`OUT_OF_WINDOW`.  Missing pairs are an error: the table is total.
    """

    name: str
    basis: tuple[Symbol, ...]
    table: Mapping[tuple[Symbol, Symbol], object]
    profile: str | None = None
    window: WindowSpec | None = None
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        lookup = {}
        for s in basis:
            key = (s.name, s.index)
            if key in lookup:
                raise AlgebraError(f"duplicate basis symbol {s}")
            lookup[key] = s
        object.__setattr__(self, "_lookup", lookup)
        members = set(basis)
        table = dict(self.table)
        for x in basis:
            for y in basis:
                if (x, y) not in table:
                    raise AlgebraError(f"table has no entry for {x} * {y}")
                v = table[(x, y)]
                if v is OUT_OF_WINDOW:
                    continue
                if not isinstance(v, Element):
                    raise AlgebraError(f"entry {x} * {y} is not an Element")
                for s in v.symbols():
                    if s not in members:
                        raise AlgebraError(f"entry {x} * {y} uses unknown symbol {s}")
                    if s.parity != (x.parity + y.parity) % 2:
                        raise AlgebraError(f"entry {x} * {y} has the wrong parity")
        object.__setattr__(self, "table", table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraDef)
            and self.basis == other.basis
            and all(
                _entry_eq(self.table[k], other.table[k]) for k in self.table
            )
        )

    __hash__ = object.__hash__

    @property
    def even(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.basis if s.parity == EVEN)

    @property
    def odd(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.basis if s.parity == ODD)

    @property
    def dims(self) -> tuple[int, int]:
        return (len(self.even), len(self.odd))

    def symbol(self, name: str, index: int | None = None) -> Symbol:
        try:
            return self._lookup[(name, index)]
        except KeyError:
            label = name if index is None else f"{name}[{format_label(index)}]"
            raise UnknownSymbol(f"{label} is not a basis symbol of {self.name}") from None

    def find(self, text: str) -> Symbol:
        """Look a symbol up by its printed form, e.g. ``eps`` or ``a[-1/2]``."""
        for s in self.basis:
            if str(s) == text:
                return s
        raise UnknownSymbol(f"{text} is not a basis symbol of {self.name}")

    def e(self, text: str, coeff=1) -> Element:
        return Element.basis(self.find(text), coeff)

    def product(self, x: Symbol, y: Symbol) -> Element:
        try:
            v = self.table[(x, y)]
        except KeyError:
            bad = x if x not in self._lookup.values() else y
            raise UnknownSymbol(f"{bad} is not a basis symbol of {self.name}") from None
        if v is OUT_OF_WINDOW:
            raise OutOfWindow(x, y)
        return v

    def multiply(self, x: Element, y: Element) -> Element:
        acc: dict[Symbol, Fraction] = {}
        for s, c in x.items():
            for t, d in y.items():
                cd = c * d
                for u, w in self.product(s, t).items():
                    acc[u] = acc.get(u, 0) + cd * w
        return Element._raw({s: c for s, c in acc.items() if c})

    def in_guard(self, *symbols: Symbol) -> bool:
        if self.window is None:
            return True
        return all(self.window.guards(s) for s in symbols)

    def is_out(self, x: Symbol, y: Symbol) -> bool:
        return self.table[(x, y)] is OUT_OF_WINDOW

    def vector(self, e: Element, symbols: tuple[Symbol, ...] | None = None) -> list[Fraction]:
        """Coordinates of ``e`` on ``symbols`` (default: the whole basis)."""
        symbols = self.basis if symbols is None else symbols
        pos = {s: i for i, s in enumerate(symbols)}
        v = [Fraction(0)] * len(symbols)
        for s, c in e.items():
            if s not in pos:
                raise UnknownSymbol(f"{s} is not among the requested symbols")
            v[pos[s]] = c
        return v

    def element(self, vec, symbols: tuple[Symbol, ...] | None = None) -> Element:
        symbols = self.basis if symbols is None else symbols
        return Element(zip(symbols, vec))

    def out_of_window_count(self) -> int:
        return sum(1 for v in self.table.values() if v is OUT_OF_WINDOW)


def _entry_eq(a, b) -> bool:
    if a is OUT_OF_WINDOW or b is OUT_OF_WINDOW:
        return a is b
    return a == b


def multiply(x: Element, y: Element, alg: AlgebraDef) -> Element:
    """Bilinear product of two elements using the structure constants of ``alg``."""
    return alg.multiply(x, y)


def sign(n: int) -> int:
    return -1 if n % 2 else 1


# -- indexed families ---------------------------------------------------------

Rule = Callable[[Symbol, Symbol], list]


@dataclass(frozen=True)
class IndexedFamily:
    """Rule-based infinite algebra.

    ``symbols(window)`` lists the basis symbols inside a window and
    ``rule(x, y)`` returns the product as ``[(coeff, Symbol), ...]`` where the
    symbols may lie outside any window.
    """

    name: str
    symbols: Callable[[WindowSpec], list[Symbol]]
    rule: Rule
    index_domain: str
    profile: str | None = None


def _half_integer_labels(bound: Fraction, odd: bool) -> Iterator[int]:
    top = int(2 * bound)
    for k in range(-top, top + 1):
        if (k % 2 == 1) == odd:
            yield k


def _ak1_symbols(w: WindowSpec) -> list[Symbol]:
    evens = [Symbol("e", EVEN, k) for k in _half_integer_labels(w.bound, odd=False)]
    odds = [Symbol("a", ODD, k) for k in _half_integer_labels(w.bound, odd=True)]
    return evens + odds


def _ak1_rule(x: Symbol, y: Symbol) -> list:
    # labels are doubled: e_n <-> 2n, a_i <-> 2i
    if x.parity == EVEN and y.parity == EVEN:
        return [(Fraction(1), Symbol("e", EVEN, x.index + y.index))]
    if x.parity != y.parity:
        return [(Fraction(1, 2), Symbol("a", ODD, x.index + y.index))]
    return [(Fraction(x.index - y.index, 4), Symbol("e", EVEN, x.index + y.index))]


AK1_FAMILY = IndexedFamily(
    name="ak1",
    symbols=_ak1_symbols,
    rule=_ak1_rule,
    index_domain="e[n] for integer n, a[i] for half-integer i",
    profile="antialgebra",
)


def materialize_window(fam: IndexedFamily, w: WindowSpec) -> AlgebraDef:
    """Finite table of ``fam`` on the window ``w``.

    Entries whose nonzero terms leave the window become :data:`OUT_OF_WINDOW`.
    """
    basis = fam.symbols(w)
    members = set(basis)
    table = {}
    for x in basis:
        for y in basis:
            terms = [(c, s) for c, s in fam.rule(x, y) if c]
            if any(s not in members for _, s in terms):
                table[(x, y)] = OUT_OF_WINDOW
            else:
                table[(x, y)] = Element((s, c) for c, s in terms)
    return AlgebraDef(
        name=f"{fam.name}[{w.bound}]", basis=tuple(basis), table=table, profile=fam.profile, window=w
    )


# -- built-ins ----------------------------------------------------------------

def k3() -> AlgebraDef:
    """The tiny Kaplansky algebra: one even vector eps and two odd vectors a, b."""
    eps, a, b = Symbol("eps", EVEN), Symbol("a", ODD), Symbol("b", ODD)
    half = Fraction(1, 2)
    z = Element()
    table = {
        (eps, eps): Element.basis(eps),
        (eps, a): Element.basis(a, half),
        (a, eps): Element.basis(a, half),
        (eps, b): Element.basis(b, half),
        (b, eps): Element.basis(b, half),
        (a, b): Element.basis(eps, half),
        (b, a): Element.basis(eps, -half),
        (a, a): z,
        (b, b): z,
    }
    return AlgebraDef(name="k3", basis=(eps, a, b), table=table, profile="antialgebra")


BUILTINS = ("k3", "ak1", "osp12", "k1", "witt")


def builtin(name: str, window: WindowSpec | int | Fraction | None = None) -> AlgebraDef:
    """Built-in algebras.  ``ak1``, ``k1`` and ``witt`` need a window (a WindowSpec or a bound)."""
    if window is not None and not isinstance(window, WindowSpec):
        window = WindowSpec(Fraction(window))
    if name == "k3":
        return k3()
    if name == "osp12":
        from .adjoint import adjoint_algebra

        alg = adjoint_algebra(k3()).algebra
        return AlgebraDef(name="osp12", basis=alg.basis, table=alg.table, profile="lie-super")
    if name not in BUILTINS:
        raise AlgebraError(f"unknown built-in {name!r}; choose from {', '.join(BUILTINS)}")
    if window is None:
        raise AlgebraError(f"built-in {name} is infinite and needs a window")
    if name == "ak1":
        return materialize_window(AK1_FAMILY, window)
    from .densities import realize_window

    k1 = realize_window("liesuper", window)
    if name == "k1":
        return AlgebraDef(name=f"k1[{window.bound}]", basis=k1.basis, table=k1.table,
                          profile="lie-super", window=window)
    even = k1.even
    table = {(x, y): k1.table[(x, y)] for x in even for y in even}
    return AlgebraDef(name=f"witt[{window.bound}]", basis=even, table=table, profile="lie-super",
                      window=window)


def basis_elements(alg: AlgebraDef) -> dict[Symbol, Element]:
    return {s: Element.basis(s) for s in alg.basis}
