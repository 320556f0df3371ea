"""Multi-indices, module exponents, admissible orders, staircase diagrams.

The basic object is a pair (alpha, j): a multi-index alpha in N^n together
with a component slot j in {1..p}.  Everything downstream (series supports,
division cells, diagrams) is built out of these pairs.  Two total orders are
provided, both compatible with translation by N^n:

* the standard order lex(L(alpha), j, alpha) for a positive linear form L;
* the slot-weighted order used for relation modules, which compares
  (alpha, i) by lex(L(alpha) + L(a_i), alpha + a_i, -i) where a_i is a fixed
  multi-index attached to slot i.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import AmbientMismatchError, PreconditionError


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def add_alpha(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def sub_alpha(a: Sequence[int], b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """a - b componentwise, or None if the difference leaves N^n."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def clipped_sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Componentwise max(a - b, 0)."""
    return tuple(max(x - y, 0) for x, y in zip(a, b))


@dataclass(frozen=True, slots=True)
class ModExponent:
    """A point of N^n x {1..p}: multi-index plus 1-based component slot."""

    alpha: tuple[int, ...]
    comp: int = 1

    def __post_init__(self):
        if self.comp < 1:
            raise PreconditionError(f"component must be >= 1, got {self.comp}")
        if any(a < 0 for a in self.alpha):
            raise PreconditionError(f"negative entry in multi-index {self.alpha}")

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    def shift(self, beta: Sequence[int]) -> "ModExponent":
        return ModExponent(add_alpha(self.alpha, beta), self.comp)

    def divides(self, other: "ModExponent") -> bool:
        """True iff other lies in self + N^n (same slot, componentwise <=)."""
        return self.comp == other.comp and all(
            a <= b for a, b in zip(self.alpha, other.alpha)
        )


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class PositiveLinearForm:
    """L(alpha) = sum of weights[k] * alpha[k], all weights > 0."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )
        if not self.weights:
            raise PreconditionError("linear form needs at least one weight")
        if any(w <= 0 for w in self.weights):
            raise PreconditionError(f"weights must be positive: {self.weights}")

    @classmethod
    def unit(cls, n: int) -> "PositiveLinearForm":
        return cls((Fraction(1),) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __call__(self, alpha: Sequence[int]) -> Fraction:
        return sum(
            (w * a for w, a in zip(self.weights, alpha)), start=Fraction(0)
        )


class StandardOrder:
    """lex(L(alpha), j, alpha); refines L-degree, then slot, then plain lex."""

    __slots__ = ("form",)

    def __init__(self, form: PositiveLinearForm):
        self.form = form

    @property
    def n(self) -> int:
        return self.form.n

    def key(self, e: ModExponent):
        return (self.form(e.alpha), e.comp, e.alpha)

    def compare(self, e1: ModExponent, e2: ModExponent) -> Ordering:
        _check_arity(self.n, e1, e2)
        k1, k2 = self.key(e1), self.key(e2)
        return Ordering.LESS if k1 < k2 else Ordering.GREATER if k1 > k2 else Ordering.EQUAL

    def __eq__(self, other):
        return isinstance(other, StandardOrder) and self.form == other.form

    def __hash__(self):
        return hash(("std", self.form.weights))

    def __repr__(self):
        return f"StandardOrder(weights={self.form.weights})"


class SyzygyOrder:
    """Slot-weighted order on N^n x {1..q} for relation vectors.

    Slot i carries the initial exponent (a_i, j_i) of the i-th basis element.
    A multiplier exponent (alpha, i) is keyed by the product exponent it
    would produce, compared in the base order, with later slots losing ties:
    key = (L(alpha)+L(a_i), j_i, alpha+a_i, -i).  For one-component modules
    the j_i entry is constant and the key reduces to
    (L(alpha)+L(a_i), alpha+a_i, -i).
    """

    __slots__ = ("form", "slots")

    def __init__(self, form: PositiveLinearForm, slots: Sequence[ModExponent]):
        if not slots:
            raise PreconditionError("need at least one slot exponent")
        self.form = form
        self.slots = tuple(slots)
        if any(len(s.alpha) != form.n for s in self.slots):
            raise AmbientMismatchError("slot exponent arity differs from form")

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def q(self) -> int:
        return len(self.slots)

    def key(self, e: ModExponent):
        s = self.slots[e.comp - 1]
        return (
            self.form(e.alpha) + self.form(s.alpha),
            s.comp,
            add_alpha(e.alpha, s.alpha),
            -e.comp,
        )

    def compare(self, e1: ModExponent, e2: ModExponent) -> Ordering:
        _check_arity(self.n, e1, e2)
        for e in (e1, e2):
            if e.comp > self.q:
                raise AmbientMismatchError(
                    f"slot {e.comp} out of range for {self.q} slots"
                )
        k1, k2 = self.key(e1), self.key(e2)
        return Ordering.LESS if k1 < k2 else Ordering.GREATER if k1 > k2 else Ordering.EQUAL

    def __eq__(self, other):
        return (
            isinstance(other, SyzygyOrder)
            and self.form == other.form
            and self.slots == other.slots
        )

    def __hash__(self):
        return hash(("syz", self.form.weights, self.slots))

    def __repr__(self):
        return f"SyzygyOrder(weights={self.form.weights}, slots={self.slots})"


def _check_arity(n: int, *exps: ModExponent):
    for e in exps:
        if len(e.alpha) != n:
            raise AmbientMismatchError(
                f"multi-index {e.alpha} has arity {len(e.alpha)}, expected {n}"
            )


def compare(order, e1: ModExponent, e2: ModExponent) -> Ordering:
    """Total comparison of two module exponents under the given order."""
    return order.compare(e1, e2)


def syzygy_order_for(basis_vertices: Sequence[ModExponent], form: PositiveLinearForm) -> SyzygyOrder:
    """Order on relation vectors derived from a list of basis initial exponents."""
    return SyzygyOrder(form, list(basis_vertices))


class Diagram:
    """A subset N of N^n x {1..p} with N + N^n = N, stored by its vertices.

    Vertices are the divisibility-minimal elements; they determine the whole
    set.  The vertex tuple is kept sorted by the active order so that two
    diagrams can be compared lexicographically (vertex lists padded with a
    formal +infinity).
    """

    __slots__ = ("n", "p", "vertices", "order")

    def __init__(self, n: int, p: int, vertices: Sequence[ModExponent], order):
        self.n = n
        self.p = p
        _check_arity(n, *vertices)
        for v in vertices:
            if v.comp > p:
                raise AmbientMismatchError(f"vertex slot {v.comp} exceeds p={p}")
        self.vertices = tuple(sorted(vertices, key=order.key))
        self.order = order

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, e: ModExponent) -> bool:
        return any(v.divides(e) for v in self.vertices)

    __contains__ = contains

    def census_key(self):
        """Canonical, order-independent identity of the underlying set."""
        return (self.n, self.p, tuple(sorted((v.comp, v.alpha) for v in self.vertices)))

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.census_key() == other.census_key()

    def __hash__(self):
        return hash(self.census_key())

    def __repr__(self):
        vs = ", ".join(f"({v.alpha},{v.comp})" for v in self.vertices)
        return f"Diagram(n={self.n}, p={self.p}, vertices=[{vs}])"


def diagram_from_exponents(
    exps: Iterable[ModExponent], *, n: int, p: int, order
) -> Diagram:
    """Smallest diagram containing the given exponents.

    Returns the divisibility-minimal elements of the input; the represented
    set is the union of e + N^n over all inputs.
    """
    exps = list(dict.fromkeys(exps))
    minimal = []
    for e in exps:
        if any(o is not e and o.divides(e) and o != e for o in exps):
            continue
        minimal.append(e)
    return Diagram(n, p, minimal, order)


def compare_diagrams(n1: Diagram, n2: Diagram) -> Ordering:
    """Lexicographic comparison of padded sorted vertex sequences.

    Both diagrams must share the ambient space and the sorting order; a
    missing vertex counts as +infinity, so a diagram whose vertex list is a
    strict prefix of another's compares greater.
    """
    if (n1.n, n1.p) != (n2.n, n2.p):
        raise AmbientMismatchError(
            f"ambients differ: ({n1.n},{n1.p}) vs ({n2.n},{n2.p})"
        )
    if n1.order != n2.order:
        raise AmbientMismatchError("diagrams sorted under different orders")
    for v1, v2 in zip(n1.vertices, n2.vertices):
        c = n1.order.compare(v1, v2)
        if c != Ordering.EQUAL:
            return c
    if len(n1.vertices) > len(n2.vertices):
        return Ordering.LESS
    if len(n1.vertices) < len(n2.vertices):
        return Ordering.GREATER
    return Ordering.EQUAL


class DeltaPartition:
    """Division cells carved out of N^n x {1..p} by an ordered divisor list.

    Cell i consists of the translates of exps[i] not claimed by any earlier
    cell; whatever no cell claims is the remainder region.  Because earlier
    cells are unions of translated orthants, the owner of an exponent is
    simply the first list entry dividing it.
    """

    __slots__ = ("exps", "n")

    def __init__(self, exps: Sequence[ModExponent]):
        if not exps:
            raise PreconditionError("delta partition needs at least one exponent")
        self.exps = tuple(exps)
        self.n = len(self.exps[0].alpha)
        _check_arity(self.n, *self.exps)

    @property
    def cell_count(self) -> int:
        return len(self.exps)

    def cell_of(self, e: ModExponent) -> Optional[int]:
        """0-based index of the owning cell, or None for the remainder region."""
        for i, v in enumerate(self.exps):
            if v.divides(e):
                return i
        return None

    def in_remainder(self, e: ModExponent) -> bool:
        return self.cell_of(e) is None

    def box_contains(self, i: int, beta: Sequence[int]) -> bool:
        """True iff exps[i] + beta still belongs to cell i."""
        return self.cell_of(self.exps[i].shift(beta)) == i

    def box_complement_generators(self, i: int) -> list[tuple[int, ...]]:
        """Multi-indices whose translates cover everything cell i loses.

        beta fails box_contains(i, beta) exactly when beta dominates one of
        the returned generators; the list may contain redundant entries.
        """
        gens = []
        a_i = self.exps[i]
        for k in range(i):
            a_k = self.exps[k]
            if a_k.comp == a_i.comp:
                gens.append(clipped_sub(a_k.alpha, a_i.alpha))
        return gens


def delta_partition(exps: Sequence[ModExponent]) -> DeltaPartition:
    """Partition of the exponent space induced by an ordered divisor list."""
    return DeltaPartition(exps)


def iter_alphas(n: int, max_degree: int):
    """All multi-indices of arity n with total degree <= max_degree,
    in (degree, lex) order."""
    def rec(prefix, remaining, slots):
        if slots == 1:
            yield prefix + (remaining,)
            return
        for k in range(remaining + 1):
            yield from rec(prefix + (k,), remaining - k, slots - 1)

    for d in range(max_degree + 1):
        yield from sorted(rec((), d, n))
