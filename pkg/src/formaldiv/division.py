"""Formal division of truncated series vectors, and standard bases.

Division works with any admissible order: the divisor list's initial
exponents carve the exponent space into cells (one per divisor, plus a
remainder region), and the working series is repeatedly split along those
cells.  One split step cancels every current term exactly, so the initial
exponent of the working series strictly increases; since only finitely many
exponents have total degree <= trunc, the loop terminates, leaving quotients
whose shifted supports sit inside their cells and a remainder supported on
the remainder region.

Over a localized coefficient ring the initial coefficients of the divisors
are the only values ever inverted; each one is recorded in the shared
denominator set, and the record of newly registered polynomials is returned
with every result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .coefficients import LocalizedRing, ParamPolynomial
from .errors import (
    PreconditionError,
    ZeroDivisorError,
)
from .exponents import (
    DeltaPartition,
    Diagram,
    ModExponent,
    clipped_sub,
    diagram_from_exponents,
    sub_alpha,
)
from .series import TruncatedSeries


@dataclass
class DivisionResult:
    """Quotients, remainder and the support certificates they satisfy."""

    quotients: tuple[TruncatedSeries, ...]
    remainder: TruncatedSeries
    partition: DeltaPartition
    new_denominators: tuple[ParamPolynomial, ...] = ()

    def __add__(self, other: "DivisionResult") -> "DivisionResult":
        return DivisionResult(
            tuple(a + b for a, b in zip(self.quotients, other.quotients)),
            self.remainder + other.remainder,
            self.partition,
            self.new_denominators + other.new_denominators,
        )


@dataclass
class StandardBasis:
    """Vertex representatives of a module of truncated series vectors.

    elements[i] has initial exponent equal to diagram.vertices[i]; provenance
    expresses each element in the original generators (valid modulo degree >
    trunc).  canonical means each element is its vertex monomial plus a tail
    supported outside the diagram.
    """

    diagram: Diagram
    elements: tuple[TruncatedSeries, ...]
    provenance: tuple[tuple[TruncatedSeries, ...], ...]
    order: object
    canonical: bool = False
    new_denominators: tuple[ParamPolynomial, ...] = ()

    @property
    def vertices(self) -> tuple[ModExponent, ...]:
        return self.diagram.vertices

    def __len__(self):
        return len(self.elements)


def _ensure_unit(ring, coeff, sink: list):
    """Make coeff invertible over a localized ring, recording new generators."""
    if isinstance(ring, LocalizedRing):
        g = ring.dset.register(coeff.num)
        if g is not None:
            sink.append(g)


def hironaka_divide(
    order,
    divisors: Sequence[TruncatedSeries],
    dividend: TruncatedSeries,
) -> DivisionResult:
    """Divide a series vector by an ordered list of nonzero series vectors.

    Returns the unique quotients/remainder with cell-support certificates;
    dividend - sum(Q_i * divisor_i) - R has no term of degree <= trunc.
    """
    if not divisors:
        raise PreconditionError("need at least one divisor")
    for d in divisors:
        dividend._check(d)
        if d.is_zero:
            raise ZeroDivisorError("zero series among the divisors")

    ring = dividend.ring
    n, p, trunc = dividend.n, dividend.p, dividend.trunc
    inits = [d.initial(order) for d in divisors]
    partition = DeltaPartition([it.exponent for it in inits])

    new_dens: list[ParamPolynomial] = []
    for it in inits:
        _ensure_unit(ring, it.coefficient, new_dens)

    tails = [d - it.monomial for d, it in zip(divisors, inits)]

    quotients = [dict() for _ in divisors]
    remainder: dict[ModExponent, object] = {}
    working = dict(dividend.terms)

    while working:
        # split every current term into its cell's quotient or the remainder
        step = [dict() for _ in divisors]
        for e, c in working.items():
            i = partition.cell_of(e)
            if i is None:
                remainder[e] = ring.add(remainder.get(e, ring.zero), c)
                if ring.is_zero(remainder[e]):
                    del remainder[e]
            else:
                beta = sub_alpha(e.alpha, inits[i].exponent.alpha)
                step[i][beta] = ring.divide_by_unit(c, inits[i].coefficient)
        # the split cancels all of `working`; what survives is minus the
        # quotient steps times the divisor tails, every term strictly later
        nxt: dict[ModExponent, object] = {}
        for i, qstep in enumerate(step):
            if not qstep:
                continue
            qi = quotients[i]
            for beta, qc in qstep.items():
                qi[beta] = ring.add(qi.get(beta, ring.zero), qc)
                if ring.is_zero(qi[beta]):
                    del qi[beta]
            for beta, qc in qstep.items():
                shift = sum(beta)
                for te, tc in tails[i].terms.items():
                    if te.degree + shift > trunc:
                        continue
                    e = te.shift(beta)
                    s = ring.sub(nxt.get(e, ring.zero), ring.mul(qc, tc))
                    if ring.is_zero(s):
                        nxt.pop(e, None)
                    else:
                        nxt[e] = s
        working = nxt

    q_series = tuple(
        TruncatedSeries(
            n, 1, trunc, ring,
            {ModExponent(beta, 1): c for beta, c in q.items()},
        )
        for q in quotients
    )
    r_series = TruncatedSeries(n, p, trunc, ring, remainder)
    return DivisionResult(q_series, r_series, partition, tuple(new_dens))


def is_member(
    order,
    generators: Union[StandardBasis, Sequence[TruncatedSeries]],
    g: TruncatedSeries,
    *,
    force: bool = False,
) -> tuple[bool, DivisionResult]:
    """Membership of g modulo degree > trunc, with the division witness.

    The divisor list must be a standard basis for a conclusive answer; pass
    force=True to divide by an arbitrary list anyway (remainder zero then
    still certifies membership, but nonzero proves nothing).
    """
    if isinstance(generators, StandardBasis):
        elements = generators.elements
    else:
        if not force:
            raise PreconditionError(
                "membership needs a StandardBasis; pass force=True to override"
            )
        elements = tuple(generators)
    if g.is_zero:
        zero = TruncatedSeries.zero(g.n, 1, g.trunc, g.ring)
        partition = DeltaPartition([e.initial(order).exponent for e in elements])
        return True, DivisionResult(
            tuple(zero for _ in elements),
            TruncatedSeries.zero(g.n, g.p, g.trunc, g.ring),
            partition,
        )
    res = hironaka_divide(order, elements, g)
    return res.remainder.is_zero, res


def _slot_tests(exps: Sequence[ModExponent], i: int) -> list[tuple[int, ...]]:
    """Minimal monomial shifts of exps[i] that land in an earlier cell."""
    deltas = []
    for k in range(i):
        if exps[k].comp == exps[i].comp:
            deltas.append(clipped_sub(exps[k].alpha, exps[i].alpha))
    deltas = list(dict.fromkeys(deltas))
    minimal = [
        d for d in deltas
        if not any(o != d and all(x <= y for x, y in zip(o, d)) for o in deltas)
    ]
    minimal.sort(key=lambda d: (sum(d), d))
    return minimal


def complete_to_standard_basis(
    order,
    generators: Sequence[TruncatedSeries],
) -> StandardBasis:
    """Close a generator list under division up to the truncation degree.

    Every monomial multiple of a list element that crosses into an earlier
    cell is divided by the current list; a nonzero remainder has its initial
    exponent outside the current staircase and is appended.  Each append
    strictly enlarges the staircase within the finite degree-<= trunc grid,
    so the loop terminates.  Appending keeps earlier cells intact, which is
    why already-reduced tests never need revisiting.
    """
    gens = list(generators)
    if not gens:
        raise PreconditionError("cannot complete an empty generator list")
    first = gens[0]
    n, p, trunc, ring = first.n, first.p, first.trunc, first.ring
    for g in gens:
        first._check(g)
        if g.is_zero:
            raise ZeroDivisorError("zero series among the generators")

    q = len(gens)
    one = ring.one

    def unit_vector(k):
        return tuple(
            TruncatedSeries.monomial(ModExponent((0,) * n, 1), one, n, 1, trunc, ring)
            if j == k
            else TruncatedSeries.zero(n, 1, trunc, ring)
            for j in range(q)
        )

    work = list(gens)
    prov: list[tuple[TruncatedSeries, ...]] = [unit_vector(k) for k in range(q)]
    new_dens: list[ParamPolynomial] = []
    exps = [g.initial(order).exponent for g in work]
    for g in work:
        _ensure_unit(ring, g.initial(order).coefficient, new_dens)

    pending = []
    for i in range(len(work)):
        pending.extend((gamma, i) for gamma in _slot_tests(exps, i))

    cursor = 0
    while cursor < len(pending):
        gamma, i = pending[cursor]
        cursor += 1
        test = work[i].mul_monomial(one, gamma)
        if test.is_zero:
            continue
        res = hironaka_divide(order, work, test)
        new_dens.extend(res.new_denominators)
        r = res.remainder
        if r.is_zero:
            continue
        _ensure_unit(ring, r.initial(order).coefficient, new_dens)
        # provenance: r = x^gamma * work[i] - sum_j Q_j * work[j]
        pvec = list(p_s.mul_monomial(one, gamma) for p_s in prov[i])
        for j, qj in enumerate(res.quotients):
            if qj.is_zero:
                continue
            pvec = [acc - qj.mul_series(term) for acc, term in zip(pvec, prov[j])]
        work.append(r)
        prov.append(tuple(pvec))
        exps.append(r.initial(order).exponent)
        t = len(work) - 1
        pending.extend((g2, t) for g2 in _slot_tests(exps, t))

    diagram = diagram_from_exponents(exps, n=n, p=p, order=order)
    elements = []
    provenance = []
    for v in diagram.vertices:
        idx = next(i for i, e in enumerate(exps) if e == v)
        elements.append(work[idx])
        provenance.append(prov[idx])
    return StandardBasis(
        diagram=diagram,
        elements=tuple(elements),
        provenance=tuple(provenance),
        order=order,
        canonical=False,
        new_denominators=tuple(dict.fromkeys(new_dens)),
    )


def canonicalize(basis: StandardBasis) -> StandardBasis:
    """Replace each element by vertex monomial + tail outside the diagram.

    The result is the unique such basis modulo degree > trunc, independent of
    which generators produced the diagram.
    """
    order = basis.order
    new_dens = list(basis.new_denominators)
    elements = []
    provenance = []
    for v in basis.diagram.vertices:
        sample = basis.elements[0]
        mono = TruncatedSeries.monomial(
            v, sample.ring.one, sample.n, sample.p, sample.trunc, sample.ring
        )
        res = hironaka_divide(order, basis.elements, mono)
        new_dens.extend(res.new_denominators)
        psi = mono - res.remainder
        pvec = None
        for qj, pv in zip(res.quotients, basis.provenance):
            contrib = tuple(qj.mul_series(t) for t in pv)
            pvec = contrib if pvec is None else tuple(
                a + b for a, b in zip(pvec, contrib)
            )
        elements.append(psi)
        provenance.append(pvec)
    return StandardBasis(
        diagram=basis.diagram,
        elements=tuple(elements),
        provenance=tuple(provenance),
        order=order,
        canonical=True,
        new_denominators=tuple(dict.fromkeys(new_dens)),
    )


def minimal_generating_subset(
    order,
    generators: Union[StandardBasis, Sequence[TruncatedSeries]],
) -> tuple[int, tuple[int, ...]]:
    """Greedy minimal subset generating the same staircase diagram.

    Highest indices are considered for elimination first, so ties resolve to
    the lowest-index survivors.  The survivor count equals the dimension of
    the module modulo the maximal ideal, any elimination order agreeing by
    the usual spanning-set argument.
    """
    if isinstance(generators, StandardBasis):
        gens = list(generators.elements)
    else:
        gens = list(generators)
    if not gens:
        raise PreconditionError("no generators given")
    full = complete_to_standard_basis(order, gens).diagram
    keep = list(range(len(gens)))
    for idx in reversed(range(len(gens))):
        if len(keep) == 1:
            break
        candidate = [i for i in keep if i != idx]
        d = complete_to_standard_basis(order, [gens[i] for i in candidate]).diagram
        if d == full:
            keep = candidate
    return len(keep), tuple(keep)


def residual(
    result: DivisionResult,
    divisors: Sequence[TruncatedSeries],
    dividend: TruncatedSeries,
) -> TruncatedSeries:
    """dividend - sum(Q_i * divisor_i) - remainder; zero when exact."""
    acc = dividend - result.remainder
    for qi, d in zip(result.quotients, divisors):
        acc = acc - qi.mul_series(d)
    return acc
