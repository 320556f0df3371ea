"""Parametrized families of series modules.

Generators carry polynomial coefficients in named parameters; evaluating the
parameters at a rational point specializes the family to a plain module over
the rationals.  The staircase diagram computed over the localized parameter
ring is the generic one: at any sample point it can only stay equal or grow
later in the diagram order, and equality is certified by the nonvanishing of
an explicit list of polynomials (the coefficients inverted along the way).
No parameter-space geometry is computed; sampling plus certificates stand in
for the stratification, and the reports say only what was sampled.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .coefficients import (
    QQ,
    DenominatorSet,
    LocalizedRing,
    ParamPolynomial,
    PolynomialRing,
)
from .division import StandardBasis, complete_to_standard_basis, hironaka_divide
from .errors import (
    PreconditionError,
    VanishingDenominatorError,
)
from .exponents import (
    Diagram,
    ModExponent,
    Ordering,
    PositiveLinearForm,
    StandardOrder,
    compare_diagrams,
    iter_alphas,
)
from .linalg import kernel_basis, solvable
from .series import TruncatedSeries
from .syzygies import RelationPresentation, active_part, relations_of_generators


@dataclass
class ParamModule:
    """A tuple of series generators with polynomial parameter coefficients."""

    order: StandardOrder
    generators: tuple[TruncatedSeries, ...]
    param_names: tuple[str, ...]
    denominator_seed: tuple[ParamPolynomial, ...] = ()

    def __post_init__(self):
        if not self.generators:
            raise PreconditionError("family needs at least one generator")
        first = self.generators[0]
        for g in self.generators:
            first._check(g)
            if g.is_zero:
                raise PreconditionError("zero generator in parametrized family")

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def p(self) -> int:
        return self.generators[0].p

    @property
    def trunc(self) -> int:
        return self.generators[0].trunc

    def localized(self) -> tuple[LocalizedRing, list[TruncatedSeries]]:
        """Fresh localized ring plus the generators lifted into it."""
        base = PolynomialRing(self.param_names)
        dset = DenominatorSet(self.param_names, seed=self.denominator_seed)
        ring = LocalizedRing(base, dset)
        if isinstance(self.generators[0].ring, LocalizedRing):
            raise PreconditionError(
                "family generators must carry polynomial coefficients; "
                "denominators belong in the denominator seed"
            )
        gens = [g.map_coefficients(ring.from_poly, ring) for g in self.generators]
        return ring, gens


def specialize(pm: ParamModule, point: Sequence[Fraction]) -> list[TruncatedSeries]:
    """Evaluate every generator coefficient at a rational parameter point.

    Points where a declared denominator-seed polynomial vanishes lie outside
    the family's domain and are rejected.
    """
    point = tuple(Fraction(v) for v in point)
    if len(point) != len(pm.param_names):
        raise PreconditionError(
            f"point arity {len(point)} != parameter arity {len(pm.param_names)}"
        )
    for seed in pm.denominator_seed:
        if not seed.evaluate(point):
            raise VanishingDenominatorError(
                f"declared denominator {seed} vanishes at {point}"
            )
    ring = pm.generators[0].ring
    return [
        g.map_coefficients(lambda c: ring.evaluate(c, point), QQ)
        for g in pm.generators
    ]


@dataclass
class ExceptionalCertificates:
    """Polynomials whose joint nonvanishing certifies generic behaviour."""

    initial_coefficients: tuple[ParamPolynomial, ...]
    denominator_generators: tuple[ParamPolynomial, ...]
    det_u_constant: Optional[ParamPolynomial] = None

    def all_polys(self) -> tuple[ParamPolynomial, ...]:
        seen = []
        for p in (
            *self.initial_coefficients,
            *self.denominator_generators,
            *((self.det_u_constant,) if self.det_u_constant is not None else ()),
        ):
            if p.is_constant:
                continue
            if p not in seen:
                seen.append(p)
        return tuple(seen)

    def flags_at(self, point) -> tuple[bool, ...]:
        return tuple(bool(p.evaluate(point)) for p in self.all_polys())

    def nonvanishing_at(self, point) -> bool:
        return all(self.flags_at(point))


def _generic_basis(pm: ParamModule) -> tuple[StandardBasis, ExceptionalCertificates, LocalizedRing]:
    ring, gens = pm.localized()
    basis = complete_to_standard_basis(pm.order, gens)
    inits = tuple(
        e.initial(pm.order).coefficient.num for e in basis.elements
    )
    certs = ExceptionalCertificates(
        initial_coefficients=inits,
        denominator_generators=tuple(ring.dset.generators),
    )
    return basis, certs, ring

def generic_diagram(pm: ParamModule) -> tuple[Diagram, ExceptionalCertificates]:
    """Staircase diagram over the localized parameter ring, with the
    polynomials inverted while computing it."""
    basis, certs, _ = _generic_basis(pm)
    return basis.diagram, certs


@dataclass
class PointRecord:
    point: tuple[Fraction, ...]
    status: str  # "ok" | "skipped"
    reason: Optional[str] = None
    diagram: Optional[Diagram] = None
    comparison: Optional[Ordering] = None
    certificates_nonzero: Optional[tuple[bool, ...]] = None


@dataclass
class RefinementInfo:
    census: list[tuple[Diagram, int]]
    stable: bool


@dataclass
class SemicontinuityReport:
    generic: Diagram
    certificates: ExceptionalCertificates
    records: list[PointRecord]
    census: list[tuple[Diagram, int]]
    semicontinuity_ok: bool
    genericity_ok: bool
    refinement: Optional[RefinementInfo] = None


def _specialized_diagram(pm: ParamModule, point) -> Diagram:
    gens_a = specialize(pm, point)
    nonzero = [g for g in gens_a if not g.is_zero]
    if not nonzero:
        return Diagram(pm.n, pm.p, [], pm.order)
    return complete_to_standard_basis(pm.order, nonzero).diagram


def _census_of(diagrams: list[Diagram]) -> list[tuple[Diagram, int]]:
    counts: dict = {}
    for d in diagrams:
        counts.setdefault(d.census_key(), [d, 0])[1] += 1
    entries = [(d, c) for d, c in counts.values()]
    entries.sort(key=cmp_to_key(lambda a, b: int(compare_diagrams(a[0], b[0]))))
    return entries


def semicontinuity_scan(
    pm: ParamModule,
    points: Sequence[Sequence[Fraction]],
    refine_points: Optional[Sequence[Sequence[Fraction]]] = None,
) -> SemicontinuityReport:
    """Specialize at every point, compare diagrams, and tally the census.

    The generic diagram never compares greater than a specialized one, and
    matches it wherever every certificate is nonzero; either failing is
    surfaced through the report flags, never silently accepted.  The census
    is evidence about the sampled points only.
    """
    generic, certs = generic_diagram(pm)
    records = []
    diagrams = []
    semicontinuity_ok = True
    genericity_ok = True
    for raw in points:
        point = tuple(Fraction(v) for v in raw)
        try:
            na = _specialized_diagram(pm, point)
        except VanishingDenominatorError as exc:
            records.append(PointRecord(point, "skipped", reason=str(exc)))
            continue
        cmpr = compare_diagrams(generic, na)
        flags = certs.flags_at(point)
        if cmpr == Ordering.GREATER:
            semicontinuity_ok = False
        if all(flags) and na != generic:
            genericity_ok = False
        records.append(
            PointRecord(point, "ok", diagram=na, comparison=cmpr,
                        certificates_nonzero=flags)
        )
        diagrams.append(na)

    refinement = None
    if refine_points is not None:
        refined = []
        for raw in refine_points:
            point = tuple(Fraction(v) for v in raw)
            try:
                refined.append(_specialized_diagram(pm, point))
            except VanishingDenominatorError:
                continue
        base_keys = {d.census_key() for d in diagrams}
        refined_keys = {d.census_key() for d in refined}
        refinement = RefinementInfo(
            census=_census_of(refined), stable=refined_keys == base_keys
        )

    return SemicontinuityReport(
        generic=generic,
        certificates=certs,
        records=records,
        census=_census_of(diagrams),
        semicontinuity_ok=semicontinuity_ok,
        genericity_ok=genericity_ok,
        refinement=refinement,
    )


def relation_multiplier_bound(order, generators) -> int:
    """Multiplier degree bound keeping oracle relations honest: trunc minus
    the largest vertex degree of the completed diagram of the generators."""
    nonzero = [g for g in generators if not g.is_zero]
    if not nonzero:
        return generators[0].trunc if generators else 0
    diagram = complete_to_standard_basis(order, nonzero).diagram
    degs = [v.degree for v in diagram.vertices]
    return max(nonzero[0].trunc - max(degs), 0)


def oracle_relations(
    generators: Sequence[TruncatedSeries], bound: Optional[int] = None
) -> list[TruncatedSeries]:
    """All relations with polynomial multipliers of bounded degree, found by
    exact linear algebra over the rationals.

    The default bound is trunc minus the largest vertex degree of the
    generators' completed diagram.  Looser bounds admit near-relations whose
    defect hides just past the horizon; they are truncation artifacts, not
    elements of the relation module.
    """
    gens = list(generators)
    if not gens:
        return []
    first = gens[0]
    n, p, trunc, q = first.n, first.p, first.trunc, len(gens)
    if first.ring != QQ:
        raise PreconditionError("oracle relations run over rational coefficients")
    if bound is None:
        bound = relation_multiplier_bound(
            StandardOrder(PositiveLinearForm.unit(n)), gens
        )
    betas = list(iter_alphas(n, bound))
    columns = [(i, beta) for i in range(q) for beta in betas]
    row_exps = [
        ModExponent(alpha, j + 1)
        for j in range(p)
        for alpha in iter_alphas(n, trunc)
    ]
    rows = []
    for e in row_exps:
        row = []
        for i, beta in columns:
            diff = tuple(a - b for a, b in zip(e.alpha, beta))
            if any(d < 0 for d in diff):
                row.append(Fraction(0))
            else:
                row.append(gens[i].terms.get(ModExponent(diff, e.comp), Fraction(0)))
        if any(row):
            rows.append(row)
    vectors = kernel_basis(rows, len(columns))
    out = []
    for vec in vectors:
        terms = {
            ModExponent(beta, i + 1): c
            for (i, beta), c in zip(columns, vec)
            if c
        }
        out.append(TruncatedSeries(n, q, trunc, QQ, terms))
    return out


@dataclass
class RelationsPointRecord:
    point: tuple[Fraction, ...]
    status: str  # "ok" | "skipped"
    reason: Optional[str] = None
    oracle_count: int = 0
    all_spanned: Optional[bool] = None


@dataclass
class RelationsCheckReport:
    presentation: RelationPresentation
    certificates: ExceptionalCertificates
    records: list[RelationsPointRecord]
    all_passed: bool


def specialized_relations_check(
    pm: ParamModule, points: Sequence[Sequence[Fraction]]
) -> RelationsCheckReport:
    """Verify that the emitted relations specialize to generating sets.

    At every sample point where all certificates are nonzero, each relation
    of the specialized generators found by the linear-algebra oracle must lie
    in the span of the specialized emitted relations (modulo degree > trunc).
    """
    ring, gens = pm.localized()
    pres = relations_of_generators(pm.order, gens)
    certs = ExceptionalCertificates(
        initial_coefficients=tuple(
            e.initial(pm.order).coefficient.num for e in pres.basis.elements
        ),
        denominator_generators=tuple(ring.dset.generators),
        det_u_constant=pres.det_u_certificate,
    )
    records = []
    all_passed = True
    for raw in points:
        point = tuple(Fraction(v) for v in raw)
        if not certs.nonvanishing_at(point):
            records.append(
                RelationsPointRecord(point, "skipped", reason="certificate vanishes")
            )
            continue
        try:
            gens_a = specialize(pm, point)
            rels_a = [
                r.map_coefficients(lambda c: ring.evaluate(c, point), QQ)
                for r in pres.relations
            ]
        except VanishingDenominatorError as exc:
            records.append(RelationsPointRecord(point, "skipped", reason=str(exc)))
            continue
        bound = relation_multiplier_bound(pm.order, gens_a)
        oracle = oracle_relations(gens_a, bound)
        spanned = _all_spanned(pm, gens_a, rels_a, oracle)
        if not spanned:
            all_passed = False
        records.append(
            RelationsPointRecord(point, "ok", oracle_count=len(oracle),
                                 all_spanned=spanned)
        )
    return RelationsCheckReport(pres, certs, records, all_passed)


def _all_spanned(pm, gens_a, span_rels, candidates) -> bool:
    """Whether every candidate lies in the span of the specialized relations,
    modulo inert coordinates (terms acting as zero below the horizon).

    Division through a completed basis of the span decides almost every case
    quickly; the rare leftovers (inert-degree edge effects) get the exact
    linear-algebra answer.
    """
    span = [active_part(r, gens_a) for r in span_rels]
    span = [r for r in span if not r.is_zero]
    cands = [active_part(h, gens_a) for h in candidates]
    if not span:
        return all(c.is_zero for c in cands)
    basis = complete_to_standard_basis(pm.order, span)
    undecided = []
    for h in cands:
        if h.is_zero:
            continue
        res = hironaka_divide(pm.order, basis.elements, h)
        if not active_part(res.remainder, gens_a).is_zero:
            undecided.append(h)
    return all(_spanned_linear(span_rels, gens_a, h) for h in undecided)


def _spanned_linear(span_rels, gens_a, h) -> bool:
    """Exact test: h = sum of series multiples of the span relations, as an
    identity on the non-inert coordinates of degree <= trunc."""
    n, trunc, q = h.n, h.trunc, h.p
    mindeg = [
        min((e.degree for e in g.terms), default=None) for g in gens_a
    ]
    betas = list(iter_alphas(n, trunc))
    columns = [(g, beta) for g in span_rels for beta in betas]
    rows = []
    rhs = []
    for comp in range(1, q + 1):
        md = mindeg[comp - 1]
        for alpha in iter_alphas(n, trunc):
            if md is None or sum(alpha) + md > trunc:
                continue  # inert coordinate
            row = []
            for g, beta in columns:
                diff = tuple(a - b for a, b in zip(alpha, beta))
                if any(d < 0 for d in diff):
                    row.append(Fraction(0))
                else:
                    row.append(g.terms.get(ModExponent(diff, comp), Fraction(0)))
            rows.append(row)
            rhs.append(h.terms.get(ModExponent(alpha, comp), Fraction(0)))
    return solvable(rows, rhs)


# ---------------------------------------------------------------------------
# sample point generation
# ---------------------------------------------------------------------------

def sample_points(
    num_params: int, count: int, seed: int, *, num_bound: int = 9, den_bound: int = 4
) -> list[tuple[Fraction, ...]]:
    """Seeded rational sample points with small numerators and denominators."""
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        pts.append(
            tuple(
                Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))
                for _ in range(num_params)
            )
        )
    return pts


def grid_points(
    ranges: Sequence[tuple[Fraction, Fraction]], step: Fraction = Fraction(1)
) -> list[tuple[Fraction, ...]]:
    """Cartesian grid over closed intervals with the given step."""
    axes = []
    for lo, hi in ranges:
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise PreconditionError(f"empty grid range {lo}..{hi}")
        vals = []
        v = lo
        while v <= hi:
            vals.append(v)
            v += step
        axes.append(vals)
    return [tuple(p) for p in itertools.product(*axes)]
