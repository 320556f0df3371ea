"""Relation modules of series vectors: their diagram, their standard basis,
and presentations of the relations of arbitrary generator lists.

For a complete basis, each cell of the division partition occupies a
translated box inside its vertex's orthant; the relation module's diagram is,
slot by slot, the complement of that box, so its vertices are immediately
computable.  Dividing the corresponding monomial multiples back through the
basis produces one distinguished relation per vertex, and those generate all
relations (up to the truncation horizon) under the slot-weighted order.

For arbitrary generators the presentation routes through a minimal subset:
redundant generators are expressed in the minimal ones, and the distinguished
relations of the basis are pulled back through an adjugate-scaled change of
coordinates, so the construction stays inside the localized coefficient ring;
its validity at a specialization point is certified by the recorded
denominators together with the constant term of one determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coefficients import Coefficient, LocalizedRing, ParamPolynomial
from .division import (
    DivisionResult,
    StandardBasis,
    complete_to_standard_basis,
    hironaka_divide,
    minimal_generating_subset,
)
from .errors import (
    DegenerateFamilyError,
    IncompleteBasisError,
    InvariantError,
    NotARelationError,
    PreconditionError,
)
from .exponents import (
    DeltaPartition,
    Diagram,
    ModExponent,
    SyzygyOrder,
    diagram_from_exponents,
    syzygy_order_for,
)
from .series import TruncatedSeries


def syzygy_diagram(partition: DeltaPartition, *, order: SyzygyOrder) -> Diagram:
    """Diagram of the relation module read off the division cells.

    Slot i holds exactly the shifts of the i-th divisor exponent that escape
    into an earlier cell; its generating multi-indices come straight from the
    partition.
    """
    q = partition.cell_count
    exps = []
    for i in range(q):
        for d in partition.box_complement_generators(i):
            exps.append(ModExponent(d, i + 1))
    return diagram_from_exponents(exps, n=partition.n, p=q, order=order)


@dataclass
class SyzygyBasis:
    """Distinguished relations of a standard basis, one per diagram vertex."""

    source: StandardBasis
    order: SyzygyOrder
    diagram: Diagram
    relations: tuple[TruncatedSeries, ...]

    def __len__(self):
        return len(self.relations)


def _relations_core(order, elements: Sequence[TruncatedSeries], form):
    """Syzygy order, diagram and distinguished relations of an ordered list."""
    ring = elements[0].ring
    n, trunc = elements[0].n, elements[0].trunc
    r = len(elements)
    exps = [e.initial(order).exponent for e in elements]
    partition = DeltaPartition(exps)
    syz_order = syzygy_order_for(exps, form)
    ndiag = syzygy_diagram(partition, order=syz_order)
    relations = []
    for v in ndiag.vertices:
        gamma, slot = v.alpha, v.comp
        test = elements[slot - 1].mul_monomial(ring.one, gamma)
        res = hironaka_divide(order, elements, test)
        if not res.remainder.is_zero:
            raise IncompleteBasisError(
                f"monomial multiple x^{gamma} of element {slot} does not reduce "
                "to zero; the list is not a standard basis at this truncation"
            )
        terms = {}
        for j, qj in enumerate(res.quotients):
            for be, c in qj.terms.items():
                terms[ModExponent(be.alpha, j + 1)] = ring.neg(c)
        head = ModExponent(gamma, slot)
        terms[head] = ring.add(terms.get(head, ring.zero), ring.one)
        relations.append(TruncatedSeries(n, r, trunc, ring, terms))
    return syz_order, ndiag, tuple(relations)


def standard_relations(basis: StandardBasis) -> SyzygyBasis:
    """Distinguished generating relations among the basis elements."""
    if not basis.elements:
        raise PreconditionError("empty basis has no relation module")
    order, diagram, relations = _relations_core(
        basis.order, basis.elements, basis.order.form
    )
    return SyzygyBasis(basis, order, diagram, relations)


def relation_defect(
    h: TruncatedSeries, elements: Sequence[TruncatedSeries]
) -> TruncatedSeries:
    """sum of h's entries times the elements; zero iff h is a relation."""
    if h.p != len(elements):
        raise PreconditionError(
            f"vector has {h.p} entries for {len(elements)} elements"
        )
    acc = None
    for j, e in enumerate(elements):
        contrib = h.component(j + 1).mul_series(e)
        acc = contrib if acc is None else acc + contrib
    return acc


def active_part(
    h: TruncatedSeries, elements: Sequence[TruncatedSeries]
) -> TruncatedSeries:
    """Strip the terms of a relation vector that act as zero below the horizon.

    A term at (beta, k) is inert when every term of x^beta * elements[k-1]
    lands beyond the truncation degree; inert terms are relations for free
    and carry no information about the module.  The relation module at a
    finite horizon is only determined modulo such terms.
    """
    mindeg = [
        min((e.degree for e in el.terms), default=None) for el in elements
    ]
    keep = {}
    for e, c in h.terms.items():
        md = mindeg[e.comp - 1]
        if md is not None and e.degree + md <= h.trunc:
            keep[e] = c
    return TruncatedSeries(h.n, h.p, h.trunc, h.ring, keep)


def reduce_relation(h: TruncatedSeries, syz: SyzygyBasis) -> DivisionResult:
    """Divide a relation vector by the distinguished relations.

    The input must annihilate the basis modulo degree > trunc.  The
    truncation of an actual relation reduces to a remainder whose active
    part vanishes (the remainder is exactly zero whenever the degrees stay
    comfortably below the horizon).
    """
    defect = relation_defect(h, syz.source.elements)
    if not defect.is_zero:
        raise NotARelationError(
            "input does not annihilate the basis modulo the truncation degree"
        )
    if not syz.relations:
        empty = DivisionResult((), h, None)
        return empty
    return hironaka_divide(syz.order, syz.relations, h)


# ---------------------------------------------------------------------------
# small dense matrices of one-component series
# ---------------------------------------------------------------------------

def _mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                term = a[i][k].mul_series(b[k][j])
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _minor(m, i, j):
    return [
        [m[r][c] for c in range(len(m)) if c != j]
        for r in range(len(m)) if r != i
    ]


def _det_series(m, one):
    if not m:
        return one
    if len(m) == 1:
        return m[0][0]
    acc = None
    for j in range(len(m)):
        term = m[0][j].mul_series(_det_series(_minor(m, 0, j), one))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _adjugate_series(m, one):
    size = len(m)
    if size == 1:
        return [[one]]
    adj = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            cof = _det_series(_minor(m, i, j), one)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return adj


@dataclass
class RelationPresentation:
    """Generators of the relation module of an arbitrary generator list.

    relations annihilate the input generators (in their original component
    order) modulo degree > trunc.  At a parameter point where every recorded
    denominator generator and the constant determinant term are nonzero, the
    specialized relations generate all relations of the specialized
    generators up to the truncation horizon.
    """

    generators: tuple[TruncatedSeries, ...]
    relations: tuple[TruncatedSeries, ...]
    m: int
    subset: tuple[int, ...]
    generator_order: tuple[int, ...]
    basis: StandardBasis
    basis_order: tuple[int, ...]
    theta: tuple[tuple[TruncatedSeries, ...], ...]
    xi: tuple[tuple[TruncatedSeries, ...], ...]
    t_matrix: tuple[tuple[TruncatedSeries, ...], ...]
    u_matrix: tuple[tuple[TruncatedSeries, ...], ...]
    u_adjugate: tuple[tuple[TruncatedSeries, ...], ...]
    det_u: TruncatedSeries
    det_u_constant: Coefficient
    syzygy_order: SyzygyOrder
    syzygy_diagram: Diagram
    standard_relations: tuple[TruncatedSeries, ...]
    denominator_generators: tuple[ParamPolynomial, ...]

    @property
    def det_u_certificate(self) -> Optional[ParamPolynomial]:
        """Polynomial whose nonvanishing certifies the presentation at a point."""
        c = self.det_u_constant
        if hasattr(c, "num"):
            return c.num
        if hasattr(c, "is_zero"):
            return c
        return None


def _express_in_subset(order, pool, subset_idx, target_idx):
    """Columns expressing pool[t] (t outside the subset) in the subset.

    Works by completing the subset with provenance and composing division
    quotients through it; valid modulo degree > trunc.
    """
    sub = complete_to_standard_basis(order, [pool[i] for i in subset_idx])
    m = len(subset_idx)
    cols = []
    for t in target_idx:
        res = hironaka_divide(order, sub.elements, pool[t])
        if not res.remainder.is_zero:
            raise InvariantError(
                "minimal subset fails to reproduce a dropped element; "
                "truncation degree too small for this configuration"
            )
        col = []
        for i in range(m):
            acc = None
            for qj, pv in zip(res.quotients, sub.provenance):
                term = qj.mul_series(pv[i])
                acc = term if acc is None else acc + term
            col.append(acc)
        cols.append(col)
    return cols, sub


def relations_of_generators(
    order, generators: Sequence[TruncatedSeries]
) -> RelationPresentation:
    """Generating relations of an arbitrary nonzero generator list.

    Raises DegenerateFamilyError when the constant term of the change-of-
    generators matrix is singular, in which case no presentation is emitted.
    """
    gens = list(generators)
    if not gens:
        raise PreconditionError("no generators given")
    ring = gens[0].ring
    n, trunc, q = gens[0].n, gens[0].trunc, len(gens)
    one_series = TruncatedSeries.monomial(
        ModExponent((0,) * n, 1), ring.one, n, 1, trunc, ring
    )

    basis = complete_to_standard_basis(order, gens)
    r = len(basis.elements)

    m_phi, keep_phi = minimal_generating_subset(order, gens)
    m_psi, keep_psi = minimal_generating_subset(order, basis.elements)
    if m_phi != m_psi:
        raise InvariantError(
            f"minimal generator counts disagree: {m_phi} generators vs "
            f"{m_psi} basis elements"
        )
    m = m_phi
    rest_phi = [i for i in range(q) if i not in keep_phi]
    rest_psi = [i for i in range(r) if i not in keep_psi]
    perm_phi = list(keep_phi) + rest_phi
    perm_psi = list(keep_psi) + rest_psi
    elements_perm = [basis.elements[t] for t in perm_psi]

    # Xi: dropped basis elements in terms of the kept ones (m x (r-m))
    if rest_psi:
        xi_cols, _ = _express_in_subset(order, basis.elements, keep_psi, rest_psi)
        xi = [[xi_cols[l][i] for l in range(len(rest_psi))] for i in range(m)]
    else:
        xi = [[] for _ in range(m)]

    # Theta: dropped generators in terms of the kept ones (m x (q-m))
    if rest_phi:
        th_cols, _ = _express_in_subset(order, gens, keep_phi, rest_phi)
        theta = [[th_cols[l][i] for l in range(len(rest_phi))] for i in range(m)]
    else:
        theta = [[] for _ in range(m)]

    # T: kept generators through the full (permuted) basis (r x m)
    t_matrix = [[None] * m for _ in range(r)]
    for jcol, gi in enumerate(keep_phi):
        res = hironaka_divide(order, elements_perm, gens[gi])
        if not res.remainder.is_zero:
            raise InvariantError("generator fails to reduce through its own basis")
        for jrow in range(r):
            t_matrix[jrow][jcol] = res.quotients[jrow]

    # U = T_top + Xi * T_bottom, an m x m change of generators
    u_matrix = [[t_matrix[i][j] for j in range(m)] for i in range(m)]
    if rest_psi:
        t_bot = [t_matrix[m + l] for l in range(r - m)]
        prod = _mat_mul(xi, t_bot)
        u_matrix = [
            [u_matrix[i][j] + prod[i][j] for j in range(m)] for i in range(m)
        ]

    zero_exp = ModExponent((0,) * n, 1)
    u0 = [[u_matrix[i][j].coefficient(zero_exp) for j in range(m)] for i in range(m)]
    det_u0 = _coeff_det(ring, u0)
    if ring.is_zero(det_u0):
        raise DegenerateFamilyError(
            "constant term of the change-of-generators matrix is singular"
        )

    u_adj = _adjugate_series(u_matrix, one_series)
    det_u = _det_series(u_matrix, one_series)

    syz_order, syz_diag, p_rels = _relations_core(order, elements_perm, order.form)

    relations = []
    for p_rel in p_rels:
        eta = [p_rel.component(i + 1) for i in range(m)]
        zeta = [p_rel.component(m + l + 1) for l in range(r - m)]
        v = []
        for i in range(m):
            acc = eta[i]
            for l in range(r - m):
                acc = acc + xi[i][l].mul_series(zeta[l])
            v.append(acc)
        rel = TruncatedSeries.zero(n, q, trunc, ring)
        for i in range(m):
            acc = None
            for j in range(m):
                t = u_adj[i][j].mul_series(v[j])
                acc = t if acc is None else acc + t
            rel = rel + acc.embed(perm_phi[i] + 1, q)
        if not rel.is_zero:
            relations.append(rel)
    for l, orig in enumerate(rest_phi):
        rel = TruncatedSeries.monomial(
            ModExponent((0,) * n, orig + 1), ring.one, n, q, trunc, ring
        )
        for i in range(m):
            rel = rel + (-theta[i][l]).embed(perm_phi[i] + 1, q)
        relations.append(rel)

    dens = tuple(ring.dset.generators) if isinstance(ring, LocalizedRing) else ()
    return RelationPresentation(
        generators=tuple(gens),
        relations=tuple(relations),
        m=m,
        subset=tuple(keep_phi),
        generator_order=tuple(perm_phi),
        basis=basis,
        basis_order=tuple(perm_psi),
        theta=tuple(tuple(row) for row in theta),
        xi=tuple(tuple(row) for row in xi),
        t_matrix=tuple(tuple(row) for row in t_matrix),
        u_matrix=tuple(tuple(row) for row in u_matrix),
        u_adjugate=tuple(tuple(row) for row in u_adj),
        det_u=det_u,
        det_u_constant=det_u0,
        syzygy_order=syz_order,
        syzygy_diagram=syz_diag,
        standard_relations=p_rels,
        denominator_generators=dens,
    )


def _coeff_det(ring, m):
    if len(m) == 1:
        return m[0][0]
    acc = ring.zero
    for j in range(len(m)):
        term = ring.mul(m[0][j], _coeff_det(ring, _minor(m, 0, j)))
        if j % 2:
            term = ring.neg(term)
        acc = ring.add(acc, term)
    return acc
