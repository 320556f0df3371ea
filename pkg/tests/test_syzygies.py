import random

import pytest

from formaldiv import (
    QQ,
    ModExponent,
    TruncatedSeries,
    complete_to_standard_basis,
    delta_partition,
    hironaka_divide,
    reduce_relation,
    relations_of_generators,
    standard_relations,
    syzygy_diagram,
    syzygy_order_for,
)
from formaldiv.errors import NotARelationError
from formaldiv.exponents import iter_alphas
from formaldiv.syzygies import active_part, relation_defect

import oracle
from helpers import random_division_instance, random_series, ser, unit_order


def two_squares_basis(order=None):
    order = order or unit_order(2)
    return complete_to_standard_basis(
        order, [ser(2, 1, 6, {(2, 0): 1}), ser(2, 1, 6, {(0, 2): 1})]
    )


# -- syzygy diagram ----------------------------------------------------------------

def test_syzygy_diagram_two_squares():
    basis = two_squares_basis()
    exps = [e.initial(basis.order).exponent for e in basis.elements]
    part = delta_partition(exps)
    sorder = syzygy_order_for(exps, basis.order.form)
    diag = syzygy_diagram(part, order=sorder)
    # one crossing: the later vertex shifted by the earlier one
    assert len(diag.vertices) == 1
    v = diag.vertices[0]
    assert v.comp == 2 and v.alpha == exps[0].alpha


def test_syzygy_diagram_single_divisor_is_empty():
    exps = [ModExponent((1, 2), 1)]
    part = delta_partition(exps)
    diag = syzygy_diagram(part, order=syzygy_order_for(exps, unit_order(2).form))
    assert diag.is_empty


def test_syzygy_diagram_duplicate_exponent():
    exps = [ModExponent((1, 0), 1), ModExponent((1, 0), 1)]
    part = delta_partition(exps)
    diag = syzygy_diagram(part, order=syzygy_order_for(exps, unit_order(2).form))
    assert diag.vertices == (ModExponent((0, 0), 2),)


def test_syzygy_diagram_law_enumerated():
    rng = random.Random(97)
    for _ in range(20):
        exps = []
        for _ in range(rng.randint(1, 4)):
            exps.append(
                ModExponent((rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 2))
            )
        part = delta_partition(exps)
        diag = syzygy_diagram(part, order=syzygy_order_for(exps, unit_order(2).form))
        for i in range(len(exps)):
            for gamma in iter_alphas(2, 6):
                assert diag.contains(ModExponent(gamma, i + 1)) == (
                    not part.box_contains(i, gamma)
                )


# -- standard relations ----------------------------------------------------------------

def test_standard_relations_two_squares():
    basis = two_squares_basis()
    syz = standard_relations(basis)
    assert len(syz.relations) == 1
    p1 = syz.relations[0]
    # the relation swaps the two monomials with a sign
    a0 = basis.vertices[0].alpha
    a1 = basis.vertices[1].alpha
    assert p1.component(1) == ser(2, 1, 6, {a1: -1})
    assert p1.component(2) == ser(2, 1, 6, {a0: 1})
    assert relation_defect(p1, basis.elements).is_zero


def test_standard_relations_single_element():
    order = unit_order(2)
    basis = complete_to_standard_basis(order, [ser(2, 1, 6, {(1, 1): 1, (0, 3): 2})])
    syz = standard_relations(basis)
    assert syz.relations == ()


def test_standard_relations_duplicate_generators():
    order = unit_order(1)
    basis = complete_to_standard_basis(
        order, [ser(1, 1, 4, {(1,): 1}), ser(1, 1, 4, {(1,): 1})]
    )
    # one vertex survives; relations come from the working list's basis only
    assert len(basis.elements) == 1
    syz = standard_relations(basis)
    assert syz.relations == ()


def test_standard_relations_heads_match_vertices():
    rng = random.Random(101)
    for _ in range(20):
        order, gens, _ = random_division_instance(rng, max_terms=4)
        basis = complete_to_standard_basis(order, gens)
        syz = standard_relations(basis)
        assert len(syz.relations) == len(syz.diagram.vertices)
        for p, v in zip(syz.relations, syz.diagram.vertices):
            init = p.initial(syz.order)
            assert init.exponent == v
            assert init.coefficient == QQ.one
            assert relation_defect(p, basis.elements).is_zero


# -- reducing relations ----------------------------------------------------------------

def test_reduce_multiple_of_standard_relation():
    basis = two_squares_basis()
    syz = standard_relations(basis)
    y2 = ser(2, 1, 6, {(0, 2): 1})
    h = y2.mul_series(syz.relations[0])
    res = reduce_relation(h, syz)
    assert res.remainder.is_zero
    assert res.quotients[0] == y2


def test_reduce_zero_relation():
    basis = two_squares_basis()
    syz = standard_relations(basis)
    res = reduce_relation(TruncatedSeries.zero(2, 2, 6, QQ), syz)
    assert res.remainder.is_zero


def test_reduce_rejects_non_relation():
    basis = two_squares_basis()
    syz = standard_relations(basis)
    not_rel = ser(2, 2, 6, {((0, 0), 1): 1})
    with pytest.raises(NotARelationError):
        reduce_relation(not_rel, syz)


def test_reduce_random_combinations():
    rng = random.Random(103)
    for _ in range(15):
        order, gens, _ = random_division_instance(rng, max_terms=4)
        basis = complete_to_standard_basis(order, gens)
        syz = standard_relations(basis)
        if not syz.relations:
            continue
        n, trunc = gens[0].n, gens[0].trunc
        combo = TruncatedSeries.zero(n, len(basis.elements), trunc, QQ)
        for p in syz.relations:
            c = random_series(rng, n, 1, trunc, max_terms=3, nonzero=False)
            combo = combo + c.mul_series(p)
        assert reduce_relation(combo, syz).remainder.is_zero


def test_oracle_relations_reduce_to_zero():
    rng = random.Random(107)
    checked = 0
    while checked < 12:
        order, gens, _ = random_division_instance(rng, max_terms=3)
        basis = complete_to_standard_basis(order, gens)
        if len(basis.elements) > 4:
            continue
        checked += 1
        syz = standard_relations(basis)
        bound = oracle.default_relation_bound(basis.elements)
        for vec in oracle.relations_oracle(basis.elements, bound):
            n, trunc = gens[0].n, gens[0].trunc
            h = TruncatedSeries(
                n, len(basis.elements), trunc, QQ,
                {ModExponent(beta, i + 1): c for (beta, i), c in vec.items()},
            )
            rem = reduce_relation(h, syz).remainder
            # remainder may retain inert terms (zero action below the horizon)
            assert active_part(rem, basis.elements).is_zero


# -- presentations of arbitrary generator lists -----------------------------------------

def test_presentation_worked_example():
    order = unit_order(2)
    gens = [
        ser(2, 1, 6, {(2, 0): 1}),
        ser(2, 1, 6, {(0, 2): 1}),
        ser(2, 1, 6, {(2, 0): 1, (0, 2): 1}),
    ]
    pres = relations_of_generators(order, gens)
    assert pres.m == 2 and pres.subset == (0, 1)
    theta_col = [pres.theta[i][0] for i in range(2)]
    assert all(t == ser(2, 1, 6, {(0, 0): 1}) for t in theta_col)
    rels = list(pres.relations)
    assert ser(2, 3, 6, {((0, 0), 1): -1, ((0, 0), 2): -1, ((0, 0), 3): 1}) in rels
    swap = ser(2, 3, 6, {((0, 2), 1): -1, ((2, 0), 2): 1})
    assert swap in rels
    for r in rels:
        assert relation_defect(r, gens).is_zero


def test_presentation_already_minimal():
    order = unit_order(2)
    gens = [ser(2, 1, 6, {(2, 0): 1}), ser(2, 1, 6, {(0, 2): 1})]
    pres = relations_of_generators(order, gens)
    assert pres.m == 2
    assert len(pres.relations) == 1
    # the unique relation, expressed against the generators in input order
    assert pres.relations[0] == ser(2, 2, 6, {((0, 2), 1): -1, ((2, 0), 2): 1})
    assert relation_defect(pres.relations[0], gens).is_zero


def test_presentation_duplicate_generator():
    order = unit_order(1)
    gens = [ser(1, 1, 4, {(1,): 1}), ser(1, 1, 4, {(1,): 1})]
    pres = relations_of_generators(order, gens)
    assert pres.m == 1
    assert pres.relations == (
        ser(1, 2, 4, {((0,), 1): -1, ((0,), 2): 1}),
    )


def test_presentation_basis_larger_than_minimal_subset():
    # x^2 and x*y + y^3 need a third basis element (a y^5 representative),
    # so the dropped-element matrix has a genuine column
    order = unit_order(2)
    gens = [ser(2, 1, 8, {(2, 0): 1}), ser(2, 1, 8, {(1, 1): 1, (0, 3): 1})]
    pres = relations_of_generators(order, gens)
    assert len(pres.basis.elements) == 3 and pres.m == 2
    assert len(pres.xi) == 2 and len(pres.xi[0]) == 1
    assert pres.relations == (
        ser(2, 2, 8, {((1, 1), 1): 1, ((0, 3), 1): 1, ((2, 0), 2): -1}),
    )
    for r in pres.relations:
        assert relation_defect(r, gens).is_zero
    # the lone relation spans the oracle kernel
    bound = oracle.vertex_relation_bound(8, pres.basis.diagram)
    for vec in oracle.relations_oracle(gens, bound):
        h = TruncatedSeries(
            2, 2, 8, QQ,
            {ModExponent(beta, i + 1): c for (beta, i), c in vec.items()},
        )
        assert oracle.spanned_modulo_inert(gens, list(pres.relations), h)


def test_presentation_two_component_module():
    # relations of vector generators: (x e1), (y e1 + x e2), and their sum
    order = unit_order(2)
    g1 = ser(2, 2, 5, {((1, 0), 1): 1})
    g2 = ser(2, 2, 5, {((0, 1), 1): 1, ((1, 0), 2): 1})
    g3 = g1 + g2
    pres = relations_of_generators(order, [g1, g2, g3])
    assert pres.m == 2
    for r in pres.relations:
        assert relation_defect(r, [g1, g2, g3]).is_zero
    bound = oracle.vertex_relation_bound(5, pres.basis.diagram)
    for vec in oracle.relations_oracle([g1, g2, g3], bound):
        h = TruncatedSeries(
            2, 3, 5, QQ,
            {ModExponent(beta, i + 1): c for (beta, i), c in vec.items()},
        )
        assert oracle.spanned_modulo_inert([g1, g2, g3], list(pres.relations), h)


def test_presentation_adjugate_identity():
    rng = random.Random(109)
    order = unit_order(2)
    cases = 0
    while cases < 8:
        gens = [random_series(rng, 2, 1, 5, max_terms=3) for _ in range(rng.randint(2, 3))]
        # force redundancy so m < q
        c = random_series(rng, 2, 1, 5, max_terms=2, nonzero=False)
        extra = gens[0] + c.mul_series(gens[-1])
        if extra.is_zero:
            continue
        gens.append(extra)
        pres = relations_of_generators(order, gens)
        cases += 1
        m = pres.m
        ident = [
            [
                pres.det_u if i == j else TruncatedSeries.zero(2, 1, 5, QQ)
                for j in range(m)
            ]
            for i in range(m)
        ]
        for i in range(m):
            for j in range(m):
                acc = None
                for k in range(m):
                    t = pres.u_adjugate[i][k].mul_series(pres.u_matrix[k][j])
                    acc = t if acc is None else acc + t
                assert acc == ident[i][j]
        for r in pres.relations:
            assert relation_defect(r, gens).is_zero


def test_presentation_spans_oracle_relations():
    rng = random.Random(113)
    order = unit_order(2)
    done = 0
    while done < 6:
        gens = [random_series(rng, 2, 1, 5, max_terms=3) for _ in range(2)]
        if (gens[0] + gens[1]).is_zero:
            continue
        gens.append(gens[0] + gens[1])
        done += 1
        pres = relations_of_generators(order, gens)
        span = [active_part(r, gens) for r in pres.relations]
        span = [r for r in span if not r.is_zero]
        basis = complete_to_standard_basis(order, span)
        bound = oracle.vertex_relation_bound(5, pres.basis.diagram)
        for vec in oracle.relations_oracle(gens, bound):
            h = TruncatedSeries(
                2, len(gens), 5, QQ,
                {ModExponent(beta, i + 1): c for (beta, i), c in vec.items()},
            )
            res = hironaka_divide(order, basis.elements, active_part(h, gens))
            if active_part(res.remainder, gens).is_zero:
                continue
            assert oracle.spanned_modulo_inert(gens, list(pres.relations), h)
