"""Bundled parametrized families used by the scans and the acceptance suite.

Exceptional loci of every family sit at integer parameter values, so an
integer grid and its half-step refinement see the same strata.
"""

from fractions import Fraction

from formaldiv import ModExponent, ParamModule, PolynomialRing, TruncatedSeries

from helpers import unit_order


def _family(n, p, D, names, gens):
    """gens: list of {(alpha, comp): coeff-expression-string}."""
    ring = PolynomialRing(tuple(names))
    from formaldiv import parse_coefficient

    series = []
    for terms in gens:
        built = {}
        for key, expr in terms.items():
            if p == 1 and key and isinstance(key[0], int):
                alpha, comp = tuple(key), 1
            else:
                alpha, comp = tuple(key[0]), key[1]
            built[ModExponent(alpha, comp)] = parse_coefficient(expr, names)
        series.append(TruncatedSeries(n, p, D, ring, built))
    return ParamModule(
        order=unit_order(n),
        generators=tuple(series),
        param_names=tuple(names),
    )


def bundled_families():
    fams = []
    # 1. the pivot example: t*x + x^2, exceptional at t = 0
    fams.append(_family(1, 1, 4, ("t",), [{(1,): "t", (2,): "1"}]))
    # 2. constant diagram: the parameter only touches a tail monomial
    fams.append(_family(2, 1, 6, ("t",), [
        {(2, 0): "1", (0, 3): "t"}, {(0, 2): "1"},
    ]))
    # 3. initial term flips when t = 0
    fams.append(_family(2, 1, 6, ("t",), [{(0, 2): "t", (2, 0): "1"}]))
    # 4. first-order flip
    fams.append(_family(2, 1, 4, ("t",), [{(0, 1): "t", (1, 0): "1"}]))
    # 5. two parameters, three strata (incl. the zero module)
    fams.append(_family(2, 1, 4, ("s", "t"), [{(1, 0): "s", (0, 1): "t"}]))
    # 6. redundant triple with a scaled middle generator
    fams.append(_family(2, 1, 6, ("t",), [
        {(2, 0): "1"}, {(0, 2): "t"}, {(2, 0): "1", (0, 2): "1"},
    ]))
    # 7. completion depth depends on t
    fams.append(_family(2, 1, 6, ("t",), [
        {(2, 0): "1", (0, 3): "t"}, {(2, 0): "1"},
    ]))
    # 8. two components, slot flip at t = 0
    fams.append(_family(1, 2, 4, ("t",), [
        {((1,), 1): "t", ((1,), 2): "1"}, {((2,), 2): "1"},
    ]))
    # 9. certificate with two integer roots
    fams.append(_family(1, 1, 5, ("t",), [{(1,): "t^2 - 1", (2,): "1"}]))
    # 10. quadratic-vs-cubic interaction through a unit coefficient
    fams.append(_family(2, 1, 6, ("t",), [
        {(2, 0): "t", (0, 2): "1"}, {(3, 0): "1"},
    ]))
    return fams


def grid_1d(lo=-3, hi=3, step=1):
    out = []
    v = Fraction(lo)
    while v <= hi:
        out.append((v,))
        v += Fraction(step)
    return out
