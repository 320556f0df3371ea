"""Batch command-line interface.

Exit codes: 0 success, 2 parse/schema error, 3 precondition violation,
4 degenerate input (vanishing denominator, singular constant matrix),
1 internal invariant failure (always a bug).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import io
from .division import canonicalize, complete_to_standard_basis, hironaka_divide, is_member
from .errors import (
    DegeneracyError,
    EngineError,
    PreconditionError,
    SchemaError,
)
from .exponents import compare_diagrams
from .families import (
    generic_diagram,
    grid_points,
    sample_points,
    semicontinuity_scan,
    specialize,
    specialized_relations_check,
)
from .syzygies import relations_of_generators, standard_relations

SUBCOMMANDS = (
    "divide", "diagram", "std-basis", "membership", "syzygy", "relations",
    "compare-diagrams", "specialize", "semicont-scan", "relations-check",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formaldiv",
        description="exact division engine for truncated power series modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, dividend=False, other=False, points=False, at=False,
            canonical=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--module", required=True, help="module file (JSON)")
        if dividend:
            p.add_argument("--dividend", required=True, help="dividend file (JSON)")
        if other:
            p.add_argument("--other", required=True, help="second module file")
        if at:
            p.add_argument("--at", required=True,
                           help="comma-separated rational parameter values")
        if points:
            p.add_argument("--points", help="points file (JSON)")
            p.add_argument("--grid", help="grid spec, e.g. 'xi1:-2..2'")
            p.add_argument("--refine", action="store_true",
                           help="also scan the half-step refinement of the grid")
            p.add_argument("--seed", type=int, help="seed for random sample points")
            p.add_argument("--count", type=int, default=100,
                           help="number of random sample points (with --seed)")
        if canonical:
            p.add_argument("--canonical", action="store_true",
                           help="emit the canonical basis")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--timing", action="store_true",
                       help="record wall time (breaks byte-determinism)")
        return p

    add("divide", "divide a series by the module generators", dividend=True)
    add("diagram", "staircase diagram of the module")
    add("std-basis", "standard basis of the module", canonical=True)
    add("membership", "membership test with division witness", dividend=True)
    add("syzygy", "distinguished relations of the standard basis")
    add("relations", "generating relations of the given generators")
    add("compare-diagrams", "compare the diagrams of two modules", other=True)
    add("specialize", "evaluate a parametrized module at a point", at=True)
    add("semicont-scan", "diagram census over sample points", points=True)
    add("relations-check", "verify specialized relations generate", points=True)
    return parser


def _named_series_payload(names, series_list, order):
    return [
        {"name": name, "terms": io.series_to_json(s, order)}
        for name, s in zip(names, series_list)
    ]


def _prepare(mod):
    """Generators over the working ring (localized for parametric modules)."""
    if mod.is_parametric:
        pm = mod.param_module()
        ring, gens = pm.localized()
        return gens
    return mod.generators()


def _load_dividend(args, mod):
    div = io.parse_module_file(args.dividend)
    if (div.n, div.p, div.trunc) != (mod.n, mod.p, mod.trunc):
        raise SchemaError(
            f"dividend ambient ({div.n},{div.p},D={div.trunc}) differs from "
            f"module ({mod.n},{mod.p},D={mod.trunc})"
        )
    if div.order != mod.order:
        raise SchemaError("dividend order weights differ from module")
    if div.param_names != mod.param_names:
        raise SchemaError("dividend parameters differ from module")
    if len(div.series_names) != 1:
        raise SchemaError("dividend file must contain exactly one series")
    return div.series[div.series_names[0]]


def _parse_point(text, arity):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != arity:
        raise SchemaError(f"--at expects {arity} coordinates, got {len(parts)}")
    try:
        return tuple(Fraction(s) for s in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"--at: bad rational: {exc}") from None


def _parse_grid(spec, param_names):
    entries = {}
    for part in spec.split(","):
        name, sep, rng = part.partition(":")
        if not sep:
            raise SchemaError(f"--grid: expected 'name:lo..hi', got {part!r}")
        lo, sep2, hi = rng.partition("..")
        if not sep2:
            raise SchemaError(f"--grid: expected 'lo..hi' in {part!r}")
        try:
            entries[name.strip()] = (int(lo), int(hi))
        except ValueError as exc:
            raise SchemaError(f"--grid: {exc}") from None
    missing = [nm for nm in param_names if nm not in entries]
    extra = [nm for nm in entries if nm not in param_names]
    if missing or extra:
        raise SchemaError(
            f"--grid must cover the parameters exactly; missing {missing}, "
            f"unknown {extra}"
        )
    return [entries[nm] for nm in param_names]


def _point_source(args, pm, hashes):
    """Points (and optional refinement points) from file, grid, or seed.

    Returns (points, refinement points or None, source descriptor); the
    descriptor is echoed in the payload so sampling is reproducible.
    """
    arity = len(pm.param_names)
    if args.points:
        hashes["points"] = io.hash_file(args.points)
        source = {"kind": "file", "path": args.points}
        return io.parse_points_file(args.points, arity), None, source
    if args.grid:
        hashes["points"] = io.hash_bytes(f"grid:{args.grid}".encode())
        ranges = _parse_grid(args.grid, pm.param_names)
        base = grid_points(ranges, step=Fraction(1))
        refine = grid_points(ranges, step=Fraction(1, 2)) if args.refine else None
        source = {"kind": "grid", "spec": args.grid, "refined": bool(args.refine)}
        return base, refine, source
    if args.seed is not None:
        hashes["points"] = io.hash_bytes(
            f"seed:{args.seed}:count:{args.count}".encode()
        )
        source = {"kind": "seed", "seed": args.seed, "count": args.count}
        return sample_points(arity, args.count, args.seed), None, source
    raise SchemaError("one of --points, --grid, or --seed is required")


def _dispatch(args):
    hashes = {"module": io.hash_file(args.module)}
    mod = io.parse_module_file(args.module)
    order = mod.order
    command = args.command

    if command == "divide":
        hashes["dividend"] = io.hash_file(args.dividend)
        dividend = _load_dividend(args, mod)
        gens = _prepare(mod)
        if mod.is_parametric:
            ring = gens[0].ring
            dividend = dividend.map_coefficients(ring.from_poly, ring)
        res = hironaka_divide(order, gens, dividend)
        payload = {
            "truncation_degree": mod.trunc,
            "quotients": _named_series_payload(
                [f"Q{i + 1}" for i in range(len(gens))], res.quotients, order
            ),
            "remainder": io.series_to_json(res.remainder, order),
            "denominators_introduced": [
                io.format_coefficient(p) for p in res.new_denominators
            ],
        }
        return payload, hashes

    if command == "diagram":
        if mod.is_parametric:
            diag, certs = generic_diagram(mod.param_module())
            payload = {
                "truncation_degree": mod.trunc,
                "vertices": io.diagram_to_json(diag),
                "certificates": io.certificates_to_json(certs),
            }
        else:
            basis = complete_to_standard_basis(order, mod.generators())
            payload = {
                "truncation_degree": mod.trunc,
                "vertices": io.diagram_to_json(basis.diagram),
            }
        return payload, hashes

    if command == "std-basis":
        basis = complete_to_standard_basis(order, _prepare(mod))
        if args.canonical:
            basis = canonicalize(basis)
        payload = {
            "truncation_degree": mod.trunc,
            "canonical": basis.canonical,
            "vertices": io.diagram_to_json(basis.diagram),
            "elements": _named_series_payload(
                [f"Psi{i + 1}" for i in range(len(basis.elements))],
                basis.elements, order,
            ),
            "denominators": [
                io.format_coefficient(p) for p in basis.new_denominators
            ],
        }
        return payload, hashes

    if command == "membership":
        hashes["dividend"] = io.hash_file(args.dividend)
        g = _load_dividend(args, mod)
        gens = _prepare(mod)
        if mod.is_parametric:
            ring = gens[0].ring
            g = g.map_coefficients(ring.from_poly, ring)
        basis = complete_to_standard_basis(order, gens)
        member, res = is_member(order, basis, g)
        payload = {
            "truncation_degree": mod.trunc,
            "member": member,
            "witness": {
                "quotients": _named_series_payload(
                    [f"Q{i + 1}" for i in range(len(basis.elements))],
                    res.quotients, order,
                ),
                "remainder": io.series_to_json(res.remainder, order),
            },
        }
        return payload, hashes

    if command == "syzygy":
        basis = complete_to_standard_basis(order, _prepare(mod))
        syz = standard_relations(basis)
        payload = {
            "truncation_degree": mod.trunc,
            "basis_vertices": io.diagram_to_json(basis.diagram),
            "syzygy_vertices": io.diagram_to_json(syz.diagram),
            "relations": [
                io.series_to_json(r, syz.order) for r in syz.relations
            ],
        }
        return payload, hashes

    if command == "relations":
        pres = relations_of_generators(order, _prepare(mod))
        payload = {
            "truncation_degree": mod.trunc,
            **io.presentation_to_json(pres, order),
        }
        return payload, hashes

    if command == "compare-diagrams":
        hashes["other"] = io.hash_file(args.other)
        other = io.parse_module_file(args.other)

        def diagram_of(m):
            if m.is_parametric:
                return generic_diagram(m.param_module())[0]
            return complete_to_standard_basis(m.order, m.generators()).diagram

        d1, d2 = diagram_of(mod), diagram_of(other)
        payload = {
            "left_vertices": io.diagram_to_json(d1),
            "right_vertices": io.diagram_to_json(d2),
            "comparison": io.ordering_to_str(compare_diagrams(d1, d2)),
        }
        return payload, hashes

    if command == "specialize":
        pm = mod.param_module()
        point = _parse_point(args.at, len(pm.param_names))
        hashes["point"] = io.hash_bytes(args.at.encode())
        gens_a = specialize(pm, point)
        payload = {
            "point": io.point_to_json(point),
            "series": _named_series_payload(mod.series_names, gens_a, order),
        }
        return payload, hashes

    if command == "semicont-scan":
        pm = mod.param_module()
        points, refine, source = _point_source(args, pm, hashes)
        report = semicontinuity_scan(pm, points, refine)
        payload = {"points_source": source}
        payload.update(io.semicontinuity_report_to_json(report, order))
        return payload, hashes

    if command == "relations-check":
        pm = mod.param_module()
        points, _, source = _point_source(args, pm, hashes)
        report = specialized_relations_check(pm, points)
        payload = {"points_source": source}
        payload.update(io.relations_check_report_to_json(report, order))
        return payload, hashes

    raise SchemaError(f"unknown command {command!r}")


def run_command(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.monotonic()
    try:
        payload, hashes = _dispatch(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except DegeneracyError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 4
    except EngineError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    wall = time.monotonic() - started if args.timing else None
    result = io.build_result(args.command, hashes, payload, wall)
    data = io.emit_result(result, args.format)
    if args.out:
        io.write_atomic(args.out, data)
    else:
        sys.stdout.write(data.decode())
    return 0


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
