"""JSON file formats and deterministic serialization.

A module file declares the ambient space, truncation degree, order weights,
optional parameter names and denominator seeds, and named series given term
by term with coefficient expressions.  Result files echo a hash of their
inputs and carry an operation-specific payload; identical inputs must yield
byte-identical result files, so nothing time- or environment-dependent is
written unless explicitly requested.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .coefficients import (
    QQ,
    LocalizedFraction,
    ParamPolynomial,
    PolynomialRing,
    format_coefficient,
    parse_coefficient,
)
from .errors import ExpressionError, SchemaError
from .exponents import Diagram, ModExponent, Ordering, PositiveLinearForm, StandardOrder
from .families import (
    ExceptionalCertificates,
    ParamModule,
    RelationsCheckReport,
    SemicontinuityReport,
)
from .series import TruncatedSeries
from .syzygies import RelationPresentation


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

@dataclass
class LoadedModule:
    """A validated module file: order, ring, and named series in file order."""

    n: int
    p: int
    trunc: int
    order: StandardOrder
    param_names: tuple[str, ...]
    denominator_seed: tuple[ParamPolynomial, ...]
    series_names: tuple[str, ...]
    series: dict[str, TruncatedSeries]

    @property
    def is_parametric(self) -> bool:
        return bool(self.param_names)

    def generators(self) -> list[TruncatedSeries]:
        return [self.series[name] for name in self.series_names]

    def param_module(self) -> ParamModule:
        if not self.is_parametric:
            raise SchemaError("module file declares no parameters")
        return ParamModule(
            order=self.order,
            generators=tuple(self.generators()),
            param_names=self.param_names,
            denominator_seed=self.denominator_seed,
        )


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(f"{path}: {message}")


def _as_fraction(value, path) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"{path}: expected integer or rational string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{path}: bad rational {value!r}: {exc}") from None


def load_module_data(data, source="module") -> LoadedModule:
    _expect(isinstance(data, dict), source, "expected a JSON object")
    for key in ("n", "p", "D"):
        _expect(key in data, f"{source}.{key}", "missing required field")
        _expect(
            isinstance(data[key], int) and not isinstance(data[key], bool),
            f"{source}.{key}", "expected an integer",
        )
    n, p, trunc = data["n"], data["p"], data["D"]
    _expect(n >= 1, f"{source}.n", "must be >= 1")
    _expect(p >= 1, f"{source}.p", "must be >= 1")
    _expect(trunc >= 0, f"{source}.D", "must be >= 0")

    weights_raw = data.get("weights", [1] * n)
    _expect(isinstance(weights_raw, list) and len(weights_raw) == n,
            f"{source}.weights", f"expected a list of {n} entries")
    weights = [_as_fraction(w, f"{source}.weights[{i}]") for i, w in enumerate(weights_raw)]
    for i, w in enumerate(weights):
        _expect(w > 0, f"{source}.weights[{i}]", "weights must be positive")
    order = StandardOrder(PositiveLinearForm(tuple(weights)))

    params_raw = data.get("parameters", [])
    _expect(isinstance(params_raw, list), f"{source}.parameters", "expected a list")
    for i, name in enumerate(params_raw):
        _expect(isinstance(name, str) and name.isidentifier(),
                f"{source}.parameters[{i}]", "expected an identifier")
    param_names = tuple(params_raw)
    _expect(len(set(param_names)) == len(param_names),
            f"{source}.parameters", "duplicate parameter names")

    ring = PolynomialRing(param_names) if param_names else QQ

    denom_raw = data.get("denominators", [])
    _expect(isinstance(denom_raw, list), f"{source}.denominators", "expected a list")
    _expect(not denom_raw or param_names,
            f"{source}.denominators", "denominators need parameters")
    seed = []
    for i, text in enumerate(denom_raw):
        path = f"{source}.denominators[{i}]"
        _expect(isinstance(text, str), path, "expected an expression string")
        try:
            poly = parse_coefficient(text, param_names)
        except ExpressionError as exc:
            raise SchemaError(f"{path}: {exc}") from None
        _expect(not poly.is_zero, path, "zero polynomial cannot be inverted")
        seed.append(poly)

    series_raw = data.get("series", [])
    _expect(isinstance(series_raw, list) and series_raw,
            f"{source}.series", "expected a nonempty list")
    names = []
    series = {}
    for si, entry in enumerate(series_raw):
        path = f"{source}.series[{si}]"
        _expect(isinstance(entry, dict), path, "expected an object")
        name = entry.get("name", f"F{si + 1}")
        _expect(isinstance(name, str) and name, f"{path}.name", "expected a name")
        _expect(name not in series, f"{path}.name", f"duplicate series name {name!r}")
        terms_raw = entry.get("terms", [])
        _expect(isinstance(terms_raw, list), f"{path}.terms", "expected a list")
        terms = {}
        for ti, term in enumerate(terms_raw):
            tpath = f"{path}.terms[{ti}]"
            _expect(isinstance(term, dict), tpath, "expected an object")
            comp = term.get("component", 1)
            _expect(isinstance(comp, int) and 1 <= comp <= p,
                    f"{tpath}.component", f"expected an integer in 1..{p}")
            exp = term.get("exponent")
            _expect(
                isinstance(exp, list) and len(exp) == n
                and all(isinstance(e, int) and e >= 0 for e in exp),
                f"{tpath}.exponent", f"expected {n} nonnegative integers",
            )
            _expect(sum(exp) <= trunc, f"{tpath}.exponent",
                    f"term degree {sum(exp)} exceeds D={trunc}")
            coeff_raw = term.get("coeff", "1")
            if isinstance(coeff_raw, int) and not isinstance(coeff_raw, bool):
                coeff_raw = str(coeff_raw)
            _expect(isinstance(coeff_raw, str), f"{tpath}.coeff",
                    "expected an expression string or integer")
            try:
                coeff = parse_coefficient(coeff_raw, param_names)
            except ExpressionError as exc:
                raise SchemaError(f"{tpath}.coeff: {exc}") from None
            e = ModExponent(tuple(exp), comp)
            if e in terms:
                raise SchemaError(f"{tpath}: duplicate exponent {exp} in {name!r}")
            terms[e] = coeff
        series[name] = TruncatedSeries(n, p, trunc, ring, terms)
        names.append(name)

    return LoadedModule(
        n=n, p=p, trunc=trunc, order=order,
        param_names=param_names,
        denominator_seed=tuple(seed),
        series_names=tuple(names),
        series=series,
    )


def parse_module_file(path) -> LoadedModule:
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    return load_module_data(data, source=str(path))


def parse_points_file(path, arity: int) -> list[tuple[Fraction, ...]]:
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    _expect(isinstance(data, dict) and isinstance(data.get("points"), list),
            str(path), "expected an object with a 'points' list")
    points = []
    for i, raw in enumerate(data["points"]):
        ppath = f"{path}.points[{i}]"
        _expect(isinstance(raw, list) and len(raw) == arity,
                ppath, f"expected {arity} coordinates")
        points.append(tuple(_as_fraction(v, ppath) for v in raw))
    return points


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def coeff_to_json(c):
    if isinstance(c, (Fraction, ParamPolynomial)):
        return format_coefficient(c)
    if isinstance(c, LocalizedFraction):
        if not c.powers:
            return format_coefficient(c.num)
        return {
            "num": format_coefficient(c.num),
            "den": [
                [format_coefficient(c.dset.generators[i]), k]
                for i, k in sorted(c.powers.items())
            ],
        }
    raise SchemaError(f"cannot serialize coefficient {c!r}")


def series_to_json(s: TruncatedSeries, order) -> list:
    return [
        {"component": e.comp, "exponent": list(e.alpha), "coeff": coeff_to_json(c)}
        for e, c in s.sorted_terms(order)
    ]


def vertex_to_json(v: ModExponent) -> list:
    return [list(v.alpha), v.comp]


def diagram_to_json(d: Diagram) -> list:
    return [vertex_to_json(v) for v in d.vertices]


def ordering_to_str(o: Ordering) -> str:
    return {Ordering.LESS: "less", Ordering.EQUAL: "equal",
            Ordering.GREATER: "greater"}[o]


def point_to_json(point) -> list:
    return [str(Fraction(v)) for v in point]


def certificates_to_json(certs: ExceptionalCertificates) -> dict:
    return {
        "initial_coefficients": [
            format_coefficient(p) for p in certs.initial_coefficients
        ],
        "denominator_generators": [
            format_coefficient(p) for p in certs.denominator_generators
        ],
        "det_u_constant": (
            format_coefficient(certs.det_u_constant)
            if certs.det_u_constant is not None else None
        ),
        "certificate_polynomials": [
            format_coefficient(p) for p in certs.all_polys()
        ],
    }


def semicontinuity_report_to_json(report: SemicontinuityReport, order) -> dict:
    payload = {
        "generic_vertices": diagram_to_json(report.generic),
        "certificates": certificates_to_json(report.certificates),
        "semicontinuity_ok": report.semicontinuity_ok,
        "genericity_ok": report.genericity_ok,
        "points": [
            {
                "point": point_to_json(rec.point),
                "status": rec.status,
                **({"reason": rec.reason} if rec.reason else {}),
                **(
                    {
                        "vertices": diagram_to_json(rec.diagram),
                        "comparison": ordering_to_str(rec.comparison),
                        "certificates_nonzero": list(rec.certificates_nonzero),
                    }
                    if rec.status == "ok" else {}
                ),
            }
            for rec in report.records
        ],
        "census": [
            {"vertices": diagram_to_json(d), "count": c} for d, c in report.census
        ],
        "note": "census reflects the sampled points only",
    }
    if report.refinement is not None:
        payload["refinement"] = {
            "census": [
                {"vertices": diagram_to_json(d), "count": c}
                for d, c in report.refinement.census
            ],
            "stable": report.refinement.stable,
        }
    return payload


def relations_check_report_to_json(report: RelationsCheckReport, order) -> dict:
    return {
        "m": report.presentation.m,
        "subset": [i + 1 for i in report.presentation.subset],
        "relation_count": len(report.presentation.relations),
        "certificates": certificates_to_json(report.certificates),
        "all_passed": report.all_passed,
        "points": [
            {
                "point": point_to_json(rec.point),
                "status": rec.status,
                **({"reason": rec.reason} if rec.reason else {}),
                **(
                    {
                        "oracle_relations": rec.oracle_count,
                        "all_spanned": rec.all_spanned,
                    }
                    if rec.status == "ok" else {}
                ),
            }
            for rec in report.records
        ],
    }


def presentation_to_json(pres: RelationPresentation, order) -> dict:
    def matrix(mat):
        return [[series_to_json(cell, order) for cell in row] for row in mat]

    return {
        "m": pres.m,
        "subset": [i + 1 for i in pres.subset],
        "generator_order": [i + 1 for i in pres.generator_order],
        "basis_vertices": diagram_to_json(pres.basis.diagram),
        "relations": [series_to_json(r, order) for r in pres.relations],
        "theta": matrix(pres.theta),
        "xi": matrix(pres.xi),
        "u": matrix(pres.u_matrix),
        "det_u_constant": coeff_to_json(pres.det_u_constant),
        "certificates": {
            "denominator_generators": [
                format_coefficient(p) for p in pres.denominator_generators
            ],
            "det_u_constant": coeff_to_json(pres.det_u_constant),
        },
    }


# ---------------------------------------------------------------------------
# result files
# ---------------------------------------------------------------------------

def hash_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def hash_file(path) -> str:
    try:
        with open(path, "rb") as fh:
            return hash_bytes(fh.read())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


def build_result(operation: str, input_hashes: dict, payload: dict,
                 wall_time: Optional[float] = None) -> dict:
    result = {
        "operation": operation,
        "engine": f"formaldiv {__version__}",
        "inputs": dict(sorted(input_hashes.items())),
        "payload": payload,
    }
    if wall_time is not None:
        result["wall_time_s"] = round(wall_time, 6)
    return result


def _render_text_value(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text_value(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text_value(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def emit_result(result: dict, fmt: str = "json") -> bytes:
    """Deterministic bytes for a result; text is a human-readable mirror."""
    if fmt == "json":
        return (json.dumps(result, indent=2, sort_keys=False) + "\n").encode()
    if fmt == "text":
        header = f"formaldiv result: {result['operation']}"
        lines = [header, "=" * len(header)]
        lines.extend(_render_text_value({k: v for k, v in result.items()
                                         if k != "operation"}))
        return ("\n".join(lines) + "\n").encode()
    raise SchemaError(f"unknown output format {fmt!r}")


def write_atomic(path, data: bytes):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".formaldiv-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
