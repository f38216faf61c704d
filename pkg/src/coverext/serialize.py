"""JSON forms for every artifact; rationals travel as strings, never floats.

Sets are sorted 1-based element lists, masks ascending, so emitted files
diff cleanly and re-parse to equal values.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Any, Mapping

from .approx import AlphaBounds
from .errors import InstanceParseError
from .extension import ExtensionVerdict
from .gadgets import FractionalColoring, Graph, MembershipInstance
from .norm import NormResult
from .setfun import (
    PartialFunction,
    TotalSetFunction,
    WCoefficients,
    mask_from_elements,
    mask_to_elements,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def format_rational(x) -> str:
    if x == math.inf:
        return "inf"
    if not isinstance(x, Fraction):
        x = Fraction(x)
    return str(x)  # "p" or "p/q", lowest terms


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise InstanceParseError(f"{where}: expected an integer or p/q string, got {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise InstanceParseError(f"{where}: zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _parse_set(entry, m: int, where: str) -> int:
    if not isinstance(entry, list):
        raise InstanceParseError(f"{where}: set must be a list of 1-based integers")
    try:
        return mask_from_elements(entry, m)
    except ValueError as exc:
        raise InstanceParseError(f"{where}: {exc}") from exc


# --- partial functions ---------------------------------------------------------


def partial_function_to_json(pf: PartialFunction) -> dict:
    return {
        "m": pf.m,
        "points": [
            {"set": mask_to_elements(mask), "value": format_rational(v)}
            for mask, v in pf.points
        ],
    }


def partial_function_from_json(data: Any) -> PartialFunction:
    if not isinstance(data, Mapping):
        raise InstanceParseError("instance file must be a JSON object")
    m = data.get("m")
    if not isinstance(m, int) or m < 1:
        raise InstanceParseError("field 'm' must be a positive integer")
    points = data.get("points")
    if not isinstance(points, list) or not points:
        raise InstanceParseError("field 'points' must be a nonempty list")
    parsed = []
    seen = {}
    for i, entry in enumerate(points):
        where = f"points[{i}]"
        if not isinstance(entry, Mapping) or "set" not in entry or "value" not in entry:
            raise InstanceParseError(f"{where}: need 'set' and 'value'")
        mask = _parse_set(entry["set"], m, where)
        if mask == 0:
            raise InstanceParseError(f"{where}: defined set must be nonempty")
        if mask in seen:
            raise InstanceParseError(
                f"{where}: duplicate set {sorted(entry['set'])} (first at points[{seen[mask]}])"
            )
        seen[mask] = i
        value = parse_rational(entry["value"], f"{where}.value")
        if value < 0:
            raise InstanceParseError(f"{where}: value must be nonnegative")
        parsed.append((mask, value))
    return PartialFunction(m, tuple(parsed))


def total_function_from_json(data: Any) -> TotalSetFunction:
    if not isinstance(data, Mapping):
        raise InstanceParseError("total function file must be a JSON object")
    m = data.get("m")
    if not isinstance(m, int) or m < 1:
        raise InstanceParseError("field 'm' must be a positive integer")
    entries = data.get("values")
    if not isinstance(entries, list):
        raise InstanceParseError("field 'values' must be a list")
    table: dict[int, Fraction] = {}
    for i, entry in enumerate(entries):
        where = f"values[{i}]"
        if not isinstance(entry, Mapping) or "set" not in entry or "value" not in entry:
            raise InstanceParseError(f"{where}: need 'set' and 'value'")
        mask = _parse_set(entry["set"], m, where)
        if mask in table:
            raise InstanceParseError(f"{where}: duplicate set")
        table[mask] = parse_rational(entry["value"], f"{where}.value")
    if len(table) != (1 << m):
        raise InstanceParseError(
            f"total function on m={m} needs all {1 << m} subsets, got {len(table)}"
        )
    try:
        return TotalSetFunction(m, tuple(table[mask] for mask in range(1 << m)))
    except ValueError as exc:
        raise InstanceParseError(str(exc)) from exc


# --- coefficients and verdicts --------------------------------------------------


def wcoeffs_to_json(w: WCoefficients) -> list:
    return [
        {"set": mask_to_elements(mask), "weight": format_rational(value)}
        for mask, value in w.support
    ]


def wcoeffs_from_json(m: int, data: Any) -> WCoefficients:
    if not isinstance(data, list):
        raise InstanceParseError("coefficients must be a list")
    support = {}
    for i, entry in enumerate(data):
        where = f"coefficients[{i}]"
        mask = _parse_set(entry["set"], m, where)
        support[mask] = parse_rational(entry["weight"], f"{where}.weight")
    return WCoefficients.from_dict(m, support)


def verdict_to_json(verdict: ExtensionVerdict) -> dict:
    if verdict.extendible:
        return {"status": "extendible", "witness": wcoeffs_to_json(verdict.witness)}
    return {
        "status": "not_extendible",
        "certificate": [format_rational(l) for l in verdict.certificate],
    }


def alpha_bounds_to_json(bounds: AlphaBounds) -> dict:
    out = {
        "kappa": format_rational(bounds.kappa_estimate),
        "kappa_is_exact": bounds.kappa_is_exact,
        "lower": format_rational(bounds.lower),
        "upper": format_rational(bounds.upper),
        "degenerate": bounds.degenerate,
    }
    if bounds.alpha_star is not None:
        out["alpha_star"] = format_rational(bounds.alpha_star)
    return out


def norm_result_to_json(result: NormResult) -> dict:
    out = {
        "opt_restricted": format_rational(result.opt_restricted),
        "witness": wcoeffs_to_json(result.witness),
        "primal_errors": [format_rational(e) for e in result.primal_errors],
        "dual_restricted": [format_rational(y) for y in result.dual_restricted],
        "dual_rounded": [format_rational(y) for y in result.dual_rounded],
        "additive_bound": format_rational(result.additive_bound),
    }
    if result.opt_exact is not None:
        out["opt_exact"] = format_rational(result.opt_exact)
    return out


# --- graphs and membership -------------------------------------------------------


def graph_to_json(graph: Graph) -> dict:
    out: dict = {
        "vertices": graph.num_vertices,
        "edges": [[u, v] for u, v in graph.edges],
    }
    if graph.weights is not None:
        out["weights"] = [format_rational(w) for w in graph.weights]
    return out


def graph_from_json(data: Any) -> Graph:
    if not isinstance(data, Mapping):
        raise InstanceParseError("graph file must be a JSON object")
    n = data.get("vertices")
    if not isinstance(n, int) or n < 1:
        raise InstanceParseError("field 'vertices' must be a positive integer")
    edges_raw = data.get("edges")
    if not isinstance(edges_raw, list):
        raise InstanceParseError("field 'edges' must be a list of pairs")
    edges = []
    for i, pair in enumerate(edges_raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InstanceParseError(f"edges[{i}]: expected a pair [u, v]")
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise InstanceParseError(f"edges[{i}]: endpoints must be integers")
        edges.append((u, v))
    weights = None
    if "weights" in data:
        raw = data["weights"]
        if not isinstance(raw, list) or len(raw) != len(edges):
            raise InstanceParseError("field 'weights' must match the edge list")
        weights = tuple(parse_rational(w, f"weights[{i}]") for i, w in enumerate(raw))
    try:
        return Graph(n, tuple(edges), weights)
    except ValueError as exc:
        raise InstanceParseError(str(exc)) from exc


def setcover_from_json(data: Any) -> tuple[int, list[list[int]], int]:
    if not isinstance(data, Mapping):
        raise InstanceParseError("set-cover file must be a JSON object")
    universe = data.get("universe")
    if not isinstance(universe, int) or universe < 1:
        raise InstanceParseError("field 'universe' must be a positive integer")
    family = data.get("family")
    if not isinstance(family, list) or not family:
        raise InstanceParseError("field 'family' must be a nonempty list of element lists")
    for i, s in enumerate(family):
        if not isinstance(s, list) or not all(isinstance(e, int) for e in s):
            raise InstanceParseError(f"family[{i}]: expected a list of integers")
    k = data.get("k")
    if not isinstance(k, int) or k < 1:
        raise InstanceParseError("field 'k' must be a positive integer")
    return universe, family, k


def membership_to_json(inst: MembershipInstance) -> dict:
    out: dict = {"variant": inst.variant, "point": [format_rational(y) for y in inst.point]}
    if inst.delta is not None:
        out["delta"] = {
            "coefficient": format_rational(inst.delta.coefficient),
            "radicand": inst.delta.radicand,
        }
    if inst.graph is not None:
        out["graph"] = graph_to_json(inst.graph)
    if inst.family_sets is not None:
        out["m"] = inst.family_m
        out["sets"] = [mask_to_elements(mask) for mask in inst.family_sets]
    return out


def coloring_to_json(chi: Fraction, coloring: FractionalColoring) -> dict:
    return {
        "chi": format_rational(chi),
        "sets": [mask_to_elements(s) for s in coloring.independent_sets],
        "weights": [format_rational(x) for x in coloring.weights],
        "total": format_rational(coloring.total),
    }
