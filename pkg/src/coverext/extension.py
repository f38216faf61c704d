"""Deciding whether a partial function extends to a coverage function.

The decision is a feasibility question for an exact linear program with
one nonnegative variable per nonempty subset of [m] (its W-coefficient)
and one equality row per defined point. A feasible basic solution is a
witness whose support size cannot exceed the number of points, because at
a vertex the nonzero variables are limited by the row count. An
infeasible program yields multipliers l_1..l_n over the points with

    sum of l_i over points meeting S  <=  0   for every nonempty S, and
    sum of f_i * l_i                  >   0,

which is checkable by plain enumeration and refutes every candidate
coverage extension at once. Both artifacts are re-verified here before
being returned; we never trust the solver's algebra blindly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lp import EQUAL, FEASIBLE, INFEASIBLE, LinearProgram, solve
from .setfun import (
    DEFAULT_ENUMERATION_CAP,
    PartialFunction,
    WCoefficients,
    eval_from_w,
    require_enumerable,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ExtensionVerdict:
    extendible: bool
    witness: Optional[WCoefficients] = None
    certificate: Optional[tuple[Fraction, ...]] = None


def extension_program(pf: PartialFunction) -> LinearProgram:
    """Feasibility program over all nonempty-subset coefficients.

    Variable index mask-1 carries w(mask); every point contributes the
    equality row: total weight on sets meeting T_i equals f_i.
    """
    size = 1 << pf.m
    rows = []
    for mask_i, value in pf.points:
        coeffs = {s - 1: 1 for s in range(1, size) if s & mask_i}
        rows.append((coeffs, EQUAL, value))
    return LinearProgram(size - 1, rows=rows)


def decide_extension(pf: PartialFunction, cap: int = DEFAULT_ENUMERATION_CAP) -> ExtensionVerdict:
    """Exact verdict with a verified witness or a verified certificate."""
    require_enumerable(pf.m, cap)
    outcome = solve(extension_program(pf))
    if outcome.status == FEASIBLE:
        support = {s + 1: v for s, v in enumerate(outcome.solution) if v}
        witness = WCoefficients.from_dict(pf.m, support)
        if witness.support_size > pf.n:
            raise AssertionError("basic solution exceeded the support bound")
        if not verify_witness(pf, witness):
            raise AssertionError("internal error: witness failed verification")
        return ExtensionVerdict(True, witness=witness)
    if outcome.status != INFEASIBLE:
        raise AssertionError("feasibility program cannot be unbounded")
    certificate = tuple(-r for r in outcome.farkas_ray)
    if not verify_certificate(pf, certificate, cap=cap):
        raise AssertionError("internal error: certificate failed verification")
    return ExtensionVerdict(False, certificate=certificate)


def verify_witness(pf: PartialFunction, w: WCoefficients) -> bool:
    """True iff w is nonnegative and reproduces every defined value exactly."""
    if w.m != pf.m or not w.is_nonnegative:
        return False
    return all(eval_from_w(w, mask) == value for mask, value in pf.points)


def verify_certificate(
    pf: PartialFunction, certificate: Sequence[Fraction], cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """Check the refutation by full enumeration of all nonempty subsets."""
    require_enumerable(pf.m, cap)
    if len(certificate) != pf.n:
        return False
    cert = list(certificate)
    masks = pf.masks()
    if sum((v * l for (_, v), l in zip(pf.points, cert)), _ZERO) <= 0:
        return False
    for s in range(1, 1 << pf.m):
        total = _ZERO
        for mask_i, l in zip(masks, cert):
            if mask_i & s:
                total += l
        if total > 0:
            return False
    return True
