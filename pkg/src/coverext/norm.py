"""L1 norm extension: restricted polynomial-size approximation and exact oracle.

The full problem minimizes the total absolute error sum |f(T_i) - f_i|
over coverage functions f, written as an LP over all subset coefficients
with split error variables. Restricting the coefficients to singletons
gives a polynomial-size program whose optimum OPT_R satisfies

    OPT  <=  OPT_R  <=  OPT + (1 - 1/d) * F,

with d the maximum defined-set size and F the total defined value. The
guarantee is certified through the dual: the restricted duals y_R live in
[-1, 1] and respect only the singleton span constraints; dividing the
positive entries by d repairs every other span constraint, and the
repaired vector prices out against the full program.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lp import EQUAL, FEASIBLE, LinearProgram, solve
from .setfun import (
    DEFAULT_ENUMERATION_CAP,
    PartialFunction,
    WCoefficients,
    eval_from_w,
    require_enumerable,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class NormResult:
    opt_restricted: Fraction
    witness: WCoefficients                  # support contained in singletons
    primal_errors: tuple[Fraction, ...]     # f(T_i) - f_i under the witness
    dual_restricted: tuple[Fraction, ...]
    dual_rounded: tuple[Fraction, ...]
    additive_bound: Fraction                # (1 - 1/d) * F
    opt_exact: Optional[Fraction] = None


def _norm_program(pf: PartialFunction, singleton_only: bool) -> LinearProgram:
    """min sum(eps+ + eps-) with (span weight) - f_i = eps+_i - eps-_i."""
    if singleton_only:
        coeff_masks = [1 << j for j in range(pf.m)]
    else:
        coeff_masks = list(range(1, 1 << pf.m))
    nw = len(coeff_masks)
    nv = nw + 2 * pf.n
    objective = [0] * nw + [1] * (2 * pf.n)
    rows = []
    for i, (mask_i, value) in enumerate(pf.points):
        coeffs = {c: 1 for c, s in enumerate(coeff_masks) if s & mask_i}
        coeffs[nw + 2 * i] = -1      # eps+_i
        coeffs[nw + 2 * i + 1] = 1   # eps-_i
        rows.append((coeffs, EQUAL, value))
    return LinearProgram(nv, objective=objective, rows=rows)


def norm_extension_approx(
    pf: PartialFunction,
    with_exact: bool = False,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> NormResult:
    """Solve the singleton-restricted program; optionally attach the exact optimum.

    The restricted path never enumerates 2^m; only with_exact does.
    """
    outcome = solve(_norm_program(pf, singleton_only=True))
    if outcome.status != FEASIBLE:
        raise AssertionError("restricted norm program is always feasible")
    support = {1 << j: v for j, v in enumerate(outcome.solution[: pf.m]) if v}
    witness = WCoefficients.from_dict(pf.m, support)
    errors = tuple(eval_from_w(witness, mask) - value for mask, value in pf.points)
    opt_restricted = outcome.objective_value
    if sum(abs(e) for e in errors) != opt_restricted:
        raise AssertionError("internal error: witness errors disagree with the LP optimum")

    dual = outcome.row_duals
    if any(y < -1 or y > 1 for y in dual):
        raise AssertionError("internal error: restricted duals escaped [-1, 1]")
    if sum((v * y for (_, v), y in zip(pf.points, dual)), _ZERO) != opt_restricted:
        raise AssertionError("internal error: dual value disagrees with the optimum")
    d = pf.d
    rounded = tuple(y if y <= 0 else y / d for y in dual)

    bound = (_ONE - Fraction(1, d)) * pf.total_value
    exact = norm_opt_exact(pf, cap=cap) if with_exact else None
    return NormResult(opt_restricted, witness, errors, tuple(dual), rounded, bound, exact)


def norm_opt_exact(pf: PartialFunction, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Exact optimum over all 2^m - 1 coefficients."""
    require_enumerable(pf.m, cap)
    outcome = solve(_norm_program(pf, singleton_only=False))
    if outcome.status != FEASIBLE:
        raise AssertionError("full norm program is always feasible")
    return outcome.objective_value


def verify_dual_feasible(
    pf: PartialFunction, y: Sequence[Fraction], cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """Box |y_i| <= 1 plus span sums <= 0 over every nonempty subset."""
    require_enumerable(pf.m, cap)
    if len(y) != pf.n:
        return False
    if any(v < -1 or v > 1 for v in y):
        return False
    masks = pf.masks()
    for s in range(1, 1 << pf.m):
        total = _ZERO
        for mask_i, yi in zip(masks, y):
            if mask_i & s:
                total += yi
        if total > 0:
            return False
    return True
