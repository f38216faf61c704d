"""Multiplicative approximate extension: exact optimum and certified bounds.

The stretch optimum alpha* is the least alpha >= 1 admitting a coverage
function with f_i <= f(T_i) <= alpha * f_i at every point. At desk scale
it is an exact LP over all subset coefficients plus the stretch variable.

The bound machinery views the instance as a bipartite graph (points on
the left, ground elements on the right). A replacement for a left vertex
v is a set of other left vertices jointly covering v's neighborhood; the
replacement ratio kappa is the cheapest replacement weight relative to
f_v over all v. Then

    1 / kappa  <=  alpha*  <=  min(d, ceil(m^(2/3))) / kappa,

where d is the maximum defined-set size. kappa is computed exactly by
bounded-subset enumeration (a minimum-weight cover has an irredundant
optimum of at most d members), or approximately by weighted greedy cover,
which is within the harmonic factor H_d of exact.

generate_tight_instance builds the family showing the lower bound is
real: sqrt(m) consecutive blocks of weight sqrt(m) against random unit
transversals, validated by full subset enumeration so that every subset
meets at least as many transversals as blocks.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import CapExceededError, SeedExhaustedError
from .lp import FEASIBLE, GREATER_EQUAL, INFEASIBLE, LESS_EQUAL, LinearProgram, solve
from .setfun import DEFAULT_ENUMERATION_CAP, Mask, PartialFunction, require_enumerable

_ZERO = Fraction(0)
_ONE = Fraction(1)

#: exact replacement-ratio enumeration is gated on these
DEFAULT_DEGREE_CAP = 6
DEFAULT_SUBSET_CAP = 20

Ratio = Union[Fraction, float]  # float only ever holds math.inf


@dataclass(frozen=True)
class BipartiteView:
    """Points as weighted left vertices, ground elements as right vertices."""

    m: int
    left_sets: tuple[Mask, ...]
    left_weights: tuple[Fraction, ...]

    @classmethod
    def from_partial(cls, pf: PartialFunction) -> "BipartiteView":
        return cls(pf.m, pf.masks(), pf.values())

    def neighbors_of_subset(self, subset: Mask) -> tuple[int, ...]:
        """Left vertices whose set meets the given element subset."""
        return tuple(i for i, t in enumerate(self.left_sets) if t & subset)

    def covered_elements(self, left_indices) -> Mask:
        mask = 0
        for i in left_indices:
            mask |= self.left_sets[i]
        return mask

    def degree(self, i: int) -> int:
        return self.left_sets[i].bit_count()

    @property
    def max_degree(self) -> int:
        return max(self.degree(i) for i in range(len(self.left_sets)))


def harmonic(k: int) -> Fraction:
    """Exact k-th harmonic number, the greedy cover guarantee."""
    return sum((Fraction(1, i) for i in range(1, k + 1)), _ZERO)


def ceil_two_thirds(m: int) -> int:
    """Smallest integer t with t^3 >= m^2; rational stand-in for m^(2/3)."""
    t = 1
    while t ** 3 < m * m:
        t += 1
    return t


def _cheapest_cover_exact(target: Mask, candidates, max_size: int) -> Optional[Fraction]:
    """Minimum total weight of at most max_size candidates covering target.

    candidates are (set_mask, weight) pairs already intersected with the
    target's relevance; an irredundant optimal cover never needs more
    members than target has elements.
    """
    best = None
    k = min(max_size, len(candidates))
    for size in range(1, k + 1):
        for combo in itertools.combinations(candidates, size):
            covered = 0
            weight = _ZERO
            for mask, w in combo:
                covered |= mask
                weight += w
            if covered & target == target and (best is None or weight < best):
                best = weight
    return best


def replacement_ratio_exact(
    pf: PartialFunction,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> Ratio:
    """kappa by exhaustive enumeration; math.inf when nothing is replaceable.

    Zero-weight vertices never enter the minimization (their ratio is
    undefined) but may serve inside replacements for free.
    """
    if pf.d > degree_cap and pf.n > subset_cap:
        raise CapExceededError(
            f"exact replacement ratio needs d <= {degree_cap} or n <= {subset_cap}"
        )
    use_bounded = pf.d <= degree_cap
    best: Optional[Fraction] = None
    pts = pf.points
    for v, (target, weight_v) in enumerate(pts):
        if weight_v == 0:
            continue
        candidates = [(t, w) for i, (t, w) in enumerate(pts) if i != v and t & target]
        limit = target.bit_count() if use_bounded else len(candidates)
        cover = _cheapest_cover_exact(target, candidates, limit)
        if cover is None:
            continue
        ratio = cover / weight_v
        if best is None or ratio < best:
            best = ratio
    return best if best is not None else math.inf


def replacement_ratio_greedy(pf: PartialFunction) -> Ratio:
    """kappa' via weighted greedy cover per vertex; kappa <= kappa' <= kappa * H_d."""
    best: Optional[Fraction] = None
    pts = pf.points
    for v, (target, weight_v) in enumerate(pts):
        if weight_v == 0:
            continue
        uncovered = target
        total = _ZERO
        stuck = False
        while uncovered:
            pick = -1
            pick_key = None
            for i, (t, w) in enumerate(pts):
                if i == v:
                    continue
                fresh = t & uncovered
                if not fresh:
                    continue
                key = w / fresh.bit_count()  # weight per newly covered element
                if pick < 0 or key < pick_key:
                    pick, pick_key = i, key
            if pick < 0:
                stuck = True
                break
            total += pts[pick][1]
            uncovered &= ~pts[pick][0]
        if stuck:
            continue
        ratio = total / weight_v
        if best is None or ratio < best:
            best = ratio
    return best if best is not None else math.inf


def alpha_star_program(pf: PartialFunction) -> LinearProgram:
    """min alpha with f_i <= (weight on sets meeting T_i) <= alpha * f_i."""
    size = 1 << pf.m
    nw = size - 1
    alpha = nw  # last variable
    objective = [0] * nw + [1]
    rows = []
    for mask_i, value in pf.points:
        span = {s - 1: 1 for s in range(1, size) if s & mask_i}
        rows.append((span, GREATER_EQUAL, value))
        upper = dict(span)
        upper[alpha] = -value
        rows.append((upper, LESS_EQUAL, 0))
    bounds = [(0, None)] * nw + [(1, None)]
    return LinearProgram(nw + 1, objective=objective, rows=rows, var_bounds=bounds)


def alpha_star_exact(pf: PartialFunction, cap: int = DEFAULT_ENUMERATION_CAP) -> Ratio:
    """The exact optimum, or math.inf when no stretch makes the system feasible.

    Infeasibility for every alpha can happen when zero-valued points force
    all weights meeting some positive point to vanish.
    """
    require_enumerable(pf.m, cap)
    outcome = solve(alpha_star_program(pf))
    if outcome.status == INFEASIBLE:
        return math.inf
    if outcome.status != FEASIBLE:
        raise AssertionError("stretch program is bounded below by 1, cannot be unbounded")
    return outcome.objective_value


@dataclass(frozen=True)
class AlphaBounds:
    """A certified sandwich around alpha*; degenerate means kappa was infinite."""

    kappa_estimate: Ratio
    kappa_is_exact: bool
    lower: Ratio
    upper: Ratio
    alpha_star: Optional[Ratio] = None
    degenerate: bool = False


def alpha_bounds(
    pf: PartialFunction,
    mode: str = "exact",
    include_alpha_star: bool = False,
    cap: int = DEFAULT_ENUMERATION_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> AlphaBounds:
    """Bracket alpha* using the replacement ratio.

    exact mode: [1/kappa, min(d, ceil(m^(2/3))) / kappa]. greedy mode uses
    kappa' and pays the extra harmonic factor on the upper side, which
    keeps the bracket valid since kappa <= kappa' <= kappa * H_d.

    The upper bound is clamped to the definitional floor alpha* >= 1:
    whenever the raw ratio bound dips below 1 (kappa exceeds the factor),
    the same replacement argument shows the instance is plainly extendible,
    so alpha* = 1 and the clamp is exact, not a relaxation.
    """
    if mode == "exact":
        kappa = replacement_ratio_exact(pf, degree_cap=degree_cap, subset_cap=subset_cap)
    elif mode == "greedy":
        kappa = replacement_ratio_greedy(pf)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    factor = min(pf.d, ceil_two_thirds(pf.m))
    star = alpha_star_exact(pf, cap=cap) if include_alpha_star else None

    if kappa == math.inf:
        # nothing replaceable anywhere: fall back to the universal bounds
        return AlphaBounds(kappa, mode == "exact", _ONE, math.inf, star, degenerate=True)
    if kappa == 0:
        # a free replacement pins the replaced point's value to zero under
        # every candidate function, so no stretch is ever feasible
        return AlphaBounds(kappa, mode == "exact", math.inf, math.inf, star, degenerate=True)

    lower = 1 / kappa
    if mode == "exact":
        upper = max(_ONE, factor / kappa)
    else:
        upper = max(_ONE, factor * harmonic(pf.d) / kappa)
    degenerate = star == math.inf
    return AlphaBounds(kappa, mode == "exact", lower, upper, star, degenerate=degenerate)


def generate_tight_instance(
    m: int,
    k: int = 2,
    seed: int = 0,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_attempts: int = 64,
) -> PartialFunction:
    """Blocks-versus-transversals family with d = sqrt(m) and kappa = 1.

    The ground set splits into sqrt(m) consecutive blocks of size sqrt(m),
    each a point of value sqrt(m); k * sqrt(m) * ceil(log2 m) random
    transversals (one uniform element per block) get value 1. A draw is
    accepted only if every nonempty subset of the ground set meets at
    least as many transversals as blocks, checked by full enumeration;
    otherwise the transversals are redrawn, up to max_attempts.
    """
    if m < 1:
        raise ValueError("ground set must be nonempty")
    root = math.isqrt(m)
    if root * root != m:
        raise ValueError(f"m = {m} is not a perfect square")
    require_enumerable(m, cap)
    if k < 1:
        raise ValueError("k must be at least 1")

    blocks = []
    for b in range(root):
        mask = 0
        for j in range(b * root, (b + 1) * root):
            mask |= 1 << j
        blocks.append(mask)
    log_factor = (m - 1).bit_length()  # ceil(log2 m), 0 when m == 1
    count = k * root * log_factor

    rng = random.Random(seed)
    block_mask_set = set(blocks)
    for _ in range(max_attempts):
        transversals = set()
        for _ in range(count):
            mask = 0
            for b in range(root):
                mask |= 1 << (b * root + rng.randrange(root))
            if mask not in block_mask_set:
                transversals.add(mask)
        trans = sorted(transversals)
        if not trans:
            continue
        points = [(mask, Fraction(root)) for mask in blocks]
        points += [(mask, _ONE) for mask in trans]
        candidate = PartialFunction(m, tuple(points))
        if _spans_dominated(candidate, len(blocks)):
            return candidate
    raise SeedExhaustedError(
        f"no valid transversal draw within {max_attempts} attempts (m={m}, k={k}, seed={seed})"
    )


def _spans_dominated(pf: PartialFunction, num_blocks: int) -> bool:
    """Every nonempty subset meets at least as many transversals as blocks.

    Blocks occupy the first num_blocks left vertices by construction.
    """
    view = BipartiteView.from_partial(pf)
    for s in range(1, 1 << pf.m):
        hit = view.neighbors_of_subset(s)
        hit_blocks = sum(1 for i in hit if i < num_blocks)
        if len(hit) - hit_blocks < hit_blocks:
            return False
    return True
