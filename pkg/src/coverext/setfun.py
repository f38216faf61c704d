"""Set functions over a ground set [m], their W-transform, and the coverage test.

Subsets of [m] are plain Python ints used as bitmasks: bit j-1 stands for
element j, so elements are 1-based externally and the full ground set is
(1 << m) - 1. A total set function is a table of 2^m exact rationals
indexed by mask. Its W-transform assigns to every nonempty S the signed
sum

    w(S) = sum over T with S u T = [m] of (-1)^(|S and T| + 1) f(T),

and f is recovered from the coefficients by

    f(T) = sum over S with S and T nonempty of w(S).

A set function is a coverage function exactly when all its W-coefficients
are nonnegative; the positive coefficients then play the role of weighted
universe elements, so the support size is the universe size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import CapExceededError

#: Exhaustive operations over 2^[m] refuse to run past this many elements.
DEFAULT_ENUMERATION_CAP = 24

Mask = int
ExactLike = Union[int, Fraction]

_ZERO = Fraction(0)


def require_enumerable(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> None:
    if m > cap:
        raise CapExceededError(f"ground set size {m} exceeds enumeration cap {cap}")


def full_mask(m: int) -> Mask:
    return (1 << m) - 1


def mask_from_elements(elements: Iterable[int], m: int) -> Mask:
    """Bitmask of distinct 1-based element labels."""
    mask = 0
    for e in elements:
        if not isinstance(e, int) or not (1 <= e <= m):
            raise ValueError(f"element {e!r} outside 1..{m}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {e}")
        mask |= bit
    return mask


def mask_to_elements(mask: Mask) -> list[int]:
    """Sorted 1-based element labels of a bitmask."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _coerce_value(v: ExactLike, what: str) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    raise ValueError(f"{what} must be an int or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class TotalSetFunction:
    """A nonnegative set function given on all 2^m subsets, with f(empty) = 0.

    The empty-set value is pinned to zero at construction: the inverse
    W-transform always produces 0 there, so any other value could never be
    consistent and would poison the transform silently.
    """

    m: int
    values: tuple[Fraction, ...]  # indexed by mask

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("ground set must have at least one element")
        if len(self.values) != (1 << self.m):
            raise ValueError(f"need {1 << self.m} values, got {len(self.values)}")
        vals = tuple(_coerce_value(v, "set function value") for v in self.values)
        object.__setattr__(self, "values", vals)
        if vals[0] != 0:
            raise ValueError("f(empty set) must be 0 for coverage candidacy")
        for mask, v in enumerate(vals):
            if v < 0:
                raise ValueError(f"negative value at mask {mask}")

    @classmethod
    def from_mapping(cls, m: int, mapping: Mapping[Mask, ExactLike]) -> "TotalSetFunction":
        values = []
        for mask in range(1 << m):
            if mask not in mapping:
                raise ValueError(f"missing value for mask {mask}")
            values.append(mapping[mask])
        return cls(m, tuple(values))

    def value(self, mask: Mask) -> Fraction:
        return self.values[mask]


@dataclass(frozen=True)
class WCoefficients:
    """Sparse W-coefficients: nonzero weights on nonempty subsets of [m].

    Stored sorted by mask so equal coefficient sets compare equal. All
    stored weights are nonzero; nonnegativity is what coverage validity
    adds on top (see is_coverage).
    """

    m: int
    support: tuple[tuple[Mask, Fraction], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("ground set must have at least one element")
        full = full_mask(self.m)
        items = []
        seen = set()
        for mask, weight in self.support:
            if not (0 < mask <= full):
                raise ValueError(f"support mask {mask} not a nonempty subset of [{self.m}]")
            if mask in seen:
                raise ValueError(f"duplicate support mask {mask}")
            seen.add(mask)
            w = _coerce_value(weight, "weight")
            if w != 0:
                items.append((mask, w))
        object.__setattr__(self, "support", tuple(sorted(items)))

    @classmethod
    def from_dict(cls, m: int, mapping: Mapping[Mask, ExactLike]) -> "WCoefficients":
        return cls(m, tuple(mapping.items()))

    def as_dict(self) -> dict[Mask, Fraction]:
        return dict(self.support)

    @property
    def support_size(self) -> int:
        return len(self.support)

    @property
    def is_nonnegative(self) -> bool:
        return all(w >= 0 for _, w in self.support)


@dataclass(frozen=True)
class PartialFunction:
    """The input data: distinct nonempty defined sets T_i with values f_i >= 0.

    Point order is preserved; certificates and dual vectors index into it.
    """

    m: int
    points: tuple[tuple[Mask, Fraction], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("ground set must have at least one element")
        if not self.points:
            raise ValueError("a partial function needs at least one point")
        full = full_mask(self.m)
        seen = set()
        norm = []
        for mask, value in self.points:
            if not (0 < mask <= full):
                raise ValueError(f"defined set mask {mask} not a nonempty subset of [{self.m}]")
            if mask in seen:
                raise ValueError(f"duplicate defined set {mask_to_elements(mask)}")
            seen.add(mask)
            v = _coerce_value(value, "point value")
            if v < 0:
                raise ValueError(f"negative value at set {mask_to_elements(mask)}")
            norm.append((mask, v))
        object.__setattr__(self, "points", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return max(mask.bit_count() for mask, _ in self.points)

    @property
    def total_value(self) -> Fraction:
        return sum((v for _, v in self.points), _ZERO)

    def masks(self) -> tuple[Mask, ...]:
        return tuple(mask for mask, _ in self.points)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.points)


# --- transforms --------------------------------------------------------------


def _w_values(values: Sequence[Fraction], m: int) -> list[tuple[Mask, Fraction]]:
    """All nonzero W-coefficients of a full value table, exactly.

    Rearranging the defining sum: the T with S u T = [m] are exactly
    (complement of S) u R over R subset of S, so w(S) is an inclusion-
    exclusion over the complement table, which one in-place subset (Mobius)
    pass computes for all S in m * 2^m steps. Values are rescaled to
    integers first; Fraction arithmetic would dominate otherwise.
    """
    size = 1 << m
    full = size - 1
    scale = 1
    for v in values:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    table = [(values[full ^ v] * scale).numerator for v in range(size)]
    for i in range(m):
        bit = 1 << i
        for mask in range(size):
            if mask & bit:
                table[mask] -= table[mask ^ bit]
    out = []
    for mask in range(1, size):
        if table[mask]:
            out.append((mask, Fraction(-table[mask], scale)))
    return out


def w_transform(f: TotalSetFunction, cap: int = DEFAULT_ENUMERATION_CAP) -> WCoefficients:
    """W-coefficients of f; zero coefficients are omitted from the support."""
    require_enumerable(f.m, cap)
    return WCoefficients(f.m, tuple(_w_values(f.values, f.m)))


def eval_from_w(w: WCoefficients, subset: Mask) -> Fraction:
    """Recovered function value: total weight on sets meeting the subset."""
    return sum((weight for mask, weight in w.support if mask & subset), _ZERO)


@dataclass(frozen=True)
class CoverageCheck:
    is_coverage: bool
    violating_set: Optional[Mask] = None
    coefficient: Optional[Fraction] = None


def is_coverage(f: TotalSetFunction, cap: int = DEFAULT_ENUMERATION_CAP) -> CoverageCheck:
    """Coverage iff every W-coefficient is nonnegative.

    On failure reports the smallest violating mask (fixed ascending order,
    so reruns and tests see the same witness).
    """
    require_enumerable(f.m, cap)
    for mask, weight in _w_values(f.values, f.m):  # already sorted by mask
        if weight < 0:
            return CoverageCheck(False, mask, weight)
    return CoverageCheck(True)


def w_roundtrip_check(w: WCoefficients, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True iff transforming the recovered table reproduces w exactly."""
    require_enumerable(w.m, cap)
    values = [eval_from_w(w, mask) for mask in range(1 << w.m)]
    return tuple(_w_values(values, w.m)) == w.support
