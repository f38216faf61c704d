"""Reduction gadgets between graph cut/span membership and coverage problems.

Constructors and brute-force validators for four classic instance
translations, plus the exact fractional chromatic number of small graphs:

  * graph coloring -> extension: value 1 on vertices, 2 on edges, k on the
    full vertex set; the instance extends iff the fractional chromatic
    number is at most k.
  * set cover -> coverage membership: a point near the span polytope whose
    side (violation vs slack, each of magnitude 1/(2L)) encodes whether a
    k-cover exists.
  * cut membership -> span membership: two extra vertices and scaled
    weights with L * (span weight of S in the gadget) = (cut weight of S)/2
    for every S inside the original vertex set.
  * densest cut -> cut membership: a complete graph reweighting with
    L * (gadget cut of S) = |cut(S)| - M * |S| * |V minus S|.

Membership in the cut polytope (all cut sums <= 0) and the span polytope
(all span sums <= 0), each intersected with the unit box, is checked by
full subset enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .lp import EQUAL, FEASIBLE, GREATER_EQUAL, LinearProgram, solve
from .setfun import DEFAULT_ENUMERATION_CAP, Mask, PartialFunction, require_enumerable

_ZERO = Fraction(0)
_ONE = Fraction(1)

ExactLike = Union[int, Fraction]


def _exact(v: ExactLike, what: str = "weight") -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    raise ValueError(f"{what} must be an int or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on 1-based vertices, optionally edge-weighted."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    weights: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        norm = []
        for u, v in self.edges:
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))
        if self.weights is not None:
            if len(self.weights) != len(self.edges):
                raise ValueError("weights length does not match edges")
            object.__setattr__(
                self, "weights", tuple(_exact(w) for w in self.weights)
            )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def require_weights(self) -> tuple[Fraction, ...]:
        if self.weights is None:
            raise ValueError("operation needs an edge-weighted graph")
        return self.weights

    def adjacency_masks(self) -> list[Mask]:
        adj = [0] * (self.num_vertices + 1)
        for u, v in self.edges:
            adj[u] |= 1 << (v - 1)
            adj[v] |= 1 << (u - 1)
        return adj

    def cut_weight(self, smask: Mask) -> Fraction:
        """Total weight of edges with exactly one endpoint in the subset."""
        w = self.require_weights()
        total = _ZERO
        for (u, v), wt in zip(self.edges, w):
            if bool(smask >> (u - 1) & 1) != bool(smask >> (v - 1) & 1):
                total += wt
        return total

    def span_weight(self, smask: Mask) -> Fraction:
        """Total weight of edges with at least one endpoint in the subset."""
        w = self.require_weights()
        total = _ZERO
        for (u, v), wt in zip(self.edges, w):
            if (smask >> (u - 1) & 1) or (smask >> (v - 1) & 1):
                total += wt
        return total

    def vertex_cut_weight(self, v: int) -> Fraction:
        w = self.require_weights()
        total = _ZERO
        for (a, b), wt in zip(self.edges, w):
            if a == v or b == v:
                total += wt
        return total


# --- fractional chromatic number ---------------------------------------------


@dataclass(frozen=True)
class FractionalColoring:
    """Weights on independent sets; every vertex is covered to at least 1."""

    independent_sets: tuple[Mask, ...]
    weights: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.weights, _ZERO)


def _independent_set_masks(graph: Graph) -> list[Mask]:
    adj = graph.adjacency_masks()
    out = []
    for mask in range(1, 1 << graph.num_vertices):
        ok = True
        probe = mask
        while probe:
            low = probe & -probe
            v = low.bit_length()
            if adj[v] & mask:
                ok = False
                break
            probe ^= low
        if ok:
            out.append(mask)
    return out


def _coloring_program(graph: Graph, sets: Sequence[Mask], equality: bool) -> LinearProgram:
    relation = EQUAL if equality else GREATER_EQUAL
    rows = []
    for v in range(1, graph.num_vertices + 1):
        bit = 1 << (v - 1)
        rows.append(({i: 1 for i, s in enumerate(sets) if s & bit}, relation, 1))
    return LinearProgram(len(sets), objective=[1] * len(sets), rows=rows)


def fractional_chromatic(
    graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP
) -> tuple[Fraction, FractionalColoring]:
    """Exact optimum of the independent-set covering LP.

    The explicit unit box on the set weights is dropped: any cover using a
    weight above 1 can be clipped to 1 without uncovering a vertex, so the
    optimum is unchanged, and the equality form used elsewhere forces the
    box anyway.
    """
    require_enumerable(graph.num_vertices, cap)
    sets = _independent_set_masks(graph)
    outcome = solve(_coloring_program(graph, sets, equality=False))
    if outcome.status != FEASIBLE:
        raise AssertionError("covering program is always feasible")
    chosen = [(s, x) for s, x in zip(sets, outcome.solution) if x]
    coloring = FractionalColoring(
        tuple(s for s, _ in chosen), tuple(x for _, x in chosen)
    )
    return outcome.objective_value, coloring


def equalize_coloring(
    graph: Graph, t: ExactLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> FractionalColoring:
    """Coloring with per-vertex cover exactly 1 and total weight exactly t.

    Uses the convex combination of an optimal equality-form coloring with
    the all-singletons coloring, which works for any t between the
    fractional chromatic number and the vertex count.
    """
    t = _exact(t, "target total")
    require_enumerable(graph.num_vertices, cap)
    sets = _independent_set_masks(graph)
    outcome = solve(_coloring_program(graph, sets, equality=True))
    if outcome.status != FEASIBLE:
        raise AssertionError("equality covering program is always feasible")
    chi = outcome.objective_value
    nv = Fraction(graph.num_vertices)
    if not (chi <= t <= nv):
        raise ValueError(f"target {t} outside [{chi}, {nv}]")
    weights = {s: x for s, x in zip(sets, outcome.solution) if x}
    if t == chi:
        lam = _ONE
    else:
        lam = (nv - t) / (nv - chi)
    combined: dict[Mask, Fraction] = {}
    for s, x in weights.items():
        combined[s] = combined.get(s, _ZERO) + lam * x
    for v in range(graph.num_vertices):
        s = 1 << v
        combined[s] = combined.get(s, _ZERO) + (_ONE - lam)
    items = sorted((s, x) for s, x in combined.items() if x)
    return FractionalColoring(tuple(s for s, _ in items), tuple(x for _, x in items))


def chromatic_gadget(graph: Graph, k: ExactLike) -> PartialFunction:
    """Extension instance over the vertex set: 1 on vertices, 2 on edges, k overall.

    Extendible exactly when the fractional chromatic number is at most k;
    the tests enforce that equivalence rather than assuming it. When the
    graph is a single edge the full set collides with that edge; the
    collision is merged if the values agree (k = 2) and rejected otherwise.
    """
    k = _exact(k, "target k")
    n = graph.num_vertices
    if not (1 <= k <= n):
        raise ValueError(f"k = {k} outside [1, {n}]")
    points: dict[Mask, Fraction] = {}
    for v in range(n):
        points[1 << v] = _ONE
    for u, v in graph.edges:
        points[(1 << (u - 1)) | (1 << (v - 1))] = Fraction(2)
    full = (1 << n) - 1
    if full in points and points[full] != k:
        raise ValueError("full vertex set collides with an edge point of different value")
    points[full] = points.get(full, k)
    return PartialFunction(n, tuple(sorted(points.items())))


# --- membership instances ------------------------------------------------------


@dataclass(frozen=True)
class DeltaSpec:
    """Tolerance coefficient / sqrt(radicand), kept symbolic to stay exact."""

    coefficient: Fraction
    radicand: int

    def squared(self) -> Fraction:
        return self.coefficient * self.coefficient / self.radicand


@dataclass(frozen=True)
class MembershipInstance:
    """A point to test against a cut, span, or coverage polytope."""

    variant: str  # "cut" | "span" | "coverage"
    point: tuple[Fraction, ...]
    delta: Optional[DeltaSpec] = None
    graph: Optional[Graph] = None
    family_m: Optional[int] = None
    family_sets: Optional[tuple[Mask, ...]] = None


def setcover_membership_gadget(
    universe_size: int, family: Sequence[Sequence[int]], k: int
) -> MembershipInstance:
    """Coverage membership point encoding a set-cover question.

    Family indices become the ground set. The defined sets are: one
    singleton {i} per family member at -1/L, the whole index set at
    (k - k*n' + 1/2)/L, and one set per universe element (the indices of
    the members containing it) at k/L, with L = k*n' - k - 1/2. A k-cover
    exists iff some subset's span sum reaches +1/(2L); otherwise every
    span sum stays at or below -1/(2L).
    """
    if universe_size < 2:
        raise ValueError("universe must have at least 2 elements")
    if k < 1:
        raise ValueError("k must be at least 1")
    if not family:
        raise ValueError("family must be nonempty")
    scale = Fraction(k * universe_size - k) - Fraction(1, 2)
    if scale <= 0:
        raise ValueError("degenerate parameters: k*n' - k - 1/2 must be positive")

    m = len(family)
    fam_masks = []
    for idx, s in enumerate(family):
        mask = 0
        for e in s:
            if not (1 <= e <= universe_size):
                raise ValueError(f"family[{idx}]: element {e} outside 1..{universe_size}")
            mask |= 1 << (e - 1)
        fam_masks.append(mask)

    sets: list[Mask] = []
    point: list[Fraction] = []
    for i in range(m):
        sets.append(1 << i)
        point.append(-1 / scale)
    sets.append((1 << m) - 1)
    point.append((Fraction(k) - k * universe_size + Fraction(1, 2)) / scale)
    for e in range(1, universe_size + 1):
        bit = 1 << (e - 1)
        owner = 0
        for i, fm in enumerate(fam_masks):
            if fm & bit:
                owner |= 1 << i
        sets.append(owner)
        point.append(Fraction(k) / scale)

    delta = DeltaSpec(1 / (4 * scale), len(sets))
    return MembershipInstance(
        "coverage", tuple(point), delta, family_m=m, family_sets=tuple(sets)
    )


def coverage_span_sums(instance: MembershipInstance) -> dict[Mask, Fraction]:
    """All span sums of a coverage membership instance, by full enumeration."""
    if instance.variant != "coverage":
        raise ValueError("expected a coverage membership instance")
    m = instance.family_m
    out = {}
    for s in range(1, 1 << m):
        total = _ZERO
        for mask, y in zip(instance.family_sets, instance.point):
            if mask & s:
                total += y
        out[s] = total
    return out


def cut_to_span_gadget(graph: Graph, enforce_box: bool = True) -> tuple[Graph, Fraction]:
    """Append a hub s and pendant t so span sums track half the cut sums.

    New weights: original over L, minus half the vertex cut weight over L
    on each hub edge, and -1 on the hub-pendant edge, where
    L = 2|E| + |V||E|. For every subset S of the original vertices,
    L * (span weight in the gadget) equals (cut weight in the input) / 2.

    Membership semantics need the input inside the unit box (a point
    outside it is trivially outside the cut polytope). The identity itself
    is weight-agnostic, so enforce_box=False lets callers reproduce the
    textbook illustration with raw weights.
    """
    y = graph.require_weights()
    if enforce_box and any(w < -1 or w > 1 for w in y):
        raise ValueError("input weights must lie in [-1, 1]")
    ne = graph.num_edges
    if ne == 0:
        raise ValueError("gadget needs at least one edge")
    nv = graph.num_vertices
    scale = Fraction(2 * ne + nv * ne)

    s_vertex = nv + 1
    t_vertex = nv + 2
    edges = list(graph.edges)
    weights = [w / scale for w in y]
    for v in range(1, nv + 1):
        edges.append((v, s_vertex))
        weights.append(-graph.vertex_cut_weight(v) / (2 * scale))
    edges.append((s_vertex, t_vertex))
    weights.append(Fraction(-1))
    return Graph(nv + 2, tuple(edges), tuple(weights)), scale


def densest_cut_gadget(graph: Graph, density: ExactLike) -> Graph:
    """Complete reweighting whose cut signs compare cut density against M.

    Edge weight is (1-M)/L on original edges and -M/L on non-edges with
    L = 2 * max(M, |1-M|), so L * (gadget cut of S) counts |cut(S)| minus
    M times |S| * |V minus S|.
    """
    m_val = _exact(density, "density threshold")
    if m_val <= 0:
        raise ValueError("density threshold must be positive")
    if graph.num_vertices < 2:
        raise ValueError("need at least two vertices")
    scale = 2 * max(m_val, abs(1 - m_val))
    present = set(graph.edges)
    edges = []
    weights = []
    for u in range(1, graph.num_vertices + 1):
        for v in range(u + 1, graph.num_vertices + 1):
            edges.append((u, v))
            weights.append((1 - m_val) / scale if (u, v) in present else -m_val / scale)
    return Graph(graph.num_vertices, tuple(edges), tuple(weights))


@dataclass(frozen=True)
class DensestCutReport:
    gadget: Graph
    max_cut_value: Fraction          # over proper nonempty subsets
    exceeds_density: bool            # some cut strictly denser than M
    boundary: bool                   # some cut at exactly density M


def densest_cut_report(
    graph: Graph, density: ExactLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> DensestCutReport:
    """Build the gadget and classify it, flagging the exact-boundary case.

    Strict and non-strict density comparisons differ exactly when the best
    gadget cut lands on zero; the report exposes that case instead of
    picking a convention.
    """
    require_enumerable(graph.num_vertices, cap)
    gadget = densest_cut_gadget(graph, density)
    top = (1 << graph.num_vertices) - 1
    best = None
    for s in range(1, top):  # proper nonempty subsets
        val = gadget.cut_weight(s)
        if best is None or val > best:
            best = val
    return DensestCutReport(gadget, best, best > 0, best == 0)


@dataclass(frozen=True)
class MembershipCheck:
    inside: bool
    violated_set: Optional[Mask] = None
    box_edge: Optional[int] = None  # index of an edge breaking the unit box


def check_cut_membership(
    graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP
) -> MembershipCheck:
    """Brute-force test against the cut polytope (all cut sums <= 0, unit box)."""
    return _check_membership(graph, graph.cut_weight, cap)


def check_span_membership(
    graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP
) -> MembershipCheck:
    """Brute-force test against the span polytope (all span sums <= 0, unit box)."""
    return _check_membership(graph, graph.span_weight, cap)


def _check_membership(graph: Graph, weigh, cap: int) -> MembershipCheck:
    require_enumerable(graph.num_vertices, cap)
    w = graph.require_weights()
    for i, wt in enumerate(w):
        if wt < -1 or wt > 1:
            return MembershipCheck(False, box_edge=i)
    for s in range(1, 1 << graph.num_vertices):
        if weigh(s) > 0:
            return MembershipCheck(False, violated_set=s)
    return MembershipCheck(True)
