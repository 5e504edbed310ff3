"""Constructive procedures: layered odd-cycle growth from a triangle,
minimum-degree peeling, iterated triangle replacement, and the per-vertex
packing check."""

from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import _ex_tc3_value, growth_threshold, peel_threshold
from .graph import Graph, as_mask, bits
from .subgraphs import CyclePacking, PackingStatus, find_disjoint_cycles, validate_cycle, validate_packing


class PreconditionError(ValueError):
    """An arithmetic or structural precondition failed; the message names it."""


class GrowthStuck(RuntimeError):
    """No choice of fresh neighbours completes all growth layers."""


class NoClosingVertex(RuntimeError):
    """Every completed layering lacks a vertex seeing two layer endpoints."""


@dataclass
class GrowTrace:
    layers: list[tuple[int, int, int]]
    closing: int
    cycle: tuple[int, ...]
    warnings: list[str] = field(default_factory=list)
    backtracks: int = 0

    def layer_sizes(self) -> list[int]:
        return [3 * (i + 1) for i in range(len(self.layers))]

    def to_dict(self) -> dict:
        return {
            "layers": [list(x) for x in self.layers],
            "closing": self.closing,
            "cycle": list(self.cycle),
            "warnings": self.warnings,
            "backtracks": self.backtracks,
        }


def _growth_warnings(n: int, s_size: int, l: int, t: int | None) -> list[str]:
    if t is None:
        return []
    out = []
    if s_size > (t - 1) * (2 * l + 1):
        out.append(f"|S| = {s_size} > (t-1)(2l+1) = {(t - 1) * (2 * l + 1)}")
    if n < growth_threshold(t, l):
        out.append(f"n = {n} < 8tl+4l+4t-6 = {growth_threshold(t, l)}")
    return out


def grow_odd_cycle(
    g: Graph,
    forbidden: int | list[int] | set[int],
    triangle: tuple[int, int, int],
    l: int,
    t: int | None = None,
) -> GrowTrace:
    """Grow a (2l+1)-cycle in ``g - forbidden`` from a triangle.

    Three paths are grown in lockstep from the triangle's corners, each step
    taking a fresh neighbour of the previous endpoint; then a vertex outside
    the grown set adjacent to two endpoints closes a cycle through the
    triangle edge joining those two corners.  Neighbour choices are tried
    lowest index first with full backtracking.

    ``t`` is optional and only used to report the growth thresholds that
    the input does not meet, in ``GrowTrace.warnings``.
    """
    forbidden = as_mask(forbidden)
    n = g.n
    if l < 1:
        raise PreconditionError("l must be at least 1")
    if g.min_degree() < n // 2:
        raise PreconditionError(f"min degree {g.min_degree()} < floor(n/2) = {n // 2}")
    a, b, c = triangle
    if len({a, b, c}) != 3 or not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        raise PreconditionError(f"{triangle} is not a triangle of g")
    if as_mask(triangle) & forbidden:
        raise PreconditionError(f"triangle {triangle} meets the forbidden set")
    warnings = _growth_warnings(n, forbidden.bit_count(), l, t)
    if l == 1:
        return GrowTrace([(a, b, c)], -1, (a, b, c), warnings)

    rows = g.rows
    allowed = g.all_vertices() & ~forbidden
    layers = [(a, b, c)]
    backtracks = 0
    completed = False

    def close() -> tuple[int, tuple[int, ...]] | None:
        used = as_mask(v for layer in layers for v in layer)
        ends = layers[-1]
        outside = allowed & ~used
        # pair (i, j) of corners joined by a triangle edge
        for i, j in ((1, 2), (0, 1), (0, 2)):
            common = rows[ends[i]] & rows[ends[j]] & outside
            if common:
                y = (common & -common).bit_length() - 1
                left = [layer[i] for layer in layers]
                right = [layer[j] for layer in layers]
                return y, (y, *reversed(left), *right)
        return None

    def grow() -> tuple[int, tuple[int, ...]] | None:
        nonlocal backtracks, completed
        if len(layers) == l:
            completed = True
            return close()
        used = as_mask(v for layer in layers for v in layer)
        pu, pv, pw = layers[-1]
        for u in bits(rows[pu] & allowed & ~used):
            for v in bits(rows[pv] & allowed & ~used & ~(1 << u)):
                for w in bits(rows[pw] & allowed & ~used & ~(1 << u) & ~(1 << v)):
                    layers.append((u, v, w))
                    hit = grow()
                    if hit is not None:
                        return hit
                    layers.pop()
                    backtracks += 1
        return None

    hit = grow()
    if hit is None:
        if completed:
            raise NoClosingVertex("no vertex outside the grown layers sees two endpoints")
        raise GrowthStuck("some layer has no three fresh distinct neighbours")
    y, cycle = hit
    validate_cycle(g, cycle, 2 * l + 1)
    if as_mask(cycle) & forbidden:
        raise AssertionError("grown cycle meets the forbidden set")
    return GrowTrace(list(layers), y, cycle, warnings, backtracks)


@dataclass
class PeelTrace:
    deleted: list[int]
    core_vertices: list[int]
    warnings: list[str] = field(default_factory=list)
    core_edge_surplus: bool = False

    def to_dict(self) -> dict:
        return {
            "deleted": self.deleted,
            "core_vertices": self.core_vertices,
            "warnings": self.warnings,
            "core_edge_surplus": self.core_edge_surplus,
        }


def peel_to_dense_core(g: Graph, t: int, k: int, strict: bool = True) -> tuple[Graph, PeelTrace] | None:
    """Delete low-degree vertices until the minimum degree reaches half the order.

    At each step the current graph on ``m`` vertices is returned if its
    minimum degree is at least ``floor(m/2)``; otherwise a minimum-degree
    vertex (lowest index on ties, degree at most ``floor((m-2)/2)``) is
    deleted.  Returns None if fewer than ``k`` vertices would remain.

    With ``strict`` a failed arithmetic precondition raises
    :class:`PreconditionError`; otherwise it is recorded in the trace.
    """
    n = g.n
    problems = []
    if t < 2:
        problems.append(f"t = {t} < 2")
    if k < (19 * t - 9) // 2:
        problems.append(f"k = {k} < floor((19t-9)/2) = {(19 * t - 9) // 2}")
    if n >= t and g.edge_count() < _ex_tc3_value(n, t):
        problems.append(f"e(G) = {g.edge_count()} < ex(n, tC3) = {_ex_tc3_value(n, t)}")
    if g.min_degree() <= n // 2 - 1 and n < peel_threshold(t, k):
        problems.append(f"n = {n} < floor((k-t)^2 / (4 floor((t+1)/2))) + k + 1 = {peel_threshold(t, k)}")
    if problems and strict:
        raise PreconditionError("; ".join(problems))

    alive = g.all_vertices()
    deleted: list[int] = []
    while alive.bit_count() >= k:
        m = alive.bit_count()
        degs = {v: (g.rows[v] & alive).bit_count() for v in bits(alive)}
        v = min(degs, key=lambda x: (degs[x], x))
        if degs[v] >= m // 2:
            core = g.induced(alive)
            e_ok = m >= t and core.edge_count() >= _ex_tc3_value(m, t) + 1
            return core, PeelTrace(deleted, list(bits(alive)), problems, e_ok)
        alive &= ~(1 << v)
        deleted.append(v)
    return None


def replace_triangles_with_odd_cycles(
    g: Graph, t: int, l: int, triangles: list[tuple[int, int, int]]
) -> CyclePacking:
    """Turn ``t`` disjoint triangles into ``t`` disjoint (2l+1)-cycles.

    Triangle ``j`` is grown while avoiding the cycles already produced and
    the triangles not yet processed.
    """
    if len(triangles) != t:
        raise PreconditionError(f"expected {t} triangles, got {len(triangles)}")
    try:
        validate_packing(g, [tuple(x) for x in triangles], 3, t)
    except AssertionError as exc:
        raise PreconditionError(f"triangles are not {t} disjoint triangles of g: {exc}") from exc
    grown: list[tuple[int, ...]] = []
    for j in range(t):
        avoid = as_mask(v for cyc in grown for v in cyc)
        avoid |= as_mask(v for tri in triangles[j + 1 :] for v in tri)
        grown.append(grow_odd_cycle(g, avoid, tuple(triangles[j]), l).cycle)
    packing = CyclePacking(t, 2 * l + 1, PackingStatus.FOUND, grown)
    packing.validate(g)
    return packing


def verify_per_vertex_packing(g: Graph, t: int, l: int) -> tuple[bool, dict[int, CyclePacking]]:
    """For every vertex u, search ``g - u`` for t-1 disjoint 2l-cycles."""
    if t < 2:
        raise ValueError("t must be at least 2")
    witnesses = {}
    for u in range(g.n):
        witnesses[u] = find_disjoint_cycles(g, t - 1, 2 * l, within=g.all_vertices() & ~(1 << u))
    return all(p.found for p in witnesses.values()), witnesses
