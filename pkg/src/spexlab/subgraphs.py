"""Exact subgraph searches: cycles, vertex-disjoint cycle packings, paths,
matchings, plus the single-vertex-move max-cut.

The cycle searches share one backtracking engine.  It branches on the
lowest eligible vertex ``v``: either some cycle of the packing passes
through ``v`` (enumerate those cycles, recurse on the rest) or none does
(drop ``v``).  Twin vertices (equal open or closed neighbourhoods) are
interchangeable, so within every twin class only the lowest still-available
member is ever tried; for the structured families this collapses the
search to a handful of branches.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass, field

from .graph import Graph, GraphError, as_mask, bits


class PackingStatus(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED_NONE = "exhausted_none"


class CertificateError(AssertionError):
    """A cycle or path certificate does not hold in its host graph."""


@dataclass
class CyclePacking:
    t: int
    length: int
    status: PackingStatus
    cycles: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status is PackingStatus.FOUND

    def validate(self, g: Graph) -> None:
        if not self.found:
            if self.cycles:
                raise CertificateError("exhausted packing carries cycles")
            return
        validate_packing(g, self.cycles, self.length, self.t)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "length": self.length,
            "status": self.status.value,
            "cycles": [list(c) for c in self.cycles],
        }


def validate_cycle(g: Graph, cycle: tuple[int, ...] | list[int], length: int | None = None) -> None:
    if length is not None and len(cycle) != length:
        raise CertificateError(f"cycle {cycle} has length {len(cycle)}, expected {length}")
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise CertificateError(f"cycle {cycle} repeats vertices or is too short")
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise CertificateError(f"cycle {cycle}: {u}-{v} is not an edge")


def validate_packing(g: Graph, cycles: list, length: int, t: int | None = None) -> None:
    if t is not None and len(cycles) != t:
        raise CertificateError(f"packing has {len(cycles)} cycles, expected {t}")
    used = 0
    for c in cycles:
        validate_cycle(g, c, length)
        m = as_mask(c)
        if used & m:
            raise CertificateError(f"cycle {c} shares a vertex with an earlier cycle")
        used |= m


def validate_path(g: Graph, path: tuple[int, ...] | list[int], order: int | None = None) -> None:
    if order is not None and len(path) != order:
        raise CertificateError(f"path {path} has {len(path)} vertices, expected {order}")
    if len(set(path)) != len(path):
        raise CertificateError(f"path {path} repeats a vertex")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise CertificateError(f"path {path}: {u}-{v} is not an edge")


# -- search engine ---------------------------------------------------------------


def twin_classes(g: Graph) -> list[int]:
    """For each vertex, the bitmask of its twin class (itself if no twin)."""
    cls = [1 << v for v in range(g.n)]
    for key in (lambda v: g.rows[v], lambda v: g.rows[v] | 1 << v):
        groups: dict[int, int] = {}
        for v in range(g.n):
            groups[key(v)] = groups.get(key(v), 0) | 1 << v
        for m in groups.values():
            if m & (m - 1):
                for v in bits(m):
                    cls[v] = m
    return cls


class _Search:
    """Backtracking state for one host graph and cycle length."""

    __slots__ = ("rows", "cls", "length", "nodes")

    def __init__(self, g: Graph, length: int):
        if length < 3:
            raise GraphError("cycle length must be at least 3")
        self.rows = g.rows
        self.cls = twin_classes(g)
        self.length = length
        self.nodes = 0

    def core(self, eligible: int) -> int:
        """Strip vertices with fewer than two eligible neighbours."""
        rows = self.rows
        changed = True
        while changed:
            changed = False
            for v in bits(eligible):
                r = rows[v] & eligible
                if not r or not r & (r - 1):
                    eligible &= ~(1 << v)
                    changed = True
        return eligible

    def cycles_through(self, v: int, eligible: int, via: int | None = None) -> Iterator[list[int]]:
        """Cycles of the target length in G[eligible] starting at ``v``
        (and continuing to ``via`` when given).

        Each new vertex is the lowest available member of its twin class.
        """
        rows, cls, length = self.rows, self.cls, self.length
        closers = rows[v] & eligible
        path = [v]

        def extend(cur: int, avail: int) -> Iterator[list[int]]:
            self.nodes += 1
            left = length - len(path)
            cand = rows[cur] & avail
            if left == 1:
                cand &= closers
            while cand:
                low = cand & -cand
                c = low.bit_length() - 1
                cand &= ~cls[c]
                if left == 1:
                    path.append(c)
                    yield path
                    path.pop()
                    continue
                nxt_avail = avail & ~low
                if left == 2 and not rows[c] & nxt_avail & closers:
                    continue
                path.append(c)
                yield from extend(c, nxt_avail)
                path.pop()

        if via is None:
            yield from extend(v, eligible & ~(1 << v))
        elif rows[v] >> via & 1 and eligible >> via & 1:
            path.append(via)
            yield from extend(via, eligible & ~(1 << v) & ~(1 << via))

    def pack(self, eligible: int, t: int, out: list[tuple[int, ...]]) -> bool:
        if t == 0:
            return True
        eligible = self.core(eligible)
        while eligible.bit_count() >= t * self.length:
            v = (eligible & -eligible).bit_length() - 1
            for cyc in self.cycles_through(v, eligible):
                if self.pack(eligible & ~as_mask(cyc), t - 1, out):
                    out.append(tuple(cyc))
                    return True
            eligible = self.core(eligible & ~self.cls[v])
        return False


def find_disjoint_cycles(g: Graph, t: int, length: int, within: int | None = None) -> CyclePacking:
    """Exact search for ``t`` vertex-disjoint cycles of the given length.

    The returned packing is validated against ``g`` before returning.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    s = _Search(g, length)
    eligible = g.all_vertices() if within is None else within & g.all_vertices()
    out: list[tuple[int, ...]] = []
    if s.pack(eligible, t, out):
        packing = CyclePacking(t, length, PackingStatus.FOUND, out[::-1])
        packing.validate(g)
        return packing
    return CyclePacking(t, length, PackingStatus.EXHAUSTED_NONE)


def find_packing_through_edge(g: Graph, t: int, length: int, u: int, v: int) -> CyclePacking:
    """Search for ``t`` disjoint cycles one of which uses the edge ``uv``.

    If ``g`` minus that edge is known to be free, this decides whether
    ``g`` itself is free while only enumerating cycles through ``uv``.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    s = _Search(g, length)
    eligible = g.all_vertices()
    for cyc in s.cycles_through(u, eligible, via=v):
        out: list[tuple[int, ...]] = []
        if s.pack(eligible & ~as_mask(cyc), t - 1, out):
            packing = CyclePacking(t, length, PackingStatus.FOUND, [tuple(cyc), *out[::-1]])
            packing.validate(g)
            return packing
    return CyclePacking(t, length, PackingStatus.EXHAUSTED_NONE)


def find_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    p = find_disjoint_cycles(g, 1, length)
    return p.cycles[0] if p.found else None


def is_free(g: Graph, t: int, length: int) -> bool:
    """True iff ``g`` has no ``t`` vertex-disjoint cycles of this length."""
    return not find_disjoint_cycles(g, t, length).found


def find_path(g: Graph, order: int) -> tuple[int, ...] | None:
    """A path on ``order`` vertices, or None after exhaustive search."""
    if order < 1:
        raise ValueError("path order must be at least 1")
    if order > g.n:
        return None
    if order == 1:
        return (0,) if g.n else None
    rows, cls = g.rows, twin_classes(g)
    path: list[int] = []

    def extend(cur: int, avail: int) -> bool:
        if len(path) == order:
            return True
        cand = rows[cur] & avail
        while cand:
            low = cand & -cand
            c = low.bit_length() - 1
            cand &= ~cls[c]
            path.append(c)
            if extend(c, avail & ~low):
                return True
            path.pop()
        return False

    starts = g.all_vertices()
    while starts:
        v = (starts & -starts).bit_length() - 1
        starts &= ~cls[v]
        path.append(v)
        if extend(v, g.all_vertices() & ~(1 << v)):
            result = tuple(path)
            validate_path(g, result, order)
            return result
        path.pop()
    return None


# -- matchings --------------------------------------------------------------------


def matching_number(g: Graph, within: int | None = None) -> int:
    """Exact matching number.

    Branch-and-bound: vertices of degree one are matched to their neighbour
    outright; otherwise an edge at a maximum-degree vertex is either put in
    the matching or discarded.  Branches that cannot beat the incumbent
    (matched so far + half the remaining vertices) are cut.
    """
    alive = g.all_vertices() if within is None else within & g.all_vertices()
    best = 0

    def remove(rows: list[int], w: int) -> None:
        for x in bits(rows[w]):
            rows[x] &= ~(1 << w)
        rows[w] = 0

    def solve(rows: list[int], alive: int, taken: int) -> None:
        nonlocal best
        while True:
            alive = sum(1 << v for v in bits(alive) if rows[v])
            leaf = next((v for v in bits(alive) if rows[v].bit_count() == 1), None)
            if leaf is None:
                break
            mate = rows[leaf].bit_length() - 1
            remove(rows, leaf)
            remove(rows, mate)
            taken += 1
        best = max(best, taken)
        if taken + alive.bit_count() // 2 <= best:
            return
        u = max(bits(alive), key=lambda v: (rows[v].bit_count(), -v))
        v = (rows[u] & -rows[u]).bit_length() - 1
        inc = rows[:]
        remove(inc, u)
        remove(inc, v)
        solve(inc, alive, taken + 1)
        exc = rows[:]
        exc[u] &= ~(1 << v)
        exc[v] &= ~(1 << u)
        solve(exc, alive, taken)

    solve([r & alive if alive >> v & 1 else 0 for v, r in enumerate(g.rows)], alive, 0)
    return best


# -- max cut ----------------------------------------------------------------------


def local_max_cut(g: Graph) -> tuple[int, int]:
    """Bipartition (as two bitmasks) where no single vertex move increases
    the cut.  Starts from the even/odd index split; first-improvement moves
    in index order."""
    side1 = sum(1 << v for v in range(0, g.n, 2))
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            mine = side1 if side1 >> v & 1 else g.all_vertices() & ~side1
            same = (g.rows[v] & mine).bit_count()
            if same > g.rows[v].bit_count() - same:
                side1 ^= 1 << v
                improved = True
    return side1, g.all_vertices() & ~side1


def cut_size(g: Graph, side: int) -> int:
    return g.e_between(side, g.all_vertices() & ~side)
