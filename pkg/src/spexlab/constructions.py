"""Named graph families.

Layouts are fixed so graph6 output is reproducible: clique (dominating)
vertices come first, then the independent / part vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import CAPACITY, Graph, GraphError

FAMILIES = (
    "turan",
    "erdos-moon",
    "s",
    "s+",
    "s++",
    "cycles",
    "multipartite",
    "complete",
    "empty",
)


@dataclass(frozen=True)
class FamilyParams:
    family: str
    n: int = 0
    t: int = 1
    l: int = 0
    r: int = 2
    parts: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "cycles":
            object.__setattr__(self, "n", self.t * self.l)
        elif self.family == "multipartite":
            object.__setattr__(self, "n", sum(self.parts))

    @classmethod
    def parse(cls, spec: str) -> FamilyParams:
        """Parse strings such as ``erdos-moon:n=10,t=2`` or ``multipartite:parts=3/2/2``."""
        name, _, rest = spec.strip().partition(":")
        kwargs: dict = {}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"bad family parameter {item!r} in {spec!r}")
            key = key.strip()
            if key == "parts":
                kwargs["parts"] = tuple(int(x) for x in val.replace("-", "/").split("/"))
            elif key in ("n", "t", "l", "r"):
                kwargs[key] = int(val)
            else:
                raise ValueError(f"unknown family parameter {key!r} in {spec!r}")
        return cls(name.strip(), **kwargs)

    def __str__(self) -> str:
        if self.family in ("s", "s+", "s++"):
            return f"{self.family}:n={self.n},l={self.l}"
        if self.family == "erdos-moon":
            return f"erdos-moon:n={self.n},t={self.t}"
        if self.family == "turan":
            return f"turan:n={self.n},r={self.r}"
        if self.family == "cycles":
            return f"cycles:t={self.t},l={self.l}"
        if self.family == "multipartite":
            return "multipartite:parts=" + "/".join(map(str, self.parts))
        return f"{self.family}:n={self.n}"

    def build(self) -> Graph:
        return build_family(self)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << u) for u in range(n)], check=False)


def empty_graph(n: int) -> Graph:
    return Graph.empty(n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(parts: list[int] | tuple[int, ...]) -> Graph:
    """Parts laid out consecutively in the given order."""
    if any(p < 0 for p in parts):
        raise GraphError("part sizes must be non-negative")
    n = sum(parts)
    if n > CAPACITY:
        raise GraphError(f"{n} vertices exceed capacity {CAPACITY}")
    full = (1 << n) - 1
    rows = []
    start = 0
    for p in parts:
        block = ((1 << p) - 1) << start
        rows.extend([full & ~block] * p)
        start += p
    return Graph(n, rows, check=False)


def turan_graph(n: int, r: int) -> Graph:
    """T(n, r) with vertex ``i`` in part ``i mod r``."""
    if r < 1 or r > n:
        raise GraphError(f"turan_graph needs 1 <= r <= n, got r={r}, n={n}")
    full = (1 << n) - 1
    same = [0] * r
    for i in range(n):
        same[i % r] |= 1 << i
    return Graph(n, [full & ~same[i % r] for i in range(n)], check=False)


def union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; ``g2`` is shifted up by ``len(g1)``."""
    n = g1.n + g2.n
    if n > CAPACITY:
        raise GraphError(f"union has {n} vertices, capacity is {CAPACITY}")
    rows = list(g1.rows) + [r << g1.n for r in g2.rows]
    return Graph(n, rows, check=False)


def join(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > CAPACITY:
        raise GraphError(f"join has {n} vertices, capacity is {CAPACITY}")
    low = (1 << g1.n) - 1
    high = ((1 << g2.n) - 1) << g1.n
    rows = [r | high for r in g1.rows] + [(r << g1.n) | low for r in g2.rows]
    return Graph(n, rows, check=False)


def erdos_moon_graph(n: int, t: int) -> Graph:
    """K_{t-1} joined with T(n-t+1, 2); the clique occupies vertices 0..t-2."""
    if t < 1 or n < t:
        raise GraphError(f"erdos_moon_graph needs n >= t >= 1, got n={n}, t={t}")
    return join(complete_graph(t - 1), turan_graph(n - t + 1, 2) if n - t + 1 >= 2 else empty_graph(n - t + 1))


def s_graph(n: int, l: int, variant: str = "plain") -> Graph:
    """Clique on ``0..l-1`` joined with an independent set on ``l..n-1``.

    ``plus`` adds the edge ``(l, l+1)``; ``plusplus`` adds ``(l+2i, l+2i+1)``
    for every complete pair of independent vertices.
    """
    if variant not in ("plain", "plus", "plusplus"):
        raise ValueError(f"unknown variant {variant!r}")
    if l < 1:
        raise GraphError("clique size must be at least 1")
    need = l + 2 if variant == "plus" else l + 1
    if n < need:
        raise GraphError(f"s_graph({variant}) needs n >= {need}, got n={n}")
    g = join(complete_graph(l), empty_graph(n - l))
    rows = list(g.rows)
    pairs = 1 if variant == "plus" else (n - l) // 2 if variant == "plusplus" else 0
    for i in range(pairs):
        a, b = l + 2 * i, l + 2 * i + 1
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return Graph(n, rows, check=False)


def disjoint_cycles(t: int, l: int) -> Graph:
    if l < 3:
        raise GraphError("cycle length must be at least 3")
    if t < 1:
        raise GraphError("need at least one cycle")
    edges = []
    for c in range(t):
        base = c * l
        edges.extend((base + i, base + (i + 1) % l) for i in range(l))
    return Graph.from_edges(t * l, edges)


def build_family(p: FamilyParams) -> Graph:
    f = p.family
    if f == "turan":
        return turan_graph(p.n, p.r)
    if f == "erdos-moon":
        return erdos_moon_graph(p.n, p.t)
    if f == "s":
        return s_graph(p.n, p.l, "plain")
    if f == "s+":
        return s_graph(p.n, p.l, "plus")
    if f == "s++":
        return s_graph(p.n, p.l, "plusplus")
    if f == "cycles":
        return disjoint_cycles(p.t, p.l)
    if f == "multipartite":
        return complete_multipartite(p.parts)
    if f == "complete":
        return complete_graph(p.n)
    return empty_graph(p.n)
