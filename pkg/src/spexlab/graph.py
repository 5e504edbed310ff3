"""Dense simple graphs stored as bit rows, plus graph6 and edge-list I/O.

Vertex sets are plain ``int`` bitmasks (bit ``v`` set means vertex ``v`` is a
member).  Every public operation returns a new :class:`Graph`; instances are
never mutated after construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np

CAPACITY = 512


class GraphError(ValueError):
    """Invalid vertex, loop request or capacity overflow."""


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class Graph6HeaderError(Graph6Error):
    pass


class Graph6TrailingDataError(Graph6Error):
    pass


class Graph6AlphabetError(Graph6Error):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def as_mask(vs: int | Iterable[int]) -> int:
    """Accept either a bitmask or an iterable of vertex indices."""
    if isinstance(vs, (int, np.integer)):
        return int(vs)
    return mask_of(vs)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rows[u]`` is the neighbourhood bitmask of ``u``.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int] | None = None, *, check: bool = True):
        if n < 0 or n > CAPACITY:
            raise GraphError(f"vertex count {n} outside 0..{CAPACITY}")
        self.n = n
        self.rows = tuple(rows) if rows is not None else (0,) * n
        if check:
            self.validate()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, check=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def from_adjacency(cls, a: np.ndarray) -> Graph:
        a = np.asarray(a)
        n = a.shape[0]
        us, vs = np.nonzero(np.triu(a, 1))
        return cls.from_edges(n, zip(us.tolist(), vs.tolist()))

    def validate(self) -> None:
        """Check symmetry, loop-freeness and row width."""
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {u} has bits beyond n={self.n}")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.rows[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    # -- queries ----------------------------------------------------------------

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise GraphError(f"vertex {u} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, u: int) -> list[int]:
        self._check_vertex(u)
        return list(bits(self.rows[u]))

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[tuple[int, int]]:
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            for v in bits((~row & full) >> (u + 1)):
                yield u, u + 1 + v

    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def e_inside(self, s: int | Iterable[int]) -> int:
        s = as_mask(s)
        return sum((self.rows[u] & s).bit_count() for u in bits(s)) // 2

    def e_between(self, s: int | Iterable[int], t: int | Iterable[int]) -> int:
        s, t = as_mask(s), as_mask(t)
        if s & t:
            raise GraphError("e_between needs disjoint vertex sets")
        return sum((self.rows[u] & t).bit_count() for u in bits(s))

    def components(self) -> list[int]:
        """Connected components as bitmasks, ordered by lowest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def adjacency(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    # -- derived graphs -----------------------------------------------------

    def with_edge(self, u: int, v: int) -> Graph:
        return add_edge(self, u, v)

    def without_edge(self, u: int, v: int) -> Graph:
        self._check_vertex(u)
        self._check_vertex(v)
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, rows, check=False)

    def induced(self, keep: int | Iterable[int]) -> Graph:
        return induced_subgraph(self, keep)

    def delete_vertices(self, drop: int | Iterable[int]) -> Graph:
        return induced_subgraph(self, self.all_vertices() & ~as_mask(drop))

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count()})"


def add_edge(g: Graph, u: int, v: int) -> Graph:
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise GraphError(f"loop requested at vertex {u}")
    if g.has_edge(u, v):
        return g
    rows = list(g.rows)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, rows, check=False)


def induced_subgraph(g: Graph, keep: int | Iterable[int]) -> Graph:
    """Subgraph on ``keep``, relabelled 0.. in ascending original order."""
    keep = as_mask(keep)
    if keep >> g.n:
        raise GraphError("keep set contains vertices outside the graph")
    order = list(bits(keep))
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        r = 0
        for w in bits(g.rows[v] & keep):
            r |= 1 << pos[w]
        rows.append(r)
    return Graph(len(order), rows, check=False)


def degree_power_sum(g: Graph, p: int) -> int:
    if p < 1:
        raise ValueError("p must be at least 1")
    return sum(d**p for d in g.degrees())


# -- graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, *((n >> s & 63) + 63 for s in (12, 6, 0))])
    return bytes([126, 126, *((n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0))])


def graph6_encode(g: Graph) -> bytes:
    """Encode without the optional ``>>graph6<<`` header."""
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data.endswith(b"\n"):
        data = data[:-1]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6AlphabetError(f"byte {b!r} at offset {pos} outside graph6 alphabet 63..126")
    if not data:
        raise Graph6HeaderError("empty input")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6HeaderError("truncated 8-byte size header")
        n = 0
        for b in data[2:8]:
            n = n << 6 | (b - 63)
        body = data[8:]
    else:
        if len(data) < 4:
            raise Graph6HeaderError("truncated 4-byte size header")
        n = 0
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        body = data[4:]
    if n > CAPACITY:
        raise Graph6HeaderError(f"graph6 header declares n={n} > capacity {CAPACITY}")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise Graph6HeaderError(f"header declares n={n} but only {len(body)} of {need} edge bytes present")
    if len(body) > need:
        raise Graph6TrailingDataError(f"{len(body) - need} trailing byte(s) after edge data")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            b = body[k // 6] - 63
            if b >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)


# -- edge lists -----------------------------------------------------------------


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Read ``u v`` lines (0-indexed); ``#`` starts a comment."""
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    return Graph.from_edges(n if n is not None else top + 1, edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())
