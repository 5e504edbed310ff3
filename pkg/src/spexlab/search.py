"""Desk-scale extremal searches.

* exhaustive scans over every labelled graph on up to 8 vertices (numba
  kernels in :mod:`spexlab._kernels`), maximising edges or spectral radius
  over graphs without ``t`` disjoint cycles of a given length;
* a best-improvement hill climb on the spectral radius over such graphs,
  and a certificate that a graph is a local maximum under single-edge
  moves.
"""

from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .canonical import canonical_graph6
from .constructions import erdos_moon_graph, s_graph
from .graph import Graph, graph6_decode, graph6_encode
from .spectral import perron
from .subgraphs import find_disjoint_cycles, find_packing_through_edge, is_free

EXHAUSTIVE_EX_MAX_N = 8
EXHAUSTIVE_SPEX_MAX_N = 7
IMPROVE_TOL = 1e-10
TIE_TOL = 1e-9
STORE_CAP = 1 << 16


def cycle_length(l: int, parity: str) -> int:
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    length = 2 * l + 1 if parity == "odd" else 2 * l
    if length < 3:
        raise ValueError(f"cycle length {length} < 3")
    return length


def candidate_graph(n: int, t: int, l: int, parity: str) -> Graph:
    """The conjectured spectral extremal graph for t disjoint cycles."""
    if parity == "odd":
        return erdos_moon_graph(n, t)
    if l == 2:
        return s_graph(n, 2 * t - 1, "plusplus")
    return s_graph(n, l * t - 1, "plus")


@dataclass
class ExtremalReport:
    n: int
    t: int
    l: int
    objective: str
    cycle_length: int
    best_value: float | int
    best_graphs: list[str]
    graphs_scanned: int
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "t": self.t,
            "l": self.l,
            "objective": self.objective,
            "cycle_length": self.cycle_length,
            "best_value": self.best_value,
            "best_graphs": self.best_graphs,
            "graphs_scanned": self.graphs_scanned,
            "details": self.details,
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d


# -- labelled-graph codes -------------------------------------------------------


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def code_to_graph(n: int, code: int) -> Graph:
    return Graph.from_edges(n, [p for k, p in enumerate(vertex_pairs(n)) if code >> k & 1])


def graph_to_code(g: Graph) -> int:
    return sum(1 << k for k, (i, j) in enumerate(vertex_pairs(g.n)) if g.has_edge(i, j))


def cycle_templates(n: int, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Edge-code and vertex masks of every ``length``-cycle of K_n."""
    index = {p: k for k, p in enumerate(vertex_pairs(n))}
    edges, verts = [], []
    for combo in itertools.combinations(range(n), length):
        first, rest = combo[0], combo[1:]
        for perm in itertools.permutations(rest):
            if perm[0] > perm[-1]:
                continue
            seq = (first, *perm)
            code = 0
            for a, b in zip(seq, seq[1:] + seq[:1]):
                code |= 1 << index[(min(a, b), max(a, b))]
            edges.append(code)
            verts.append(sum(1 << v for v in combo))
    return np.array(edges, dtype=np.int64), np.array(verts, dtype=np.int64)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunks(fn, ranges, threads: int):
    if threads <= 1 or len(ranges) == 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def _dedup(n: int, codes) -> list[str]:
    return sorted({canonical_graph6(code_to_graph(n, int(c))) for c in codes})


# -- exhaustive scans -------------------------------------------------------------


def exhaustive_ex(n: int, t: int, l: int, threads: int = 1, partitions: int | None = None) -> ExtremalReport:
    """Maximum edges over all labelled n-vertex graphs without t disjoint
    (2l+1)-cycles, with the extremal graphs up to isomorphism."""
    if n > EXHAUSTIVE_EX_MAX_N:
        raise ValueError(f"exhaustive_ex supports n <= {EXHAUSTIVE_EX_MAX_N}, got {n}")
    if n < 1 or t < 1 or l < 1:
        raise ValueError("need n, t, l >= 1")
    length = 2 * l + 1
    start = time.perf_counter()
    cyc_e, cyc_v = cycle_templates(n, length)
    m = n * (n - 1) // 2
    floor = 0
    if n >= t:
        seed = erdos_moon_graph(n, t)
        if is_free(seed, t, length):
            floor = seed.edge_count()

    def work(lo, hi):
        out = np.empty(STORE_CAP, dtype=np.int64)
        best, stored, overflow, checked = _kernels.scan_max_edges_free(lo, hi, floor, cyc_e, cyc_v, t, out)
        return best, out[:stored].copy(), overflow, checked

    results = _run_chunks(work, _chunks(1 << m, partitions or threads), threads)
    best = max(r[0] for r in results)
    codes = np.concatenate([r[1] for r in results if r[0] == best] or [np.empty(0, np.int64)])
    overflow = any(r[2] for r in results if r[0] == best)
    classes = _dedup(n, codes)
    for g6 in classes:
        g = graph6_decode(g6)
        if find_disjoint_cycles(g, t, length).found or g.edge_count() != best:
            raise AssertionError(f"extremal graph {g6} failed re-verification")
    return ExtremalReport(
        n,
        t,
        l,
        "edges",
        length,
        int(best),
        classes,
        1 << m,
        time.perf_counter() - start,
        {
            "labelled_extremal": int(codes.size),
            "store_overflow": bool(overflow),
            "freeness_tests": int(sum(r[3] for r in results)),
            "initial_floor": floor,
        },
    )


def exhaustive_max_edges_bounded(n: int, nu: int, delta: int, threads: int = 1) -> ExtremalReport:
    """Maximum edges over labelled n-vertex graphs with matching number at
    most ``nu`` and maximum degree at most ``delta``."""
    if n > EXHAUSTIVE_EX_MAX_N:
        raise ValueError(f"supports n <= {EXHAUSTIVE_EX_MAX_N}")
    start = time.perf_counter()
    pairs = vertex_pairs(n)
    pu = np.array([p[0] for p in pairs], dtype=np.int64)
    pv = np.array([p[1] for p in pairs], dtype=np.int64)
    m = len(pairs)

    def work(lo, hi):
        out = np.empty(STORE_CAP, dtype=np.int64)
        best, stored, overflow = _kernels.scan_max_edges_bounded(lo, hi, n, pu, pv, nu, delta, 0, out)
        return best, out[:stored].copy(), overflow

    results = _run_chunks(work, _chunks(1 << m, threads), threads)
    best = max(r[0] for r in results)
    codes = np.concatenate([r[1] for r in results if r[0] == best])
    return ExtremalReport(
        n,
        0,
        0,
        "edges-bounded-matching-degree",
        0,
        int(best),
        _dedup(n, codes[:2000]),
        1 << m,
        time.perf_counter() - start,
        {"nu": nu, "delta": delta, "labelled_extremal": int(codes.size)},
    )


def exhaustive_spex(n: int, t: int, l: int, parity: str, threads: int = 1, spot_check: bool = True) -> ExtremalReport:
    """Maximum spectral radius over labelled n-vertex graphs without t
    disjoint cycles of length 2l+1 (odd) or 2l (even)."""
    if n > EXHAUSTIVE_SPEX_MAX_N:
        raise ValueError(f"exhaustive_spex supports n <= {EXHAUSTIVE_SPEX_MAX_N}, got {n}")
    length = cycle_length(l, parity)
    start = time.perf_counter()
    pairs = vertex_pairs(n)
    pu = np.array([p[0] for p in pairs], dtype=np.int64)
    pv = np.array([p[1] for p in pairs], dtype=np.int64)
    cyc_e, cyc_v = cycle_templates(n, length)
    m = len(pairs)

    def work(lo, hi):
        codes = np.empty(STORE_CAP, dtype=np.int64)
        rhos = np.empty(STORE_CAP, dtype=np.float64)
        skipped = np.empty(1000, dtype=np.int64)
        best, stored, overflow, evaluated, n_skip, kept = _kernels.scan_max_rho_free(
            lo, hi, n, pu, pv, cyc_e, cyc_v, t, 0.0, TIE_TOL, codes, rhos, skipped
        )
        return best, codes[:stored].copy(), rhos[:stored].copy(), overflow, evaluated, n_skip, skipped[:kept].copy()

    results = _run_chunks(work, _chunks(1 << m, threads), threads)
    best = max(r[0] for r in results)
    codes = np.concatenate([r[1][r[2] >= best - TIE_TOL] for r in results])
    classes = _dedup(n, codes)
    for g6 in classes:
        g = graph6_decode(g6)
        if find_disjoint_cycles(g, t, length).found:
            raise AssertionError(f"argmax graph {g6} is not free")
        if abs(perron(g).rho - best) > 1e-8:
            raise AssertionError(f"argmax graph {g6} does not attain {best}")
    spot = 0
    if spot_check:
        for r in results:
            for c in r[6]:
                g = code_to_graph(n, int(c))
                if g.edge_count() and np.linalg.eigvalsh(g.adjacency())[-1] >= best - TIE_TOL:
                    raise AssertionError("maximum-degree prune skipped a graph reaching the best radius")
                spot += 1
    return ExtremalReport(
        n,
        t,
        l,
        "rho",
        length,
        float(best),
        classes,
        1 << m,
        time.perf_counter() - start,
        {
            "parity": parity,
            "labelled_argmax": int(codes.size),
            "radii_evaluated": int(sum(r[4] for r in results)),
            "pruned_by_max_degree": int(sum(r[5] for r in results)),
            "prune_spot_checks": spot,
            "store_overflow": bool(any(r[3] for r in results)),
        },
    )


# -- local search --------------------------------------------------------------------


def _batch_rho(base: np.ndarray, adds: list[tuple[int, int]], removes: list[tuple[int, int]] | None = None) -> np.ndarray:
    """Largest eigenvalue of ``base`` with each listed edge toggled on (and
    the matching entry of ``removes`` toggled off)."""
    k = len(adds)
    if k == 0:
        return np.empty(0)
    stack = np.repeat(base[None, :, :], k, axis=0)
    idx = np.arange(k)
    au = np.array([a[0] for a in adds])
    av = np.array([a[1] for a in adds])
    stack[idx, au, av] = stack[idx, av, au] = 1.0
    if removes is not None:
        ru = np.array([r[0] for r in removes])
        rv = np.array([r[1] for r in removes])
        stack[idx, ru, rv] = stack[idx, rv, ru] = 0.0
    return np.linalg.eigvalsh(stack)[:, -1]


def _rho(a: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(a)[-1])


def _packing_edges(packing, skip: tuple[int, int]) -> list[tuple[int, int]]:
    """Edges used by a packing, other than ``skip``.

    If ``G + f`` contains the packing, ``G + f - e`` can only be free when
    ``e`` is one of these edges, so they are the only swap partners of
    ``f`` worth scoring.
    """
    out = set()
    for cyc in packing.cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            e = (min(a, b), max(a, b))
            if e != skip:
                out.add(e)
    return sorted(out)


@dataclass
class _MoveSearch:
    """Best feasible improving single-edge move from one graph."""

    g: Graph
    t: int
    length: int
    tol: float
    budget: int
    evaluations: int = 0
    feasibility_checks: int = 0

    def packing_after(self, h: Graph, u: int, v: int):
        # h - uv is free, so any packing in h must use uv
        self.feasibility_checks += 1
        return find_packing_through_edge(h, self.t, self.length, u, v)

    def best_move(self):
        """Return (rho, move) for the best feasible improving move, or None.

        Moves are ``("add", f)`` or ``("swap", e, f)``.  Deleting an edge
        never raises the spectral radius, so deletions are not evaluated.
        The best feasible improving add wins outright; swaps are searched
        only when there is none.  A swap removing ``e`` and adding ``f`` is
        bounded above by adding ``f`` alone.
        """
        g, tol = self.g, self.tol
        a = g.adjacency()
        rho0 = _rho(a)
        room = self.budget - self.evaluations
        if room <= 0:
            return None
        non_edges = list(g.non_edges())[:room]
        add_rho = _batch_rho(a, non_edges)
        self.evaluations += len(non_edges)
        order = sorted(range(len(non_edges)), key=lambda i: (-round(add_rho[i], 9), non_edges[i]))
        blocked = []
        for i in order:
            if add_rho[i] <= rho0 + tol:
                break
            f = non_edges[i]
            packing = self.packing_after(g.with_edge(*f), *f)
            if not packing.found:
                return float(add_rho[i]), ("add", f)
            blocked.append((i, packing))
        best = None
        floor = rho0
        for i, packing in blocked:
            if add_rho[i] <= floor + tol:
                break
            f = non_edges[i]
            room = self.budget - self.evaluations
            if room <= 0:
                break
            cand = _packing_edges(packing, f)[:room]
            vals = _batch_rho(a, [f] * len(cand), cand)
            self.evaluations += len(cand)
            for j in sorted(range(len(cand)), key=lambda j: (-round(vals[j], 9), cand[j])):
                if vals[j] <= floor + tol:
                    break
                e = cand[j]
                if not self.packing_after(g.without_edge(*e).with_edge(*f), *f).found:
                    floor = float(vals[j])
                    best = (floor, ("swap", e, f))
                    break
        return best


def _random_free_graph(n: int, t: int, length: int, rng: np.random.Generator) -> Graph:
    """Random recursive tree on shuffled labels plus random extra edges
    kept only while the graph stays free."""
    perm = rng.permutation(n)
    edges = [(int(perm[v]), int(perm[rng.integers(0, v)])) for v in range(1, n)]
    g = Graph.from_edges(n, edges)
    non_edges = list(g.non_edges())
    picks = rng.choice(len(non_edges), size=min(n // 2, len(non_edges)), replace=False)
    for k in sorted(int(p) for p in picks):
        u, v = non_edges[k]
        h = g.with_edge(u, v)
        if not find_packing_through_edge(h, t, length, u, v).found:
            g = h
    return g


@dataclass
class ClimbResult:
    seed_index: int
    start: str
    final: str
    rho: float
    steps: int
    evaluations: int
    budget_exhausted: bool
    trajectory: list[tuple[int, float, str]]

    def to_dict(self) -> dict:
        return {
            "seed_index": self.seed_index,
            "start": self.start,
            "final": self.final,
            "rho": self.rho,
            "steps": self.steps,
            "evaluations": self.evaluations,
            "budget_exhausted": self.budget_exhausted,
        }


def _move_str(move) -> str:
    if move[0] == "add":
        return f"add {move[1][0]}-{move[1][1]}"
    return f"swap -{move[1][0]}-{move[1][1]} +{move[2][0]}-{move[2][1]}"


def climb(g: Graph, t: int, length: int, budget: int, tol: float = IMPROVE_TOL, seed_index: int = 0) -> ClimbResult:
    """Apply best feasible improving moves to ``g`` (assumed free) until none
    is left or ``budget`` radius evaluations are spent."""
    start = graph6_encode(g).decode()
    ms = _MoveSearch(g, t, length, tol, budget)
    rho = _rho(g.adjacency())
    traj = [(0, rho, "start")]
    steps = 0
    while True:
        ms.g = g
        found = ms.best_move()
        if found is None:
            break
        new_rho, move = found
        if new_rho <= rho + tol:
            raise AssertionError("climb step did not increase the spectral radius")
        g = g.with_edge(*move[1]) if move[0] == "add" else g.without_edge(*move[1]).with_edge(*move[2])
        rho = new_rho
        steps += 1
        traj.append((steps, rho, _move_str(move)))
    return ClimbResult(
        seed_index,
        start,
        graph6_encode(g).decode(),
        perron(g).rho if g.edge_count() else 0.0,
        steps,
        ms.evaluations,
        ms.evaluations >= budget,
        traj,
    )


def hill_climb_spex(
    n: int,
    t: int,
    l: int,
    parity: str,
    seeds: int = 20,
    budget: int = 100_000,
    seed: int = 0,
    tol: float = IMPROVE_TOL,
) -> ExtremalReport:
    """Hill-climb the spectral radius from ``seeds`` random free graphs.

    ``budget`` caps radius evaluations per climb.  The conjectured extremal
    construction is always evaluated and reported under ``candidate``.
    """
    length = cycle_length(l, parity)
    start_time = time.perf_counter()
    children = np.random.SeedSequence(seed).spawn(seeds)
    climbs = []
    for i, ss in enumerate(children):
        rng = np.random.Generator(np.random.PCG64(ss))
        g0 = _random_free_graph(n, t, length, rng)
        climbs.append(climb(g0, t, length, budget, tol, i))
    best = max(climbs, key=lambda c: (c.rho, -c.seed_index)) if climbs else None
    cand = candidate_graph(n, t, l, parity)
    cand_free = is_free(cand, t, length)
    cand_rho = perron(cand).rho
    cert = local_max_details(cand, t, l, parity, tol) if cand_free else None
    details = {
        "seed": seed,
        "seeds": seeds,
        "budget": budget,
        "parity": parity,
        "tol": tol,
        "climbs": [c.to_dict() for c in climbs],
        "candidate": {
            "graph6": graph6_encode(cand).decode(),
            "rho": cand_rho,
            "free": cand_free,
            "local_max": cert["is_local_max"] if cert else False,
        },
        "candidate_at_least_best": bool(best is None or cand_rho >= best.rho - 1e-8),
    }
    report = ExtremalReport(
        n,
        t,
        l,
        "rho",
        length,
        best.rho if best else 0.0,
        [best.final] if best else [],
        sum(c.evaluations for c in climbs),
        time.perf_counter() - start_time,
        details,
    )
    report.trajectories = climbs
    return report


def trajectories_csv(climbs: list[ClimbResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed_index", "step", "rho", "move"])
    for c in climbs:
        for step, rho, move in c.trajectory:
            w.writerow([c.seed_index, step, repr(rho), move])
    return buf.getvalue()


def local_max_details(g: Graph, t: int, l: int, parity: str, tol: float = IMPROVE_TOL) -> dict:
    """Look for a feasible add or swap raising the spectral radius of the
    free graph ``g`` by more than ``tol``.

    Every add is scored.  Swaps adding ``f`` are scored only when adding
    ``f`` alone improves (an upper bound for them) and only against the
    edges of a packing found in ``g + f`` (no other removal can restore
    freeness).
    """
    length = cycle_length(l, parity)
    if find_disjoint_cycles(g, t, length).found:
        raise ValueError("certify_local_max needs a free graph")
    a = g.adjacency()
    rho0 = _rho(a)
    non_edges = list(g.non_edges())
    add_rho = _batch_rho(a, non_edges)
    evaluated = len(non_edges)
    checks = 0
    witness = None
    blocked = []
    for i, f in enumerate(non_edges):
        if add_rho[i] <= rho0 + tol:
            continue
        checks += 1
        packing = find_packing_through_edge(g.with_edge(*f), t, length, *f)
        if not packing.found:
            witness = ("add", f)
            break
        blocked.append((f, packing))
    if witness is None:
        for f, packing in blocked:
            cand = _packing_edges(packing, f)
            vals = _batch_rho(a, [f] * len(cand), cand)
            evaluated += len(cand)
            for j, e in enumerate(cand):
                if vals[j] <= rho0 + tol:
                    continue
                checks += 1
                h = g.without_edge(*e).with_edge(*f)
                if not find_packing_through_edge(h, t, length, *f).found:
                    witness = ("swap", e, f)
                    break
            if witness:
                break
    return {
        "is_local_max": witness is None,
        "rho": rho0,
        "moves_evaluated": evaluated,
        "feasibility_checks": checks,
        "witness": _move_str(witness) if witness else None,
    }


def certify_local_max(g: Graph, t: int, l: int, parity: str, tol: float = IMPROVE_TOL) -> bool:
    return local_max_details(g, t, l, parity, tol)["is_local_max"]
