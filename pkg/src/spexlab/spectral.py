"""Perron roots: dense power iteration, closed forms, equitable quotients,
and the spectral inequalities checked by the verification suites."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constructions import FamilyParams, complete_graph, erdos_moon_graph, join
from .graph import Graph, bits

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 1_000_000
CHECK_SLACK = 1e-8


class SpectralError(RuntimeError):
    """Power iteration failed to reach the requested residual."""

    def __init__(self, message: str, residual: float = math.nan, iterations: int = 0):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass
class SpectralResult:
    rho: float
    vector: np.ndarray
    residual: float
    iterations: int
    component: list[int] | None = field(default=None)

    def to_dict(self, with_vector: bool = False) -> dict:
        d = {"rho": self.rho, "residual": self.residual, "iterations": self.iterations}
        if self.component is not None:
            d["component"] = self.component
        if with_vector:
            d["vector"] = self.vector.tolist()
        return d


def _power(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    """Shifted power iteration on a connected component's adjacency matrix.

    Iterates with ``A + cI`` where ``c`` tracks half the current Rayleigh
    quotient, so the ``-rho`` eigenvalue of bipartite graphs is damped by a
    factor of about 3 per step instead of oscillating.
    """
    n = a.shape[0]
    if n == 1:
        return 0.0, np.ones(1), 0.0, 0
    deg = a.sum(axis=1)
    shift = 0.5 * math.sqrt(float(deg @ deg) / n)
    x = np.full(n, 1.0 / math.sqrt(n))
    ax = a @ x
    rho = float(x @ ax)
    residual = float(np.linalg.norm(ax - rho * x))
    it = 0
    while residual > tol:
        if it >= max_iter:
            raise SpectralError(
                f"power iteration stopped after {it} iterations with residual {residual:.3e} > {tol:.1e}",
                residual,
                it,
            )
        y = ax + shift * x
        x = y / np.linalg.norm(y)
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.linalg.norm(ax - rho * x))
        shift = max(shift, 0.5 * rho)
        it += 1
    return rho, x, residual, it


def perron(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    """Perron root and unit Perron vector of ``g``.

    For disconnected input each component is solved separately and the one
    with the largest root is returned, its vertices listed in ``component``
    and the vector zero elsewhere.
    """
    if g.n == 0:
        raise SpectralError("spectral radius of the empty graph is undefined")
    if tol <= 0:
        raise ValueError("tol must be positive")
    comps = g.components()
    a = g.adjacency()
    if len(comps) == 1:
        rho, x, res, it = _power(a, tol, max_iter)
        return SpectralResult(rho, np.abs(x), res, it)
    best = None
    total_it = 0
    for comp in comps:
        idx = list(bits(comp))
        rho, x, res, it = _power(a[np.ix_(idx, idx)], tol, max_iter)
        total_it += it
        if best is None or rho > best[0] + tol:
            best = (rho, idx, x, res)
    rho, idx, x, res = best
    vec = np.zeros(g.n)
    vec[idx] = np.abs(x)
    return SpectralResult(rho, vec, res, total_it, component=idx)


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return perron(g, tol).rho


def rho_s_closed_form(n: int, l: int) -> float:
    """Spectral radius of K_l joined with an independent set of n-l vertices."""
    if l < 1 or n <= l:
        raise ValueError(f"closed form needs n > l >= 1, got n={n}, l={l}")
    return (l - 1 + math.sqrt((l - 1) ** 2 + 4 * l * (n - l))) / 2


def rho_spp_upper_bound(n: int, l: int) -> float:
    if l < 1:
        raise ValueError("l must be at least 1")
    return math.sqrt((l + 1 / (4 * l)) * n)


def rho_spp_quadratic_bound(n: int, l: int) -> float:
    """Largest root of (r - l + 1)(r - 1) = l (n - l), an upper bound on
    rho(S++_{n,l}) valid for every n."""
    if l < 1 or n < l + 1:
        raise ValueError("need l >= 1 and n >= l + 1")
    return (l + math.sqrt((l - 2) ** 2 + 4 * l * (n - l))) / 2


def spp_bound_min_order(l: int) -> int:
    """Smallest n from which sqrt((l + 1/(4l)) n) dominates the quadratic
    bound, so the square-root bound on rho(S++_{n,l}) holds for all larger n."""

    def gap(n: int) -> float:
        # sign of (s - l + 1)(s - 1) - l (n - l) with s the square-root bound
        return n / (4 * l) + l * l + l - 1 - l * math.sqrt((l + 1 / (4 * l)) * n)

    # gap is convex in n with its minimum at n = 4 l^4 (l + 1/(4l))
    lo = max(l + 2, math.ceil(4 * l**4 * (l + 1 / (4 * l))))
    hi = lo
    while gap(hi) < 0:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if gap(mid) >= 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


# -- equitable quotients ------------------------------------------------------


def _quotient(params: FamilyParams) -> tuple[np.ndarray, np.ndarray]:
    """Part sizes and quotient matrix ``B[i, j]`` = neighbours in part j of a
    vertex in part i."""
    f, n = params.family, params.n
    if f in ("turan", "multipartite", "erdos-moon"):
        if f == "turan":
            if not 1 <= params.r <= n:
                raise ValueError("turan family needs 1 <= r <= n")
            q, rem = divmod(n, params.r)
            sizes = [q + 1] * rem + [q] * (params.r - rem)
            clique = 0
        elif f == "multipartite":
            sizes = list(params.parts)
            clique = 0
        else:
            if not 1 <= params.t <= n:
                raise ValueError("erdos-moon family needs n >= t >= 1")
            m = n - params.t + 1
            sizes = [(m + 1) // 2, m // 2]
            clique = params.t - 1
        sizes = [s for s in sizes if s > 0]
        k = len(sizes)
        parts = ([clique] if clique else []) + sizes
        b = np.zeros((len(parts), len(parts)))
        off = 1 if clique else 0
        if clique:
            b[0, 0] = clique - 1
            b[0, 1:] = sizes
            b[1:, 0] = clique
        for i in range(k):
            for j in range(k):
                if i != j:
                    b[off + i, off + j] = sizes[j]
        return np.array(parts, dtype=float), b
    if f in ("s", "s+", "s++"):
        l = params.l
        rest = n - l
        if l < 1 or rest < (2 if f == "s+" else 1):
            raise ValueError(f"infeasible {f} parameters n={n}, l={l}")
        matched = 0 if f == "s" else 2 if f == "s+" else 2 * (rest // 2)
        parts = [l, matched, rest - matched]
        b = np.array(
            [
                [l - 1, matched, rest - matched],
                [l, 1, 0],
                [l, 0, 0],
            ],
            dtype=float,
        )
        keep = [i for i, s in enumerate(parts) if s > 0]
        return np.array(parts, dtype=float)[keep], b[np.ix_(keep, keep)]
    raise ValueError(f"family {f!r} has no equitable-quotient path")


def implicit_family_perron(params: FamilyParams) -> SpectralResult:
    """Perron root from the family's equitable-partition quotient.

    Works for any ``n`` (no dense graph is built).  The quotient is
    symmetrised as ``D^{1/2} B D^{-1/2}`` with ``D`` the part sizes; the
    returned vector is the lifted Perron vector, unit 2-norm over all
    ``n`` vertices, and the residual is the lifted residual.
    """
    sizes, b = _quotient(params)
    if b.shape[0] == 1 and b[0, 0] == 0:
        n = int(sizes[0])
        return SpectralResult(0.0, np.full(n, 1 / math.sqrt(n)), 0.0, 0)
    root = np.sqrt(sizes)
    sym = root[:, None] * b / root[None, :]
    sym = (sym + sym.T) / 2
    w, v = np.linalg.eigh(sym)
    rho = float(w[-1])
    z = np.abs(v[:, -1])
    y = z / root
    y /= math.sqrt(float(sizes @ (y * y)))
    residual = math.sqrt(float(sizes @ (b @ y - rho * y) ** 2))
    vec = np.repeat(y, sizes.astype(int))
    return SpectralResult(rho, vec, residual, 0)


# -- inequality checks ----------------------------------------------------------


def check_deletion_inequality(h: Graph, tol: float = DEFAULT_TOL) -> tuple[float, float, bool]:
    """Compare rho(h) against rho(K1+h) - |h| / rho(K1+h)."""
    if h.n == 0:
        raise ValueError("h must have at least one vertex")
    big = perron(join(complete_graph(1), h), tol).rho
    lhs = perron(h, tol).rho if h.edge_count() else 0.0
    rhs = big - h.n / big
    return lhs, rhs, lhs >= rhs - CHECK_SLACK


def join_turan_lower_bound(n: int, t: int) -> float:
    return n / 2 + (t - 1) - t * t / (2 * n)


def check_lower_bound_thm13(n: int, t: int, tol: float = DEFAULT_TOL) -> tuple[float, float, bool]:
    """Bound n/2 + (t-1) - t^2/(2n) against rho(K_{t-1} + T(n-t+1, 2))."""
    if not 1 <= t <= n:
        raise ValueError("need n >= t >= 1")
    bound = join_turan_lower_bound(n, t)
    g = erdos_moon_graph(n, t)
    rho = perron(g, tol).rho
    return bound, rho, rho >= bound - CHECK_SLACK


def spectral_band(n: int, lam: int) -> tuple[float, float]:
    """Lower and upper spectral bounds sqrt(lam n) and sqrt(6 lam n)."""
    return math.sqrt(lam * n), math.sqrt(6 * lam * n)
