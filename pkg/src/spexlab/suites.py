"""Named verification suites bundling the structural and numeric checks
for the two extremal constructions, with a serialisable report."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from itertools import product

from .constructions import empty_graph, erdos_moon_graph, s_graph
from .formulas import _ex_tc3_value, edge_power_bound, ex_tc3_range_flag, theorem11_threshold
from .graph import degree_power_sum
from .procedures import verify_per_vertex_packing
from .search import local_max_details
from .spectral import (
    CHECK_SLACK,
    check_deletion_inequality,
    check_lower_bound_thm13,
    perron,
    rho_s_closed_form,
    rho_spp_quadratic_bound,
    rho_spp_upper_bound,
    spectral_band,
    spp_bound_min_order,
)
from .subgraphs import find_disjoint_cycles, find_packing_through_edge

SWEEP_MAX_N = 64
CLOSED_FORM_TOL = 1e-9


@dataclass
class Check:
    name: str
    description: str
    expected: object
    actual: object
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.passed,
        }


@dataclass
class Report:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, description: str, fn) -> None:
        """Run ``fn() -> (expected, actual, passed)``; errors become failures."""
        try:
            expected, actual, ok = fn()
        except Exception as exc:  # noqa: BLE001 - a failing check must not abort the suite
            expected, actual, ok = None, f"error: {type(exc).__name__}: {exc}", False
        self.checks.append(Check(name, description, expected, actual, bool(ok)))

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        checks = [Check(c["name"], c["description"], c["expected"], c["actual"], c["pass"]) for c in d["checks"]]
        report = cls(d["suite"], d["params"], checks, d.get("elapsed", 0.0))
        if report.all_pass != d["all_pass"]:
            raise ValueError("all_pass disagrees with the checks")
        return report

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "description", "expected", "actual", "pass"])
        for c in self.checks:
            w.writerow([self.suite, c.name, c.description, json.dumps(c.expected), json.dumps(c.actual), c.passed])
        return buf.getvalue()


def _adding_any_edge_packs(g, t: int, length: int, g_free: bool) -> tuple[int, list]:
    """Count non-edges whose addition creates t disjoint cycles."""
    non_edges = list(g.non_edges())
    misses = []
    for f in non_edges:
        h = g.with_edge(*f)
        # when g is free a new packing has to use f
        p = find_packing_through_edge(h, t, length, *f) if g_free else find_disjoint_cycles(h, t, length)
        if not p.found:
            misses.append(list(f))
    return len(non_edges), misses


def suite_theorem11(n: int, t: int, l: int, seed: int = 0) -> Report:
    """The join of K_{t-1} with a balanced complete bipartite graph as the
    extremal graph for t disjoint (2l+1)-cycles."""
    start = time.perf_counter()
    length = 2 * l + 1
    threshold = theorem11_threshold(t, l) if t >= 2 and l >= 2 else None
    params = {
        "n": n,
        "t": t,
        "l": l,
        "seed": seed,
        "cycle_length": length,
        "threshold": threshold,
        "below_threshold": threshold is not None and n < threshold,
        "ex_tc3_range": ex_tc3_range_flag(n, t),
        "skipped": [],
    }
    report = Report("theorem11", params)
    g = erdos_moon_graph(n, t)
    state = {}

    def free():
        p = find_disjoint_cycles(g, t, length)
        state["free"] = not p.found
        return "free", "free" if state["free"] else f"packing {[list(c) for c in p.cycles]}", state["free"]

    report.add("a-free", f"K_{t - 1} + T({n - t + 1},2) has no {t} disjoint C_{length}", free)

    def edges():
        want = _ex_tc3_value(n, t)
        return want, g.edge_count(), g.edge_count() == want

    report.add("b-edges", f"edge count equals ex(n, {t}C_3)", edges)

    if n > SWEEP_MAX_N:
        params["skipped"].append(f"c-saturated: n > {SWEEP_MAX_N}")
    elif n < t * length:
        params["skipped"].append(f"c-saturated: n < t(2l+1) = {t * length}, no packing fits")
    else:

        def saturated():
            total, misses = _adding_any_edge_packs(g, t, length, state.get("free", False))
            return {"non_edges": total, "misses": 0}, {"non_edges": total, "misses": len(misses), "first": misses[:5]}, not misses

        report.add("c-saturated", f"adding any non-edge creates {t} disjoint C_{length}", saturated)
    report.elapsed = time.perf_counter() - start
    return report


def candidate_params(t: int, l: int) -> tuple[int, str]:
    """(lambda, variant) of the conjectured extremal graph for t disjoint 2l-cycles."""
    if l == 2:
        return 2 * t - 1, "plusplus"
    return l * t - 1, "plus"


def _sqrt_lower_applies(n: int, lam: int) -> bool:
    # rho(S_{n,lam})^2 >= lam n  iff  n (lam-1)^2 >= lam^3, for lam >= 2
    return lam >= 2 and n * (lam - 1) ** 2 >= lam**3


def suite_theorem15(n: int, t: int, l: int, seed: int = 0) -> Report:
    """Checks on the conjectured extremal graph for t disjoint 2l-cycles."""
    start = time.perf_counter()
    length = 2 * l
    lam, variant = candidate_params(t, l)
    params = {
        "n": n,
        "t": t,
        "l": l,
        "seed": seed,
        "cycle_length": length,
        "lambda": lam,
        "candidate": f"{'s++' if variant == 'plusplus' else 's+'}:n={n},l={lam}",
        "slack": CHECK_SLACK,
        "skipped": [],
    }
    report = Report("theorem15", params)
    g = s_graph(n, lam, variant)
    state = {}

    def free():
        p = find_disjoint_cycles(g, t, length)
        state["free"] = not p.found
        return "free", "free" if state["free"] else f"packing {[list(c) for c in p.cycles]}", state["free"]

    report.add("a-free", f"candidate has no {t} disjoint C_{length}", free)

    rho = perron(g).rho
    quad = rho_spp_quadratic_bound(n, lam)
    report.add(
        "b-band-quadratic",
        "rho <= root of (r - lambda + 1)(r - 1) = lambda (n - lambda)",
        lambda: (f"<= {quad!r}", rho, rho <= quad + CHECK_SLACK),
    )
    n0 = spp_bound_min_order(lam)
    if n >= n0:
        upper = rho_spp_upper_bound(n, lam)
        report.add(
            "b-band-upper",
            "rho <= sqrt((lambda + 1/(4 lambda)) n)",
            lambda: (f"<= {upper!r}", rho, rho <= upper + CHECK_SLACK),
        )
    else:
        params["skipped"].append(f"b-band-upper: square-root form needs n >= {n0}")
    if _sqrt_lower_applies(n, lam):
        lower = math.sqrt(lam * n)
        report.add("b-band-lower", "rho >= sqrt(lambda n)", lambda: (f">= {lower!r}", rho, rho >= lower - CHECK_SLACK))
    else:
        params["skipped"].append("b-band-lower: needs lambda >= 2 and n (lambda-1)^2 >= lambda^3")

    if t >= 2:

        def per_vertex():
            ok, wit = verify_per_vertex_packing(g, t, l)
            bad = [u for u, p in wit.items() if not p.found]
            return {"vertices_failing": []}, {"vertices_failing": bad}, ok

        report.add("c-per-vertex", f"g - u has {t - 1} disjoint C_{length} for every u", per_vertex)
    else:
        params["skipped"].append("c-per-vertex: needs t >= 2")

    bound_e = edge_power_bound(n, l)
    report.add("d-edges", "e <= l n^(1+1/l)", lambda: (f"<= {bound_e!r}", g.edge_count(), g.edge_count() <= bound_e))
    sq = degree_power_sum(g, 2)
    report.add("d-degree-squares", "sum of squared degrees < 2 lambda n^2", lambda: (f"< {2 * lam * n * n}", sq, sq < 2 * lam * n * n))

    def local_max():
        if not state.get("free"):
            raise ValueError("candidate is not free")
        det = local_max_details(g, t, l, "even")
        return True, det["is_local_max"] if det["witness"] is None else det["witness"], det["is_local_max"]

    report.add("e-local-max", "no feasible add or swap raises rho by more than 1e-10", local_max)

    if n > SWEEP_MAX_N:
        params["skipped"].append(f"f-saturated: n > {SWEEP_MAX_N}")
    else:

        def saturated():
            total, misses = _adding_any_edge_packs(g, t, length, state.get("free", False))
            return {"non_edges": total, "misses": 0}, {"non_edges": total, "misses": len(misses), "first": misses[:5]}, not misses

        report.add("f-saturated", f"adding any non-edge creates {t} disjoint C_{length}", saturated)
    report.elapsed = time.perf_counter() - start
    return report


DEFAULT_GRID = {"t": (1, 2, 3), "l": (2, 3), "n": (20, 40, 80)}


def suite_lemmas(grid: dict | None = None, seed: int = 0) -> Report:
    """Numeric inequalities over a (t, l, n) grid, with lambda = l t - 1."""
    start = time.perf_counter()
    grid = {k: tuple(v) for k, v in (grid or DEFAULT_GRID).items()}
    params = {"grid": {k: list(v) for k, v in grid.items()}, "seed": seed, "slack": CHECK_SLACK, "skipped": []}
    report = Report("lemmas", params)

    def empty_case():
        lhs, rhs, ok = check_deletion_inequality(empty_graph(5))
        return 0.0, [lhs, rhs], ok and lhs == 0.0 and abs(rhs) <= 1e-12

    report.add("deletion-empty", "h = 5 isolated vertices: both sides are 0", empty_case)

    for t, l, n in product(grid["t"], grid["l"], grid["n"]):
        lam = l * t - 1
        tag = f"t={t},l={l},n={n}"
        if n < lam + 2:
            params["skipped"].append(f"{tag}: n < lambda + 2")
            continue

        def lower_join(n=n, t=t):
            bound, rho, ok = check_lower_bound_thm13(n, t)
            return f">= {bound!r}", rho, ok

        report.add(f"join-turan-lower[{tag}]", "rho(K_{t-1} + T(n-t+1,2)) >= n/2 + t - 1 - t^2/(2n)", lower_join)

        s = perron(s_graph(n, lam)).rho
        sp = perron(s_graph(n, lam, "plus")).rho
        spp = perron(s_graph(n, lam, "plusplus")).rho

        def closed(n=n, lam=lam, s=s):
            want = rho_s_closed_form(n, lam)
            return want, s, abs(s - want) <= CLOSED_FORM_TOL

        report.add(f"s-closed-form[{tag}]", f"rho(S) matches the closed form within {CLOSED_FORM_TOL}", closed)
        report.add(
            f"s-chain[{tag}]",
            "rho(S) <= rho(S+) <= rho(S++)",
            lambda s=s, sp=sp, spp=spp: ("ordered", [s, sp, spp], s <= sp + CHECK_SLACK and sp <= spp + CHECK_SLACK),
        )
        quad = rho_spp_quadratic_bound(n, lam)
        report.add(
            f"s++-quadratic[{tag}]",
            "rho(S++) <= root of (r - lambda + 1)(r - 1) = lambda (n - lambda)",
            lambda spp=spp, quad=quad: (f"<= {quad!r}", spp, spp <= quad + CHECK_SLACK),
        )
        if n >= spp_bound_min_order(lam):
            upper = rho_spp_upper_bound(n, lam)
            report.add(
                f"s++-upper[{tag}]",
                "rho(S++) <= sqrt((lambda + 1/(4 lambda)) n)",
                lambda spp=spp, upper=upper: (f"<= {upper!r}", spp, spp <= upper + CHECK_SLACK),
            )
        else:
            params["skipped"].append(f"s++-upper[{tag}]: square-root form needs n >= {spp_bound_min_order(lam)}")

        def deletion(n=n, lam=lam):
            lhs, rhs, ok = check_deletion_inequality(s_graph(n - 1, lam, "plus"))
            return f">= {rhs!r}", lhs, ok

        report.add(f"deletion[{tag}]", "rho(h) >= rho(K1+h) - |h|/rho(K1+h) for h = S+ on n-1", deletion)

        lo, hi = spectral_band(n, lam)
        report.add(f"band-upper[{tag}]", "rho(S+) <= sqrt(6 lambda n)", lambda sp=sp, hi=hi: (f"<= {hi!r}", sp, sp <= hi + CHECK_SLACK))
        if _sqrt_lower_applies(n, lam):
            report.add(f"band-lower[{tag}]", "rho(S+) >= sqrt(lambda n)", lambda sp=sp, lo=lo: (f">= {lo!r}", sp, sp >= lo - CHECK_SLACK))
        else:
            params["skipped"].append(f"band-lower[{tag}]: needs lambda >= 2 and n (lambda-1)^2 >= lambda^3")

        g = s_graph(n, lam, "plus")
        bound_e = edge_power_bound(n, l)
        report.add(f"edge-power[{tag}]", "e(S+) <= l n^(1+1/l)", lambda g=g, b=bound_e: (f"<= {b!r}", g.edge_count(), g.edge_count() <= b))
        sq = degree_power_sum(g, 2)
        report.add(
            f"degree-squares[{tag}]",
            "sum of squared degrees of S+ < 2 lambda n^2",
            lambda sq=sq, b=2 * lam * n * n: (f"< {b}", sq, sq < b),
        )
    report.elapsed = time.perf_counter() - start
    return report


SUITES = {"theorem11": suite_theorem11, "theorem15": suite_theorem15, "lemmas": suite_lemmas}
