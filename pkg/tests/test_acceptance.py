"""Acceptance criteria, one test per criterion part.

Each test records a ``AC<k> PASS|FAIL`` line; conftest prints them all in
the terminal summary.  Parts that are mathematically unattainable are
strict expected failures (the reason is in the xfail marker and the
decisions ledger).
"""

import math
import time

import numpy as np
import pytest

from conftest import gnp
from spexlab.canonical import canonical_graph6
from spexlab.constructions import complete_graph, empty_graph, erdos_moon_graph, s_graph
from spexlab.formulas import chvatal_hanson, ex_tC3
from spexlab.graph import Graph
from spexlab.procedures import grow_odd_cycle, replace_triangles_with_odd_cycles, verify_per_vertex_packing
from spexlab.search import certify_local_max, exhaustive_ex, exhaustive_max_edges_bounded, hill_climb_spex
from spexlab.spectral import check_deletion_inequality, perron, rho_s_closed_form, rho_spp_upper_bound
from spexlab.subgraphs import find_disjoint_cycles, is_free, validate_cycle, validate_packing
from spexlab.suites import suite_lemmas, suite_theorem11, suite_theorem15

RESULTS: list[str] = []

GRID_N = range(10, 201, 10)
GRID_L = range(1, 6)


def record(label: str, ok: bool, detail: str) -> None:
    line = f"{label} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ex8():
    start = time.perf_counter()
    rep = exhaustive_ex(8, 2, 1)
    return rep, time.perf_counter() - start


def test_ac01_closed_form_radius():
    worst_err, worst_time = 0.0, 0.0
    for n in GRID_N:
        for l in GRID_L:
            start = time.perf_counter()
            rho = perron(s_graph(n, l)).rho
            worst_time = max(worst_time, time.perf_counter() - start)
            worst_err = max(worst_err, abs(rho - rho_s_closed_form(n, l)))
    record("AC1", worst_err <= 1e-9 and worst_time < 1.0, f"max |err| {worst_err:.2e} (<= 1e-9), slowest {worst_time:.3f}s (< 1s)")


@pytest.mark.xfail(
    strict=True,
    reason="rho(S++_{n,l}) exceeds sqrt((l+1/(4l))n) for l >= 2 until n >= 461/3728/16027/49334; large-n statement",
)
def test_ac02a_square_root_upper_band():
    bad = []
    for n in GRID_N:
        for l in GRID_L:
            rho = perron(s_graph(n, l, "plusplus")).rho
            if rho > rho_spp_upper_bound(n, l) + 1e-8:
                bad.append((n, l))
    record("AC2a", not bad, f"{len(bad)} of {len(GRID_N) * len(GRID_L)} grid points exceed the bound, first {bad[:3]}")


def test_ac02b_square_root_lower_band():
    bad, count = [], 0
    for n in GRID_N:
        for l in GRID_L:
            if l < 2 or n < 4 * l * l:
                continue
            count += 1
            if math.sqrt(l * n) > perron(s_graph(n, l, "plus")).rho + 1e-8:
                bad.append((n, l))
    record("AC2b", not bad and count > 0, f"sqrt(l n) <= rho(S+) at {count - len(bad)} of {count} points")


def test_ac03_value_and_runtime(ex8):
    rep, elapsed = ex8
    formula = ex_tC3(8, 2)
    ok = rep.best_value == formula.value == 19 and elapsed <= 600
    record("AC3", ok, f"ex(8,2C3) oracle {rep.best_value}, formula {formula.value}, {elapsed:.1f}s (<= 600s)")


@pytest.mark.xfail(
    strict=True,
    reason="a second 19-edge 2C3-free graph on 8 vertices exists (K3+E4 plus a vertex joined to the E4 side)",
)
def test_ac03_extremal_class(ex8):
    rep, _ = ex8
    target = canonical_graph6(erdos_moon_graph(8, 2))
    record("AC3-class", rep.best_graphs == [target], f"classes {rep.best_graphs}, expected only {target}")


def test_ac03_order_seven():
    rep = exhaustive_ex(7, 2, 1)
    formula = ex_tC3(7, 2)
    ok = rep.best_value == formula.value
    record("AC3-n7", ok, f"ex(7,2C3) oracle {rep.best_value}, formula {formula.value} [{formula.flag}]")


@pytest.mark.parametrize("nu, delta, expected", [(2, 3, 7), (3, 3, 10)])
def test_ac04_bounded_degree_and_matching(nu, delta, expected):
    # the maximum is monotone in n (add an isolated vertex), so n = 8 covers n <= 8
    start = time.perf_counter()
    rep = exhaustive_max_edges_bounded(8, nu, delta)
    elapsed = time.perf_counter() - start
    formula = chvatal_hanson(nu, delta).value
    ok = rep.best_value == formula == expected and elapsed <= 600
    record(f"AC4 nu={nu} delta={delta}", ok, f"oracle {rep.best_value}, formula {formula}, {elapsed:.1f}s (<= 600s)")


def _ac5_cases():
    for t in (2, 3):
        for l in (2, 3):
            for n in (20, 40):
                yield f"erdos-moon({n},{t}) vs {t}C{2 * l + 1}", (lambda n=n, t=t: erdos_moon_graph(n, t)), t, 2 * l + 1
                yield f"S+({n},{l * t - 1}) vs {t}C{2 * l}", (lambda n=n, lam=l * t - 1: s_graph(n, lam, "plus")), t, 2 * l
                yield f"S++({n},{2 * t - 1}) vs {t}C{2 * l}", (lambda n=n, lam=2 * t - 1: s_graph(n, lam, "plusplus")), t, 2 * l


@pytest.mark.parametrize("label, build, t, length", list(_ac5_cases()), ids=lambda x: x if isinstance(x, str) else "")
def test_ac05_constructions_are_free(label, build, t, length):
    g = build()
    start = time.perf_counter()
    free = is_free(g, t, length)
    elapsed = time.perf_counter() - start
    record(f"AC5 {label}", free and elapsed <= 60, f"free={free}, {elapsed:.2f}s (<= 60s)")


def test_ac06_every_added_edge_packs():
    g = s_graph(40, 5, "plus")
    start = time.perf_counter()
    non_edges = list(g.non_edges())
    misses = []
    for f in non_edges:
        h = g.with_edge(*f)
        p = find_disjoint_cycles(h, 2, 6)
        if p.found:
            validate_packing(h, p.cycles, 6, 2)
        else:
            misses.append(f)
    elapsed = time.perf_counter() - start
    ok = not misses and elapsed <= 300
    record("AC6", ok, f"{len(non_edges) - len(misses)} of {len(non_edges)} additions pack 2C6, {elapsed:.1f}s (<= 300s)")


def test_ac07_per_vertex_packing():
    start = time.perf_counter()
    ok, witnesses = verify_per_vertex_packing(s_graph(30, 5, "plus"), 2, 3)
    elapsed = time.perf_counter() - start
    record("AC7", ok and elapsed <= 120, f"all_hold={ok} over {len(witnesses)} vertices, {elapsed:.2f}s (<= 120s)")


def test_ac08_deletion_inequality():
    rng = np.random.default_rng(8)
    start = time.perf_counter()
    held = sum(check_deletion_inequality(gnp(50, 0.3, rng))[2] for _ in range(100))
    lhs, rhs, _ = check_deletion_inequality(empty_graph(50))
    elapsed = time.perf_counter() - start
    equal = abs(lhs - rhs) <= 1e-12
    ok = held == 100 and equal and elapsed <= 60
    record("AC8", ok, f"{held}/100 random hold, empty case lhs={lhs:.3g} rhs={rhs:.3g}, {elapsed:.1f}s (<= 60s)")


def _first_triangle(g: Graph, forbidden: set[int]) -> tuple[int, int, int]:
    for a in range(g.n):
        if a in forbidden:
            continue
        for b in g.neighbors(a):
            if b <= a or b in forbidden:
                continue
            for c in g.neighbors(b):
                if c > b and c not in forbidden and g.has_edge(a, c):
                    return a, b, c
    raise AssertionError("no triangle")


def test_ac09_constructive_procedures():
    rng = np.random.default_rng(9)
    start = time.perf_counter()
    done = 0
    while done < 100:
        g = gnp(60, 0.7, rng)
        if g.min_degree() < 30:
            continue
        forbidden = {int(x) for x in rng.choice(60, size=int(rng.integers(0, 6)), replace=False)}
        l = 2 + done % 2
        trace = grow_odd_cycle(g, forbidden, _first_triangle(g, forbidden), l)
        validate_cycle(g, trace.cycle, 2 * l + 1)
        assert not forbidden & set(trace.cycle)
        done += 1
    k30 = complete_graph(30)
    packing = replace_triangles_with_odd_cycles(k30, 2, 2, [(0, 1, 2), (3, 4, 5)])
    validate_packing(k30, packing.cycles, 5, 2)
    elapsed = time.perf_counter() - start
    record("AC9", elapsed <= 120, f"{done} grown cycles certified, 2 disjoint C5 in K30 certified, {elapsed:.1f}s (<= 120s)")


def test_ac10_hill_climb_corroboration():
    start = time.perf_counter()
    rep = hill_climb_spex(30, 2, 2, "even", seeds=20, budget=100_000, seed=0)
    target = perron(s_graph(30, 3, "plusplus")).rho
    certified = certify_local_max(s_graph(30, 3, "plusplus"), 2, 2, "even")
    elapsed = time.perf_counter() - start
    ok = rep.best_value <= target + 1e-8 and certified and elapsed <= 600
    record(
        "AC10",
        ok,
        f"climb best {rep.best_value:.9f} <= rho(S++_30,3) {target:.9f}, certify={certified}, {elapsed:.1f}s (<= 600s)",
    )


def test_ac11_determinism():
    runs = [
        lambda: suite_theorem11(30, 2, 2, seed=11).to_json(),
        lambda: suite_theorem15(30, 2, 2, seed=11).to_json(),
        lambda: suite_lemmas(seed=11).to_json(),
    ]
    same = [f() == f() for f in runs]
    record("AC11", all(same), f"byte-identical reruns for theorem11, theorem15, lemmas: {same}")
