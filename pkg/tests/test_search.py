import itertools
import math

import numpy as np
import pytest

from conftest import naive_has_packing
from spexlab.canonical import canonical_graph6
from spexlab.constructions import cycle_graph, erdos_moon_graph, path_graph, s_graph, turan_graph
from spexlab.formulas import MOON_RANGE, ex_tC3
from spexlab.graph import Graph, graph6_decode
from spexlab.search import (
    ExtremalReport,
    certify_local_max,
    code_to_graph,
    cycle_templates,
    exhaustive_ex,
    exhaustive_max_edges_bounded,
    exhaustive_spex,
    graph_to_code,
    hill_climb_spex,
    local_max_details,
    trajectories_csv,
    vertex_pairs,
)
from spexlab.subgraphs import matching_number


def brute(n, keep, score):
    best, arg = None, set()
    for code in range(1 << (n * (n - 1) // 2)):
        g = code_to_graph(n, code)
        if not keep(g):
            continue
        s = score(g)
        if best is None or s > best + 1e-9:
            best, arg = s, {canonical_graph6(g)}
        elif abs(s - best) <= 1e-9:
            arg.add(canonical_graph6(g))
    return best, sorted(arg)


def test_codes_follow_graph6_pair_order():
    assert vertex_pairs(4) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    g = erdos_moon_graph(6, 2)
    assert code_to_graph(6, graph_to_code(g)) == g


def test_cycle_templates_count():
    # K_n has C(n,L) (L-1)!/2 cycles of length L
    for n, L in [(5, 3), (6, 4), (7, 5), (8, 3)]:
        e, v = cycle_templates(n, L)
        assert len(e) == math.comb(n, L) * math.factorial(L - 1) // 2
        assert all(bin(int(x)).count("1") == L for x in e)


@pytest.mark.parametrize("n, t, l", [(5, 1, 1), (6, 2, 1), (5, 1, 2)])
def test_exhaustive_ex_matches_brute_force(n, t, l):
    rep = exhaustive_ex(n, t, l)
    best, classes = brute(n, lambda g: not naive_has_packing(g, t, 2 * l + 1), lambda g: g.edge_count())
    assert rep.best_value == best and rep.best_graphs == classes


def test_exhaustive_ex_examples():
    rep = exhaustive_ex(4, 1, 1)
    assert rep.best_value == 4 and rep.best_graphs == [canonical_graph6(turan_graph(4, 2))]
    rep = exhaustive_ex(7, 2, 1)
    formula = ex_tC3(7, 2)
    assert rep.best_value == formula.value == 15 and formula.flag == MOON_RANGE
    assert canonical_graph6(erdos_moon_graph(7, 2)) in rep.best_graphs
    assert rep.details["initial_floor"] == 15
    for g6 in rep.best_graphs:
        g = graph6_decode(g6)
        assert g.edge_count() == 15 and not naive_has_packing(g, 2, 3)


def test_exhaustive_ex_partitions_agree():
    a, b = exhaustive_ex(6, 2, 1), exhaustive_ex(6, 2, 1, threads=1, partitions=5)
    assert a.best_value == b.best_value and a.best_graphs == b.best_graphs


def test_exhaustive_limits():
    with pytest.raises(ValueError):
        exhaustive_ex(9, 2, 1)
    with pytest.raises(ValueError):
        exhaustive_spex(8, 1, 1, "odd")


def test_bounded_matches_brute_force():
    for nu, delta in [(1, 2), (2, 2), (2, 3)]:
        rep = exhaustive_max_edges_bounded(6, nu, delta)
        best, _ = brute(6, lambda g: g.max_degree() <= delta and matching_number(g) <= nu, lambda g: g.edge_count())
        assert rep.best_value == best


@pytest.mark.parametrize("n, t, l, parity", [(4, 1, 2, "even"), (5, 1, 1, "odd"), (5, 1, 2, "odd")])
def test_exhaustive_spex_matches_brute_force(n, t, l, parity):
    length = 2 * l + 1 if parity == "odd" else 2 * l
    rep = exhaustive_spex(n, t, l, parity)
    best, classes = brute(
        n, lambda g: not naive_has_packing(g, t, length), lambda g: float(np.linalg.eigvalsh(g.adjacency())[-1])
    )
    assert rep.best_value == pytest.approx(best, abs=1e-9)
    assert rep.best_graphs == classes


def test_exhaustive_spex_examples():
    rep = exhaustive_spex(4, 1, 2, "even")
    # the paw: a triangle with a pendant vertex
    assert rep.best_value == pytest.approx(2.170086486626034, abs=1e-9)
    rep = exhaustive_spex(6, 1, 2, "odd")
    assert rep.best_value >= 3 - 1e-9
    rep = exhaustive_spex(7, 2, 1, "odd")
    k1t = float(np.linalg.eigvalsh(erdos_moon_graph(7, 2).adjacency())[-1])
    assert rep.best_value >= k1t - 1e-9
    assert rep.details["prune_spot_checks"] > 0


def test_report_serialises_without_time():
    rep = exhaustive_ex(5, 1, 1)
    d = rep.to_dict()
    assert "elapsed" not in d and rep.to_dict(timing=True)["elapsed"] >= 0
    assert isinstance(rep, ExtremalReport)


def test_certify_examples():
    assert certify_local_max(s_graph(30, 3, "plusplus"), 2, 2, "even")
    assert certify_local_max(s_graph(40, 5, "plus"), 2, 3, "even")
    assert not certify_local_max(path_graph(4), 1, 2, "even")
    with pytest.raises(ValueError):
        certify_local_max(cycle_graph(4), 1, 2, "even")


def test_certify_finds_swaps():
    # a star K_{1,3} plus an isolated vertex: joining the isolated vertex to the centre is C_4-safe
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3)])
    det = local_max_details(g, 1, 2, "even")
    assert not det["is_local_max"] and det["witness"].startswith("add")


def test_certify_agrees_with_brute_force_moves():
    rng = np.random.default_rng(5)
    for _ in range(15):
        n = 6
        g = code_to_graph(n, int(rng.integers(0, 1 << 15)))
        if naive_has_packing(g, 1, 4):
            continue
        rho0 = float(np.linalg.eigvalsh(g.adjacency())[-1])
        improving = False
        edges, non_edges = list(g.edges()), list(g.non_edges())
        moves = [g.with_edge(*f) for f in non_edges] + [g.without_edge(*e).with_edge(*f) for e in edges for f in non_edges]
        for h in moves:
            if float(np.linalg.eigvalsh(h.adjacency())[-1]) > rho0 + 1e-10 and not naive_has_packing(h, 1, 4):
                improving = True
                break
        assert certify_local_max(g, 1, 2, "even") == (not improving)


def test_hill_climb_is_monotone_and_deterministic():
    a = hill_climb_spex(14, 2, 2, "even", seeds=3, budget=4000, seed=9)
    b = hill_climb_spex(14, 2, 2, "even", seeds=3, budget=4000, seed=9)
    assert a.to_dict() == b.to_dict()
    assert trajectories_csv(a.trajectories) == trajectories_csv(b.trajectories)
    for climb in a.trajectories:
        rhos = [r for _, r, _ in climb.trajectory]
        assert all(y > x + 1e-10 for x, y in zip(rhos, rhos[1:]))
    cand = a.details["candidate"]
    assert cand["free"] and cand["local_max"]
    c = hill_climb_spex(14, 2, 2, "even", seeds=3, budget=4000, seed=10)
    assert c.details["climbs"] != a.details["climbs"]


def test_hill_climb_final_graphs_are_free():
    from spexlab.subgraphs import is_free

    rep = hill_climb_spex(12, 1, 2, "even", seeds=4, budget=3000, seed=1)
    for climb in rep.trajectories:
        assert is_free(graph6_decode(climb.final), 1, 4)
    assert rep.best_value <= rep.details["candidate"]["rho"] + 1e-8


def test_hill_climb_budget_exhaustion_reported():
    rep = hill_climb_spex(20, 2, 2, "even", seeds=1, budget=50, seed=0)
    assert rep.details["climbs"][0]["budget_exhausted"]


def test_trajectory_csv_header():
    rep = hill_climb_spex(10, 1, 1, "odd", seeds=1, budget=500, seed=0)
    lines = trajectories_csv(rep.trajectories).splitlines()
    assert lines[0] == "seed_index,step,rho,move" and lines[1].startswith("0,0,")
