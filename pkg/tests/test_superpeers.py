from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p2pcore.graph import Graph
from p2pcore.superpeers import (
    removal_robustness,
    shared_neighbor_overlap,
    superpeer_coverage,
    superpeer_degree_profile,
    superpeer_report,
    top_degree_nodes,
)

from oracles import random_corpus, random_graph, star, triangle


def test_top_degree_nodes_examples():
    assert top_degree_nodes(star(3), 1) == [0]
    assert top_degree_nodes(triangle(), 2) == [0, 1]
    g = Graph.from_edges(5, [(4, 0), (4, 1), (4, 2), (3, 0), (3, 1)])
    assert top_degree_nodes(g, 3) == [4, 0, 1]
    for n in (0, 4):
        with pytest.raises(ValueError):
            top_degree_nodes(triangle(), n)


def test_coverage_examples():
    cov = superpeer_coverage(star(3), [0])
    assert (cov.coverage_nodes, cov.neighbor_nodes, cov.coverage_fraction) == (4, 3, 1.0)
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert superpeer_coverage(two, [0]).coverage_fraction == 0.5


@pytest.mark.parametrize("supers", [[0, 0], [7], [-1]])
def test_coverage_rejects_bad_supers(supers):
    with pytest.raises(ValueError):
        superpeer_coverage(triangle(), supers)


def test_coverage_monotone_in_supers():
    rng = random.Random(4)
    for _ in range(20):
        g = random_graph(40, 0.08, rng)
        order = list(range(40))
        rng.shuffle(order)
        prev = 0.0
        for size in range(1, 15):
            frac = superpeer_coverage(g, order[:size]).coverage_fraction
            assert frac >= prev
            prev = frac


def test_overlap_identical_and_disjoint():
    same = Graph.from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    ov = shared_neighbor_overlap(same, [0, 1])
    assert ov.min_norm == ((1.0, 1.0), (1.0, 1.0))
    disjoint = Graph.from_edges(6, [(0, 2), (0, 3), (1, 4), (1, 5)])
    ov = shared_neighbor_overlap(disjoint, [0, 1])
    assert ov.min_norm[0][1] == 0.0 and ov.jaccard[0][1] == 0.0
    assert ov.max_offdiag == (0.0, 0.0)


def test_overlap_excludes_supers_and_rejects_isolated():
    # 0 and 1 are adjacent; each also reaches {2, 3}
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert shared_neighbor_overlap(g, [0, 1]).min_norm[0][1] == 1.0
    with pytest.raises(ValueError, match="4"):
        shared_neighbor_overlap(g, [0, 4])


def _brute_overlap(g, supers):
    s = set(supers)
    nb = {x: set(g.adjacency[x]) - s for x in supers}
    out = {}
    for a in supers:
        for b in supers:
            if a == b:
                out[a, b] = (1.0, 1.0)
                continue
            inter = nb[a] & nb[b]
            m = min(len(nb[a]), len(nb[b]))
            u = nb[a] | nb[b]
            out[a, b] = (len(inter) / m if m else 0.0, len(inter) / len(u) if u else 0.0)
    return out


def test_overlap_matches_set_oracle():
    rng = random.Random(21)
    for _ in range(40):
        g = random_graph(30, 0.2, rng)
        candidates = [v for v in range(30) if g.adjacency[v]]
        supers = rng.sample(candidates, min(5, len(candidates)))
        ov = shared_neighbor_overlap(g, supers)
        expected = _brute_overlap(g, supers)
        for i, a in enumerate(supers):
            for j, b in enumerate(supers):
                assert (ov.min_norm[i][j], ov.jaccard[i][j]) == expected[a, b]
                assert 0.0 <= ov.min_norm[i][j] <= 1.0
                assert ov.min_norm[i][j] == ov.min_norm[j][i]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.data())
def test_overlap_permutation_invariant(seed, data):
    rng = random.Random(seed)
    g = random_graph(25, 0.25, rng)
    supers = [v for v in range(25) if g.adjacency[v]][:6]
    if len(supers) < 2:
        return
    perm = data.draw(st.permutations(range(len(supers))))
    a = shared_neighbor_overlap(g, supers)
    b = shared_neighbor_overlap(g, [supers[p] for p in perm])
    for i in range(len(supers)):
        for j in range(len(supers)):
            assert b.min_norm[i][j] == a.min_norm[perm[i]][perm[j]]


def test_profile_examples():
    # node 1 has degree 8 with a single super neighbour (node 0)
    edges = [(0, 1)] + [(1, x) for x in range(2, 9)] + [(0, 9)]
    g = Graph.from_edges(10, edges)
    prof = superpeer_degree_profile(g, [0], core={0, 1})
    assert (prof[1].k, prof[1].ksn, prof[1].in_core) == (8, 1, True)
    assert prof[9].in_core is False

    hubs = list(range(14))
    g = Graph.from_edges(15, [(14, h) for h in hubs])
    assert superpeer_degree_profile(g, hubs)[14].ksn == 14


def test_profile_double_count_audit():
    rng = random.Random(8)
    for g in random_corpus(30, seed=31, n_max=40):
        supers = rng.sample(range(g.node_count), min(4, g.node_count))
        s = set(supers)
        prof = superpeer_degree_profile(g, supers)
        internal = sum(1 for u, v in g.edges() if u in s and v in s)
        super_degree = sum(g.degrees()[x] for x in supers)
        # each super-super edge shows up in the ksn of both endpoints
        assert sum(r.ksn for r in prof) == super_degree
        assert sum(r.ksn for r in prof if r.node not in s) == super_degree - 2 * internal
        for r in prof:
            assert 0 <= r.ksn <= min(r.k, len(supers))


def test_report_bundles_parts():
    rep = superpeer_report(star(3), [0], core={0})
    assert rep.coverage.coverage_fraction == 1.0
    assert rep.overlap.max_offdiag == (None,)
    assert len(rep.profile) == 4


def test_robustness_examples():
    rep = removal_robustness(star(5), [0])
    assert rep.after.node_count == 5
    assert rep.after.isolated_nodes == 5
    assert rep.after.largest_component == 1
    assert rep.before.largest_component == 6
    same = removal_robustness(triangle(), [])
    assert same.before == same.after
    with pytest.raises(ValueError):
        removal_robustness(triangle(), [1, 1])
    with pytest.raises(IndexError):
        removal_robustness(triangle(), [9])


def test_robustness_invariants():
    rng = random.Random(17)
    for g in random_corpus(30, seed=41):
        drop = rng.sample(range(g.node_count), rng.randint(0, g.node_count))
        rep = removal_robustness(g, drop)
        assert rep.after.node_count == rep.before.node_count - len(drop)
        assert rep.after.largest_component <= rep.before.largest_component


def test_planted_supers_recovered(calibrated_network):
    g = calibrated_network.graph
    assert top_degree_nodes(g, 14) == sorted(
        calibrated_network.planted_supers, key=lambda v: (-g.degrees()[v], v)
    )


def test_band_near_eight(calibrated_network):
    g = calibrated_network.graph
    prof = superpeer_degree_profile(g, list(calibrated_network.planted_supers))
    ordinary = [r for r in prof if r.node >= 14]
    hist = {}
    for r in ordinary:
        hist[r.k] = hist.get(r.k, 0) + 1
    # degree 8 is the modal class and the 8..12 band holds a large share
    assert max(hist, key=hist.get) == 8
    assert sum(hist.get(k, 0) for k in range(8, 13)) / len(ordinary) >= 0.3
