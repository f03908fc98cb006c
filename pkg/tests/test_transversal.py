from __future__ import annotations

import random

import networkx as nx
import pytest

from surfstab.errors import BudgetExceeded
from surfstab.generators import planar_planted, proj_quad
from surfstab.oracles import brute_force_oct, brute_force_symmetric_oct
from surfstab.transversal import (
    DoubleCover,
    branch_partitions,
    double_cover,
    find_odd_cycle,
    odd_cycle_transversal,
)
from surfstab.transversal import two_sided_transversal


def test_double_cover_of_projective_triangle_is_bipartite(triangle):
    cover = double_cover(triangle)
    assert cover.graph.number_of_nodes() == 6
    assert nx.is_bipartite(cover.graph)


def test_double_cover_of_planar_cycle_has_odd_cycles(c5):
    cover = double_cover(c5)
    adj = {v: set(cover.graph.adj[v]) for v in cover.graph.nodes}
    cyc = find_odd_cycle(adj)
    assert cyc is not None and len(cyc) % 2 == 1
    assert DoubleCover.project(cyc) <= set(c5.vertices)


def test_transversal_is_empty_on_consistent_input(k4, quad33):
    assert two_sided_transversal(k4, 0).vertices == frozenset()
    assert two_sided_transversal(quad33, 0).vertices == frozenset()


def test_planar_c5_needs_one_vertex(c5):
    T = two_sided_transversal(c5, 2)
    assert len(T.vertices) == 1
    with pytest.raises(BudgetExceeded):
        two_sided_transversal(c5, 0)


def test_oct_matches_brute_force_on_random_graphs():
    rng = random.Random(7)
    for _ in range(120):
        n = rng.randint(1, 9)
        H = nx.gnp_random_graph(n, rng.uniform(0.2, 0.7), seed=rng.randrange(10**6))
        best = brute_force_oct(H)
        S = odd_cycle_transversal(H, n)
        assert S is not None and len(S) == best
        assert nx.is_bipartite(H.subgraph(set(H) - S))
        if best:
            assert odd_cycle_transversal(H, best - 1) is None


def test_symmetric_transversal_minimum_on_planted():
    for seed in range(6):
        G = planar_planted(3, 3, plant=2, seed=seed)
        assert len(two_sided_transversal(G, 6).vertices) == brute_force_symmetric_oct(G)


def test_branches_cover_all_stable_splits(c5):
    X = two_sided_transversal(c5, 2).vertices
    branches = branch_partitions(c5, X)
    assert len(branches) == 2
    for br in branches:
        assert br.deleted | br.chosen == X
        assert br.graph.is_bipartite()


def test_branches_skip_non_stable_splits():
    G = proj_quad(2, 3, plant=2, seed=1)
    X = sorted(two_sided_transversal(G, 8).vertices)
    for br in branch_partitions(G, X):
        assert not any(G.adjacency[a] & br.chosen for a in br.chosen)
