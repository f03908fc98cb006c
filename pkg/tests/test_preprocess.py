from __future__ import annotations

import random
from fractions import Fraction

import pytest

from surfstab.errors import InstanceError
from surfstab.generators import proj_quad, random_weights
from surfstab.oracles import oracle_mwss
from surfstab.preprocess import (
    StandardInstance,
    bipartite_mwss,
    block_solve,
    collect_standard_instances,
    edge_induced_costs,
    is_two_connected,
    nemhauser_trotter,
    standardize,
)
from surfstab.embedding import faces_to_embedding


def oracle_leaf(inst):
    return oracle_mwss(inst.graph)[1], {}


def test_bipartite_mwss_matches_oracle():
    rng = random.Random(3)
    for _ in range(20):
        G = random_weights(proj_quad(3, 3), rng, "random")
        w, S = bipartite_mwss(G)
        assert w == oracle_mwss(G)[0]
        assert not any(G.adjacency[v] & S for v in S)


def test_nt_fixings_are_persistent():
    rng = random.Random(4)
    for _ in range(30):
        G = random_weights(proj_quad(2, 5, plant=1, seed=rng.randrange(100)), rng, "random")
        nt = nemhauser_trotter(G)
        best, _ = oracle_mwss(G)
        rest = set(nt.residual)
        sub_best, _ = oracle_mwss(G.with_weights({v: (G.weight(v) if v in rest else 0) for v in G.vertices}))
        assert best == sub_best + sum((G.weight(v) for v in nt.fixed_in), Fraction(0))
        assert all(x in (0, Fraction(1, 2), 1) for x in nt.x.values())


def test_edge_induced_costs_of_half_integral_core(triangle):
    c = edge_induced_costs(triangle)
    assert all(x >= 0 for x in c.values())
    for v in triangle.vertices:
        assert sum(c[e] for e in triangle.rotation(v)) == triangle.weight(v)


def test_edge_induced_costs_refused_when_impossible():
    star = faces_to_embedding([[0, 1, 0, 2, 0, 3]], {0: 1, 1: 5, 2: 5, 3: 5})
    with pytest.raises(InstanceError):
        edge_induced_costs(star)


def test_standard_instance_rejects_bipartite(quad33):
    with pytest.raises(InstanceError):
        StandardInstance.build(quad33)


def test_two_connectivity(triangle):
    assert is_two_connected(triangle)
    path = faces_to_embedding([[0, 1, 2, 1]])
    assert not is_two_connected(path)


def test_standardize_matches_oracle_on_corpus(small_corpus):
    from surfstab.transversal import branch_partitions, two_sided_transversal

    for label, G in small_corpus[:80]:
        X = two_sided_transversal(G, 6).vertices
        best = max(standardize(b.graph, oracle_leaf).weight + b.offset for b in branch_partitions(G, X))
        assert best == oracle_mwss(G)[0], label


def test_block_solve_on_glued_triangles():
    from surfstab.generators import proj_triangle
    from surfstab.embedding import EmbeddedGraph, Edge

    # two projective triangles sharing vertex 0
    t = proj_triangle()
    edges = list(t.edges())
    shift = {0: 0, 1: 3, 2: 4}
    more = [Edge(e.id + 10, shift[e.u], shift[e.v], e.sig) for e in edges]
    rot = dict(t.rotations)
    for v in (1, 2):
        rot[shift[v]] = [x + 10 for x in t.rotation(v)]
    rot[0] = list(t.rotation(0)) + [x + 10 for x in t.rotation(0)]
    G = EmbeddedGraph({0: 3, 1: 2, 2: 2, 3: 2, 4: 2}, edges + more, rot)
    assert block_solve(G, oracle_leaf)[0] == oracle_mwss(G)[0] == 4


def test_collect_standard_instances(k4):
    insts, plan = collect_standard_instances(k4)
    assert plan.weight == 1
    assert len(insts) <= 1
