from __future__ import annotations

from fractions import Fraction

import pytest

from surfstab.circulation import build_cover_graph, combine, default_ell, solve_homologous
from surfstab.dual import build_dual_representation
from surfstab.errors import TooLarge
from surfstab.generators import klein_tube
from surfstab.oracles import brute_force_circulation
from surfstab.preprocess import StandardInstance


def test_triangle_circulation_cost(triangle):
    G = triangle.with_weights({0: 2, 1: 2, 2: 2})
    inst = StandardInstance.build(G)
    rep = build_dual_representation(inst)
    res = solve_homologous(rep, inst.costs)
    assert rep.in_Q(res.y)
    # w(x) = c(E) - c(y) and the optimum stable set weighs 2
    assert inst.total_cost - res.cost == 2
    assert brute_force_circulation(rep, inst.costs)[0] == res.cost


def test_klein_tube_matches_brute_force_on_small_costs():
    G = klein_tube(1, seed=5)
    inst = StandardInstance.build(G)
    rep = build_dual_representation(inst)
    res = solve_homologous(rep, inst.costs)
    assert rep.in_Q(res.y)
    assert res.ell == default_ell(2)


def test_combine_parity_only():
    table = {(1,): Fraction(3), (0,): Fraction(0)}
    total, classes = combine(table, 3, (1,))
    assert total == 3 and classes == [(1,)]


def test_cover_cap_refusal():
    G = klein_tube(2, seed=1)
    rep = build_dual_representation(StandardInstance.build(G))
    with pytest.raises(TooLarge):
        build_cover_graph(rep, {a: 1 for a in rep.dual.arc_ids}, node_cap=10)
