from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from surfstab.ef import complete, emit_stab_ef
from surfstab.errors import TooLarge
from surfstab.generators import klein_tube, planar_cycle, proj_quad
from surfstab.lp import LinearModel
from surfstab.oracles import oracle_mwss


def test_triangle_optimum(triangle):
    ef = emit_stab_ef(triangle)
    assert ef.optimum({0: 2, 1: 2, 2: 2}) == 2
    assert ef.optimum({0: 0, 1: 0, 2: 0}) == 0
    assert ef.model.tags()["flow-conservation"] > 0


def test_bipartite_has_no_flow_rows(quad33):
    ef = emit_stab_ef(quad33)
    assert "flow-conservation" not in ef.model.tags()
    assert len(ef.branches) == 1


def test_c5_uses_transversal_disjunction(c5):
    ef = emit_stab_ef(c5)
    assert len(ef.branches) == 2
    assert ef.optimum() == 2


def test_every_stable_set_completes(k4):
    ef = emit_stab_ef(k4)
    V = k4.vertices
    for r in range(len(V) + 1):
        for S in itertools.combinations(V, r):
            if not any(k4.adjacency[v] & set(S) for v in S):
                complete(ef, S)


def test_random_objectives_match_oracle():
    rng = random.Random(5)
    G = proj_quad(2, 3, plant=1, seed=4)
    ef = emit_stab_ef(G)
    for _ in range(10):
        w = {v: Fraction(rng.randint(-3, 9), rng.randint(1, 4)) for v in G.vertices}
        assert ef.optimum(w) == oracle_mwss(G, w)[0]


def test_lpx_roundtrip(triangle):
    ef = emit_stab_ef(triangle)
    ef.model.objective = ef.objective(triangle.weights)
    text = ef.model.to_lpx()
    assert LinearModel.from_lpx(text).to_lpx() == text


def test_genus_two_refused():
    with pytest.raises(TooLarge) as err:
        emit_stab_ef(klein_tube(1, seed=0))
    assert err.value.size > 0


def test_cap_refused():
    with pytest.raises(TooLarge):
        emit_stab_ef(planar_cycle(7), cap=3)
