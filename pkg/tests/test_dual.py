from __future__ import annotations

import random

import pytest

from surfstab.dual import (
    HomologyVector,
    alternating_orientation,
    build_dual_representation,
    is_homologous,
)
from surfstab.embedding import faces_to_embedding
from surfstab.errors import InstanceError
from surfstab.generators import klein_tube, proj_quad
from surfstab.preprocess import StandardInstance


def test_alternation_on_projective_k4(k4):
    D = alternating_orientation(k4)
    D.check_alternation()
    assert D.num_faces == 3


def test_alternation_fails_on_planar_odd_cycle():
    with pytest.raises(InstanceError):
        alternating_orientation(faces_to_embedding([[0, 1, 2], [2, 1, 0]]))


def test_every_star_is_uniformly_oriented(k4, triangle):
    for G in (k4, triangle):
        D = alternating_orientation(G)
        assert all(D.star_sign(v) in (1, -1) for v in G.vertices)


def test_omega_of_all_ones_is_target():
    for G in (proj_quad(2, 5, plant=0), klein_tube(1, seed=3)):
        if G.is_bipartite():
            continue
        inst = StandardInstance.build(G)
        rep = build_dual_representation(inst)
        assert rep.dim == inst.genus - 1
        assert rep.omega({e: 1 for e in G.edge_ids}) == HomologyVector.target(inst.genus)


def test_facial_perturbation_keeps_class(k4):
    rep = build_dual_representation(StandardInstance.build(k4))
    rng = random.Random(1)
    faces = rep.facial_circulations()
    for _ in range(100):
        y = {a: rng.randint(0, 3) for a in rep.dual.arc_ids}
        z = dict(y)
        F = rng.choice(faces)
        for a, c in F.items():
            z[a] = z.get(a, 0) + 2 * c
        if all(v >= 0 for v in z.values()) and rep.dual.is_circulation(y):
            assert is_homologous(rep, y, z)
        assert rep.omega(y) == rep.omega(z)


def test_homology_vector_arithmetic():
    a = HomologyVector(1, (2, -1))
    assert (a + a) == HomologyVector(0, (4, -2))
    assert (a + (-a)) == HomologyVector.zero(3)
