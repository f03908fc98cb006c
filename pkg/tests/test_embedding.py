from __future__ import annotations

import pytest

from surfstab.embedding import (
    Edge,
    EmbeddedGraph,
    Walk,
    euler_genus,
    even_closed_walk,
    faces_to_embedding,
    induced_subembedding,
    is_parity_consistent,
    normalize_signature_to_all,
    odd_closed_walk,
    spanning_odd_one_tree,
    switch_local_orientations,
    walk_sidedness,
)
from surfstab.errors import InstanceError, StructureError
from surfstab.generators import proj_quad


def test_projective_triangle_has_one_hexagonal_face(triangle):
    faces = triangle.faces()
    assert [f.length for f in faces] == [6]
    assert euler_genus(triangle) == 1
    assert is_parity_consistent(triangle)[0]


def test_planar_triangle_is_not_parity_consistent():
    G = faces_to_embedding([[0, 1, 2], [2, 1, 0]])
    assert euler_genus(G) == 0
    ok, witness = is_parity_consistent(G)
    assert not ok
    assert witness.length % 2 == 1
    assert walk_sidedness(G, witness) == "two_sided"


def test_projective_k4_faces(k4):
    assert sorted(f.length for f in k4.faces()) == [4, 4, 4]
    assert euler_genus(k4) == 1


def test_every_edge_side_used_once(quad33):
    sides = [s for face in quad33.face_sides for s in face]
    assert len(sides) == 2 * quad33.m
    assert len(set(sides)) == 2 * quad33.m


def test_bipartite_quadrangulation_is_vacuously_consistent():
    G = proj_quad(3, 3)
    assert G.is_bipartite()
    assert is_parity_consistent(G)[0]


def test_rotation_missing_edge_is_named():
    edges = [Edge(0, 0, 1), Edge(1, 1, 2)]
    with pytest.raises(StructureError, match="1"):
        EmbeddedGraph({0: 1, 1: 1, 2: 1}, edges, {0: [0], 1: [0], 2: [1]})


def test_loops_and_parallel_edges_rejected():
    with pytest.raises(StructureError):
        EmbeddedGraph({0: 1}, [Edge(0, 0, 0)], {0: [0, 0]})
    with pytest.raises(StructureError):
        EmbeddedGraph({0: 1, 1: 1}, [Edge(0, 0, 1), Edge(1, 1, 0)], {0: [0, 1], 1: [0, 1]})


def test_genus_refuses_disconnected(triangle):
    G = induced_subembedding(faces_to_embedding([[0, 1, 2], [2, 1, 0]]), [0])
    assert euler_genus(G) == 0
    two = faces_to_embedding([[0, 1, 2], [2, 1, 0], [3, 4, 5], [5, 4, 3]])
    with pytest.raises(InstanceError):
        euler_genus(two)


def test_switching_preserves_faces_and_sidedness(k4):
    switched = switch_local_orientations(k4, [0, 2])
    assert sorted(f.length for f in switched.faces()) == sorted(f.length for f in k4.faces())
    for f in k4.faces():
        assert walk_sidedness(k4, f) == walk_sidedness(switched, f)


def test_normalize_signature_makes_all_edges_signed(k4):
    H, switched = normalize_signature_to_all(k4)
    assert H.signature == frozenset(H.edge_ids)
    assert euler_genus(H) == euler_genus(k4)


def test_odd_one_tree_walks(k4):
    T = spanning_odd_one_tree(k4)
    assert len(T.cycle.edges) % 2 == 1
    assert walk_sidedness(k4, T.cycle) == "one_sided"
    for e in k4.edge_ids:
        if e in T.edges:
            continue
        W = even_closed_walk(k4, T, e)
        assert W.closed and W.length % 2 == 0
        assert e in W.edges
        k4.check_walk(W)
        O = odd_closed_walk(k4, T, e)
        assert O.closed and O.length % 2 == 1


def test_walk_checks(triangle):
    W = triangle.walk_from_vertices([0, 1, 2, 0])
    assert W.closed and W.length == 3
    with pytest.raises(StructureError):
        triangle.check_walk(Walk((0, 1), (99,)))
