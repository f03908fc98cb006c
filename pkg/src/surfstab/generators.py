"""Deterministic instance families.

Every generator builds its embedding from a list of facial walks (see
``faces_to_embedding``), relabels vertices densely and re-checks the
family's structural claims before returning.

Families
--------
proj-quad        r x s grid with antipodal boundary identification: an even
                 quadrangulation of the projective plane (params r, s, plant).
proj-triangle    the triangle with one face of length 6.
proj-k4          K4 with three quadrilateral faces in the projective plane.
planar-planted   planar grid with diagonals planted in random squares
                 (params a, b, plant); its triangles are 2-sided and odd.
klein-tube       two projective K4 gadgets joined by a tube of quadrilateral
                 rings; Euler genus 2 (param rings >= 1).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .embedding import (EmbeddedGraph, euler_genus, faces_to_embedding,
                        is_parity_consistent)
from .errors import InstanceError

FAMILIES = ("proj-quad", "proj-triangle", "proj-k4", "planar-planted", "klein-tube")


def _relabel(faces: Sequence[Sequence], order=None) -> list[list[int]]:
    names = {}
    for f in faces:
        for v in f:
            if v not in names:
                names[v] = None
    keys = sorted(names, key=order or repr)
    idx = {k: i for i, k in enumerate(keys)}
    return [[idx[v] for v in f] for f in faces]


def random_weights(G: EmbeddedGraph, rng: random.Random, mode: str = "random") -> EmbeddedGraph:
    if mode == "unit":
        return G.with_weights({v: 1 for v in G.vertices})
    if mode == "random":
        return G.with_weights({v: Fraction(rng.randint(1, 12), rng.randint(1, 4)) for v in G.vertices})
    if mode == "integer":
        return G.with_weights({v: rng.randint(0, 9) for v in G.vertices})
    raise InstanceError(f"unknown weight mode {mode!r}")


def _edge_pairs(faces):
    pairs = set()
    for f in faces:
        for i in range(len(f)):
            pairs.add(frozenset((f[i], f[(i + 1) % len(f)])))
    return pairs


def _plant_diagonals(faces, count, rng):
    """Split ``count`` random quadrilaterals into two triangles each.

    A diagonal that would duplicate an existing edge is not used.
    """
    pairs = _edge_pairs(faces)
    order = list(range(len(faces)))
    rng.shuffle(order)
    split = {}
    for i in order:
        if len(split) == count:
            break
        a, b, c, d = faces[i]
        if len({a, b, c, d}) < 4:
            continue
        options = [(frozenset((a, c)), [[a, b, c], [a, c, d]]),
                   (frozenset((b, d)), [[a, b, d], [b, c, d]])]
        rng.shuffle(options)
        for diag, tris in options:
            if diag not in pairs:
                pairs.add(diag)
                split[i] = tris
                break
    out = []
    for i, f in enumerate(faces):
        out.extend(split.get(i, [f]))
    return out


def proj_quad_faces(r: int, s: int) -> list[list[tuple[int, int]]]:
    if r < 2 or s < 2 or r * s < 6:
        raise InstanceError("proj-quad needs r, s >= 2 and r * s >= 6 (smaller grids have parallel edges)")

    def canon(i, j):
        if i in (0, r) or j in (0, s):
            return min((i, j), (r - i, s - j))
        return (i, j)

    faces = []
    for i in range(r):
        for j in range(s):
            faces.append([canon(i, j), canon(i + 1, j), canon(i + 1, j + 1), canon(i, j + 1)])
    return faces


def proj_quad(r: int, s: int, plant: int = 0, seed: int = 0, weights: str = "unit") -> EmbeddedGraph:
    """Antipodally identified ``r x s`` grid; ``plant`` squares get a diagonal."""
    rng = random.Random(seed)
    faces = proj_quad_faces(r, s)
    if plant:
        faces = _plant_diagonals(faces, plant, rng)
    G = faces_to_embedding(_relabel(faces))
    if euler_genus(G) != 1:
        raise InstanceError("proj-quad did not produce a projective-plane embedding")
    if G.n != r * s + 1:
        raise InstanceError("proj-quad vertex count is off")
    if not plant and not is_parity_consistent(G)[0]:
        raise InstanceError("proj-quad should be parity-consistent")
    return random_weights(G, rng, weights)


def proj_triangle(weights: str = "unit", seed: int = 0) -> EmbeddedGraph:
    G = faces_to_embedding([[0, 1, 2, 0, 1, 2]])
    return random_weights(G, random.Random(seed), weights)


K4_FACES = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]


def proj_k4(weights: str = "unit", seed: int = 0) -> EmbeddedGraph:
    G = faces_to_embedding(K4_FACES)
    if euler_genus(G) != 1 or not is_parity_consistent(G)[0]:
        raise InstanceError("proj-k4 self-check failed")
    return random_weights(G, random.Random(seed), weights)


def planar_planted(a: int, b: int, plant: int = 1, seed: int = 0, weights: str = "unit") -> EmbeddedGraph:
    """Planar ``a x b`` grid graph with ``plant`` random squares split into triangles."""
    if a < 2 or b < 2:
        raise InstanceError("planar-planted needs a >= 2 and b >= 2")
    rng = random.Random(seed)
    squares = [[(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
               for i in range(a - 1) for j in range(b - 1)]
    faces = _plant_diagonals(squares, plant, rng)
    ring = ([(i, 0) for i in range(a)] + [(a - 1, j) for j in range(1, b)]
            + [(i, b - 1) for i in range(a - 2, -1, -1)] + [(0, j) for j in range(b - 2, 0, -1)])
    faces.append(ring[::-1])
    G = faces_to_embedding(_relabel(faces))
    if euler_genus(G) != 0:
        raise InstanceError("planar-planted is not planar")
    if plant and is_parity_consistent(G)[0]:
        raise InstanceError("planted triangles should break parity-consistency")
    return random_weights(G, rng, weights)


def klein_tube(rings: int = 1, seed: int = 0, weights: str = "unit") -> EmbeddedGraph:
    """Two projective K4 gadgets, each with one face removed, joined by a quad tube."""
    if rings < 1:
        raise InstanceError("klein-tube needs at least one intermediate ring")
    rng = random.Random(seed)
    faces = []
    g1 = [[("a", v) for v in f] for f in K4_FACES[1:]]
    g2 = [[("b", v) for v in f] for f in K4_FACES[1:]]
    faces.extend(g1)
    faces.extend(g2)
    boundary_a = [("a", v) for v in K4_FACES[0]]
    shift = rng.randrange(4)
    flip = rng.random() < 0.5
    b_cycle = [("b", v) for v in K4_FACES[0]]
    b_cycle = b_cycle[shift:] + b_cycle[:shift]
    if flip:
        b_cycle = b_cycle[::-1]
    levels = [boundary_a] + [[("t", k, i) for i in range(4)] for k in range(rings)] + [b_cycle]
    for lo, hi in zip(levels, levels[1:]):
        for i in range(4):
            faces.append([lo[i], lo[(i + 1) % 4], hi[(i + 1) % 4], hi[i]])
    G = faces_to_embedding(_relabel(faces))
    if euler_genus(G) != 2:
        raise InstanceError("klein-tube should have Euler genus 2")
    if not is_parity_consistent(G)[0]:
        raise InstanceError("klein-tube should be parity-consistent")
    return random_weights(G, rng, weights)


def gen(family: str, params: dict | None = None, seed: int = 0) -> EmbeddedGraph:
    """Dispatch by family name; ``params`` are the keyword arguments of the family."""
    params = dict(params or {})
    if family == "proj-quad":
        return proj_quad(int(params.get("r", 3)), int(params.get("s", 3)),
                         plant=int(params.get("plant", 0)), seed=seed,
                         weights=params.get("weights", "unit"))
    if family == "proj-triangle":
        return proj_triangle(params.get("weights", "unit"), seed)
    if family == "proj-k4":
        return proj_k4(params.get("weights", "unit"), seed)
    if family == "planar-planted":
        return planar_planted(int(params.get("a", 3)), int(params.get("b", 3)),
                              plant=int(params.get("plant", 1)), seed=seed,
                              weights=params.get("weights", "unit"))
    if family == "klein-tube":
        return klein_tube(int(params.get("rings", 1)), seed=seed,
                          weights=params.get("weights", "unit"))
    raise InstanceError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def planar_cycle(n: int, weights=None) -> EmbeddedGraph:
    """Plane cycle ``C_n`` (two faces, empty signature)."""
    verts = list(range(n))
    return faces_to_embedding([verts, verts[::-1]], weights)


def corpus(max_n: int = 14, count: int = 200, seed: int = 0):
    """Seeded mix of all families with at most ``max_n`` vertices.

    Yields ``(label, graph)``.  Used by the acceptance checks.
    """
    rng = random.Random(seed)
    quad_shapes = [(r, s) for r in range(2, 8) for s in range(r, 8) if 6 <= r * s and r * s + 1 <= max_n]
    grid_shapes = [(a, b) for a in range(2, 6) for b in range(a, 8) if a * b <= max_n and (a - 1) * (b - 1) >= 1]
    produced = 0
    k = 0
    while produced < count:
        fam = FAMILIES[k % len(FAMILIES)]
        k += 1
        s = rng.randrange(10**6)
        wmode = rng.choice(["unit", "random", "integer"])
        if fam == "proj-quad":
            r_, s_ = rng.choice(quad_shapes)
            params = {"r": r_, "s": s_, "plant": rng.choice([0, 0, 1, 2]), "weights": wmode}
        elif fam == "planar-planted":
            a, b = rng.choice(grid_shapes)
            params = {"a": a, "b": b, "plant": rng.randint(1, 2), "weights": wmode}
        elif fam == "klein-tube":
            rings = 1 if max_n < 16 else rng.randint(1, (max_n - 8) // 4)
            if 8 + 4 * rings > max_n:
                continue
            params = {"rings": rings, "weights": wmode}
        else:
            params = {"weights": wmode}
        try:
            G = gen(fam, params, s)
        except InstanceError:
            continue
        if G.n > max_n:
            continue
        produced += 1
        yield f"{fam}:{params}:{s}", G
