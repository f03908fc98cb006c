"""Dual digraph with an alternating orientation, and the homology map.

Each edge of the embedded graph becomes one dual arc between the faces on
its two sides.  Orientations come from a 2-colouring of edge sides: the two
sides of an edge get different colours, and so do consecutive sides along
every facial walk.  An arc leaves the face holding its colour-0 side, so
around every face the arcs alternately leave and enter.

The homology map sends an edge vector ``y`` to
``(omega_C(y) mod 2, omega_W1(y), ..., omega_W{g-1}(y))`` for a fixed odd
cycle ``C`` and even closed walks ``W_i`` chosen so that the map separates
homology classes of dual circulations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .embedding import (EmbeddedGraph, OddOneTree, Walk, even_closed_walk,
                        spanning_odd_one_tree)
from .errors import InstanceError, InternalError


@dataclass(frozen=True)
class HomologyVector:
    """Element of ``Z_2 x Z^(g-1)``."""

    parity: int
    free: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parity", self.parity % 2)

    def __add__(self, other: HomologyVector) -> HomologyVector:
        return HomologyVector(self.parity + other.parity,
                              tuple(a + b for a, b in zip(self.free, other.free)))

    def __neg__(self) -> HomologyVector:
        return HomologyVector(self.parity, tuple(-a for a in self.free))

    def as_tuple(self) -> tuple[int, ...]:
        return (self.parity,) + self.free

    @classmethod
    def zero(cls, g: int) -> HomologyVector:
        return cls(0, (0,) * max(g - 1, 0))

    @classmethod
    def target(cls, g: int) -> HomologyVector:
        return cls(1, (0,) * max(g - 1, 0))


class DualDigraph:
    """Faces of ``G`` as vertices, one arc per edge of ``G`` (same id)."""

    def __init__(self, G: EmbeddedGraph, color: Mapping[tuple[int, int], int]):
        self.graph = G
        self.color = dict(color)
        self.face_sides = G.face_sides
        self.num_faces = len(self.face_sides)
        side_face = G.side_face
        self._tail = {}
        self._head = {}
        for e in G.edge_ids:
            leave = (e, 0) if self.color[(e, 0)] == 0 else (e, 1)
            enter = (e, leave[1] ^ 1)
            self._tail[e] = side_face[leave]
            self._head[e] = side_face[enter]
        self._out = {f: [] for f in range(self.num_faces)}
        self._in = {f: [] for f in range(self.num_faces)}
        for e in G.edge_ids:
            self._out[self._tail[e]].append(e)
            self._in[self._head[e]].append(e)

    @property
    def arc_ids(self) -> tuple[int, ...]:
        return self.graph.edge_ids

    def tail(self, a: int) -> int:
        return self._tail[a]

    def head(self, a: int) -> int:
        return self._head[a]

    def out_arcs(self, f: int) -> list[int]:
        return self._out[f]

    def in_arcs(self, f: int) -> list[int]:
        return self._in[f]

    def check_alternation(self) -> None:
        for f, sides in enumerate(self.face_sides):
            cols = [self.color[s] for s in sides]
            for i in range(len(cols)):
                if cols[i] == cols[(i + 1) % len(cols)]:
                    raise InternalError(f"arcs around face {f} do not alternate")

    def is_circulation(self, y: Mapping[int, object]) -> bool:
        bal = [0] * self.num_faces
        for a in self.arc_ids:
            v = y.get(a, 0)
            bal[self._tail[a]] -= v
            bal[self._head[a]] += v
        return all(b == 0 for b in bal)

    @cached_property
    def _spanning_tree(self):
        seen = {0}
        tree = []
        parent_arc = {0: None}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for a in sorted(self._out[f] + self._in[f]):
                g = self._head[a] if self._tail[a] == f else self._tail[a]
                if g not in seen:
                    seen.add(g)
                    tree.append(a)
                    parent_arc[g] = a
                    queue.append(g)
        if len(seen) != self.num_faces:
            raise InternalError("dual graph is disconnected")
        tree_set = set(tree)
        co_tree = [a for a in self.arc_ids if a not in tree_set]
        return tuple(tree), tuple(co_tree), parent_arc

    def spanning_tree_arcs(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        tree, co_tree, _ = self._spanning_tree
        return tree, co_tree

    def tree_elimination_order(self, tree: Sequence[int]):
        """Yield ``(arc, face)`` peeling leaves of the spanning tree."""
        deg = {f: 0 for f in range(self.num_faces)}
        inc = {f: [] for f in range(self.num_faces)}
        for a in tree:
            for f in (self._tail[a], self._head[a]):
                deg[f] += 1
                inc[f].append(a)
        used = set()
        leaves = deque(sorted(f for f in deg if deg[f] == 1))
        while leaves:
            f = leaves.popleft()
            if deg[f] != 1:
                continue
            a = next(b for b in inc[f] if b not in used)
            used.add(a)
            yield a, f
            deg[f] -= 1
            other = self._head[a] if self._tail[a] == f else self._tail[a]
            deg[other] -= 1
            if deg[other] == 1:
                leaves.append(other)

    def _tree_path_to_root(self, f: int) -> list[tuple[int, int]]:
        """Arcs with signs that carry one unit of flow from ``f`` to face 0."""
        _, _, parent_arc = self._spanning_tree
        out = []
        while parent_arc[f] is not None:
            a = parent_arc[f]
            if self._tail[a] == f:
                out.append((a, 1))
                f = self._head[a]
            else:
                out.append((a, -1))
                f = self._tail[a]
        return out

    def fundamental_circulations(self) -> list[dict[int, int]]:
        """One signed circulation per co-tree arc; together a basis of the circulation space."""
        _, co_tree, _ = self._spanning_tree
        basis = []
        for a in co_tree:
            y = {a: 1}
            for b, s in self._tree_path_to_root(self._head[a]):
                y[b] = y.get(b, 0) + s
            for b, s in self._tree_path_to_root(self._tail[a]):
                y[b] = y.get(b, 0) - s
            y = {b: v for b, v in y.items() if v}
            if not self.is_circulation(y):
                raise InternalError("fundamental circulation does not conserve flow")
            basis.append(y)
        return basis

    def star_sign(self, v: int) -> int:
        """+1 if every arc of the star of ``v`` leaves the side traced forward from ``v``."""
        G = self.graph
        signs = {1 if self.color[G.side_of(v, e, 0)] == 0 else -1 for e in G.rotation(v)}
        if len(signs) != 1:
            raise InternalError(f"star of vertex {v} is not uniformly oriented")
        return signs.pop()


def alternating_orientation(G) -> DualDigraph:
    """2-colour the edge sides so that the dual orientation alternates around every face."""
    G = getattr(G, "graph", G)
    nbrs: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def link(a, b):
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)

    for e in G.edge_ids:
        link((e, 0), (e, 1))
    for sides in G.face_sides:
        for i in range(len(sides)):
            link(sides[i], sides[(i + 1) % len(sides)])
    color: dict = {}
    parent: dict = {}
    for start in sorted(nbrs):
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in nbrs[a]:
                if b not in color:
                    color[b] = color[a] ^ 1
                    parent[b] = a
                    queue.append(b)
                elif color[b] == color[a]:
                    raise InstanceError(
                        "no alternating orientation: odd cycle of side constraints through "
                        f"{_constraint_cycle(parent, a, b)}; the embedding is not parity-consistent")
    D = DualDigraph(G, color)
    D.check_alternation()
    return D


def _constraint_cycle(parent, a, b):
    pa, pb = [a], [b]
    while parent[pa[-1]] is not None:
        pa.append(parent[pa[-1]])
    while parent[pb[-1]] is not None:
        pb.append(parent[pb[-1]])
    common = set(pa) & set(pb)
    pa = pa[:next(i for i, s in enumerate(pa) if s in common) + 1]
    pb = pb[:next(i for i, s in enumerate(pb) if s in common)]
    return pa + pb[::-1]


def walk_coefficients(W: Walk) -> dict[int, int]:
    """Signed multiplicities ``r`` with ``omega_W(y) = sum_e r(e) y(e)``."""
    r: dict[int, int] = {}
    for i, e in enumerate(W.edges):
        r[e] = r.get(e, 0) + (1 if i % 2 == 0 else -1)
    return {e: c for e, c in r.items() if c}


def _eval(coef: Mapping[int, int], y: Mapping[int, object]):
    return sum(c * y.get(e, 0) for e, c in coef.items())


def even_walk_candidates(G: EmbeddedGraph, T: OddOneTree) -> list[Walk]:
    return [even_closed_walk(G, T, e) for e in G.edge_ids if e not in T.edges]


def select_even_walks(G: EmbeddedGraph, D: DualDigraph, T: OddOneTree, genus: int) -> list[Walk]:
    """Pick ``g - 1`` even closed walks whose functionals are independent on circulations.

    Candidates are the even walks through each non-tree edge of the odd
    1-tree, tried in order of (largest coefficient, length, edge id); each is
    kept when its values on a circulation basis increase the rank.
    """
    need = genus - 1
    if need <= 0:
        return []
    basis = D.fundamental_circulations()
    cands = []
    for e in G.edge_ids:
        if e in T.edges:
            continue
        W = even_closed_walk(G, T, e)
        coef = walk_coefficients(W)
        cands.append((max(abs(c) for c in coef.values()), W.length, e, W, coef))
    cands.sort(key=lambda t: t[:3])
    pivots: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for *_, W, coef in cands:
        row = [Fraction(_eval(coef, z)) for z in basis]
        for col, prow in pivots:
            if row[col]:
                factor = row[col] / prow[col]
                row = [a - factor * b for a, b in zip(row, prow)]
        nz = next((i for i, a in enumerate(row) if a), None)
        if nz is None:
            continue
        pivots.append((nz, row))
        chosen.append(W)
        if len(chosen) == need:
            return chosen
    raise InternalError(f"even walks span rank {len(chosen)} on circulations, expected {need}")


@dataclass
class DualRepresentation:
    graph: EmbeddedGraph
    dual: DualDigraph
    tree: OddOneTree
    odd_cycle: Walk
    walks: list[Walk]
    genus: int
    rows: list[dict[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [walk_coefficients(self.odd_cycle)] + [walk_coefficients(W) for W in self.walks]

    @property
    def dim(self) -> int:
        return len(self.walks)

    def omega(self, y: Mapping[int, object]) -> HomologyVector:
        vals = [_eval(r, y) for r in self.rows]
        return HomologyVector(int(vals[0]) % 2, tuple(int(v) for v in vals[1:]))

    def omega_arc(self, a: int) -> tuple[int, ...]:
        """Increment of ``omega`` (parity first) for one unit on arc ``a``."""
        vals = [r.get(a, 0) for r in self.rows]
        return (vals[0] % 2,) + tuple(vals[1:])

    def omega_matrix(self, arcs: Sequence[int]) -> np.ndarray:
        return np.array([[r.get(a, 0) for a in arcs] for r in self.rows], dtype=np.int64)

    def facial_circulations(self) -> list[dict[int, int]]:
        return facial_circulations(self.dual)

    def in_Q(self, y: Mapping[int, object]) -> bool:
        """Non-negative integer circulation homologous to the all-ones vector."""
        vals = [y.get(a, 0) for a in self.dual.arc_ids]
        if any(int(v) != v or v < 0 for v in vals):
            return False
        if not self.dual.is_circulation(y):
            return False
        return self.omega(y) == HomologyVector.target(self.genus)

    def in_Q_direct(self, y: Mapping[int, object]) -> bool:
        """Same set, tested against every candidate even walk of the 1-tree."""
        vals = [y.get(a, 0) for a in self.dual.arc_ids]
        if any(int(v) != v or v < 0 for v in vals):
            return False
        if not self.dual.is_circulation(y):
            return False
        if _eval(self.rows[0], y) % 2 != 1:
            return False
        return all(_eval(walk_coefficients(W), y) == 0
                   for W in even_walk_candidates(self.graph, self.tree))


def facial_circulations(D: DualDigraph) -> list[dict[int, int]]:
    """One circulation per vertex of ``G``: its star, signed by the orientation."""
    G = D.graph
    out = []
    for v in G.vertices:
        s = D.star_sign(v)
        y = {e: s for e in G.rotation(v)}
        if not D.is_circulation(y):
            raise InternalError(f"star of vertex {v} is not a dual circulation")
        out.append(y)
    return out


def build_dual_representation(inst) -> DualRepresentation:
    """Dual orientation, odd cycle and even walks for a standard instance."""
    G = inst.graph
    genus = inst.genus
    D = alternating_orientation(G)
    T = spanning_odd_one_tree(G)
    walks = select_even_walks(G, D, T, genus)
    rep = DualRepresentation(G, D, T, T.cycle, walks, genus)
    ones = {e: 1 for e in G.edge_ids}
    if rep.omega(ones) != HomologyVector.target(genus):
        raise InternalError("omega(all-ones) is not (1, 0)")
    return rep


def is_homologous(rep: DualRepresentation, y1, y2) -> bool:
    for y in (y1, y2):
        if not rep.dual.is_circulation(y):
            raise InstanceError("is_homologous expects circulations of the dual digraph")
    return rep.omega(y1) == rep.omega(y2)
