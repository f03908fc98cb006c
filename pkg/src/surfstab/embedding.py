"""Combinatorial surface embeddings: rotation systems with edge signatures.

An embedding is a simple graph together with a cyclic order of the incident
edges at every vertex (the rotation) and a signature bit per edge.  An edge
whose bit is set joins two vertices whose local orientations disagree.  A
rotation system plus signature determines a cellular embedding in a unique
surface; its faces are recovered by face traversal and its Euler genus by
Euler's formula.

Face-traversal states are triples ``(vertex, edge, flag)``: leave ``vertex``
along ``edge`` while reading rotations in direction ``flag`` (0 = as stored,
1 = reversed).  Every edge has two *sides*; a side is identified by
``(edge id, bit)`` where the bit is the flag of the state that leaves the
edge's ``u`` end along that side.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InstanceError, NotParityConsistent, StructureError

Side = tuple[int, int]


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    sig: bool = False

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise StructureError(f"vertex {x} is not an end of edge {self.id}")


@dataclass(frozen=True)
class Walk:
    """A walk ``(v0, e1, v1, ..., ek, vk)``.

    Start vertex and direction are part of the identity: they fix the sign
    pattern of alternating sums taken along the walk.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise StructureError("walk needs exactly one more vertex than edges")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def start(self) -> int:
        return self.vertices[0]

    def reversed(self) -> Walk:
        return Walk(self.vertices[::-1], self.edges[::-1])

    def then(self, other: Walk) -> Walk:
        if self.vertices[-1] != other.vertices[0]:
            raise StructureError("walks do not meet")
        return Walk(self.vertices + other.vertices[1:], self.edges + other.edges)

    def edge_multiplicity(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for e in self.edges:
            counts[e] = counts.get(e, 0) + 1
        return counts

    @classmethod
    def trivial(cls, v: int) -> Walk:
        return cls((v,), ())


def _as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, str):
        return Fraction(w)
    if isinstance(w, int):
        return Fraction(w)
    raise InstanceError(f"weight {w!r} is not an exact rational")


class EmbeddedGraph:
    """Simple graph with rotation system, signature and rational weights.

    Instances are treated as immutable; every mutating operation returns a
    new graph.  Vertex and edge ids are arbitrary integers and survive
    deletions, so sub-solutions can be mapped back without renumbering.
    """

    def __init__(
        self,
        weights: Mapping[int, object],
        edges: Iterable[Edge],
        rot: Mapping[int, Sequence[int]],
    ):
        self._w = {int(v): _as_fraction(w) for v, w in weights.items()}
        self._edges: dict[int, Edge] = {}
        seen_pairs = set()
        for e in edges:
            if e.id in self._edges:
                raise StructureError(f"duplicate edge id {e.id}")
            if e.u == e.v:
                raise StructureError(f"edge {e.id} is a loop")
            for x in (e.u, e.v):
                if x not in self._w:
                    raise StructureError(f"edge {e.id} uses unknown vertex {x}")
            pair = (min(e.u, e.v), max(e.u, e.v))
            if pair in seen_pairs:
                raise StructureError(f"edge {e.id} duplicates {pair}")
            seen_pairs.add(pair)
            self._edges[e.id] = Edge(e.id, e.u, e.v, bool(e.sig))
        self._rot: dict[int, tuple[int, ...]] = {}
        for v in self._w:
            self._rot[v] = tuple(rot.get(v, ()))
        extra = set(rot) - set(self._w)
        if extra:
            raise StructureError(f"rotation given for unknown vertices {sorted(extra)}")
        self._check_rotations()

    def _check_rotations(self):
        incident: dict[int, set[int]] = {v: set() for v in self._w}
        for e in self._edges.values():
            incident[e.u].add(e.id)
            incident[e.v].add(e.id)
        for v, r in self._rot.items():
            if len(set(r)) != len(r):
                dup = next(e for e in r if r.count(e) > 1)
                raise StructureError(f"dart ({v}, edge {dup}) appears twice in rotation at {v}")
            for e in r:
                if e not in incident[v]:
                    raise StructureError(f"dart ({v}, edge {e}) in rotation at {v} is not incident")
            for e in incident[v] - set(r):
                raise StructureError(f"dart ({v}, edge {e}) missing from rotation at {v}")

    # -- basic accessors -------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._w))

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._edges))

    @property
    def n(self) -> int:
        return len(self._w)

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge(self, eid: int) -> Edge:
        return self._edges[eid]

    def edges(self) -> list[Edge]:
        return [self._edges[e] for e in self.edge_ids]

    def weight(self, v: int) -> Fraction:
        return self._w[v]

    @property
    def weights(self) -> dict[int, Fraction]:
        return dict(self._w)

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    @property
    def rotations(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rot)

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def neighbors(self, v: int) -> list[int]:
        return [self._edges[e].other(v) for e in self._rot[v]]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(self.neighbors(v)) for v in self._w}

    @cached_property
    def signature(self) -> frozenset[int]:
        return frozenset(e.id for e in self._edges.values() if e.sig)

    @cached_property
    def _pos(self) -> dict[int, dict[int, int]]:
        return {v: {e: i for i, e in enumerate(r)} for v, r in self._rot.items()}

    def with_weights(self, weights: Mapping[int, object]) -> EmbeddedGraph:
        return EmbeddedGraph(weights, self._edges.values(), self._rot)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self._w == other._w and self._edges == other._edges
                and self._rot == other._rot)

    def __hash__(self):
        return hash((tuple(sorted(self._w.items())), tuple(self.edge_ids)))

    def __repr__(self):
        return f"EmbeddedGraph(n={self.n}, m={self.m}, |sig|={len(self.signature)})"

    # -- walks -----------------------------------------------------------

    def check_walk(self, walk: Walk) -> None:
        for i, eid in enumerate(walk.edges):
            if eid not in self._edges:
                raise StructureError(f"walk uses unknown edge {eid}")
            e = self._edges[eid]
            a, b = walk.vertices[i], walk.vertices[i + 1]
            if {a, b} != {e.u, e.v}:
                raise StructureError(f"walk step {i}: edge {eid} does not join {a} and {b}")

    def walk_from_vertices(self, vs: Sequence[int]) -> Walk:
        """Walk through consecutive vertices, looking up the joining edges."""
        lookup = self._edge_lookup
        edges = []
        for a, b in zip(vs, vs[1:]):
            key = (min(a, b), max(a, b))
            if key not in lookup:
                raise StructureError(f"no edge between {a} and {b}")
            edges.append(lookup[key])
        return Walk(tuple(vs), tuple(edges))

    @cached_property
    def _edge_lookup(self) -> dict[tuple[int, int], int]:
        return {(min(e.u, e.v), max(e.u, e.v)): e.id for e in self._edges.values()}

    def edge_between(self, a: int, b: int) -> int | None:
        return self._edge_lookup.get((min(a, b), max(a, b)))

    # -- face traversal --------------------------------------------------

    def side_of(self, v: int, eid: int, flag: int) -> Side:
        e = self._edges[eid]
        if v == e.u:
            return (eid, flag)
        return (eid, flag ^ int(e.sig) ^ 1)

    def _step(self, v: int, eid: int, flag: int) -> tuple[int, int, int]:
        e = self._edges[eid]
        b = e.other(v)
        flag ^= int(e.sig)
        r = self._rot[b]
        i = self._pos[b][eid]
        nxt = r[(i + 1) % len(r)] if flag == 0 else r[(i - 1) % len(r)]
        return b, nxt, flag

    @cached_property
    def face_states(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """Facial walks as sequences of traversal states.

        Walks are started from the lowest unvisited side in ``(edge id, bit)``
        order, so the output is deterministic.  An isolated vertex
        contributes one empty face.
        """
        visited: set[Side] = set()
        faces = []
        for eid in self.edge_ids:
            e = self._edges[eid]
            for bit in (0, 1):
                if (eid, bit) in visited:
                    continue
                start = (e.u, eid, bit)
                state = start
                walk = []
                while True:
                    side = self.side_of(*state)
                    if side in visited:
                        raise StructureError(
                            f"face traversal revisited side {side}; rotation is malformed")
                    visited.add(side)
                    walk.append(state)
                    state = self._step(*state)
                    if state == start:
                        break
                faces.append(tuple(walk))
        for v in self.vertices:
            if not self._rot[v]:
                faces.append(((v, -1, 0),))
        return tuple(faces)

    @cached_property
    def face_sides(self) -> tuple[tuple[Side, ...], ...]:
        out = []
        for states in self.face_states:
            if states[0][1] == -1:
                out.append(())
            else:
                out.append(tuple(self.side_of(*s) for s in states))
        return tuple(out)

    @cached_property
    def side_face(self) -> dict[Side, int]:
        return {s: i for i, sides in enumerate(self.face_sides) for s in sides}

    def faces(self) -> list[Walk]:
        out = []
        for states in self.face_states:
            if states[0][1] == -1:
                out.append(Walk.trivial(states[0][0]))
                continue
            vs = [s[0] for s in states] + [states[0][0]]
            out.append(Walk(tuple(vs), tuple(s[1] for s in states)))
        return out

    # -- connectivity ----------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = set()
        comps = []
        adj = self.adjacency
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def bipartition(self) -> dict[int, int] | None:
        """A proper 2-colouring, or None when an odd cycle exists."""
        color: dict[int, int] = {}
        adj = self.adjacency
        for s in self.vertices:
            if s in color:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in color:
                        color[y] = color[x] ^ 1
                        queue.append(y)
                    elif color[y] == color[x]:
                        return None
        return color

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def bfs_tree(self, root: int) -> tuple[dict[int, int | None], dict[int, int | None], dict[int, int]]:
        """BFS over the component of ``root``: (parent vertex, parent edge, depth)."""
        parent: dict[int, int | None] = {root: None}
        pedge: dict[int, int | None] = {root: None}
        depth = {root: 0}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for eid in sorted(self._rot[x]):
                y = self._edges[eid].other(x)
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    pedge[y] = eid
                    queue.append(y)
        return parent, pedge, depth


# -- operations --------------------------------------------------------------


def trace_faces(G: EmbeddedGraph) -> list[Walk]:
    """Facial walks of the embedding by face traversal."""
    if G.n == 0:
        raise InstanceError("empty graph has no faces")
    return G.faces()


def euler_genus(G: EmbeddedGraph) -> int:
    """Euler genus ``2 + |E| - |V| - |F|`` of a connected embedded graph."""
    if not G.is_connected():
        raise InstanceError("euler_genus needs a connected graph; split components first")
    g = 2 + G.m - G.n - len(G.face_states)
    if g < 0:
        raise StructureError(f"negative Euler genus {g}")
    return g


def walk_sidedness(G: EmbeddedGraph, W: Walk) -> str:
    """``"one_sided"`` if the closed walk uses signature edges an odd number of times."""
    if not W.closed:
        raise InstanceError("sidedness is only defined for closed walks")
    G.check_walk(W)
    sig = G.signature
    odd = sum(1 for e in W.edges if e in sig) % 2
    return "one_sided" if odd else "two_sided"


def _tree_path(parent, pedge, depth, a, b, G) -> Walk:
    """Walk from a to b along the BFS tree given by parent pointers."""
    left_v, left_e = [a], []
    right_v, right_e = [b], []
    x, y = a, b
    while depth[x] > depth[y]:
        left_e.append(pedge[x]); x = parent[x]; left_v.append(x)
    while depth[y] > depth[x]:
        right_e.append(pedge[y]); y = parent[y]; right_v.append(y)
    while x != y:
        left_e.append(pedge[x]); x = parent[x]; left_v.append(x)
        right_e.append(pedge[y]); y = parent[y]; right_v.append(y)
    vs = left_v + right_v[-2::-1]
    es = left_e + right_e[::-1]
    return Walk(tuple(vs), tuple(es))


def _fundamental_cycle(G, parent, pedge, depth, eid) -> Walk:
    e = G.edge(eid)
    path = _tree_path(parent, pedge, depth, e.v, e.u, G)
    return Walk((e.u,), ()).then(Walk((e.u, e.v), (eid,))).then(path)


def is_parity_consistent(G: EmbeddedGraph) -> tuple[bool, Walk | None]:
    """Check that every odd closed walk is 1-sided.

    A bipartite component has no odd closed walks and passes trivially.  In a
    non-bipartite component, an even 1-sided closed walk combined with an odd
    1-sided cycle gives an odd 2-sided walk, so the condition is the same as
    length parity and signature parity agreeing on all closed walks.  Both
    are linear on the cycle space, so the fundamental cycles of a BFS tree
    decide it.  Returns ``(True, None)`` or ``(False, odd 2-sided closed walk)``.
    """
    sig = G.signature
    done = set()
    for root in G.vertices:
        if root in done:
            continue
        parent, pedge, depth = G.bfs_tree(root)
        done.update(depth)
        # label(v) = depth parity + signature parity of the tree path to root
        label = {root: 0}
        for v in sorted(depth, key=depth.get):
            if v != root:
                label[v] = label[parent[v]] ^ 1 ^ (1 if pedge[v] in sig else 0)
        tree_edges = {pedge[v] for v in depth if pedge[v] is not None}
        odd_cycle = None
        bad_even = None
        for eid in sorted({e for v in depth for e in G.rotation(v)} - tree_edges):
            e = G.edge(eid)
            odd = depth[e.u] % 2 == depth[e.v] % 2
            violated = label[e.u] ^ label[e.v] ^ 1 ^ (1 if eid in sig else 0)
            if violated and odd:
                return False, _fundamental_cycle(G, parent, pedge, depth, eid)
            if violated and bad_even is None:
                bad_even = eid
            if odd and odd_cycle is None:
                odd_cycle = eid
        if bad_even is not None and odd_cycle is not None:
            W = _fundamental_cycle(G, parent, pedge, depth, bad_even)
            C = _fundamental_cycle(G, parent, pedge, depth, odd_cycle)
            link = _tree_path(parent, pedge, depth, W.start, C.start, G)
            return False, W.then(link).then(C).then(link.reversed())
    return True, None


def switch_local_orientations(G: EmbeddedGraph, S: Iterable[int]) -> EmbeddedGraph:
    """Reverse the local orientation at every vertex of ``S``.

    The signature becomes ``sig XOR delta(v)`` for each switched ``v`` and the
    rotation at ``v`` is reversed; the underlying embedding is unchanged.
    """
    S = set(S)
    edges = []
    for e in G.edges():
        flip = (e.u in S) ^ (e.v in S)
        edges.append(Edge(e.id, e.u, e.v, e.sig ^ flip))
    rot = {v: (tuple(reversed(r)) if v in S else r) for v, r in G.rotations.items()}
    return EmbeddedGraph(G.weights, edges, rot)


@dataclass(frozen=True)
class OddOneTree:
    """Spanning tree plus one extra edge closing a unique odd cycle."""

    root: int
    parent: Mapping[int, int | None]
    parent_edge: Mapping[int, int | None]
    depth: Mapping[int, int]
    extra: int
    cycle: Walk

    @property
    def tree_edges(self) -> frozenset[int]:
        return frozenset(e for e in self.parent_edge.values() if e is not None)

    @property
    def edges(self) -> frozenset[int]:
        return self.tree_edges | {self.extra}

    def path(self, a: int, b: int) -> Walk:
        return _tree_path(self.parent, self.parent_edge, self.depth, a, b, None)


def spanning_odd_one_tree(G: EmbeddedGraph) -> OddOneTree:
    """BFS tree from the lowest vertex plus the lowest edge closing an odd cycle."""
    if not G.is_connected():
        raise InstanceError("odd 1-tree needs a connected graph")
    root = G.vertices[0]
    parent, pedge, depth = G.bfs_tree(root)
    tree_edges = {e for e in pedge.values() if e is not None}
    for eid in G.edge_ids:
        if eid in tree_edges:
            continue
        e = G.edge(eid)
        if depth[e.u] % 2 == depth[e.v] % 2:
            cycle = _fundamental_cycle(G, parent, pedge, depth, eid)
            # start the cycle at its top vertex so it reads top -> u -> v -> top
            top = min(cycle.vertices, key=lambda x: (depth[x], x))
            i = cycle.vertices.index(top)
            vs = cycle.vertices[i:-1] + cycle.vertices[:i + 1]
            es = cycle.edges[i:] + cycle.edges[:i]
            return OddOneTree(root, parent, pedge, depth, eid, Walk(vs, es))
    raise InstanceError("graph is bipartite; no odd 1-tree exists")


def _closed_walk_through(G: EmbeddedGraph, T: OddOneTree, eid: int, parity: int) -> Walk:
    e = G.edge(eid)
    base = Walk((e.u, e.v), (eid,)).then(T.path(e.v, e.u))
    if base.length % 2 == parity:
        return base
    # one lap of the odd cycle, reached from e.u through the tree, flips parity
    top = T.cycle.start
    to_cycle = T.path(e.u, top)
    return base.then(to_cycle).then(T.cycle).then(to_cycle.reversed())


def even_closed_walk(G: EmbeddedGraph, T: OddOneTree, eid: int) -> Walk:
    """Even closed walk in ``T + e`` using the non-tree edge ``e`` exactly once."""
    if eid in T.edges:
        raise InstanceError(
            f"edge {eid} belongs to the odd 1-tree; every closed walk through it "
            "inside the 1-tree is odd")
    return _closed_walk_through(G, T, eid, 0)


def odd_closed_walk(G: EmbeddedGraph, T: OddOneTree, eid: int) -> Walk:
    """Odd closed walk in ``T + e`` using ``e`` exactly once."""
    if eid == T.extra:
        return T.cycle
    if eid in T.tree_edges:
        raise InstanceError(f"edge {eid} is a tree edge")
    return _closed_walk_through(G, T, eid, 1)


def normalize_signature_to_all(G: EmbeddedGraph) -> tuple[EmbeddedGraph, frozenset[int]]:
    """Switch local orientations so that every edge carries the signature bit.

    Possible exactly for connected, non-bipartite, parity-consistent graphs.
    """
    T = spanning_odd_one_tree(G)
    sig = G.signature
    switch = {T.root: 0}
    for v in sorted(T.depth, key=T.depth.get):
        if v == T.root:
            continue
        p, eid = T.parent[v], T.parent_edge[v]
        switch[v] = switch[p] ^ (1 if eid in sig else 0) ^ 1
    S = frozenset(v for v, s in switch.items() if s)
    H = switch_local_orientations(G, S)
    bad = [eid for eid in H.edge_ids if not H.edge(eid).sig]
    if bad:
        witness = odd_closed_walk(G, T, bad[0]) if bad[0] == T.extra else None
        if witness is None:
            witness = _fundamental_cycle(G, T.parent, T.parent_edge, T.depth, bad[0])
        raise NotParityConsistent(
            f"edge {bad[0]} cannot be put in the signature; graph is not parity-consistent",
            witness)
    return H, S


def induced_subembedding(G: EmbeddedGraph, keep: Iterable[int]) -> EmbeddedGraph:
    """Delete all vertices outside ``keep`` together with their edges."""
    keep = set(keep) & set(G.vertices)
    edges = [e for e in G.edges() if e.u in keep and e.v in keep]
    kept = {e.id for e in edges}
    rot = {v: tuple(e for e in G.rotation(v) if e in kept) for v in keep}
    return EmbeddedGraph({v: G.weight(v) for v in keep}, edges, rot)


def faces_to_embedding(
    faces: Sequence[Sequence[int]],
    weights: Mapping[int, object] | None = None,
) -> EmbeddedGraph:
    """Build rotation system and signature from a list of closed facial walks.

    Each face is a cyclic vertex sequence; every edge must lie on exactly two
    face sides.  Orientations of the faces need not agree: disagreements are
    absorbed into the signature.  Used by the instance generators.
    """
    pairs: dict[tuple[int, int], int] = {}
    verts: set[int] = set()
    for f in faces:
        verts.update(f)
        k = len(f)
        for i in range(k):
            a, b = f[i], f[(i + 1) % k]
            if a == b:
                raise StructureError(f"face {f} has a loop at {a}")
            key = (min(a, b), max(a, b))
            pairs[key] = pairs.get(key, 0) + 1
    for key, cnt in pairs.items():
        if cnt != 2:
            raise StructureError(f"edge {key} lies on {cnt} face sides, expected 2")
    eid_of = {key: i for i, key in enumerate(sorted(pairs))}

    # corners: (vertex, in-edge, out-edge); slots are (corner, 0=in / 1=out)
    corners = []
    face_corner_ids = []
    for f in faces:
        k = len(f)
        ids = []
        for i in range(k):
            a, v, b = f[i - 1], f[i], f[(i + 1) % k]
            e_in = eid_of[(min(a, v), max(a, v))]
            e_out = eid_of[(min(v, b), max(v, b))]
            ids.append(len(corners))
            corners.append((v, e_in, e_out))
        face_corner_ids.append(ids)

    slots_at: dict[tuple[int, int], list[tuple[int, int]]] = {}
    by_vertex: dict[int, list[int]] = {}
    for cid, (v, e_in, e_out) in enumerate(corners):
        slots_at.setdefault((v, e_in), []).append((cid, 0))
        slots_at.setdefault((v, e_out), []).append((cid, 1))
        by_vertex.setdefault(v, []).append(cid)

    flag = [None] * len(corners)
    rot: dict[int, tuple[int, ...]] = {}
    for v, cids in by_vertex.items():
        c0 = min(cids)
        order = [corners[c0][1]]
        flag[c0] = 0
        cur_slot = (c0, 1)
        while True:
            e = corners[cur_slot[0]][1 + cur_slot[1]]
            others = [s for s in slots_at[(v, e)] if s != cur_slot]
            if len(others) != 1:
                raise StructureError(f"edge {e} at vertex {v} does not have two corner slots")
            nxt = others[0]
            if nxt == (c0, 0):
                break
            cid, which = nxt
            if flag[cid] is not None:
                raise StructureError(f"corners at vertex {v} do not close up")
            order.append(e)
            flag[cid] = 0 if which == 0 else 1
            cur_slot = (cid, 1 - which)
        missing = [c for c in cids if flag[c] is None]
        if missing:
            raise StructureError(f"vertex {v} neighbourhood is not a disk")
        rot[v] = tuple(order)
        if len(order) != len(set(order)):
            raise StructureError(f"rotation at {v} repeats an edge")

    sig: dict[int, int] = {}
    for ids in face_corner_ids:
        k = len(ids)
        for i in range(k):
            c, d = ids[i], ids[(i + 1) % k]
            eid = corners[c][2]
            val = flag[c] ^ flag[d]
            if sig.setdefault(eid, val) != val:
                raise StructureError(f"inconsistent signature on edge {eid}")

    edges = [Edge(eid, a, b, bool(sig[eid])) for (a, b), eid in eid_of.items()]
    if weights is None:
        weights = {v: 1 for v in verts}
    return EmbeddedGraph(weights, edges, rot)
