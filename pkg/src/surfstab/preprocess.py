"""Reducing a stable set instance to 2-connected, edge-weighted pieces.

The reduction recursively splits components, drops vertices of
non-positive weight, fixes the integral part of the Nemhauser-Trotter
half-integral LP optimum, solves bipartite pieces by max-flow, and folds
blocks together along the block-cut tree.  What remains are instances that
are 2-connected, connected, non-bipartite and (given a transversal-free
input) parity-consistent, with weights induced by non-negative edge costs.
Those are handed to a caller-supplied leaf solver.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import networkx as nx

from .embedding import EmbeddedGraph, euler_genus, induced_subembedding, is_parity_consistent
from .errors import InstanceError, InternalError


def _scale(weights) -> int:
    return math.lcm(*(Fraction(w).denominator for w in weights)) if weights else 1


# -- max-flow constructions ---------------------------------------------------


@dataclass
class DoublingFlow:
    """Max-flow on the bipartite doubling ``s -> v' -> u'' -> t``."""

    scale: int
    value: int
    flow: dict
    source_side: set

    def arc_flow(self, a, b) -> int:
        return self.flow.get(a, {}).get(b, 0)


def _doubling_flow(G: EmbeddedGraph) -> DoublingFlow:
    L = _scale(list(G.weights.values()))
    N = nx.DiGraph()
    s, t = ("s",), ("t",)
    N.add_node(s)
    N.add_node(t)
    for v in G.vertices:
        cap = int(G.weight(v) * L)
        if cap < 0:
            raise InstanceError("doubling flow needs non-negative weights")
        N.add_edge(s, (v, 1), capacity=cap)
        N.add_edge((v, 2), t, capacity=cap)
    for e in G.edges():
        N.add_edge((e.u, 1), (e.v, 2))
        N.add_edge((e.v, 1), (e.u, 2))
    value, flow = nx.maximum_flow(N, s, t)
    side = _residual_reach(N, flow, s)
    return DoublingFlow(L, value, flow, side)


def _residual_reach(N: nx.DiGraph, flow: dict, s) -> set:
    reach = {s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for b, attrs in N.adj[a].items():
            cap = attrs.get("capacity")
            if b not in reach and (cap is None or flow[a][b] < cap):
                reach.add(b)
                queue.append(b)
        for b in N.pred[a]:
            if b not in reach and flow[b][a] > 0:
                reach.add(b)
                queue.append(b)
    return reach


@dataclass(frozen=True)
class NTResult:
    fixed_out: frozenset[int]
    fixed_in: frozenset[int]
    residual: frozenset[int]
    x: dict


def nemhauser_trotter(G: EmbeddedGraph) -> NTResult:
    """Half-integral optimum of ``max{wx : Mx <= 1, 0 <= x <= 1}`` and its 0/1 parts.

    The vertex-cover dual is solved on the bipartite doubling; a copy lies
    in the minimum cover when its flow arc is cut.  ``x = 1 - z`` where
    ``z`` counts covered copies over two.
    """
    if any(G.weight(v) < 0 for v in G.vertices):
        raise InstanceError("negative weights must be removed before NT fixing")
    df = _doubling_flow(G)
    x = {}
    for v in G.vertices:
        z2 = (0 if (v, 1) in df.source_side else 1) + (1 if (v, 2) in df.source_side else 0)
        x[v] = 1 - Fraction(z2, 2)
    V0 = frozenset(v for v in G.vertices if x[v] == 0)
    V1 = frozenset(v for v in G.vertices if x[v] == 1)
    return NTResult(V0, V1, frozenset(G.vertices) - V0 - V1, x)


def edge_induced_costs(G: EmbeddedGraph) -> dict[int, Fraction]:
    """Non-negative edge costs ``c`` with ``sum_{e in delta(v)} c(e) = w(v)``.

    Such ``c`` exists iff the doubling flow saturates every source and sink
    arc; then ``c(uv)`` is the average of the two middle flows over ``uv``.
    """
    df = _doubling_flow(G)
    total = sum(int(G.weight(v) * df.scale) for v in G.vertices)
    if df.value != total:
        raise InstanceError("weights are not induced by non-negative edge costs "
                            "(all-1/2 is not LP-optimal)")
    c = {}
    for e in G.edges():
        f = df.arc_flow((e.u, 1), (e.v, 2)) + df.arc_flow((e.v, 1), (e.u, 2))
        c[e.id] = Fraction(f, 2 * df.scale)
    for v in G.vertices:
        if sum((c[e] for e in G.rotation(v)), Fraction(0)) != G.weight(v):
            raise InternalError(f"edge costs do not reproduce w({v})")
    return c


def bipartite_mwss(G: EmbeddedGraph) -> tuple[Fraction, frozenset[int]]:
    """Exact maximum-weight stable set of a bipartite graph via min vertex cover."""
    color = G.bipartition()
    if color is None:
        raise InstanceError("bipartite_mwss called on a non-bipartite graph")
    pos = [v for v in G.vertices if G.weight(v) > 0]
    L = _scale([G.weight(v) for v in pos])
    N = nx.DiGraph()
    s, t = ("s",), ("t",)
    N.add_node(s)
    N.add_node(t)
    for v in pos:
        if color[v] == 0:
            N.add_edge(s, v, capacity=int(G.weight(v) * L))
        else:
            N.add_edge(v, t, capacity=int(G.weight(v) * L))
    posset = set(pos)
    for e in G.edges():
        if e.u in posset and e.v in posset:
            a, b = (e.u, e.v) if color[e.u] == 0 else (e.v, e.u)
            N.add_edge(a, b)
    _, flow = nx.maximum_flow(N, s, t)
    reach = _residual_reach(N, flow, s)
    S = frozenset(v for v in pos if (color[v] == 0) == (v in reach))
    weight = sum((G.weight(v) for v in S), Fraction(0))
    for v in S:
        if G.adjacency[v] & S:
            raise InternalError("bipartite solution is not stable")
    return weight, S


# -- standard instances -------------------------------------------------------


def is_two_connected(G: EmbeddedGraph) -> bool:
    if G.n < 3 or not G.is_connected():
        return False
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from((e.u, e.v) for e in G.edges())
    return nx.is_biconnected(H)


@dataclass(frozen=True)
class StandardInstance:
    """2-connected, non-bipartite, parity-consistent instance with edge costs."""

    graph: EmbeddedGraph
    costs: dict
    genus: int

    @classmethod
    def build(cls, G: EmbeddedGraph, costs: dict | None = None) -> StandardInstance:
        if costs is None:
            costs = edge_induced_costs(G)
        return cls(G, dict(costs), euler_genus(G))

    def __post_init__(self):
        G = self.graph
        if not G.is_connected():
            raise InstanceError("standard instance must be connected")
        if not is_two_connected(G):
            raise InstanceError("standard instance must be 2-connected")
        if G.is_bipartite():
            raise InstanceError("standard instance must be non-bipartite")
        ok, witness = is_parity_consistent(G)
        if not ok:
            raise InstanceError(f"standard instance is not parity-consistent: {witness}")
        if set(self.costs) != set(G.edge_ids):
            raise InstanceError("edge costs must cover exactly the edges")
        if any(c < 0 for c in self.costs.values()):
            raise InstanceError("edge costs must be non-negative")
        for v in G.vertices:
            if sum((self.costs[e] for e in G.rotation(v)), Fraction(0)) != G.weight(v):
                raise InstanceError(f"edge costs do not induce w({v})")

    @property
    def total_cost(self) -> Fraction:
        return sum(self.costs.values(), Fraction(0))


# -- reduction tree -----------------------------------------------------------


@dataclass
class PlanNode:
    """One step of the reduction, with the stable set it contributes.

    ``weights`` are the vertex weights of the subinstance at this node
    (block folding rewrites weights of cut vertices, so they can differ from
    the input's).  ``weight`` is measured in these weights.
    """

    kind: str
    weights: dict
    chosen: frozenset
    weight: Fraction
    children: list = field(default_factory=list)
    info: dict = field(default_factory=dict)


LeafSolver = Callable[[StandardInstance], tuple[frozenset, dict]]


def _node(kind, G, chosen, children=(), **info) -> PlanNode:
    chosen = frozenset(chosen)
    weight = sum((G.weight(v) for v in chosen), Fraction(0))
    return PlanNode(kind, G.weights, chosen, weight, list(children), info)


def standardize(G: EmbeddedGraph, leaf_solver: LeafSolver) -> PlanNode:
    """Solve ``G`` exactly, delegating standard pieces to ``leaf_solver``.

    Returns the reduction tree.  The leaf solver receives a
    :class:`StandardInstance` and returns ``(stable set, info)``.
    """
    if G.n == 0:
        return _node("empty", G, ())
    comps = G.components()
    if len(comps) > 1:
        kids = [standardize(induced_subembedding(G, c), leaf_solver) for c in comps]
        return _node("components", G, frozenset().union(*(k.chosen for k in kids)), kids)
    positive = [v for v in G.vertices if G.weight(v) > 0]
    if len(positive) < G.n:
        kid = standardize(induced_subembedding(G, positive), leaf_solver)
        return _node("drop", G, kid.chosen, [kid],
                     dropped=sorted(set(G.vertices) - set(positive)))
    if G.is_bipartite():
        _, S = bipartite_mwss(G)
        return _node("bipartite", G, S)
    nt = nemhauser_trotter(G)
    if nt.fixed_in or nt.fixed_out:
        kid = standardize(induced_subembedding(G, nt.residual), leaf_solver)
        return _node("nt", G, kid.chosen | nt.fixed_in, [kid],
                     fixed_in=sorted(nt.fixed_in), fixed_out=sorted(nt.fixed_out))
    if not is_two_connected(G):
        return _block_solve(G, leaf_solver)
    ok, witness = is_parity_consistent(G)
    if not ok:
        raise InternalError(f"block is not parity-consistent after transversal removal: {witness}")
    inst = StandardInstance.build(G)
    chosen, info = leaf_solver(inst)
    chosen = frozenset(chosen)
    for v in chosen:
        if G.adjacency[v] & chosen:
            raise InternalError("leaf solver returned a non-stable set")
    return _node("standard", G, chosen, **info)


def block_cut_tree(G: EmbeddedGraph):
    """Blocks in BFS order from the block holding the lowest vertex.

    Returns ``(blocks, parent_cut)`` where ``parent_cut[i]`` is the cut
    vertex joining block ``i`` to its parent (None for the root).
    """
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from((e.u, e.v) for e in G.edges())
    blocks = sorted((tuple(sorted(b)) for b in nx.biconnected_components(H)))
    root = next(i for i, b in enumerate(blocks) if G.vertices[0] in b)
    at_vertex: dict[int, list[int]] = {}
    for i, b in enumerate(blocks):
        for v in b:
            at_vertex.setdefault(v, []).append(i)
    order, parent_cut = [root], {root: None}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for v in blocks[i]:
            for j in at_vertex[v]:
                if j not in parent_cut:
                    parent_cut[j] = v
                    order.append(j)
                    queue.append(j)
    return [blocks[i] for i in order], [parent_cut[i] for i in order]


def _block_solve(G: EmbeddedGraph, leaf_solver: LeafSolver) -> PlanNode:
    """Dynamic program over the block-cut tree.

    Blocks are handled leaves first.  A non-root block ``B`` attached to its
    parent at cut vertex ``p`` is solved twice: with ``p`` excluded
    (``B - p``) and with ``p`` included (``B - N[p]``).  In the parent, ``p``
    then carries weight ``w(p) + in - out`` and the constant ``out`` is
    banked; a non-positive rewritten weight just means ``p`` is dropped.
    """
    blocks, parent_cut = block_cut_tree(G)
    w = dict(G.weights)
    # per cut vertex: accumulated (in_value, in_set, out_value, out_set) of hanging blocks
    hang: dict[int, list] = {}
    kids: list[PlanNode] = []
    root_result = None
    for idx in range(len(blocks) - 1, -1, -1):
        B = set(blocks[idx])
        p = parent_cut[idx]
        local_w = {}
        const = Fraction(0)
        for v in B:
            if v != p and v in hang:
                in_val, _, out_val, _ = hang[v]
                local_w[v] = w[v] + in_val - out_val
                const += out_val
            else:
                local_w[v] = w[v]
        H = induced_subembedding(G, B).with_weights(local_w)

        def expand(chosen):
            full = set(chosen)
            for v in B:
                if v != p and v in hang:
                    full |= hang[v][1] if v in chosen else hang[v][3]
            return full

        if p is None:
            node = standardize(H, leaf_solver)
            kids.append(node)
            root_result = expand(node.chosen)
            continue
        node_out = standardize(induced_subembedding(H, B - {p}), leaf_solver)
        closed = (G.adjacency[p] & B) | {p}
        node_in = standardize(induced_subembedding(H, B - closed), leaf_solver)
        kids.extend([node_in, node_out])
        acc = hang.setdefault(p, [Fraction(0), set(), Fraction(0), set()])
        acc[0] += node_in.weight + const
        acc[1] |= expand(node_in.chosen)
        acc[2] += node_out.weight + const
        acc[3] |= expand(node_out.chosen)
    chosen = frozenset(root_result)
    return _node("blocks", G, chosen, kids, blocks=[list(b) for b in blocks])


def block_solve(G: EmbeddedGraph, leaf_solver: LeafSolver) -> tuple[Fraction, frozenset]:
    """Exact optimum of ``G`` by block-cut dynamic programming."""
    if G.n == 0:
        return Fraction(0), frozenset()
    if not G.is_connected():
        node = standardize(G, leaf_solver)
        return node.weight, node.chosen
    node = _block_solve(G, leaf_solver) if G.n >= 2 else standardize(G, leaf_solver)
    return node.weight, node.chosen


def collect_standard_instances(G: EmbeddedGraph, leaf_solver: LeafSolver | None = None):
    """Run the reduction and return every standard instance it produced."""
    from .oracles import oracle_mwss

    found: list[StandardInstance] = []

    def record(inst: StandardInstance):
        found.append(inst)
        if leaf_solver is not None:
            return leaf_solver(inst)
        _, S = oracle_mwss(inst.graph)
        return S, {}

    plan = standardize(G, record)
    return found, plan
