"""Deleting a few vertices so that no 2-sided odd closed walk survives.

A closed walk of the embedded graph lifts to a closed walk of the signed
double cover exactly when it is 2-sided, so the double cover is bipartite
iff no 2-sided odd closed walk exists.  The transversal is therefore read
off an odd cycle transversal of the double cover, computed exactly by
iterative compression.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .embedding import EmbeddedGraph, induced_subembedding
from .errors import BudgetExceeded, InternalError


@dataclass(frozen=True)
class DoubleCover:
    graph: nx.Graph
    base: EmbeddedGraph

    @staticmethod
    def lift(X: Iterable[int]) -> set[tuple[int, int]]:
        return {(v, i) for v in X for i in (1, 2)}

    @staticmethod
    def project(S: Iterable[tuple[int, int]]) -> set[int]:
        return {v for v, _ in S}


@dataclass(frozen=True)
class Transversal:
    vertices: frozenset[int]
    cover_oct_size: int = 0


@dataclass(frozen=True)
class Branch:
    graph: EmbeddedGraph
    offset: Fraction
    deleted: frozenset[int]
    chosen: frozenset[int]


def double_cover(G: EmbeddedGraph) -> DoubleCover:
    H = nx.Graph()
    for v in G.vertices:
        H.add_node((v, 1))
        H.add_node((v, 2))
    for e in G.edges():
        if e.sig:
            H.add_edge((e.u, 1), (e.v, 2))
            H.add_edge((e.u, 2), (e.v, 1))
        else:
            H.add_edge((e.u, 1), (e.v, 1))
            H.add_edge((e.u, 2), (e.v, 2))
    return DoubleCover(H, G)


def _adjacency(H) -> dict:
    if isinstance(H, nx.Graph):
        return {v: set(H.adj[v]) for v in H.nodes}
    return {v: set(nb) for v, nb in H.items()}


def find_odd_cycle(adj: Mapping[Hashable, set], removed=frozenset()) -> list | None:
    """Vertices of some odd cycle avoiding ``removed``, or None if bipartite."""
    color = {}
    parent = {}
    for s in sorted(adj, key=repr):
        if s in removed or s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in removed:
                    continue
                if y not in color:
                    color[y] = color[x] ^ 1
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return _close_cycle(parent, x, y)
    return None


def _close_cycle(parent, x, y) -> list:
    anc_x = [x]
    while parent[anc_x[-1]] is not None:
        anc_x.append(parent[anc_x[-1]])
    pos = {v: i for i, v in enumerate(anc_x)}
    path_y = [y]
    while path_y[-1] not in pos:
        path_y.append(parent[path_y[-1]])
    meet = path_y[-1]
    return anc_x[:pos[meet] + 1] + path_y[-2::-1]


def _is_bipartite(adj, removed=frozenset()) -> bool:
    return find_odd_cycle(adj, removed) is None


def _two_color(adj, nodes) -> dict:
    color = {}
    for s in nodes:
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in nodes and y not in color:
                    color[y] = color[x] ^ 1
                    queue.append(y)
    return color


def _min_vertex_cut(adj, nodes, sources, sinks, limit):
    """Smallest vertex set of ``nodes`` separating ``sources`` from ``sinks``.

    Terminals themselves may be cut.  Unit-capacity augmenting paths on the
    split graph; gives up (returns None) once more than ``limit`` paths exist.
    """
    if limit < 0:
        return None
    if not sources or not sinks:
        return set()
    SRC, SNK = ("s",), ("t",)
    res: dict = {}

    def arc(a, b, cap):
        res.setdefault(a, {})
        res.setdefault(b, {})
        res[a][b] = res[a].get(b, 0) + cap
        res[b].setdefault(a, 0)

    inf = len(nodes) + 2
    for v in nodes:
        arc((v, 0), (v, 1), 1)
        for u in adj[v]:
            if u in nodes:
                arc((v, 1), (u, 0), inf)
    for v in sources:
        arc(SRC, (v, 0), inf)
    for v in sinks:
        arc((v, 1), SNK, inf)

    flow = 0
    while True:
        prev = {SRC: None}
        queue = deque([SRC])
        while queue and SNK not in prev:
            a = queue.popleft()
            for b, cap in res[a].items():
                if cap > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if SNK not in prev:
            break
        flow += 1
        if flow > limit:
            return None
        b = SNK
        while prev[b] is not None:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
    reach = set(prev)
    cut = {v for v in nodes if (v, 0) in reach and (v, 1) not in reach}
    if len(cut) != flow:
        raise InternalError("vertex cut size differs from flow value")
    return cut


def _compress(adj, nodes: set, S: list, target: int):
    """Find an odd cycle transversal of size ``<= target`` given one of size ``len(S)``."""
    rest = nodes - set(S)
    base_color = _two_color(adj, rest)
    for labels in itertools.product((0, 1, 2), repeat=len(S)):
        deleted = [s for s, lab in zip(S, labels) if lab == 2]
        if len(deleted) > target:
            continue
        side = {s: lab for s, lab in zip(S, labels) if lab != 2}
        if any(side[a] == side[b] for a in side for b in adj[a] if b in side):
            continue
        keep, flip = set(), set()
        for v in rest:
            for u in adj[v]:
                if u in side:
                    need = side[u] ^ 1
                    (keep if need == base_color[v] else flip).add(v)
        cut = _min_vertex_cut(adj, rest, keep, flip, target - len(deleted))
        if cut is not None:
            return set(deleted) | cut
    return None


def odd_cycle_transversal(H, k_max: int) -> set | None:
    """Minimum vertex set whose removal makes ``H`` bipartite, or None if larger than ``k_max``.

    ``H`` is a networkx graph or an adjacency mapping.  Vertices are added one
    at a time; whenever the running transversal grows by one, a compression
    step tries to shrink it back, which keeps it minimum for every prefix.
    """
    adj = _adjacency(H)
    order = sorted(adj, key=repr)
    S: list = []
    present: set = set()
    for v in order:
        present.add(v)
        sub = {x: adj[x] & present for x in present}
        S.append(v)
        if find_odd_cycle(sub, set(S)) is not None:
            raise InternalError("running transversal is not a transversal")
        smaller = _compress(sub, present, S, len(S) - 1)
        if smaller is not None:
            S = sorted(smaller, key=repr)
        if len(S) > k_max:
            return None
    return set(S)


def _min_symmetric_transversal(adj, lower: int, upper: int, fallback: set[int]) -> set[int]:
    """Smallest ``X`` with the double cover minus both copies of ``X`` bipartite."""

    def search(X: frozenset, budget: int):
        cyc = find_odd_cycle(adj, DoubleCover.lift(X))
        if cyc is None:
            return X
        if budget == 0:
            return None
        for v in sorted(DoubleCover.project(cyc)):
            found = search(X | {v}, budget - 1)
            if found is not None:
                return found
        return None

    for k in range(lower, upper):
        found = search(frozenset(), k)
        if found is not None:
            return set(found)
    return set(fallback)


def two_sided_transversal(G: EmbeddedGraph, budget: int) -> Transversal:
    """Minimum vertex set meeting every 2-sided odd closed walk.

    An odd cycle transversal ``S`` of the double cover projects to a valid
    set; since the projection can be larger than necessary, a bounded search
    for a smaller symmetric transversal follows (lower bound ``|S|/2``).
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    cover = double_cover(G)
    adj = _adjacency(cover.graph)
    if _is_bipartite(adj):
        return Transversal(frozenset(), 0)
    S = odd_cycle_transversal(adj, 2 * budget)
    if S is None:
        raise BudgetExceeded(
            f"double cover needs more than {2 * budget} deletions; no transversal within budget {budget}")
    X0 = DoubleCover.project(S)
    lower = (len(S) + 1) // 2
    upper = min(len(X0), budget + 1)
    X = _min_symmetric_transversal(adj, lower, upper, X0)
    if len(X) > budget:
        raise BudgetExceeded(f"transversal of size {len(X)} exceeds budget {budget}")
    if not _is_bipartite(adj, DoubleCover.lift(X)):
        raise InternalError("transversal leaves a 2-sided odd closed walk")
    return Transversal(frozenset(X), len(S))


def branch_partitions(G: EmbeddedGraph, X: Iterable[int]) -> list[Branch]:
    """All splits ``X = X0 + X1`` with ``X1`` stable, as reduced subinstances.

    Branch ``(X0, X1)`` deletes ``X0``, takes ``X1`` into the stable set and
    deletes its neighbourhood; the offset is ``w(X1)``.
    """
    X = sorted(set(X))
    adj = G.adjacency
    out = []
    for r in range(len(X) + 1):
        for X1 in itertools.combinations(X, r):
            X1s = set(X1)
            if any(adj[a] & X1s for a in X1):
                continue
            gone = set(X) | X1s
            for a in X1:
                gone |= adj[a]
            keep = [v for v in G.vertices if v not in gone]
            offset = sum((G.weight(v) for v in X1), Fraction(0))
            out.append(Branch(induced_subembedding(G, keep), offset,
                              frozenset(set(X) - X1s), frozenset(X1s)))
    return out
