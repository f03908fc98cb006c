"""Exhaustive ground-truth solvers for small instances.

These are deliberately independent of the main pipeline: plain bitmask
search, subset enumeration and bounded brute force.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np

from .embedding import EmbeddedGraph
from .errors import TooLarge


def _as_adj_weights(graph, weights=None):
    if isinstance(graph, EmbeddedGraph):
        verts = list(graph.vertices)
        adj = {v: set(graph.adjacency[v]) for v in verts}
        w = {v: graph.weight(v) for v in verts} if weights is None else dict(weights)
    else:
        verts = sorted(graph.nodes)
        adj = {v: set(graph.adj[v]) for v in verts}
        w = {v: Fraction(1) for v in verts} if weights is None else dict(weights)
    return verts, adj, {v: Fraction(w[v]) for v in verts}


def oracle_mwss(graph, weights=None, max_n: int = 24) -> tuple[Fraction, frozenset]:
    """Maximum-weight stable set by branch and bound over bitmasks."""
    verts, adj, w = _as_adj_weights(graph, weights)
    if len(verts) > max_n:
        raise TooLarge(f"oracle_mwss limited to {max_n} vertices", len(verts))
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * len(verts)
    for v in verts:
        for u in adj[v]:
            nbr[idx[v]] |= 1 << idx[u]
    wt = [w[v] for v in verts]
    best = [Fraction(0), 0]

    def bound(mask):
        total = Fraction(0)
        while mask:
            low = mask & -mask
            i = low.bit_length() - 1
            if wt[i] > 0:
                total += wt[i]
            mask ^= low
        return total

    def rec(mask, cur, chosen):
        if cur > best[0]:
            best[0], best[1] = cur, chosen
        if not mask or cur + bound(mask) <= best[0]:
            return
        # branch on the remaining vertex with most remaining neighbours
        m = mask
        pick, pick_deg = -1, -1
        while m:
            low = m & -m
            i = low.bit_length() - 1
            d = bin(nbr[i] & mask).count("1")
            if d > pick_deg:
                pick, pick_deg = i, d
            m ^= low
        if wt[pick] > 0:
            rec(mask & ~nbr[pick] & ~(1 << pick), cur + wt[pick], chosen | (1 << pick))
        rec(mask & ~(1 << pick), cur, chosen)

    rec((1 << len(verts)) - 1, Fraction(0), 0)
    S = frozenset(verts[i] for i in range(len(verts)) if best[1] >> i & 1)
    return best[0], S


def _odd_cycles(verts, adj):
    """All odd cycles as frozensets of vertices (each cycle reported once)."""
    order = {v: i for i, v in enumerate(verts)}
    found = set()
    for s in verts:
        stack = [(s, [s])]
        while stack:
            x, path = stack.pop()
            for y in adj[x]:
                if order[y] < order[s]:
                    continue
                if y == s and len(path) >= 3:
                    if len(path) % 2 == 1 and order[path[1]] < order[path[-1]]:
                        found.add(frozenset(path))
                elif y not in path:
                    stack.append((y, path + [y]))
    return found


def oracle_ocp(graph, max_n: int = 14) -> int:
    """Maximum number of vertex-disjoint odd cycles, by enumeration and packing search."""
    verts, adj, _ = _as_adj_weights(graph)
    if len(verts) > max_n:
        raise TooLarge(f"oracle_ocp limited to {max_n} vertices", len(verts))
    cycles = sorted(_odd_cycles(verts, adj), key=lambda c: (len(c), sorted(c)))
    # keep only vertex-minimal cycles: a packing can always use a minimal one
    minimal = [c for c in cycles if not any(d < c for d in cycles)]
    best = 0

    def rec(start, used, count):
        nonlocal best
        best = max(best, count)
        if count + (len(verts) - len(used)) // 3 <= best:
            return
        for i in range(start, len(minimal)):
            if not (minimal[i] & used):
                rec(i + 1, used | minimal[i], count + 1)

    rec(0, frozenset(), 0)
    return best


def brute_force_oct(graph) -> int:
    """Minimum odd cycle transversal size by enumerating subsets."""
    H = graph if isinstance(graph, nx.Graph) else nx.Graph(graph)
    nodes = sorted(H.nodes, key=repr)
    for k in range(len(nodes) + 1):
        for S in itertools.combinations(nodes, k):
            if nx.is_bipartite(H.subgraph(set(nodes) - set(S))):
                return k
    return len(nodes)


def brute_force_symmetric_oct(G: EmbeddedGraph) -> int:
    """Smallest vertex set of ``G`` whose two lifts make the double cover bipartite."""
    from .transversal import DoubleCover, double_cover, find_odd_cycle

    cover = double_cover(G)
    adj = {v: set(cover.graph.adj[v]) for v in cover.graph.nodes}
    for k in range(G.n + 1):
        for X in itertools.combinations(G.vertices, k):
            if find_odd_cycle(adj, DoubleCover.lift(X)) is None:
                return k
    return G.n


def brute_force_circulation(rep, costs, max_entry: int = 3, max_free: int = 12, chunk: int = 1 << 16):
    """Cheapest ``y`` in ``{0..max_entry}^E`` that is a circulation with ``omega(y) = (1, 0)``.

    Circulations are parametrised by their values on the arcs outside a
    spanning tree of the dual; tree arcs are then forced.  The enumeration
    runs in numpy chunks.  Returns ``(cost, y)`` or ``(None, None)``.
    """
    D = rep.dual
    arcs = list(D.arc_ids)
    tree, co_tree = D.spanning_tree_arcs()
    k = len(co_tree)
    if k > max_free:
        raise TooLarge("too many free arcs for brute force", k)
    base = max_entry + 1
    col = {a: i for i, a in enumerate(arcs)}
    order = list(D.tree_elimination_order(tree))
    omega_rows = rep.omega_matrix(arcs)
    L = 1
    for a in arcs:
        L = math.lcm(L, Fraction(costs[a]).denominator)
    cvec = np.array([int(Fraction(costs[a]) * L) for a in arcs], dtype=np.int64)
    best_cost, best_y = None, None
    total = base ** k
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        Y = np.zeros((idx.shape[0], len(arcs)), dtype=np.int64)
        rem = idx.copy()
        for a in co_tree:
            Y[:, col[a]] = rem % base
            rem //= base
        # peel tree leaves: the one undetermined arc at a leaf face balances it
        for a, f in order:
            excess = np.zeros(idx.shape[0], dtype=np.int64)
            for b in D.out_arcs(f):
                if b != a:
                    excess += Y[:, col[b]]
            for b in D.in_arcs(f):
                if b != a:
                    excess -= Y[:, col[b]]
            Y[:, col[a]] = -excess if D.tail(a) == f else excess
        ok = np.all((Y >= 0) & (Y <= max_entry), axis=1)
        vals = Y @ omega_rows.T
        ok &= vals[:, 0] % 2 == 1
        if vals.shape[1] > 1:
            ok &= np.all(vals[:, 1:] == 0, axis=1)
        if not ok.any():
            continue
        tot = np.where(ok, Y @ cvec, np.iinfo(np.int64).max)
        i = int(np.argmin(tot))
        if best_cost is None or tot[i] < best_cost:
            best_cost = int(tot[i])
            best_y = {a: int(Y[i, col[a]]) for a in arcs}
    if best_cost is None:
        return None, None
    return Fraction(best_cost, L), best_y
