"""Minimum-cost non-negative integer circulation homologous to all-ones.

The cover graph pairs every dual vertex ``f`` with a homology class ``b``
inside a window; arc ``a = (f, f')`` of the dual lifts to
``(f, b) -> (f', b + omega(chi^a))``.  A path from ``(f, 0)`` to ``(f, b)``
projects to a closed walk of class ``b``.  An optimal circulation splits
into at most ``ell`` closed pieces, so it suffices to find the cheapest
piece of every class (one Dijkstra sweep per ``f``) and then combine at most
``ell`` pieces whose classes add up to the target ``(1, 0)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .dual import DualRepresentation, HomologyVector
from .errors import InternalError, TooLarge

DEFAULT_NODE_CAP = 5_000_000


def default_ell(genus: int) -> int:
    return max(1, 6 * genus)


@dataclass
class CoverGraph:
    """Implicit layered digraph over ``(face, class)`` pairs."""

    rep: DualRepresentation
    costs: dict[int, int]
    scale: int
    window: int
    increments: dict[int, tuple[int, ...]]

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def node_count(self) -> int:
        return self.rep.dual.num_faces * 2 * (2 * self.window + 1) ** self.dim

    def in_window(self, b: tuple[int, ...]) -> bool:
        return all(-self.window <= z <= self.window for z in b[1:])

    def shift(self, b: tuple[int, ...], a: int) -> tuple[int, ...] | None:
        inc = self.increments[a]
        nb = ((b[0] + inc[0]) % 2,) + tuple(x + y for x, y in zip(b[1:], inc[1:]))
        return nb if self.in_window(nb) else None

    def successors(self, node):
        f, b = node
        D = self.rep.dual
        for a in D.out_arcs(f):
            nb = self.shift(b, a)
            if nb is not None:
                yield a, (D.head(a), nb), self.costs[a]

    def nodes(self):
        rng = range(-self.window, self.window + 1)
        for f in range(self.rep.dual.num_faces):
            for p in (0, 1):
                for z in itertools.product(rng, repeat=self.dim):
                    yield (f, (p,) + z)

    def arcs(self):
        for node in self.nodes():
            for a, nxt, cost in self.successors(node):
                yield node, nxt, a, cost

    def arc_cost(self, a: int) -> Fraction:
        return Fraction(self.costs[a], self.scale)


def build_cover_graph(rep: DualRepresentation, costs: Mapping[int, object],
                      window: int | None = None, node_cap: int = DEFAULT_NODE_CAP) -> CoverGraph:
    """Cover graph with integer-scaled arc costs.

    The default window is ``|E|`` times the largest coefficient of the even
    walks, which bounds the class of any simple path.
    """
    arcs = rep.dual.arc_ids
    increments = {a: rep.omega_arc(a) for a in arcs}
    if window is None:
        biggest = max((abs(x) for inc in increments.values() for x in inc[1:]), default=1)
        window = len(arcs) * max(biggest, 1)
    scale = math.lcm(*(Fraction(costs[a]).denominator for a in arcs)) if arcs else 1
    int_costs = {a: int(Fraction(costs[a]) * scale) for a in arcs}
    if any(c < 0 for c in int_costs.values()):
        raise ValueError("cover graph needs non-negative costs")
    cover = CoverGraph(rep, int_costs, scale, window, increments)
    if cover.node_count > node_cap:
        raise TooLarge(f"cover graph would have {cover.node_count} nodes (cap {node_cap}); "
                       "instance too large for the genus window", cover.node_count)
    return cover


@dataclass
class TableEntry:
    cost: int
    face: int
    path: tuple[int, ...]


@dataclass
class ClassCostTable:
    """Cheapest closed piece per class ``b != 0``, with costs in scaled integers."""

    entries: dict[tuple[int, ...], TableEntry] = field(default_factory=dict)
    scale: int = 1

    def cost(self, b) -> Fraction:
        return Fraction(self.entries[tuple(b)].cost, self.scale)

    def __contains__(self, b):
        return tuple(b) in self.entries

    def __len__(self):
        return len(self.entries)


def _cover_arrays(cover: CoverGraph):
    """Explicit cover arcs as index arrays, with parallel arcs reduced to the cheapest.

    Node index is ``f * 2R + parity + 2 * zidx`` where ``zidx`` is the
    mixed-radix index of ``z + window`` and ``R = (2 * window + 1) ** dim``.
    Arc weights are ``cost * K + 1`` with ``K`` above any path length, so
    zero-cost arcs stay visible to the sparse solver and the true cost of a
    path is recovered exactly as ``weight // K``.
    """
    D = cover.rep.dual
    dim, W = cover.dim, cover.window
    side = 2 * W + 1
    R = side ** dim
    N = D.num_faces * 2 * R
    K = N + 1
    if dim:
        Z = np.stack(np.unravel_index(np.arange(R), (side,) * dim), axis=1) - W
    else:
        Z = np.zeros((1, 0), dtype=np.int64)
    zidx = np.arange(R, dtype=np.int64)
    srcs, dsts, wts, ids = [], [], [], []
    for a in D.arc_ids:
        inc = cover.increments[a]
        step = np.array(inc[1:], dtype=np.int64)
        newZ = Z + step
        valid = np.all((newZ >= -W) & (newZ <= W), axis=1)
        if dim:
            new_idx = np.ravel_multi_index(tuple((newZ[valid] + W).T), (side,) * dim)
        else:
            new_idx = np.zeros(int(valid.sum()), dtype=np.int64)
        for p in (0, 1):
            src = D.tail(a) * 2 * R + p + 2 * zidx[valid]
            dst = D.head(a) * 2 * R + (p ^ inc[0]) + 2 * new_idx
            srcs.append(src)
            dsts.append(dst)
            wts.append(np.full(src.shape[0], cover.costs[a] * K + 1, dtype=np.int64))
            ids.append(np.full(src.shape[0], a, dtype=np.int64))
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    wt = np.concatenate(wts)
    aid = np.concatenate(ids)
    key = src * N + dst
    order = np.lexsort((aid, wt, key))
    key, wt, aid, src, dst = key[order], wt[order], aid[order], src[order], dst[order]
    first = np.ones(key.shape[0], dtype=bool)
    first[1:] = key[1:] != key[:-1]
    center = int(np.ravel_multi_index((W,) * dim, (side,) * dim)) if dim else 0
    return N, R, K, Z, center, src[first], dst[first], wt[first], aid[first]


def class_cost_table(cover: CoverGraph, bound: int | None = None) -> ClassCostTable:
    """Shortest path from every ``(f, 0)``; keeps the cheapest ``(f, b)`` per class ``b != 0``.

    Paths costing more than ``bound`` (default: cost of the all-ones
    circulation) are never useful and are cut off.  The sweeps run in
    scipy's compiled Dijkstra on an exactly encoded integer weighting; ties
    between faces go to the lowest face id.
    """
    if bound is None:
        bound = sum(cover.costs.values())
    D = cover.rep.dual
    N, R, K, Z, center, src, dst, wt, aid = _cover_arrays(cover)
    zero = 2 * center
    arc_of = {(int(a), int(b)): int(c) for a, b, c in zip(src, dst, aid)}
    mat = csr_matrix((wt.astype(np.float64), (src, dst)), shape=(N, N))
    if (bound + 1) * K * 1.0 >= 2.0 ** 52:
        raise TooLarge("cover-graph weights exceed exact float range", bound)
    limit = float((bound + 1) * K)
    table = ClassCostTable(scale=cover.scale)
    targets = np.array([i for i in range(2 * R) if i != zero], dtype=np.int64)
    faces = list(range(D.num_faces))
    chunk = max(1, 4_000_000 // max(N, 1))
    for lo in range(0, len(faces), chunk):
        block = faces[lo:lo + chunk]
        sources = np.array([f * 2 * R + zero for f in block], dtype=np.int64)
        dist, pred = dijkstra(mat, directed=True, indices=sources, limit=limit,
                              return_predecessors=True)
        for row, f in enumerate(block):
            d = dist[row, f * 2 * R + targets]
            for j in np.nonzero(np.isfinite(d))[0]:
                weight = int(d[j])
                cost = weight // K
                if cost > bound:
                    continue
                cls = int(targets[j])
                b = (cls % 2,) + tuple(int(z) for z in Z[cls // 2])
                cur = table.entries.get(b)
                if cur is None or cost < cur.cost:
                    node = f * 2 * R + cls
                    path = []
                    while node != sources[row]:
                        prev = int(pred[row, node])
                        path.append(arc_of[(prev, node)])
                        node = prev
                    table.entries[b] = TableEntry(cost, f, tuple(reversed(path)))
    return table


def combine(table, ell: int, target: tuple[int, ...], bound=None):
    """Cheapest multiset of at most ``ell`` table classes summing to ``target``.

    ``table`` is a :class:`ClassCostTable` or a plain mapping class -> cost.
    Returns ``(total cost, list of classes)``.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if isinstance(table, ClassCostTable):
        costs = {b: e.cost for b, e in table.entries.items()}
        scale = table.scale
    else:
        costs = {tuple(b): c for b, c in table.items()}
        scale = None
    target = tuple(target)
    target = (target[0] % 2,) + target[1:]
    items = sorted(costs.items())
    best = None
    layer = {tuple([0] * len(target)): (0, ())}
    for _ in range(ell):
        nxt = {}
        for s, (c0, parts) in layer.items():
            for b, c in items:
                tot = c0 + c
                if bound is not None and tot > bound:
                    continue
                if best is not None and tot >= best[0]:
                    continue
                ns = ((s[0] + b[0]) % 2,) + tuple(x + y for x, y in zip(s[1:], b[1:]))
                cand = (tot, parts + (b,))
                old = nxt.get(ns)
                if old is None or cand < old:
                    nxt[ns] = cand
        if target in nxt and (best is None or nxt[target] < best):
            best = nxt[target]
        layer = nxt
        if not layer:
            break
    if best is None:
        raise InternalError("no homologous combination found; the all-ones circulation should be feasible")
    total = Fraction(best[0], scale) if scale is not None else best[0]
    return total, list(best[1])


def project_and_assemble(rep: DualRepresentation, paths) -> dict[int, int]:
    """Sum of the projected paths, checked to lie in the target homology class."""
    paths = list(paths)
    if not paths:
        raise InternalError("empty part list cannot reach a nonzero class")
    y = {a: 0 for a in rep.dual.arc_ids}
    for p in paths:
        for a in p:
            y[a] += 1
    if any(v < 0 for v in y.values()):
        raise InternalError("assembled circulation has a negative entry")
    if not rep.dual.is_circulation(y):
        raise InternalError("assembled vector does not conserve flow")
    if rep.omega(y) != HomologyVector.target(rep.genus):
        raise InternalError(f"assembled circulation has class {rep.omega(y)}, expected (1, 0)")
    return y


@dataclass
class HomologousResult:
    y: dict[int, int]
    cost: Fraction
    parts: list
    ell: int
    cover_nodes: int


def solve_homologous(rep: DualRepresentation, costs: Mapping[int, object], ell: int | None = None,
                     node_cap: int = DEFAULT_NODE_CAP) -> HomologousResult:
    """Minimum ``c(y)`` over non-negative integer circulations homologous to all-ones."""
    if ell is None:
        ell = default_ell(rep.genus)
    cover = build_cover_graph(rep, costs, node_cap=node_cap)
    bound = sum(cover.costs.values())
    table = class_cost_table(cover, bound)
    target = HomologyVector.target(rep.genus).as_tuple()
    total, classes = combine(table, ell, target, bound)
    paths = [table.entries[b].path for b in classes]
    y = project_and_assemble(rep, paths)
    cost = sum((Fraction(costs[a]) * v for a, v in y.items()), Fraction(0))
    if cost != total:
        raise InternalError("projected circulation cost differs from the cover-graph cost")
    if cost > sum((Fraction(costs[a]) for a in y), Fraction(0)):
        raise InternalError("optimum exceeds the cost of the all-ones circulation")
    parts = [{"class": list(b), "face": table.entries[b].face, "arcs": list(table.entries[b].path)}
             for b in classes]
    return HomologousResult(y, cost, parts, ell, cover.node_count)
