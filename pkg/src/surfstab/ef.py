"""Polynomial-size linear description of the stable set polytope.

Layout of the emitted model:

* one disjunct per split ``X = X0 + X1`` of the transversal (``X1`` stable),
  with multiplier ``lam{i}``; disjunct copies ``x{v}_b{i}`` of the vertex
  variables add up to ``x{v}``;
* inside a disjunct, the blocks of ``G - X0 - N[X1]`` share their vertex
  variables (a cut vertex is a one-vertex clique cutset);
* a bipartite block contributes its edge rows, everything is boxed by
  ``0 <= x <= lam``;
* a non-bipartite block is parity-consistent with genus one, and contributes
  one flow commodity per dual vertex ``f`` on the two-layer cover: supply
  ``mu_f`` at ``(f, 0)``, demand ``mu_f`` at ``(f, 1)``, ``sum mu_f = lam``.
  The projected flow is tied to ``x`` through ``y(uv) + x(u) + x(v) = lam``.

Blocks of genus two or more would need a disjunction over multisets of
cover classes; the emitter refuses them with the size it would need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .dual import build_dual_representation
from .embedding import EmbeddedGraph, euler_genus, induced_subembedding, is_parity_consistent
from .errors import InstanceError, InternalError, TooLarge
from .lp import LinearModel, lp_optimize
from .transversal import branch_partitions, two_sided_transversal

DEFAULT_EF_CAP = 200_000


@dataclass
class _Shape:
    graph: EmbeddedGraph
    genus: int


@dataclass
class FlowBlock:
    branch: int
    index: int
    vertices: tuple
    rep: object
    parity: dict[int, int]

    def z(self, f: int, a: int, p: int) -> str:
        return f"z_b{self.branch}_k{self.index}_f{f}_a{a}_p{p}"

    def mu(self, f: int) -> str:
        return f"mu_b{self.branch}_k{self.index}_f{f}"


@dataclass
class EFModel:
    model: LinearModel
    graph: EmbeddedGraph
    transversal: tuple
    branches: list = field(default_factory=list)
    flow_blocks: list = field(default_factory=list)

    def x(self, v) -> str:
        return f"x{v}"

    def objective(self, weights) -> dict[str, Fraction]:
        return {self.x(v): Fraction(weights[v]) for v in self.graph.vertices}

    def optimum(self, weights=None, method: str = "auto") -> Fraction:
        if weights is None:
            weights = self.graph.weights
        res = lp_optimize(self.model, self.objective(weights), "MAX", method=method)
        if res.status != "optimal":
            raise InternalError(f"stable set model is {res.status}")
        return res.value


def _blocks(H: EmbeddedGraph):
    """Vertex sets of the blocks of ``H``, plus isolated vertices as singletons."""
    N = nx.Graph()
    N.add_nodes_from(H.vertices)
    N.add_edges_from((e.u, e.v) for e in H.edges())
    out = [tuple(sorted(b)) for b in nx.biconnected_components(N)]
    out += [(v,) for v in H.vertices if N.degree(v) == 0]
    return sorted(out)


def _flow_block_size(rep) -> int:
    faces = rep.dual.num_faces
    arcs = len(rep.dual.arc_ids)
    return faces * (2 * faces + 2 * arcs + 1) + arcs


def emit_stab_ef(G: EmbeddedGraph, budget: int = 4, cap: int = DEFAULT_EF_CAP) -> EFModel:
    """Extended formulation whose projection onto ``x{v}`` is STAB(G)."""
    X = sorted(two_sided_transversal(G, budget).vertices)
    M = LinearModel()
    ef = EFModel(M, G, tuple(X))
    for v in G.vertices:
        M.add_var(ef.x(v), 0, 1)
    branches = branch_partitions(G, X)
    lam = []
    for i in range(len(branches)):
        lam.append(M.add_var(f"lam{i}", 0, None))
    M.add_constraint({name: 1 for name in lam}, "=", 1, tag="balas", name="lam_sum")

    def check_cap():
        if len(M.constraints) > cap:
            raise TooLarge(f"model exceeds {cap} constraints", len(M.constraints))

    for i, br in enumerate(branches):
        L = lam[i]
        xi = {v: M.add_var(f"x{v}_b{i}", 0, None) for v in G.vertices}
        ef.branches.append({"lam": L, "deleted": sorted(br.deleted), "taken": sorted(br.chosen),
                            "x": xi, "blocks": []})
        H = br.graph
        for v in G.vertices:
            if v in br.chosen:
                M.add_constraint({xi[v]: 1, L: -1}, "=", 0, tag="balas")
            elif v not in H.weights:
                M.add_constraint({xi[v]: 1}, "=", 0, tag="balas")
            else:
                M.add_constraint({xi[v]: 1, L: -1}, "<=", 0, tag="box")
        for k, B in enumerate(_blocks(H)):
            sub = induced_subembedding(H, B)
            if len(B) == 1 or sub.is_bipartite():
                for e in sub.edges():
                    M.add_constraint({xi[e.u]: 1, xi[e.v]: 1, L: -1}, "<=", 0, tag="edge")
                ef.branches[i]["blocks"].append(("bipartite", B))
                continue
            ok, witness = is_parity_consistent(sub)
            if not ok:
                raise InternalError(f"block {B} keeps a 2-sided odd closed walk: {witness}")
            g = euler_genus(sub)
            if g >= 2:
                rep = build_dual_representation(_Shape(sub, g))
                raise TooLarge(
                    f"block {B} has Euler genus {g}; the multiset disjunction would need more "
                    f"than {math.comb(rep.dual.num_faces + 6 * g, 6 * g)} disjuncts",
                    math.comb(rep.dual.num_faces + 6 * g, 6 * g))
            rep = build_dual_representation(_Shape(sub, g))
            fb = FlowBlock(i, k, B, rep, {a: rep.omega_arc(a)[0] for a in rep.dual.arc_ids})
            if len(M.constraints) + _flow_block_size(rep) > cap:
                raise TooLarge(f"model would exceed {cap} constraints",
                               len(M.constraints) + _flow_block_size(rep))
            _emit_flow_block(M, fb, L, xi)
            ef.flow_blocks.append(fb)
            ef.branches[i]["blocks"].append(("flow", B))
        check_cap()
    for v in G.vertices:
        row = {ef.x(v): 1}
        for b in ef.branches:
            row[b["x"][v]] = -1
        M.add_constraint(row, "=", 0, tag="balas")
    check_cap()
    return ef


def _emit_flow_block(M: LinearModel, fb: FlowBlock, L: str, xi: dict) -> None:
    D = fb.rep.dual
    G = fb.rep.graph
    faces = range(D.num_faces)
    for f in faces:
        M.add_var(fb.mu(f), 0, None)
        for a in D.arc_ids:
            for p in (0, 1):
                M.add_var(fb.z(f, a, p), 0, None)
    M.add_constraint({**{fb.mu(f): 1 for f in faces}, L: -1}, "=", 0, tag="balas")
    for f in faces:
        for h in faces:
            for q in (0, 1):
                row: dict[str, Fraction] = {}
                for a in D.out_arcs(h):
                    row[fb.z(f, a, q)] = row.get(fb.z(f, a, q), 0) + 1
                for a in D.in_arcs(h):
                    src = q ^ fb.parity[a]
                    row[fb.z(f, a, src)] = row.get(fb.z(f, a, src), 0) - 1
                if h == f:
                    row[fb.mu(f)] = -1 if q == 0 else 1
                M.add_constraint(row, "=", 0, tag="flow-conservation")
    for e in G.edges():
        row = {fb.z(f, e.id, p): 1 for f in faces for p in (0, 1)}
        row[xi[e.u]] = 1
        row[xi[e.v]] = row.get(xi[e.v], 0) + 1
        row[L] = -1
        M.add_constraint(row, "=", 0, tag="sigma-pullback")


def _closed_walks(D, y: dict[int, int]) -> list[list[int]]:
    """Split a non-negative integer circulation into closed arc sequences."""
    left = {a: int(c) for a, c in y.items() if c}
    walks = []
    while left:
        start = min(left)
        walk = []
        a = start
        origin = D.tail(a)
        while True:
            walk.append(a)
            left[a] -= 1
            if not left[a]:
                del left[a]
            h = D.head(a)
            if h == origin:
                break
            a = next((b for b in D.out_arcs(h) if b in left), None)
            if a is None:
                raise InternalError("vector is not a circulation")
        walks.append(walk)
    return walks


def complete(ef: EFModel, S) -> dict[str, Fraction]:
    """A feasible model point whose ``x`` part is the indicator of stable set ``S``."""
    G = ef.graph
    S = set(S)
    adj = G.adjacency
    if any(adj[v] & S for v in S):
        raise InstanceError("not a stable set")
    X = set(ef.transversal)
    idx = next(i for i, b in enumerate(ef.branches) if set(b["taken"]) == S & X)
    M = ef.model
    point = {name: Fraction(0) for name in M.variables}
    for v in S:
        point[ef.x(v)] = Fraction(1)
    point[f"lam{idx}"] = Fraction(1)
    for v in S:
        point[ef.branches[idx]["x"][v]] = Fraction(1)
    for fb in ef.flow_blocks:
        if fb.branch != idx:
            continue
        D = fb.rep.dual
        H = fb.rep.graph
        y = {e.id: 1 - (e.u in S) - (e.v in S) for e in H.edges()}
        walks = _closed_walks(D, y)
        cls = [sum(fb.parity[a] for a in w) % 2 for w in walks]
        odd = [w for w, c in zip(walks, cls) if c]
        if len(odd) % 2 != 1:
            raise InternalError("slack vector has even class")
        f = D.tail(odd[0][0])
        point[fb.mu(f)] = Fraction(1)

        def lift(walk, p, amount):
            for a in walk:
                point[fb.z(f, a, p)] += amount
                p ^= fb.parity[a]
            return p

        for w, c in zip(walks, cls):
            if w is odd[0]:
                lift(w, 0, Fraction(1))
            elif c == 0:
                lift(w, 0, Fraction(1))
            else:
                lift(w + w, 0, Fraction(1, 2))
    ok, why = M.is_feasible(point)
    if not ok:
        raise InternalError(f"completion is infeasible: {why}")
    return point
