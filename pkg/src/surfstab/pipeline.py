"""End-to-end exact solver with a replayable certificate.

Steps: delete a small transversal of the 2-sided odd closed walks and
branch over which transversal vertices are taken; reduce every branch to
standard pieces; on each piece, compute the dual representation and the
cheapest circulation homologous to all-ones, pull it back through the
slack map and clamp it to a 0/1 vector.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .circulation import DEFAULT_NODE_CAP, solve_homologous
from .dual import build_dual_representation
from .embedding import EmbeddedGraph
from .errors import InternalError
from .instance_io import format_fraction
from .preprocess import PlanNode, StandardInstance, standardize
from .slack import clamp_to_unit, sigma_inverse
from .transversal import branch_partitions, two_sided_transversal

DEFAULT_BUDGET = 4


@dataclass
class Solution:
    stable_set: frozenset
    weight: Fraction
    certificate: dict
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.certificate, indent=1, sort_keys=True) + "\n"


class StandardLeafSolver:
    """Solves a standard instance through the homologous-circulation route."""

    def __init__(self, ell: int | None = None, node_cap: int = DEFAULT_NODE_CAP):
        self.ell = ell
        self.node_cap = node_cap
        self.calls = 0
        self.seconds = 0.0

    def __call__(self, inst: StandardInstance):
        t0 = time.perf_counter()
        self.calls += 1
        G = inst.graph
        rep = build_dual_representation(inst)
        res = solve_homologous(rep, inst.costs, ell=self.ell, node_cap=self.node_cap)
        x = sigma_inverse(G, res.y, rep.odd_cycle, rep.tree)
        wx = sum((G.weight(v) * x[v] for v in G.vertices), Fraction(0))
        if wx != inst.total_cost - res.cost:
            raise InternalError("w(x) differs from c(E) - c(y)")
        xc = clamp_to_unit(G, x)
        chosen = frozenset(v for v in G.vertices if xc[v] == 1)
        info = {
            "genus": inst.genus,
            "y": {str(a): v for a, v in sorted(res.y.items()) if v},
            "omega": list(rep.omega(res.y).as_tuple()),
            "cost": format_fraction(res.cost),
            "edge_cost_total": format_fraction(inst.total_cost),
            "pullback_weight": format_fraction(wx),
            "ell": res.ell,
            "parts": res.parts,
        }
        self.seconds += time.perf_counter() - t0
        return chosen, info


def plan_to_dict(node: PlanNode) -> dict:
    return {
        "kind": node.kind,
        "vertices": sorted(node.weights),
        "weights": {str(v): format_fraction(w) for v, w in sorted(node.weights.items())},
        "chosen": sorted(node.chosen),
        "weight": format_fraction(node.weight),
        "info": node.info,
        "children": [plan_to_dict(c) for c in node.children],
    }


def solve(G: EmbeddedGraph, budget: int = DEFAULT_BUDGET, ell: int | None = None,
          node_cap: int = DEFAULT_NODE_CAP) -> Solution:
    """Maximum-weight stable set of an embedded graph, exactly."""
    timings = {}
    t0 = time.perf_counter()
    X = two_sided_transversal(G, budget).vertices
    timings["transversal"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    branches = branch_partitions(G, X)
    leaf = StandardLeafSolver(ell, node_cap)
    records = []
    best = None
    for i, br in enumerate(branches):
        plan = standardize(br.graph, leaf)
        total = plan.weight + br.offset
        records.append({
            "deleted": sorted(br.deleted),
            "taken": sorted(br.chosen),
            "offset": format_fraction(br.offset),
            "weight": format_fraction(total),
            "plan": plan_to_dict(plan),
        })
        if best is None or total > best[0]:
            best = (total, i, plan.chosen | br.chosen)
    timings["reduce_and_solve"] = time.perf_counter() - t0 - leaf.seconds
    timings["standard_leaves"] = leaf.seconds

    weight, idx, chosen = best
    chosen = frozenset(chosen)
    adj = G.adjacency
    if any(adj[v] & chosen for v in chosen):
        raise InternalError("assembled set is not stable")
    if sum((G.weight(v) for v in chosen), Fraction(0)) != weight:
        raise InternalError("assembled set weight differs from the recorded optimum")
    cert = {
        "format": "surfstab-certificate/1",
        "n": G.n,
        "m": G.m,
        "transversal": sorted(X),
        "branches": records,
        "best_branch": idx,
        "stable_set": sorted(chosen),
        "weight": format_fraction(weight),
    }
    return Solution(chosen, weight, cert, timings)


def replay(G: EmbeddedGraph, cert: dict) -> tuple[bool, list[str]]:
    """Re-derive the reported weight from the certificate and check every node.

    Checks: sets are stable in ``G``; each node's weight is the sum of its own
    weights over its chosen set; composite nodes agree with their children;
    standard leaves satisfy ``c(E) - c(y) = w(x) <= weight`` with ``omega(y)``
    odd in the first coordinate and zero elsewhere.
    """
    problems: list[str] = []
    adj = G.adjacency

    def stable(S, where):
        S = set(S)
        for v in S:
            if v not in adj:
                problems.append(f"{where}: unknown vertex {v}")
                return
            if adj[v] & S:
                problems.append(f"{where}: set is not stable")
                return

    def check(node, where):
        w = {int(k): Fraction(v) for k, v in node["weights"].items()}
        chosen = node["chosen"]
        stable(chosen, where)
        if not set(chosen) <= set(w):
            problems.append(f"{where}: chosen vertex outside node")
            return
        if sum((w[v] for v in chosen), Fraction(0)) != Fraction(node["weight"]):
            problems.append(f"{where}: weight does not match chosen set")
        kids = node["children"]
        kind = node["kind"]
        if kind == "components":
            if set(chosen) != set().union(*(set(k["chosen"]) for k in kids)):
                problems.append(f"{where}: components do not add up")
        elif kind == "drop":
            if set(chosen) != set(kids[0]["chosen"]):
                problems.append(f"{where}: drop node changed the set")
        elif kind == "nt":
            if set(chosen) != set(kids[0]["chosen"]) | set(node["info"]["fixed_in"]):
                problems.append(f"{where}: NT fixing does not add up")
            if set(chosen) & set(node["info"]["fixed_out"]):
                problems.append(f"{where}: NT-excluded vertex chosen")
        elif kind == "standard":
            info = node["info"]
            cE = Fraction(info["edge_cost_total"])
            cy = Fraction(info["cost"])
            wx = Fraction(info["pullback_weight"])
            if cE - cy != wx:
                problems.append(f"{where}: pullback weight differs from c(E) - c(y)")
            if wx > Fraction(node["weight"]):
                problems.append(f"{where}: clamp lost weight")
            om = info["omega"]
            if om[0] % 2 != 1 or any(om[1:]):
                problems.append(f"{where}: circulation is not homologous to all-ones")
        for i, k in enumerate(kids):
            check(k, f"{where}/{i}")

    best = None
    for i, br in enumerate(cert["branches"]):
        where = f"branch{i}"
        plan = br["plan"]
        check(plan, where)
        taken = set(br["taken"])
        offset = sum((G.weight(v) for v in taken), Fraction(0))
        if offset != Fraction(br["offset"]):
            problems.append(f"{where}: offset mismatch")
        total = Fraction(plan["weight"]) + offset
        if total != Fraction(br["weight"]):
            problems.append(f"{where}: branch weight mismatch")
        stable(taken | set(plan["chosen"]), where)
        if best is None or total > best:
            best = total
    S = cert["stable_set"]
    stable(S, "result")
    recomputed = sum((G.weight(v) for v in S), Fraction(0))
    if recomputed != Fraction(cert["weight"]):
        problems.append("result: reported weight differs from the set's weight")
    if best != Fraction(cert["weight"]):
        problems.append("result: reported weight is not the best branch")
    return not problems, problems
