"""Invariant suite for a single instance, reported line by line."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .circulation import solve_homologous
from .dual import build_dual_representation, HomologyVector
from .embedding import EmbeddedGraph, euler_genus, is_parity_consistent
from .errors import BudgetExceeded, InstanceError, TooLarge
from .oracles import brute_force_circulation, brute_force_symmetric_oct, oracle_mwss
from .pipeline import DEFAULT_BUDGET, replay, solve
from .preprocess import collect_standard_instances
from .slack import omega_walk, sigma, sigma_inverse
from .transversal import branch_partitions, double_cover, find_odd_cycle, two_sided_transversal


@dataclass
class Report:
    lines: list[tuple[bool, str, str]] = field(default_factory=list)

    def add(self, ok: bool, name: str, detail: str = "") -> None:
        self.lines.append((bool(ok), name, detail))

    @property
    def ok(self) -> bool:
        return all(ok for ok, _, _ in self.lines)

    def text(self) -> str:
        out = []
        for ok, name, detail in self.lines:
            out.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
        return "\n".join(out) + "\n"


def standard_instances(G: EmbeddedGraph, budget: int = DEFAULT_BUDGET):
    """Every standard instance reached from any transversal branch of ``G``."""
    X = two_sided_transversal(G, budget).vertices
    found = []
    for br in branch_partitions(G, X):
        insts, _ = collect_standard_instances(br.graph)
        found.extend(insts)
    return found


def check_homology_invariance(rep, trials: int, rng: random.Random) -> str | None:
    """Adding random multiples of facial circulations never changes omega."""
    faces = rep.facial_circulations()
    arcs = rep.dual.arc_ids
    for _ in range(trials):
        y = {a: rng.randint(0, 3) for a in arcs}
        base = rep.omega(y)
        z = dict(y)
        for F in faces:
            k = rng.randint(-2, 2)
            if k:
                for a, c in F.items():
                    z[a] = z.get(a, 0) + k * c
        if rep.omega(z) != base:
            return f"omega changed from {base.as_tuple()} to {rep.omega(z).as_tuple()}"
    return None


def check_sigma_roundtrip(rep, trials: int, rng: random.Random) -> str | None:
    """sigma^-1(sigma(x)) = x and every stored even walk sees omega_W = 0."""
    G = rep.graph
    for _ in range(trials):
        x = {v: rng.randint(-3, 3) for v in G.vertices}
        y = sigma(G, x)
        back = sigma_inverse(G, y, rep.odd_cycle, rep.tree)
        if back != x:
            return f"round trip changed x: {x} -> {back}"
        for W in rep.walks:
            if omega_walk(W, y) != 0:
                return "even walk sees a non-zero slack sum"
    return None


def verify(G: EmbeddedGraph, assume_consistent: bool = False, budget: int = DEFAULT_BUDGET,
           trials: int = 200, seed: int = 0) -> Report:
    rng = random.Random(seed)
    rep_out = Report()
    comps = G.components()
    rep_out.add(True, "structure", f"n={G.n} m={G.m} components={len(comps)}")
    detail = f"{len(G.faces())} faces"
    if len(comps) == 1:
        detail += f", Euler genus {euler_genus(G)}"
    rep_out.add(True, "faces", detail)

    ok, witness = is_parity_consistent(G)
    if assume_consistent:
        rep_out.add(ok, "parity-consistent", "" if ok else f"2-sided odd closed walk {list(witness.vertices)}")
    else:
        rep_out.add(True, "parity-consistent", "yes" if ok else f"no, witness {list(witness.vertices)}")

    try:
        T = two_sided_transversal(G, budget)
    except BudgetExceeded as exc:
        rep_out.add(False, "transversal", str(exc))
        return rep_out
    cover = double_cover(G)
    adj = {v: set(cover.graph.adj[v]) for v in cover.graph.nodes}
    residual = find_odd_cycle(adj, cover.lift(T.vertices))
    rep_out.add(residual is None, "transversal", f"size {len(T.vertices)}: {sorted(T.vertices)}")
    if G.n <= 12:
        best = brute_force_symmetric_oct(G)
        rep_out.add(best == len(T.vertices), "transversal-minimum", f"brute force {best}")

    try:
        insts = standard_instances(G, budget)
    except InstanceError as exc:
        rep_out.add(False, "standardize", str(exc))
        return rep_out
    rep_out.add(True, "standardize", f"{len(insts)} standard instances")
    for k, inst in enumerate(insts):
        tag = f"standard[{k}]"
        try:
            rep = build_dual_representation(inst)
            rep.dual.check_alternation()
        except InstanceError as exc:
            rep_out.add(False, f"{tag} alternation", str(exc))
            continue
        rep_out.add(True, f"{tag} alternation", f"{rep.dual.num_faces} dual vertices, genus {inst.genus}")
        ones = {e: 1 for e in inst.graph.edge_ids}
        rep_out.add(rep.omega(ones) == HomologyVector.target(inst.genus), f"{tag} omega(1)",
                    str(rep.omega(ones).as_tuple()))
        why = check_homology_invariance(rep, trials, rng)
        rep_out.add(why is None, f"{tag} homology-invariance", why or f"{trials} perturbations")
        why = check_sigma_roundtrip(rep, trials, rng)
        rep_out.add(why is None, f"{tag} sigma-roundtrip", why or f"{trials} vectors")
        res = solve_homologous(rep, inst.costs)
        rep_out.add(rep.in_Q(res.y), f"{tag} circulation", f"cost {res.cost}")
        if inst.graph.m <= 12:
            try:
                bf, _ = brute_force_circulation(rep, inst.costs)
            except TooLarge:
                bf = None
            if bf is not None:
                rep_out.add(bf == res.cost, f"{tag} circulation-brute-force", f"brute force {bf}")

    sol = solve(G, budget)
    ok, problems = replay(G, sol.certificate)
    rep_out.add(ok, "certificate-replay", "; ".join(problems) or f"weight {sol.weight}")
    if G.n <= 24:
        o, _ = oracle_mwss(G)
        rep_out.add(o == sol.weight, "oracle", f"solve {sol.weight}, oracle {o}")
    if G.n <= 8:
        from .ef import emit_stab_ef
        try:
            ef = emit_stab_ef(G, budget)
            val = ef.optimum()
            rep_out.add(val == sol.weight, "extended-formulation",
                        f"{len(ef.model.constraints)} rows, optimum {val}")
        except TooLarge as exc:
            rep_out.add(True, "extended-formulation", f"skipped: {exc}")
    return rep_out
