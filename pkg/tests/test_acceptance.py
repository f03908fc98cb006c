"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the summary.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction

import networkx as nx
import pytest

from surfstab.circulation import solve_homologous
from surfstab.dual import HomologyVector, alternating_orientation, build_dual_representation
from surfstab.ef import emit_stab_ef
from surfstab.embedding import is_parity_consistent
from surfstab.errors import InstanceError, InternalError
from surfstab.generators import corpus, proj_quad
from surfstab.oracles import brute_force_circulation, brute_force_oct, brute_force_symmetric_oct, oracle_mwss
from surfstab.pipeline import replay, solve
from surfstab.slack import clamp_to_unit
from surfstab.transversal import odd_cycle_transversal, two_sided_transversal
from surfstab.verify import check_homology_invariance, check_sigma_roundtrip, standard_instances

TRIALS = 1000
RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)


@pytest.fixture(scope="module")
def instances():
    return list(corpus(max_n=14, count=200, seed=0))


@pytest.fixture(scope="module")
def standards(instances):
    out = []
    for label, G in instances:
        for inst in standard_instances(G):
            out.append((label, inst))
    return out


def _family(label: str) -> str:
    return label.split(":")[0]


def _planted(label: str) -> bool:
    fam = _family(label)
    return fam == "planar-planted" or (fam == "proj-quad" and "'plant': 0" not in label)


def test_1_oracle_equivalence(instances):
    t0 = time.perf_counter()
    wrong, unreplayable = [], []
    for label, G in instances:
        sol = solve(G)
        if sol.weight != oracle_mwss(G)[0]:
            wrong.append(label)
        if not replay(G, json.loads(sol.to_json()))[0]:
            unreplayable.append(label)
    secs = time.perf_counter() - t0
    families = sorted({_family(l) for l, _ in instances})
    ok = len(instances) >= 200 and not wrong and not unreplayable and secs < 120 and len(families) == 5
    report(1, ok, f"{len(instances)} instances over {families}, {len(wrong)} mismatches, "
                  f"{len(unreplayable)} certificate failures, {secs:.1f}s")
    assert ok, wrong[:5] + unreplayable[:5]


def test_2_circulation_vs_brute_force(standards):
    t0 = time.perf_counter()
    checked, wrong = 0, []
    for label, inst in standards:
        if inst.graph.m > 12:
            continue
        rep = build_dual_representation(inst)
        res = solve_homologous(rep, inst.costs)
        bf, _ = brute_force_circulation(rep, inst.costs, max_entry=3)
        checked += 1
        if bf != res.cost or not rep.in_Q(res.y):
            wrong.append((label, res.cost, bf))
    secs = time.perf_counter() - t0
    ok = checked >= 50 and not wrong and secs < 60
    report(2, ok, f"{checked} standard instances with |E| <= 12, {len(wrong)} mismatches, {secs:.1f}s")
    assert ok, wrong[:5]


def test_3_homology_invariance(standards):
    rng = random.Random(3)
    bad = []
    for label, inst in standards:
        rep = build_dual_representation(inst)
        if rep.omega({e: 1 for e in inst.graph.edge_ids}) != HomologyVector.target(inst.genus):
            bad.append((label, "omega(1)"))
        why = check_homology_invariance(rep, TRIALS, rng)
        if why:
            bad.append((label, why))
    genera = sorted({inst.genus for _, inst in standards})
    ok = bool(standards) and not bad
    report(3, ok, f"{len(standards)} standard instances (genus {genera}) x {TRIALS} perturbations, "
                  f"{len(bad)} failures")
    assert ok, bad[:5]


def test_4_sigma_roundtrip(standards):
    rng = random.Random(4)
    bad = []
    for label, inst in standards:
        rep = build_dual_representation(inst)
        why = check_sigma_roundtrip(rep, TRIALS, rng)
        if why:
            bad.append((label, why))
    ok = bool(standards) and not bad
    report(4, ok, f"{len(standards)} standard instances x {TRIALS} integer vectors, {len(bad)} failures")
    assert ok, bad[:5]


def test_5_alternating_orientation(instances, standards):
    std_fail = []
    for label, inst in standards:
        try:
            alternating_orientation(inst.graph).check_alternation()
        except InstanceError:
            std_fail.append(label)
    # whole inputs: on non-bipartite graphs the 2-colouring must fail exactly on planted ones
    mismatch, planted_seen, bipartite_fail = [], 0, 0
    for label, G in instances:
        try:
            alternating_orientation(G)
            failed = False
        except InstanceError:
            failed = True
        if G.is_bipartite():
            bipartite_fail += failed
            continue
        planted = _planted(label)
        planted_seen += planted
        if failed != planted or failed == is_parity_consistent(G)[0]:
            mismatch.append(label)
    ok = not std_fail and not mismatch and planted_seen > 0
    report(5, ok, f"{len(standards)} standard instances all alternate ({len(std_fail)} failures); "
                  f"non-bipartite inputs: failure iff planted, {len(mismatch)} exceptions, "
                  f"{planted_seen} planted; bipartite inputs without alternation: {bipartite_fail}")
    assert ok, std_fail[:5] + mismatch[:5]


def test_6_oct_exactness(instances):
    checked, bad = 0, []
    for label, G in instances:
        if G.n > 12:
            continue
        H = nx.Graph()
        H.add_nodes_from(G.vertices)
        H.add_edges_from((e.u, e.v) for e in G.edges())
        best = brute_force_oct(H)
        S = odd_cycle_transversal(H, G.n)
        sym = two_sided_transversal(G, G.n).vertices
        checked += 1
        if S is None or len(S) != best or len(sym) != brute_force_symmetric_oct(G):
            bad.append(label)
    ok = checked > 0 and not bad
    report(6, ok, f"{checked} graphs with n <= 12 (plain and two-sided transversals), {len(bad)} mismatches")
    assert ok, bad[:5]


def test_7_extended_formulation(instances):
    t0 = time.perf_counter()
    rng = random.Random(7)
    checked, objectives, bad = 0, 0, []
    for label, G in instances:
        if G.n > 8:
            continue
        ef = emit_stab_ef(G)
        checked += 1
        for _ in range(25):
            w = {v: Fraction(rng.randint(0, 30), rng.randint(1, 7)) for v in G.vertices}
            objectives += 1
            if ef.optimum(w) != solve(G.with_weights(w)).weight:
                bad.append(label)
    secs = time.perf_counter() - t0
    ok = checked > 0 and not bad and secs < 120
    report(7, ok, f"{checked} instances with n <= 8, {objectives} objectives, {len(bad)} mismatches, {secs:.1f}s")
    assert ok, bad[:5]


def test_8_clamp_soundness(instances):
    rng = random.Random(8)
    calls, fired = 0, []
    for label, G in instances:
        for _ in range(20):
            x = {v: rng.randint(-4, 1) for v in G.vertices}
            for e in G.edges():
                if x[e.u] + x[e.v] > 1:
                    x[e.v] = 1 - x[e.u]
            G2 = G.with_weights({v: abs(G.weight(v)) for v in G.vertices})
            try:
                clamp_to_unit(G2, x)
            except InternalError as exc:
                fired.append((label, str(exc)))
            calls += 1
    ok = not fired
    report(8, ok, f"{calls} direct clamps plus every pipeline leaf in criteria 1 and 7, "
                  f"{len(fired)} assertion failures")
    assert ok, fired[:5]


@pytest.mark.parametrize("shape", [(30, 30), (30, 31)])
def test_9_scale(shape):
    G = proj_quad(*shape, weights="unit")
    t0 = time.perf_counter()
    sol = solve(G)
    secs = time.perf_counter() - t0
    ok = secs < 10 and replay(G, sol.certificate)[0]
    leaves = sol.timings["standard_leaves"]
    report(9, ok, f"proj-quad {shape[0]}x{shape[1]}: n={G.n}, weight {sol.weight}, {secs:.2f}s "
                  f"({leaves:.2f}s in circulation leaves)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
