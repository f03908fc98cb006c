from __future__ import annotations

import json
from fractions import Fraction

import networkx as nx
import pytest

from surfstab.cli import main
from surfstab.embedding import euler_genus, is_parity_consistent
from surfstab.errors import InstanceError
from surfstab.generators import FAMILIES, gen, planar_cycle, planar_planted
from surfstab.instance_io import dumps_graph, graph_to_dict, loads_graph, parse_fraction
from surfstab.oracles import oracle_mwss, oracle_ocp
from surfstab.pipeline import replay, solve
from surfstab.transversal import two_sided_transversal
from surfstab.verify import verify


# -- instance format ---------------------------------------------------------

def test_roundtrip_is_byte_identical(k4):
    text = dumps_graph(k4.with_weights({0: "1/3", 1: 2, 2: 0, 3: "-5/2"}))
    assert dumps_graph(loads_graph(text)) == text


def test_abstract_graph_refused():
    data = graph_to_dict(planar_cycle(4))
    del data["rot"]
    with pytest.raises(InstanceError, match="embedding is required"):
        loads_graph(json.dumps(data))


def test_float_weight_refused():
    with pytest.raises(InstanceError):
        parse_fraction(0.5)
    assert parse_fraction("3/6") == Fraction(1, 2)


# -- generators --------------------------------------------------------------

def test_generators_deterministic():
    for fam in FAMILIES:
        assert dumps_graph(gen(fam, {}, 3)) == dumps_graph(gen(fam, {}, 3))


def test_family_claims():
    assert is_parity_consistent(gen("proj-quad", {"r": 3, "s": 3}))[0]
    assert two_sided_transversal(planar_planted(3, 4, plant=1, seed=2), 6).vertices
    kt = gen("klein-tube", {"rings": 2}, 1)
    assert euler_genus(kt) == 2 and is_parity_consistent(kt)[0]
    with pytest.raises(InstanceError):
        gen("no-such-family")


# -- oracles -----------------------------------------------------------------

def test_oracle_examples(k4):
    assert oracle_mwss(planar_cycle(5))[0] == 2
    assert oracle_mwss(nx.empty_graph(0))[0] == 0
    assert oracle_mwss(k4)[0] == 1
    assert oracle_ocp(nx.cycle_graph(5)) == 1
    two = nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3))
    assert oracle_ocp(two) == 2
    assert oracle_ocp(nx.cycle_graph(6)) == 0


# -- pipeline ----------------------------------------------------------------

def test_pipeline_examples(triangle, k4, c5):
    assert solve(triangle.with_weights({0: 2, 1: 2, 2: 2})).weight == 2
    assert solve(k4).weight == 1
    s = solve(c5)
    assert s.weight == 2
    assert len(s.certificate["transversal"]) == 1


def test_certificate_replays_and_detects_tampering(k4):
    G = k4.with_weights({0: 3, 1: 1, 2: 1, 3: 1})
    s = solve(G)
    ok, problems = replay(G, json.loads(s.to_json()))
    assert ok, problems
    bad = json.loads(s.to_json())
    bad["weight"] = "5/1"
    assert not replay(G, bad)[0]
    # a certificate does not replay against an instance with other weights
    assert not replay(k4, json.loads(s.to_json()))[0]


def test_solution_output_is_deterministic(small_corpus):
    for _, G in small_corpus[:10]:
        assert solve(G).to_json() == solve(G).to_json()


# -- CLI ---------------------------------------------------------------------

def test_cli_gen_solve_oracle(tmp_path, capsys):
    inst = tmp_path / "tri.json"
    assert main(["gen", "--family", "proj-triangle", "--seed", "1", "-o", str(inst)]) == 0
    cert = tmp_path / "c.json"
    lpx = tmp_path / "m.lpx"
    assert main(["solve", str(inst), "--cert", str(cert), "--emit-ef", str(lpx)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("weight 1/1")
    assert json.loads(cert.read_text())["weight"] == "1/1"
    assert lpx.read_text().startswith("VARS")
    assert main(["oracle", str(inst)]) == 0
    assert "weight 1/1" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["solve", str(bad)]) == 2
    inst = tmp_path / "p.json"
    main(["gen", "--family", "planar-planted", "--params", '{"a": 3, "b": 4, "plant": 2}', "-o", str(inst)])
    assert main(["solve", str(inst), "--budget", "0"]) == 3


def test_verify_reports(tmp_path, capsys):
    G = planar_planted(3, 3, plant=1, seed=0)
    assert verify(G, trials=20).ok
    rep = verify(G, assume_consistent=True, trials=5)
    assert not rep.ok
    assert "FAIL parity-consistent" in rep.text()


def test_verify_names_corrupted_rotation(tmp_path, capsys):
    data = graph_to_dict(planar_cycle(4))
    data["rot"]["0"] = data["rot"]["0"][:1]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    assert main(["verify", str(path)]) == 2
    assert "rotation" in capsys.readouterr().err
