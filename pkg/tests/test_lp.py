from __future__ import annotations

import random
from fractions import Fraction

from surfstab.lp import LinearModel, lp_optimize


def _random_model(rng):
    M = LinearModel()
    n = rng.randint(1, 5)
    xs = [M.add_var(f"v{i}", 0, rng.choice([None, rng.randint(1, 4)])) for i in range(n)]
    for _ in range(rng.randint(1, 5)):
        row = {x: Fraction(rng.randint(-3, 4), rng.randint(1, 3)) for x in xs if rng.random() < 0.7}
        M.add_constraint(row, rng.choice(["<=", "<=", "=", ">="]), Fraction(rng.randint(0, 6), rng.randint(1, 2)))
    for x in xs:
        M.add_constraint({x: 1}, "<=", 10, tag="box")
    return M, {x: Fraction(rng.randint(-4, 6), rng.randint(1, 3)) for x in xs}


def test_zero_objective_is_zero():
    M = LinearModel()
    M.add_var("a", 0, 1)
    assert lp_optimize(M, {}, "MAX").value == 0


def test_certified_and_exact_agree_and_roundtrip():
    rng = random.Random(11)
    for _ in range(150):
        M, obj = _random_model(rng)
        a = lp_optimize(M, obj, "MAX", method="exact")
        b = lp_optimize(M, obj, "MAX", method="auto")
        assert a.status == b.status
        if a.status == "optimal":
            assert a.value == b.value
            assert M.is_feasible(b.x)[0]
        M.objective = obj
        again = LinearModel.from_lpx(M.to_lpx())
        assert again.to_lpx() == M.to_lpx()


def test_infeasible_detected():
    M = LinearModel()
    M.add_var("a", 0, 1)
    M.add_constraint({"a": 1}, ">=", 2)
    assert lp_optimize(M, {"a": 1}, "MAX", method="exact").status == "infeasible"
