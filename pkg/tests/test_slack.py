from __future__ import annotations

import random
from fractions import Fraction

import pytest

from surfstab.dual import build_dual_representation
from surfstab.errors import InstanceError
from surfstab.preprocess import StandardInstance
from surfstab.slack import clamp_to_unit, omega_walk, sigma, sigma_inverse


def test_sigma_of_zero_is_all_ones(k4):
    assert set(sigma(k4, {v: 0 for v in k4.vertices}).values()) == {1}


def test_sigma_roundtrip_and_even_walks(k4):
    inst = StandardInstance.build(k4)
    rep = build_dual_representation(inst)
    rng = random.Random(0)
    for _ in range(200):
        x = {v: rng.randint(-5, 5) for v in k4.vertices}
        y = sigma(k4, x)
        assert sigma_inverse(k4, y, rep.odd_cycle, rep.tree) == x
        for W in rep.walks:
            assert omega_walk(W, y) == 0


def test_sigma_inverse_over_rationals(k4):
    rep = build_dual_representation(StandardInstance.build(k4))
    rng = random.Random(2)
    for _ in range(100):
        x = {v: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for v in k4.vertices}
        back = sigma_inverse(k4, sigma(k4, x), rep.odd_cycle, rep.tree, integral=False)
        assert back == x


def test_sigma_inverse_rejects_half_integral(k4):
    rep = build_dual_representation(StandardInstance.build(k4))
    y = sigma(k4, {v: Fraction(1, 2) for v in k4.vertices})
    with pytest.raises(InstanceError):
        sigma_inverse(k4, y, rep.odd_cycle, rep.tree)


def test_sigma_inverse_rejects_non_image(k4):
    inst = StandardInstance.build(k4)
    rep = build_dual_representation(inst)
    y = {e: 0 for e in k4.edge_ids}
    y[k4.edge_ids[0]] = 1
    with pytest.raises(InstanceError):
        sigma_inverse(k4, y, rep.odd_cycle, rep.tree)


def test_clamp_keeps_feasible_and_weight(triangle):
    G = triangle.with_weights({0: 2, 1: 2, 2: 2})
    x = {0: 1, 1: 0, 2: -3}
    z = clamp_to_unit(G, x)
    assert z == {0: 1, 1: 0, 2: 0}


def test_clamp_rejects_infeasible(triangle):
    with pytest.raises(InstanceError):
        clamp_to_unit(triangle, {0: 1, 1: 1, 2: 0})
