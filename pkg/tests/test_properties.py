from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from surfstab.generators import proj_k4, proj_quad, proj_triangle
from surfstab.instance_io import format_fraction, parse_fraction
from surfstab.oracles import oracle_mwss
from surfstab.pipeline import solve

weights = st.fractions(min_value=-5, max_value=20, max_denominator=12)


@given(st.fractions(max_denominator=10**6))
def test_fraction_text_roundtrip(q):
    assert parse_fraction(format_fraction(q)) == q


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["triangle", "k4", "quad25", "quad23p"]), st.lists(weights, min_size=11, max_size=11))
def test_solve_matches_oracle_for_any_weights(shape, ws):
    G = {"triangle": proj_triangle(), "k4": proj_k4(), "quad25": proj_quad(2, 5),
         "quad23p": proj_quad(2, 3, plant=2, seed=1)}[shape]
    G = G.with_weights({v: ws[i] for i, v in enumerate(G.vertices)})
    assert solve(G).weight == oracle_mwss(G)[0]
    assert solve(G).weight >= Fraction(0)
