"""The slack map between vertex vectors and edge vectors.

``sigma(x)(uv) = 1 - x(u) - x(v)`` sends a point of the stable set
relaxation to its edge slacks.  On connected non-bipartite graphs it is
injective, and an inverse is obtained by fixing one value on an odd cycle
and propagating along a spanning tree.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Mapping

from .embedding import EmbeddedGraph, OddOneTree, Walk
from .errors import InstanceError, InternalError


def sigma(G: EmbeddedGraph, x: Mapping[int, object]) -> dict[int, object]:
    return {e.id: 1 - x[e.u] - x[e.v] for e in G.edges()}


def omega_walk(W: Walk, y: Mapping[int, object]):
    """Alternating sum ``y(e1) - y(e2) + y(e3) - ...`` along the stored walk."""
    total = 0
    for i, e in enumerate(W.edges):
        total = total + y[e] if i % 2 == 0 else total - y[e]
    return total


def sigma_inverse(G: EmbeddedGraph, y: Mapping[int, object], C: Walk, T: OddOneTree,
                  integral: bool = True) -> dict[int, object]:
    """The unique ``x`` with ``sigma(x) = y``, or InstanceError if none exists.

    ``x`` at the start of the odd cycle ``C`` is ``(1 - omega_C(y)) / 2``;
    every other value follows from ``x(w) = 1 - y(vw) - x(v)`` along ``T``.
    With ``integral`` set, an integer ``y`` whose preimage would be
    half-integral is refused.
    """
    if not C.closed or C.length % 2 == 0:
        raise InstanceError("sigma_inverse needs an odd closed walk")
    oc = omega_walk(C, y)
    if integral and Fraction(oc).denominator == 1 and int(oc) % 2 == 0:
        raise InstanceError("omega_C(y) is even; y is not in the image of sigma over the integers")
    v0 = C.start
    half = Fraction(1 - oc, 2)
    x = {v0: half.numerator if half.denominator == 1 else half}
    queue = deque([v0])
    neighbours: dict[int, list[tuple[int, int]]] = {}
    for v, p in T.parent.items():
        if p is not None:
            eid = T.parent_edge[v]
            neighbours.setdefault(v, []).append((p, eid))
            neighbours.setdefault(p, []).append((v, eid))
    while queue:
        v = queue.popleft()
        for u, eid in neighbours.get(v, ()):
            if u not in x:
                x[u] = 1 - y[eid] - x[v]
                queue.append(u)
    if len(x) != G.n:
        raise InstanceError("odd 1-tree does not span the graph")
    back = sigma(G, x)
    bad = [e for e in G.edge_ids if back[e] != y[e]]
    if bad:
        raise InstanceError(f"y is not in the image of sigma (edge {bad[0]} disagrees)")
    return x


def clamp_to_unit(G: EmbeddedGraph, x: Mapping[int, object]) -> dict[int, int]:
    """Clamp an integral ``x`` with ``Mx <= 1`` into ``{0,1}``.

    On each edge at most one end can exceed 1 and then the other end is
    ``<= 0``; clamping keeps the edge sum ``<= 1``.  With edge-induced weights,
    ``w(x) = sum_e c(e)(x(u) + x(v))`` and every edge term can only grow.
    Both facts are checked at runtime.
    """
    for e in G.edges():
        if x[e.u] + x[e.v] > 1:
            raise InstanceError(f"x violates edge {e.id}; clamp needs Mx <= 1")
    out = {v: (1 if x[v] >= 1 else 0) for v in G.vertices}
    for e in G.edges():
        if out[e.u] + out[e.v] > 1:
            raise InternalError(f"clamped point violates edge {e.id}")
    before = sum((G.weight(v) * x[v] for v in G.vertices), Fraction(0))
    after = sum((G.weight(v) * out[v] for v in G.vertices), Fraction(0))
    if after < before:
        raise InternalError(f"clamp lost weight ({after} < {before})")
    return out
