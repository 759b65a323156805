"""Explicit target graphs.

* :func:`walecki_target` -- the complete ``(n, m)``-graph on ``2p+1`` vertices
  built from the Walecki Hamiltonian decomposition of ``K_{2p+1}``.
* :func:`t03` -- a ``(0, 3)``-graph on ``Z/5 x Z/3`` (15 vertices).
* :func:`t11` -- a ``(1, 1)``-graph on ``Z/7 x Z/3`` (21 vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import GraphBuilder, NmGraph, Signature, TypeRangeError

INF = "inf"


@dataclass(frozen=True)
class WaleckiCycle:
    """Hamiltonian cycle ``C_j`` of ``K_{2p+1}`` on ``{inf} u Z/2p``.

    ``sequence`` lists the ``2p+1`` vertices starting at ``inf``; the cycle
    closes from the last entry back to ``inf``.
    """

    p: int
    j: int
    sequence: tuple

    def edges(self) -> list[tuple]:
        seq = self.sequence
        return [(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]

    def index(self, x) -> int:
        """Vertex index used by :func:`walecki_target`: residues keep their value, ``inf`` is ``2p``."""
        return 2 * self.p if x == INF else x

    def index_sequence(self) -> list[int]:
        return [self.index(x) for x in self.sequence]


def walecki_cycle(p: int, j: int) -> WaleckiCycle:
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    if not 0 <= j < p:
        raise ValueError(f"cycle index {j} outside 0..{p - 1}")
    mod = 2 * p
    seq: list = [INF, j % mod]
    for s in range(1, p):
        seq.append((j + s) % mod)
        seq.append((j - s) % mod)
    seq.append((j + p) % mod)
    return WaleckiCycle(p, j, tuple(seq))


def walecki_target(sig: Signature) -> NmGraph:
    """Complete ``(n, m)``-graph on ``2p+1`` vertices, ``p = 2n+m``.

    Arc type ``a`` orients cycles ``C_{a-2}`` and ``C_{a-1}`` along their listed
    sequence; edge type ``a`` is carried by ``C_{a-1}``.  Vertex ``2p`` is ``inf``.
    """
    p = sig.p
    if p < 2:
        raise TypeRangeError(f"walecki target needs 2n+m >= 2, got {p}")
    labels = [str(i) for i in range(2 * p)] + [INF]
    b = GraphBuilder(sig, 2 * p + 1, labels)
    for a in sig.arc_types:
        for j in (a - 2, a - 1):
            cyc = walecki_cycle(p, j).index_sequence()
            for i in range(len(cyc)):
                b.set_adjacency(cyc[i], cyc[(i + 1) % len(cyc)], a)
    for a in sig.edge_types:
        cyc = walecki_cycle(p, a - 1).index_sequence()
        for i in range(len(cyc)):
            b.set_adjacency(cyc[i], cyc[(i + 1) % len(cyc)], a)
    return b.build()


def _rep3(x: int) -> int:
    r = x % 3
    return 3 if r == 0 else r


SQUARES_5 = frozenset({1, 4})
SQUARES_7 = frozenset({1, 2, 4})


def t03_vertex(i: int, j: int) -> int:
    return 3 * (i % 5) + (j % 3)


def t11_vertex(i: int, j: int) -> int:
    return 3 * (i % 7) + (j % 3)


def t03() -> NmGraph:
    """``(0, 3)``-graph on ``Z/5 x Z/3``.

    Vertices in the same ``i``-layer are non-adjacent.  Otherwise the edge
    colour is ``1+j+j'`` when ``i'-i`` is a non-zero square mod 5 and
    ``2+j+j'`` when it is not, both read in ``{1, 2, 3}`` with ``0 -> 3``.
    """
    sig = Signature(0, 3)
    cells = [(i, j) for i in range(5) for j in range(3)]
    b = GraphBuilder(sig, 15, [f"({i},{j})" for i, j in cells])
    for (i, j), (i2, j2) in combinations(cells, 2):
        if i == i2:
            continue
        shift = 1 if (i2 - i) % 5 in SQUARES_5 else 2
        b.set_adjacency(t03_vertex(i, j), t03_vertex(i2, j2), _rep3(shift + j + j2))
    return b.build()


def t11() -> NmGraph:
    """``(1, 1)``-graph on ``Z/7 x Z/3``.

    Within a ``j``-layer, ``(i,j) -> (i',j)`` is a type-2 arc when ``i'-i`` is a
    non-zero square mod 7.  Between ``j`` and ``j+1`` the pair is a type-3 edge
    if ``i'-i`` is a square, otherwise a type-2 arc ``(i',j+1) -> (i,j)``.
    """
    sig = Signature(1, 1)
    cells = [(i, j) for i in range(7) for j in range(3)]
    b = GraphBuilder(sig, 21, [f"({i},{j})" for i, j in cells])
    for i, j in cells:
        u = t11_vertex(i, j)
        for i2 in range(7):
            if i2 == i:
                continue
            square = (i2 - i) % 7 in SQUARES_7
            if square:
                b.set_adjacency(u, t11_vertex(i2, j), 2)
            # each unordered cross-layer pair is visited once, from the lower layer j
            v = t11_vertex(i2, j + 1)
            if square:
                b.set_adjacency(u, v, 3)
            else:
                b.set_adjacency(v, u, 2)
    return b.build()


def complete_augment(h: NmGraph, fill: int) -> NmGraph:
    """Add ``v in N^fill(u)`` (``u < v``) for every non-adjacent pair of ``h``."""
    if not 1 <= fill <= h.signature.p:
        raise TypeRangeError(f"fill type {fill} outside 1..{h.signature.p}")
    b = GraphBuilder.from_graph(h)
    for u, v in combinations(h.vertices, 2):
        if not b.is_adjacent(u, v):
            b.set_adjacency(u, v, fill)
    return b.build()


__all__ = [
    "INF",
    "WaleckiCycle",
    "walecki_cycle",
    "walecki_target",
    "t03",
    "t11",
    "t03_vertex",
    "t11_vertex",
    "complete_augment",
]
