"""Maximum average degree, arboricity and the digit-layer acyclic colouring."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import networkx as nx

from .core import GraphBuilder, GraphError, NmGraph, Signature, UndirectedGraph
from .solver import DEFAULT_CONFIG, InvariantViolation, SearchConfig, exact_chromatic
from .verify import Homomorphism, SizeGuardError, Verdict, is_acyclic_coloring

NASH_WILLIAMS_MAX_VERTICES = 12
MAD_EXHAUSTIVE_MAX_VERTICES = 20
ACYCLIC_MAX_VERTICES = 40
ARB_BOUND_MAX_VERTICES = 5


# -- maximum average degree ---------------------------------------------------


def _densest_gain(g: UndirectedGraph, density: Fraction) -> tuple[Fraction, list[int]]:
    """Maximise ``e(H) - density * |H|`` over vertex sets ``H`` by a minimum cut.

    Source -> edge node (capacity ``q``), edge node -> its endpoints (unbounded),
    vertex -> sink (capacity ``p``) for ``density = p/q``; the source side of a
    minimum cut is an optimal closure.
    """
    num, den = density.numerator, density.denominator
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for idx, (u, v) in enumerate(g.sorted_edges()):
        net.add_edge("s", ("e", idx), capacity=den)
        net.add_edge(("e", idx), ("v", u))
        net.add_edge(("e", idx), ("v", v))
    for u in g.vertices:
        net.add_edge(("v", u), "t", capacity=num)
    cut, (side, _) = nx.minimum_cut(net, "s", "t")
    chosen = sorted(x[1] for x in side if isinstance(x, tuple) and x[0] == "v")
    return Fraction(den * len(g.edges) - cut, den), chosen


def _edge_count(g: UndirectedGraph, keep) -> int:
    keep = set(keep)
    return sum(1 for u, v in g.edges if u in keep and v in keep)


def mad(g: UndirectedGraph) -> Fraction:
    """Exact ``max 2|E(H)|/|V(H)|`` over non-empty subgraphs.

    Dinkelbach iteration: starting from the density of ``g``, repeatedly jump to
    the density of the subgraph maximising ``e(H) - d|H|`` until no subgraph
    beats the current density ``d``.
    """
    if g.num_vertices == 0:
        raise GraphError("mad is undefined for the empty graph")
    if not g.edges:
        return Fraction(0)
    density = Fraction(len(g.edges), g.num_vertices)
    while True:
        gain, chosen = _densest_gain(g, density)
        if gain <= 0:
            return 2 * density
        better = Fraction(_edge_count(g, chosen), len(chosen))
        if better <= density:
            raise InvariantViolation("densest-subgraph step did not improve the density")
        density = better


def mad_exhaustive(g: UndirectedGraph) -> Fraction:
    """Same quantity by enumerating every vertex subset; at most 20 vertices."""
    n = g.num_vertices
    if n == 0:
        raise GraphError("mad is undefined for the empty graph")
    if n > MAD_EXHAUSTIVE_MAX_VERTICES:
        raise SizeGuardError(f"exhaustive mad is limited to {MAD_EXHAUSTIVE_MAX_VERTICES} vertices")
    emask = [(1 << u) | (1 << v) for u, v in g.edges]
    best = Fraction(0)
    for s in range(1, 1 << n):
        e = sum(1 for m in emask if m & s == m)
        d = Fraction(2 * e, s.bit_count())
        if d > best:
            best = d
    return best


# -- arboricity -------------------------------------------------------------------


@dataclass(frozen=True)
class ForestDecomposition:
    """Assignment of every edge ``(u, v)``, ``u < v``, to a forest index in ``1..r``."""

    r: int
    assignment: dict

    def forests(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.r)]
        for e, q in sorted(self.assignment.items()):
            out[q - 1].append(e)
        return out

    def validate(self, g: UndirectedGraph) -> Verdict:
        """Classes partition ``E(g)`` and each is acyclic; witness names the problem."""
        if set(self.assignment) != set(g.edges):
            return Verdict(False, ("not a partition of the edge set",))
        parent: dict = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for (u, v), q in sorted(self.assignment.items()):
            if not 1 <= q <= self.r:
                return Verdict(False, ("forest index out of range", (u, v), q))
            a, b = find((q, u)), find((q, v))
            if a == b:
                return Verdict(False, ("cycle", q, (u, v)))
            parent[a] = b
        return Verdict(True)


class _Forests:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[set[int]]] = []
        self.where: dict[tuple[int, int], int] = {}

    def new_forest(self) -> int:
        self.adj.append([set() for _ in range(self.n)])
        return len(self.adj) - 1

    def add(self, e, i):
        u, v = e
        self.adj[i][u].add(v)
        self.adj[i][v].add(u)
        self.where[e] = i

    def remove(self, e):
        i = self.where.pop(e)
        u, v = e
        self.adj[i][u].discard(v)
        self.adj[i][v].discard(u)

    def path(self, i, e):
        """Edges of the ``u-v`` path in forest ``i``, or None if ``u, v`` are disconnected."""
        u, v = e
        adj = self.adj[i]
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y in sorted(adj[x]):
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        if v not in prev:
            return None
        out = []
        x = v
        while prev[x] is not None:
            p = prev[x]
            out.append((min(p, x), max(p, x)))
            x = p
        return out

    def augment(self, e) -> bool:
        """Insert ``e`` by a shortest exchange sequence; False if the forests are saturated."""
        parent = {e: None}
        via: dict = {}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            home = self.where.get(x)
            for i in range(len(self.adj)):
                if i == home:
                    continue
                path = self.path(i, x)
                if path is None:
                    self._apply(x, i, parent, via)
                    return True
                for y in path:
                    if y not in parent:
                        parent[y] = x
                        via[y] = i
                        queue.append(y)
        return False

    def _apply(self, last, forest, parent, via):
        cur, target = last, forest
        while cur is not None:
            if cur in self.where:
                self.remove(cur)
            self.add(cur, target)
            prev = parent[cur]
            if prev is not None:
                # prev takes the slot in the forest cur just left
                target = via[cur]
            cur = prev


def arboricity(g: UndirectedGraph) -> tuple[int, ForestDecomposition]:
    """Minimum number of forests covering ``E(g)``, with a decomposition.

    Edges are inserted one at a time by matroid-union augmentation; a new
    forest is opened only when no exchange sequence exists, which certifies
    that the current prefix needs one more forest.
    """
    forests = _Forests(g.num_vertices)
    for e in g.sorted_edges():
        if not forests.augment(e):
            forests.add(e, forests.new_forest())
    r = len(forests.adj)
    dec = ForestDecomposition(r, {e: i + 1 for e, i in forests.where.items()})
    verdict = dec.validate(g)
    if not verdict:
        raise InvariantViolation(f"invalid forest decomposition: {verdict.witness}")
    return r, dec


def nash_williams(g: UndirectedGraph) -> int:
    """``max ceil(|E(H)| / (|V(H)| - 1))`` over vertex subsets; at most 12 vertices."""
    n = g.num_vertices
    if n > NASH_WILLIAMS_MAX_VERTICES:
        raise SizeGuardError(f"brute-force Nash-Williams is limited to {NASH_WILLIAMS_MAX_VERTICES} vertices")
    emask = [(1 << u) | (1 << v) for u, v in g.edges]
    best = 0
    for s in range(1, 1 << n):
        k = s.bit_count()
        if k < 2:
            continue
        e = sum(1 for m in emask if m & s == m)
        best = max(best, -(-e // (k - 1)))
    return best


# -- acyclic colouring from digit layers ---------------------------------------


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    @property
    def palette(self) -> int:
        return len(set(self.colors))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)


def ceil_log(base: int, x: int) -> int:
    """Smallest ``b >= 0`` with ``base**b >= x``."""
    b, power = 0, 1
    while power < x:
        power *= base
        b += 1
    return b


def forest_digits(q: int, base: int, width: int) -> list[int]:
    """``width`` base-``base`` digits of ``q mod base**width``, most significant first."""
    q %= base**width
    return [(q // base ** (width - 1 - i)) % base for i in range(width)]


def digit_graphs(
    g: UndirectedGraph,
    dec: ForestDecomposition,
    sig: Signature,
    order: list[int] | None = None,
) -> list[NmGraph]:
    """Layers ``G_0..G_b`` on ``und = g``, with ``b = ceil(log_p r)``.

    In ``G_0`` the later endpoint (in ``order``) of every edge is a 1-neighbour
    of the earlier one.  In ``G_l`` an edge of forest ``q`` gets view type
    ``digit_l(q) + 1`` from its earlier endpoint.
    """
    verdict = dec.validate(g)
    if not verdict:
        raise GraphError(f"invalid forest decomposition: {verdict.witness}")
    if order is None:
        order = list(g.vertices)
    if sorted(order) != list(g.vertices):
        raise GraphError("order is not a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    p = sig.p
    b = ceil_log(p, dec.r)
    oriented = []
    for e in g.sorted_edges():
        u, v = sorted(e, key=pos.__getitem__)
        oriented.append((u, v, forest_digits(dec.assignment[e], p, b)))
    layers = []
    for level in range(b + 1):
        gb = GraphBuilder(sig, g.num_vertices)
        for u, v, digits in oriented:
            gb.set_adjacency(u, v, 1 if level == 0 else digits[level - 1] + 1)
        layers.append(gb.build())
    return layers


def _layer_chromatic(args):
    layer, cfg = args
    return exact_chromatic(layer, cfg=cfg)


def acyclic_coloring_construct(
    g: UndirectedGraph,
    sig: Signature,
    cfg: SearchConfig = DEFAULT_CONFIG,
    workers: int = 1,
) -> tuple[Coloring, list[tuple[NmGraph, Homomorphism]]]:
    """Acyclic colouring ``v -> (f_0(v), ..., f_b(v))`` from minimum quotients of the digit layers.

    Colours are the distinct tuples, numbered in sorted order.
    """
    if g.num_vertices > ACYCLIC_MAX_VERTICES:
        raise SizeGuardError(f"{g.num_vertices} vertices exceeds the guard {ACYCLIC_MAX_VERTICES}")
    _, dec = arboricity(g)
    layers = digit_graphs(g, dec, sig)
    if workers > 1 and len(layers) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_layer_chromatic, [(layer, cfg) for layer in layers]))
    else:
        results = [exact_chromatic(layer, cfg=cfg) for layer in layers]
    homs = [cert.witness for _, cert in results]
    tuples = [tuple(h.mapping[v] for h in homs) for v in g.vertices]
    index = {t: i for i, t in enumerate(sorted(set(tuples)))}
    coloring = Coloring(tuple(index[t] for t in tuples))
    verdict = is_acyclic_coloring(g, coloring)
    if not verdict:
        raise InvariantViolation(f"product colouring is not acyclic: {verdict.witness}")
    return coloring, list(zip(layers, homs))


def palette_bound(layers: list[tuple[NmGraph, Homomorphism]]) -> int:
    """``k ** (b + 1)`` where ``k`` is the largest layer quotient size."""
    k = max((h.target.num_vertices for _, h in layers), default=0)
    return k ** len(layers)


# -- arboricity versus chromatic number ------------------------------------------


def arb_bound_value(k: int, p: int) -> int:
    """``ceil(log_p k + k/2)`` in exact integer arithmetic."""
    t = 0
    # t >= log_p k + k/2  <=>  2t - k >= 0 and p**(2t - k) >= k**2
    while 2 * t - k < 0 or p ** (2 * t - k) < k * k:
        t += 1
    return t


def graph_chromatic_number(g: UndirectedGraph, sig: Signature, cfg: SearchConfig = DEFAULT_CONFIG) -> int:
    """Maximum of ``chi_{n,m}`` over every typing of ``g``'s edges."""
    edges = g.sorted_edges()
    best = 1 if g.num_vertices else 0
    for types in product(sig.view_types, repeat=len(edges)):
        b = GraphBuilder(sig, g.num_vertices)
        for (u, v), a in zip(edges, types):
            b.set_adjacency(u, v, a)
        k, _ = exact_chromatic(b.build(), cfg=cfg)
        best = max(best, k)
    return best


def check_arb_bound(g: UndirectedGraph, sig: Signature, cfg: SearchConfig = DEFAULT_CONFIG) -> bool:
    """``arb(g) <= ceil(log_p k + k/2)`` with ``k`` the graph-level chromatic number."""
    if g.num_vertices > ARB_BOUND_MAX_VERTICES or sig.p != 2:
        raise SizeGuardError("check_arb_bound needs at most 5 vertices and 2n+m = 2")
    r, _ = arboricity(g)
    k = graph_chromatic_number(g, sig, cfg)
    return r <= arb_bound_value(k, sig.p)
