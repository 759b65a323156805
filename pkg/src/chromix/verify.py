"""Decision procedures for properties of finite ``(n, m)``-graphs.

Every checker returns a :class:`Verdict`, which is truthy exactly when the
property holds and otherwise carries a witness of the failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Mapping, Sequence

from .core import GraphError, NmGraph, UndirectedGraph

EXPANSION_MAX_VERTICES = 24


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


class DomainError(GraphError):
    """A map or colouring is not total on the source vertices."""


class SizeGuardError(ValueError):
    """Input exceeds the guard of an exponential procedure."""


@dataclass(frozen=True)
class Homomorphism:
    """Vertex map ``source -> target``; ``mapping[u]`` is the image of ``u``."""

    source: NmGraph
    target: NmGraph
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))

    def __getitem__(self, u: int) -> int:
        return self.mapping[u]


@dataclass(frozen=True)
class ConflictRelation:
    """Unordered vertex pairs that can never share an image."""

    num_vertices: int
    pairs: frozenset = field(default_factory=frozenset)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return (min(u, v), max(u, v)) in self.pairs

    def as_graph(self) -> UndirectedGraph:
        return UndirectedGraph(self.num_vertices, self.pairs)


def _as_mapping(mapping: Sequence[int] | Mapping[int, int], n: int) -> list[int]:
    if isinstance(mapping, Mapping):
        missing = [u for u in range(n) if u not in mapping]
        if missing:
            raise DomainError(f"map undefined on vertices {missing[:5]}")
        return [mapping[u] for u in range(n)]
    if len(mapping) != n:
        raise DomainError(f"map has {len(mapping)} entries for {n} vertices")
    return list(mapping)


def is_homomorphism(h: Homomorphism) -> Verdict:
    """Check that every typed adjacency is preserved; witness ``(u, v, alpha)``."""
    g, t = h.source, h.target
    if g.signature != t.signature:
        raise GraphError(f"signature mismatch {g.signature} vs {t.signature}")
    f = _as_mapping(h.mapping, g.num_vertices)
    for x in f:
        if not 0 <= x < t.num_vertices:
            raise DomainError(f"image {x} is not a target vertex")
    for u, v, a in g.adjacencies():
        if t.adjacency(f[u], f[v]) != a:
            return Verdict(False, (u, v, a))
    return Verdict(True)


def has_p21(t: NmGraph) -> Verdict:
    """Every adjacent pair ``u, v`` has ``N^a(u) & N^b(v)`` non-empty for all ``a, b``.

    Witness on failure: ``(u, v, a, b)``.
    """
    masks = t.masks
    types = t.signature.view_types
    for u, v, _ in t.adjacencies():
        for a in types:
            mu = masks[a][u]
            for b in types:
                if not mu & masks[b][v]:
                    return Verdict(False, (u, v, a, b))
    return Verdict(True)


def p21_failure_is_genuine(t: NmGraph, witness) -> bool:
    u, v, a, b = witness
    return t.adjacency(u, v) is not None and not (t.neighbors(u, a) & t.neighbors(v, b))


def expansion_ok(t: NmGraph) -> Verdict:
    """``|S| < |N^a(S)|`` for every non-empty proper ``S`` and every type ``a``.

    Subsets are enumerated by increasing size; the first failure is reported
    as ``(sorted S, a)``.
    """
    n = t.num_vertices
    if n > EXPANSION_MAX_VERTICES:
        raise SizeGuardError(f"{n} vertices exceeds the expansion guard {EXPANSION_MAX_VERTICES}")
    masks = t.masks
    types = t.signature.view_types
    for size in range(1, n):
        for subset in combinations(range(n), size):
            for a in types:
                row = masks[a]
                nb = 0
                for s in subset:
                    nb |= row[s]
                if nb.bit_count() <= size:
                    return Verdict(False, (list(subset), a))
    return Verdict(True)


def regularity_check(t: NmGraph, d: int) -> Verdict:
    """Every vertex has exactly ``d`` ``a``-neighbours for every ``a``; witness ``(u, a, count)``."""
    for u in t.vertices:
        for a in t.signature.view_types:
            c = len(t.neighbors(u, a))
            if c != d:
                return Verdict(False, (u, a, c))
    return Verdict(True)


def forbidden_config_free(t: NmGraph) -> Verdict:
    """No ``x, y, z`` in ``N^a(u)`` with ``x, z`` both ``g``-neighbours of ``y``.

    Witness: ``(u, y, a, g, x, z)``.
    """
    masks = t.masks
    types = t.signature.view_types
    for u in t.vertices:
        for a in types:
            s = masks[a][u]
            if s.bit_count() < 3:
                continue
            for y in _bits(s):
                for g in types:
                    both = masks[g][y] & s
                    if both.bit_count() >= 2:
                        x, z = list(_bits(both))[:2]
                        return Verdict(False, (u, y, a, g, x, z))
    return Verdict(True)


def conflict_relation(g: NmGraph) -> ConflictRelation:
    """Pairs that are adjacent or joined by a special 2-path ``u v w``.

    A 2-path is special when ``v in N^a(u) & N^b(w)`` with ``a != b``.
    """
    pairs = set()
    for u, v, _ in g.adjacencies():
        pairs.add((u, v))
    for v in g.vertices:
        # view[v][u] = a means u in N^a(v), so v in N^dual(a)(u)
        seen = sorted((u, g.signature.dual(a)) for u, a in g.view[v].items())
        for (u, a), (w, b) in combinations(seen, 2):
            if a != b:
                pairs.add((u, w) if u < w else (w, u))
    return ConflictRelation(g.num_vertices, frozenset(pairs))


def is_acyclic_coloring(g: UndirectedGraph, coloring) -> Verdict:
    """Proper colouring whose every two-colour subgraph is a forest.

    Witness: ``("improper", u, v)`` or ``("cycle", color_a, color_b, (u, v))``
    where ``(u, v)`` is the edge closing a bichromatic cycle.
    """
    colors = getattr(coloring, "colors", coloring)
    c = _as_mapping(colors, g.num_vertices)
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for u, v in g.sorted_edges():
        if c[u] == c[v]:
            return Verdict(False, ("improper", u, v))
        key = (min(c[u], c[v]), max(c[u], c[v]))
        ru, rv = find((key, u)), find((key, v))
        if ru == rv:
            return Verdict(False, ("cycle", key[0], key[1], (u, v)))
        parent[ru] = rv
    return Verdict(True)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
