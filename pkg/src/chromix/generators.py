"""Instance generators.  Every generator is a pure function of its arguments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import GraphBuilder, NmGraph, Signature, TypeRangeError, UndirectedGraph, underlying


@dataclass(frozen=True)
class GenSpec:
    """Seed, signature and tuning knobs shared by the random generators.

    ``delete_prob`` is the per-edge deletion probability for partial 2-trees.
    ``min_chain`` overrides the minimum number of internal vertices per chain
    in :func:`random_low_mad` (default ``2(2n+m)``).
    """

    seed: int
    signature: Signature
    delete_prob: float = 0.2
    min_chain: int | None = None


def kclique_gadget(k: int, sig: Signature) -> NmGraph:
    """``K_k`` with every edge replaced by a special 2-path.

    Vertices ``0..k-1`` are the original ones; the middle vertex ``x`` of pair
    ``u < w`` satisfies ``x in N^1(u)`` and ``x in N^2(w)``.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if sig.p < 2:
        raise TypeRangeError("the gadget needs at least two view types")
    b = GraphBuilder(sig, k)
    for u, w in combinations(range(k), 2):
        x = b.add_vertex()
        b.set_adjacency(u, x, 1)
        b.set_adjacency(w, x, 2)
    return b.build()


def random_partial_2tree(nv: int, spec: GenSpec) -> NmGraph:
    """Random 2-tree thinned by edge deletion, with uniform random view types.

    The base edge ``0-1`` is never deleted.
    """
    if nv < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(spec.seed)
    sig = spec.signature
    edges = [(0, 1)]
    for v in range(2, nv):
        u, w = edges[rng.randrange(len(edges))]
        edges.append((u, v))
        edges.append((w, v))
    kept = [edges[0]] + [e for e in edges[1:] if rng.random() >= spec.delete_prob]
    b = GraphBuilder(sig, nv)
    for u, v in kept:
        b.set_adjacency(u, v, rng.randint(1, sig.p))
    return b.build()


def low_mad_threshold(sig: Signature) -> Fraction:
    """``2 + 2/(4p - 1)`` for ``p = 2n+m``."""
    return 2 + Fraction(2, 4 * sig.p - 1)


def _subcubic_skeleton(s: int, rng: random.Random) -> list[tuple[int, int]]:
    """Random simple graph on ``s`` vertices with maximum degree 3, built on a Hamiltonian cycle."""
    perm = list(range(s))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[i], perm[(i + 1) % s]))) for i in range(s)}
    deg = [2] * s
    pairs = [(u, v) for u, v in combinations(range(s), 2) if (u, v) not in edges]
    rng.shuffle(pairs)
    for u, v in pairs:
        if deg[u] < 3 and deg[v] < 3:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return sorted(edges)


def subdivided_skeleton(nv: int, chain: int, rng: random.Random) -> UndirectedGraph:
    """Subcubic skeleton whose edges become paths with at least ``chain`` internal vertices.

    Spare vertices are spread over the chains so the result has exactly ``nv``
    vertices; when even a triangle does not fit, the result is the cycle ``C_nv``.
    """
    if nv < 3:
        raise ValueError("need at least three vertices")
    skeleton_seed = rng.getrandbits(32)
    skeleton = None
    for s in range(int(nv / (1 + 1.5 * chain)) + 2, 2, -1):
        cand = _subcubic_skeleton(s, random.Random(skeleton_seed + s))
        if s + len(cand) * chain <= nv:
            skeleton = cand
            break
    if skeleton is None:
        return UndirectedGraph(nv, [(i, (i + 1) % nv) for i in range(nv)])
    lengths = [chain] * len(skeleton)
    for _ in range(nv - s - chain * len(skeleton)):
        lengths[rng.randrange(len(lengths))] += 1
    edges = []
    nxt = s
    for (u, v), length in zip(skeleton, lengths):
        path = [u] + list(range(nxt, nxt + length)) + [v]
        nxt += length
        edges += list(zip(path, path[1:]))
    return UndirectedGraph(nv, edges)


def random_low_mad(nv: int, spec: GenSpec) -> NmGraph:
    """Subdivided subcubic skeleton with ``mad < 2 + 2/(4(2n+m)-1)`` and random types.

    Chains start with ``2(2n+m)`` internal vertices and are lengthened until
    the exact maximum average degree is below the threshold.
    """
    from .sparsity import mad

    if nv < 3:
        raise ValueError("need at least three vertices")
    sig = spec.signature
    threshold = low_mad_threshold(sig)
    chain = spec.min_chain if spec.min_chain is not None else 2 * sig.p
    while True:
        rng = random.Random(spec.seed)
        und = subdivided_skeleton(nv, chain, rng)
        if mad(und) < threshold:
            break
        chain += 1
    b = GraphBuilder(sig, nv)
    for u, v in und.sorted_edges():
        b.set_adjacency(u, v, rng.randint(1, sig.p))
    g = b.build()
    assert mad(underlying(g)) < threshold
    return g


def random_graph(nv: int, edge_prob: float, seed: int) -> UndirectedGraph:
    """Erdos-Renyi ``G(nv, edge_prob)``."""
    rng = random.Random(seed)
    return UndirectedGraph(nv, [e for e in combinations(range(nv), 2) if rng.random() < edge_prob])


def random_forest_union(nv: int, forests: int, seed: int, keep: float = 0.8) -> UndirectedGraph:
    """Union of ``forests`` random forests; the arboricity is at most ``forests``."""
    rng = random.Random(seed)
    edges = set()
    for _ in range(forests):
        order = list(range(nv))
        rng.shuffle(order)
        for i in range(1, nv):
            if rng.random() < keep:
                u, v = order[i], order[rng.randrange(i)]
                edges.add((min(u, v), max(u, v)))
    return UndirectedGraph(nv, edges)


def random_typed(und: UndirectedGraph, sig: Signature, seed: int) -> NmGraph:
    """Assign every edge of ``und`` a uniform random view type from its lower endpoint."""
    rng = random.Random(seed)
    b = GraphBuilder(sig, und.num_vertices)
    for u, v in und.sorted_edges():
        b.set_adjacency(u, v, rng.randint(1, sig.p))
    return b.build()
