"""Homomorphism search, exact ``(n, m)``-chromatic numbers and partial 2-tree embedding.

Domains are bitsets over target vertices.  :func:`find_hom` is a
backtracking search that keeps typed arc consistency (or plain forward
checking), forbids equal images on conflicting pairs and runs a pigeonhole
test on one large conflict clique.  :func:`exact_chromatic` searches directly
over quotient partitions of the source graph.
"""

from __future__ import annotations

import heapq
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .core import GraphBuilder, GraphError, NmGraph, Signature, UndirectedGraph, underlying
from .verify import (
    Homomorphism,
    SizeGuardError,
    conflict_relation,
    has_p21,
    is_homomorphism,
)

CHROMATIC_MAX_VERTICES = 40
ORACLE_MAX_VERTICES = 8


class BudgetExhausted(Exception):
    """Search stopped after visiting more nodes than the configured budget.

    This is an outcome, distinct from a proof that no solution exists.
    """

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


class InvariantViolation(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    """Search knobs.

    ``order`` is ``"mrv"`` (smallest domain first) or ``"static"`` (index
    order); ``propagation`` is ``"ac"`` or ``"none"`` (forward checking only).
    ``seed`` is recorded for provenance; the search is deterministic and draws
    no random numbers.  ``workers > 1`` splits the root frontier across
    processes; results are identical to the sequential run.
    """

    order: str = "mrv"
    propagation: str = "ac"
    budget: int = 2_000_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.order not in ("mrv", "static"):
            raise ValueError(f"unknown variable order {self.order!r}")
        if self.propagation not in ("ac", "none"):
            raise ValueError(f"unknown propagation level {self.propagation!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


DEFAULT_CONFIG = SearchConfig()


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_clique(adj_masks: list[int]) -> list[int]:
    """Largest clique found by greedy extension from every start vertex."""
    best: list[int] = []
    n = len(adj_masks)
    for start in range(n):
        clique = [start]
        cand = adj_masks[start]
        while cand:
            # the candidate with most neighbours inside the candidate set
            v = max(_bits(cand), key=lambda x: ((adj_masks[x] & cand).bit_count(), -x))
            clique.append(v)
            cand &= adj_masks[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def max_clique(adj_masks: list[int]) -> list[int]:
    """Exact maximum clique by branch and bound with greedy colouring bounds."""
    best = greedy_clique(adj_masks)

    def color_bound(cand: int):
        order, bounds = [], []
        color = 0
        uncolored = cand
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj_masks[v] & ~(1 << v)
                uncolored &= ~(1 << v)
                order.append(v)
                bounds.append(color)
        return order, bounds

    def expand(clique: list[int], cand: int):
        nonlocal best
        order, bounds = color_bound(cand)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            clique.append(v)
            nxt = cand & adj_masks[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = sorted(clique)
            clique.pop()
            cand &= ~(1 << v)

    n = len(adj_masks)
    if n:
        expand([], (1 << n) - 1)
    return best


def _conflict_masks(g: NmGraph) -> list[int]:
    masks = [0] * g.num_vertices
    for u, v in conflict_relation(g).pairs:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


# -- homomorphism search ----------------------------------------------------


class _HomSearch:
    def __init__(self, g: NmGraph, h: NmGraph, cfg: SearchConfig, fixed: Mapping[int, int] | None):
        self.g, self.h, self.cfg = g, h, cfg
        self.n = g.num_vertices
        self.full = (1 << h.num_vertices) - 1
        self.tmasks = h.masks
        self.nbrs = [sorted(g.view[u].items()) for u in range(self.n)]
        adjacent = [sum(1 << v for v in g.view[u]) for u in range(self.n)]
        conf = _conflict_masks(g)
        # adjacent pairs are kept apart by the typed constraints already
        self.conf = [list(_bits(conf[u] & ~adjacent[u])) for u in range(self.n)]
        clique = greedy_clique(conf)
        self.clique = clique if len(clique) >= 3 else []
        self.fixed = dict(fixed or {})
        self.nodes = 0
        self._support: dict[tuple[int, int], int] = {}
        self.cascade = cfg.propagation == "ac"

    def support(self, a: int, dom: int) -> int:
        key = (a, dom)
        s = self._support.get(key)
        if s is None:
            row = self.tmasks[a]
            s = 0
            for x in _bits(dom):
                s |= row[x]
            self._support[key] = s
        return s

    def initial(self) -> list[int] | None:
        dom = [self.full] * self.n
        for u, x in self.fixed.items():
            if not 0 <= x < self.h.num_vertices:
                raise GraphError(f"fixed image {x} is not a target vertex")
            dom[u] = 1 << x
        if not self.propagate(dom, list(range(self.n)), initial=True):
            return None
        return dom

    def propagate(self, dom: list[int], queue: list[int], initial: bool = False) -> bool:
        cascade = self.cascade or initial
        pending = set(queue)
        queue = list(queue)
        while queue:
            u = queue.pop()
            pending.discard(u)
            du = dom[u]
            for v, a in self.nbrs[u]:
                dv = dom[v]
                new = dv & self.support(a, du)
                if new != dv:
                    if not new:
                        return False
                    dom[v] = new
                    if cascade and v not in pending:
                        pending.add(v)
                        queue.append(v)
            if du & (du - 1) == 0:
                for w in self.conf[u]:
                    dw = dom[w]
                    if dw & du:
                        dw &= ~du
                        if not dw:
                            return False
                        dom[w] = dw
                        if cascade and w not in pending:
                            pending.add(w)
                            queue.append(w)
        if self.clique:
            union = 0
            for c in self.clique:
                union |= dom[c]
            if union.bit_count() < len(self.clique):
                return False
        return True

    def select(self, dom: list[int], assigned: list[bool]) -> int | None:
        if self.cfg.order == "static":
            for u in range(self.n):
                if not assigned[u]:
                    return u
            return None
        best, best_size = None, None
        for u in range(self.n):
            if not assigned[u]:
                size = dom[u].bit_count()
                if best is None or size < best_size:
                    best, best_size = u, size
                    if size == 1:
                        break
        return best

    def branch(self, dom: list[int], assigned: list[bool], u: int, x: int) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.cfg.budget:
            raise BudgetExhausted(self.nodes)
        d2 = dom.copy()
        d2[u] = 1 << x
        if not self.propagate(d2, [u]):
            return None
        assigned[u] = True
        try:
            return self.dfs(d2, assigned)
        finally:
            assigned[u] = False

    def dfs(self, dom: list[int], assigned: list[bool]) -> list[int] | None:
        u = self.select(dom, assigned)
        if u is None:
            return dom
        for x in _bits(dom[u]):
            res = self.branch(dom, assigned, u, x)
            if res is not None:
                return res
        return None


def _run_branch(args):
    g, h, cfg, fixed, dom, u, x = args
    s = _HomSearch(g, h, cfg, fixed)
    assigned = [False] * g.num_vertices
    try:
        res = s.branch(dom, assigned, u, x)
    except BudgetExhausted:
        return "budget", None, s.nodes
    return ("found" if res is not None else "none"), res, s.nodes


def find_hom(
    g: NmGraph,
    h: NmGraph,
    cfg: SearchConfig = DEFAULT_CONFIG,
    fixed: Mapping[int, int] | None = None,
) -> Homomorphism | None:
    """A homomorphism ``g -> h``, or None once the search space is exhausted.

    ``fixed`` pins some source vertices to given images.  Raises
    :class:`BudgetExhausted` when the node budget runs out first.
    """
    if g.signature != h.signature:
        raise GraphError(f"signature mismatch {g.signature} vs {h.signature}")
    if g.num_vertices == 0:
        return Homomorphism(g, h, ())
    if h.num_vertices == 0:
        return None
    if sys.getrecursionlimit() < 4 * g.num_vertices + 200:
        sys.setrecursionlimit(4 * g.num_vertices + 200)
    s = _HomSearch(g, h, cfg, fixed)
    dom = s.initial()
    if dom is None:
        return None
    assigned = [False] * s.n
    u = s.select(dom, assigned)
    values = list(_bits(dom[u]))
    result = None
    if cfg.workers > 1 and len(values) > 1:
        jobs = [(g, h, cfg, s.fixed, dom, u, x) for x in values]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_run_branch, jobs))
        total = 0
        for status, res, nodes in outcomes:
            total += nodes
            if status == "budget" or total > cfg.budget:
                raise BudgetExhausted(total)
            if status == "found":
                result = res
                break
    else:
        for x in values:
            result = s.branch(dom, assigned, u, x)
            if result is not None:
                break
    if result is None:
        return None
    hom = Homomorphism(g, h, tuple(d.bit_length() - 1 for d in result))
    _assert_sound(hom)
    return hom


def _assert_sound(hom: Homomorphism) -> None:
    verdict = is_homomorphism(hom)
    if not verdict:
        raise InvariantViolation(f"search returned an invalid map, violated adjacency {verdict.witness}")
    f = hom.mapping
    for u, v in conflict_relation(hom.source).pairs:
        if f[u] == f[v]:
            raise InvariantViolation(f"conflicting vertices {u}, {v} share image {f[u]}")


def p21_by_extension(t: NmGraph, cfg: SearchConfig = DEFAULT_CONFIG):
    """P_{2,1} decided through the solver instead of by definition.

    For every adjacent pair ``x, y`` of ``t`` and every ``(a, b)``, the path
    ``u v`` plus a vertex ``w in N^a(u) & N^b(v)`` must map to ``t`` with
    ``u -> x`` and ``v -> y``.  Returns ``(True, None)`` or ``(False, (x, y, a, b))``.
    """
    sig = t.signature
    for x, y, c in t.adjacencies():
        for a in sig.view_types:
            for b in sig.view_types:
                pb = GraphBuilder(sig, 3)
                pb.set_adjacency(0, 1, c)
                pb.set_adjacency(0, 2, a)
                pb.set_adjacency(1, 2, b)
                if find_hom(pb.build(), t, cfg, fixed={0: x, 1: y}) is None:
                    return False, (x, y, a, b)
    return True, None


# -- exact chromatic number -------------------------------------------------


@dataclass(frozen=True)
class QuotientCertificate:
    """Partition of the source into independent classes and the induced quotient."""

    partition: tuple[int, ...]
    quotient: NmGraph
    witness: Homomorphism

    @property
    def k(self) -> int:
        return self.quotient.num_vertices


def _quotient(g: NmGraph, partition, k: int) -> NmGraph | None:
    """Quotient graph on ``k`` classes, or None when the partition is not valid."""
    table: dict[tuple[int, int], int] = {}
    for u, v, a in g.adjacencies():
        cu, cv = partition[u], partition[v]
        if cu == cv:
            return None
        key, t = ((cu, cv), a) if cu < cv else ((cv, cu), g.signature.dual(a))
        if table.setdefault(key, t) != t:
            return None
    b = GraphBuilder(g.signature, k)
    for (c, d), t in sorted(table.items()):
        b.set_adjacency(c, d, t)
    return b.build()


def _certificate(g: NmGraph, partition) -> QuotientCertificate:
    k = max(partition) + 1 if partition else 0
    q = _quotient(g, partition, k)
    if q is None:
        raise InvariantViolation("partition search produced an invalid quotient")
    hom = Homomorphism(g, q, tuple(partition))
    if not is_homomorphism(hom):
        raise InvariantViolation("quotient witness is not a homomorphism")
    return QuotientCertificate(tuple(partition), q, hom)


class _PartitionSearch:
    def __init__(self, g: NmGraph, cfg: SearchConfig):
        self.g, self.cfg = g, cfg
        self.n = g.num_vertices
        self.dual = g.signature.dual
        self.nbrs = [sorted(g.view[u].items()) for u in range(self.n)]
        self.conf = _conflict_masks(g)
        self.nodes = 0

    def run(self, k: int) -> list[int] | None:
        self.k = k
        self.cls = [-1] * self.n
        self.members = [0] * k
        self.ptype = [[0] * k for _ in range(k)]
        if self._dfs(0, 0):
            return list(self.cls)
        return None

    def _feasible(self, v: int, used: int) -> list[int]:
        out = []
        conf = self.conf[v]
        for c in range(used):
            if conf & self.members[c]:
                continue
            row = self.ptype[c]
            for x, a in self.nbrs[v]:
                d = self.cls[x]
                if d >= 0 and row[d] not in (0, a):
                    break
            else:
                out.append(c)
        return out

    def _select(self, used: int):
        best = None
        for v in range(self.n):
            if self.cls[v] >= 0:
                continue
            feas = self._feasible(v, used)
            if self.cfg.order == "static":
                return v, feas
            key = (len(feas), -len(self.nbrs[v]), v)
            if best is None or key < best[0]:
                best = (key, v, feas)
                if not feas:
                    break
        return best[1], best[2]

    def _assign(self, v: int, c: int) -> list[tuple[int, int]]:
        self.cls[v] = c
        self.members[c] |= 1 << v
        changed = []
        row = self.ptype[c]
        for x, a in self.nbrs[v]:
            d = self.cls[x]
            if d >= 0 and d != c and row[d] == 0:
                row[d] = a
                self.ptype[d][c] = self.dual(a)
                changed.append((c, d))
        return changed

    def _undo(self, v: int, c: int, changed) -> None:
        self.cls[v] = -1
        self.members[c] &= ~(1 << v)
        for a, b in changed:
            self.ptype[a][b] = 0
            self.ptype[b][a] = 0

    def _dfs(self, placed: int, used: int) -> bool:
        if placed == self.n:
            return True
        v, feas = self._select(used)
        options = feas + ([used] if used < self.k else [])
        for c in options:
            self.nodes += 1
            if self.nodes > self.cfg.budget:
                raise BudgetExhausted(self.nodes)
            changed = self._assign(v, c)
            if self._dfs(placed + 1, max(used, c + 1)):
                return True
            self._undo(v, c, changed)
        return False


def conflict_lower_bound(g: NmGraph) -> int:
    """Size of a maximum clique of the conflict relation."""
    if g.num_vertices == 0:
        return 0
    return len(max_clique(_conflict_masks(g)))


def exact_chromatic(
    g: NmGraph, max_k: int | None = None, cfg: SearchConfig = DEFAULT_CONFIG
) -> tuple[int, QuotientCertificate] | None:
    """Minimum number of classes of a valid quotient of ``g``.

    Returns ``(k, certificate)``, or None if more than ``max_k`` classes are
    needed.  Classes counts are tried upward from the conflict-clique bound.
    """
    n = g.num_vertices
    if n > CHROMATIC_MAX_VERTICES:
        raise SizeGuardError(f"{n} vertices exceeds the chromatic guard {CHROMATIC_MAX_VERTICES}")
    if max_k is None:
        max_k = n
    if n == 0:
        return 0, _certificate(g, ())
    lower = max(1, conflict_lower_bound(g))
    search = _PartitionSearch(g, cfg)
    for k in range(lower, min(max_k, n) + 1):
        part = search.run(k)
        if part is not None:
            return k, _certificate(g, part)
    return None


def _set_partitions(n: int):
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield []
        return
    a = [0] * n
    maxes = [0] * n

    def rec(i):
        if i == n:
            yield a
            return
        for c in range(maxes[i - 1] + 2):
            a[i] = c
            maxes[i] = max(maxes[i - 1], c)
            yield from rec(i + 1)

    yield from rec(1)


def chromatic_oracle(g: NmGraph) -> int:
    """Brute force over every set partition of the vertices; no pruning."""
    n = g.num_vertices
    if n > ORACLE_MAX_VERTICES:
        raise SizeGuardError(f"oracle is limited to {ORACLE_MAX_VERTICES} vertices, got {n}")
    best = n
    adjs = list(g.adjacencies())
    dual = g.signature.dual
    for part in _set_partitions(n):
        k = max(part) + 1 if n else 0
        if k >= best and n:
            continue
        table = {}
        ok = True
        for u, v, a in adjs:
            cu, cv = part[u], part[v]
            if cu == cv or table.setdefault((cu, cv), a) != a or table.setdefault((cv, cu), dual(a)) != dual(a):
                ok = False
                break
        if ok:
            best = k
    return best


# -- partial 2-trees ----------------------------------------------------------


def elimination_order(g: UndirectedGraph) -> tuple[list[int], set[tuple[int, int]]] | None:
    """Degree-at-most-2 elimination; None when ``g`` is not a partial 2-tree.

    Removing a degree-2 vertex joins its two neighbours with a fill edge when
    they are not already adjacent.  Vertices of degree at most one go first,
    so forests need no fill; ties go to the lowest index.
    """
    adj = [set(s) for s in g.adj]
    removed = [False] * g.num_vertices

    def key(v):
        return (len(adj[v]) == 2, v)

    heap = [key(v) for v in g.vertices if len(adj[v]) <= 2]
    heapq.heapify(heap)
    order: list[int] = []
    fill: set[tuple[int, int]] = set()
    while heap:
        entry = heapq.heappop(heap)
        v = entry[1]
        if removed[v] or len(adj[v]) > 2 or entry != key(v):
            continue
        removed[v] = True
        order.append(v)
        nb = list(adj[v])
        for x in nb:
            adj[x].discard(v)
        if len(nb) == 2:
            a, b = sorted(nb)
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                fill.add((a, b))
        for x in nb:
            if len(adj[x]) <= 2:
                heapq.heappush(heap, key(x))
    if len(order) < g.num_vertices:
        return None
    return order, fill


def two_tree_hom(g: NmGraph, t: NmGraph) -> Homomorphism:
    """Greedy embedding of a partial 2-tree into a target with property P_{2,1}.

    Fill edges of the elimination become view type 1 adjacencies; vertices are
    then placed in reverse elimination order, each into the common
    neighbourhood its (at most two) placed neighbours require.
    """
    if g.signature != t.signature:
        raise GraphError(f"signature mismatch {g.signature} vs {t.signature}")
    if not has_p21(t):
        raise PreconditionError("target does not have property P_{2,1}")
    elim = elimination_order(underlying(g))
    if elim is None:
        raise PreconditionError("source is not a partial 2-tree")
    order, fill = elim
    if g.num_vertices and not any(t.view[x] for x in t.vertices):
        if any(g.view[u] for u in g.vertices) or fill:
            raise PreconditionError("target has no adjacencies")
    b = GraphBuilder.from_graph(g)
    for u, v in sorted(fill):
        b.set_adjacency(u, v, 1)
    full = b.build()

    rank = {v: i for i, v in enumerate(order)}
    masks = t.masks
    anchor = next((x for x in t.vertices if t.view[x]), 0)
    f = [-1] * g.num_vertices
    for v in reversed(order):
        placed = [(u, full.view[u][v]) for u in full.view[v] if rank[u] > rank[v]]
        if len(placed) > 2:
            raise InvariantViolation(f"vertex {v} has {len(placed)} earlier neighbours")
        if not placed:
            f[v] = anchor
            continue
        cand = (1 << t.num_vertices) - 1
        for u, a in placed:
            cand &= masks[a][f[u]]
        if not cand:
            raise InvariantViolation(
                f"empty common neighbourhood for vertex {v} at images {[f[u] for u, _ in placed]}"
            )
        f[v] = (cand & -cand).bit_length() - 1
    hom = Homomorphism(g, t, tuple(f))
    verdict = is_homomorphism(hom)
    if not verdict:
        raise InvariantViolation(f"greedy embedding broke adjacency {verdict.witness}")
    return hom


# -- odd cycles -----------------------------------------------------------------


def odd_cycle_target(g: int) -> NmGraph:
    """``C_{2g+1}`` with every edge of type 1, as a ``(0, max(g, 2))``-graph."""
    sig = Signature(0, max(g, 2))
    b = GraphBuilder(sig, 2 * g + 1)
    for i in range(2 * g + 1):
        b.set_adjacency(i, (i + 1) % (2 * g + 1), 1)
    return b.build()


def circular_hom(g: UndirectedGraph, girth_param: int, cfg: SearchConfig = DEFAULT_CONFIG):
    """Map ``g`` onto the cycle ``C_{2g+1}`` (``g = girth_param``), or None."""
    if girth_param < 1:
        raise ValueError("g must be at least 1")
    target = odd_cycle_target(girth_param)
    b = GraphBuilder(target.signature, g.num_vertices)
    for u, v in g.sorted_edges():
        b.set_adjacency(u, v, 1)
    hom = find_hom(b.build(), target, cfg)
    return None if hom is None else hom.mapping


__all__ = [
    "BudgetExhausted",
    "InvariantViolation",
    "PreconditionError",
    "SearchConfig",
    "QuotientCertificate",
    "find_hom",
    "p21_by_extension",
    "exact_chromatic",
    "chromatic_oracle",
    "conflict_lower_bound",
    "elimination_order",
    "two_tree_hom",
    "circular_hom",
    "odd_cycle_target",
    "greedy_clique",
    "max_clique",
]
