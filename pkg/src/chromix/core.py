"""Typed mixed graphs: signatures, the adjacency-type algebra and the text format.

An ``(n, m)``-graph has ``n`` arc types, labelled by the even numbers
``2, 4, ..., 2n``, and ``m`` edge types ``2n+1, ..., 2n+m``.  Seen from a vertex,
every adjacency has a *view type* in ``1..2n+m``: the head of a type-``a`` arc
is an ``a``-neighbour of the tail, and the tail is an ``(a-1)``-neighbour of
the head.  Edge types look the same from both ends.

Adjacencies are stored exactly once (an arc with an even type, or an edge);
odd view types are always derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_TYPES = 30


class GraphError(ValueError):
    """Base class for invalid graphs and malformed graph files.

    ``line`` is the 1-based input line when the error comes from parsing.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FormatSyntaxError(GraphError):
    pass


class TypeRangeError(GraphError):
    pass


class DuplicateAdjacencyError(GraphError):
    pass


class LoopError(GraphError):
    pass


class VertexError(GraphError, LookupError):
    pass


@dataclass(frozen=True, order=True)
class Signature:
    """The pair ``(n, m)``: number of arc types and of edge types."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise TypeRangeError(f"negative signature ({self.n}, {self.m})")
        if (self.n, self.m) == (0, 1):
            raise TypeRangeError("signature (0, 1) is excluded")
        if self.p < 1:
            raise TypeRangeError("signature needs at least one type")
        if self.p > MAX_TYPES:
            raise TypeRangeError(f"2n+m = {self.p} exceeds the supported maximum {MAX_TYPES}")

    @property
    def p(self) -> int:
        """Number of view types, ``2n + m``."""
        return 2 * self.n + self.m

    @property
    def arc_types(self) -> range:
        return range(2, 2 * self.n + 1, 2)

    @property
    def edge_types(self) -> range:
        return range(2 * self.n + 1, self.p + 1)

    @property
    def view_types(self) -> range:
        return range(1, self.p + 1)

    def dual(self, alpha: int) -> int:
        """View type of the same adjacency seen from the other endpoint."""
        if not 1 <= alpha <= self.p:
            raise TypeRangeError(f"view type {alpha} outside 1..{self.p}")
        if alpha > 2 * self.n:
            return alpha
        return alpha + 1 if alpha % 2 else alpha - 1

    def __str__(self) -> str:
        return f"({self.n},{self.m})"


def dual(alpha: int, sig: Signature) -> int:
    return sig.dual(alpha)


def _storage(u: int, v: int, alpha: int, sig: Signature):
    """Canonical record for ``v in N^alpha(u)``: ``('arc', tail, head, t)`` or ``('edge', a, b, t)``."""
    if alpha > 2 * sig.n:
        a, b = (u, v) if u < v else (v, u)
        return "edge", a, b, alpha
    if alpha % 2 == 0:
        return "arc", u, v, alpha
    return "arc", v, u, alpha + 1


class NmGraph:
    """Immutable ``(n, m)``-graph on vertices ``0..N-1``.

    ``arcs`` holds ``(tail, head, type)`` triples with even types, ``edges``
    holds ``(u, v, type)`` with ``u < v``.  ``labels`` is optional metadata.
    """

    __slots__ = ("signature", "num_vertices", "arcs", "edges", "labels", "__dict__")

    def __init__(
        self,
        signature: Signature,
        num_vertices: int,
        arcs: Iterable[tuple[int, int, int]] = (),
        edges: Iterable[tuple[int, int, int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if num_vertices < 0:
            raise GraphError("negative vertex count")
        self.signature = signature
        self.num_vertices = num_vertices
        norm_edges = []
        for u, v, t in edges:
            norm_edges.append((u, v, t) if u < v else (v, u, t))
        self.arcs = frozenset(arcs)
        self.edges = frozenset(norm_edges)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != num_vertices:
                raise GraphError("label count does not match vertex count")
        self.labels = labels
        self._validate()

    def _validate(self):
        sig = self.signature
        seen = set()
        for kind, items, allowed in (
            ("arc", self.arcs, sig.arc_types),
            ("edge", self.edges, sig.edge_types),
        ):
            for u, v, t in items:
                for x in (u, v):
                    if not 0 <= x < self.num_vertices:
                        raise VertexError(f"{kind} {u} {v} {t}: unknown vertex {x}")
                if u == v:
                    raise LoopError(f"{kind} {u} {v} {t}: loop")
                if t not in allowed:
                    raise TypeRangeError(f"{kind} {u} {v} {t}: type not in {list(allowed)}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise DuplicateAdjacencyError(f"{kind} {u} {v} {t}: pair already adjacent")
                seen.add(key)

    # -- derived adjacency -------------------------------------------------

    @cached_property
    def view(self) -> tuple[dict[int, int], ...]:
        """``view[u][v] == alpha`` iff ``v`` is an ``alpha``-neighbour of ``u``."""
        sig = self.signature
        out: list[dict[int, int]] = [{} for _ in range(self.num_vertices)]
        for u, v, t in self.arcs:
            out[u][v] = t
            out[v][u] = sig.dual(t)
        for u, v, t in self.edges:
            out[u][v] = t
            out[v][u] = t
        return tuple(out)

    @cached_property
    def _nbr_sets(self) -> tuple[tuple[frozenset[int], ...], ...]:
        p = self.signature.p
        table = []
        for u in range(self.num_vertices):
            groups: list[set[int]] = [set() for _ in range(p + 1)]
            for v, a in self.view[u].items():
                groups[a].add(v)
            table.append(tuple(frozenset(g) for g in groups))
        return tuple(table)

    @cached_property
    def masks(self) -> tuple[tuple[int, ...], ...]:
        """Bitset form: ``masks[alpha][u]`` has bit ``v`` set iff ``v in N^alpha(u)``."""
        p = self.signature.p
        table = [[0] * self.num_vertices for _ in range(p + 1)]
        for u in range(self.num_vertices):
            for v, a in self.view[u].items():
                table[a][u] |= 1 << v
        return tuple(tuple(row) for row in table)

    def neighbors(self, u: int, alpha: int | None = None) -> frozenset[int]:
        """``N^alpha(u)``, or the whole underlying neighbourhood when ``alpha`` is None."""
        if not 0 <= u < self.num_vertices:
            raise VertexError(f"unknown vertex {u}")
        if alpha is None:
            return frozenset(self.view[u])
        if not 1 <= alpha <= self.signature.p:
            raise TypeRangeError(f"view type {alpha} outside 1..{self.signature.p}")
        return self._nbr_sets[u][alpha]

    def adjacency(self, u: int, v: int) -> int | None:
        """View type of ``v`` from ``u``, or None if not adjacent."""
        return self.view[u].get(v)

    def adjacencies(self) -> Iterator[tuple[int, int, int]]:
        """Each adjacency once as ``(u, v, alpha)`` with ``u < v`` and ``v in N^alpha(u)``."""
        for u in range(self.num_vertices):
            for v, a in sorted(self.view[u].items()):
                if u < v:
                    yield u, v, a

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def degree(self, u: int) -> int:
        return len(self.view[u])

    def __len__(self) -> int:
        return self.num_vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, NmGraph):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.num_vertices == other.num_vertices
            and self.arcs == other.arcs
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.num_vertices, self.arcs, self.edges))

    def __repr__(self) -> str:
        return (
            f"NmGraph(sig={self.signature}, vertices={self.num_vertices}, "
            f"arcs={len(self.arcs)}, edges={len(self.edges)})"
        )

    def __getstate__(self):
        return (self.signature, self.num_vertices, self.arcs, self.edges, self.labels)

    def __setstate__(self, state):
        self.signature, self.num_vertices, self.arcs, self.edges, self.labels = state


class GraphBuilder:
    """Mutable, single-owner accumulator for :class:`NmGraph`."""

    def __init__(self, signature: Signature, num_vertices: int = 0, labels=None):
        self.signature = signature
        self.num_vertices = num_vertices
        self.labels = list(labels) if labels is not None else None
        self._arcs: set[tuple[int, int, int]] = set()
        self._edges: set[tuple[int, int, int]] = set()
        self._pairs: dict[tuple[int, int], int] = {}

    @classmethod
    def from_graph(cls, g: NmGraph) -> "GraphBuilder":
        b = cls(g.signature, g.num_vertices, g.labels)
        for u, v, a in g.adjacencies():
            b.set_adjacency(u, v, a)
        return b

    def add_vertex(self, label: str | None = None) -> int:
        if label is not None and self.labels is None:
            self.labels = [str(i) for i in range(self.num_vertices)]
        if self.labels is not None:
            self.labels.append(label if label is not None else str(self.num_vertices))
        self.num_vertices += 1
        return self.num_vertices - 1

    def is_adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._pairs

    def set_adjacency(self, u: int, v: int, alpha: int) -> None:
        """Record ``v in N^alpha(u)`` (and hence ``u in N^dual(alpha)(v)``)."""
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        for x in (u, v):
            if not 0 <= x < self.num_vertices:
                raise VertexError(f"unknown vertex {x}")
        if self.is_adjacent(u, v):
            raise DuplicateAdjacencyError(f"vertices {u} and {v} are already adjacent")
        if not 1 <= alpha <= self.signature.p:
            raise TypeRangeError(f"view type {alpha} outside 1..{self.signature.p}")
        kind, a, b, t = _storage(u, v, alpha, self.signature)
        (self._arcs if kind == "arc" else self._edges).add((a, b, t))
        self._pairs[(min(u, v), max(u, v))] = alpha

    def build(self) -> NmGraph:
        return NmGraph(self.signature, self.num_vertices, self._arcs, self._edges, self.labels)


def set_adjacency(g: NmGraph, u: int, v: int, alpha: int) -> NmGraph:
    """Return a copy of ``g`` with ``v in N^alpha(u)`` added."""
    b = GraphBuilder.from_graph(g)
    b.set_adjacency(u, v, alpha)
    return b.build()


def neighbors(g: NmGraph, u: int, alpha: int) -> frozenset[int]:
    return g.neighbors(u, alpha)


class UndirectedGraph:
    """Simple undirected graph on ``0..N-1``; edges are stored as ``(u, v)`` with ``u < v``."""

    __slots__ = ("num_vertices", "edges", "__dict__")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int]] = ()):
        self.num_vertices = num_vertices
        norm = set()
        for u, v in edges:
            if u == v:
                raise LoopError(f"edge {u} {v}: loop")
            for x in (u, v):
                if not 0 <= x < num_vertices:
                    raise VertexError(f"edge {u} {v}: unknown vertex {x}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise DuplicateAdjacencyError(f"edge {u} {v}: duplicate")
            norm.add(key)
        self.edges = frozenset(norm)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return tuple(frozenset(s) for s in out)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def subgraph(self, keep: Iterable[int]) -> "UndirectedGraph":
        """Induced subgraph, relabelled to ``0..k-1`` in increasing order."""
        keep = sorted(set(keep))
        idx = {v: i for i, v in enumerate(keep)}
        return UndirectedGraph(
            len(keep), [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        )

    def __len__(self) -> int:
        return self.num_vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.edges))

    def __repr__(self) -> str:
        return f"UndirectedGraph(vertices={self.num_vertices}, edges={len(self.edges)})"

    def __getstate__(self):
        return (self.num_vertices, self.edges)

    def __setstate__(self, state):
        self.num_vertices, self.edges = state


def underlying(g: NmGraph) -> UndirectedGraph:
    pairs = [(u, v) for u, v, _ in g.arcs] + [(u, v) for u, v, _ in g.edges]
    return UndirectedGraph(g.num_vertices, pairs)


# -- text format ------------------------------------------------------------


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(parts: list[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count:
        raise FormatSyntaxError(f"expected {count} integer fields, got {len(parts)}", lineno)
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatSyntaxError(f"non-integer field in {' '.join(parts)!r}", lineno) from None


def _parse_header(lines, keyword: str):
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatSyntaxError("empty input", 1) from None
    parts = head.split()
    if parts[0] != keyword:
        raise FormatSyntaxError(f"expected '{keyword}' header, got {parts[0]!r}", lineno)
    return lineno, parts[1:]


def _parse_vertex_count(lines, header_line):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatSyntaxError("missing 'vertices' line", header_line + 1) from None
    parts = line.split()
    if parts[0] != "vertices":
        raise FormatSyntaxError(f"expected 'vertices', got {parts[0]!r}", lineno)
    (count,) = _ints(parts[1:], 1, lineno)
    if count < 0:
        raise FormatSyntaxError("negative vertex count", lineno)
    return count


def parse(text: str) -> NmGraph:
    """Read an ``nmgraph`` document.  Errors carry the offending line number."""
    lines = _tokens(text)
    lineno, rest = _parse_header(lines, "nmgraph")
    n, m = _ints(rest, 2, lineno)
    try:
        sig = Signature(n, m)
    except TypeRangeError as exc:
        raise TypeRangeError(exc.message, lineno) from None
    count = _parse_vertex_count(lines, lineno)
    builder = GraphBuilder(sig, count)
    labels: dict[int, str] = {}
    for lineno, line in lines:
        keyword, _, tail = line.partition(" ")
        parts = tail.split()
        if keyword == "label":
            if len(parts) < 2:
                raise FormatSyntaxError("label needs an index and a string", lineno)
            (idx,) = _ints(parts[:1], 1, lineno)
            if not 0 <= idx < count:
                raise VertexError(f"label for unknown vertex {idx}", lineno)
            labels[idx] = tail.split(None, 1)[1].strip()
        elif keyword in ("arc", "edge"):
            u, v, t = _ints(parts, 3, lineno)
            allowed = sig.arc_types if keyword == "arc" else sig.edge_types
            if t not in allowed:
                raise TypeRangeError(f"{keyword} type {t} not in {list(allowed)}", lineno)
            for x in (u, v):
                if not 0 <= x < count:
                    raise VertexError(f"unknown vertex {x}", lineno)
            try:
                # arc (u, v, t) means v in N^t(u); edges are symmetric
                builder.set_adjacency(u, v, t)
            except GraphError as exc:
                raise type(exc)(exc.message, lineno) from None
        else:
            raise FormatSyntaxError(f"unknown keyword {keyword!r}", lineno)
    if labels:
        builder.labels = [labels.get(i, str(i)) for i in range(count)]
    return builder.build()


def serialize(g: NmGraph) -> str:
    """Normalized text: header, labels, arcs sorted by (tail, head), then sorted edges."""
    out = [f"nmgraph {g.signature.n} {g.signature.m}", f"vertices {g.num_vertices}"]
    if g.labels is not None:
        out += [f"label {i} {s}" for i, s in enumerate(g.labels)]
    out += [f"arc {u} {v} {t}" for u, v, t in sorted(g.arcs)]
    out += [f"edge {u} {v} {t}" for u, v, t in sorted(g.edges)]
    return "\n".join(out) + "\n"


def parse_undirected(text: str) -> UndirectedGraph:
    lines = _tokens(text)
    lineno, rest = _parse_header(lines, "graph")
    if rest:
        raise FormatSyntaxError("'graph' header takes no arguments", lineno)
    count = _parse_vertex_count(lines, lineno)
    edges = []
    seen = set()
    for lineno, line in lines:
        parts = line.split()
        if parts[0] != "edge":
            raise FormatSyntaxError(f"unknown keyword {parts[0]!r}", lineno)
        u, v = _ints(parts[1:], 2, lineno)
        if u == v:
            raise LoopError(f"edge {u} {v}: loop", lineno)
        for x in (u, v):
            if not 0 <= x < count:
                raise VertexError(f"unknown vertex {x}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateAdjacencyError(f"edge {u} {v}: duplicate", lineno)
        seen.add(key)
        edges.append(key)
    return UndirectedGraph(count, edges)


def serialize_undirected(g: UndirectedGraph) -> str:
    out = ["graph", f"vertices {g.num_vertices}"]
    out += [f"edge {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_any(text: str) -> NmGraph | UndirectedGraph:
    """Dispatch on the header keyword."""
    for _, line in _tokens(text):
        if line.split()[0] == "graph":
            return parse_undirected(text)
        break
    return parse(text)
