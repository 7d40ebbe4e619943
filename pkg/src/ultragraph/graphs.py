"""Finite vertex-labeled graphs.

A graph here is a finite simple graph whose vertices carry non-negative
rational labels.  Declaration order is significant: the order of ``v``
lines fixes the vertex order, and every enumerator and tie-break in the
package follows it, so results are reproducible across runs.

Labels are exact rationals (:class:`fractions.Fraction`).  Floats are
rejected at construction time; pass strings like ``"1/2"`` instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

DEFAULT_CYCLE_CAP = 10
DEFAULT_TREE_CAP = 8


class GraphFormatError(ValueError):
    """Violation of the graph file grammar, tagged with a line number."""

    def __init__(self, line_no: int, category: str, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.category = category


class DisconnectedGraphError(ValueError):
    """Raised by operations that require a connected graph."""

    def __init__(self, u: str, v: str):
        super().__init__(f"graph is disconnected: no path joins {u!r} and {v!r}")
        self.witnesses = (u, v)


class NotATreeError(ValueError):
    pass


class CapExceededError(ValueError):
    pass


def _coerce_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    # bool is an int subclass; nobody labels vertices True on purpose.
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"expected a Fraction, int, or string, not {type(value).__name__}"
        " (floats are rejected to keep values exact)"
    )


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable simple graph with one non-negative rational label per vertex.

    ``vertices`` keeps declaration order.  Each edge is stored with its
    endpoints ordered by declaration index, but the edge tuple itself
    keeps the order in which edges were declared.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    labels: Mapping[str, Fraction]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("graph must have at least one vertex")
        index: dict[str, int] = {}
        for v in self.vertices:
            if v in index:
                raise ValueError(f"duplicate vertex id {v!r}")
            index[v] = len(index)

        labels = {v: _coerce_rational(x) for v, x in self.labels.items()}
        for v in self.vertices:
            if v not in labels:
                raise ValueError(f"vertex {v!r} has no label")
        for v, x in labels.items():
            if v not in index:
                raise ValueError(f"label given for undeclared vertex {v!r}")
            if x < 0:
                raise ValueError(f"vertex {v!r} has negative label {x}")

        seen: set[frozenset[str]] = set()
        norm: list[tuple[str, str]] = []
        for u, v in self.edges:
            if u not in index or v not in index:
                raise ValueError(f"edge ({u!r}, {v!r}) has an undeclared endpoint")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u!r}, {v!r})")
            seen.add(key)
            norm.append((u, v) if index[u] < index[v] else (v, u))

        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        for v in self.vertices:
            adj[v].sort(key=index.__getitem__)

        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", {v: tuple(ns) for v, ns in adj.items()})

    # -- basic accessors ------------------------------------------------

    def index_of(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Neighbors of ``v`` in vertex declaration order."""
        return self._adj[v]

    def label(self, v: str) -> Fraction:
        return self.labels[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        i, j = self._index[u], self._index[v]
        pair = (u, v) if i < j else (v, u)
        return pair in self._edge_set()

    def _edge_set(self) -> frozenset[tuple[str, str]]:
        cached = self.__dict__.get("_edges_frozen")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edges_frozen", cached)
        return cached

    def edge_key(self, u: str, v: str) -> tuple[str, str]:
        """The stored orientation of an edge: endpoints by declaration index."""
        if u == v or u not in self._index or v not in self._index:
            raise ValueError(f"({u!r}, {v!r}) is not a valid vertex pair")
        return (u, v) if self._index[u] < self._index[v] else (v, u)

    def with_labels(self, labels: Mapping[str, object]) -> "LabeledGraph":
        """Same structure, new labeling."""
        return LabeledGraph(self.vertices, self.edges, dict(labels))

    def to_text(self) -> str:
        """Render in the line-based file format accepted by :func:`parse_graph`."""
        lines = [f"v {v} {self.labels[v]}" for v in self.vertices]
        lines.extend(f"e {u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


# -- parsing -----------------------------------------------------------


def _parse_label(token: str, line_no: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GraphFormatError(line_no, "bad-label", f"malformed label {token!r}") from None
    if value < 0:
        raise GraphFormatError(line_no, "bad-label", f"negative label {token!r}")
    return value


def parse_graph(text: str) -> LabeledGraph:
    """Parse the line-based graph format.

    Grammar, one record per line: ``# comment``, ``v <id> <label>``,
    ``e <id> <id>``.  Blank lines are ignored.  Labels are decimals
    (``1.5``) or rationals (``3/2``).  The order of ``v`` lines defines
    the vertex order.
    """
    vertices: list[str] = []
    labels: dict[str, Fraction] = {}
    edges: list[tuple[str, str]] = []
    edge_seen: set[frozenset[str]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "v":
            if len(tokens) != 3:
                raise GraphFormatError(
                    line_no, "malformed-line", f"expected 'v <id> <label>', got {line!r}"
                )
            _, vid, label_tok = tokens
            if vid in labels:
                raise GraphFormatError(line_no, "duplicate-vertex", f"duplicate vertex id {vid!r}")
            labels[vid] = _parse_label(label_tok, line_no)
            vertices.append(vid)
        elif tokens[0] == "e":
            if len(tokens) != 3:
                raise GraphFormatError(
                    line_no, "malformed-line", f"expected 'e <id> <id>', got {line!r}"
                )
            _, u, v = tokens
            if u not in labels:
                raise GraphFormatError(line_no, "undeclared-endpoint", f"undeclared endpoint {u!r}")
            if v not in labels:
                raise GraphFormatError(line_no, "undeclared-endpoint", f"undeclared endpoint {v!r}")
            if u == v:
                raise GraphFormatError(line_no, "self-loop", f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in edge_seen:
                raise GraphFormatError(line_no, "duplicate-edge", f"duplicate edge {u!r} {v!r}")
            edge_seen.add(key)
            edges.append((u, v))
        else:
            raise GraphFormatError(
                line_no, "malformed-line", f"unknown directive {tokens[0]!r} in {line!r}"
            )

    if not vertices:
        raise GraphFormatError(0, "empty-graph", "no vertices declared")
    return LabeledGraph(tuple(vertices), tuple(edges), labels)


# -- predicates and traversals -----------------------------------------


def _bfs_order(g: LabeledGraph, start: str) -> list[str]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def connectivity_witness(g: LabeledGraph) -> tuple[str, str] | None:
    """``None`` if connected, else a pair of vertices in different components."""
    reached = set(_bfs_order(g, g.vertices[0]))
    for v in g.vertices:
        if v not in reached:
            return (g.vertices[0], v)
    return None


def is_connected(g: LabeledGraph) -> bool:
    """Return ``True`` when every vertex is reachable from every other."""
    return connectivity_witness(g) is None


def require_connected(g: LabeledGraph) -> None:
    witness = connectivity_witness(g)
    if witness is not None:
        raise DisconnectedGraphError(*witness)


def is_tree(g: LabeledGraph) -> bool:
    """Return ``True`` when the (connected) graph is acyclic.

    Raises :class:`DisconnectedGraphError` on disconnected input: for a
    connected graph acyclicity is exactly ``|E| = |V| - 1``.
    """
    require_connected(g)
    return len(g.edges) == len(g.vertices) - 1


def spanning_tree(g: LabeledGraph) -> LabeledGraph:
    """Breadth-first spanning tree from the first-declared vertex.

    Neighbors are scanned in declaration order, so the result is a
    deterministic function of the input document.  Labels carry over.
    """
    require_connected(g)
    root = g.vertices[0]
    seen = {root}
    tree_edges: list[tuple[str, str]] = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                tree_edges.append((u, w))
                queue.append(w)
    return LabeledGraph(g.vertices, tuple(tree_edges), dict(g.labels))


def degree_sum_identity(g: LabeledGraph) -> bool:
    """Check the handshake identity: the degree total equals ``2 |E|``."""
    return sum(g.degree(v) for v in g.vertices) == 2 * len(g.edges)


def enumerate_simple_paths(g: LabeledGraph, x: str, y: str) -> Iterator[tuple[str, ...]]:
    """Yield every simple path from ``x`` to ``y``.

    Paths come out in lexicographic order of their vertex-index
    sequences (declaration order), which makes downstream minima
    reproducible.  ``x`` and ``y`` must be distinct declared vertices.
    """
    for v in (x, y):
        if v not in g._index:
            raise ValueError(f"unknown vertex {v!r}")
    if x == y:
        raise ValueError("path endpoints must be distinct")

    path = [x]
    on_path = {x}

    def walk(u: str) -> Iterator[tuple[str, ...]]:
        for w in g.neighbors(u):
            if w == y:
                yield tuple(path) + (y,)
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from walk(w)
                path.pop()
                on_path.remove(w)

    yield from walk(x)


def enumerate_cycles(g: LabeledGraph, cap: int = DEFAULT_CYCLE_CAP) -> Iterator[tuple[str, ...]]:
    """Yield each cycle subgraph exactly once, up to rotation and reflection.

    A cycle is reported as a vertex tuple starting at its least-index
    vertex; reflections are collapsed by requiring the second vertex to
    precede the last in declaration order.  Guarded by ``cap`` because
    the count is exponential.
    """
    n = len(g.vertices)
    if n > cap:
        raise CapExceededError(f"cycle enumeration capped at {cap} vertices, got {n}")
    index = g._index
    adj = {v: [w for w in g.neighbors(v)] for v in g.vertices}

    path: list[str] = []
    on_path: set[str] = set()

    def walk(start: str, u: str) -> Iterator[tuple[str, ...]]:
        for w in adj[u]:
            iw = index[w]
            if w == start and len(path) >= 3:
                if index[path[1]] < index[path[-1]]:
                    yield tuple(path)
            elif iw > index[start] and w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from walk(start, w)
                path.pop()
                on_path.remove(w)

    for start in g.vertices:
        path = [start]
        on_path = {start}
        yield from walk(start, start)


def tree_from_pruefer(seq: Sequence[int], n: int) -> tuple[tuple[int, int], ...]:
    """Decode a Pruefer sequence over ``range(n)`` into tree edges on ``range(n)``."""
    if n < 2:
        raise ValueError("a Pruefer sequence encodes a tree on at least 2 vertices")
    if len(seq) != n - 2:
        raise ValueError(f"sequence for {n} vertices must have length {n - 2}")
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges: list[tuple[int, int]] = []
    for s in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, s) if leaf < s else (s, leaf))
        degree[leaf] -= 1
        degree[s] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return tuple(edges)


def enumerate_trees(n: int, cap: int = DEFAULT_TREE_CAP) -> Iterator[LabeledGraph]:
    """Yield all ``n**(n-2)`` labeled trees on vertices ``"1"`` .. ``"n"``.

    Trees are produced by decoding Pruefer sequences in lexicographic
    order.  Every vertex gets the placeholder label 0; callers bind real
    labelings with :meth:`LabeledGraph.with_labels`.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > cap:
        raise CapExceededError(f"tree enumeration capped at {cap} vertices, got {n}")
    names = tuple(str(i + 1) for i in range(n))
    labels = {v: Fraction(0) for v in names}
    if n == 1:
        yield LabeledGraph(names, (), labels)
        return
    for seq in product(range(n), repeat=n - 2):
        edges = tuple((names[i], names[j]) for i, j in tree_from_pruefer(seq, n))
        yield LabeledGraph(names, edges, labels)


def root_levels(t: LabeledGraph, root: str) -> dict[str, int]:
    """Distance-from-root levels of a tree, by breadth-first traversal."""
    if root not in t._index:
        raise ValueError(f"unknown root {root!r}")
    if not is_tree(t):
        raise NotATreeError("root levels are only defined for trees")
    levels = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in t.neighbors(u):
            if w not in levels:
                levels[w] = levels[u] + 1
                queue.append(w)
    return levels
