"""Pseudoultrametrics generated by labeled graphs.

The distance between two vertices is the smallest, over all simple
paths joining them, of the largest vertex label along the path.  This
equals the minimax (bottleneck) path distance for the edge weights
``w({u, v}) = max(l(u), l(v))``, which is what the fast route below
computes with a sorted-edge union-find sweep.  A literal path-by-path
evaluation is kept alongside as :func:`distance_oracle`.

Everything is exact: labels, weights, and distances are
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple

from .graphs import (
    DisconnectedGraphError,
    GraphFormatError,
    LabeledGraph,
    CapExceededError,
    _coerce_rational,
    enumerate_simple_paths,
)

ULTRAMETRIC = "ultrametric"
PSEUDOULTRAMETRIC = "pseudoultrametric-only"

DEFAULT_ORACLE_CAP = 9

_ZERO = Fraction(0)


class InternalCheckError(RuntimeError):
    """A self-check that can only fail on a construction bug fired."""


class MatrixInvariantError(InternalCheckError):
    """A distance matrix violates its own defining invariants."""


class NotUltrametricError(ValueError):
    """Operation defined only for ultrametric (zero-free off-diagonal) input."""


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i


@dataclass(frozen=True)
class WeightedGraph:
    """Simple graph with one non-negative rational weight per edge."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    weights: Mapping[tuple[str, str], Fraction]

    def __post_init__(self):
        skeleton = LabeledGraph(
            tuple(self.vertices), tuple(self.edges), {v: 0 for v in self.vertices}
        )
        weights: dict[tuple[str, str], Fraction] = {}
        for key, value in self.weights.items():
            u, v = key
            edge = skeleton.edge_key(u, v)
            if not skeleton.has_edge(u, v):
                raise ValueError(f"weight given for missing edge ({u!r}, {v!r})")
            if edge in weights:
                raise ValueError(f"two weights given for edge ({u!r}, {v!r})")
            w = _coerce_rational(value)
            if w < 0:
                raise ValueError(f"edge ({u!r}, {v!r}) has negative weight {w}")
            weights[edge] = w
        for edge in skeleton.edges:
            if edge not in weights:
                raise ValueError(f"edge {edge!r} has no weight")

        object.__setattr__(self, "vertices", skeleton.vertices)
        object.__setattr__(self, "edges", skeleton.edges)
        object.__setattr__(self, "weights", {e: weights[e] for e in skeleton.edges})
        object.__setattr__(self, "_skeleton", skeleton)

    @property
    def skeleton(self) -> LabeledGraph:
        """The underlying graph, with placeholder labels."""
        return self._skeleton

    def weight(self, u: str, v: str) -> Fraction:
        return self.weights[self._skeleton.edge_key(u, v)]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of exact pairwise distances, in vertex order."""

    vertices: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n or n == 0:
            raise ValueError("vertex names must be unique and non-empty")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"entries must form a {n}x{n} matrix")
        rows = tuple(tuple(_coerce_rational(q) for q in row) for row in self.entries)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    def get(self, x: str, y: str) -> Fraction:
        return self.entries[self._index[x]][self._index[y]]

    def pairs(self) -> Iterator[tuple[str, str, Fraction]]:
        """Yield ``(x, y, d(x, y))`` over unordered pairs, in vertex order."""
        for i, x in enumerate(self.vertices):
            row = self.entries[i]
            for j in range(i + 1, len(self.vertices)):
                yield x, self.vertices[j], row[j]

    def submatrix(self, keep: tuple[str, ...]) -> "DistanceMatrix":
        idx = [self._index[v] for v in keep]
        rows = tuple(tuple(self.entries[i][j] for j in idx) for i in idx)
        return DistanceMatrix(tuple(keep), rows)

    def validate(self) -> None:
        """Raise :class:`MatrixInvariantError` unless this is a pseudoultrametric.

        Checks zero diagonal, symmetry, non-negativity, and the strong
        triangle inequality ``d(x,y) <= max(d(x,z), d(z,y))`` for every
        triple.
        """
        n = len(self.vertices)
        m = self.entries
        for i in range(n):
            if m[i][i] != 0:
                raise MatrixInvariantError(f"nonzero diagonal at {self.vertices[i]!r}")
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise MatrixInvariantError(
                        f"asymmetry at ({self.vertices[i]!r}, {self.vertices[j]!r})"
                    )
                if m[i][j] < 0:
                    raise MatrixInvariantError(
                        f"negative distance at ({self.vertices[i]!r}, {self.vertices[j]!r})"
                    )
        for i in range(n):
            for j in range(i + 1, n):
                dij = m[i][j]
                for k in range(n):
                    if dij > m[i][k] and dij > m[k][j]:
                        raise MatrixInvariantError(
                            "strong triangle inequality fails on "
                            f"({self.vertices[i]!r}, {self.vertices[j]!r}, {self.vertices[k]!r})"
                        )

    # -- serialization ----------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.vertices)
        for row in self.entries:
            writer.writerow([str(q) for q in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DistanceMatrix":
        rows = [row for row in csv.reader(io.StringIO(text)) if row]
        if not rows:
            raise ValueError("empty CSV document")
        return cls(tuple(rows[0]), tuple(tuple(q for q in row) for row in rows[1:]))

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "matrix": [[str(q) for q in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DistanceMatrix":
        return cls(tuple(doc["vertices"]), tuple(tuple(row) for row in doc["matrix"]))


# -- weighted-format parsing --------------------------------------------


def _parse_rational(token: str, line_no: int, category: str, what: str) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GraphFormatError(line_no, category, f"malformed {what} {token!r}") from None
    if value < 0:
        raise GraphFormatError(line_no, category, f"negative {what} {token!r}")
    return value


def parse_weighted_graph(text: str) -> WeightedGraph:
    """Parse the weighted variant of the graph format.

    Vertex lines are ``v <id>`` (a trailing label is accepted and
    ignored, so labeled documents can be reused); edge lines are
    ``e <id> <id> <weight>``.
    """
    order: list[str] = []
    declared: set[str] = set()
    edges: list[tuple[str, str]] = []
    weights: dict[tuple[str, str], Fraction] = {}
    seen: set[frozenset[str]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "v":
            if len(tokens) not in (2, 3):
                raise GraphFormatError(
                    line_no, "malformed-line", f"expected 'v <id> [label]', got {line!r}"
                )
            vid = tokens[1]
            if vid in declared:
                raise GraphFormatError(line_no, "duplicate-vertex", f"duplicate vertex id {vid!r}")
            if len(tokens) == 3:
                _parse_rational(tokens[2], line_no, "bad-label", "label")
            declared.add(vid)
            order.append(vid)
        elif tokens[0] == "e":
            if len(tokens) != 4:
                raise GraphFormatError(
                    line_no, "malformed-line", f"expected 'e <id> <id> <weight>', got {line!r}"
                )
            _, u, v, wtok = tokens
            for end in (u, v):
                if end not in declared:
                    raise GraphFormatError(
                        line_no, "undeclared-endpoint", f"undeclared endpoint {end!r}"
                    )
            if u == v:
                raise GraphFormatError(line_no, "self-loop", f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise GraphFormatError(line_no, "duplicate-edge", f"duplicate edge {u!r} {v!r}")
            seen.add(key)
            edges.append((u, v))
            weights[(u, v)] = _parse_rational(wtok, line_no, "bad-weight", "weight")
        else:
            raise GraphFormatError(
                line_no, "malformed-line", f"unknown directive {tokens[0]!r} in {line!r}"
            )

    if not order:
        raise GraphFormatError(0, "empty-graph", "no vertices declared")
    return WeightedGraph(tuple(order), tuple(edges), weights)


# -- the two distance routes --------------------------------------------


def edge_weights(g: LabeledGraph) -> WeightedGraph:
    """Push vertex labels onto edges: ``w({u, v}) = max(l(u), l(v))``.

    Minimax path distances for these weights coincide with the labeled
    distance, which is what lets the sweep below replace path
    enumeration.
    """
    weights = {(u, v): max(g.labels[u], g.labels[v]) for u, v in g.edges}
    return WeightedGraph(g.vertices, g.edges, weights)


def _bottleneck_matrix(
    vertices: tuple[str, ...], weighted_edges: list[tuple[Fraction, int, int]]
) -> DistanceMatrix:
    """Minimax distances via a Kruskal-style sweep.

    ``weighted_edges`` must already be sorted by weight, ties in
    declaration order.  When two components first meet at weight ``w``,
    every pair across them is at distance exactly ``w``.
    """
    n = len(vertices)
    dist: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = _ZERO

    uf = _UnionFind(n)
    members: list[list[int]] = [[i] for i in range(n)]
    for w, i, j in weighted_edges:
        ri, rj = uf.find(i), uf.find(j)
        if ri == rj:
            continue
        if len(members[ri]) < len(members[rj]):
            ri, rj = rj, ri
        for a in members[ri]:
            row = dist[a]
            for b in members[rj]:
                row[b] = w
                dist[b][a] = w
        uf.parent[rj] = ri
        members[ri].extend(members[rj])
        members[rj] = []

    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] is None:
                raise DisconnectedGraphError(vertices[i], vertices[j])
    return DistanceMatrix(vertices, tuple(tuple(row) for row in dist))


def distance_matrix(g: LabeledGraph) -> DistanceMatrix:
    """All pairwise labeled distances of a connected graph, exactly."""
    index = g._index
    labels = g.labels
    weighted = [
        (max(labels[u], labels[v]), index[u], index[v]) for u, v in g.edges
    ]
    weighted.sort(key=lambda t: t[0])
    return _bottleneck_matrix(g.vertices, weighted)


def rho_w(wg: WeightedGraph) -> DistanceMatrix:
    """Minimax path distances for explicit edge weights."""
    index = wg.skeleton._index
    weighted = [(wg.weights[(u, v)], index[u], index[v]) for u, v in wg.edges]
    weighted.sort(key=lambda t: t[0])
    return _bottleneck_matrix(wg.vertices, weighted)


def distance_oracle(
    g: LabeledGraph, x: str, y: str, cap: int = DEFAULT_ORACLE_CAP
) -> Fraction:
    """Literal evaluation: minimum over simple paths of the largest label.

    Exponential in the worst case, hence the vertex cap; exists as the
    slow, obviously-correct route that the sweep is tested against.
    """
    if len(g.vertices) > cap:
        raise CapExceededError(
            f"oracle evaluation capped at {cap} vertices, got {len(g.vertices)}"
        )
    labels = g.labels
    best: Fraction | None = None
    for path in enumerate_simple_paths(g, x, y):
        peak = max(labels[v] for v in path)
        if best is None or peak < best:
            best = peak
    if best is None:
        raise DisconnectedGraphError(x, y)
    return best


def oracle_matrix(g: LabeledGraph, cap: int = DEFAULT_ORACLE_CAP) -> DistanceMatrix:
    """Full matrix via :func:`distance_oracle`; small graphs only."""
    n = len(g.vertices)
    rows = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = distance_oracle(g, g.vertices[i], g.vertices[j], cap=cap)
            rows[i][j] = rows[j][i] = d
    return DistanceMatrix(g.vertices, tuple(tuple(row) for row in rows))


# -- pointwise facts and classification ----------------------------------


def adjacent_distance(g: LabeledGraph, u: str, v: str) -> Fraction:
    """Distance across an edge, which is just ``max(l(u), l(v))``.

    No path can beat the direct edge: every path from ``u`` already
    carries ``l(u)`` and ``l(v)`` is a lower bound on the last hop.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"({u!r}, {v!r}) is not an edge")
    return max(g.labels[u], g.labels[v])


def is_nondegenerate(g: LabeledGraph) -> bool:
    """True when every edge has at least one endpoint with a positive label."""
    labels = g.labels
    return all(labels[u] > 0 or labels[v] > 0 for u, v in g.edges)


def classify_metric(dm: DistanceMatrix) -> str:
    """``"ultrametric"`` when all off-diagonal distances are positive.

    Validates the matrix first; an invariant violation means the matrix
    was not produced by this package's constructors and is reported as
    an internal error rather than a verdict.
    """
    dm.validate()
    n = len(dm.vertices)
    for i in range(n):
        row = dm.entries[i]
        for j in range(i + 1, n):
            if row[j] == 0:
                return PSEUDOULTRAMETRIC
    return ULTRAMETRIC


def zero_quotient(dm: DistanceMatrix) -> tuple[tuple[str, ...], DistanceMatrix]:
    """Collapse distance-zero classes to their first-declared member.

    Returns the representatives (in declaration order) and the matrix
    restricted to them.  The strong triangle inequality makes distance
    zero an equivalence, so the restriction is well defined and keeps
    the set of distance values unchanged.
    """
    dm.validate()
    reps: list[str] = []
    for v in dm.vertices:
        for r in reps:
            if dm.get(r, v) == 0:
                break
        else:
            reps.append(v)
    return tuple(reps), dm.submatrix(tuple(reps))


class RealizabilityResult(NamedTuple):
    realizable: bool
    witness: tuple[str, str] | None
    rho: Fraction | None


def is_weight_realizable(wg: WeightedGraph) -> RealizabilityResult:
    """Can some vertex labeling induce exactly these edge weights?

    Weights are realizable precisely when the minimax distance of every
    edge equals its weight; the first edge (in declaration order) where
    the minimax distance drops below the weight is returned as witness.
    """
    rho = rho_w(wg)
    for u, v in wg.edges:
        shortcut = rho.get(u, v)
        if shortcut != wg.weights[(u, v)]:
            return RealizabilityResult(False, (u, v), shortcut)
    return RealizabilityResult(True, None, None)
