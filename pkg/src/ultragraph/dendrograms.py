"""Dendrograms and canonical forms of finite ultrametric spaces.

An ultrametric space is equivalent to its hierarchy of closed balls: a
rooted tree whose leaves are the points and whose internal nodes carry
the merge heights.  Two spaces are isometric exactly when these trees
match as height-labeled trees, so a canonical string of the tree turns
isometry into string equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .graphs import _coerce_rational
from .metrics import (
    ULTRAMETRIC,
    DistanceMatrix,
    InternalCheckError,
    NotUltrametricError,
    _UnionFind,
    classify_metric,
)

LEAF_MARK = "·"


@dataclass(frozen=True)
class Leaf:
    vertex: str


@dataclass(frozen=True)
class Merge:
    """Internal node: the clusters below fuse at distance ``height``."""

    height: Fraction
    children: tuple["Node", ...]

    def __post_init__(self):
        height = _coerce_rational(self.height)
        if height <= 0:
            raise ValueError("merge heights must be positive")
        if len(self.children) < 2:
            raise ValueError("merge nodes need at least two children")
        for child in self.children:
            if isinstance(child, Merge) and child.height >= height:
                raise ValueError("child merge heights must strictly decrease")
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "children", tuple(self.children))


Node = Union[Leaf, Merge]


def dendrogram(dm: DistanceMatrix) -> Node:
    """Build the merge tree of an ultrametric space.

    Walk the distinct positive distances in ascending order; at each
    height fuse every group of clusters joined by a pair at exactly that
    distance into one node, so chains of equal-height merges collapse
    into a single multiway node.
    """
    if classify_metric(dm) != ULTRAMETRIC:
        raise NotUltrametricError(
            "dendrograms need an ultrametric; collapse zero-distance "
            "classes first (zero_quotient)"
        )
    n = len(dm.vertices)
    if n == 1:
        return Leaf(dm.vertices[0])

    by_height: dict[Fraction, list[tuple[int, int]]] = {}
    for i in range(n):
        row = dm.entries[i]
        for j in range(i + 1, n):
            by_height.setdefault(row[j], []).append((i, j))

    uf = _UnionFind(n)
    node_of: dict[int, Node] = {i: Leaf(v) for i, v in enumerate(dm.vertices)}
    first_leaf = {i: i for i in range(n)}

    for height in sorted(by_height):
        pair_roots = []
        for i, j in by_height[height]:
            ri, rj = uf.find(i), uf.find(j)
            if ri != rj:
                pair_roots.append((ri, rj))
        if not pair_roots:
            continue

        # Group the touched clusters; one merge node per group, however
        # many clusters chain together at this height.
        parent: dict[int, int] = {}

        def cfind(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in pair_roots:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = cfind(a), cfind(b)
            if ra != rb:
                parent[rb] = ra

        groups: dict[int, list[int]] = {}
        for a in parent:
            groups.setdefault(cfind(a), []).append(a)

        for olds in groups.values():
            olds.sort(key=first_leaf.get)
            children = tuple(node_of.pop(r) for r in olds)
            keep = olds[0]
            for r in olds[1:]:
                uf.parent[r] = keep
            node_of[keep] = Merge(height, children)

    if len(node_of) != 1:
        raise InternalCheckError("dendrogram construction left unmerged clusters")
    (root,) = node_of.values()
    return root


def canonical_form(node: Node) -> str:
    """Order-independent string of a dendrogram.

    Leaves render as a middle dot; a merge node renders as ``(`` +
    height in lowest terms + the children's canonical strings in
    byte order + ``)``.  Equal strings mean isometric spaces.
    """
    if isinstance(node, Leaf):
        return LEAF_MARK
    parts = sorted(canonical_form(child) for child in node.children)
    return "(" + str(node.height) + "".join(parts) + ")"


def are_isometric(dm1: DistanceMatrix, dm2: DistanceMatrix) -> bool:
    """Decide isometry of two ultrametric spaces via canonical forms."""
    return canonical_form(dendrogram(dm1)) == canonical_form(dendrogram(dm2))


def leaves(node: Node) -> Iterator[str]:
    if isinstance(node, Leaf):
        yield node.vertex
    else:
        for child in node.children:
            yield from leaves(child)


def cophenetic_distances(node: Node) -> dict[frozenset[str], Fraction]:
    """Pairwise merge heights; inverts :func:`dendrogram` for tests."""
    dists: dict[frozenset[str], Fraction] = {}

    def collect(node: Node) -> list[str]:
        if isinstance(node, Leaf):
            return [node.vertex]
        blocks = [collect(child) for child in node.children]
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                for x in blocks[i]:
                    for y in blocks[j]:
                        dists[frozenset((x, y))] = node.height
        return [x for block in blocks for x in block]

    collect(node)
    return dists


def to_json_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": node.vertex}
    return {
        "height": str(node.height),
        "children": [to_json_dict(child) for child in node.children],
    }
