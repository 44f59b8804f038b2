"""Free trees with stable vertex indices: validation, canonical codes,
automorphism orbits, enumeration and basic metrics.

Vertices are always 0..vertex_count-1 and no operation re-indexes an
existing tree; growing operations append new vertices at the end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import BudgetExceeded, MalformedInput, NotATree

# Canonical codes are plain strings over "(", ")", digits and ":".
CanonicalCode = str

# A partition of the vertex set: blocks sorted by smallest member.
VertexPartition = tuple[tuple[int, ...], ...]

# Free-tree enumeration refuses sizes above this cap unless overridden.
DEFAULT_ENUM_CAP = 18

# Explicit tree constructions refuse to build beyond this many vertices.
DEFAULT_BUILD_CAP = 1 << 20


def _normalize_edges(vertex_count: int, edges) -> tuple[tuple[int, int], ...]:
    out = []
    for e in edges:
        u, v = e
        if not (isinstance(u, int) and isinstance(v, int)):
            raise NotATree(f"edge {e!r} has non-integer endpoints")
        if u == v:
            raise NotATree(f"self-loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise NotATree(f"edge {e!r} out of range for {vertex_count} vertices")
        out.append((u, v) if u < v else (v, u))
    out.sort()
    for a, b in zip(out, out[1:]):
        if a == b:
            raise NotATree(f"duplicate edge {a!r}")
    return tuple(out)


@dataclass(frozen=True)
class Tree:
    """An unrooted tree on vertices 0..vertex_count-1.

    Edges are stored sorted with u < v in each pair.  Construction
    validates connectivity and acyclicity; a single vertex is a legal
    tree, an empty vertex set is not.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise NotATree(f"vertex_count must be a positive integer, got {n!r}")
        object.__setattr__(self, "edges", _normalize_edges(n, self.edges))
        if len(self.edges) != n - 1:
            raise NotATree(f"{len(self.edges)} edges on {n} vertices")
        # With n-1 edges and no duplicates, connectivity implies tree.
        seen = [False] * n
        seen[0] = True
        stack = [0]
        adj = self.adjacency
        count = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            raise NotATree("edge list is not connected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def with_new_edges(self, new_edges: Sequence[tuple[int, int]]) -> "Tree":
        """Extend by edges that may reference new vertices past the current range."""
        top = self.vertex_count
        for u, v in new_edges:
            top = max(top, u + 1, v + 1)
        return Tree(top, self.edges + tuple(tuple(e) for e in new_edges))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class TreeMetrics:
    diameter: int
    radius: int
    centers: tuple[int, ...]
    eccentricities: tuple[int, ...]


def parse_tree(obj) -> Tree:
    """Build a Tree from the JSON form {"vertices": n, "edges": [[u,v],...]}."""
    if not isinstance(obj, dict):
        raise MalformedInput("tree document must be a JSON object")
    if "vertices" not in obj or "edges" not in obj:
        raise MalformedInput("tree document needs 'vertices' and 'edges'")
    n = obj["vertices"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise MalformedInput("'vertices' must be an integer")
    edges = obj["edges"]
    if not isinstance(edges, list) or any(
        not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges
    ):
        raise MalformedInput("'edges' must be a list of [u, v] pairs")
    return Tree(n, tuple((e[0], e[1]) for e in edges))


def _bfs_order(adj, root: int) -> tuple[list[int], list[int]]:
    """Vertices in BFS order from root, plus parent array (-1 at root)."""
    n = len(adj)
    parent = [-2] * n
    parent[root] = -1
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if parent[w] == -2:
                parent[w] = v
                order.append(w)
                q.append(w)
    return order, parent


def rooted_code(tree: Tree, root: int, labels: Sequence[int] | None = None) -> CanonicalCode:
    """AHU code of the tree rooted at root, child codes sorted lexicographically."""
    adj = tree.adjacency
    order, parent = _bfs_order(adj, root)
    codes: list[str | None] = [None] * tree.vertex_count
    children: list[list[int]] = [[] for _ in range(tree.vertex_count)]
    for v in order[1:]:
        children[parent[v]].append(v)
    for v in reversed(order):
        lab = f"{labels[v]}:" if labels is not None else ""
        codes[v] = "(" + lab + "".join(sorted(codes[c] for c in children[v])) + ")"
    return codes[root]


def find_centers(tree: Tree) -> tuple[int, ...]:
    """The one or two middle vertices of the tree, by iterative leaf removal."""
    n = tree.vertex_count
    if n == 1:
        return (0,)
    deg = list(tree.degrees)
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    adj = tree.adjacency
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for w in adj[v]:
                if deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return tuple(sorted(layer))


def canonical_code(tree: Tree, labels: Sequence[int] | None = None) -> CanonicalCode:
    """Isomorphism-invariant code: AHU rooted at the center, or the smaller
    of the two rooted codes when the tree is bicentral.

    Two trees (with per-vertex integer labels, when given) are isomorphic
    exactly when their codes are equal.
    """
    if labels is not None and len(labels) != tree.vertex_count:
        raise MalformedInput("labels length must match vertex count")
    centers = find_centers(tree)
    return min(rooted_code(tree, c, labels) for c in centers)


def automorphism_orbits(tree: Tree, labels: Sequence[int] | None = None) -> VertexPartition:
    """Orbits of the vertex set under (label-preserving) automorphisms.

    Vertices u, v share an orbit iff the tree rooted at u and the tree
    rooted at v have equal rooted codes.
    """
    if labels is not None and len(labels) != tree.vertex_count:
        raise MalformedInput("labels length must match vertex count")
    by_code: dict[str, list[int]] = {}
    for v in range(tree.vertex_count):
        by_code.setdefault(rooted_code(tree, v, labels), []).append(v)
    blocks = [tuple(sorted(vs)) for vs in by_code.values()]
    blocks.sort(key=lambda b: b[0])
    return tuple(blocks)


def enumerate_free_trees(n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Tree]:
    """All free trees on n vertices, one per isomorphism class, in a fixed order."""
    if n < 1:
        raise MalformedInput("n must be at least 1")
    if n > cap:
        raise BudgetExceeded(f"free-tree enumeration capped at {cap} vertices")
    if n == 1:
        yield Tree(1)
        return
    import networkx as nx

    for g in nx.nonisomorphic_trees(n):
        yield Tree(n, tuple(g.edges()))


def count_free_trees(n: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    return sum(1 for _ in enumerate_free_trees(n, cap))


def full_tary_tree(t: int, depth: int, cap: int = DEFAULT_BUILD_CAP) -> Tree:
    """The full t-ary tree of the given depth; vertex 0 is the root and
    children are numbered in breadth-first order."""
    if t < 1 or depth < 0:
        raise MalformedInput("need t >= 1 and depth >= 0")
    total = depth + 1 if t == 1 else (t ** (depth + 1) - 1) // (t - 1)
    if total > cap:
        raise BudgetExceeded(f"full {t}-ary tree of depth {depth} has {total} vertices (cap {cap})")
    edges = []
    frontier = [0]
    nxt = 1
    for _ in range(depth):
        new_frontier = []
        for v in frontier:
            for _ in range(t):
                edges.append((v, nxt))
                new_frontier.append(nxt)
                nxt += 1
        frontier = new_frontier
    return Tree(nxt, tuple(edges))


def eccentricities(tree: Tree) -> tuple[int, ...]:
    n = tree.vertex_count
    adj = tree.adjacency
    ecc = [0] * n
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        far = 0
        while q:
            v = q.popleft()
            far = dist[v]
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q.append(w)
        ecc[s] = far
    return tuple(ecc)


def tree_metrics(tree: Tree) -> TreeMetrics:
    """Diameter, radius, centers and all eccentricities."""
    ecc = eccentricities(tree)
    radius = min(ecc)
    return TreeMetrics(
        diameter=max(ecc),
        radius=radius,
        centers=tuple(v for v, e in enumerate(ecc) if e == radius),
        eccentricities=ecc,
    )
