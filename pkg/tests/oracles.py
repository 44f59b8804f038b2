"""Reference implementations used as test oracles.

Everything here is deliberately naive: brute force over labelled
objects, Pruefer sequences, backtracking path packing. The package
under test has to agree with these on small instances; none of the
functions here may call into the package's own canonicalization or
search code.
"""

from __future__ import annotations

import itertools
from heapq import heapify, heappop, heappush

import networkx as nx

from amoebas import Amoeba, CopyEmbedding, Tree


def degrees(t: Tree) -> list[int]:
    d = [0] * t.vertex_count
    for u, v in t.edges:
        d[u] += 1
        d[v] += 1
    return d


def adjacency(t: Tree) -> list[list[int]]:
    adj = [[] for _ in range(t.vertex_count)]
    for u, v in t.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def nx_graph(t: Tree, labels=None) -> nx.Graph:
    g = nx.Graph()
    for v in range(t.vertex_count):
        g.add_node(v, label=None if labels is None else labels[v])
    g.add_edges_from(t.edges)
    return g


def trees_isomorphic(a: Tree, b: Tree) -> bool:
    if a.vertex_count != b.vertex_count:
        return False
    return nx.is_isomorphic(nx_graph(a), nx_graph(b))


def labelled_isomorphic(a: Tree, la, b: Tree, lb) -> bool:
    if a.vertex_count != b.vertex_count:
        return False
    return nx.is_isomorphic(
        nx_graph(a, la),
        nx_graph(b, lb),
        node_match=lambda x, y: x["label"] == y["label"],
    )


def amoebas_isomorphic(a: Amoeba, b: Amoeba) -> bool:
    return labelled_isomorphic(a.shape, a.mult, b.shape, b.mult)


def iso_reps(trees) -> list[Tree]:
    """One representative per isomorphism class, buckets keyed by the
    degree sequence to keep the pairwise checks short."""
    buckets: dict[tuple, list[Tree]] = {}
    for t in trees:
        key = (t.vertex_count, tuple(sorted(degrees(t))))
        reps = buckets.setdefault(key, [])
        if not any(trees_isomorphic(t, r) for r in reps):
            reps.append(t)
    return [t for reps in buckets.values() for t in reps]


def same_iso_classes(xs, ys) -> bool:
    """Multiset equality of two lists of pairwise non-isomorphic trees."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for x in xs:
        for i, y in enumerate(remaining):
            if trees_isomorphic(x, y):
                del remaining[i]
                break
        else:
            return False
    return True


# ---------------------------------------------------------------- trees

def prufer_tree(seq: tuple[int, ...], n: int) -> Tree:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapify(leaves)
    edges = []
    for v in seq:
        u = heappop(leaves)
        edges.append((min(u, v), max(u, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heappush(leaves, v)
    u, w = heappop(leaves), heappop(leaves)
    edges.append((min(u, w), max(u, w)))
    return Tree(n, tuple(sorted(edges)))


def all_labelled_trees(n: int):
    if n == 1:
        yield Tree(1, ())
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_tree(seq, n)


def free_tree_count(n: int) -> int:
    return len(iso_reps(all_labelled_trees(n)))


def random_tree(rng, n: int) -> Tree:
    if n <= 2:
        return Tree(n, tuple((i, i + 1) for i in range(n - 1)))
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    return prufer_tree(seq, n)


def brute_orbits(t: Tree, labels=None) -> set[frozenset[int]]:
    """Orbits from the full automorphism group. Every bijection is
    tried for small trees; larger ones go through VF2's complete
    self-isomorphism enumeration (same answer, pruned search)."""
    n = t.vertex_count
    reach = {v: {v} for v in range(n)}
    if n <= 7:
        edge_set = {frozenset(e) for e in t.edges}
        for perm in itertools.permutations(range(n)):
            if labels is not None and any(labels[perm[v]] != labels[v] for v in range(n)):
                continue
            if all(frozenset((perm[u], perm[v])) in edge_set for u, v in t.edges):
                for v in range(n):
                    reach[v].add(perm[v])
    else:
        g = nx_graph(t, labels)
        matcher = nx.algorithms.isomorphism.GraphMatcher(
            g, g, node_match=lambda x, y: x["label"] == y["label"]
        )
        for mapping in matcher.isomorphisms_iter():
            for v in range(n):
                reach[v].add(mapping[v])
    orbits = set()
    for v in range(n):
        orbits.add(frozenset(reach[v]))
    return orbits


# --------------------------------------------------------------- copies

def brute_copies(a: Amoeba, host: Tree) -> set[tuple]:
    """Every injective vertex map preserving edges, collapsed to the
    (edge set, induced multiplicity) identity."""
    n, hn = a.shape.vertex_count, host.vertex_count
    if n > hn:
        return set()
    host_edges = {frozenset(e) for e in host.edges}
    found = set()
    for image in itertools.permutations(range(hn), n):
        if all(frozenset((image[u], image[v])) in host_edges for u, v in a.shape.edges):
            edges = tuple(sorted(tuple(sorted((image[u], image[v]))) for u, v in a.shape.edges))
            mult = tuple(sorted((image[v], a.mult[v]) for v in range(n)))
            found.add((edges, mult))
    return found


def copy_key(c: CopyEmbedding) -> tuple:
    return (tuple(sorted(c.host_edges)), tuple(sorted(c.host_mult)))


# -------------------------------------------------------------- growths

def extension_fits(t: Tree, copy_vertices, demands, ell: int) -> bool:
    """Whether t packs, for each root v, mult(v) paths of ell edges
    starting at v, internally disjoint from the copy and from each
    other."""
    adj = adjacency(t)
    todo = [v for v, m in demands for _ in range(m)]
    copy_vertices = set(copy_vertices)
    used: set[int] = set()

    def from_root(i: int) -> bool:
        if i == len(todo):
            return True
        path = [todo[i]]

        def extend() -> bool:
            if len(path) == ell + 1:
                used.update(path[1:])
                if from_root(i + 1):
                    return True
                used.difference_update(path[1:])
                return False
            for w in adj[path[-1]]:
                if w in copy_vertices or w in used or w in path:
                    continue
                path.append(w)
                if extend():
                    return True
                path.pop()
            return False

        return extend()

    return from_root(0)


def copy_is_dead(c: CopyEmbedding, host: Tree, ell: int) -> bool:
    copy_vertices = [v for v, _ in c.host_mult]
    demands = [(v, m) for v, m in c.host_mult if m > 0]
    return extension_fits(host, copy_vertices, demands, ell)


def supertrees(host: Tree, c: int):
    """Host plus c new vertices, each attached to any earlier vertex.
    Hits at least one labelling of every isomorphism class of c-edge
    supertrees (new vertices can always be relabelled in search order)."""
    n = host.vertex_count

    def rec(edges, i):
        if i == c:
            yield Tree(n + c, tuple(sorted(edges)))
            return
        for x in range(n + i):
            yield from rec(edges + ((x, n + i),), i + 1)

    yield from rec(host.edges, 0)


def _attachment_key(t: Tree, n: int):
    """Map 'which rooted shapes hang where' for the vertices beyond n.
    Candidates with equal keys differ only by relabelling new vertices,
    so they are isomorphic over the fixed host and fit identically."""
    kids: dict[int, list[int]] = {v: [] for v in range(n, t.vertex_count)}
    anchored = []
    for u, v in t.edges:
        child = max(u, v)
        if child < n:
            continue
        parent = min(u, v)
        if parent < n:
            anchored.append((parent, child))
        else:
            kids[parent].append(child)

    def shape(v: int):
        return tuple(sorted(shape(w) for w in kids[v]))

    return tuple(sorted((p, shape(r)) for p, r in anchored))


def _reaching_supertrees(host: Tree, c: int, root_dist, ell: int):
    """supertrees(host, c) restricted to candidates whose every new
    vertex lies within ell of a root. dist(root, w) for a pendant new
    vertex is exactly root_dist[anchor] + depth, since pendants never
    shorten host distances, so reach can be tracked while attaching."""
    n = host.vertex_count

    def rec(edges, reach, i):
        if i == c:
            yield Tree(n + c, tuple(sorted(edges)))
            return
        for x in range(n + i):
            r = (root_dist[x] if x < n else reach[x - n]) + 1
            if r > ell:
                continue
            yield from rec(edges + ((x, n + i),), reach + (r,), i + 1)

    yield from rec(host.edges, (), 0)


def growth_search(c: CopyEmbedding, host: Tree, ell: int, c_cap: int):
    """Smallest edge count whose supertrees contain a pinned
    ell-extension of the copy, with all minimisers up to isomorphism.
    Returns (None, []) when nothing fits within c_cap.

    Levels are scanned in cost order, so once a level is reached every
    cheaper one is known fitless. A fit at the current level must then
    use all its new vertices (dropping an unused one would produce a fit
    one level down), which justifies enumerating only candidates whose
    new vertices are all within extension range of a root."""
    copy_vertices = [v for v, _ in c.host_mult]
    demands = [(v, m) for v, m in c.host_mult if m > 0]
    n = host.vertex_count
    adj = adjacency(host)
    root_dist = [n + 1] * n
    frontier = [v for v, _ in demands]
    for v in frontier:
        root_dist[v] = 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if root_dist[w] > root_dist[v] + 1:
                    root_dist[w] = root_dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    for cost in range(c_cap + 1):
        hits = []
        seen = set()
        for t in _reaching_supertrees(host, cost, root_dist, ell):
            key = _attachment_key(t, n)
            if key in seen:
                continue
            seen.add(key)
            if extension_fits(t, copy_vertices, demands, ell):
                hits.append(t)
        if hits:
            return cost, iso_reps(hits)
    return None, []


def confining_oracle(t: Tree, a: Amoeba, ell: int) -> bool:
    copies = brute_copies(a, t)
    if not copies:
        return False
    for edges, mult in copies:
        c = CopyEmbedding(edges, mult)
        if not copy_is_dead(c, t, ell):
            return False
    return True


# ---------------------------------------------------------- caterpillars

def is_caterpillar_oracle(t: Tree) -> bool:
    """Delete all leaves; a caterpillar is whatever leaves a path."""
    n = t.vertex_count
    if n <= 3:
        return True
    deg = degrees(t)
    rest = {v for v in range(n) if deg[v] >= 2}
    if len(rest) <= 1:
        return True
    inner_edges = [e for e in t.edges if e[0] in rest and e[1] in rest]
    if len(inner_edges) != len(rest) - 1:
        return False
    inner_deg: dict[int, int] = dict.fromkeys(rest, 0)
    for u, v in inner_edges:
        inner_deg[u] += 1
        inner_deg[v] += 1
    return max(inner_deg.values()) <= 2


def build_caterpillar(legs: tuple[int, ...]) -> Tree:
    ell = len(legs)
    edges = [(i - 1, i) for i in range(1, ell)]
    nxt = ell
    for i, d in enumerate(legs):
        for _ in range(d):
            edges.append((i, nxt))
            nxt += 1
    return Tree(nxt, tuple(sorted(edges)))
