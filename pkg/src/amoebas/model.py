"""Amoebas (trees with vertex multiplicities), copies inside host trees,
and the minimal-growth machinery.

A copy is identified by the pair (edge set in the host, multiplicity map
on its vertices); witness isomorphisms are never part of the identity.
Growing a copy means adding the fewest edges to the host so that it
contains an ell-extension of the copy: every root vertex v must start
mult(v) disjoint paths of ell edges that avoid the copy and each other.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InconsistentLog, MalformedInput, NotACopy, NotATree
from .trees import (
    CanonicalCode,
    Tree,
    automorphism_orbits,
    canonical_code,
    parse_tree,
    rooted_code,
)


@dataclass(frozen=True)
class Amoeba:
    """A tree shape together with a non-negative multiplicity per vertex."""

    shape: Tree
    mult: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(self.mult))
        if len(self.mult) != self.shape.vertex_count:
            raise MalformedInput("mult must assign a value to every vertex")
        for m in self.mult:
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise MalformedInput(f"multiplicity {m!r} is not a non-negative integer")

    @cached_property
    def total_mult(self) -> int:
        return sum(self.mult)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v, m in enumerate(self.mult) if m > 0)

    def to_json(self) -> dict:
        d = self.shape.to_json()
        d["mult"] = list(self.mult)
        return d


def parse_amoeba(obj) -> Amoeba:
    """Build an Amoeba from {"vertices": n, "edges": [...], "mult": [...]}."""
    tree = parse_tree(obj)
    if not isinstance(obj, dict) or "mult" not in obj:
        raise MalformedInput("amoeba document needs a 'mult' list")
    mult = obj["mult"]
    if not isinstance(mult, list):
        raise MalformedInput("'mult' must be a list")
    return Amoeba(tree, tuple(mult))


def canonical_amoeba_code(a: Amoeba) -> CanonicalCode:
    """Isomorphism-invariant code of the multiplicity-labelled shape."""
    return canonical_code(a.shape, labels=a.mult)


def completion(a: Amoeba) -> Amoeba:
    """Raise every multiplicity to the maximum over its automorphism orbit
    in the unlabelled shape."""
    orbits = automorphism_orbits(a.shape)
    mult = list(a.mult)
    for block in orbits:
        m = max(a.mult[v] for v in block)
        for v in block:
            mult[v] = m
    return Amoeba(a.shape, tuple(mult))


def ell_extension(a: Amoeba, ell: int) -> Tree:
    """Attach mult(v) fresh paths of ell edges at every vertex v.

    New vertices are appended past the shape's range, roots visited in
    index order.
    """
    if ell < 1:
        raise MalformedInput("ell must be at least 1")
    edges = list(a.shape.edges)
    nxt = a.shape.vertex_count
    for v in range(a.shape.vertex_count):
        for _ in range(a.mult[v]):
            prev = v
            for _ in range(ell):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Tree(nxt, tuple(edges))


@dataclass(frozen=True)
class CopyEmbedding:
    """A copy of an amoeba inside a host: its edges there plus the induced
    multiplicity map.  host_mult lists (vertex, value) pairs for every
    copy vertex, zero values included."""

    host_edges: tuple[tuple[int, int], ...]
    host_mult: tuple[tuple[int, int], ...]

    @cached_property
    def vertices(self) -> frozenset[int]:
        if self.host_edges:
            return frozenset(v for e in self.host_edges for v in e)
        return frozenset(v for v, _ in self.host_mult)

    @cached_property
    def mult_map(self) -> dict[int, int]:
        return dict(self.host_mult)

    @cached_property
    def degree_map(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.host_edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def root_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, m in self.host_mult if m > 0)

    def to_json(self) -> dict:
        return {
            "copy_edges": [list(e) for e in self.host_edges],
            "copy_mult": [list(p) for p in self.host_mult],
        }

    def as_amoeba(self) -> Amoeba:
        """The copy re-read as a standalone amoeba (fresh contiguous indices)."""
        vs = sorted(self.vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = tuple((index[u], index[v]) for u, v in self.host_edges)
        mult = tuple(self.mult_map[v] for v in vs)
        return Amoeba(Tree(len(vs), edges), mult)


def validate_copy(c: CopyEmbedding, host: Tree) -> None:
    """Check that c is a subtree of host with a coherent multiplicity map."""
    vs = c.vertices
    if not vs:
        raise NotACopy("copy has no vertices")
    for v in vs:
        if not (0 <= v < host.vertex_count):
            raise NotACopy(f"copy vertex {v} outside host")
    host_edges = host.edge_set
    for e in c.host_edges:
        if e not in host_edges:
            raise NotACopy(f"copy edge {e!r} not in host")
    if len(c.host_edges) != len(vs) - 1:
        raise NotACopy("copy edges do not span its vertices as a tree")
    if {v for v, _ in c.host_mult} != vs:
        raise NotACopy("multiplicity map domain differs from copy vertices")
    for v, m in c.host_mult:
        if not isinstance(m, int) or m < 0:
            raise NotACopy(f"multiplicity {m!r} at vertex {v}")
    # Connectivity: edges form a tree on vs since counts match and host is a tree.
    if len(vs) > 1:
        seen = {next(iter(vs))}
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in c.host_edges:
            adj[u].append(v)
            adj[v].append(u)
        stack = [next(iter(seen))]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != vs:
            raise NotACopy("copy edges are not connected")


def enumerate_copies(a: Amoeba, host: Tree) -> tuple[CopyEmbedding, ...]:
    """All copies of a in host, sorted by (edges, multiplicity pairs).

    Embeddings that differ only by an automorphism of the amoeba collapse
    to the same copy.
    """
    n_p = a.shape.vertex_count
    if n_p > host.vertex_count:
        return ()
    if n_p == 1:
        m0 = a.mult[0]
        return tuple(
            CopyEmbedding((), ((v, m0),)) for v in range(host.vertex_count)
        )

    p_adj = a.shape.adjacency
    p_deg = a.shape.degrees
    h_adj = host.adjacency
    h_deg = host.degrees

    # Visit pattern vertices so each one is adjacent to an earlier one,
    # starting from a vertex of maximal degree to prune early.
    start = max(range(n_p), key=lambda v: p_deg[v])
    order = [start]
    parent = [-1] * n_p
    seen = [False] * n_p
    seen[start] = True
    q = deque([start])
    while q:
        v = q.popleft()
        for w in p_adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
                q.append(w)

    p_edges = a.shape.edges
    mult = a.mult
    found: set[tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]] = set()
    image = [-1] * n_p
    used = [False] * host.vertex_count

    # closure reads pinned to locals, this is the innermost loop of the engine
    def extend(
        pos: int,
        image=image,
        used=used,
        order=order,
        parent=parent,
        p_deg=p_deg,
        h_adj=h_adj,
        h_deg=h_deg,
        found=found,
    ) -> None:
        if pos == n_p:
            edges = sorted(
                (image[u], image[v]) if image[u] < image[v] else (image[v], image[u])
                for u, v in p_edges
            )
            pairs = sorted((image[v], mult[v]) for v in range(n_p))
            found.add((tuple(edges), tuple(pairs)))
            return
        v = order[pos]
        dv = p_deg[v]
        hp = image[parent[v]]
        for hw in h_adj[hp]:
            if not used[hw] and h_deg[hw] >= dv:
                image[v] = hw
                used[hw] = True
                extend(pos + 1)
                used[hw] = False
        image[v] = -1

    d0 = p_deg[start]
    for hv in range(host.vertex_count):
        if h_deg[hv] >= d0:
            image[start] = hv
            used[hv] = True
            extend(1)
            used[hv] = False
    image[start] = -1

    return tuple(CopyEmbedding(e, m) for e, m in sorted(found))


@dataclass(frozen=True)
class _Component:
    """A hanging component of host minus the copy, attached at one root."""

    attach: int  # its vertex adjacent to the copy
    members: tuple[int, ...]
    depth: int  # height when rooted at attach


def _hanging_components(host: Tree, copy_vertices: frozenset[int]) -> dict[int, list[_Component]]:
    """Components of host - copy, grouped by the copy vertex they hang from."""
    adj = host.adjacency
    seen = set(copy_vertices)
    out: dict[int, list[_Component]] = {}
    for cv in sorted(copy_vertices):
        for x in adj[cv]:
            if x in seen:
                continue
            members = []
            depth = 0
            dist = {x: 0}
            seen.add(x)
            q = deque([x])
            while q:
                u = q.popleft()
                members.append(u)
                depth = max(depth, dist[u])
                for w in adj[u]:
                    if w not in seen and w not in copy_vertices:
                        seen.add(w)
                        dist[w] = dist[u] + 1
                        q.append(w)
            out.setdefault(cv, []).append(_Component(x, tuple(members), depth))
    return out


@dataclass(frozen=True)
class CopyStatus:
    dead: bool
    min_cost: int


def copy_status(c: CopyEmbedding, host: Tree, ell: int) -> CopyStatus:
    """Dead/alive plus the minimal number of edges a growth must add.

    Per root the cost is independent: hanging components there are worth
    max(0, ell-1-depth) each, a brand new path costs ell, and the mult(v)
    slots greedily take the deepest components first.
    """
    validate_copy(c, host)
    if ell < 1:
        raise MalformedInput("ell must be at least 1")
    roots = c.root_vertices
    if not roots:
        return CopyStatus(True, 0)
    if ell == 1:
        cost = 0
        h_deg = host.degrees
        deg = c.degree_map
        for v in roots:
            cost += max(0, c.mult_map[v] - (h_deg[v] - deg[v]))
        return CopyStatus(cost == 0, cost)
    comps = _hanging_components(host, c.vertices)
    cost = 0
    for v in roots:
        q = c.mult_map[v]
        depths = sorted((comp.depth for comp in comps.get(v, [])), reverse=True)
        for d in depths[:q]:
            cost += max(0, ell - 1 - d)
        cost += max(0, q - len(depths)) * ell
    return CopyStatus(cost == 0, cost)


@dataclass(frozen=True)
class GrowthSet:
    """All minimal growths of one copy: the shared cost, the resulting
    trees (pairwise non-isomorphic, host indices preserved) and the new
    edges that produce each result."""

    cost: int
    results: tuple[Tree, ...]
    new_edges: tuple[tuple[tuple[int, int], ...], ...]


def _append_options(comp: _Component, host: Tree) -> list[int]:
    """Deepest vertices of the component, one per orbit of its rooted
    automorphism group, ordered by a structural key so that isomorphic
    components list corresponding choices at the same index."""
    vs = sorted(comp.members)
    index = {v: i for i, v in enumerate(vs)}
    mem = set(comp.members)
    edges = [
        (index[u], index[v])
        for u, v in host.edges
        if u in mem and v in mem
    ]
    small = Tree(len(vs), tuple(edges))
    root = index[comp.attach]
    labels = [0] * len(vs)
    labels[root] = 1
    # Depths from the attach vertex.
    dist = [-1] * len(vs)
    dist[root] = 0
    q = deque([root])
    adj = small.adjacency
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    deepest = {i for i in range(len(vs)) if dist[i] == comp.depth}
    reps = []
    for block in automorphism_orbits(small, labels=labels):
        hits = sorted(i for i in block if i in deepest)
        if hits:
            u = hits[0]
            marked = list(labels)
            marked[u] += 2
            reps.append((rooted_code(small, root, marked), vs[u]))
    reps.sort()
    return [v for _, v in reps]


def _root_choices(
    v: int, q: int, comps: list[_Component], host: Tree, ell: int
) -> tuple[int, list[list[tuple[int, int]]]]:
    """Minimal cost at one root plus every distinct way to pay it.

    Each way is a list of (attach vertex, missing path length)
    instructions; zero-cost slots contribute nothing.
    """
    fresh = max(0, q - len(comps))
    usable = q - fresh
    costs = [(max(0, ell - 1 - comp.depth), comp) for comp in comps]
    zeros = [comp for cost, comp in costs if cost == 0]
    positives = [(cost, comp) for cost, comp in costs if cost > 0]
    z = min(len(zeros), usable)
    t = usable - z
    base = fresh * ell
    fresh_instr = [(v, ell)] * fresh
    if t == 0:
        return base, [list(fresh_instr)]

    # Group interchangeable components: same cost, same rooted shape.
    classes: dict[tuple[int, str], list[_Component]] = {}
    for cost, comp in positives:
        vs = sorted(comp.members)
        index = {u: i for i, u in enumerate(vs)}
        mem = set(comp.members)
        edges = tuple(
            (index[a], index[b]) for a, b in host.edges if a in mem and b in mem
        )
        labels = [0] * len(vs)
        labels[index[comp.attach]] = 1
        code = rooted_code(Tree(len(vs), edges), index[comp.attach], labels)
        classes.setdefault((cost, code), []).append(comp)
    keys = sorted(classes)
    sizes = [len(classes[k]) for k in keys]
    unit_costs = [k[0] for k in keys]

    best = sum(sorted(c for c, _ in positives)[:t])
    picks: list[tuple[int, ...]] = []

    def assign(i: int, left: int, spent: int, acc: list[int]) -> None:
        if spent > best:
            return
        if i == len(keys):
            if left == 0 and spent == best:
                picks.append(tuple(acc))
            return
        remaining_capacity = sum(sizes[i:])
        if left > remaining_capacity:
            return
        for take in range(min(left, sizes[i]), -1, -1):
            acc.append(take)
            assign(i + 1, left - take, spent + take * unit_costs[i], acc)
            acc.pop()

    assign(0, t, 0, [])

    choices: list[list[tuple[int, int]]] = []
    for pick in sorted(picks):
        per_class_options: list[list[list[tuple[int, int]]]] = []
        for k, take in zip(keys, pick):
            if take == 0:
                continue
            cost = k[0]
            members = classes[k]
            reps = _append_options(members[0], host)
            rep_lists = [_append_options(members[j], host) for j in range(take)]
            class_opts: list[list[tuple[int, int]]] = []
            for combo in itertools.combinations_with_replacement(range(len(reps)), take):
                class_opts.append(
                    [(rep_lists[j][combo[j]], cost) for j in range(take)]
                )
            per_class_options.append(class_opts)
        for parts in itertools.product(*per_class_options):
            instr = [p for part in parts for p in part]
            choices.append(instr + list(fresh_instr))
    return base + best, choices


def minimal_growths(c: CopyEmbedding, host: Tree, ell: int) -> GrowthSet:
    """Every minimum-edge tree containing the host and an ell-extension
    of the copy, up to isomorphism.

    Positive-cost slots append the missing path length at a deepest
    vertex of their component; deepest-vertex choices are enumerated one
    per component automorphism orbit, and final results are deduplicated
    by canonical code.
    """
    validate_copy(c, host)
    if ell < 1:
        raise MalformedInput("ell must be at least 1")
    roots = c.root_vertices
    if not roots:
        return GrowthSet(0, (host,), ((),))
    comps = _hanging_components(host, c.vertices)
    total = 0
    per_root: list[list[list[tuple[int, int]]]] = []
    for v in sorted(roots):
        cost_v, choices_v = _root_choices(v, c.mult_map[v], comps.get(v, []), host, ell)
        total += cost_v
        per_root.append(choices_v)
    if total == 0:
        return GrowthSet(0, (host,), ((),))

    seen: dict[str, tuple[Tree, tuple[tuple[int, int], ...]]] = {}
    for combo in itertools.product(*per_root):
        new_edges: list[tuple[int, int]] = []
        nxt = host.vertex_count
        for instr in combo:
            for at, length in instr:
                prev = at
                for _ in range(length):
                    new_edges.append((prev, nxt))
                    prev = nxt
                    nxt += 1
        grown = host.with_new_edges(new_edges)
        code = canonical_code(grown)
        if code not in seen:
            seen[code] = (grown, tuple(new_edges))
    items = sorted(seen.items())
    return GrowthSet(
        total,
        tuple(t for _, (t, _) in items),
        tuple(e for _, (_, e) in items),
    )


@dataclass(frozen=True)
class DegreeReport:
    """The ell=1 degree conditions: tilde_d(v) = d(v) + mult(v), the
    digraph D on 1..M with an edge (x, y) when y = d(v) + mult(v) and
    d(v) + mult(v) > x >= d(v), and q = the largest integer reachable
    from 1 in D."""

    applicable: bool
    tilde_d: tuple[int, ...]
    M: int
    D_edges: tuple[tuple[int, int], ...]
    q: int
    verdicts: dict[str, bool]

    @property
    def mortal_by_degree(self) -> bool:
        return self.applicable and not all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "tilde_d": list(self.tilde_d),
            "M": self.M,
            "D_edges": [list(e) for e in self.D_edges],
            "q": self.q,
            "verdicts": dict(self.verdicts),
            "mortal_by_degree": self.mortal_by_degree,
        }


def degree_check(a: Amoeba, ell: int = 1) -> DegreeReport:
    """Necessary conditions for immortality; meaningful only at ell=1.

    An immortal amoeba must reach q = M from 1 in D, keep every degree
    at most M, and satisfy max degree <= 1 + total multiplicity.  Any
    failure certifies mortality.
    """
    deg = a.shape.degrees
    tilde = tuple(d + m for d, m in zip(deg, a.mult))
    M = max(tilde)
    d_edges = set()
    for v in range(a.shape.vertex_count):
        y = tilde[v]
        for x in range(max(1, deg[v]), y):
            d_edges.add((x, y))
    reach = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for a_, b in d_edges:
            if a_ == x and b not in reach:
                reach.add(b)
                frontier.append(b)
    # D lives on the positive integers up to M; with M = 0 (bare vertex,
    # no roots) even the start node 1 is absent.
    q = max(reach) if M >= 1 else 0
    delta = max(deg)
    verdicts = {
        "q_equals_M": q == M,
        "degrees_bounded": delta <= M,
        "delta_le_1_plus_k": delta <= 1 + a.total_mult,
    }
    return DegreeReport(
        applicable=(ell == 1),
        tilde_d=tilde,
        M=M,
        D_edges=tuple(sorted(d_edges)),
        q=q,
        verdicts=verdicts,
    )


@dataclass(frozen=True)
class Area:
    """The component of (grown tree minus copy vertices) entered by one
    extension path, rooted at the path's second vertex."""

    attachment_root: int
    subtree: tuple[int, ...]
    depth: int
    original_depth: int


def _find_extension(
    c: CopyEmbedding, after: Tree, ell: int, new_edges: frozenset[tuple[int, int]]
) -> list[list[int]] | None:
    """Disjoint ell-paths from each root realizing the extension and
    covering every new edge, or None."""
    adj = after.adjacency
    copy_vs = c.vertices
    slots = []
    for v in sorted(c.root_vertices):
        slots.extend([v] * c.mult_map[v])
    if not slots:
        return [] if not new_edges else None

    def paths_from(v: int, banned: set[int]) -> list[list[int]]:
        out: list[list[int]] = []

        def walk(path: list[int]) -> None:
            if len(path) == ell + 1:
                out.append(list(path))
                return
            for w in adj[path[-1]]:
                if w in copy_vs or w in banned or w in path:
                    continue
                path.append(w)
                walk(path)
                path.pop()

        walk([v])
        return out

    chosen: list[list[int]] = []
    used: set[int] = set()

    def cover_ok() -> bool:
        covered = set()
        for p in chosen:
            for a_, b in zip(p, p[1:]):
                covered.add((a_, b) if a_ < b else (b, a_))
        return new_edges <= covered

    def solve(i: int) -> bool:
        if i == len(slots):
            return cover_ok()
        v = slots[i]
        for p in paths_from(v, used):
            body = set(p[1:])
            if body & used:
                continue
            chosen.append(p)
            used.update(body)
            if solve(i + 1):
                return True
            used.difference_update(body)
            chosen.pop()
        return False

    return chosen if solve(0) else None


def extension_areas(
    before: Tree, after: Tree, c: CopyEmbedding, ell: int,
    new_edges: Sequence[tuple[int, int]],
) -> tuple[list[Area], list[str]]:
    """Areas of every extension path in a grown tree, plus violations of
    the depth facts they must satisfy.

    The depth facts apply to paths whose last edge is new: the area is
    exactly ell-1 deep with a unique maximal path from its root, and its
    intersection with the original tree is at most ell-1 deep.  A path
    whose last edge is reused carries no constraint; its area may contain
    arbitrarily deep original structure.
    """
    normalized = frozenset(
        (u, v) if u < v else (v, u) for u, v in new_edges
    )
    expected = before.with_new_edges(sorted(normalized)) if normalized else before
    if expected.edge_set != after.edge_set or expected.vertex_count != after.vertex_count:
        raise InconsistentLog("after tree does not equal before plus new edges")
    paths = _find_extension(c, after, ell, normalized)
    if paths is None:
        return [], ["no ell-extension of the copy realizes the new edges"]

    violations: list[str] = []
    areas: list[Area] = []
    adj = after.adjacency
    copy_vs = c.vertices
    n_before = before.vertex_count
    for p in paths:
        v1 = p[1]
        # Component of after - copy containing v1, with BFS depths from v1.
        dist = {v1: 0}
        order = [v1]
        q = deque([v1])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w in copy_vs or w in dist:
                    continue
                dist[w] = dist[u] + 1
                order.append(w)
                q.append(w)
        depth = max(dist.values())
        originals = [u for u in order if u < n_before]
        original_depth = max((dist[u] for u in originals), default=-1)
        area = Area(
            attachment_root=v1,
            subtree=tuple(sorted(order)),
            depth=depth,
            original_depth=original_depth,
        )
        areas.append(area)
        last = (p[-2], p[-1]) if p[-2] < p[-1] else (p[-1], p[-2])
        if last in normalized:
            if original_depth > ell - 1:
                violations.append(
                    f"area at {v1}: original part has depth {original_depth} > ell-1"
                )
            if depth != ell - 1:
                violations.append(
                    f"area at {v1}: depth {depth} != ell-1 for a path with a new last edge"
                )
            elif sum(1 for u in order if dist[u] == depth) != 1:
                violations.append(
                    f"area at {v1}: maximal path from the root is not unique"
                )
    return areas, violations


def check_area_properties(
    before: Tree, after: Tree, c: CopyEmbedding, ell: int,
    new_edges: Sequence[tuple[int, int]],
) -> list[str]:
    """Violations of the area depth facts for one logged growth step."""
    _, violations = extension_areas(before, after, c, ell, new_edges)
    return violations
