"""Structural metrics and morphology of cubic multipoles.

Girth, cyclic edge-connectivity (min-cut over pairs of short disjoint
cycles, verified against subset brute force on small inputs), 5-cycle
cluster extraction with catalog matching, and connected-side pattern
search (find_submultipole).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import catalog as _catalog
from .canon import canonical_code, invariant_key, isomorphism_map
from .multipole import Multipole, MultipoleError, induced_side


# ---------------------------------------------------------------------------
# Girth and cycle enumeration
# ---------------------------------------------------------------------------


def girth(m: Multipole) -> int | float:
    """Length of the shortest cycle among links; loop = 1, digon = 2."""
    if any(u == v for u, v in m.links):
        return 1
    seen = set()
    for e in m.links:
        if e in seen:
            return 2
        seen.add(e)
    adj = m.adjacency()
    best = math.inf
    for u, v in seen:
        # BFS distance from u to v avoiding one copy of the edge itself
        dist = {u: 0}
        frontier = [u]
        skipped = False
        while frontier and (v not in dist):
            nxt = []
            for x in frontier:
                if dist[x] + 1 >= best:
                    break
                for y in adj[x]:
                    if x == u and y == v and not skipped:
                        skipped = True
                        continue
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def simple_cycles_upto(m: Multipole, maxlen: int) -> list[tuple[int, ...]]:
    """All simple cycles with at most maxlen vertices, each listed once.

    Cycles are rooted at their smallest vertex with the orientation fixed
    by second-vertex < last-vertex; parallel edges and loops are ignored
    (they only matter for girth, which is handled separately).
    """
    adj = [sorted(set(nb) - {v}) for v, nb in enumerate(m.adjacency())]
    out: list[tuple[int, ...]] = []

    def dfs(root: int, v: int, path: list[int], inpath: set[int]) -> None:
        for w in adj[v]:
            if w == root and len(path) >= 3:
                if path[1] < path[-1]:
                    out.append(tuple(path))
            elif w > root and w not in inpath and len(path) < maxlen:
                path.append(w)
                inpath.add(w)
                dfs(root, w, path, inpath)
                path.pop()
                inpath.remove(w)

    for r in range(m.n):
        dfs(r, r, [r], {r})
    return out


def cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int]]:
    k = len(cycle)
    return [
        (min(cycle[i], cycle[(i + 1) % k]), max(cycle[i], cycle[(i + 1) % k]))
        for i in range(k)
    ]


# ---------------------------------------------------------------------------
# Cyclic edge-connectivity
# ---------------------------------------------------------------------------


def _has_cycle(n: int, edges: Iterable[tuple[int, int]], vertices: set[int]) -> bool:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u in parent and v in parent:
            ru, rv = find(u), find(v)
            if ru == rv:
                return True
            parent[ru] = rv
    return False


def _components_after(g: Multipole, cut: set[int]) -> list[tuple[set[int], list]]:
    """Components (vertex set, edge list) of g minus the cut edge indices."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.links):
        if i in cut:
            continue
        adj[u].append((v, i))
        adj[v].append((u, i))
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, vs, es = [s], {s}, []
        seen[s] = True
        while stack:
            x = stack.pop()
            for y, i in adj[x]:
                es.append(i)
                if not seen[y]:
                    seen[y] = True
                    vs.add(y)
                    stack.append(y)
        comps.append((vs, [g.links[i] for i in set(es)]))
    return comps


def is_cycle_separating(g: Multipole, cut_indices: Iterable[int]) -> bool:
    """Does removing these link indices leave >= 2 components with cycles?"""
    comps = _components_after(g, set(cut_indices))
    cyclic = 0
    for vs, es in comps:
        if _has_cycle(g.n, es, vs):
            cyclic += 1
            if cyclic >= 2:
                return True
    return False


def _min_cut(g: Multipole, side_a: set[int], side_b: set[int]) -> int:
    """Min edge cut between two contracted vertex sets (BFS augmentation)."""
    arcs: list[list[int]] = []  # arc: [to, cap]; arcs[i^1] is the reverse
    head: dict[int, list[int]] = {}

    def node(v: int) -> int:
        if v in side_a:
            return -1
        if v in side_b:
            return -2
        return v

    def add_arc(u: int, v: int) -> None:
        head.setdefault(u, []).append(len(arcs))
        arcs.append([v, 1])
        head.setdefault(v, []).append(len(arcs))
        arcs.append([u, 1])

    for u, v in g.links:
        nu, nv = node(u), node(v)
        if nu == nv:
            continue
        add_arc(nu, nv)
    flow = 0
    while True:
        prev: dict[int, int] = {-1: -99}
        queue = [-1]
        while queue and -2 not in prev:
            nxt = []
            for x in queue:
                for ai in head.get(x, ()):
                    to, cap = arcs[ai]
                    if cap > 0 and to not in prev:
                        prev[to] = ai
                        nxt.append(to)
            queue = nxt
        if -2 not in prev:
            return flow
        x = -2
        while x != -1:
            ai = prev[x]
            arcs[ai][1] -= 1
            arcs[ai ^ 1][1] += 1
            x = arcs[ai ^ 1][0]
        flow += 1


def cyclic_connectivity(g: Multipole) -> int | float:
    """Smallest size of a cycle-separating edge cut of a cubic graph.

    Candidates come from pairs of vertex-disjoint short cycles (length up
    to girth + 2, everything for small orders) contracted into min-cut
    terminals, floored by the girth bound when a short cycle's complement
    still contains a cycle. Returns math.inf when no two vertex-disjoint
    cycles exist (K4, K_3,3 territory).
    """
    if not g.is_graph:
        raise MultipoleError("cyclic connectivity is defined for 0-poles")
    if not g.is_connected():
        raise MultipoleError("graph must be connected")
    g0 = girth(g)
    if g0 is math.inf:
        return math.inf
    if g0 <= 2:
        # loops/digons: a loop or digon is a cycle on its own; fall through
        # with a conservative cycle list from the simple part
        pass
    maxlen = g.n if g.n <= 14 else int(min(g0 + 2, g.n))
    cycles = simple_cycles_upto(g, maxlen)
    if g0 == 1:
        cycles += [
            (u,) for u, v in g.links if u == v
        ]
    if g0 == 2:
        seen = set()
        for u, v in g.links:
            if (u, v) in seen and u != v:
                cycles.append((u, v))
            seen.add((u, v))
    best = math.inf
    vsets = [set(c) for c in cycles]
    # girth floor: boundary of a short cycle whose complement has a cycle
    for c, vs in zip(cycles, vsets):
        rest = set(range(g.n)) - vs
        rest_edges = [e for e in g.links if e[0] in rest and e[1] in rest]
        if _has_cycle(g.n, rest_edges, rest):
            boundary = sum(1 for u, v in g.links if (u in vs) != (v in vs))
            best = min(best, boundary)
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if vsets[i] & vsets[j]:
                continue
            cut = _min_cut(g, vsets[i], vsets[j])
            best = min(best, cut)
    return best


def brute_force_cyclic_connectivity(g: Multipole, cap: int | None = None) -> int | float:
    """Oracle: smallest k <= girth with a cycle-separating k-subset of edges."""
    import itertools as it

    g0 = girth(g)
    if g0 is math.inf:
        return math.inf
    top = int(g0 if cap is None else min(cap, g0))
    m = len(g.links)
    for k in range(1, top + 1):
        for combo in it.combinations(range(m), k):
            if is_cycle_separating(g, combo):
                return k
    return math.inf


# ---------------------------------------------------------------------------
# 5-cycle clusters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    vertices: tuple[int, ...]
    multipole: Multipole
    catalog: str | None
    spanning: bool


@dataclass(frozen=True)
class ClusterReport:
    order: int
    girth: int | float
    cyclic_connectivity: int | float
    clusters: tuple[Cluster, ...]
    uncovered_vertices: int

    def to_json_dict(self) -> dict:
        cc = self.cyclic_connectivity
        gg = self.girth
        return {
            "order": self.order,
            "girth": None if gg is math.inf else int(gg),
            "cyclic_connectivity": None if cc is math.inf else int(cc),
            "clusters": [
                {"vertices": sorted(c.vertices), "catalog": c.catalog}
                for c in self.clusters
            ],
            "uncovered_vertices": self.uncovered_vertices,
        }


_CATALOG_CODES: dict[str, tuple] | None = None


def _catalog_codes() -> dict[str, tuple]:
    global _CATALOG_CODES
    if _CATALOG_CODES is None:
        table = {}
        for name, fn in _catalog.CATALOG_CLUSTERS.items():
            m = fn()
            table[name] = (
                _cluster_invariants(m),
                canonical_code(m, connector_blind=True),
            )
        _CATALOG_CODES = table
    return _CATALOG_CODES


def _adjacent_dangling_pairs(m: Multipole) -> int:
    carriers = [v for v, _ in m.dangling]
    links = set(m.links)
    count = 0
    for i in range(len(carriers)):
        for j in range(i + 1, len(carriers)):
            u, v = sorted((carriers[i], carriers[j]))
            if (u, v) in links:
                count += 1
    return count


def _cluster_invariants(m: Multipole) -> tuple:
    return (m.n, len(m.links), m.semiedge_count, _adjacent_dangling_pairs(m))


def five_cycle_clusters(g: Multipole, compute_cc: bool = True) -> ClusterReport:
    """Components of the union of all 5-cycles, matched against the catalog."""
    cycles = [c for c in simple_cycles_upto(g, 5) if len(c) == 5]
    union_edges: set[tuple[int, int]] = set()
    union_vertices: set[int] = set()
    for c in cycles:
        union_edges.update(cycle_edges(c))
        union_vertices.update(c)
    # components of the union subgraph
    adj: dict[int, list[int]] = {v: [] for v in union_vertices}
    for u, v in union_edges:
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    comps: list[set[int]] = []
    for s in sorted(union_vertices):
        if s in seen:
            continue
        stack, comp = [s], {s}
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    clusters = []
    for comp in comps:
        side, _ = induced_side(g, comp)
        spanning = len(comp) == g.n
        match = None
        if not spanning:
            inv = _cluster_invariants(side)
            for name, (cat_inv, cat_code) in _catalog_codes().items():
                if inv == cat_inv and canonical_code(side, True) == cat_code:
                    match = name
                    break
        clusters.append(
            Cluster(tuple(sorted(comp)), side, match, spanning)
        )
    cc = cyclic_connectivity(g) if (compute_cc and g.is_graph) else math.inf
    return ClusterReport(
        g.n,
        girth(g),
        cc,
        tuple(clusters),
        g.n - len(union_vertices),
    )


# ---------------------------------------------------------------------------
# Connected-side pattern search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """One occurrence of a pattern as a cut side of the host."""

    side_vertices: tuple[int, ...]
    cut: tuple[tuple[int, int], ...]
    vertex_map: tuple[tuple[int, int], ...]  # pattern vertex -> host vertex


def _connected_subsets(
    g: Multipole, size: int, boundary_target: int
) -> Iterator[frozenset[int]]:
    """All connected vertex subsets with given size and boundary, once each."""
    adj = [sorted(set(nb)) for nb in g.adjacency()]
    deg = [len(nb) for nb in g.adjacency()]
    n = g.n

    def edges_into(v: int, S: set[int]) -> int:
        return sum(1 for w in g.adjacency()[v] if w in S)

    adj_multi = g.adjacency()
    results: list[frozenset[int]] = []

    def rec(S: set[int], boundary: int, ext: list[int], forbidden: set[int]):
        if len(S) == size:
            if boundary == boundary_target:
                results.append(frozenset(S))
            return
        if boundary - 3 * (size - len(S)) > boundary_target:
            return
        ext = list(ext)
        forbidden = set(forbidden)
        while ext:
            v = ext.pop(0)
            if v in forbidden:
                continue
            t = sum(1 for w in adj_multi[v] if w in S)
            S2 = S | {v}
            new_ext = ext + [
                w for w in adj[v] if w not in S2 and w not in forbidden and w not in ext
            ]
            rec(S2, boundary + deg[v] - 2 * t, new_ext, forbidden)
            forbidden.add(v)

    for r in range(n):
        rec({r}, deg[r], list(adj[r]), set(range(r)))
    return iter(results)


def _two_piece_complements(
    g: Multipole, size: int, boundary_target: int
) -> Iterator[frozenset[int]]:
    """Subsets of given size/boundary with exactly two components."""
    adjs = g.adjacency()
    for t1 in range(1, size):
        t2 = size - t1
        if t2 < t1:
            break
        for b1 in range(3, boundary_target - 2):
            b2 = boundary_target - b1
            for p1 in _connected_subsets(g, t1, b1):
                block = set(p1)
                for v in p1:
                    block.update(adjs[v])
                for p2 in _connected_subsets(g, t2, b2):
                    if t1 == t2 and min(p2) < min(p1):
                        continue
                    if p2 & block:
                        continue
                    yield p1 | p2


def find_submultipole(g: Multipole, pattern: Multipole) -> list[Embedding]:
    """All cut sides of g connector-blind isomorphic to the pattern.

    The pattern must be connected. Sides with as many vertices as the
    pattern and boundary equal to its semiedge count are enumerated (via
    the complement when that is the smaller side) and matched by canonical
    code.
    """
    if not g.is_graph:
        raise MultipoleError("find_submultipole expects a 0-pole host")
    if not pattern.is_connected():
        raise MultipoleError("pattern must be connected")
    p, k, n = pattern.n, pattern.semiedge_count, g.n
    if p > n or (p == n and k > 0):
        return []
    pat_inv = _cluster_invariants(pattern)
    pat_code = canonical_code(pattern, connector_blind=True)
    candidates: set[frozenset[int]] = set()
    if p <= n - p:
        candidates.update(_connected_subsets(g, p, k))
    else:
        q = n - p
        for t in _connected_subsets(g, q, k):
            candidates.add(frozenset(range(n)) - t)
        if k >= 6:
            for t in _two_piece_complements(g, q, k):
                candidates.add(frozenset(range(n)) - t)
    out = []
    for S in sorted(candidates, key=sorted):
        side, boundary = induced_side(g, S)
        if not side.is_connected():
            continue
        if _cluster_invariants(side) != pat_inv:
            continue
        if canonical_code(side, connector_blind=True) != pat_code:
            continue
        vmap = isomorphism_map(pattern, side, connector_blind=True)
        order = sorted(S)
        host_map = tuple(
            (pv, order[sv]) for pv, sv in sorted(vmap.items())
        )
        cut = tuple(sorted((min(u, v), max(u, v)) for u, v in boundary))
        out.append(Embedding(tuple(order), cut, host_map))
    return out
