"""Cubic multipoles: graphs with semiedges grouped into connectors.

A multipole carries vertices, links (vertex-vertex edges, parallel edges and
loops allowed), dangling edges (vertex-semiedge), isolated edges
(semiedge-semiedge) and a partition of the semiedges into named connectors.
A multipole with no semiedges is an ordinary cubic graph.

All surgery operations return new values; instances are immutable and safe
to share. Vertex and semiedge ids are dense integers; every surgery
re-indexes deterministically (survivors in ascending old id).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class MultipoleError(ValueError):
    """Structural error: bad ids, broken cubicity, invalid surgery."""


class FreeLoopError(MultipoleError):
    """An operation that cannot handle free loops met one."""


VERTEX = 0
SEMI = 1


@dataclass(frozen=True)
class Connector:
    """A named group of semiedges; ordered connectors fix a junction order."""

    name: str
    ordered: bool
    semiedges: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.semiedges)


@dataclass(frozen=True)
class Multipole:
    n: int
    links: tuple[tuple[int, int], ...]
    dangling: tuple[tuple[int, int], ...]
    isolated: tuple[tuple[int, int], ...]
    connectors: tuple[Connector, ...]
    free_loops: int = 0

    def __post_init__(self) -> None:
        self._validate()

    # -- construction -----------------------------------------------------

    @staticmethod
    def build(
        n: int,
        links: Iterable[tuple[int, int]] = (),
        dangling: Iterable[tuple[int, int]] = (),
        isolated: Iterable[tuple[int, int]] = (),
        connectors: Iterable[tuple[str, bool, Sequence[int]]] | None = None,
        free_loops: int = 0,
    ) -> "Multipole":
        """Normalising constructor; connectors default to one unordered group."""
        lks = tuple(sorted((min(u, v), max(u, v)) for u, v in links))
        dng = tuple(sorted(dangling, key=lambda p: p[1]))
        iso = tuple(sorted((min(s, t), max(s, t)) for s, t in isolated))
        sids = sorted([s for _, s in dng] + [s for p in iso for s in p])
        if connectors is None:
            cons: tuple[Connector, ...] = ()
            if sids:
                cons = (Connector("S", False, tuple(sids)),)
        else:
            cons = tuple(
                Connector(name, ordered, tuple(ss) if ordered else tuple(sorted(ss)))
                for name, ordered, ss in connectors
            )
        return Multipole(n, lks, dng, iso, cons, free_loops)

    def _validate(self) -> None:
        deg = [0] * self.n
        for u, v in self.links:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MultipoleError(f"link ({u},{v}) references unknown vertex")
            if u > v:
                raise MultipoleError("links must be stored as (min,max) pairs")
            deg[u] += 1
            deg[v] += 1
        sids: list[int] = []
        for v, s in self.dangling:
            if not 0 <= v < self.n:
                raise MultipoleError(f"dangling edge at unknown vertex {v}")
            deg[v] += 1
            sids.append(s)
        for s, t in self.isolated:
            if s == t:
                raise MultipoleError("isolated edge with identical semiedge ids")
            sids.extend((s, t))
        if len(set(sids)) != len(sids):
            raise MultipoleError("duplicate semiedge id")
        if sids and sorted(sids) != list(range(len(sids))):
            raise MultipoleError("semiedge ids must be dense 0..k-1")
        for v, d in enumerate(deg):
            if d != 3:
                raise MultipoleError(f"vertex {v} has {d} edge ends, want 3")
        grouped: list[int] = []
        for c in self.connectors:
            if c.arity < 1:
                raise MultipoleError(f"connector {c.name!r} is empty")
            if not c.ordered and list(c.semiedges) != sorted(c.semiedges):
                raise MultipoleError(
                    f"unordered connector {c.name!r} must store ascending ids"
                )
            grouped.extend(c.semiedges)
        if sorted(grouped) != sorted(sids):
            raise MultipoleError("connectors must partition the semiedge set")
        if len(set(c.name for c in self.connectors)) != len(self.connectors):
            raise MultipoleError("connector names must be unique")
        if self.free_loops < 0:
            raise MultipoleError("negative free loop count")

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    @property
    def semiedge_count(self) -> int:
        return len(self.dangling) + 2 * len(self.isolated)

    @property
    def is_graph(self) -> bool:
        """True for 0-poles: ordinary cubic graphs."""
        return self.semiedge_count == 0 and self.free_loops == 0

    def connector(self, name: str) -> Connector:
        for c in self.connectors:
            if c.name == name:
                return c
        raise MultipoleError(f"no connector named {name!r}")

    def connector_of(self, sid: int) -> Connector:
        for c in self.connectors:
            if sid in c.semiedges:
                return c
        raise MultipoleError(f"semiedge {sid} not in any connector")

    def semiedge_ids(self) -> list[int]:
        return sorted(
            [s for _, s in self.dangling] + [s for p in self.isolated for s in p]
        )

    def semiedge_vertex(self, sid: int) -> int | None:
        """Vertex carrying a dangling semiedge, None for isolated-edge ends."""
        for v, s in self.dangling:
            if s == sid:
                return v
        for s, t in self.isolated:
            if sid in (s, t):
                return None
        raise MultipoleError(f"unknown semiedge {sid}")

    def adjacency(self) -> list[list[int]]:
        """Link-multiset adjacency (loops listed twice)."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.links:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def shape(self) -> tuple[int, tuple[tuple[int, bool], ...]]:
        """Signature (semiedge count, sorted multiset of (arity, ordered))."""
        return (
            self.semiedge_count,
            tuple(sorted((c.arity, c.ordered) for c in self.connectors)),
        )

    def components(self) -> list[set[int]]:
        """Connected components of the vertex set (links only)."""
        seen = [False] * self.n
        comps = []
        adj = self.adjacency()
        for start in range(self.n):
            if seen[start]:
                continue
            comp = {start}
            seen[start] = True
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        if self.n == 0:
            return len(self.isolated) <= 1 and self.free_loops == 0
        return len(self.components()) == 1 and not self.isolated


# ---------------------------------------------------------------------------
# Edge soup: mutable scratch representation used by every surgery.
# ---------------------------------------------------------------------------


class _Soup:
    """Edges with two terminals each; terminals are ('V',key) or ('S',key).

    Keys are arbitrary sortable tokens; finalize() densifies them in
    ascending key order, which is what makes surgeries deterministic.
    """

    def __init__(self) -> None:
        self.vkeys: set = set()
        self.edges: dict[int, list] = {}
        self._next_eid = 0
        self.sowner: dict = {}
        self.free_loops = 0
        self.connectors: list[tuple[str, bool, list]] = []

    @staticmethod
    def from_multipole(m: Multipole, tag: int = 0) -> "_Soup":
        # keys are (tag, id) tuples; fresh semiedges use tag 9 so they sort
        # after every existing id, keeping surgeries deterministic
        sp = _Soup()
        pre = lambda x: (tag, x)
        for v in range(m.n):
            sp.vkeys.add(pre(v))
        for u, v in m.links:
            sp.add_edge((VERTEX, pre(u)), (VERTEX, pre(v)))
        for v, s in m.dangling:
            sp.add_edge((VERTEX, pre(v)), (SEMI, pre(s)))
        for s, t in m.isolated:
            sp.add_edge((SEMI, pre(s)), (SEMI, pre(t)))
        sp.free_loops = m.free_loops
        for c in m.connectors:
            sp.connectors.append((c.name, c.ordered, [pre(s) for s in c.semiedges]))
        return sp

    def add_edge(self, t1, t2) -> int:
        eid = self._next_eid
        self._next_eid += 1
        self.edges[eid] = [t1, t2]
        for slot, t in enumerate((t1, t2)):
            if t[0] == SEMI:
                self.sowner[t[1]] = (eid, slot)
        return eid

    def join(self, skey1, skey2) -> None:
        """Junction of two semiedges: merge their edges into one."""
        if skey1 == skey2:
            raise MultipoleError("cannot join a semiedge with itself")
        e1, slot1 = self.sowner.pop(skey1)
        e2, slot2 = self.sowner.pop(skey2)
        if e1 == e2:
            # both ends of one edge: produces a free loop
            del self.edges[e1]
            self.free_loops += 1
            return
        other1 = self.edges[e1][1 - slot1]
        other2 = self.edges[e2][1 - slot2]
        del self.edges[e1]
        del self.edges[e2]
        eid = self.add_edge(other1, other2)
        # re-point surviving semiedge owners at the merged edge
        for slot, t in enumerate(self.edges[eid]):
            if t[0] == SEMI:
                self.sowner[t[1]] = (eid, slot)

    def sever(self, eid, newkey1, newkey2) -> None:
        """Cut an edge into two, ends replaced by fresh semiedges."""
        t1, t2 = self.edges.pop(eid)
        for t in (t1, t2):
            if t[0] == SEMI:
                del self.sowner[t[1]]
        self.add_edge(t1, (SEMI, newkey1))
        self.add_edge(t2, (SEMI, newkey2))

    def drop_vertex(self, vkey) -> None:
        self.vkeys.remove(vkey)

    def finalize(self) -> Multipole:
        vmap = {k: i for i, k in enumerate(sorted(self.vkeys))}
        smap = {k: i for i, k in enumerate(sorted(self.sowner))}
        links, dang, iso = [], [], []
        for t1, t2 in self.edges.values():
            kinds = (t1[0], t2[0])
            if kinds == (VERTEX, VERTEX):
                links.append((vmap[t1[1]], vmap[t2[1]]))
            elif kinds == (VERTEX, SEMI):
                dang.append((vmap[t1[1]], smap[t2[1]]))
            elif kinds == (SEMI, VERTEX):
                dang.append((vmap[t2[1]], smap[t1[1]]))
            else:
                iso.append((smap[t1[1]], smap[t2[1]]))
        cons = []
        seen: set[str] = set()
        for name, ordered, skeys in self.connectors:
            kept = [smap[k] for k in skeys if k in smap]
            if kept:
                while name in seen:
                    name += "'"
                seen.add(name)
                cons.append((name, ordered, kept))
        return Multipole.build(len(vmap), links, dang, iso, cons, self.free_loops)


# ---------------------------------------------------------------------------
# Surgeries
# ---------------------------------------------------------------------------


def junction_semiedges(m: Multipole, s1: int, s2: int) -> Multipole:
    """Join two semiedges of m into a single edge.

    Joining the two ends of one isolated edge yields a free loop, which is
    representable but rejected by the analysis operations downstream.
    """
    if s1 == s2:
        raise MultipoleError("junction requires two distinct semiedges")
    sids = set(m.semiedge_ids())
    for s in (s1, s2):
        if s not in sids:
            raise MultipoleError(f"unknown semiedge {s}")
    sp = _Soup.from_multipole(m)
    sp.join((0, s1), (0, s2))
    return sp.finalize()


def junction_connectors(
    m: Multipole,
    a: str,
    n: Multipole,
    b: str,
    perm: Sequence[int] | None = None,
) -> Multipole:
    """Disjoint union of m and n with connectors a and b joined pairwise.

    The i-th semiedge of a (in its stored enumeration) is joined to the
    perm[i]-th semiedge of b. When both connectors are ordered the order is
    honoured and perm must be the identity; for unordered connectors the
    stored ascending enumeration is the default.
    """
    ca, cb = m.connector(a), n.connector(b)
    if ca.arity != cb.arity:
        raise MultipoleError(
            f"arity mismatch: {a!r} has {ca.arity}, {b!r} has {cb.arity}"
        )
    k = ca.arity
    if perm is None:
        perm = tuple(range(k))
    if sorted(perm) != list(range(k)):
        raise MultipoleError(f"invalid permutation {perm!r}")
    if ca.ordered and cb.ordered and tuple(perm) != tuple(range(k)):
        raise MultipoleError("both connectors ordered: junction order is fixed")
    sp = _Soup.from_multipole(m, tag=0)
    sp2 = _Soup.from_multipole(n, tag=1)
    # splice sp2 into sp with fresh edge ids
    for t1, t2 in sp2.edges.values():
        sp.add_edge(t1, t2)
    sp.vkeys |= sp2.vkeys
    sp.free_loops += sp2.free_loops
    sp.connectors.extend(sp2.connectors)
    for i in range(k):
        sp.join((0, ca.semiedges[i]), (1, cb.semiedges[perm[i]]))
    # joined connectors vanish (emptied); disambiguate duplicate names
    return _dedupe_connector_names(sp.finalize())


def _dedupe_connector_names(m: Multipole) -> Multipole:
    seen: set[str] = set()
    cons = []
    changed = False
    for c in m.connectors:
        name = c.name
        while name in seen:
            name += "'"
            changed = True
        seen.add(name)
        cons.append((name, c.ordered, c.semiedges))
    if not changed:
        return m
    return Multipole.build(
        m.n, m.links, m.dangling, m.isolated, cons, m.free_loops
    )


def attach_vertex(
    m: Multipole,
    sids: Sequence[int],
    dangles: int = 0,
    dangle_connector: str = "t",
) -> Multipole:
    """Add one new vertex joined to the listed semiedges.

    The vertex additionally receives `dangles` fresh dangling edges,
    grouped into one new unordered connector. Total degree must be 3.
    """
    if len(sids) + dangles != 3:
        raise MultipoleError("new vertex needs exactly three edge ends")
    if len(set(sids)) != len(sids):
        raise MultipoleError("duplicate semiedge")
    sp = _Soup.from_multipole(m)
    vkey = (0, m.n)
    sp.vkeys.add(vkey)
    for s in sids:
        skey = (0, s)
        if skey not in sp.sowner:
            raise MultipoleError(f"unknown semiedge {s}")
        eid, slot = sp.sowner.pop(skey)
        sp.edges[eid][slot] = (VERTEX, vkey)
    group = []
    for i in range(dangles):
        skey = (9, i)
        sp.add_edge((VERTEX, vkey), (SEMI, skey))
        group.append(skey)
    if group:
        sp.connectors.append((dangle_connector, False, group))
    return _dedupe_connector_names(sp.finalize())


def junction_self(
    m: Multipole, a: str, b: str, perm: Sequence[int] | None = None
) -> Multipole:
    """Join two connectors of the same multipole pairwise."""
    ca, cb = m.connector(a), m.connector(b)
    if ca.name == cb.name:
        raise MultipoleError("self-junction needs two distinct connectors")
    if ca.arity != cb.arity:
        raise MultipoleError("arity mismatch")
    k = ca.arity
    if perm is None:
        perm = tuple(range(k))
    if sorted(perm) != list(range(k)):
        raise MultipoleError(f"invalid permutation {perm!r}")
    if ca.ordered and cb.ordered and tuple(perm) != tuple(range(k)):
        raise MultipoleError("both connectors ordered: junction order is fixed")
    sp = _Soup.from_multipole(m)
    for i in range(k):
        sp.join((0, ca.semiedges[i]), (0, cb.semiedges[perm[i]]))
    return sp.finalize()


def rename_connectors(m: Multipole, mapping: Mapping[str, str]) -> Multipole:
    """Rename connectors; names not in the mapping stay put."""
    cons = [
        (mapping.get(c.name, c.name), c.ordered, c.semiedges)
        for c in m.connectors
    ]
    return Multipole.build(m.n, m.links, m.dangling, m.isolated, cons, m.free_loops)


def with_connectors(
    m: Multipole, connectors: Iterable[tuple[str, bool, Sequence[int]]]
) -> Multipole:
    """Replace the connector partition outright."""
    return Multipole.build(
        m.n, m.links, m.dangling, m.isolated, connectors, m.free_loops
    )


def disjoint_union(m: Multipole, n: Multipole) -> Multipole:
    """Side-by-side union; n's connector names get a prime on collision."""
    off_v, off_s = m.n, m.semiedge_count
    cons = [[c.name, c.ordered, list(c.semiedges)] for c in m.connectors]
    seen = {c.name for c in m.connectors}
    for c in n.connectors:
        name = c.name
        while name in seen:
            name += "'"
        seen.add(name)
        cons.append([name, c.ordered, [s + off_s for s in c.semiedges]])
    return Multipole.build(
        m.n + n.n,
        list(m.links) + [(u + off_v, v + off_v) for u, v in n.links],
        list(m.dangling) + [(v + off_v, s + off_s) for v, s in n.dangling],
        list(m.isolated) + [(s + off_s, t + off_s) for s, t in n.isolated],
        cons,
        m.free_loops + n.free_loops,
    )


def _link_eids(sp: _Soup) -> dict[tuple[int, int], list[int]]:
    """Map (u,v) vertex-id pairs to soup edge ids (single-tag soup only)."""
    table: dict[tuple[int, int], list[int]] = {}
    for eid in sorted(sp.edges):
        t1, t2 = sp.edges[eid]
        if t1[0] == VERTEX and t2[0] == VERTEX:
            u, v = t1[1][1], t2[1][1]
            table.setdefault((min(u, v), max(u, v)), []).append(eid)
    return table


def sever_edges(m: Multipole, edges: Iterable[tuple[int, int]]) -> Multipole:
    """Cut each listed link into two dangling edges.

    New semiedges go to per-edge 2-connectors named cut0, cut1, ... in the
    order the edges were listed. A pair occurring twice severs two parallel
    copies.
    """
    sp = _Soup.from_multipole(m)
    table = _link_eids(sp)
    for i, (u, v) in enumerate(edges):
        key = (min(u, v), max(u, v))
        pool = table.get(key)
        if not pool:
            raise MultipoleError(f"edge ({u},{v}) not present")
        eid = pool.pop(0)
        t1, t2 = sp.edges[eid]
        k1, k2 = (9, i, 0), (9, i, 1)
        # align: first new semiedge sits at the smaller endpoint
        if t1[1] > t2[1]:
            t1, t2 = t2, t1
        sp.edges.pop(eid)
        sp.add_edge(t1, (SEMI, k1))
        sp.add_edge(t2, (SEMI, k2))
        sp.connectors.append((f"cut{i}", False, [k1, k2]))
    return sp.finalize()


def remove_vertices(m: Multipole, vs: Iterable[int]) -> Multipole:
    """Delete vertices; each incident link end becomes a semiedge.

    Links joining two removed vertices (and loops at removed vertices) are
    kept as isolated edges. New semiedges are grouped into one unordered
    connector per removed vertex, named v<old id> -- these groups are the
    stable provenance labels used by the criticality checks.
    """
    rem = sorted(set(vs))
    for v in rem:
        if not 0 <= v < m.n:
            raise MultipoleError(f"unknown vertex {v}")
    sp = _Soup.from_multipole(m)
    removed = {(0, v) for v in rem}
    # collect incident edge-ends per removed vertex, deterministic order
    per_vertex: dict[tuple, list[tuple]] = {(0, v): [] for v in rem}
    for eid in sorted(sp.edges):
        t1, t2 = sp.edges[eid]
        for slot, t in enumerate((t1, t2)):
            if t[0] == VERTEX and t[1] in removed:
                other = t2 if slot == 0 else t1
                per_vertex[t[1]].append((other, eid, slot))
    counter = itertools.count()
    for v in rem:
        vkey = (0, v)
        group = []
        # each (eid, slot) names one edge end at v; replace it in place so
        # edge ids stay stable while both ends of a link may be replaced
        for other, eid, slot in sorted(per_vertex[vkey]):
            skey = (9, next(counter))
            sp.edges[eid][slot] = (SEMI, skey)
            sp.sowner[skey] = (eid, slot)
            group.append(skey)
        sp.connectors.append((f"v{v}", False, group))
        sp.drop_vertex(vkey)
    return _dedupe_connector_names(sp.finalize())


def drop_isolated_edges(m: Multipole) -> Multipole:
    """Remove all isolated edges (their semiedges leave their connectors)."""
    if not m.isolated:
        return m
    dead = {s for p in m.isolated for s in p}
    keep = sorted(s for _, s in m.dangling)
    smap = {s: i for i, s in enumerate(keep)}
    cons = []
    for c in m.connectors:
        ss = [smap[s] for s in c.semiedges if s not in dead]
        if ss:
            cons.append((c.name, c.ordered, ss))
    return Multipole.build(
        m.n,
        m.links,
        [(v, smap[s]) for v, s in m.dangling],
        (),
        cons,
        m.free_loops,
    )


def cut_along(
    g: Multipole, edges: Sequence[tuple[int, int]]
) -> tuple[Multipole, Multipole]:
    """Split a connected cubic graph along a disconnecting edge set.

    Each side receives one ordered connector named "cut" whose i-th semiedge
    is the local half of the i-th listed edge, so
    junction_connectors(side1, "cut", side2, "cut") reproduces g.
    """
    if not g.is_graph:
        raise MultipoleError("cut_along expects a 0-pole")
    if not g.is_connected():
        raise MultipoleError("cut_along expects a connected graph")
    severed = sever_edges(g, edges)
    comps = severed.components()
    if len(comps) != 2:
        raise MultipoleError(
            f"cut yields {len(comps)} components, need exactly 2"
        )
    comps.sort(key=min)
    k = len(edges)
    sides = []
    for comp in comps:
        vmap = {v: i for i, v in enumerate(sorted(comp))}
        links = [
            (vmap[u], vmap[v]) for u, v in severed.links if u in comp
        ]
        dang = [(v, s) for v, s in severed.dangling if v in comp]
        # cut-order-aligned: connector cut<i> holds halves of listed edge i
        order = []
        for i in range(k):
            con = severed.connector(f"cut{i}")
            mine = [s for s in con.semiedges if severed.semiedge_vertex(s) in comp]
            if len(mine) != 1:
                raise MultipoleError(
                    f"cut edge {i} does not separate the two sides"
                )
            order.append(mine[0])
        smap = {s: i for i, s in enumerate(order)}
        sides.append(
            Multipole.build(
                len(comp),
                links,
                [(vmap[v], smap[s]) for v, s in dang],
                (),
                [("cut", True, [smap[s] for s in order])],
            )
        )
    return sides[0], sides[1]


def suppress_vertex(m: Multipole, v: int) -> Multipole:
    """Suppress a vertex with two link ends and one dangling end.

    The dangling edge is discarded and the two links merge into one, as in
    smoothing a 2-valent vertex of the underlying graph. Suppressing a
    vertex whose two non-dangling ends form a loop would leave a free loop
    and is rejected.
    """
    dang = [s for (w, s) in m.dangling if w == v]
    if len(dang) != 1:
        raise MultipoleError(f"vertex {v} does not have exactly one semiedge")
    if any(a == v and b == v for a, b in m.links):
        raise FreeLoopError(f"suppressing vertex {v} would create a free loop")
    inc = [i for i, (a, b) in enumerate(m.links) if v in (a, b)]
    if len(inc) != 2:
        raise MultipoleError(f"vertex {v} does not have exactly two links")
    sp = _Soup.from_multipole(m)
    vt = (VERTEX, (0, v))
    link_eids, dangle_eid = [], None
    for eid, (t1, t2) in sp.edges.items():
        if vt in (t1, t2):
            if t1[0] == VERTEX and t2[0] == VERTEX:
                link_eids.append(eid)
            else:
                dangle_eid = eid
    e1, e2 = sorted(link_eids)
    o1 = next(t for t in sp.edges[e1] if t != vt)
    o2 = next(t for t in sp.edges[e2] if t != vt)
    t1, t2 = sp.edges[dangle_eid]
    skey = t1[1] if t1[0] == SEMI else t2[1]
    del sp.sowner[skey]
    sp.edges.pop(dangle_eid)
    sp.edges.pop(e1)
    sp.edges.pop(e2)
    sp.add_edge(o1, o2)
    sp.drop_vertex((0, v))
    return sp.finalize()


def relabel(m: Multipole, vperm: Sequence[int], sperm: Sequence[int] | None = None) -> Multipole:
    """Apply a vertex (and optional semiedge) relabeling; vperm[old] = new."""
    k = m.semiedge_count
    if sperm is None:
        sperm = list(range(k))
    cons = [
        (c.name, c.ordered, [sperm[s] for s in c.semiedges]) for c in m.connectors
    ]
    return Multipole.build(
        m.n,
        [(vperm[u], vperm[v]) for u, v in m.links],
        [(vperm[v], sperm[s]) for v, s in m.dangling],
        [(sperm[s], sperm[t]) for s, t in m.isolated],
        cons,
        m.free_loops,
    )


SemiRef = tuple[str, str, int]  # (part name, connector name, index in connector)


def wire(
    parts: Sequence[tuple[str, Multipole]],
    joins: Sequence[tuple[SemiRef, SemiRef]] = (),
    new_vertices: Sequence[tuple[str, Sequence[SemiRef], int]] = (),
) -> Multipole:
    """Assemble several multipoles with one batch of junctions.

    Semiedges are addressed as (part, connector, index) against the
    original parts, so references never shift mid-assembly. Each entry of
    new_vertices adds one vertex joined to the listed semiedges plus
    fresh dangling edges grouped under the given connector name (omitted
    when zero). Surviving part connectors are renamed part.connector.
    """
    tags = {name: i for i, (name, _) in enumerate(parts)}
    if len(tags) != len(parts):
        raise MultipoleError("part names must be unique")
    sp = _Soup()
    for idx, (name, m) in enumerate(parts):
        sub = _Soup.from_multipole(m, tag=idx)
        for t1, t2 in sub.edges.values():
            sp.add_edge(t1, t2)
        sp.vkeys |= sub.vkeys
        sp.free_loops += sub.free_loops
        for cname, ordered, skeys in sub.connectors:
            sp.connectors.append((f"{name}.{cname}", ordered, skeys))

    def resolve(ref: SemiRef):
        pname, cname, i = ref
        part = parts[tags[pname]][1]
        con = part.connector(cname)
        return (tags[pname], con.semiedges[i])

    used: set = set()

    def take(ref: SemiRef):
        key = resolve(ref)
        if key in used:
            raise MultipoleError(f"semiedge {ref} used twice")
        used.add(key)
        return key

    for ra, rb in joins:
        sp.join(take(ra), take(rb))
    for vi, (dconn, refs, ndang) in enumerate(new_vertices):
        vkey = (9, vi)
        sp.vkeys.add(vkey)
        if len(refs) + ndang != 3:
            raise MultipoleError("new vertex needs exactly three edge ends")
        for ref in refs:
            key = take(ref)
            eid, slot = sp.sowner.pop(key)
            sp.edges[eid][slot] = (VERTEX, vkey)
        group = []
        for j in range(ndang):
            skey = (9, vi, j)
            sp.add_edge((VERTEX, vkey), (SEMI, skey))
            group.append(skey)
        if group:
            sp.connectors.append((dconn, False, group))
    return sp.finalize()


def regroup(
    m: Multipole, groups: Sequence[tuple[str, bool, Sequence[tuple[str, int]]]]
) -> Multipole:
    """Re-partition semiedges into new connectors.

    Each group lists (old connector name, index) pairs; every semiedge
    must be covered exactly once.
    """
    cons = []
    for name, ordered, members in groups:
        sids = [m.connector(cn).semiedges[i] for cn, i in members]
        cons.append((name, ordered, sids))
    return Multipole.build(m.n, m.links, m.dangling, m.isolated, cons, m.free_loops)


def induced_side(
    g: Multipole, vertex_set: Iterable[int]
) -> tuple[Multipole, list[tuple[int, int]]]:
    """Multipole induced by a vertex subset of a 0-pole.

    Links leaving the set become dangling edges. Returns the side (all
    semiedges in one unordered connector) and the boundary list: entry i is
    the link (u,v) of g, u inside, that produced semiedge i.
    """
    if not g.is_graph:
        raise MultipoleError("induced_side expects a 0-pole")
    inside = set(vertex_set)
    vmap = {v: i for i, v in enumerate(sorted(inside))}
    links, boundary = [], []
    for u, v in g.links:
        if u in inside and v in inside:
            links.append((vmap[u], vmap[v]))
        elif u in inside:
            boundary.append((u, v))
        elif v in inside:
            boundary.append((v, u))
    boundary.sort()
    dang = [(vmap[u], i) for i, (u, v) in enumerate(boundary)]
    side = Multipole.build(len(inside), links, dang, ())
    return side, boundary
