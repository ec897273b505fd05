"""Criticality predicates: removable pairs, grades, essential pairs,
edge reduction/extension, negator profiles and feasibility.

Polarity note: a pair (of vertices or edges) is removable when its removal
leaves an *uncolourable* graph, i.e. the pair can be taken out without
destroying uncolourability. Critical snarks have no removable adjacent
vertex pair; bicritical snarks have none at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .catalog import negator_from
from .multipole import (
    FreeLoopError,
    Multipole,
    MultipoleError,
    remove_vertices,
    sever_edges,
    suppress_vertex,
)
from .structure import cyclic_connectivity, girth
from .tait import is_colourable, count_colourings, is_perfect_negator


class VerificationError(RuntimeError):
    """Two independent routes to the same fact disagreed."""


@dataclass(frozen=True)
class PairVerdict:
    kind: str  # "vertex-pair" | "edge-pair"
    pair: tuple
    removable: bool
    essential: bool | None = None
    reduced_colourings: int | None = None


@dataclass(frozen=True)
class CriticalityGrade:
    grade: str  # not_snark | snark_trivial | critical_strict | bicritical | noncritical_snark
    witness: tuple | None = None


# ---------------------------------------------------------------------------
# Vertex pairs
# ---------------------------------------------------------------------------


def removed_pair_multipole(g: Multipole, u: int, v: int) -> Multipole:
    """G - {u,v} as a 6-pole; an edge uv survives as an isolated edge."""
    return remove_vertices(g, [u, v])


def removable_vertex_pair(
    g: Multipole, u: int, v: int, count: bool = False
) -> PairVerdict:
    """Removable iff G - {u,v} stays uncolourable."""
    if u == v:
        raise MultipoleError("need two distinct vertices")
    if not g.is_graph:
        raise MultipoleError("expected a cubic graph")
    if is_colourable(g):
        raise MultipoleError("grade guard: the input graph is colourable")
    reduced = removed_pair_multipole(g, u, v)
    cnt = count_colourings(reduced) if count else None
    removable = (cnt == 0) if count else not is_colourable(reduced)
    return PairVerdict("vertex-pair", (u, v), removable, None, cnt)


# ---------------------------------------------------------------------------
# Edge reduction and extension
# ---------------------------------------------------------------------------


def reduce_edge(g: Multipole, e: tuple[int, int]) -> Multipole:
    """G ~ e: delete the edge and suppress its two 2-valent ends."""
    u, v = e
    if u == v:
        raise MultipoleError("cannot reduce a loop")
    m = sever_edges(g, [e])
    m = suppress_vertex(m, max(u, v))
    shifted = min(u, v)
    return suppress_vertex(m, shifted)


def extend_edge(
    g: Multipole, e1: tuple[int, int], e2: tuple[int, int]
) -> Multipole:
    """I-extension G(e1,e2): subdivide both edges, join the new vertices.

    e1 == e2 subdivides the same edge twice, producing a digon.
    """
    links = list(g.links)
    key1 = (min(e1[0], e1[1]), max(e1[0], e1[1]))
    key2 = (min(e2[0], e2[1]), max(e2[0], e2[1]))
    x, y = g.n, g.n + 1
    links.remove(key1)
    if key1 == key2:
        links += [(e1[0], x), (x, y), (y, e1[1])] if e1[0] <= e1[1] else [
            (e1[1], x), (x, y), (y, e1[0])
        ]
        links.append((x, y))
    else:
        links.remove(key2)
        links += [(key1[0], x), (x, key1[1]), (key2[0], y), (y, key2[1]), (x, y)]
    return Multipole.build(
        g.n + 2, links, g.dangling, g.isolated,
        [(c.name, c.ordered, c.semiedges) for c in g.connectors],
        g.free_loops,
    )


def kaszonyi_count(g: Multipole, e: tuple[int, int]) -> int:
    """Number of colourings of G ~ e (equal along every 5-cycle's edges)."""
    return count_colourings(reduce_edge(g, e))


# ---------------------------------------------------------------------------
# Edge pairs: removability and essentiality
# ---------------------------------------------------------------------------


def _deleted_pair(g: Multipole, e: tuple[int, int], f: tuple[int, int]) -> Multipole:
    """G - {e,f} modelled by severing: colourability and counts agree."""
    return sever_edges(g, [e, f])


def removable_edge_pair(
    g: Multipole, e: tuple[int, int], f: tuple[int, int]
) -> PairVerdict:
    """Removable iff G - {e1,e2} stays uncolourable (extension gives a snark)."""
    if set(e) == set(f):
        raise MultipoleError("need two distinct edges")
    removable = not is_colourable(_deleted_pair(g, e, f))
    return PairVerdict("edge-pair", (tuple(e), tuple(f)), removable)


def essential_pair(
    g: Multipole, e: tuple[int, int], f: tuple[int, int]
) -> PairVerdict:
    """Essential: non-removable, and suppressing any 2-valent vertex of
    G - {e,f} leaves a colourable graph."""
    if set(e) == set(f):
        raise MultipoleError("need two distinct edges")
    severed = _deleted_pair(g, e, f)
    if not is_colourable(severed):
        return PairVerdict("edge-pair", (tuple(e), tuple(f)), True, False)
    shared = set(e) & set(f)
    endpoints = sorted((set(e) | set(f)) - shared)
    essential = True
    for v in endpoints:
        if not is_colourable(suppress_vertex(severed, v)):
            essential = False
            break
    return PairVerdict("edge-pair", (tuple(e), tuple(f)), False, essential)


def nearly_critical(
    g: Multipole, e: tuple[int, int], f: tuple[int, int]
) -> bool:
    """Every adjacent pair non-removable, except possibly the ends of e, f."""
    skip = {frozenset(e), frozenset(f)}
    for u, v in sorted(set(g.links)):
        if u == v or frozenset((u, v)) in skip:
            continue
        if not is_colourable(removed_pair_multipole(g, u, v)):
            return False
    return True


# ---------------------------------------------------------------------------
# Grades
# ---------------------------------------------------------------------------


def grade(g: Multipole, skip_bicritical: bool = False) -> CriticalityGrade:
    """Full criticality grade of a cubic graph.

    not_snark for colourable or disconnected inputs; snark_trivial when
    girth < 5 or cyclic connectivity < 4; then the adjacent-pair sweep
    decides critical, the all-pairs sweep bicritical. Witnesses are the
    first removable pair in ascending order.
    """
    if not g.is_graph:
        raise MultipoleError("expected a cubic graph")
    if not g.is_connected() or is_colourable(g):
        return CriticalityGrade("not_snark")
    gg = girth(g)
    if gg < 5:
        return CriticalityGrade("snark_trivial")
    cc = cyclic_connectivity(g)
    if cc < 4:
        return CriticalityGrade("snark_trivial")
    for u, v in sorted(set(g.links)):
        if not is_colourable(removed_pair_multipole(g, u, v)):
            return CriticalityGrade("noncritical_snark", (u, v))
    if skip_bicritical:
        return CriticalityGrade("critical_strict", None)
    adjacent = set(g.links)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if (u, v) in adjacent:
                continue
            if not is_colourable(removed_pair_multipole(g, u, v)):
                return CriticalityGrade("critical_strict", (u, v))
    return CriticalityGrade("bicritical")


def grade_report_dict(g: Multipole) -> dict:
    gr = grade(g)
    return {
        "order": g.n,
        "colourings": count_colourings(g),
        "grade": gr.grade,
        "witness": list(gr.witness) if gr.witness else None,
    }


# ---------------------------------------------------------------------------
# Negators
# ---------------------------------------------------------------------------


def _common_neighbour(g: Multipole, u: int, v: int) -> int:
    adj = g.adjacency()
    common = sorted(set(adj[u]) & set(adj[v]))
    if not common:
        raise MultipoleError(f"vertices {u} and {v} share no neighbour")
    if len(common) > 1:
        raise MultipoleError(f"vertices {u} and {v} share several neighbours")
    return common[0]


def negator_profile(g: Multipole, u: int, v: int) -> str:
    """perfect | semiperfect | uncolourable for Neg(g; u, v).

    Classified from the colouring set and independently from the
    removability of {u,w} and {v,w}; the two verdicts must agree.
    """
    if is_colourable(g):
        raise MultipoleError("negators are built from snarks")
    w = _common_neighbour(g, u, v)
    n = negator_from(g, u, v)
    verdict = is_perfect_negator(n)
    if verdict == "not_a_negator":
        raise VerificationError("colouring set escapes the negator envelope")
    if verdict != "uncolourable":
        uw_ok = is_colourable(removed_pair_multipole(g, u, w))
        vw_ok = is_colourable(removed_pair_multipole(g, v, w))
        predicted = "perfect" if (uw_ok and vw_ok) else "semiperfect"
        if predicted != verdict:
            raise VerificationError(
                f"negator theorem cross-check failed: set says {verdict}, "
                f"pairs say {predicted}"
            )
    return verdict


def feasible_negator(g: Multipole, u: int, v: int) -> str:
    """feasible | fails_bicritical | fails_i | fails_ii for Neg(g; u, v).

    Bicriticality of the negator demands G - {x,y} colourable for all
    pairs inside it; Property (i) prescribes an equal-colour dangling pair
    at x in {u,v}; Property (ii) the two boundary patterns of the 8-pole
    N - y. First failure wins.
    """
    if girth(g) < 5:
        raise MultipoleError("feasibility is defined for girth >= 5 hosts")
    w = _common_neighbour(g, u, v)
    body = [x for x in range(g.n) if x not in (u, w, v)]
    for i in range(len(body)):
        for j in range(i + 1, len(body)):
            if not is_colourable(removed_pair_multipole(g, body[i], body[j])):
                return "fails_bicritical"
    # Property (i): both dangling edges formerly at x get the same colour;
    # by colour symmetry pinning them to colour 1 loses nothing
    for x in (u, v):
        for y in body:
            m = remove_vertices(g, [x, y])
            stubs = m.connector(f"v{x}").semiedges
            for a in range(3):
                for b in range(a + 1, 3):
                    if not is_colourable(m, fixed={stubs[a]: 1, stubs[b]: 1}):
                        return "fails_i"
    # Property (ii): patterns (a,a,b,b,a) and (a,a,b,b,b) on (i1,i2,o1,o2,r)
    n = negator_from(g, u, v)
    i1, i2 = n.connector("I").semiedges
    o1, o2 = n.connector("O").semiedges
    (r,) = n.connector("R").semiedges
    for y in range(n.n):
        m = remove_vertices(n, [y])
        for rcol in (1, 2):
            fixed = {i1: 1, i2: 1, o1: 2, o2: 2, r: rcol}
            if not is_colourable(m, fixed=fixed):
                return "fails_ii"
    return "feasible"
