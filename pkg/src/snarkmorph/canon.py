"""Canonical forms and isomorphism for small cubic multipoles.

A multipole is encoded as a vertex-coloured multigraph: real vertices, one
node per semiedge (coloured by its connector's arity/orderedness and, for
ordered connectors, its position), and one node per connector tying its
semiedges together. Canonical labeling is iterative colour refinement with
individualization backtracking, smallest code wins. Adequate and fast at
orders up to the mid-forties; no nauty-grade machinery needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .multipole import Multipole


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical code plus the vertex relabeling that realizes it."""

    code: bytes
    vertex_order: tuple[int, ...]
    connector_respecting: bool


class _Aux:
    """The coloured multigraph the canonical labeling runs on."""

    def __init__(self, m: Multipole, connector_blind: bool):
        n = m.n
        self.nreal = n
        names: list[tuple] = [("V",)] * n
        adj: list[dict[int, int]] = [dict() for _ in range(n)]
        loops = [0] * n

        def add(a: int, b: int) -> None:
            if a == b:
                loops[a] += 1
                return
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1

        def new_node(colour: tuple) -> int:
            names.append(colour)
            adj.append(dict())
            loops.append(0)
            return len(names) - 1

        for u, v in m.links:
            add(u, v)
        semi_node: dict[int, int] = {}
        if connector_blind:
            for s in m.semiedge_ids():
                semi_node[s] = new_node(("S", 0, False, -1))
        else:
            for c in m.connectors:
                cnode = new_node(("C", c.arity, c.ordered))
                for pos, s in enumerate(c.semiedges):
                    snode = new_node(
                        ("S", c.arity, c.ordered, pos if c.ordered else -1)
                    )
                    semi_node[s] = snode
                    add(cnode, snode)
        for v, s in m.dangling:
            add(v, semi_node[s])
        for s, t in m.isolated:
            add(semi_node[s], semi_node[t])

        self.adj = adj
        self.nn = len(names)
        # initial colours: dense ints over sorted distinct base colours+loops
        base = [(names[i], loops[i]) for i in range(self.nn)]
        palette = {b: i for i, b in enumerate(sorted(set(base)))}
        self.initial = [palette[b] for b in base]
        self.free_loops = m.free_loops


def _refine(adj: Sequence[dict[int, int]], colours: list[int]) -> list[int]:
    nn = len(colours)
    while True:
        sig = [
            (
                colours[i],
                tuple(sorted((colours[j], mult) for j, mult in adj[i].items())),
            )
            for i in range(nn)
        ]
        palette = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [palette[sig[i]] for i in range(nn)]
        if new == colours:
            return new
        colours = new


def _code_for(aux: _Aux, order: list[int]) -> bytes:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = sorted((pos[w], mult) for w, mult in aux.adj[v].items())
        rows.append(tuple(row))
    payload = (
        aux.nreal,
        aux.free_loops,
        tuple(aux.initial[v] for v in order),
        tuple(rows),
    )
    return repr(payload).encode()


def _canon_order(aux: _Aux) -> list[int]:
    best: dict = {"code": None, "order": None}

    def rec(colours: list[int]) -> None:
        colours = _refine(aux.adj, colours)
        classes: dict[int, list[int]] = {}
        for i, c in enumerate(colours):
            classes.setdefault(c, []).append(i)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            order = sorted(range(aux.nn), key=lambda i: colours[i])
            code = _code_for(aux, order)
            if best["code"] is None or code < best["code"]:
                best["code"] = code
                best["order"] = order
            return
        nxt = max(colours) + 1
        for v in target:
            child = list(colours)
            child[v] = nxt
            rec(child)

    rec(list(aux.initial))
    return best["order"]


def canonical_form(m: Multipole, connector_blind: bool = False) -> CanonicalForm:
    """Canonical code, stable under relabeling; equal codes iff isomorphic.

    Connector structure is respected via colours (arities, ordered flags,
    and positions inside ordered connectors); connector names never matter.
    With connector_blind=True the semiedge grouping is ignored entirely.
    """
    aux = _Aux(m, connector_blind)
    order = _canon_order(aux)
    vorder = tuple(v for v in order if v < aux.nreal)
    return CanonicalForm(_code_for(aux, order), vorder, not connector_blind)


def canonical_code(m: Multipole, connector_blind: bool = False) -> bytes:
    return canonical_form(m, connector_blind).code


def isomorphic(a: Multipole, b: Multipole, connector_blind: bool = False) -> bool:
    """Isomorphism respecting connector arities and ordered-connector order."""
    if a.n != b.n or len(a.links) != len(b.links):
        return False
    if a.semiedge_count != b.semiedge_count or a.free_loops != b.free_loops:
        return False
    if not connector_blind and a.shape() != b.shape():
        return False
    return canonical_code(a, connector_blind) == canonical_code(b, connector_blind)


def isomorphism_map(
    pattern: Multipole, host: Multipole, connector_blind: bool = True
) -> dict[int, int] | None:
    """A vertex bijection pattern -> host when isomorphic, else None."""
    fa = canonical_form(pattern, connector_blind)
    fb = canonical_form(host, connector_blind)
    if fa.code != fb.code:
        return None
    return {pa: hb for pa, hb in zip(fa.vertex_order, fb.vertex_order)}


def invariant_key(m: Multipole) -> tuple:
    """Cheap pre-filter invariant: orders, degrees, refinement histogram."""
    aux = _Aux(m, connector_blind=True)
    colours = _refine(aux.adj, list(aux.initial))
    hist = tuple(sorted((colours.count(c)) for c in set(colours)))
    return (m.n, len(m.links), m.semiedge_count, hist)
