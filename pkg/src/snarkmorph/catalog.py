"""Base graphs and the small named multipoles.

Everything here is a concrete wiring: base cubic graphs (Petersen, K4,
dumbbell, flower snarks), the seven 5-cycle clusters of order up to 10,
and the small poles whose colouring sets have closed forms (P_2, M_ev,
V_4, M_7, M_8, the hexagon 6-pole, Isaacs Y-poles).

Petersen is laid out as outer cycle 0-1-2-3-4, inner pentagram 5-9 with
i+5 adjacent to ((i+2) mod 5)+5, and spokes i to i+5. Surgery selectors
below refer to that labeling.
"""

from __future__ import annotations

from .multipole import (
    Multipole,
    drop_isolated_edges,
    junction_connectors,
    junction_self,
    remove_vertices,
    rename_connectors,
    sever_edges,
    with_connectors,
)

# ---------------------------------------------------------------------------
# Base graphs
# ---------------------------------------------------------------------------


def petersen() -> Multipole:
    links = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    links += [(i, i + 5) for i in range(5)]
    links += [(5, 7), (7, 9), (6, 9), (6, 8), (5, 8)]
    return Multipole.build(10, links)


def k4() -> Multipole:
    return Multipole.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> Multipole:
    return Multipole.build(6, [(i, j) for i in range(3) for j in range(3, 6)])


def dumbbell() -> Multipole:
    return Multipole.build(2, [(0, 0), (0, 1), (1, 1)])


# ---------------------------------------------------------------------------
# Isaacs poles and flower snarks
# ---------------------------------------------------------------------------


def y_pole() -> Multipole:
    """The Isaacs (3,3)-pole Y(I,O), both connectors ordered.

    K_{3,3} minus two vertices of one part: leaves 0,1,2 on hub 3; leaf k
    carries i_{k+1} and o_{sigma(k+1)} so that (i1,o2), (i2,o1), (i3,o3)
    are the adjacent pairs.
    """
    links = [(0, 3), (1, 3), (2, 3)]
    dang = [(0, 0), (0, 1), (1, 2), (1, 3), (2, 4), (2, 5)]
    cons = [("I", True, [0, 2, 4]), ("O", True, [3, 1, 5])]
    return Multipole.build(4, links, dang, connectors=cons)


def y_chain(k: int) -> Multipole:
    """Y_k: k copies of Y with O_i joined to I_{i+1} in order."""
    if k < 1:
        raise ValueError("k must be positive")
    m = y_pole()
    for _ in range(k - 1):
        m = junction_connectors(m, "O", y_pole(), "I")
    return m


def flower_snark(n: int) -> Multipole:
    """Isaacs flower snark J_n for odd n >= 3; 4n vertices."""
    if n < 3 or n % 2 == 0:
        raise ValueError("flower snarks need odd n >= 3")
    return junction_self(y_chain(n), "O", "I")


# ---------------------------------------------------------------------------
# The seven 5-cycle clusters of order <= 10
# ---------------------------------------------------------------------------


def pentagon() -> Multipole:
    """P: a 5-cycle with one dangling edge per vertex, cyclic order fixed."""
    links = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    dang = [(i, i) for i in range(5)]
    return Multipole.build(5, links, dang, connectors=[("P", True, [0, 1, 2, 3, 4])])


def pentagram() -> Multipole:
    """The inner five of Petersen as a 5-pole, ordered to rebuild Petersen."""
    links = [(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)]
    dang = [(i, i) for i in range(5)]
    return Multipole.build(5, links, dang, connectors=[("P", True, [0, 1, 2, 3, 4])])


def c5_pole() -> Multipole:
    """Alias: the open 5-cycle C_5(e_0..e_4) is the pentagon."""
    return pentagon()


def dyad() -> Multipole:
    """D(I,O,R): Petersen minus the path 0-1-2."""
    m = drop_isolated_edges(remove_vertices(petersen(), [0, 1, 2]))
    return rename_connectors(m, {"v0": "I", "v2": "O", "v1": "R"})


def triad() -> Multipole:
    """T(B,C): Petersen minus vertex 0, edge (2,3) severed.

    The severed edge sits at distance two from the removed vertex; this is
    the choice that leaves exactly three 5-cycles.
    """
    m = remove_vertices(petersen(), [0])
    m = sever_edges(m, [(1, 2)])  # old (2,3) after reindexing
    return rename_connectors(m, {"cut0": "B", "v0": "C"})


def quasitriad() -> Multipole:
    """qT: three 5-cycles, two sharing two edges; not a Petersen cluster."""
    links = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5), (5, 6), (2, 6),
             (6, 7), (7, 8), (1, 8)]
    dang = [(0, 0), (3, 1), (5, 2), (7, 3), (8, 4)]
    return Multipole.build(9, links, dang)


def double_pentagon() -> Multipole:
    """dP(A,B,C): Petersen minus adjacent 0,1, edge (7,9) severed."""
    m = drop_isolated_edges(remove_vertices(petersen(), [0, 1]))
    m = sever_edges(m, [(5, 7)])  # old (7,9) after reindexing
    return rename_connectors(m, {"v0": "A", "v1": "B", "cut0": "C"})


def triple_pentagon() -> Multipole:
    """tP(A,B,C): sever three alternating edges of a 6-cycle of Petersen.

    The edges (0,1),(2,3),(5,8) lie alternately on the 6-cycle
    0-1-2-3-8-5-0 and do not extend to a perfect matching.
    """
    m = sever_edges(petersen(), [(0, 1), (2, 3), (5, 8)])
    return rename_connectors(m, {"cut0": "A", "cut1": "B", "cut2": "C"})


def tricell() -> Multipole:
    """tC(A,B,C): sever three spokes of Petersen (they extend to a PM)."""
    m = sever_edges(petersen(), [(0, 5), (1, 6), (2, 7)])
    return rename_connectors(m, {"cut0": "A", "cut1": "B", "cut2": "C"})


CATALOG_CLUSTERS = {
    "pentagon": pentagon,
    "dyad": dyad,
    "triad": triad,
    "quasitriad": quasitriad,
    "double_pentagon": double_pentagon,
    "triple_pentagon": triple_pentagon,
    "tricell": tricell,
}


# ---------------------------------------------------------------------------
# Small poles with closed-form colouring sets
# ---------------------------------------------------------------------------


def p2() -> Multipole:
    """P_2(I,O,r): the path of length two with dangling edges retained."""
    links = [(0, 1), (1, 2)]
    dang = [(0, 0), (0, 1), (2, 2), (2, 3), (1, 4)]
    cons = [("I", False, [0, 1]), ("O", False, [2, 3]), ("r", False, [4])]
    return Multipole.build(3, links, dang, connectors=cons)


def m_ev() -> Multipole:
    """M_ev(B,C): an isolated edge plus a vertex with three dangling edges."""
    dang = [(0, 2), (0, 3), (0, 4)]
    cons = [("B", False, [0, 1]), ("C", False, [2, 3, 4])]
    return Multipole.build(1, [], dang, [(0, 1)], cons)


def m7() -> Multipole:
    """M_7(E,I,O,r): isolated edge plus P_2; (2,2,2,1)-pole."""
    links = [(0, 1), (1, 2)]
    dang = [(0, 2), (0, 3), (2, 4), (2, 5), (1, 6)]
    cons = [
        ("E", False, [0, 1]),
        ("I", False, [2, 3]),
        ("O", False, [4, 5]),
        ("r", False, [6]),
    ]
    return Multipole.build(3, links, dang, [(0, 1)], cons)


def v4_pole() -> Multipole:
    """V_4(S1,S2,S3): a claw with two dangling edges per leaf."""
    links = [(0, 1), (0, 2), (0, 3)]
    dang = [(1, 0), (1, 1), (2, 2), (2, 3), (3, 4), (3, 5)]
    cons = [("S1", False, [0, 1]), ("S2", False, [2, 3]), ("S3", False, [4, 5])]
    return Multipole.build(4, links, dang, connectors=cons)


def hexagon_pole() -> Multipole:
    """The even (2,2,2)-pole from Petersen: a 6-cycle, opposite pairs."""
    links = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]
    dang = [(i, i) for i in range(6)]
    cons = [("S1", False, [0, 3]), ("S2", False, [1, 4]), ("S3", False, [2, 5])]
    return Multipole.build(6, links, dang, connectors=cons)


def m8() -> Multipole:
    """M_8(I,O): Petersen minus two non-adjacent vertices, proper (3,3)."""
    m = remove_vertices(petersen(), [0, 2])
    return rename_connectors(m, {"v0": "I", "v2": "O"})


def negator_from(g: Multipole, u: int, v: int) -> Multipole:
    """Neg(g; u, v): remove the path u-w-v, distribute semiedges as I/O/R.

    w is the unique common neighbour of u and v (girth >= 5 territory);
    the leftover path edges are discarded rather than kept as isolated
    edges, matching the negator construction.
    """
    if u == v:
        raise ValueError("need two distinct vertices")
    adj = g.adjacency()
    common = sorted(set(adj[u]) & set(adj[v]))
    if not common:
        raise ValueError(f"vertices {u} and {v} share no neighbour")
    if len(common) > 1:
        raise ValueError(f"vertices {u} and {v} share several neighbours")
    w = common[0]
    m = drop_isolated_edges(remove_vertices(g, [u, w, v]))
    return rename_connectors(m, {f"v{u}": "I", f"v{v}": "O", f"v{w}": "R"})


def proper23_from(g: Multipole, v: int, e: tuple[int, int]) -> Multipole:
    """T(B,C) built from a snark by removing v and severing e (v not on e)."""
    if v in e:
        raise ValueError("severed edge must not be incident with the vertex")
    m = remove_vertices(g, [v])
    shift = lambda x: x - 1 if x > v else x
    m = sever_edges(m, [(shift(e[0]), shift(e[1]))])
    return rename_connectors(m, {"cut0": "B", f"v{v}": "C"})
