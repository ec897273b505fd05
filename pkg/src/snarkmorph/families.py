"""Parameterized constructors for every graph and multipole family.

Each figure-defined family carries an explicit wiring table (parts, joins,
new vertices). Where a junction order on unordered connectors is free, the
canonical ascending enumeration is used and an `alignment` parameter
exposes the other variants. verify_family_uncolourable replays each
family's uncolourability argument on component colouring sets (staged
junction joins plus the named forcing facts) independently of the direct
search oracle, and both routes must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import catalog
from .canon import canonical_code, isomorphic
from .multipole import (
    Multipole,
    MultipoleError,
    SemiRef,
    junction_connectors,
    regroup,
    remove_vertices,
    rename_connectors,
    sever_edges,
    wire,
    with_connectors,
)
from .tait import (
    ColouringSet,
    colouring_set,
    count_colourings,
    is_colourable,
    is_even_222,
    is_perfect_negator,
    is_perfect_proper23,
    join_tuple_sets,
    klein_sum,
    v4_reference_set,
)


class FamilyError(MultipoleError):
    """Bad family id, wrong part shape, or a failed required predicate."""


class ReplayMismatch(RuntimeError):
    """The argument replay and the colouring oracle disagreed."""


# ---------------------------------------------------------------------------
# Assemblies: declarative wiring plus independent colouring-set composition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Assembly:
    """Parts plus junctions; stars are new vertices added by wire()."""

    parts: tuple[tuple[str, Multipole], ...]
    joins: tuple[tuple[SemiRef, SemiRef], ...]
    stars: tuple[tuple[str, tuple[SemiRef, ...], int], ...] = ()

    def to_multipole(self) -> Multipole:
        return wire(list(self.parts), list(self.joins), list(self.stars))

    def composed_tuples(self) -> frozenset[tuple[int, ...]]:
        """Colouring set of the assembly composed from part colouring sets.

        This never runs the backtracking search on the assembled object:
        parts are joined set-theoretically, stars contribute the
        three-distinct-colours set. The empty tuple is present in the
        result of a 0-pole assembly iff the assembly is colourable.
        """
        # realize stars as explicit parts
        parts: list[tuple[str, frozenset, dict]] = []
        for name, m in self.parts:
            cs = colouring_set(m)
            posmap = {s: i for i, s in enumerate(range(m.semiedge_count))}
            parts.append((name, cs.tuples, posmap))
        joins = [
            (self._abs(ra), self._abs(rb)) for ra, rb in self.joins
        ]
        star_sets = frozenset(
            (a, b, c)
            for a in (1, 2, 3)
            for b in (1, 2, 3)
            for c in (1, 2, 3)
            if a != b and b != c and a != c
        )
        for si, (dconn, refs, ndang) in enumerate(self.stars):
            name = f"*star{si}"
            k = len(refs) + ndang
            if k == 3:
                ts = star_sets
            else:
                raise MultipoleError("stars always have three ends")
            posmap = {i: i for i in range(3)}
            parts.append((name, ts, posmap))
            for j, ref in enumerate(refs):
                joins.append(((name, j), self._abs(ref)))
        # fold
        state: frozenset | None = None
        positions: list[tuple[str, int]] = []
        placed: set[str] = set()
        pending = list(joins)
        for name, tuples, posmap in parts:
            if state is None:
                state = tuples
                positions = [(name, s) for s in sorted(posmap)]
            else:
                pairs = []
                rest = []
                for (na, sa), (nb, sb) in pending:
                    if na == name and nb in placed:
                        pairs.append((positions.index((nb, sb)), posmap[sa]))
                    elif nb == name and na in placed:
                        pairs.append((positions.index((na, sa)), posmap[sb]))
                    else:
                        rest.append(((na, sa), (nb, sb)))
                pending = rest
                ka, kb = len(positions), len(posmap)
                state = join_tuple_sets(state, tuples, pairs, ka, kb)
                a_keep = [
                    positions[i]
                    for i in range(ka)
                    if i not in {i for i, _ in pairs}
                ]
                b_keep = [
                    (name, s)
                    for s in sorted(posmap)
                    if posmap[s] not in {j for _, j in pairs}
                ]
                positions = a_keep + b_keep
            placed.add(name)
            if len(positions) > 14:
                raise MultipoleError("composition width exceeded; reorder parts")
        # self-joins that closed cycles inside the accumulated state
        while pending:
            (na, sa), (nb, sb) = pending.pop(0)
            i, j = positions.index((na, sa)), positions.index((nb, sb))
            keep = [p for p in range(len(positions)) if p not in (i, j)]
            state = frozenset(
                tuple(t[p] for p in keep) for t in state if t[i] == t[j]
            )
            positions = [positions[p] for p in keep]
        return state if state is not None else frozenset()

    def _abs(self, ref: SemiRef) -> tuple[str, int]:
        """Resolve (part, connector, index) to (part, semiedge id)."""
        pname, cname, i = ref
        for name, m in self.parts:
            if name == pname:
                return (pname, m.connector(cname).semiedges[i])
        raise MultipoleError(f"unknown part {pname!r}")


def _negator_ok(m: Multipole) -> None:
    v = is_perfect_negator(m)
    if v == "not_a_negator":
        raise FamilyError("part is not a negator (colouring set escapes)")


def _proper23_ok(m: Multipole) -> None:
    v = is_perfect_proper23(m)
    if v == "not_proper":
        raise FamilyError("part is not a proper (2,3)-pole")


def _even_ok(m: Multipole) -> None:
    if not is_even_222(m):
        raise FamilyError("part is not an even (2,2,2)-pole")


def _chain_perm(alignment, i, default=(0, 1)):
    if alignment is None:
        return default
    return alignment[i] if alignment[i] is not None else default


# ---------------------------------------------------------------------------
# Composition poles (prose-pinned wiring)
# ---------------------------------------------------------------------------


def nn_pole(n1: Multipole, n2: Multipole, alignment=None) -> Multipole:
    """NN(N1,N2): O1 joined to I2, residuals meet a new vertex with one
    fresh dangling edge. A proper (2,2,1)-pole with Col inside Col(P_2)."""
    for n in (n1, n2):
        _negator_ok(n)
    p = _chain_perm(alignment, 0)
    m = wire(
        [("n1", n1), ("n2", n2)],
        joins=[(("n1", "O", 0), ("n2", "I", p[0])), (("n1", "O", 1), ("n2", "I", p[1]))],
        new_vertices=[("r", [("n1", "R", 0), ("n2", "R", 0)], 1)],
    )
    return rename_connectors(m, {"n1.I": "I", "n2.O": "O"})


def tt_pole(t1: Multipole, t2: Multipole, alignment=None) -> Multipole:
    """TT(T1,T2): 3-connectors joined, one junction edge subdivided and
    given a fresh dangling edge."""
    for t in (t1, t2):
        _proper23_ok(t)
    p = alignment if alignment is not None else (0, 1, 2)
    m = wire(
        [("t1", t1), ("t2", t2)],
        joins=[(("t1", "C", 1), ("t2", "C", p[1])), (("t1", "C", 2), ("t2", "C", p[2]))],
        new_vertices=[("r", [("t1", "C", 0), ("t2", "C", p[0])], 1)],
    )
    return rename_connectors(m, {"t1.B": "I", "t2.B": "O"})


def nt_pole(n: Multipole, t: Multipole, alignment=None) -> Multipole:
    """NT(N,T): O joined to B; one semiedge of C subdivided, the residual
    of N attached to the new vertex. An improper (2,3)-pole."""
    _negator_ok(n)
    _proper23_ok(t)
    p = _chain_perm(alignment, 0)
    m = wire(
        [("n", n), ("t", t)],
        joins=[(("n", "O", 0), ("t", "B", p[0])), (("n", "O", 1), ("t", "B", p[1]))],
        new_vertices=[("e3", [("t", "C", 0), ("n", "R", 0)], 1)],
    )
    return regroup(
        m,
        [
            ("I", False, [("n.I", 0), ("n.I", 1)]),
            ("C", False, [("t.C", 0), ("t.C", 1), ("e3", 0)]),
        ],
    )


def w_pole() -> Multipole:
    """The (3,3,3)-pole W: one vertex with three dangling edges plus three
    isolated edges, each isolated edge spanning two different connectors."""
    dang = [(0, 0), (0, 1), (0, 2)]
    iso = [(3, 4), (5, 6), (7, 8)]
    cons = [
        ("D1", False, [0, 3, 8]),
        ("D2", False, [1, 4, 5]),
        ("D3", False, [2, 6, 7]),
    ]
    return Multipole.build(1, [], dang, iso, cons)


def ttt_pole(t1: Multipole, t2: Multipole, t3: Multipole, alignment=None) -> Multipole:
    """TTT(T1,T2,T3): three proper (2,3)-poles on the W-pole hub."""
    for t in (t1, t2, t3):
        _proper23_ok(t)
    al = alignment if alignment is not None else ((0, 1, 2),) * 3
    joins = []
    for i in (1, 2, 3):
        p = al[i - 1]
        joins += [(("w", f"D{i}", j), (f"t{i}", "C", p[j])) for j in range(3)]
    m = wire([("w", w_pole()), ("t1", t1), ("t2", t2), ("t3", t3)], joins)
    return rename_connectors(m, {"t1.B": "B1", "t2.B": "B2", "t3.B": "B3"})


def three_nt_pole(
    n1: Multipole, n2: Multipole, n3: Multipole, t: Multipole, alignment=None
) -> Multipole:
    """3NT(N1,N2,N3,T): the panchromatic (2,2,2,1)-pole."""
    for n in (n1, n2, n3):
        _negator_ok(n)
    _proper23_ok(t)
    al = alignment if alignment is not None else ((0, 1), (0, 1))
    m = wire(
        [("n1", n1), ("n2", n2), ("n3", n3), ("t", t)],
        joins=[
            (("n1", "I", 0), ("t", "B", al[0][0])),
            (("n1", "I", 1), ("t", "B", al[0][1])),
            (("n2", "I", 0), ("t", "C", 1)),
            (("n2", "I", 1), ("t", "C", 2)),
            (("n3", "I", 0), ("t", "C", 0)),
            (("n3", "I", 1), ("n1", "R", 0)),
        ],
        new_vertices=[("r", [("n2", "R", 0), ("n3", "R", 0)], 1)],
    )
    return rename_connectors(m, {"n1.O": "O1", "n2.O": "O2", "n3.O": "O3"})


# ---------------------------------------------------------------------------
# Snark families
# ---------------------------------------------------------------------------


def nnn_assembly(ns: Sequence[Multipole], alignment=None) -> Assembly:
    """NNN(N1,N2,N3): negators on a circle, residuals starred together."""
    if len(ns) != 3:
        raise FamilyError("NNN takes three negators")
    for n in ns:
        _negator_ok(n)
    names = ("n1", "n2", "n3")
    joins = []
    for i in range(3):
        p = _chain_perm(alignment, i)
        a, b = names[i], names[(i + 1) % 3]
        joins += [((a, "O", 0), (b, "I", p[0])), ((a, "O", 1), (b, "I", p[1]))]
    stars = ((("", tuple((nm, "R", 0) for nm in names), 0)),)
    return Assembly(tuple(zip(names, ns)), tuple(joins), stars)


def m11_pole() -> Multipole:
    """The 7-pole M_11 from J_3: delete one vertex, sever two edges.

    Connectors: E12 = halves of the first severed edge, E34 = halves of
    the second (E34[1] plays e3, E34[0] plays e4), W = the three stubs of
    the deleted vertex (W[1] is the residual-attachment stub). Chosen so
    that both reassembly patterns of the class 32-A argument reproduce J_3.
    """
    j3 = catalog.flower_snark(3)
    m = remove_vertices(j3, [0])
    m = sever_edges(m, [(0, 3), (5, 9)])  # edges (1,4) and (6,10) of J_3
    return rename_connectors(m, {"cut0": "E12", "cut1": "E34", "v0": "W"})


def class_32a_assembly(ns: Sequence[Multipole], alignment=None) -> Assembly:
    """Class 32-A: three negators chained through the 7-pole M_11."""
    if len(ns) != 3:
        raise FamilyError("class 32-A takes three negators")
    for n in ns:
        _negator_ok(n)
    al = alignment if alignment is not None else ((0, 1),) * 4
    s1, s2, s3, s4 = al
    joins = [
        (("n2", "O", 0), ("n1", "I", s1[0])),
        (("n2", "O", 1), ("n1", "I", s1[1])),
        (("n1", "O", 0), ("n3", "I", s2[0])),
        (("n1", "O", 1), ("n3", "I", s2[1])),
        (("n3", "O", 0), ("m", "E12", s3[0])),
        (("n3", "O", 1), ("m", "E12", s3[1])),
        (("n3", "R", 0), ("m", "E34", 1)),
        (("n1", "R", 0), ("m", "E34", 0)),
        (("n2", "R", 0), ("m", "W", 1)),
        (("n2", "I", 0), ("m", "W", (0, 2)[s4[0]])),
        (("n2", "I", 1), ("m", "W", (0, 2)[s4[1]])),
    ]
    parts = (("n1", ns[0]), ("n2", ns[1]), ("n3", ns[2]), ("m", m11_pole()))
    return Assembly(parts, tuple(joins))


def strict_ttt_pole(ts: Sequence[Multipole], alignment=None) -> Multipole:
    """The strict-criticality (2,2,2)-pole: three proper (2,3)-poles whose
    3-connectors are spread transversally over three new vertices."""
    if len(ts) != 3:
        raise FamilyError("the gadget takes three proper (2,3)-poles")
    for t in ts:
        _proper23_ok(t)
    al = alignment if alignment is not None else ((0, 1, 2), (0, 1, 2))
    p2, p3 = al
    stars = tuple(
        ("", (("t1", "C", j), ("t2", "C", p2[j]), ("t3", "C", p3[j])), 0)
        for j in range(3)
    )
    m = wire([("t1", ts[0]), ("t2", ts[1]), ("t3", ts[2])], [], stars)
    return rename_connectors(m, {"t1.B": "B1", "t2.B": "B2", "t3.B": "B3"})


def strict_ttt_snark(ts: Sequence[Multipole] | None = None, alignment=None) -> Multipole:
    """The gadget substituted into the Petersen graph for V_4."""
    gadget = strict_ttt_pole(ts or [catalog.triad()] * 3, alignment)
    joins = [
        (("h", f"S{i}", j), ("m", f"B{i}", j)) for i in (1, 2, 3) for j in range(2)
    ]
    return wire([("h", catalog.hexagon_pole()), ("m", gadget)], joins)
