"""Proper 3-edge-colourings of cubic multipoles over the Klein four-group.

Colours are the nonzero elements of Z2 x Z2, encoded 1, 2, 3 (a, b, c) so
group addition is integer XOR. A colouring is proper iff the three edge
ends at every vertex carry distinct colours, equivalently iff it is a
nowhere-zero Z2 x Z2 flow.

The engine is a backtracking search with unit propagation (two coloured
ends at a vertex force the third). Edge order is a greedy static
most-constrained-first order; the search is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .multipole import FreeLoopError, Multipole, MultipoleError

KLEIN = (1, 2, 3)
_NAMES = "?abc"
_FULL = 0b1110  # bits for colours 1, 2, 3


def colour_name(c: int) -> str:
    return _NAMES[c]


def tuple_to_str(t: Sequence[int]) -> str:
    return "".join(_NAMES[c] for c in t)


def str_to_tuple(s: str) -> tuple[int, ...]:
    out = []
    for ch in s:
        i = _NAMES.find(ch)
        if i < 1:
            raise ValueError(f"bad colour letter {ch!r}")
        out.append(i)
    return tuple(out)


def parity_check(t: Sequence[int]) -> bool:
    """Parity lemma congruence: each colour count == len(t) (mod 2)."""
    k = len(t)
    counts = [0, 0, 0, 0]
    for c in t:
        counts[c] += 1
    return all((counts[c] - k) % 2 == 0 for c in KLEIN)


def klein_sum(t: Iterable[int]) -> int:
    s = 0
    for c in t:
        s ^= c
    return s


# ---------------------------------------------------------------------------
# Compiled search structure
# ---------------------------------------------------------------------------


class _Compiled:
    """Flat arrays for the solver. Edge order: links, dangling, isolated."""

    def __init__(self, m: Multipole):
        if m.free_loops:
            raise FreeLoopError("multipole contains a free loop")
        self.m = m
        ends: list[tuple[int, int]] = []
        sid_edge: dict[int, int] = {}
        self.has_loop = False
        for u, v in m.links:
            if u == v:
                self.has_loop = True
            ends.append((u, v))
        for v, s in m.dangling:
            sid_edge[s] = len(ends)
            ends.append((v, -1))
        for s, t in m.isolated:
            sid_edge[s] = len(ends)
            sid_edge[t] = len(ends)
            ends.append((-1, -1))
        self.ends = ends
        self.sid_edge = sid_edge
        self.nedges = len(ends)
        vedges: list[list[int]] = [[] for _ in range(m.n)]
        for e, (a, b) in enumerate(ends):
            if a >= 0:
                vedges[a].append(e)
            if b >= 0 and b != a:
                vedges[b].append(e)
        self.vedges = vedges
        self.order = self._static_order()
        self.n_isolated = len(m.isolated)

    def _static_order(self) -> list[int]:
        # greedy: always pick the edge touching the most already-seen
        # vertices, ties by smallest index; isolated edges land last
        remaining = set(range(self.nedges))
        touched = [False] * self.m.n
        order = []
        while remaining:
            best, best_score = None, (-1, 0)
            for e in sorted(remaining):
                a, b = self.ends[e]
                score = sum(1 for x in (a, b) if x >= 0 and touched[x])
                anchored = sum(1 for x in (a, b) if x >= 0)
                key = (score, anchored and 1)
                if key > best_score:
                    best, best_score = e, key
            order.append(best)
            remaining.discard(best)
            for x in self.ends[best]:
                if x >= 0:
                    touched[x] = True
        return order


def _compile(m: Multipole) -> _Compiled:
    return _Compiled(m)


def _search(c: _Compiled, fixed_edges: dict[int, int], mode: str):
    """Core search. mode: 'count', 'decide' or 'enumerate' (generator)."""
    if c.has_loop:
        return iter(()) if mode == "enumerate" else (0 if mode == "count" else False)

    ends = c.ends
    vedges = c.vedges
    ne = c.nedges
    col = [0] * ne
    used = [0] * c.m.n
    ncol = [0] * c.m.n

    def assign(e0: int, c0: int, trail: list[int]) -> bool:
        stack = [(e0, c0)]
        while stack:
            e, cc = stack.pop()
            if col[e]:
                if col[e] != cc:
                    return False
                continue
            a, b = ends[e]
            bit = 1 << cc
            if a >= 0 and used[a] & bit:
                return False
            if b >= 0 and used[b] & bit:
                return False
            col[e] = cc
            trail.append(e)
            for v in (a, b):
                if v < 0:
                    continue
                used[v] |= bit
                ncol[v] += 1
                if ncol[v] == 2:
                    miss = _FULL & ~used[v]
                    for e3 in vedges[v]:
                        if col[e3] == 0:
                            stack.append((e3, miss.bit_length() - 1))
                            break
        return True

    def undo(trail: list[int]) -> None:
        while trail:
            e = trail.pop()
            bit = 1 << col[e]
            col[e] = 0
            a, b = ends[e]
            for v in (a, b):
                if v >= 0:
                    used[v] &= ~bit
                    ncol[v] -= 1

    # seed with fixed colours
    seed: list[int] = []
    for e, cc in sorted(fixed_edges.items()):
        if not assign(e, cc, seed):
            undo(seed)
            return iter(()) if mode == "enumerate" else (0 if mode == "count" else False)

    # count/decide shortcut: unconstrained isolated edges factor out as 3^t
    iso_factor = 1
    skip: set[int] = set()
    if mode in ("count", "decide"):
        free_iso = [
            e for e in range(ne - c.n_isolated, ne) if col[e] == 0
        ]
        skip = set(free_iso)
        iso_factor = 3 ** len(free_iso)
    order = [e for e in c.order if e not in skip]
    nord = len(order)
    # colour symmetry: with nothing pinned, the first decision may be fixed
    sym_root = mode == "decide" and not fixed_edges

    if mode == "enumerate":

        def gen() -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
            k = c.m.semiedge_count
            sid_edge = c.sid_edge

            def rec(pos: int) -> Iterator:
                while pos < nord and col[order[pos]]:
                    pos += 1
                if pos == nord:
                    yield tuple(col), tuple(col[sid_edge[s]] for s in range(k))
                    return
                e = order[pos]
                trail: list[int] = []
                for cc in KLEIN:
                    if assign(e, cc, trail):
                        yield from rec(pos + 1)
                    undo(trail)

            yield from rec(0)

        return gen()

    def rec_count(pos: int) -> int:
        while pos < nord and col[order[pos]]:
            pos += 1
        if pos == nord:
            return 1
        e = order[pos]
        total = 0
        trail: list[int] = []
        for cc in KLEIN:
            if assign(e, cc, trail):
                total += rec_count(pos + 1)
            undo(trail)
        return total

    def rec_decide(pos: int, root: bool) -> bool:
        while pos < nord and col[order[pos]]:
            pos += 1
        if pos == nord:
            return True
        e = order[pos]
        trail: list[int] = []
        for cc in (1,) if root else KLEIN:
            if assign(e, cc, trail):
                if rec_decide(pos + 1, False):
                    undo(trail)
                    return True
            undo(trail)
        return False

    if mode == "count":
        return rec_count(0) * iso_factor
    return rec_decide(0, sym_root)


def _fixed_to_edges(c: _Compiled, fixed: Mapping[int, int] | None) -> dict[int, int]:
    out: dict[int, int] = {}
    if not fixed:
        return out
    for sid, cc in fixed.items():
        if cc not in KLEIN:
            raise ValueError(f"bad colour {cc}")
        e = c.sid_edge.get(sid)
        if e is None:
            raise MultipoleError(f"unknown semiedge {sid}")
        if e in out and out[e] != cc:
            # two ends of one isolated edge pinned to different colours
            return {-1: -1}
        out[e] = cc
    return out


def count_colourings(m: Multipole, fixed: Mapping[int, int] | None = None) -> int:
    """Number of proper 3-edge-colourings, optionally with pinned semiedges."""
    c = _compile(m)
    fe = _fixed_to_edges(c, fixed)
    if -1 in fe:
        return 0
    return _search(c, fe, "count")


def is_colourable(m: Multipole, fixed: Mapping[int, int] | None = None) -> bool:
    c = _compile(m)
    fe = _fixed_to_edges(c, fixed)
    if -1 in fe:
        return False
    return _search(c, fe, "decide")


def enumerate_colourings(
    m: Multipole, fixed: Mapping[int, int] | None = None
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (edge colouring, boundary tuple) pairs, deterministically.

    Edge colours are indexed links-then-dangling-then-isolated, matching the
    field order of the multipole.
    """
    c = _compile(m)
    fe = _fixed_to_edges(c, fixed)
    if -1 in fe:
        return iter(())
    return _search(c, fe, "enumerate")


# ---------------------------------------------------------------------------
# Colouring sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColouringSet:
    """Boundary colour tuples of a multipole, indexed by ascending semiedge id."""

    semiedge_count: int
    shape: tuple
    tuples: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.tuples)

    def dump(self) -> str:
        """One tuple per line over {a,b,c}, lines sorted; golden-file format."""
        return "\n".join(sorted(tuple_to_str(t) for t in self.tuples))

    @staticmethod
    def from_tuples(
        tuples: Iterable[Sequence[int]],
        semiedge_count: int,
        shape: tuple | None = None,
    ) -> "ColouringSet":
        ts = frozenset(tuple(t) for t in tuples)
        for t in ts:
            if len(t) != semiedge_count:
                raise ValueError("tuple length mismatch")
        if shape is None:
            shape = (semiedge_count, ((semiedge_count, False),) if semiedge_count else ())
        return ColouringSet(semiedge_count, shape, ts)


def colouring_set(m: Multipole) -> ColouringSet:
    """Col(m): the set of boundary tuples over all colourings, deduplicated."""
    k = m.semiedge_count
    seen: set[tuple[int, ...]] = set()
    for _, boundary in enumerate_colourings(m):
        seen.add(boundary)
    return ColouringSet(k, m.shape(), frozenset(seen))


def compare_sets(x: ColouringSet, y: ColouringSet) -> str:
    """Exact set relation: equal | x_subset | y_subset | disjoint | incomparable."""
    if x.semiedge_count != y.semiedge_count or x.shape != y.shape:
        raise MultipoleError(
            f"shape mismatch: {x.shape} vs {y.shape}"
        )
    if x.tuples == y.tuples:
        return "equal"
    if x.tuples < y.tuples:
        return "x_subset"
    if y.tuples < x.tuples:
        return "y_subset"
    if not (x.tuples & y.tuples):
        return "disjoint"
    return "incomparable"


def join_tuple_sets(
    a: frozenset[tuple[int, ...]],
    b: frozenset[tuple[int, ...]],
    pairs: Sequence[tuple[int, int]],
    ka: int,
    kb: int,
) -> frozenset[tuple[int, ...]]:
    """Junction on colouring sets: tuples agreeing on the joined positions.

    Result positions are a's untouched positions in order, then b's. This is
    the independent composition route used by the argument-replay checks.
    """
    a_join = [i for i, _ in pairs]
    b_join = [j for _, j in pairs]
    a_keep = [i for i in range(ka) if i not in set(a_join)]
    b_keep = [j for j in range(kb) if j not in set(b_join)]
    index: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t in b:
        key = tuple(t[j] for j in b_join)
        index.setdefault(key, []).append(tuple(t[j] for j in b_keep))
    out = set()
    for t in a:
        key = tuple(t[i] for i in a_join)
        for rest in index.get(key, ()):
            out.add(tuple(t[i] for i in a_keep) + rest)
    return frozenset(out)


def flow_through(m: Multipole, boundary: Sequence[int], connector: str) -> int:
    """Group sum of a colouring's boundary colours over one connector."""
    con = m.connector(connector)
    if len(boundary) != m.semiedge_count:
        raise MultipoleError("boundary tuple length mismatch")
    return klein_sum(boundary[s] for s in con.semiedges)


def classify_connector(m: Multipole, connector: str) -> str:
    """proper | improper | mixed | vacuous, per the flow of every colouring."""
    con = m.connector(connector)
    cs = colouring_set(m)
    if not cs.tuples:
        return "vacuous"
    flows = {klein_sum(t[s] for s in con.semiedges) for t in cs.tuples}
    if 0 not in flows:
        return "proper"
    if flows == {0}:
        return "improper"
    return "mixed"


# ---------------------------------------------------------------------------
# Closed-form reference sets (§-style predicates over K^k, independent of
# the search engine; used as oracles by the tests)
# ---------------------------------------------------------------------------


def _all_tuples(k: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(KLEIN, repeat=k)


def negator_reference_set() -> frozenset[tuple[int, ...]]:
    """Full admissible set of a (2,2,1)-pole negator, order (i1,i2,o1,o2,r)."""
    out = set()
    for a in KLEIN:
        for b in KLEIN:
            if a == b:
                continue
            for x in KLEIN:
                out.add((x, x, a, b, a ^ b))
                out.add((a, b, x, x, a ^ b))
    return frozenset(out)


def negator_one_sided_sets() -> tuple[frozenset, frozenset]:
    """The two semiperfect restrictions: input-side zero, output-side zero."""
    in_zero, out_zero = set(), set()
    for a in KLEIN:
        for b in KLEIN:
            if a == b:
                continue
            for x in KLEIN:
                in_zero.add((x, x, a, b, a ^ b))
                out_zero.add((a, b, x, x, a ^ b))
    return frozenset(in_zero), frozenset(out_zero)


def proper23_reference_set() -> frozenset[tuple[int, ...]]:
    """Full set of a proper (2,3)-pole, order (a1,a2,b1,b2,b3)."""
    return frozenset(
        t
        for t in _all_tuples(5)
        if t[0] ^ t[1] == t[2] ^ t[3] ^ t[4] and t[0] != t[1]
    )


def p2_reference_set() -> frozenset[tuple[int, ...]]:
    """Col(P_2) = {(a,b,c,d,e): a != b, c != d, a+b+c+d+e = 0}."""
    return frozenset(
        t
        for t in _all_tuples(5)
        if t[0] != t[1] and t[2] != t[3] and klein_sum(t) == 0
    )


def mev_reference_set() -> frozenset[tuple[int, ...]]:
    """Col(M_ev) = {(x,x,a,b,c): a+b+c = 0}, order (b1,b2,c1,c2,c3)."""
    return frozenset(
        t for t in _all_tuples(5) if t[0] == t[1] and t[2] ^ t[3] ^ t[4] == 0
    )


def v4_reference_set() -> frozenset[tuple[int, ...]]:
    """Col(V_4) over (a1,b1,a2,b2,a3,b3): pairs mismatched, total sum 0."""
    return frozenset(
        t
        for t in _all_tuples(6)
        if t[0] != t[1] and t[2] != t[3] and t[4] != t[5] and klein_sum(t) == 0
    )


def m7_reference_set() -> frozenset[tuple[int, ...]]:
    """Col(M_7) over (e1,e2,i1,i2,o1,o2,r): isolated pair equal, P_2 part."""
    out = set()
    for x in KLEIN:
        for t in _all_tuples(5):
            if t[0] != t[1] and t[2] != t[3] and klein_sum(t) == 0:
                out.add((x, x) + t)
    return frozenset(out)


def c5_reference_set() -> frozenset[tuple[int, ...]]:
    """Col(C_5): dangling tuples of the open 5-cycle, cyclic positions."""
    out = set()
    for cyc in _all_tuples(5):
        ok = all(cyc[i] != cyc[(i + 1) % 5] for i in range(5))
        if ok:
            out.add(tuple(cyc[i] ^ cyc[(i + 1) % 5] for i in range(5)))
    return frozenset(out)


def admissible_reference_set(k: int) -> frozenset[tuple[int, ...]]:
    """Tuples satisfying both the parity lemma and Kirchhoff's law."""
    return frozenset(
        t for t in _all_tuples(k) if parity_check(t) and klein_sum(t) == 0
    )


# ---------------------------------------------------------------------------
# Colouring-theoretic verdicts
# ---------------------------------------------------------------------------


def _connector_major_tuples(m: Multipole, arities: Sequence[int]) -> tuple:
    """Reorder Col(m) into connector-major position order.

    Connectors are taken in the stored order filtered by the requested
    arity sequence; raises if the connector shape does not match.
    """
    byar: dict[int, list] = {}
    for c in m.connectors:
        byar.setdefault(c.arity, []).append(c)
    want: list = []
    pool = {a: list(byar.get(a, [])) for a in set(arities)}
    for a in arities:
        if not pool.get(a):
            raise MultipoleError(
                f"connector shape mismatch: want arities {tuple(arities)}, "
                f"have {tuple(sorted(c.arity for c in m.connectors))}"
            )
        want.append(pool[a].pop(0))
    if any(pool[a] for a in pool):
        raise MultipoleError("connector shape mismatch: extra connectors")
    positions = [s for c in want for s in c.semiedges]
    cs = colouring_set(m)
    reordered = frozenset(tuple(t[p] for p in positions) for t in cs.tuples)
    return reordered, want


def is_perfect_negator(m: Multipole) -> str:
    """perfect | semiperfect | uncolourable | not_a_negator for (2,2,1)-poles."""
    col, _ = _connector_major_tuples(m, (2, 2, 1))
    if not col:
        return "uncolourable"
    full = negator_reference_set()
    if col == full:
        return "perfect"
    one_in, one_out = negator_one_sided_sets()
    if col in (one_in, one_out):
        return "semiperfect"
    return "not_a_negator"


def is_perfect_proper23(m: Multipole) -> str:
    """perfect | imperfect_proper | not_proper | uncolourable for (2,3)-poles."""
    col, _ = _connector_major_tuples(m, (2, 3))
    if not col:
        return "uncolourable"
    full = proper23_reference_set()
    if col == full:
        return "perfect"
    if col < full:
        return "imperfect_proper"
    return "not_proper"


def is_even_222(m: Multipole) -> bool:
    """True iff every colouring has an even number of nonzero connector flows."""
    col, cons = _connector_major_tuples(m, (2, 2, 2))
    for t in col:
        nz = sum(1 for i in range(3) if t[2 * i] ^ t[2 * i + 1] != 0)
        if nz not in (0, 2):
            return False
    return True


def is_superpentagon(m: Multipole, cyclic_order: Sequence[int]) -> str:
    """perfect | uncolourable | not_superpentagon under a designated order."""
    if m.semiedge_count != 5 or len(cyclic_order) != 5:
        raise MultipoleError("superpentagon test needs a 5-pole and 5 positions")
    if sorted(cyclic_order) != m.semiedge_ids():
        raise MultipoleError("cyclic order must enumerate the semiedges")
    cs = colouring_set(m)
    col = frozenset(tuple(t[s] for s in cyclic_order) for t in cs.tuples)
    ref = c5_reference_set()
    if not col:
        return "uncolourable"
    if col == ref:
        return "perfect"
    if col < ref:
        # the cited dichotomy forbids a nonempty strict subset; reaching
        # this line means the engine itself is broken
        raise AssertionError("colourable superpentagon with a strict subset")
    return "not_superpentagon"
