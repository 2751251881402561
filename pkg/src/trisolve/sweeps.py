"""Long sweeps: maximal patterns, Euler traversal, backward construction.

A sweeping peg only ever lands on holes congruent to its start modulo the
doubled lattice, and every hole it jumps lies off that sub-lattice.  A sweep
pattern is therefore a trail in the *coset graph* of its start (holes two
steps apart, joined through the hole between them), and any trail is a
legal sweep from the position holding pegs on its start and its jumped
holes.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .board import (
    BoardGeometry,
    Coord,
    Move,
    Position,
    build_geometry,
    triangular,
    vertically_below,
)
from .search import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    Problem,
    SearchBudget,
    SearchError,
    Solution,
    best_ordering,
    jumps_to_moves,
    move_path,
    reduce_to_one,
)

log = logging.getLogger(__name__)

Edge = tuple[int, int, int]  # (u, over, v) with u < v


@dataclass(frozen=True)
class SweepPattern:
    n: int
    circuit: Move

    @property
    def board(self) -> BoardGeometry:
        return build_geometry(self.n)

    @property
    def jumped(self) -> frozenset[Coord]:
        return frozenset(self.circuit.removed)

    @property
    def start(self) -> Coord:
        return self.circuit.start

    @property
    def end(self) -> Coord:
        return self.circuit.end

    @property
    def length(self) -> int:
        return self.circuit.length

    def edges(self) -> list[tuple[int, int]]:
        g = self.board
        p = self.circuit.path_indices(g)
        return list(zip(p, p[1:]))

    def __str__(self) -> str:
        return f"{self.length}-sweep {self.circuit}"


def max_sweep_length(n: int) -> int:
    """Length of the maximal sweep on odd Triangle(n): 3·T((n-1)/2)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"maximal sweep length is defined for odd n >= 3, got {n} "
                         f"(an even board has the maximum of the odd board one smaller)")
    return 3 * (n * n - 1) // 8


def coset_of(g: BoardGeometry, hole: int) -> list[int]:
    c = g.holes[hole]
    return [i for i, h in enumerate(g.holes) if (h.x - c.x) % 2 == 0 and (h.y - c.y) % 2 == 0]


def coset_edges(g: BoardGeometry, hole: int) -> list[Edge]:
    """Edges of the coset graph containing ``hole``, in jump-table order."""
    nodes = set(coset_of(g, hole))
    return sorted({(min(o, d), m, max(o, d)) for o, m, d in g.jumps if o in nodes})


# ---------------------------------------------------------------------------
# Euler traversal


@dataclass(frozen=True)
class EulerReport:
    traversable: bool
    connected: bool
    odd_nodes: tuple[int, ...]

    @property
    def closed(self) -> bool:
        """All degrees even: a traversal must end where it started."""
        return self.traversable and not self.odd_nodes


def degrees(edges: Iterable[tuple[int, int]]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for e in edges:
        u, v = e[0], e[-1]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def _connected(edges: Sequence[tuple[int, ...]]) -> bool:
    if not edges:
        return True
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        parent[find(e[0])] = find(e[-1])
    roots = {find(a) for a in list(parent)}
    return len(roots) == 1


def euler_traversable(edges: Sequence[tuple[int, ...]]) -> EulerReport:
    """Whether the multigraph of ``edges`` (pairs, or triples whose first and
    last entries are the endpoints) can be drawn in one stroke."""
    deg = degrees(edges)
    odd = tuple(sorted(v for v, d in deg.items() if d % 2))
    conn = _connected(edges)
    return EulerReport(traversable=conn and len(odd) <= 2, connected=conn, odd_nodes=odd)


def euler_trail(edges: Sequence[Edge], start: int) -> list[int]:
    """Hierholzer's algorithm; returns the node sequence of a trail using
    every edge once, beginning at ``start``.  Neighbours are taken in edge
    order so the trail is deterministic."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for k, e in enumerate(edges):
        u, v = e[0], e[-1]
        adj.setdefault(u, []).append((v, k))
        adj.setdefault(v, []).append((u, k))
    for lst in adj.values():
        lst.reverse()
    used = [False] * len(edges)
    stack = [start]
    trail: list[int] = []
    while stack:
        u = stack[-1]
        nbrs = adj.get(u, [])
        while nbrs and used[nbrs[-1][1]]:
            nbrs.pop()
        if nbrs:
            v, k = nbrs.pop()
            used[k] = True
            stack.append(v)
        else:
            trail.append(stack.pop())
    trail.reverse()
    if len(trail) != len(edges) + 1:
        raise ValueError("edge set is not traversable from the given start")
    return trail


def pattern_from_edges(g: BoardGeometry, edges: Sequence[Edge], start: int) -> SweepPattern:
    return SweepPattern(g.n, Move.from_indices(g, euler_trail(edges, start)))


def maximal_pattern(n: int, start: Coord | str = "a1") -> SweepPattern:
    """The sweep over the whole coset graph of ``start``: on odd boards and
    a corner start it jumps into or over every hole."""
    g = build_geometry(n)
    s = g.hole(start)
    return pattern_from_edges(g, coset_edges(g, s), s)


# ---------------------------------------------------------------------------
# exhaustive longest sweep


@dataclass
class SweepSearchReport:
    length: int
    pattern: SweepPattern | None
    nodes: int
    exhaustive: bool


def longest_geometric_sweep(n: int, budget: SearchBudget = DEFAULT_BUDGET) -> SweepSearchReport:
    """Longest legal sweep on Triangle(n), by depth-first search over the
    hops of a single peg from every start hole.

    The only rule used is that a hop jumps a peg not jumped before; the
    search stops early only when a sweep uses every hop available from its
    start hole's sub-lattice, which no longer sweep could beat.
    """
    g = build_geometry(n)
    hops: dict[int, list[tuple[int, int]]] = {}
    for o, m, d in g.jumps:
        hops.setdefault(o, []).append((m, d))
    best_len = 0
    best_path: list[int] = []
    nodes = 0
    deadline = time.monotonic() + budget.time_limit if budget.time_limit else None
    exhaustive = True
    done_cosets: set[int] = set()

    class _Stop(Exception):
        pass

    for s in range(g.size):
        # reachable hop supply bounds any sweep from this start
        coset = coset_of(g, s)
        key = min(coset)
        supply = len({m for o, m, d in g.jumps if o in set(coset)})
        if supply <= best_len or key in done_cosets:
            continue
        path = [s]
        jumped: set[int] = set()

        def dfs(here: int) -> None:
            nonlocal best_len, best_path, nodes
            nodes += 1
            if nodes > budget.node_limit or (deadline and nodes & 0xFFF == 0 and time.monotonic() > deadline):
                raise _Stop
            if len(jumped) > best_len:
                best_len = len(jumped)
                best_path = list(path)
                if best_len == supply:
                    raise _Stop
            for m, d in hops.get(here, ()):
                if m in jumped:
                    continue
                jumped.add(m)
                path.append(d)
                dfs(d)
                path.pop()
                jumped.discard(m)

        try:
            dfs(s)
        except _Stop:
            if best_len != supply:
                exhaustive = False
                break
            done_cosets.add(key)
    pattern = SweepPattern(n, Move.from_indices(g, best_path)) if best_len else None
    return SweepSearchReport(best_len, pattern, nodes, exhaustive)


# ---------------------------------------------------------------------------
# positions around a sweep


def sweep_start_position(sp: SweepPattern) -> Position:
    """Pegs on the jumped holes plus the sweeper."""
    g = sp.board
    return Position.from_holes(g, list(sp.jumped) + [sp.start])


def sweep_candidates(g: BoardGeometry, end: int, min_length: int, start: int | None = None,
                     max_deficit: int | None = None) -> Iterator[SweepPattern]:
    """Sweeps ending at hole ``end`` with at least ``min_length`` hops.

    A sweep is determined (up to hop order) by its start and the edge set
    it uses, so candidates are produced as edge sets of the coset graph of
    ``end`` minus a removed set whose odd-degree nodes are exactly the two
    endpoints (none for a closed sweep).  Longest first; within a length,
    by start hole and then removed edges in edge order.
    """
    edges = coset_edges(g, end)
    total = len(edges)
    if max_deficit is None:
        max_deficit = total - min_length
    starts = [start] if start is not None else coset_of(g, end)
    for deficit in range(0, max_deficit + 1):
        if total - deficit < min_length or total - deficit <= 0:
            break
        for s in starts:
            for removed in _removal_sets(edges, deficit, {s, end} if s != end else set()):
                rest = [e for k, e in enumerate(edges) if k not in removed]
                report = euler_traversable(rest)
                if not report.connected:
                    continue
                nodes = {e[0] for e in rest} | {e[2] for e in rest}
                if s not in nodes or end not in nodes:
                    continue
                yield pattern_from_edges(g, rest, s)


def _removal_sets(edges: Sequence[Edge], size: int, odd: set[int]) -> Iterator[frozenset[int]]:
    """Index sets of ``size`` edges whose odd-degree nodes are exactly ``odd``.

    Small sizes are enumerated directly; larger ones by a path between the
    odd nodes (or nothing) plus edge-disjoint cycles, depth-first.
    """
    if size == 0:
        if not odd:
            yield frozenset()
        return
    if size <= 3 or len(edges) <= 24:
        for combo in itertools.combinations(range(len(edges)), size):
            deg = degrees(edges[k] for k in combo)
            if {v for v, d in deg.items() if d % 2} == odd:
                yield frozenset(combo)
        return
    yield from _structured_removals(edges, size, odd)


def _structured_removals(edges: Sequence[Edge], size: int, odd: set[int]) -> Iterator[frozenset[int]]:
    adj: dict[int, list[tuple[int, int]]] = {}
    for k, (u, _, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, k))
        adj.setdefault(v, []).append((u, k))
    seen: set[frozenset[int]] = set()

    def paths(a: int, b: int, length: int, used: frozenset[int]) -> Iterator[frozenset[int]]:
        def go(here: int, left: int, visited: set[int], acc: list[int]):
            if left == 0:
                if here == b:
                    yield frozenset(acc)
                return
            for nxt, k in adj.get(here, ()):
                if k in used or nxt in visited:
                    continue
                visited.add(nxt)
                acc.append(k)
                yield from go(nxt, left - 1, visited, acc)
                acc.pop()
                visited.discard(nxt)

        yield from go(a, length, {a}, [])

    def cycles(length: int, used: frozenset[int]) -> Iterator[frozenset[int]]:
        for root in sorted(adj):
            for first, k in adj[root]:
                if k in used or first < root:
                    continue
                for rest in paths(first, root, length - 1, used | {k}):
                    nodes_ok = True
                    for kk in rest:
                        u, _, v = edges[kk]
                        if u < root or v < root:
                            nodes_ok = False
                            break
                    if nodes_ok:
                        yield rest | {k}

    def fill(left: int, acc: frozenset[int]) -> Iterator[frozenset[int]]:
        if left == 0:
            if acc not in seen:
                seen.add(acc)
                yield acc
            return
        for clen in range(3, left + 1):
            if 0 < left - clen < 3:
                continue
            for c in cycles(clen, acc):
                yield from fill(left - clen, acc | c)

    if odd:
        a, b = sorted(odd)
        for plen in range(1, size + 1):
            rest = size - plen
            if 0 < rest < 3:
                continue
            for p in paths(a, b, plen, frozenset()):
                yield from fill(rest, p)
    else:
        yield from fill(size, frozenset())


# ---------------------------------------------------------------------------
# backward construction of sweep-finishing solutions


@dataclass
class SweepSolveReport:
    solution: Solution | None
    candidates_tried: int
    exhaustive: bool
    pattern: SweepPattern | None = None


def _mop_up(g: BoardGeometry, h: int, finish: int) -> list[tuple[int, int]]:
    """(other peg, jump) pairs finishing at ``finish`` by jumping the sweeper at ``h``."""
    out = []
    for o, m, d in g.jumps:
        if m == h and d == finish:
            out.append((o, (o, m, d)))
    return out


def lead_in(g: BoardGeometry, vacancy: int, b: Position, strategy: str = "sampled",
            samples: int = 32, seed: int = 0,
            budget: SearchBudget = DEFAULT_BUDGET) -> list[tuple[int, int, int]] | None:
    """Jumps from the single-vacancy start to ``b``.

    Every such sequence is a reduction of the complement of ``b`` to the
    vacancy, played in reverse.  ``greedy`` takes the first reduction as it
    comes; ``sampled`` draws reductions under ``samples`` jump orders and
    keeps the one whose best reordering has the fewest moves; ``exact``
    runs the minimal-move search and proves the lead-in shortest.
    """
    back = reduce_to_one(b.complement(), vacancy, budget)
    if back is None:
        return None
    start_bits = g.full_mask ^ (1 << vacancy)
    if strategy == "greedy":
        return list(reversed(back))
    if strategy == "exact":
        found = move_path(g, start_bits, b.bits, budget)
        return None if found is None else found[1]
    if strategy != "sampled":
        raise ValueError(f"unknown lead-in strategy {strategy!r}")
    rng = random.Random(seed)
    order = list(range(len(g.jumps)))
    best = best_ordering(g, start_bits, list(reversed(back)))
    best_cost = len(jumps_to_moves(g, best))
    for _ in range(samples - 1):
        rng.shuffle(order)
        back = reduce_to_one(b.complement(), vacancy, budget, jump_order=order)
        cand = best_ordering(g, start_bits, list(reversed(back)))
        cost = len(jumps_to_moves(g, cand))
        if cost < best_cost:
            best, best_cost = cand, cost
    return best


def solve_with_final_sweep(prob: Problem, min_final_sweep: int, slot: str = "last",
                           budget: SearchBudget = DEFAULT_BUDGET, lead: str = "sampled",
                           samples: int = 32, max_candidates: int | None = None) -> SweepSolveReport:
    """Solve ``prob`` so that its last (or second-to-last) move is a sweep of
    at least ``min_final_sweep`` hops.

    Works backwards: for each candidate sweep, the position ``B`` just
    before it (the sweep's pegs, plus the mop-up peg for the second-to-last
    slot) must be reachable from the start, i.e. its complement must reduce
    to the vacancy.  The moves leading to ``B`` come from :func:`lead_in`.
    Candidates are tried longest first; the first that works is returned.
    """
    if slot not in ("last", "second-last"):
        raise ValueError("slot must be 'last' or 'second-last'")
    if prob.finish is None:
        raise ValueError("a finishing hole is required")
    g = prob.board
    v = g.hole(prob.vacancy)
    f = g.hole(prob.finish)
    tried = 0
    deadline = time.monotonic() + budget.time_limit if budget.time_limit else None

    def stages() -> Iterator[tuple[SweepPattern, list[tuple[int, int, int]]]]:
        if slot == "last":
            for sp in sweep_candidates(g, f, min_final_sweep):
                yield sp, []
        else:
            ends = sorted({m for o, m, d in g.jumps if d == f})
            for h in ends:
                for sp in sweep_candidates(g, h, min_final_sweep):
                    landed = set(sp.circuit.path_indices(g))
                    jumped = {g.hole(c) for c in sp.jumped}
                    for e, jump in _mop_up(g, h, f):
                        if e not in landed and e not in jumped:
                            yield sp, [jump]

    for sp, tail in stages():
        if max_candidates is not None and tried >= max_candidates:
            return SweepSolveReport(None, tried, False)
        if deadline is not None and time.monotonic() > deadline:
            return SweepSolveReport(None, tried, False)
        tried += 1
        b = sweep_start_position(sp)
        for o, _, _ in tail:
            b = Position(g, b.bits | (1 << o))
        if b.bits >> v & 1 == 0 and b.count == 1:
            continue
        jumps = lead_in(g, v, b, lead, samples, budget=budget)
        if jumps is None:
            continue
        moves = jumps_to_moves(g, jumps) + [sp.circuit] + jumps_to_moves(g, tail)
        sol = Solution(prob, tuple(moves))
        if not sol.is_valid():
            raise SearchError(f"stitched solution for {prob} failed replay")
        return SweepSolveReport(sol, tried, True, sp)
    return SweepSolveReport(None, tried, True)


# ---------------------------------------------------------------------------
# the long-sweep family on Triangle(12i)


@dataclass(frozen=True)
class FamilyStats:
    i: int
    holes: int
    sweep_len: int
    forward_moves: int
    forward_jumps: int

    @property
    def n(self) -> int:
        return 12 * self.i

    @property
    def pct_removed(self) -> Fraction:
        """Share of all pegs removed in the game taken by the final sweep."""
        return Fraction(self.sweep_len, self.holes - 2)

    @property
    def maximal_len(self) -> int:
        return max_sweep_length(self.n - 1)

    @property
    def pegs_per_move(self) -> Fraction:
        return Fraction(self.holes - 2, self.forward_moves)


def family_stats(i: int) -> FamilyStats:
    if i < 1:
        raise ValueError("family index starts at 1")
    return FamilyStats(
        i=i,
        holes=72 * i * i + 6 * i,
        sweep_len=54 * i * i - 13 * i + 1,
        forward_moves=18 * i * i + 14 * i - 3,
        forward_jumps=18 * i * i + 19 * i - 3,
    )


def family_start_vacancy(i: int) -> Coord:
    """Lowest hole straight below a3 on Triangle(12i)."""
    if i < 1:
        raise ValueError("family index starts at 1")
    n = 12 * i
    c = Coord(1, 3)
    while vertically_below(c).y <= n:
        c = vertically_below(c)
    return c


def defect_sweep_candidates(n: int, defect_budget: int, start: Coord | str = "a1",
                            end: Coord | str = "a3", limit: int | None = None) -> Iterator[SweepPattern]:
    """Near-maximal sweeps from ``start`` to ``end``: the full coset graph
    minus ``1..defect_budget`` edges, longest first."""
    g = build_geometry(n)
    s, e = g.hole(start), g.hole(end)
    full = len(coset_edges(g, s))
    count = 0
    for sp in sweep_candidates(g, e, full - defect_budget, start=s, max_deficit=defect_budget):
        yield sp
        count += 1
        if limit is not None and count >= limit:
            return


def triangular_holes(n: int) -> int:
    return triangular(n)


__all__ = [
    "BudgetExhausted",
    "EulerReport",
    "FamilyStats",
    "SweepPattern",
    "coset_edges",
    "defect_sweep_candidates",
    "euler_trail",
    "euler_traversable",
    "family_stats",
    "family_start_vacancy",
    "longest_geometric_sweep",
    "max_sweep_length",
    "maximal_pattern",
    "solve_with_final_sweep",
    "sweep_candidates",
    "sweep_start_position",
]
