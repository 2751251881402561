"""Reachability and minimal-move search.

A *move* is a run of consecutive jumps by one peg, so the cost of a jump is
0 when the jumping peg is the one that landed last and 1 otherwise.  The
single-problem solver is an iterative-deepening DFS over move count with a
transposition table and the full-Merson-region bound; whole-board tables
use a layered sweep over every reachable position instead.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .board import (
    BoardGeometry,
    Coord,
    Move,
    Position,
    apply_move,
    build_geometry,
    stabilizer,
    triangular,
)
from .classes import feasibility_matrix, feasible_pair
from .merson import best_lower_bound, lower_bound, max_packing

log = logging.getLogger(__name__)

KERNEL_MAX_HOLES = 58
# boards up to Triangle(6) are swept without a horizon
LAYERED_UNPRUNED_MAX = 21

Jump = tuple[int, int, int]


class SearchError(RuntimeError):
    pass


class Unsolvable(SearchError):
    """The problem provably has no solution."""


class BudgetExhausted(SearchError):
    """The search stopped on its node or time budget before an answer.

    ``best`` carries whatever partial knowledge the search had: a best
    known upper bound, or a lower bound on a count.
    """

    def __init__(self, message: str, best: int | None = None, nodes: int = 0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 2_000_000_000
    time_limit: float | None = None
    table_capacity: int = 1 << 22

    def __post_init__(self):
        if self.node_limit <= 0 or self.table_capacity <= 0:
            raise ValueError("budget limits must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True, order=True)
class Problem:
    n: int
    vacancy: Coord
    finish: Coord | None = None

    @classmethod
    def make(cls, n: int, vacancy: Coord | str, finish: Coord | str | None = None) -> "Problem":
        g = build_geometry(n)
        v = g.holes[g.hole(vacancy)]
        f = g.holes[g.hole(finish)] if finish is not None else None
        return cls(n, v, f)

    @property
    def board(self) -> BoardGeometry:
        return build_geometry(self.n)

    @property
    def is_complement(self) -> bool:
        return self.finish is not None and self.finish == self.vacancy

    def start(self) -> Position:
        return Position.start(self.board, self.vacancy)

    def __str__(self) -> str:
        fin = self.finish.label if self.finish is not None else "any"
        return f"Triangle({self.n}) {self.vacancy.label}->{fin}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vacancy": self.vacancy.label,
            "finish": self.finish.label if self.finish is not None else None,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Problem":
        return cls.make(int(d["n"]), d["vacancy"], d.get("finish"))


@dataclass(frozen=True)
class Solution:
    problem: Problem
    moves: tuple[Move, ...]

    @property
    def jump_count(self) -> int:
        return sum(m.length for m in self.moves)

    @property
    def move_count(self) -> int:
        return len(self.moves)

    @property
    def final_sweep_length(self) -> int:
        return self.moves[-1].length if self.moves else 0

    @property
    def longest_sweep(self) -> int:
        return max((m.length for m in self.moves), default=0)

    def jumps(self) -> list[Jump]:
        g = self.problem.board
        return [(g.hole(o), g.hole(m), g.hole(d)) for mv in self.moves for o, m, d in mv.hops()]

    def replay(self) -> list[Position]:
        """Positions before the first and after every move."""
        p = self.problem.start()
        out = [p]
        for mv in self.moves:
            p = apply_move(p, mv)
            out.append(p)
        return out

    def is_valid(self) -> bool:
        try:
            end = self.replay()[-1]
        except ValueError:
            return False
        if end.count != 1:
            return False
        return self.problem.finish is None or end.has_peg(self.problem.finish)

    def move_strings(self) -> list[str]:
        return [str(m) for m in self.moves]

    def revisiting_moves(self) -> list[int]:
        """Indices of moves whose peg lands twice on the same hole."""
        return [i for i, m in enumerate(self.moves) if m.revisits()]


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0
    iterations: list[tuple[int, int]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# kernel tables


@dataclass(frozen=True)
class _Tables:
    jo: np.ndarray
    jm: np.ndarray
    jd: np.ndarray
    jmask: np.ndarray
    regions: np.ndarray
    symtab: np.ndarray
    symperm: np.ndarray


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    g = build_geometry(n)
    if g.size > KERNEL_MAX_HOLES:
        raise SearchError(f"Triangle({n}) has {g.size} holes; the search kernels handle at most "
                          f"{KERNEL_MAX_HOLES}")
    jo = np.array([j[0] for j in g.jumps], np.int64)
    jm = np.array([j[1] for j in g.jumps], np.int64)
    jd = np.array([j[2] for j in g.jumps], np.int64)
    jmask = np.array([(1 << a) | (1 << b) | (1 << c) for a, b, c in g.jumps], np.uint64)
    regions = np.array([r.mask for r in max_packing(g).regions], np.uint64)
    nbytes = (g.size + 7) // 8
    symtab = np.zeros((6, nbytes, 256), np.uint64)
    for s, perm in enumerate(g.symmetries):
        for b in range(nbytes):
            for v in range(256):
                img = 0
                for k in range(8):
                    h = 8 * b + k
                    if v >> k & 1 and h < g.size:
                        img |= 1 << perm[h]
                symtab[s, b, v] = img
    symperm = np.array(g.symmetries, np.int64)
    return _Tables(jo, jm, jd, jmask, regions, symtab, symperm)


def _syms_fixing(g: BoardGeometry, target_bits: int) -> np.ndarray:
    """Symmetries mapping the target position to itself."""
    return np.array([s for s in range(6) if g.map_bits(target_bits, s) == target_bits], np.int64)


def _new_table(capacity: int) -> tuple[np.ndarray, np.ndarray]:
    cap = 1 << max(10, (capacity - 1).bit_length())
    return np.zeros(cap, np.uint64), np.zeros(cap, np.int8)


def jumps_to_moves(g: BoardGeometry, jumps: Sequence[Jump]) -> list[Move]:
    """Group a jump list into moves: a jump continues the current move when
    it starts where the previous jump landed."""
    moves: list[Move] = []
    path: list[int] = []
    removed: list[int] = []
    for o, m, d in jumps:
        if path and path[-1] == o:
            path.append(d)
            removed.append(m)
            continue
        if path:
            moves.append(Move(tuple(g.holes[i] for i in path), tuple(g.holes[i] for i in removed)))
        path, removed = [o, d], [m]
    if path:
        moves.append(Move(tuple(g.holes[i] for i in path), tuple(g.holes[i] for i in removed)))
    return moves


def best_ordering(g: BoardGeometry, start: int, jumps: Sequence[Jump],
                  max_jumps: int = 22) -> list[Jump]:
    """Reorder ``jumps`` (all played from bitboard ``start``) into the legal
    order with the fewest moves.

    The position after any subset of the jumps is fixed by the subset, so a
    shortest-path search over (subset, last landing hole) is exact.  Longer
    lists than ``max_jumps`` are returned as given.
    """
    k = len(jumps)
    if k == 0 or k > max_jumps:
        return list(jumps)
    masks = [(1 << o) | (1 << m) | (1 << d) for o, m, d in jumps]
    full = (1 << k) - 1
    # layer by subset size; ties broken towards lower jump indices
    layer: dict[tuple[int, int], tuple[int, int, tuple[int, int] | None]] = {(0, -1): (0, start, None)}
    parents: list[dict] = [layer]
    for _ in range(k):
        nxt: dict[tuple[int, int], tuple[int, int, tuple[int, int] | None]] = {}
        for (sub, last), (cost, pos, _) in sorted(layer.items()):
            for i, (o, m, d) in enumerate(jumps):
                if sub >> i & 1:
                    continue
                if not (pos >> o & 1 and pos >> m & 1) or pos >> d & 1:
                    continue
                key = (sub | 1 << i, d)
                c = cost + (0 if o == last else 1)
                if key not in nxt or c < nxt[key][0]:
                    nxt[key] = (c, pos ^ masks[i], (sub, last, i))
        layer = nxt
        parents.append(layer)
    if not layer:
        raise ValueError("the jumps cannot all be played from the given position")
    end = min((v[0], key) for key, v in layer.items() if key[0] == full)[1]
    order: list[int] = []
    for depth in range(k, 0, -1):
        sub, last, i = parents[depth][end][2]
        order.append(i)
        end = (sub, last)
    return [jumps[i] for i in reversed(order)]


def _check_time(deadline: float | None, what: str, best: int | None = None, nodes: int = 0):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExhausted(f"time budget exhausted during {what}", best=best, nodes=nodes)


# ---------------------------------------------------------------------------
# reduction to one peg


def reduce_to_one(p: Position, target: Coord | str | int | None = None,
                  budget: SearchBudget = DEFAULT_BUDGET,
                  jump_order: Sequence[int] | None = None) -> list[Jump] | None:
    """Jump sequence reducing ``p`` to a single peg (at ``target`` if given).

    Returns ``None`` when the search space is exhausted without success and
    raises :class:`BudgetExhausted` when the budget runs out first.
    Refuted positions are memoised up to the symmetries fixing the target.
    ``jump_order`` (a permutation of jump indices) changes which reduction
    is found first, not whether one exists.
    """
    g = p.board
    if p.count == 0:
        raise ValueError("cannot reduce an empty board")
    t = g.hole(target) if target is not None else -1
    if p.count == 1:
        return [] if t < 0 or p.bits == 1 << t else None
    if g.size > KERNEL_MAX_HOLES:
        return _reduce_python(p, t, budget, jump_order)
    tb = _tables(g.n)
    order = np.arange(len(g.jumps)) if jump_order is None else np.asarray(jump_order, np.int64)
    syms = np.array(stabilizer(g, [t]) if t >= 0 else range(6), np.int64)
    keys, vals = _new_table(budget.table_capacity)
    out = np.zeros(p.count + 1, np.int64)
    status, nodes, plen = K.reduce_search(np.uint64(p.bits), t, tb.jo[order], tb.jm[order],
                                          tb.jd[order], tb.jmask[order], tb.symtab, syms, keys,
                                          vals, budget.node_limit, out)
    if status == K.OUT_OF_BUDGET:
        raise BudgetExhausted(f"node budget exhausted reducing {p.to_hex()}", nodes=nodes)
    if status == K.EXHAUSTED:
        return None
    return [g.jumps[order[j]] for j in out[:plen]]


def _reduce_python(p: Position, t: int, budget: SearchBudget,
                   jump_order: Sequence[int] | None = None) -> list[Jump] | None:
    g = p.board
    jumps = g.jumps if jump_order is None else [g.jumps[k] for k in jump_order]
    syms = stabilizer(g, [t]) if t >= 0 else tuple(range(6))
    dead: set[int] = set()
    path: list[Jump] = []
    nodes = 0
    deadline = time.monotonic() + budget.time_limit if budget.time_limit else None

    def key(bits: int) -> int:
        return min(g.map_bits(bits, s) for s in syms)

    def go(bits: int, count: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit:
            raise BudgetExhausted("node budget exhausted", nodes=nodes)
        if nodes & 0xFFFF == 0:
            _check_time(deadline, "reduction", nodes=nodes)
        if count == 1:
            return t < 0 or bits == 1 << t
        k = key(bits)
        if k in dead:
            return False
        for o, m, d in jumps:
            if bits >> o & 1 and bits >> m & 1 and not bits >> d & 1:
                path.append((o, m, d))
                if go(bits ^ (1 << o) ^ (1 << m) ^ (1 << d), count - 1):
                    return True
                path.pop()
        dead.add(k)
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * g.size + 100))
    try:
        return list(path) if go(p.bits, p.count) else None
    finally:
        sys.setrecursionlimit(limit)


def intermediate_reachable(b: Position, prob: Problem, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Whether ``b`` can occur in a solution of ``prob``: ``b`` must reduce to
    the finish and its complement must reduce to the starting vacancy."""
    if b.count == 0 or b.count == b.board.size:
        return False
    if reduce_to_one(b, prob.finish, budget) is None:
        return False
    return reduce_to_one(b.complement(), prob.vacancy, budget) is not None


def backward_jumps_to_forward(jumps: Sequence[Jump]) -> list[Jump]:
    """A reduction of the complement of ``B`` to the vacancy, replayed in
    reverse order, leads from the starting position to ``B``."""
    return list(reversed(jumps))


# ---------------------------------------------------------------------------
# minimal-move search


def _move_search_root(n: int, start: int, target: int, limit: int, syms: np.ndarray,
                      budget: SearchBudget, use_tt: bool, use_bound: bool,
                      keys: np.ndarray, vals: np.ndarray, last: int = -1, used: int = 0):
    tb = _tables(n)
    out = np.zeros(bin(start).count("1") + 1, np.int64)
    status, nodes, plen = K.move_search(
        np.uint64(start), last, used, np.uint64(target), limit, tb.jo, tb.jm, tb.jd, tb.jmask,
        tb.regions, use_bound, tb.symtab, tb.symperm, syms, keys, vals, use_tt,
        budget.node_limit, out)
    return status, nodes, [int(j) for j in out[:plen]]


def move_path(g: BoardGeometry, start: int, target: int, budget: SearchBudget = DEFAULT_BUDGET,
              max_moves: int | None = None, min_moves: int | None = None, threads: int = 1,
              use_tt: bool = True, use_bound: bool = True,
              stats: SearchStats | None = None) -> tuple[int, list[Jump]] | None:
    """Fewest-move jump sequence from bitboard ``start`` to bitboard ``target``.

    Iterative deepening on the move limit from the region bound (or
    ``min_moves``) up to ``max_moves`` (default: one move per jump).  Each
    limit is refuted or solved exhaustively, so the first solution found is
    minimal; among minimal ones it is the first in jump-index order, which
    makes the answer independent of the table and of ``threads``.  Returns
    ``None`` when no sequence within ``max_moves`` exists.
    """
    tb = _tables(g.n)
    stats = stats if stats is not None else SearchStats()
    t0 = time.monotonic()
    deadline = t0 + budget.time_limit if budget.time_limit else None
    jumps_needed = bin(start).count("1") - bin(target).count("1")
    if start == target:
        return 0, []
    if jumps_needed <= 0:
        return None
    hi = max_moves if max_moves is not None else jumps_needed
    lo = K.region_bound(np.uint64(start), -1, np.uint64(target), tb.regions) if use_bound else 1
    if min_moves is not None:
        lo = max(lo, min_moves)
    syms = _syms_fixing(g, target)
    # tables persist across limits: a refutation with budget r stays valid
    if threads <= 1:
        keys, vals = _new_table(budget.table_capacity)
    try:
        for limit in range(lo, hi + 1):
            _check_time(deadline, "minimal-move search", best=None, nodes=stats.nodes)
            if threads <= 1:
                status, nodes, path = _move_search_root(
                    g.n, start, target, limit, syms, budget, use_tt, use_bound, keys, vals)
            else:
                status, nodes, path = _parallel_limit(g, start, target, limit, syms, budget,
                                                      use_tt, use_bound, threads)
            stats.nodes += nodes
            stats.iterations.append((limit, nodes))
            log.debug("limit %d: status %d after %d nodes", limit, status, nodes)
            if status == K.OUT_OF_BUDGET:
                raise BudgetExhausted(f"node budget exhausted at move limit {limit}",
                                      nodes=stats.nodes)
            if status == K.FOUND:
                return limit, [g.jumps[j] for j in path]
        return None
    finally:
        stats.elapsed += time.monotonic() - t0


_thread_tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _parallel_limit(g, start, target, limit, syms, budget, use_tt, use_bound, threads):
    """One deepening step split over the first jump.  The answer is the one
    from the lowest-indexed first jump that has any solution, which is what
    the sequential search would return."""
    tb = _tables(g.n)
    roots = []
    for j in range(len(g.jumps)):
        m = int(tb.jmask[j])
        if start & m == m ^ (1 << int(tb.jd[j])):
            roots.append(j)

    def run(j: int):
        keys, vals = _new_table(max(1024, budget.table_capacity // threads))
        status, nodes, path = _move_search_root(
            g.n, start ^ int(tb.jmask[j]), target, limit, syms, budget, use_tt, use_bound,
            keys, vals, last=int(tb.jd[j]), used=1)
        return status, nodes, [j] + path

    total = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(run, roots))
    for status, nodes, path in results:
        total += nodes
        if status == K.OUT_OF_BUDGET:
            return status, total, []
        if status == K.FOUND:
            return status, sum(r[1] for r in results), path
    return K.EXHAUSTED, total, []


def _finish_candidates(prob: Problem) -> list[int]:
    g = prob.board
    v = g.hole(prob.vacancy)
    if prob.finish is not None:
        return [g.hole(prob.finish)]
    return [f for f in range(g.size) if feasibility_matrix(g)[v][f]]


def min_move_solution(prob: Problem, budget: SearchBudget = DEFAULT_BUDGET, threads: int = 1,
                      use_tt: bool = True, use_bound: bool = True,
                      stats: SearchStats | None = None,
                      max_moves: int | None = None) -> tuple[int, Solution]:
    """Provably minimal solution of ``prob``.

    Raises :class:`Unsolvable` when the classes differ or exhaustive
    reduction fails, and :class:`BudgetExhausted` on budget.  With
    ``max_moves`` the search stops at that limit and reports unsolvable
    within it.  With an open finish every feasible finish is tried and the
    shortest wins (lowest hole index on ties).
    """
    g = prob.board
    stats = stats if stats is not None else SearchStats()
    v = g.hole(prob.vacancy)
    start = g.full_mask ^ (1 << v)
    best: tuple[int, list[Jump], int] | None = None
    for f in _finish_candidates(prob):
        if not feasible_pair(g, v, f):
            continue
        if max_moves is None and reduce_to_one(Position(g, start), f, budget) is None:
            continue
        cap = max_moves if best is None else min(best[0] - 1, max_moves or best[0] - 1)
        found = move_path(g, start, 1 << f, budget, max_moves=cap, threads=threads,
                          use_tt=use_tt, use_bound=use_bound, stats=stats)
        if found is not None:
            best = (found[0], found[1], f)
    if best is None:
        within = f" within {max_moves} moves" if max_moves is not None else ""
        raise Unsolvable(f"{prob} has no solution{within}")
    length, jumps, f = best
    solved = Problem(prob.n, prob.vacancy, g.holes[f]) if prob.finish is None else prob
    sol = Solution(solved, tuple(jumps_to_moves(g, jumps)))
    assert sol.move_count == length, (sol.move_count, length)
    return length, sol


def jump_sets(prob: Problem, length: int, budget: SearchBudget = DEFAULT_BUDGET,
              max_sets: int = 4096) -> list[frozenset[Jump]]:
    """Distinct unordered sets of (origin, over, landing) jumps among the
    solutions of ``prob`` with at most ``length`` moves."""
    g = prob.board
    if prob.finish is None:
        raise ValueError("jump-set enumeration needs a fixed finish")
    if len(g.jumps) > 128:
        raise SearchError(f"Triangle({g.n}) has more than 128 jumps")
    v = g.hole(prob.vacancy)
    f = g.hole(prob.finish)
    if not feasible_pair(g, v, f):
        raise Unsolvable(f"{prob} is infeasible")
    tb = _tables(g.n)
    start = g.full_mask ^ (1 << v)
    target = 1 << f
    keys, vals = _new_table(budget.table_capacity)
    lo = np.zeros(max_sets, np.uint64)
    hi = np.zeros(max_sets, np.uint64)
    status, nodes, n_sets, n_sol = K.collect_jump_sets(
        np.uint64(start), np.uint64(target), length, tb.jo, tb.jm, tb.jd, tb.jmask, tb.regions,
        tb.symtab, tb.symperm, _syms_fixing(g, target), keys, vals, budget.node_limit,
        lo, hi, max_sets)
    if status == K.OUT_OF_BUDGET:
        raise BudgetExhausted("budget exhausted enumerating jump sets", best=int(n_sets), nodes=nodes)
    if n_sol == 0:
        raise Unsolvable(f"{prob} has no solution within {length} moves")
    out = []
    for k in range(int(n_sets)):
        bits = int(lo[k]) | int(hi[k]) << 64
        out.append(frozenset(g.jumps[j] for j in range(len(g.jumps)) if bits >> j & 1))
    return out


def undirected(jumps: Iterable[Jump]) -> frozenset:
    """A jump set with each jump reduced to its line: origin and landing
    unordered.  A closed loop played in either direction gives the same
    result."""
    return frozenset((frozenset((o, d)), m) for o, m, d in jumps)


def jump_set_uniqueness(prob: Problem, length: int, budget: SearchBudget = DEFAULT_BUDGET,
                        max_sets: int = 4096, directed: bool = True) -> int:
    """Number of distinct unordered jump sets among solutions of ``prob``
    with at most ``length`` moves (all of them minimal when ``length`` is
    the minimum).  With ``directed=False`` two jumps along the same line in
    opposite directions count as the same jump."""
    sets = jump_sets(prob, length, budget, max_sets)
    if directed:
        return len(sets)
    return len({undirected(s) for s in sets})


# ---------------------------------------------------------------------------
# problems and whole-board tables


def _pair_key(g: BoardGeometry, v: int, f: int) -> tuple[int, int]:
    return min((perm[v], perm[f]) for perm in g.symmetries)


def enumerate_problems(n: int, complement_only: bool = False, feasible_only: bool = True) -> list[Problem]:
    """Distinct (vacancy, finish) problems up to rotation and reflection.

    Each problem is represented by its least (vacancy, finish) index pair
    over the six symmetries, listed in that order.
    """
    g = build_geometry(n)
    feas = feasibility_matrix(g)
    keys = set()
    for v in range(g.size):
        for f in range(g.size):
            if complement_only and v != f:
                continue
            if feasible_only and not feas[v][f]:
                continue
            keys.add(_pair_key(g, v, f))
    return [Problem(n, g.holes[v], g.holes[f]) for v, f in sorted(keys)]


def canonical_problem(prob: Problem) -> Problem:
    g = prob.board
    if prob.finish is None:
        v = min(g.orbit(g.hole(prob.vacancy)))
        return Problem(prob.n, g.holes[v], None)
    v, f = _pair_key(g, g.hole(prob.vacancy), g.hole(prob.finish))
    return Problem(prob.n, g.holes[v], g.holes[f])


@dataclass
class Distribution:
    n: int
    complement_only: bool
    lengths: dict[Problem, int | None]
    status: dict[Problem, str]
    elapsed: float = 0.0
    positions: int = 0

    @property
    def total(self) -> int:
        return len(self.lengths)

    @property
    def solvable(self) -> int:
        return sum(1 for s in self.status.values() if s == "solved")

    @property
    def indeterminate(self) -> int:
        return sum(1 for s in self.status.values() if s == "budget")

    @property
    def histogram(self) -> dict[int, int]:
        h: dict[int, int] = {}
        for p, L in self.lengths.items():
            if L is not None and self.status[p] == "solved":
                h[L] = h.get(L, 0) + 1
        return dict(sorted(h.items()))


def layered_min_moves(g: BoardGeometry, vacancy: int, prune_above: int = -1) -> tuple[dict[int, int], int]:
    """Minimal move count from the ``vacancy`` start to every finish hole,
    by a sweep over all reachable positions (exhaustive when
    ``prune_above`` is negative).  Returns ``({finish: moves}, positions)``."""
    tb = _tables(g.n)
    sizes = np.zeros(g.size + 1, np.int64)
    out = K.layered_min_moves(np.uint64(g.full_mask ^ (1 << vacancy)), g.size, tb.jo, tb.jd,
                              tb.jmask, tb.regions, prune_above, sizes)
    return {f: int(d) for f, d in enumerate(out) if d >= 0}, int(sizes.sum())


def _layered_with_horizon(g: BoardGeometry, v: int, finishes: list[int]) -> tuple[dict[int, int], int]:
    """Layered sweep pruned at a move horizon, widened until every wanted
    finish is reached.  Pruning keeps minima at or under the horizon exact;
    the last resort is an unpruned sweep, which also proves unreachability.
    Small boards are swept unpruned straight away."""
    if g.size <= LAYERED_UNPRUNED_MAX:
        return layered_min_moves(g, v)
    horizon = best_lower_bound(g, v) + 1
    total = 0
    while horizon < g.size - 2:
        dist, count = layered_min_moves(g, v, prune_above=horizon)
        total += count
        if all(f in dist for f in finishes):
            return dist, total
        log.info("vacancy %s: widening horizon past %d", g.label(v), horizon)
        horizon += 1
    dist, count = layered_min_moves(g, v)
    return dist, total + count


def min_move_distribution(n: int, complement_only: bool = False,
                          budget: SearchBudget = DEFAULT_BUDGET, method: str = "auto",
                          on_result=None, known: dict[Problem, tuple[str, int | None]] | None = None,
                          threads: int = 1) -> Distribution:
    """Histogram of minimal solution lengths over the distinct problems.

    ``method="layered"`` sweeps every position reachable from each vacancy
    class once and reads off all finishes; ``"iddfs"`` solves problems one by
    one.  ``"auto"`` picks layered unless only complement problems are
    wanted on a board above Triangle(7).  ``on_result(problem, status,
    length)`` is called as results arrive and ``known`` seeds results from
    an earlier, interrupted run.
    """
    g = build_geometry(n)
    problems = enumerate_problems(n, complement_only=complement_only)
    if method == "auto":
        method = "iddfs" if complement_only and n > 7 else "layered"
    lengths: dict[Problem, int | None] = {}
    status: dict[Problem, str] = {}
    known = known or {}
    t0 = time.monotonic()
    deadline = t0 + budget.time_limit if budget.time_limit else None
    positions = 0

    def record(p: Problem, st: str, L: int | None):
        lengths[p] = L
        status[p] = st
        if on_result is not None and p not in known:
            on_result(p, st, L)

    pending = []
    for p in problems:
        if p in known:
            st, L = known[p]
            lengths[p], status[p] = L, st
        else:
            pending.append(p)

    if method == "layered":
        by_vacancy: dict[int, list[Problem]] = {}
        for p in pending:
            by_vacancy.setdefault(g.hole(p.vacancy), []).append(p)
        for v, probs in sorted(by_vacancy.items()):
            if deadline is not None and time.monotonic() > deadline:
                for p in probs:
                    record(p, "budget", None)
                continue
            dist, count = _layered_with_horizon(g, v, [g.hole(p.finish) for p in probs])
            positions += count
            for p in probs:
                L = dist.get(g.hole(p.finish))
                record(p, "solved" if L is not None else "unsolvable", L)
    elif method == "iddfs":
        for p in pending:
            remaining = None
            if deadline is not None:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    record(p, "budget", None)
                    continue
            b = SearchBudget(budget.node_limit, remaining, budget.table_capacity)
            try:
                L, _ = min_move_solution(p, b, threads=threads)
                record(p, "solved", L)
            except Unsolvable:
                record(p, "unsolvable", None)
            except BudgetExhausted:
                record(p, "budget", None)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Distribution(n, complement_only, lengths, status, time.monotonic() - t0, positions)


# ---------------------------------------------------------------------------
# reversal


def reverse_solution(s: Solution) -> Solution:
    """The backward reading of ``s``: the same jumps in reverse order, played
    from the complement, so vacancy and finish swap.  Jumps are regrouped
    into moves greedily; the hops of one sweep never chain once reversed."""
    prob = s.problem
    if prob.finish is None:
        raise ValueError("solution has no declared finish")
    g = prob.board
    rev = list(reversed(s.jumps()))
    return Solution(Problem(prob.n, prob.finish, prob.vacancy), tuple(jumps_to_moves(g, rev)))


def regroup(s: Solution) -> Solution:
    """Same jumps, greedily chained into moves."""
    return Solution(s.problem, tuple(jumps_to_moves(s.problem.board, s.jumps())))


def solution_from_jumps(prob: Problem, jumps: Iterable[Jump]) -> Solution:
    return Solution(prob, tuple(jumps_to_moves(prob.board, list(jumps))))


def merson_lower_bound(prob: Problem) -> int:
    return lower_bound(prob.board, prob.vacancy)


def expected_jump_count(n: int) -> int:
    return triangular(n) - 2
