"""Merson regions, exact region packings and move-count lower bounds.

A Merson region is a set of holes that, while completely full, cannot lose
a peg except through a move starting inside it.  Disjoint regions that all
start full therefore each cost at least one move.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .board import DIRECTIONS, BoardGeometry, Coord, Position, build_geometry

KIND_ORDER = {"corner": 0, "edge-pair": 1, "hexagon": 2}


@dataclass(frozen=True)
class Region:
    kind: str
    holes: tuple[int, ...]

    @property
    def mask(self) -> int:
        m = 0
        for h in self.holes:
            m |= 1 << h
        return m

    def coords(self, g: BoardGeometry) -> list[Coord]:
        return [g.holes[h] for h in self.holes]

    def labels(self, g: BoardGeometry) -> str:
        return " ".join(g.label(h) for h in self.holes)

    def __len__(self) -> int:
        return len(self.holes)


@dataclass(frozen=True)
class Packing:
    n: int
    regions: tuple[Region, ...]
    uncovered: frozenset[int] = field(default=frozenset())

    @property
    def R(self) -> int:
        return len(self.regions)

    def region_of(self, hole: int) -> Region | None:
        for r in self.regions:
            if hole in r.holes:
                return r
        return None


def is_merson(g: BoardGeometry, holes: Iterable[int]) -> bool:
    """True when every jump over a region hole from outside lands inside."""
    hs = set(holes)
    for o, m, d in g.jumps:
        if m in hs and o not in hs and d not in hs:
            return False
    return True


@lru_cache(maxsize=None)
def _candidates(n: int) -> tuple[Region, ...]:
    g = build_geometry(n)
    out: list[Region] = [Region("corner", (c,)) for c in sorted(g.corners)]

    edges = [
        [Coord(1, y) for y in range(1, n + 1)],
        [Coord(y, y) for y in range(1, n + 1)],
        [Coord(x, n) for x in range(1, n + 1)],
    ]
    pairs = set()
    for edge in edges:
        for a, b in zip(edge, edge[1:]):
            pairs.add(tuple(sorted((g.index[a], g.index[b]))))
    out.extend(Region("edge-pair", p) for p in sorted(pairs))

    for i, c in enumerate(g.holes):
        ring = [c.shift(dx, dy) for dx, dy in DIRECTIONS]
        if all(g.contains(r) for r in ring):
            out.append(Region("hexagon", tuple(sorted([i] + [g.index[r] for r in ring]))))

    return tuple(r for r in out if is_merson(g, r.holes))


def candidate_regions(g: BoardGeometry) -> list[Region]:
    return list(_candidates(g.n))


def max_packing(g: BoardGeometry, avoid: Iterable[int] = ()) -> Packing:
    """Maximum number of pairwise-disjoint candidate regions.

    Branch and bound over holes in index order: each hole is either left
    uncovered or covered by a region whose holes are all still free.  The
    bound gives every free hole the weight ``1/|R|`` of the smallest region
    able to hold it, so no region can be worth less than its weights.
    Regions touching ``avoid`` are never used.  The first optimum found in
    candidate order is returned.
    """
    return _max_packing(g.n, frozenset(avoid))


@lru_cache(maxsize=None)
def _max_packing(n: int, avoid: frozenset[int]) -> Packing:
    g = build_geometry(n)
    cands = [r for r in _candidates(n) if not avoid.intersection(r.holes)]
    by_hole: list[list[Region]] = [[] for _ in range(g.size)]
    for r in cands:
        by_hole[min(r.holes)].append(r)
    # weights scaled by 14 = lcm of region sizes 1, 2, 7
    weight = [0] * g.size
    for r in cands:
        for h in r.holes:
            weight[h] = max(weight[h], 14 // len(r))
    full = g.full_mask
    start_decided = 0
    for h in avoid:
        start_decided |= 1 << h

    best: list = [[], -1]

    def free_weight(decided: int) -> int:
        rest = full & ~decided
        total = 0
        while rest:
            low = rest & -rest
            total += weight[low.bit_length() - 1]
            rest ^= low
        return total

    chosen: list[Region] = []

    def search(decided: int) -> None:
        if len(chosen) + free_weight(decided) // 14 <= best[1]:
            return
        rest = full & ~decided
        if not rest:
            best[0], best[1] = list(chosen), len(chosen)
            return
        h = (rest & -rest).bit_length() - 1
        for r in by_hole[h]:
            m = r.mask
            if not m & decided:
                chosen.append(r)
                search(decided | m)
                chosen.pop()
        search(decided | (1 << h))

    search(start_decided)
    regions = tuple(best[0])
    covered = set()
    for r in regions:
        covered.update(r.holes)
    return Packing(n=n, regions=regions, uncovered=frozenset(set(range(g.size)) - covered))


def lower_bound(g: BoardGeometry, vacancy: Coord | str | int, pk: Packing | None = None) -> int:
    """Moves needed by any solution starting from ``vacancy``, whatever the
    finish: ``R`` when the vacancy is a corner or outside every region, else
    ``R - 1``."""
    pk = pk if pk is not None else max_packing(g)
    v = g.hole(vacancy)
    if v in g.corners:
        return pk.R
    region = pk.region_of(v)
    return pk.R if region is None else pk.R - 1


def best_lower_bound(g: BoardGeometry, vacancy: Coord | str | int) -> int:
    """Strongest bound of the same two rules over all optimal and
    vacancy-avoiding packings."""
    v = g.hole(vacancy)
    base = max_packing(g)
    b = lower_bound(g, v, base)
    if v not in g.corners:
        b = max(b, max_packing(g, avoid=(v,)).R)
    return b


def dynamic_full_region_bound(p: Position, pk: Packing, target: Coord | str | int | None = None,
                              moving: Coord | str | int | None = None) -> int:
    """Lower bound on the further moves needed to reduce ``p``.

    Counts regions that are full now.  With two or more pegs left each of
    them must lose a peg through a move starting inside it, because the
    peg that survives is the one that moved last.  A region holding the
    peg that is still ``moving`` (mid-sweep) is skipped.  ``target`` only
    matters once a single peg is left: then the bound is 0 and the position
    is either solved or dead.
    """
    g = p.board
    if p.count <= 1:
        return 0
    last = g.hole(moving) if moving is not None else None
    count = 0
    for r in pk.regions:
        m = r.mask
        if p.bits & m != m:
            continue
        if last is not None and last in r.holes:
            continue
        count += 1
    if count == 0 and last is None:
        count = 1
    return count


def density_ratio(pk: Packing) -> Fraction:
    """Holes per region; tends to 7 as hexagons take over large boards."""
    g = build_geometry(pk.n)
    return Fraction(g.size, pk.R)
