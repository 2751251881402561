"""Position classes as cosets of the GF(2) span of jump supports.

Each jump flips exactly its three holes, so a position and every position
reachable from it differ by a sum of jump vectors.  Reducing a position
against a row-reduced basis of that span gives a canonical coset
representative; two positions can only be connected by play when their
representatives agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .board import BoardGeometry, Coord, Position, build_geometry


@dataclass(frozen=True)
class JumpSpan:
    """Reduced row-echelon basis of the jump span, keyed by pivot hole.

    Pivots are the lowest hole index of each basis row, chosen in hole-index
    order so signatures are reproducible.
    """

    n: int
    rank: int
    rows: dict[int, int]
    free: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return 2 ** len(self.free)

    def reduce(self, bits: int) -> int:
        for pivot in sorted(self.rows):
            if bits >> pivot & 1:
                bits ^= self.rows[pivot]
        return bits

    def signature(self, bits: int) -> tuple[int, ...]:
        r = self.reduce(bits)
        return tuple(r >> h & 1 for h in self.free)


def _eliminate(vectors: list[int]) -> dict[int, int]:
    rows: dict[int, int] = {}
    for v in vectors:
        for pivot in sorted(rows):
            if v >> pivot & 1:
                v ^= rows[pivot]
        if v:
            pivot = (v & -v).bit_length() - 1
            # keep the basis fully reduced
            for p in list(rows):
                if rows[p] >> pivot & 1:
                    rows[p] ^= v
            rows[pivot] = v
    return rows


@lru_cache(maxsize=None)
def _span_for(n: int) -> JumpSpan:
    g = build_geometry(n)
    rows = _eliminate([(1 << o) | (1 << m) | (1 << d) for o, m, d in g.jumps])
    free = tuple(h for h in range(g.size) if h not in rows)
    return JumpSpan(n=n, rank=len(rows), rows=rows, free=free)


def jump_span_basis(g: BoardGeometry) -> JumpSpan:
    return _span_for(g.n)


def class_signature(p: Position) -> tuple[int, ...]:
    return _span_for(p.board.n).signature(p.bits)


def feasible_pair(g: BoardGeometry, vacancy: Coord | str | int, finish: Coord | str | int) -> bool:
    """Necessary condition for solving "vacate ``vacancy``, finish at ``finish``"."""
    span = _span_for(g.n)
    start = Position.start(g, vacancy)
    end = Position.single(g, finish)
    return span.reduce(start.bits) == span.reduce(end.bits)


def feasibility_matrix(g: BoardGeometry) -> list[list[bool]]:
    span = _span_for(g.n)
    full = g.full_mask
    starts = [span.reduce(full ^ (1 << v)) for v in range(g.size)]
    ends = [span.reduce(1 << f) for f in range(g.size)]
    return [[starts[v] == ends[f] for f in range(g.size)] for v in range(g.size)]
