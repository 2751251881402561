"""Triangle(n) geometry, bitboard positions, jumps and multi-jump moves.

Holes are addressed as ``(x, y)`` with ``y`` the row counted from the apex
and ``x`` the place within the row, so ``1 <= x <= y <= n``.  The label of a
hole is its column letters (a..z, then aa, ab, ...) followed by the row
number; the apex is always ``a1``.  Bit ``i`` of a position is the ``i``-th
hole in row-major order from the apex: ``(1,1), (1,2), (2,2), (1,3), ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

# (dx, dy) steps of the six lattice directions
DIRECTIONS: tuple[tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))

PEG = "•"
HOLE = "·"

_LABEL_RE = re.compile(r"^\s*([a-zA-Z]+)(\d+)\s*$")


class BoardError(ValueError):
    """Invalid board size, coordinate or label."""


class IllegalMoveError(ValueError):
    """A move could not be played; ``hop`` is the index of the first bad hop."""

    def __init__(self, message: str, hop: int):
        super().__init__(message)
        self.hop = hop


def triangular(n: int) -> int:
    return n * (n + 1) // 2


@dataclass(frozen=True, order=True)
class Coord:
    x: int
    y: int

    @property
    def label(self) -> str:
        return f"{column_letters(self.x)}{self.y}"

    def __str__(self) -> str:
        return self.label

    def shift(self, dx: int, dy: int) -> "Coord":
        return Coord(self.x + dx, self.y + dy)


def column_letters(x: int) -> str:
    """Column name: a..z, then aa, ab, ... like spreadsheet columns."""
    if x < 1:
        raise BoardError(f"column {x} has no letter label")
    out = ""
    while x:
        x, r = divmod(x - 1, 26)
        out = chr(ord("a") + r) + out
    return out


def column_number(letters: str) -> int:
    x = 0
    for ch in letters.lower():
        x = 26 * x + ord(ch) - ord("a") + 1
    return x


def parse_label(s: str, n: int) -> Coord:
    """Parse a hole label such as ``"c5"`` on Triangle(n)."""
    m = _LABEL_RE.match(s)
    if m is None:
        raise BoardError(f"malformed hole label {s!r}: expected column letters followed by a row number")
    x = column_number(m.group(1))
    y = int(m.group(2))
    if y < 1 or y > n:
        raise BoardError(f"hole {s!r}: row {y} is outside 1..{n}")
    if x > y:
        raise BoardError(f"hole {s!r}: column {x} exceeds row {y} (need x <= y)")
    return Coord(x, y)


@dataclass(frozen=True)
class BoardGeometry:
    """Immutable description of Triangle(n).

    ``jumps`` holds ``(origin, over, destination)`` hole-index triples and
    ``symmetries`` the six hole permutations of the dihedral group, each as a
    tuple mapping hole index ``i`` to its image.  Index 0 of ``symmetries`` is
    the identity, 1 and 2 are the rotations, 3..5 the reflections.
    """

    n: int
    holes: tuple[Coord, ...]
    jumps: tuple[tuple[int, int, int], ...]
    symmetries: tuple[tuple[int, ...], ...]
    index: dict[Coord, int] = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.holes)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.holes)) - 1

    def hole(self, where: Coord | str | int) -> int:
        """Hole index of a coordinate, label or index."""
        if isinstance(where, int):
            if not 0 <= where < self.size:
                raise BoardError(f"hole index {where} not on Triangle({self.n})")
            return where
        if isinstance(where, str):
            where = parse_label(where, self.n)
        try:
            return self.index[where]
        except KeyError:
            raise BoardError(f"{where} is not on Triangle({self.n})") from None

    def coord(self, i: int) -> Coord:
        return self.holes[i]

    def label(self, i: int) -> str:
        return self.holes[i].label

    def contains(self, c: Coord) -> bool:
        return 1 <= c.x <= c.y <= self.n

    @property
    def corners(self) -> tuple[int, int, int]:
        n = self.n
        return (self.index[Coord(1, 1)], self.index[Coord(1, n)], self.index[Coord(n, n)])

    def is_edge(self, i: int) -> bool:
        c = self.holes[i]
        return c.x == 1 or c.x == c.y or c.y == self.n

    def jump_between(self, origin: int, dest: int) -> tuple[int, int, int] | None:
        return self._jump_lookup().get((origin, dest))

    @lru_cache(maxsize=None)
    def _jump_lookup(self) -> dict[tuple[int, int], tuple[int, int, int]]:
        return {(o, d): (o, m, d) for o, m, d in self.jumps}

    @lru_cache(maxsize=None)
    def jumps_from(self, origin: int) -> tuple[tuple[int, int, int], ...]:
        return tuple(j for j in self.jumps if j[0] == origin)

    def map_bits(self, bits: int, sym: int) -> int:
        perm = self.symmetries[sym]
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << perm[low.bit_length() - 1]
            bits ^= low
        return out

    def orbit(self, i: int) -> list[int]:
        return sorted({perm[i] for perm in self.symmetries})

    def __hash__(self) -> int:
        return hash(self.n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BoardGeometry) and other.n == self.n


def rotate(c: Coord, n: int) -> Coord:
    return Coord(n + 1 - c.y, n - c.y + c.x)


def reflect(c: Coord, n: int) -> Coord:
    return Coord(c.y - c.x + 1, c.y)


@lru_cache(maxsize=None)
def build_geometry(n: int) -> BoardGeometry:
    if not isinstance(n, int) or n < 2:
        raise BoardError(f"Triangle(n) needs an integer n >= 2, got {n!r}")
    holes = tuple(Coord(x, y) for y in range(1, n + 1) for x in range(1, y + 1))
    index = {c: i for i, c in enumerate(holes)}

    def inside(c: Coord) -> bool:
        return 1 <= c.x <= c.y <= n

    jumps = []
    for i, c in enumerate(holes):
        for dx, dy in DIRECTIONS:
            over = c.shift(dx, dy)
            dest = c.shift(2 * dx, 2 * dy)
            if inside(over) and inside(dest):
                jumps.append((i, index[over], index[dest]))

    def perm_of(f) -> tuple[int, ...]:
        return tuple(index[f(c)] for c in holes)

    rot = lambda c: rotate(c, n)  # noqa: E731
    ref = lambda c: reflect(c, n)  # noqa: E731
    syms = (
        perm_of(lambda c: c),
        perm_of(rot),
        perm_of(lambda c: rot(rot(c))),
        perm_of(ref),
        perm_of(lambda c: ref(rot(c))),
        perm_of(lambda c: ref(rot(rot(c)))),
    )
    return BoardGeometry(n=n, holes=holes, jumps=tuple(jumps), symmetries=syms, index=index)


@dataclass(frozen=True)
class Position:
    board: BoardGeometry
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.board.size:
            raise BoardError(f"bit vector {self.bits:#x} has bits outside Triangle({self.board.n})")

    @classmethod
    def full(cls, board: BoardGeometry) -> "Position":
        return cls(board, board.full_mask)

    @classmethod
    def empty(cls, board: BoardGeometry) -> "Position":
        return cls(board, 0)

    @classmethod
    def start(cls, board: BoardGeometry, vacancy: Coord | str | int) -> "Position":
        return cls(board, board.full_mask & ~(1 << board.hole(vacancy)))

    @classmethod
    def single(cls, board: BoardGeometry, where: Coord | str | int) -> "Position":
        return cls(board, 1 << board.hole(where))

    @classmethod
    def from_holes(cls, board: BoardGeometry, holes: Iterable[Coord | str | int]) -> "Position":
        bits = 0
        for h in holes:
            bits |= 1 << board.hole(h)
        return cls(board, bits)

    @property
    def count(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.count

    def has_peg(self, where: Coord | str | int) -> bool:
        return bool(self.bits >> self.board.hole(where) & 1)

    def pegs(self) -> list[int]:
        return [i for i in range(self.board.size) if self.bits >> i & 1]

    def peg_coords(self) -> list[Coord]:
        return [self.board.holes[i] for i in self.pegs()]

    def complement(self) -> "Position":
        return Position(self.board, self.board.full_mask & ~self.bits)

    def symmetric(self, sym: int) -> "Position":
        return Position(self.board, self.board.map_bits(self.bits, sym))

    # text form: one row per line, pegs and holes separated by spaces
    def to_text(self, centered: bool = True) -> str:
        n = self.board.n
        lines = []
        i = 0
        for y in range(1, n + 1):
            cells = []
            for _ in range(y):
                cells.append(PEG if self.bits >> i & 1 else HOLE)
                i += 1
            pad = " " * (n - y) if centered else ""
            lines.append(pad + " ".join(cells))
        return "\n".join(lines)

    def to_hex(self) -> str:
        return f"{self.board.n}:{self.bits:x}"

    def __str__(self) -> str:
        return self.to_text()


def parse_text(text: str) -> Position:
    """Parse the row-per-line text form.  ``o``/``x`` and ``.``/``*`` are
    accepted as ASCII stand-ins for holes and pegs."""
    rows = [ln.split() for ln in text.strip("\n").splitlines() if ln.strip()]
    n = len(rows)
    board = build_geometry(n)
    bits = 0
    i = 0
    for y, row in enumerate(rows, start=1):
        if len(row) != y:
            raise BoardError(f"line {y}: expected {y} cells, found {len(row)}")
        for x, cell in enumerate(row, start=1):
            if cell in (PEG, "*", "x", "X", "1"):
                bits |= 1 << i
            elif cell not in (HOLE, ".", "o", "O", "0"):
                raise BoardError(f"line {y}, cell {x}: unknown symbol {cell!r}")
            i += 1
    return Position(board, bits)


def parse_hex(s: str) -> Position:
    try:
        n_str, hex_str = s.strip().split(":")
        n = int(n_str)
        bits = int(hex_str, 16)
    except ValueError:
        raise BoardError(f"malformed hex position {s!r}: expected '<n>:<hex bits>'") from None
    return Position(build_geometry(n), bits)


def parse_position(s: str) -> Position:
    s = s.strip()
    if ":" in s and "\n" not in s:
        return parse_hex(s)
    return parse_text(s)


@dataclass(frozen=True)
class Move:
    """One peg jumping one or more times in a row.

    ``path`` lists the holes visited by the moving peg and ``removed`` the
    pegs it captured, one per hop; a move with ``i`` hops is an i-sweep.
    """

    path: tuple[Coord, ...]
    removed: tuple[Coord, ...]

    def __post_init__(self):
        if len(self.path) < 2:
            raise BoardError("a move visits at least two holes")
        if len(self.removed) != len(self.path) - 1:
            raise BoardError("a move removes exactly one peg per hop")
        if len(set(self.removed)) != len(self.removed):
            raise BoardError("a move cannot capture the same hole twice")

    @property
    def length(self) -> int:
        return len(self.removed)

    @property
    def start(self) -> Coord:
        return self.path[0]

    @property
    def end(self) -> Coord:
        return self.path[-1]

    def revisits(self) -> bool:
        return len(set(self.path)) != len(self.path)

    def hops(self) -> Iterator[tuple[Coord, Coord, Coord]]:
        for k in range(len(self.removed)):
            yield self.path[k], self.removed[k], self.path[k + 1]

    def __str__(self) -> str:
        return "-".join(c.label for c in self.path)

    @classmethod
    def from_indices(cls, board: BoardGeometry, path: Sequence[int]) -> "Move":
        removed = []
        for a, b in zip(path, path[1:]):
            j = board.jump_between(a, b)
            if j is None:
                raise BoardError(f"{board.label(a)} to {board.label(b)} is not a jump")
            removed.append(board.holes[j[1]])
        return cls(tuple(board.holes[i] for i in path), tuple(removed))

    @classmethod
    def parse(cls, s: str, board: BoardGeometry) -> "Move":
        labels = s.strip().split("-")
        return cls.from_indices(board, [board.hole(lb) for lb in labels])

    def path_indices(self, board: BoardGeometry) -> list[int]:
        return [board.index[c] for c in self.path]


def legal_jumps(p: Position) -> list[tuple[Coord, Coord, Coord]]:
    b, bits = p.board, p.bits
    out = []
    for o, m, d in b.jumps:
        if bits >> o & 1 and bits >> m & 1 and not bits >> d & 1:
            out.append((b.holes[o], b.holes[m], b.holes[d]))
    return out


def apply_move(p: Position, m: Move) -> Position:
    b = p.board
    bits = p.bits
    for k, (src, over, dst) in enumerate(m.hops()):
        try:
            o, mid, d = b.hole(src), b.hole(over), b.hole(dst)
        except BoardError as exc:
            raise IllegalMoveError(f"hop {k}: {exc}", k) from None
        if b.jump_between(o, d) != (o, mid, d):
            raise IllegalMoveError(f"hop {k}: {src}-{dst} over {over} is not a jump", k)
        if not bits >> o & 1:
            raise IllegalMoveError(f"hop {k}: no peg at {src}", k)
        if not bits >> mid & 1:
            raise IllegalMoveError(f"hop {k}: no peg to capture at {over}", k)
        if bits >> d & 1:
            raise IllegalMoveError(f"hop {k}: landing hole {dst} is occupied", k)
        bits ^= (1 << o) | (1 << mid) | (1 << d)
    return Position(b, bits)


def enumerate_moves(p: Position) -> list[Move]:
    """Every move from ``p``: all jump chains of every peg, prefixes included."""
    b = p.board
    out: list[Move] = []

    def extend(bits: int, path: list[int], removed: list[int]) -> None:
        here = path[-1]
        for o, m, d in b.jumps_from(here):
            if bits >> m & 1 and not bits >> d & 1:
                path.append(d)
                removed.append(m)
                out.append(Move(tuple(b.holes[i] for i in path), tuple(b.holes[i] for i in removed)))
                extend(bits ^ (1 << o) ^ (1 << m) ^ (1 << d), path, removed)
                path.pop()
                removed.pop()

    for i in p.pegs():
        extend(p.bits, [i], [])
    return out


def complement(p: Position) -> Position:
    return p.complement()


def canonicalize(p: Position, syms: Sequence[int] | None = None) -> tuple[Position, int]:
    """Least image of ``p`` (as an integer) over the symmetry group, or over
    the subgroup ``syms`` when given; ties resolve to the lowest map id."""
    b = p.board
    best, best_id = None, 0
    for s in syms if syms is not None else range(6):
        img = b.map_bits(p.bits, s)
        if best is None or img < best:
            best, best_id = img, s
    return Position(b, best), best_id


def stabilizer(board: BoardGeometry, holes: Iterable[int]) -> tuple[int, ...]:
    """Symmetry ids that fix every hole in ``holes``."""
    hs = list(holes)
    return tuple(s for s, perm in enumerate(board.symmetries) if all(perm[h] == h for h in hs))


def vertically_below(c: Coord) -> Coord:
    """The next hole straight down the page from ``c``."""
    return Coord(c.x + 1, c.y + 2)
