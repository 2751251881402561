"""Board diagrams: plain text and deterministic SVG via matplotlib.

Figures are built on :class:`matplotlib.figure.Figure` directly, so nothing
here touches pyplot's global state.  SVG output is byte-stable: the id salt
is fixed, text stays as text and the date stamp is dropped.
"""

from __future__ import annotations

import io
import math
from pathlib import Path
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

from .board import BoardGeometry, Coord, Move, Position, build_geometry
from .merson import Packing
from .search import Distribution, Solution
from .sweeps import FamilyStats

SVG_RC = {
    "svg.hashsalt": "trisolve",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
}

PEG = "#202020"
HOLE = "#ffffff"
PATH = "#c0392b"
REGION_COLOURS = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                  "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"]

ROW_STEP = math.sqrt(3) / 2


def hole_xy(g: BoardGeometry, i: int) -> tuple[float, float]:
    c = g.holes[i]
    return c.x - (c.y + 1) / 2, -c.y * ROW_STEP


def draw_board(ax, p: Position, move: Move | None = None, title: str | None = None,
               labels: bool = False, fills: dict[int, str] | None = None) -> None:
    """Pegs as filled discs, holes as rings; ``move`` is overlaid as a polyline
    through its landing holes."""
    g = p.board
    xs, ys, faces = [], [], []
    for i in range(g.size):
        x, y = hole_xy(g, i)
        xs.append(x)
        ys.append(y)
        if fills and i in fills:
            faces.append(fills[i])
        else:
            faces.append(PEG if p.bits >> i & 1 else HOLE)
    size = max(20.0, 2400.0 / (g.n * g.n))
    ax.scatter(xs, ys, s=size, c=faces, edgecolors=PEG, linewidths=0.8, zorder=2)
    if labels:
        for i in range(g.size):
            x, y = hole_xy(g, i)
            ax.annotate(g.label(i), (x, y), xytext=(0, -9), textcoords="offset points",
                        ha="center", fontsize=6, color="#555555")
    if move is not None:
        pts = [hole_xy(g, i) for i in move.path_indices(g)]
        line, = ax.plot([q[0] for q in pts], [q[1] for q in pts], color=PATH, lw=1.6,
                        marker="o", ms=3, zorder=3)
        line.set_gid("move-path")
    if title:
        ax.set_title(title, fontsize=8)
    ax.set_aspect("equal")
    ax.set_xlim(-g.n / 2 - 0.6, g.n / 2 - 0.4)
    ax.set_ylim(-g.n * ROW_STEP - 0.6, -ROW_STEP + 0.6)
    ax.axis("off")


def position_figure(p: Position, move: Move | None = None, labels: bool = True) -> Figure:
    with matplotlib.rc_context(SVG_RC):
        side = 1.0 + 0.45 * p.board.n
        fig = Figure(figsize=(side, side * 0.9))
        ax = fig.add_subplot()
        title = None if move is None else f"{move} ({move.length} jump{'s' if move.length > 1 else ''})"
        draw_board(ax, p, move, title=title, labels=labels)
    return fig


def solution_figure(sol: Solution, per_row: int = 4, moves: Sequence[int] | None = None) -> Figure:
    """Snapshot before each selected move with the move drawn on it, then
    the final position."""
    positions = sol.replay()
    picks = list(range(sol.move_count)) if moves is None else list(moves)
    panels = [(positions[k], sol.moves[k], f"{k + 1}. {sol.moves[k]}") for k in picks]
    if moves is None:
        panels.append((positions[-1], None, "end"))
    cols = min(per_row, len(panels))
    rows = math.ceil(len(panels) / cols)
    cell = 0.8 + 0.3 * sol.problem.n
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(cols * cell, rows * cell * 0.95))
        for k, (p, mv, title) in enumerate(panels):
            ax = fig.add_subplot(rows, cols, k + 1)
            draw_board(ax, p, mv, title=title)
        fig.suptitle(f"{sol.problem}: {sol.move_count} moves", fontsize=9)
    return fig


def packing_figure(pk: Packing) -> Figure:
    g = build_geometry(pk.n)
    fills = {}
    for k, r in enumerate(pk.regions):
        for h in r.holes:
            fills[h] = REGION_COLOURS[k % len(REGION_COLOURS)]
    with matplotlib.rc_context(SVG_RC):
        side = 1.0 + 0.45 * g.n
        fig = Figure(figsize=(side, side * 0.9))
        ax = fig.add_subplot()
        draw_board(ax, Position.empty(g), title=f"Triangle({g.n}): R = {pk.R}", labels=True,
                   fills=fills)
    return fig


def histogram_figure(dists: Sequence[Distribution], expected: dict[int, dict] | None = None) -> Figure:
    """Minimal-length histograms per board, with reference counts as
    hollow bars when given."""
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(3.2 * len(dists), 2.6))
        for k, d in enumerate(dists):
            ax = fig.add_subplot(1, len(dists), k + 1)
            h = d.histogram
            ax.bar(list(h), list(h.values()), color="#4c72b0", width=0.6, label="computed")
            ref = (expected or {}).get(d.n, {}).get("histogram")
            if ref:
                ax.bar(list(ref), list(ref.values()), fill=False, edgecolor="#c44e52", width=0.8,
                       label="reference")
            kind = "complement problems" if d.complement_only else "all problems"
            ax.set_title(f"Triangle({d.n}), {kind}", fontsize=8)
            ax.set_xlabel("minimal moves")
            ax.set_ylabel("problems")
            ax.legend(fontsize=6, frameon=False)
        fig.tight_layout()
    return fig


def family_figure(rows: Sequence[FamilyStats]) -> Figure:
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(4.2, 2.8))
        ax = fig.add_subplot()
        i = [r.i for r in rows]
        ax.plot(i, [100 * float(r.pct_removed) for r in rows], "o-", label="removed by final sweep")
        ax.axhline(75, color="#888888", lw=0.8, ls="--", label="limit 75%")
        ax.set_xlabel("i  (board Triangle(12i))")
        ax.set_ylabel("% of pegs")
        ax.legend(fontsize=7, frameon=False)
        fig.tight_layout()
    return fig


def save_figure(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(figure_bytes(fig, path.suffix.lstrip(".") or "svg"))
    return path


def figure_bytes(fig: Figure, fmt: str = "svg") -> bytes:
    buf = io.BytesIO()
    with matplotlib.rc_context(SVG_RC):
        meta = {"Date": None} if fmt == "svg" else None
        fig.savefig(buf, format=fmt, metadata=meta)
    return buf.getvalue()


def position_svg(p: Position, move: Move | None = None) -> str:
    return figure_bytes(position_figure(p, move)).decode()


def solution_svg(sol: Solution, moves: Sequence[int] | None = None) -> str:
    return figure_bytes(solution_figure(sol, moves=moves)).decode()


def solution_text(sol: Solution) -> str:
    """Text snapshots: the start, then the position after each move."""
    positions = sol.replay()
    blocks = [f"{sol.problem}\n\nstart\n{positions[0].to_text()}"]
    for k, (mv, p) in enumerate(zip(sol.moves, positions[1:])):
        blocks.append(f"{k + 1}. {mv}\n{p.to_text()}")
    return "\n\n".join(blocks) + "\n"


def packing_text(pk: Packing, colour: bool = False) -> str:
    """The board with each hole marked by its region letter ('.' if in no
    region); ``colour`` adds ANSI backgrounds."""
    g = build_geometry(pk.n)
    mark = {}
    for k, r in enumerate(pk.regions):
        for h in r.holes:
            mark[h] = k
    lines = []
    for y in range(1, g.n + 1):
        cells = []
        for x in range(1, y + 1):
            i = g.index[Coord(x, y)]
            if i in mark:
                ch = chr(ord("A") + mark[i] % 26)
                if colour:
                    ch = f"\x1b[{41 + mark[i] % 6}m{ch}\x1b[0m"
            else:
                ch = "."
            cells.append(ch)
        lines.append(" " * (g.n - y) + " ".join(cells))
    return "\n".join(lines)
