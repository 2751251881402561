import re

import pytest

from trisolve.board import Move, Position, build_geometry
from trisolve.merson import max_packing
from trisolve.render import (
    figure_bytes,
    histogram_figure,
    packing_text,
    position_svg,
    save_figure,
    solution_figure,
    solution_svg,
    solution_text,
)
from trisolve.search import Problem, min_move_distribution, min_move_solution
from trisolve.sweeps import maximal_pattern, solve_with_final_sweep, sweep_start_position


def _path_vertices(svg: str) -> int:
    block = svg[svg.index('id="move-path"'):]
    d = re.search(r'<path d="([^"]*)"', block).group(1)
    return len(re.findall(r"[ML] ", d))


def test_svg_is_byte_identical_across_calls():
    _, sol = min_move_solution(Problem.make(5, "a1", "a1"))
    assert solution_svg(sol) == solution_svg(sol)
    p = Position.start(build_geometry(6), "c5")
    assert position_svg(p) == position_svg(p)
    assert "<dc:date>" not in position_svg(p)


def test_nine_sweep_overlay_has_ten_vertices():
    sp = maximal_pattern(5)
    g6 = build_geometry(6)
    b = Position.from_holes(g6, [c.label for c in sp.jumped] + [sp.start.label])
    svg = position_svg(b, Move.parse(str(sp.circuit), g6))
    assert _path_vertices(svg) == 10


def test_sweep_solution_figure_overlays_last_move():
    rep = solve_with_final_sweep(Problem.make(6, "c5", "a1"), 9)
    svg = solution_svg(rep.solution, moves=[8])
    assert _path_vertices(svg) == 10


def test_board_circles_match_holes():
    sp = maximal_pattern(7)
    svg = position_svg(sweep_start_position(sp))
    assert svg.count("<text") >= sp.board.size


def test_save_figure_writes_svg(tmp_path):
    d = min_move_distribution(5)
    path = save_figure(histogram_figure([d]), tmp_path / "h.svg")
    first = path.read_bytes()
    save_figure(histogram_figure([d]), tmp_path / "h.svg")
    assert path.read_bytes() == first
    assert first.startswith(b"<?xml")


def test_figure_bytes_png():
    _, sol = min_move_solution(Problem.make(5, "a1", "a1"))
    assert figure_bytes(solution_figure(sol), "png").startswith(b"\x89PNG")


def test_solution_text_lists_moves():
    _, sol = min_move_solution(Problem.make(5, "a1", "a1"))
    text = solution_text(sol)
    for s in sol.move_strings():
        assert s in text


@pytest.mark.parametrize("colour", [False, True])
def test_packing_text(colour):
    pk = max_packing(build_geometry(6))
    text = packing_text(pk, colour=colour)
    assert len(text.strip().splitlines()) == 6
    assert ("\x1b[" in text) == colour
