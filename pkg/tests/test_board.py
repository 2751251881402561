import pytest

from trisolve.board import (
    BoardError,
    Coord,
    IllegalMoveError,
    Move,
    Position,
    apply_move,
    build_geometry,
    canonicalize,
    complement,
    enumerate_moves,
    legal_jumps,
    parse_hex,
    parse_label,
    parse_position,
    parse_text,
    triangular,
    vertically_below,
)
from trisolve.sweeps import maximal_pattern, sweep_start_position

import oracles


@pytest.mark.parametrize("n,size", [(2, 3), (5, 15), (12, 78), (24, 300)])
def test_hole_count(n, size):
    g = build_geometry(n)
    assert g.size == size == triangular(n)


def test_small_board_rejected():
    with pytest.raises(BoardError):
        build_geometry(1)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_jump_table_matches_oracle(n):
    g = build_geometry(n)
    ours = {(g.holes[o].x, g.holes[o].y, g.holes[m].x, g.holes[m].y, g.holes[d].x, g.holes[d].y)
            for o, m, d in g.jumps}
    ref = {(o[0], o[1], m[0], m[1], d[0], d[1]) for o, m, d in oracles.jumps(n)}
    assert ours == ref
    assert len(g.jumps) == len(set(g.jumps))


def test_jump_counts():
    assert len(build_geometry(5).jumps) == 36
    assert len(build_geometry(8).jumps) == 126


@pytest.mark.parametrize("n", [4, 6, 9])
def test_at_most_six_jumps_into_a_hole(n):
    g = build_geometry(n)
    into = [0] * g.size
    for _, _, d in g.jumps:
        into[d] += 1
    # a hole two steps from every edge first appears on Triangle(7)
    assert max(into) == 6 if n >= 7 else max(into) < 6


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_symmetry_group(n):
    g = build_geometry(n)
    ident, r1, r2 = g.symmetries[0], g.symmetries[1], g.symmetries[2]
    assert list(ident) == list(range(g.size))
    # rotation has order 3
    cube = [r1[r1[r1[i]]] for i in range(g.size)]
    assert cube == list(range(g.size))
    assert [r1[r1[i]] for i in range(g.size)] == list(r2)
    for s in g.symmetries:
        assert sorted(s) == list(range(g.size))
        jumps = set(g.jumps)
        assert {(s[o], s[m], s[d]) for o, m, d in g.jumps} == jumps
    for s in g.symmetries[3:]:
        assert [s[s[i]] for i in range(g.size)] == list(range(g.size))


@pytest.mark.parametrize("text,n,xy", [("a1", 5, (1, 1)), ("c5", 6, (3, 5)), ("k23", 24, (11, 23)),
                                        ("E5", 5, (5, 5))])
def test_parse_label(text, n, xy):
    c = parse_label(text, n)
    assert (c.x, c.y) == xy
    assert parse_label(c.label, n) == c


@pytest.mark.parametrize("text,needle", [("c2", "exceeds row"), ("a9", "outside"), ("5c", "malformed"),
                                         ("", "malformed")])
def test_parse_label_errors(text, needle):
    with pytest.raises(BoardError, match=needle):
        parse_label(text, 5)


def test_long_column_labels_round_trip():
    g = build_geometry(60)
    for i in (0, 500, g.size - 1):
        assert parse_label(g.label(i), 60) == g.holes[i]
    assert Coord(27, 30).label == "aa30"


def test_vertical_alignment_reaches_k23():
    c = Coord(1, 3)
    for _ in range(10):
        c = vertically_below(c)
    assert c.label == "k23"


def test_legal_jumps_into_apex():
    g = build_geometry(5)
    p = Position.start(g, "a1")
    got = {(o.label, m.label, d.label) for o, m, d in legal_jumps(p)}
    assert got == {("a3", "a2", "a1"), ("c3", "b2", "a1")}
    assert legal_jumps(Position.full(g)) == []


def test_complement_of_maximal_sweep_start_is_dead():
    sp = maximal_pattern(5)
    assert legal_jumps(sweep_start_position(sp).complement()) == []


def test_apply_single_jump():
    g = build_geometry(5)
    p = apply_move(Position.start(g, "a1"), Move.parse("a3-a1", g))
    assert p.has_peg("a1") and not p.has_peg("a2") and not p.has_peg("a3")
    assert p.count == 13


def test_apply_move_reports_hop():
    g = build_geometry(5)
    p = Position.start(g, "a1")
    with pytest.raises(IllegalMoveError) as err:
        apply_move(p, Move.parse("a3-a1-c3", g))
    assert err.value.hop == 1


def test_move_rejects_recapture():
    g = build_geometry(5)
    with pytest.raises(BoardError):
        Move.parse("a1-a3-a1", g)


def test_enumerate_moves_start():
    g = build_geometry(5)
    ms = enumerate_moves(Position.start(g, "a1"))
    assert sorted(str(m) for m in ms) == ["a3-a1", "c3-a1"]
    assert enumerate_moves(Position.empty(g)) == []


def test_enumerate_moves_includes_the_nine_sweep():
    sp = maximal_pattern(5)
    g6 = build_geometry(6)
    b = Position.from_holes(g6, [c.label for c in sp.jumped] + [sp.start.label])
    lengths = {m.length for m in enumerate_moves(b)}
    assert 9 in lengths


def test_enumerate_moves_matches_oracle():
    g = build_geometry(5)
    p = Position.start(g, "c5")
    p = apply_move(p, Move.parse("c3-c5", g))
    p = apply_move(p, Move.parse("a1-c3", g))
    ours = sorted(str(m) for m in enumerate_moves(p))
    pegs = frozenset((c.x, c.y) for c in p.peg_coords())
    ref = sorted("-".join(oracles.label(c) for c in path) for _, path in oracles.moves(5, pegs))
    assert ours == ref
    assert len(ours) == len(set(ours))


def test_complement_basics():
    g = build_geometry(6)
    assert complement(Position.full(g)) == Position.empty(g)
    p = Position.single(g, "c5")
    assert complement(p).count == g.size - 1
    assert complement(complement(p)) == p


def test_orbits():
    g = build_geometry(5)
    assert {g.label(i) for i in g.orbit(g.hole("a1"))} == {"a1", "a5", "e5"}
    assert {g.label(i) for i in g.orbit(g.hole("b3"))} == {"b3", "b4", "c4"}


def test_canonicalize_idempotent():
    g = build_geometry(6)
    p = Position.from_holes(g, ["c5", "d6", "a2", "b4"])
    c, s = canonicalize(p)
    assert p.symmetric(s) == c
    assert canonicalize(c)[0] == c
    assert all(c.bits <= p.symmetric(k).bits for k in range(6))


def test_text_and_hex_round_trip():
    g = build_geometry(5)
    p = Position.start(g, "c5")
    assert parse_text(p.to_text()) == p
    assert parse_text(p.to_text(centered=False)) == p
    assert parse_hex(p.to_hex()) == p
    assert parse_position(p.to_hex()) == p
    ascii_art = p.to_text().replace("•", "x").replace("·", "o")
    assert parse_position(ascii_art) == p


def test_parse_text_reports_line():
    with pytest.raises(BoardError, match="line 2"):
        parse_text("•\n• • •\n")
