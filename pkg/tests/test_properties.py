import random

from hypothesis import given, settings
from hypothesis import strategies as st

from trisolve.board import (
    Coord,
    Position,
    apply_move,
    build_geometry,
    canonicalize,
    enumerate_moves,
    parse_hex,
    parse_label,
    parse_text,
)
from trisolve.classes import class_signature
from trisolve.merson import dynamic_full_region_bound, max_packing

import oracles


@st.composite
def positions(draw, sizes=(3, 4, 5, 6, 8)):
    n = draw(st.sampled_from(sizes))
    g = build_geometry(n)
    return Position(g, draw(st.integers(0, g.full_mask)))


@st.composite
def coords(draw):
    n = draw(st.integers(1, 800))
    y = draw(st.integers(1, n))
    x = draw(st.integers(1, y))
    return n, Coord(x, y)


@given(coords())
def test_label_round_trip(nc):
    n, c = nc
    assert parse_label(c.label, n) == c


@given(positions())
def test_text_and_hex_round_trip(p):
    assert parse_hex(p.to_hex()) == p
    assert parse_text(p.to_text()) == p


@given(positions(), st.integers(0, 5))
def test_canonical_form_is_symmetry_invariant(p, s):
    assert canonicalize(p.symmetric(s))[0] == canonicalize(p)[0]


@given(positions())
def test_complement_is_involution(p):
    q = p.complement()
    assert q.complement() == p
    assert q.count + p.count == p.board.size


@given(positions(sizes=(4, 5, 6)), st.randoms(use_true_random=False))
def test_moves_remove_one_peg_per_hop(p, rnd):
    ms = enumerate_moves(p)
    if not ms:
        return
    m = rnd.choice(ms)
    q = apply_move(p, m)
    assert q.count == p.count - m.length
    assert class_signature(q) == class_signature(p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dynamic_bound_never_overestimates(seed):
    rng = random.Random(seed)
    g = build_geometry(5)
    pk = max_packing(g)
    p = Position.start(g, rng.randrange(g.size))
    for _ in range(rng.randrange(6)):
        ms = enumerate_moves(p)
        if not ms:
            break
        p = apply_move(p, rng.choice(ms))
    pegs = frozenset((c.x, c.y) for c in p.peg_coords())
    need = oracles.remaining_moves(5, pegs)
    if need is not None:
        assert dynamic_full_region_bound(p, pk) <= need
