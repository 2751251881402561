import pytest

from trisolve.board import Position, build_geometry
from trisolve.merson import (
    best_lower_bound,
    candidate_regions,
    density_ratio,
    dynamic_full_region_bound,
    is_merson,
    lower_bound,
    max_packing,
)

import oracles

PACKING_R = {3: 3, 4: 6, 5: 6, 6: 9, 7: 10, 8: 13, 9: 13, 10: 18, 11: 18, 12: 22}


@pytest.mark.parametrize("n", range(3, 13))
def test_candidates_pass_containment(n):
    g = build_geometry(n)
    for r in candidate_regions(g):
        for o, m, d in g.jumps:
            assert not (m in r.holes and o not in r.holes and d not in r.holes)


@pytest.mark.parametrize("n", range(3, 10))
def test_candidates_match_oracle(n):
    g = build_geometry(n)
    ours = sorted(sorted((g.holes[h].x, g.holes[h].y) for h in r.holes) for r in candidate_regions(g))
    ref = sorted(sorted(r) for r in oracles.merson_regions(n))
    assert ours == ref


def test_hexagon_counts():
    for n in range(3, 11):
        g = build_geometry(n)
        hexes = [r for r in candidate_regions(g) if r.kind == "hexagon"]
        assert len(hexes) == oracles.hexagon_count(n)
    assert oracles.hexagon_count(6) == 6


def test_corners_always_qualify():
    g = build_geometry(7)
    for c in g.corners:
        assert is_merson(g, [c])


def test_non_region_rejected():
    g = build_geometry(6)
    # an interior pair is jumped over from outside
    assert not is_merson(g, [g.hole("b3"), g.hole("b4")])


@pytest.mark.parametrize("n", range(3, 11))
def test_packing_is_optimal(n):
    pk = max_packing(build_geometry(n))
    assert pk.R == PACKING_R[n] == oracles.milp_packing(n)


@pytest.mark.parametrize("n", [6, 8, 11, 12])
def test_packing_disjoint_and_dense(n):
    g = build_geometry(n)
    pk = max_packing(g)
    seen = set()
    for r in pk.regions:
        assert not seen & set(r.holes)
        seen |= set(r.holes)
    assert seen | pk.uncovered == set(range(g.size))
    assert pk.R == PACKING_R[n]
    assert pk.R >= g.size // 7
    assert density_ratio(pk) == pytest.approx(g.size / pk.R)


def test_paper_bounds():
    g6 = build_geometry(6)
    assert lower_bound(g6, "c5") == 9
    assert lower_bound(g6, "a1") == 9
    g8 = build_geometry(8)
    assert lower_bound(g8, "a7") == 12
    assert best_lower_bound(g8, "a7") == 12


def test_dynamic_bound_basics():
    g = build_geometry(6)
    pk = max_packing(g)
    start = Position.start(g, "c5")
    assert dynamic_full_region_bound(start, pk) == pk.R
    assert dynamic_full_region_bound(start, pk, target="a1") == pk.R
    assert dynamic_full_region_bound(Position.single(g, "b4"), pk) == 0
    assert dynamic_full_region_bound(Position.single(g, "a1"), pk) == 0


def test_dynamic_bound_counts_full_corners():
    g = build_geometry(5)
    pk = max_packing(g)
    # the a1 peg cannot be jumped and cannot survive unmoved, so one move
    p = Position.from_holes(g, ["a1", "b2"])
    assert dynamic_full_region_bound(p, pk) == 1
    assert oracles.remaining_moves(5, frozenset({(1, 1), (2, 2)})) == 1
    p = Position.from_holes(g, ["a1", "a2"])
    assert dynamic_full_region_bound(p, pk, target="a3") == 1
    assert oracles.remaining_moves(5, frozenset({(1, 1), (1, 2)}), finish=(1, 3)) == 1


def test_dynamic_bound_skips_moving_peg():
    g = build_geometry(5)
    pk = max_packing(g)
    p = Position.from_holes(g, ["a1", "a2"])
    assert dynamic_full_region_bound(p, pk, moving="a1") == 0
