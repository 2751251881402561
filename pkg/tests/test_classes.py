import random

import pytest

from trisolve.board import Position, apply_move, build_geometry, enumerate_moves
from trisolve.classes import class_signature, feasibility_matrix, feasible_pair, jump_span_basis
from trisolve.search import enumerate_problems

import oracles

RANKS = {3: 3, 4: 8, 5: 13, 6: 19, 7: 26, 8: 34, 9: 43, 10: 53}


@pytest.mark.parametrize("n", sorted(RANKS))
def test_rank_matches_numpy_elimination(n):
    span = jump_span_basis(build_geometry(n))
    assert span.rank == oracles.gf2_rank(n) == RANKS[n]
    assert span.class_count == 2 ** (build_geometry(n).size - span.rank)


@pytest.mark.parametrize("n", [4, 5, 8, 12])
def test_four_classes_from_four_up(n):
    assert jump_span_basis(build_geometry(n)).class_count == 4


@pytest.mark.parametrize("n", [5, 7])
def test_every_jump_reduces_to_zero(n):
    g = build_geometry(n)
    span = jump_span_basis(g)
    for o, m, d in g.jumps:
        assert span.reduce((1 << o) | (1 << m) | (1 << d)) == 0


def test_basis_is_reduced():
    span = jump_span_basis(build_geometry(6))
    for pivot, row in span.rows.items():
        assert (row & -row).bit_length() - 1 == pivot
        for other in span.rows:
            if other != pivot:
                assert not row >> other & 1


def test_a1_complement_feasible_on_t5():
    g = build_geometry(5)
    assert class_signature(Position.start(g, "a1")) == class_signature(Position.single(g, "a1"))
    assert feasible_pair(g, "a1", "a1")


@pytest.mark.parametrize("n", [4, 5, 6])
def test_signature_is_move_invariant(n):
    g = build_geometry(n)
    rng = random.Random(n)
    trials = 0
    while trials < 10_000 // 3:
        p = Position.start(g, rng.randrange(g.size))
        while True:
            ms = enumerate_moves(p)
            if not ms:
                break
            m = rng.choice(ms)
            q = apply_move(p, m)
            assert class_signature(q) == class_signature(p)
            trials += 1
            p = q


@pytest.mark.parametrize("n", [4, 5])
def test_feasibility_agrees_with_rank_oracle(n):
    g = build_geometry(n)
    hs = oracles.holes(n)
    feas = feasibility_matrix(g)
    for v in range(g.size):
        start = frozenset(h for h in hs if h != hs[v])
        for f in range(g.size):
            assert feas[v][f] == oracles.same_class(n, start, frozenset({hs[f]}))


@pytest.mark.parametrize("n", [5, 6])
def test_feasibility_symmetric(n):
    g = build_geometry(n)
    feas = feasibility_matrix(g)
    for s in g.symmetries:
        for v in range(g.size):
            for f in range(g.size):
                assert feas[v][f] == feas[s[v]][s[f]]


@pytest.mark.parametrize("n", [4, 5])
def test_reachable_implies_feasible(n):
    g = build_geometry(n)
    feas = feasibility_matrix(g)
    hs = oracles.holes(n)
    for v in range(g.size):
        for h in oracles.bfs_min_moves(n, hs[v]):
            assert feas[v][hs.index(h)]


def test_all_t6_problems_feasible():
    assert len(enumerate_problems(6)) == 29
