"""Seeded instance generators."""

import pytest

from rainbowmatch import (
    InfeasibleParameters,
    build_square,
    cyclic_square,
    k4_factorization_pair,
    min_degree,
    random_proper_graph,
    random_square,
    split_seed,
    witness_square_4,
)


def test_split_seed_is_deterministic_and_spread():
    a = [split_seed(7, i) for i in range(50)]
    b = [split_seed(7, i) for i in range(50)]
    assert a == b
    assert len(set(a)) == 50
    assert split_seed(7, 0) != split_seed(8, 0)


def test_cyclic_square_is_latin():
    for n in (1, 2, 3, 7, 12):
        sq = cyclic_square(n)
        assert sq.order == n
        build_square(sq.rows)  # revalidates shape and the Latin property


def test_witness_square_4_layout():
    sq = witness_square_4()
    assert sq.rows == ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1))
    build_square(sq.rows)


def test_random_square_is_latin_and_seeded():
    for n in (1, 2, 4, 6, 9):
        sq = random_square(n, seed=11)
        assert sq.order == n
        build_square(sq.rows)
        assert random_square(n, seed=11).rows == sq.rows
    assert random_square(6, seed=1).rows != random_square(6, seed=2).rows


def test_random_square_departs_from_cyclic():
    hits = sum(
        random_square(7, seed=s).rows == cyclic_square(7).rows for s in range(10)
    )
    assert hits == 0


def test_random_proper_graph_hits_exact_min_degree():
    for n, target, seed in ((7, 2, 0), (12, 4, 3), (9, 3, 8), (20, 6, 5)):
        g = random_proper_graph(n, target, seed=seed)
        assert g.vertex_count == n
        assert min_degree(g) == target


def test_random_proper_graph_is_seeded():
    a = random_proper_graph(10, 3, seed=4)
    b = random_proper_graph(10, 3, seed=4)
    assert a.edges == b.edges
    c = random_proper_graph(10, 3, seed=5)
    assert a.edges != c.edges


def test_random_proper_graph_rejects_impossible_parameters():
    with pytest.raises(InfeasibleParameters):
        random_proper_graph(5, 5, seed=0)
    with pytest.raises(InfeasibleParameters):
        random_proper_graph(1, 0, seed=0)
    with pytest.raises(InfeasibleParameters):
        random_proper_graph(6, -1, seed=0)


def test_k4_factorization_pair_shape():
    g = k4_factorization_pair()
    assert g.vertex_count == 8
    assert len(g.edges) == 12
    assert min_degree(g) == 3
    assert len({c for _, _, c in g.edges}) == 6
    # two components of four vertices, each a properly 3-colored K4
    for v in range(1, 5):
        assert set(g.neighbors(v)) == {1, 2, 3, 4} - {v}
    for v in range(5, 9):
        assert set(g.neighbors(v)) == {5, 6, 7, 8} - {v}
