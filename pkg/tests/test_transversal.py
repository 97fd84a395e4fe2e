"""Short-cycle-free and fully cycle-free partial transversals."""

import math

import pytest

from rainbowmatch import (
    ColorsExhausted,
    PreconditionViolated,
    build_short_cycle_free_transversal,
    corollary_bound,
    cycle_free_transversal,
    cycles_of,
    cyclic_square,
    default_cycle_bound,
    random_square,
    split_seed,
    theorem_bound,
    validate_transversal,
    witness_square_4,
)
from rainbowmatch import transversal as tv


def test_theorem_bound_values():
    assert theorem_bound(49, 2) == 7
    assert theorem_bound(64, 2) == 16
    assert theorem_bound(100, 2) == 40
    assert theorem_bound(36, 2) == 0
    assert theorem_bound(216, 3) == 0
    assert theorem_bound(1, 2) == 0


def test_theorem_bound_is_monotone_in_order():
    for k in (2, 3):
        values = [theorem_bound(n, k) for n in range(1, 400)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(0 <= v < 400 for v in values)


def test_corollary_bound_values():
    assert corollary_bound(1) == 0
    assert corollary_bound(2) == 0
    assert corollary_bound(10) >= 0
    # the multiplier 1 - 4 ln ln n / ln n sits near 0.24 at n = 10^6
    assert 0.2 * 10**6 < corollary_bound(10**6) < 0.3 * 10**6


def test_default_cycle_bound_values():
    assert default_cycle_bound(1) == 2
    assert default_cycle_bound(2) == 2
    assert default_cycle_bound(3) == 3
    assert default_cycle_bound(4) == 2
    assert default_cycle_bound(100) == 2


def test_greedy_init_is_short_cycle_free():
    for n in (3, 5, 8):
        sq = random_square(n, seed=n)
        cells = tv._greedy_init(sq, 2)
        ok, why = validate_transversal(sq, cells, forbid_cycles_up_to=2)
        assert ok, why
        # one cell per symbol at most
        symbols = [s for _, _, s in cells]
        assert len(symbols) == len(set(symbols))


def test_rejects_cycle_bound_below_two():
    with pytest.raises(PreconditionViolated):
        build_short_cycle_free_transversal(cyclic_square(4), 1)


def test_small_orders_and_edge_cases():
    t = build_short_cycle_free_transversal(cyclic_square(1), 2)
    assert len(t) == 0  # the only cell of order 1 is a loop
    t = build_short_cycle_free_transversal(cyclic_square(2), 2)
    assert len(t) <= 1


def test_meets_bound_and_validates_across_orders():
    for n in (9, 16, 25):
        for trial in range(3):
            sq = random_square(n, seed=split_seed(31, n + trial))
            t = build_short_cycle_free_transversal(sq, 2, check=True)
            ok, why = validate_transversal(sq, t, forbid_cycles_up_to=2)
            assert ok, why
            assert len(t) >= theorem_bound(n, 2)


def test_respects_larger_cycle_bound():
    sq = random_square(12, seed=8)
    t = build_short_cycle_free_transversal(sq, 3, check=True)
    ok, why = validate_transversal(sq, t, forbid_cycles_up_to=3)
    assert ok, why


def test_output_is_deterministic():
    sq = random_square(10, seed=2)
    a = build_short_cycle_free_transversal(sq, 2)
    b = build_short_cycle_free_transversal(sq, 2)
    assert a == b


def test_stats_from_an_augmenting_run():
    sq = random_square(6, seed=4)
    stats = {}
    t = build_short_cycle_free_transversal(sq, 2, check=True, stats=stats)
    assert stats["augmentations"] == 2
    assert stats["initial"] == 4
    assert stats["size"] == len(t) == 6
    assert stats["bound"] == theorem_bound(6, 2)
    assert stats["k"] == 2


def test_expansion_layer_protocol():
    # greedy stalls at two cells; the first layer spends the cheaper
    # symbol and doubles the reachable front, the second finds nothing,
    # then the symbols run out
    sq = random_square(4, seed=4)
    cells = tv._greedy_init(sq, 2)
    assert sorted(cells) == [(1, 4, 1), (3, 2, 2)]
    state = tv._start_state(sq, 2, cells)
    assert sorted(state.a_first) == [1, 3]
    assert sorted(state.b_first) == [2, 4]
    assert sorted(state.remaining) == [3, 4]
    assert tv.choose_color(state, 2) == 3
    assert tv.forbidden_edges(state, 4, 2) == {(2, 3), (4, 1)}

    outcomes = []
    for layer, color in ((2, 3), (3, 4)):
        state.layer = layer
        state.reach = {}
        state.narrow_reach = {}
        state.layer_color = color
        state.remaining.remove(color)
        outcomes.append(tv.expand_layer(state, layer))
    assert [o.grew for o in outcomes] == [2, 0]
    assert sorted(state.a_set) == [1, 2, 3, 4]
    with pytest.raises(ColorsExhausted):
        tv.choose_color(state, 4)


def test_cycle_free_output_has_no_cycles_at_all():
    for n in (1, 2, 5, 8, 13, 20):
        sq = random_square(n, seed=split_seed(77, n))
        t = cycle_free_transversal(sq)
        ok, why = validate_transversal(sq, t, forbid_cycles_up_to=math.inf)
        assert ok, why
        dec = cycles_of(sq, list(t))
        assert dec.cycles == ()


def test_cycle_free_stats_shape():
    sq = cyclic_square(9)
    stats = {}
    t = cycle_free_transversal(sq, check=True, stats=stats)
    assert stats["size"] == len(t)
    assert stats["cycles_removed"] >= 0
    assert stats["short_cycle_free_size"] - stats["cycles_removed"] == len(t)
    assert stats["k"] == default_cycle_bound(9)
    assert "corollary" in stats
    assert stats["initial"] <= stats["short_cycle_free_size"]


def test_cycle_free_on_the_witness_square():
    t = cycle_free_transversal(witness_square_4())
    assert len(t) == 2  # no cycle-free set of 3 or 4 cells exists here
