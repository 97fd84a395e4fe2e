"""Exact integer root used by every guarantee threshold."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowmatch import RainbowError, int_kth_root
from rainbowmatch.errors import (
    BadShape,
    BudgetExceeded,
    ColorsExhausted,
    DuplicateEdge,
    ImproperColoring,
    InfeasibleParameters,
    InternalInvariantBroken,
    NotLatin,
    PreconditionViolated,
    SelfLoop,
)


def test_small_values():
    assert int_kth_root(0, 3) == 0
    assert int_kth_root(1, 3) == 1
    assert int_kth_root(7, 3) == 1
    assert int_kth_root(8, 3) == 2
    assert int_kth_root(26, 3) == 2
    assert int_kth_root(27, 3) == 3
    assert int_kth_root(36, 2) == 6
    assert int_kth_root(35, 2) == 5


def test_first_power_is_identity():
    for x in (0, 1, 2, 17, 10**9):
        assert int_kth_root(x, 1) == x


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        int_kth_root(-1, 2)
    with pytest.raises(ValueError):
        int_kth_root(4, 0)


def test_huge_values_stay_exact():
    # beyond float precision: (10**6)**3 and its neighbors
    x = 10**18
    assert int_kth_root(x, 3) == 10**6
    assert int_kth_root(x - 1, 3) == 10**6 - 1
    assert int_kth_root(x + 1, 3) == 10**6


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**24), st.integers(min_value=1, max_value=7))
def test_floor_root_identity(x, k):
    r = int_kth_root(x, k)
    assert r >= 0
    assert r**k <= x
    assert (r + 1) ** k > x


def test_every_package_error_shares_the_base_class():
    errors = [
        BadShape, BudgetExceeded, ColorsExhausted, DuplicateEdge,
        ImproperColoring, InfeasibleParameters, InternalInvariantBroken,
        NotLatin, PreconditionViolated, SelfLoop,
    ]
    for err in errors:
        assert issubclass(err, RainbowError)
