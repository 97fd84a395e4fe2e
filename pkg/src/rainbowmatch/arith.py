"""Exact integer helpers for threshold arithmetic.

Guarantee bounds in this package are stated over real-valued powers
(cube roots, k-th roots). Comparing them through floats invites
boundary flakiness, so every such comparison is routed through exact
integer k-th roots instead.
"""


def int_kth_root(x: int, k: int) -> int:
    """Largest integer r with r**k <= x. Requires x >= 0, k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0:
        return 0
    # float seed, then exact correction in both directions
    r = int(round(x ** (1.0 / k)))
    if r < 1:
        r = 1
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r
