"""Seeded instance generators.

Every generator is deterministic in its seed and uses randrange only,
so byte-identical output does not depend on the interpreter's float or
shuffle details.
"""

from __future__ import annotations

import random

from .errors import InfeasibleParameters
from .graphs import ColoredGraph, build_graph
from .latin import LatinSquare, build_square

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def split_seed(master: int, index: int) -> int:
    """Derive an independent 64-bit stream seed from a master seed."""
    x = (master ^ (index * _GOLDEN)) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _shuffled(rng: random.Random, items: list) -> list:
    """Fisher-Yates with randrange; random.shuffle is not pinned across versions."""
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def cyclic_square(n: int) -> LatinSquare:
    """Addition table of Z_n, symbols 1..n."""
    if n < 0:
        raise InfeasibleParameters("order must be non-negative")
    return build_square(
        [[(r + c) % n + 1 for c in range(n)] for r in range(n)]
    )


def witness_square_4() -> LatinSquare:
    """Order-4 square with no full transversal (Klein-group table)."""
    return build_square([(1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)])


def k4_factorization_pair() -> ColoredGraph:
    """Two disjoint K4's, each split into three perfect matchings.

    Minimum degree 3 on 8 vertices, yet any two disjoint edges inside
    one K4 share a color, so no rainbow matching exceeds size 2.
    """
    edges = [
        (1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (1, 4, 3), (2, 3, 3),
        (5, 6, 4), (7, 8, 4), (5, 7, 5), (6, 8, 5), (5, 8, 6), (6, 7, 6),
    ]
    return build_graph(8, edges)


class _SquareWalk:
    """Mutable state for the random-square walk.

    Either proper, or improper with a single flawed cell (r0, c0) that
    carries two positive symbols (grid[r0][c0] and extra) and one
    negative symbol neg. While improper, neg's position in row r0 /
    column c0 is ambiguous and tracked by neg_cols / neg_rows instead of
    the position tables.
    """

    def __init__(self, square: LatinSquare):
        n = square.order
        self.n = n
        self.grid = [[0] * (n + 1)] + [
            [0] + list(row) for row in square.rows
        ]
        self.col_of = [[0] * (n + 1) for _ in range(n + 1)]
        self.row_of = [[0] * (n + 1) for _ in range(n + 1)]
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                s = self.grid[r][c]
                self.col_of[r][s] = c
                self.row_of[c][s] = r
        self.flaw: tuple | None = None  # (r0, c0, neg, extra, neg_cols, neg_rows)

    def proper_step(self, rng: random.Random) -> None:
        n, grid, col_of, row_of = self.n, self.grid, self.col_of, self.row_of
        cell = rng.randrange(n * n)
        r, c = cell // n + 1, cell % n + 1
        old = grid[r][c]
        s = 1 + rng.randrange(n - 1)
        if s >= old:
            s += 1
        c2 = col_of[r][s]
        r2 = row_of[c][s]
        grid[r][c] = s
        grid[r][c2] = old
        grid[r2][c] = old
        col_of[r][s] = c
        col_of[r][old] = c2
        row_of[c][s] = r
        row_of[c][old] = r2
        row_of[c2][s] = r2
        if grid[r2][c2] == old:
            grid[r2][c2] = s
            col_of[r2][s] = c2
            col_of[r2][old] = c
            row_of[c2][old] = r
        else:
            # cell (r2, c2) gains s, loses old: improper
            self.flaw = (
                r2, c2, old, s,
                (c, col_of[r2][old]),
                (r, row_of[c2][old]),
            )
            col_of[r2][s] = c2

    def improper_step(self, rng: random.Random) -> None:
        grid, col_of, row_of = self.grid, self.col_of, self.row_of
        r0, c0, neg, extra, neg_cols, neg_rows = self.flaw
        c1 = neg_cols[rng.randrange(2)]
        r1 = neg_rows[rng.randrange(2)]
        pos = (grid[r0][c0], extra)
        s1 = pos[rng.randrange(2)]
        other = pos[1] if s1 == pos[0] else pos[0]
        grid[r0][c0] = other
        grid[r0][c1] = s1
        grid[r1][c0] = s1
        col_of[r0][s1] = c1
        row_of[c0][s1] = r1
        col_of[r0][neg] = neg_cols[0] if neg_cols[1] == c1 else neg_cols[1]
        row_of[c0][neg] = neg_rows[0] if neg_rows[1] == r1 else neg_rows[1]
        col_of[r1][neg] = c1
        row_of[c1][neg] = r1
        if grid[r1][c1] == s1:
            grid[r1][c1] = neg
            col_of[r1][s1] = c0
            row_of[c1][s1] = r0
            self.flaw = None
        else:
            self.flaw = (
                r1, c1, s1, neg,
                (c0, col_of[r1][s1]),
                (r0, row_of[c1][s1]),
            )

    def to_square(self) -> LatinSquare:
        return build_square([row[1:] for row in self.grid[1:]])


def random_square(n: int, seed: int) -> LatinSquare:
    """Uniformly-flavored random Latin square of order n.

    Runs n**3 symbol-exchange moves from the cyclic square, then keeps
    moving until the state is proper again.
    """
    if n < 0:
        raise InfeasibleParameters("order must be non-negative")
    if n <= 1:
        return cyclic_square(n)
    rng = random.Random(seed)
    walk = _SquareWalk(cyclic_square(n))
    for _ in range(n * n * n):
        if walk.flaw is None:
            walk.proper_step(rng)
        else:
            walk.improper_step(rng)
    while walk.flaw is not None:
        walk.improper_step(rng)
    return walk.to_square()


def random_proper_graph(n: int, target: int, seed: int) -> ColoredGraph:
    """Random properly edge-colored graph with minimum degree exactly target.

    Overlays random pairings one edge at a time and stops the moment no
    vertex is short of target, so the minimum cannot overshoot. Edges
    then receive the smallest color free at both endpoints, in a
    shuffled order.
    """
    if n < 2:
        raise InfeasibleParameters(f"need at least 2 vertices, got {n}")
    if target < 0 or target >= n:
        raise InfeasibleParameters(f"degree {target} impossible on {n} vertices")
    rng = random.Random(seed)
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    deficient = {v for v in adj if target > 0}
    edges: list[tuple[int, int]] = []

    def add(u: int, v: int) -> None:
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v) if u < v else (v, u))
        for x in (u, v):
            if len(adj[x]) >= target:
                deficient.discard(x)

    rounds = 8 * (target + 1) + 32
    for _ in range(rounds):
        if not deficient:
            break
        order = _shuffled(rng, list(range(1, n + 1)))
        for i in range(0, n - 1, 2):
            u, v = order[i], order[i + 1]
            if v in adj[u]:
                continue
            if u not in deficient and v not in deficient:
                continue
            add(u, v)
            if not deficient:
                break
    while deficient:
        v = min(deficient)
        candidates = [w for w in range(1, n + 1) if w != v and w not in adj[v]]
        pick = min((w for w in candidates if w in deficient), default=None)
        if pick is None:
            pick = candidates[0]
        add(v, pick)

    colored: list[tuple[int, int, int]] = []
    used: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v in _shuffled(rng, sorted(edges)):
        c = 1
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        colored.append((u, v, c))
    return build_graph(n, colored)
