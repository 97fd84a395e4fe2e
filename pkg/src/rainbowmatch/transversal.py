"""Partial transversals of Latin squares avoiding short cycles.

A partial transversal is read as a set of arcs on the vertices 1..n:
cell (r, c, s) is the arc r -> c carrying color s. Distinct rows,
columns and symbols mean out-degrees, in-degrees and colors are all
≤ 1, so the arcs split into simple paths and cycles. The builder
produces a transversal whose cycles all have length > k.

Construction: a greedy pass takes one cell per symbol, skipping any
that closes a cycle of length ≤ k. Then an expansion search tries to
grow the result. A1 holds the path-beginning vertices (unused
columns), B1 the path ends (unused rows). Each layer spends one fresh
symbol: its arcs into the current A-front either land on a B1 vertex
(an augmentation: rerouting along recorded parents yields a bigger
transversal) or mint new B vertices whose successors extend the
A-front. Arcs that would let some selection close a short cycle are
forbidden; the spent symbol is chosen to minimize that loss. When the
symbols run out without an augmentation, counting shows the result
already holds at least n - 6*n^((k-1)/k) cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import int_kth_root
from .errors import ColorsExhausted, InternalInvariantBroken, PreconditionViolated
from .latin import LatinSquare, PartialTransversal, cycles_of, validate_transversal


def theorem_bound(n: int, k: int) -> int:
    """max(0, ceil(n - 6*n^((k-1)/k))) in exact integer arithmetic."""
    return max(0, n - int_kth_root(6**k * n ** (k - 1), k))


def corollary_bound(n: int) -> int:
    """max(0, ceil((1 - 4*lnln(n)/ln(n)) * n)); 0 below n = 3."""
    if n <= 2:
        return 0
    ratio = 1.0 - 4.0 * math.log(math.log(n)) / math.log(n)
    return max(0, math.ceil(ratio * n))


def default_cycle_bound(n: int) -> int:
    """The cycle-length cutoff used by cycle_free_transversal."""
    if n <= 2:
        return 2
    return max(2, int(math.log(n) / (3.0 * math.log(math.log(n)))))


def _closes_short_cycle(out_map: dict, r: int, c: int, k: int) -> bool:
    """Would arc r -> c close a directed cycle of length ≤ k?"""
    cur = c
    length = 1
    while cur != r and cur in out_map and length <= k:
        cur = out_map[cur][0]
        length += 1
    return cur == r and length <= k


def _greedy_init(square: LatinSquare, k: int) -> list:
    """One cell per symbol, smallest usable row, no cycle of length ≤ k."""
    n = square.order
    out_map: dict = {}
    used_cols: set = set()
    cells = []
    for s in range(1, n + 1):
        for r in range(1, n + 1):
            if r in out_map:
                continue
            c = square.col_of(r, s)
            if c in used_cols or c == r:
                continue
            if _closes_short_cycle(out_map, r, c, k):
                continue
            out_map[r] = (c, s)
            used_cols.add(c)
            cells.append((r, c, s))
            break
    return sorted(cells)


@dataclass
class Expanded:
    grew: int


@dataclass
class AugmentationFound:
    edge: tuple  # (tail v in B1, head u in the A-front)
    color: int


@dataclass
class TransversalSearchState:
    square: LatinSquare = field(repr=False)
    k: int
    cells: list
    out_map: dict  # row -> (col, symbol) of the current transversal
    a_first: frozenset  # unused columns: path beginnings
    b_first: frozenset  # unused rows: path ends
    a_set: set
    b_set: set
    a_parent: dict = field(default_factory=dict)  # shifted head -> the B vertex behind it
    b_parent: dict = field(default_factory=dict)  # B vertex -> (head it shot at, color)
    arcs_out: dict = field(default_factory=dict)  # v -> [(head, color, from_initial)]
    remaining: list = field(default_factory=list)  # unspent symbols, ascending
    layer: int = 1
    layer_color: int | None = None
    reach: dict = field(default_factory=dict)
    narrow_reach: dict = field(default_factory=dict)


def _start_state(square: LatinSquare, k: int, cells: list) -> TransversalSearchState:
    n = square.order
    out_map = {r: (c, s) for r, c, s in cells}
    used_cols = {c for _, c, _ in cells}
    used_syms = {s for _, _, s in cells}
    arcs_out: dict = {}
    for r, c, s in cells:
        arcs_out.setdefault(r, []).append((c, s, True))
    a_first = frozenset(c for c in range(1, n + 1) if c not in used_cols)
    b_first = frozenset(r for r in range(1, n + 1) if r not in out_map)
    return TransversalSearchState(
        square=square,
        k=k,
        cells=list(cells),
        out_map=out_map,
        a_first=a_first,
        b_first=b_first,
        a_set=set(a_first),
        b_set=set(b_first),
        arcs_out=arcs_out,
        remaining=[s for s in range(1, n + 1) if s not in used_syms],
    )


def _collect_reach(arcs_out: dict, u: int, limit: int, narrow: bool) -> set:
    """Heads of rainbow vertex-simple paths out of u with ≤ limit arcs.

    narrow=True keeps only heads at distance ≥ 2 whose final arc
    belongs to the initial transversal."""
    found: set = set()
    if limit <= 0:
        return found
    on_path = {u}
    used_colors: set = set()

    def walk(vertex: int, depth: int) -> None:
        for head, color, initial in arcs_out.get(vertex, ()):
            if head in on_path or color in used_colors:
                continue
            if not narrow:
                found.add(head)
            elif depth + 1 >= 2 and initial:
                found.add(head)
            if depth + 1 < limit:
                on_path.add(head)
                used_colors.add(color)
                walk(head, depth + 1)
                on_path.discard(head)
                used_colors.discard(color)

    walk(u, 0)
    return found


def _reach_of(state: TransversalSearchState, u: int) -> set:
    got = state.reach.get(u)
    if got is None:
        got = _collect_reach(state.arcs_out, u, state.k - 1, narrow=False)
        state.reach[u] = got
    return got


def _narrow_reach_of(state: TransversalSearchState, u: int) -> set:
    got = state.narrow_reach.get(u)
    if got is None:
        got = _collect_reach(state.arcs_out, u, state.k - 1, narrow=True)
        state.narrow_reach[u] = got
    return got


def _is_forbidden(state: TransversalSearchState, v: int, u: int) -> bool:
    """Arc v -> u is forbidden when it could close a cycle of length ≤ k:
    a loop, or some rainbow path u ~> v of ≤ k-1 arcs already exists."""
    return v == u or v in _reach_of(state, u)


def forbidden_edges(state: TransversalSearchState, color: int, layer: int) -> set:
    """The forbidden color-colored arcs into the current A-front."""
    del layer
    out = set()
    for u in state.a_set:
        v = state.square.row_of(u, color)
        if _is_forbidden(state, v, u):
            out.add((v, u))
    return out


def choose_color(state: TransversalSearchState, layer: int) -> int:
    """Unspent symbol with the fewest forbidden arcs, ties to smallest."""
    if not state.remaining:
        raise ColorsExhausted(f"layer {layer}: no unspent symbols remain")
    front = sorted(state.a_set)
    best_color = None
    best_count = None
    for color in state.remaining:
        count = 0
        for u in front:
            if _is_forbidden(state, state.square.row_of(u, color), u):
                count += 1
        if best_count is None or count < best_count:
            best_color, best_count = color, count
    return best_color


def expand_layer(state: TransversalSearchState, layer: int):
    """Shoot the layer's color into the A-front.

    A non-forbidden arc whose tail is an original path end augments;
    otherwise fresh tails become B vertices and their successors join
    the A-front."""
    color = state.layer_color
    minted = []
    for u in sorted(state.a_set):
        v = state.square.row_of(u, color)
        if _is_forbidden(state, v, u):
            continue
        if v in state.b_first:
            return AugmentationFound(edge=(v, u), color=color)
        if v in state.b_set:
            continue
        minted.append((v, u))
    for v, u in minted:
        state.b_set.add(v)
        state.b_parent[v] = (u, color)
        state.arcs_out.setdefault(v, []).append((u, color, False))
        successor = state.out_map[v][0]
        state.a_parent[successor] = v
        state.a_set.add(successor)
    del layer
    return Expanded(grew=len(minted))


def apply_augmentation(state: TransversalSearchState, found: AugmentationFound) -> list:
    """Reroute along parent records and add the augmenting arc.

    Walking back from the hit vertex, every shifted A-front head hands
    its incoming transversal arc over to the layer arc that minted the
    B vertex behind it; the chain bottoms out at an unused column,
    where the augmenting arc finally lands."""
    v, target = found.edge
    rewired = {r: (c, s) for r, c, s in state.cells}
    u = target
    hops = 0
    while u not in state.a_first:
        b = state.a_parent.get(u)
        if b is None or rewired.get(b, (None,))[0] != u:
            raise InternalInvariantBroken(f"broken parent chain at vertex {u}")
        head, color = state.b_parent[b]
        rewired[b] = (head, color)
        u = head
        hops += 1
        if hops > state.square.order:
            raise InternalInvariantBroken("parent chain longer than the square's order")
    if v in rewired:
        raise InternalInvariantBroken(f"augmenting tail {v} already has an arc")
    rewired[v] = (target, found.color)
    result = sorted((r, c, s) for r, (c, s) in rewired.items())
    ok, why = validate_transversal(state.square, result, forbid_cycles_up_to=state.k)
    if not ok:
        raise InternalInvariantBroken(f"augmented transversal invalid: {why}")
    if len(result) != len(state.cells) + 1:
        raise InternalInvariantBroken("augmentation did not add exactly one cell")
    return result


def _check_color_law(state: TransversalSearchState, layer: int, n: int, t: int) -> None:
    """Pigeonhole law: some unspent symbol has few narrowly-forbidden
    arcs (counting only paths of 2..k-1 arcs ending in an initial arc)."""
    front = sorted(state.a_set)
    best = None
    for color in state.remaining:
        count = 0
        for u in front:
            if state.square.row_of(u, color) in _narrow_reach_of(state, u):
                count += 1
        if best is None or count < best:
            best = count
    if best is None:
        return
    if best * len(state.remaining) > state.k * layer ** (state.k - 1) * (n - t):
        raise InternalInvariantBroken(
            f"layer {layer}: every unspent symbol has too many forbidden arcs"
            f" (best {best} of {len(state.remaining)} symbols)"
        )


def _check_growth_law(state: TransversalSearchState, layer: int, n: int, t: int, grew: int) -> None:
    """Early layers must mint at least (n-t)/2 new B vertices."""
    if 4 * state.k * layer ** (state.k - 1) <= n - t:
        if 2 * grew < n - t:
            raise InternalInvariantBroken(
                f"layer {layer}: minted only {grew} vertices, expected at least (n-t)/2"
            )


def _expansion_round(square: LatinSquare, k: int, cells: list, check: bool):
    """One augmentation attempt. Returns the bigger cell list, or None
    when the symbols run out first."""
    n = square.order
    t = len(cells)
    if t >= n:
        return None
    state = _start_state(square, k, cells)
    for layer in range(2, n * n + n + 2):
        state.layer = layer
        state.reach = {}
        state.narrow_reach = {}
        try:
            color = choose_color(state, layer)
        except ColorsExhausted:
            return None
        if check:
            _check_color_law(state, layer, n, t)
        state.layer_color = color
        state.remaining.remove(color)
        outcome = expand_layer(state, layer)
        if isinstance(outcome, AugmentationFound):
            return apply_augmentation(state, outcome)
        if check:
            _check_growth_law(state, layer, n, t, outcome.grew)
    raise InternalInvariantBroken(f"expansion exceeded {n * n + n} layers")


def build_short_cycle_free_transversal(
    square: LatinSquare, k: int, *, check: bool = False, stats: dict | None = None
) -> PartialTransversal:
    """Partial transversal with no cycle of length ≤ k and at least
    theorem_bound(order, k) cells.

    check=True additionally verifies the layer counting laws on every
    expansion round; stats (a dict) receives size/bound/round counts.
    """
    if k < 2:
        raise PreconditionViolated(f"cycle bound must be at least 2, got {k}")
    n = square.order
    cells = _greedy_init(square, k)
    initial = len(cells)
    augmentations = 0
    while True:
        grown = _expansion_round(square, k, cells, check)
        if grown is None:
            break
        cells = grown
        augmentations += 1
    bound = theorem_bound(n, k)
    if len(cells) < bound:
        raise InternalInvariantBroken(
            f"finished with {len(cells)} cells, guarantee is {bound}"
        )
    ok, why = validate_transversal(square, cells, forbid_cycles_up_to=k)
    if not ok:
        raise InternalInvariantBroken(f"final transversal invalid: {why}")
    if stats is not None:
        stats.update(
            k=k,
            size=len(cells),
            bound=bound,
            initial=initial,
            augmentations=augmentations,
        )
    return PartialTransversal(tuple(cells))


def cycle_free_transversal(
    square: LatinSquare, *, check: bool = False, stats: dict | None = None
) -> PartialTransversal:
    """Partial transversal with no cycles at all.

    Builds a short-cycle-free transversal at the standard cutoff, then
    drops the smallest-row cell of each surviving (long) cycle."""
    n = square.order
    k = default_cycle_bound(n)
    inner: dict = {}
    base = build_short_cycle_free_transversal(square, k, check=check, stats=inner)
    cells = list(base)
    keep = set(cells)
    removed = 0
    for cycle in cycles_of(square, cells).cycles:
        keep.discard(cycle[0])  # cycles lead with their smallest row
        removed += 1
    result = sorted(keep)
    ok, why = validate_transversal(square, result, forbid_cycles_up_to=math.inf)
    if not ok:
        raise InternalInvariantBroken(f"cycle-free transversal invalid: {why}")
    if stats is not None:
        stats.update(inner)
        stats.update(
            cycles_removed=removed,
            short_cycle_free_size=len(cells),
            size=len(result),
            corollary=corollary_bound(n),
        )
    return PartialTransversal(tuple(result))
