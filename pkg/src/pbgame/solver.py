"""Exact minimax solver for tiny boards.

Positions are stored as a colour tuple plus one adjacency bitmask per
vertex and memoized under a canonical form that is invariant under colour
permutations and vertex relabellings.  ``brute_force_winner`` is a plain
exhaustive search without memo or symmetry, kept as an independent oracle.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from functools import lru_cache

from .core import GameConfig, Status
from .errors import CapExceededError

DEFAULT_CAP_UNBIASED = 6
DEFAULT_CAP_BIASED = 5
BRUTE_FORCE_CAP = 4


@dataclass(frozen=True)
class SolveResult:
    config: GameConfig
    winner: Status
    positions: int


def _cap_for(config: GameConfig) -> int:
    return DEFAULT_CAP_UNBIASED if config.unbiased else DEFAULT_CAP_BIASED


# -- canonical form ----------------------------------------------------------

def _distinct_permutations(items: list) -> list[tuple]:
    """All orderings of a multiset, each listed once (lexicographic)."""
    items = sorted(items)
    out = [tuple(items)]
    a = items[:]
    n = len(a)
    while True:
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return out
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])
        out.append(tuple(a))


def _cell_orders(cell: list[int], colours, adj) -> list[list[int]]:
    """Orderings of one refinement cell up to swapping twins.

    Twins (same colour, same neighbourhood apart from each other) are
    interchangeable, so only distinct arrangements of twin groups matter.
    """
    groups: list[list[int]] = []
    for v in cell:
        for g in groups:
            u = g[0]
            if colours[u] == colours[v] and (adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)):
                g.append(v)
                break
        else:
            groups.append([v])
    if len(groups) == 1:
        return [cell]
    labels = [i for i, g in enumerate(groups) for _ in g]
    orders = []
    for perm in _distinct_permutations(labels):
        pos = [0] * len(groups)
        order = []
        for gi in perm:
            order.append(groups[gi][pos[gi]])
            pos[gi] += 1
        orders.append(order)
    return orders


def _refine(colours, adj, n: int) -> list[list[int]]:
    """Ordered partition of the vertices by colour-blind invariants."""
    class_size = {}
    for c in colours:
        if c:
            class_size[c] = class_size.get(c, 0) + 1
    inv = []
    for v in range(n):
        c = colours[v]
        inv.append((1 if c else 0, class_size.get(c, 0), bin(adj[v]).count("1")))
    for _ in range(n):
        new = []
        for v in range(n):
            nbrs = sorted(inv[u] for u in range(n) if adj[v] >> u & 1)
            same = sorted(inv[u] for u in range(n) if u != v and colours[v] and colours[u] == colours[v])
            new.append((inv[v], tuple(nbrs), tuple(same)))
        # compress to small integers, keeping the order of the old invariants
        ranks = {x: i for i, x in enumerate(sorted(set(new)))}
        new = [ranks[x] for x in new]
        if len(set(new)) == len(set(inv)):
            inv = new
            break
        inv = new
    cells: dict = {}
    for v in range(n):
        cells.setdefault(inv[v], []).append(v)
    return [cells[key] for key in sorted(cells)]


def _encode(order: list[int], colours, adj) -> tuple[tuple[int, ...], int]:
    relabel: dict[int, int] = {}
    cs = []
    for v in order:
        c = colours[v]
        if c and c not in relabel:
            relabel[c] = len(relabel) + 1
        cs.append(relabel.get(c, 0))
    bits = 0
    n = len(order)
    for i, v in enumerate(order):
        row = adj[v]
        for j in range(i + 1, n):
            if row >> order[j] & 1:
                bits |= 1 << (i * n + j)
    return tuple(cs), bits


def canonical_form(colours: tuple[int, ...], adj: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Canonical (colours, edge bits) of a position on vertices ``0..n-1``.

    Colours are relabelled by first appearance and vertices are ordered to
    minimize the encoding among orderings compatible with the refinement.
    """
    n = len(colours)
    cells = _refine(colours, adj, n)
    best = None
    for combo in itertools.product(*(_cell_orders(c, colours, adj) for c in cells)):
        order = [v for part in combo for v in part]
        code = _encode(order, colours, adj)
        if best is None or code < best:
            best = code
    return best


def decode(code: tuple[tuple[int, ...], int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Inverse of the encoding: a representative position of the class."""
    cs, bits = code
    n = len(cs)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if bits >> (i * n + j) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return tuple(cs), tuple(adj)


# -- game rules on bitmask positions ----------------------------------------

def _neighbour_colours(colours, adj, v) -> set[int]:
    row = adj[v]
    return {colours[u] for u in range(len(colours)) if row >> u & 1 and colours[u]}


def _outcome(colours, adj, k: int) -> Status:
    if all(colours):
        return Status.PAINTER_WIN
    for v, c in enumerate(colours):
        if not c and len(_neighbour_colours(colours, adj, v)) == k:
            return Status.BUILDER_WIN
    return Status.ONGOING


def _legal_pairs(colours, adj) -> list[tuple[int, int]]:
    n = len(colours)
    return [(u, v) for u in range(n) for v in range(u + 1, n)
            if not adj[u] >> v & 1 and not (colours[u] and colours[u] == colours[v])]


def _paint_moves(colours, adj, k: int):
    for v, c in enumerate(colours):
        if c:
            continue
        used = _neighbour_colours(colours, adj, v)
        # colours not yet on the board are interchangeable; try one of them
        fresh_done = False
        on_board = set(colours)
        for col in range(1, k + 1):
            if col in used:
                continue
            if col not in on_board:
                if fresh_done:
                    continue
                fresh_done = True
            yield v, col


class _Solver:
    def __init__(self, config: GameConfig):
        self.config = config
        self.memo: dict = {}

    def painter_wins(self, colours, adj, painter_to_move: bool, paints_left: int) -> bool:
        status = _outcome(colours, adj, self.config.k)
        if status is not Status.ONGOING:
            return status is Status.PAINTER_WIN
        key = (canonical_form(colours, adj), painter_to_move, paints_left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if painter_to_move:
            result = self._painter_turn(colours, adj, paints_left)
        else:
            result = self._builder_turn(colours, adj)
        self.memo[key] = result
        return result

    def _painter_turn(self, colours, adj, paints_left) -> bool:
        seen = set()
        for v, col in _paint_moves(colours, adj, self.config.k):
            child = colours[:v] + (col,) + colours[v + 1:]
            left = paints_left - 1
            more = left > 0 and not all(child)
            ck = (canonical_form(child, adj), more)
            if ck in seen:
                continue
            seen.add(ck)
            if self.painter_wins(child, adj, more, left if more else self.config.p):
                return True
        return False

    def _builder_turn(self, colours, adj) -> bool:
        pairs = _legal_pairs(colours, adj)
        p = self.config.p
        if not pairs:
            return self.painter_wins(colours, adj, True, p)
        size = min(self.config.b, len(pairs))
        seen = set()
        for chosen in itertools.combinations(pairs, size):
            new = list(adj)
            for u, v in chosen:
                new[u] |= 1 << v
                new[v] |= 1 << u
            new = tuple(new)
            ck = canonical_form(colours, new)
            if ck in seen:
                continue
            seen.add(ck)
            if not self.painter_wins(colours, new, True, p):
                return False
        return True


def solve_game(config: GameConfig, cap: int | None = None) -> SolveResult:
    """Winner of ``config`` under optimal play by both sides."""
    cap = _cap_for(config) if cap is None else cap
    if config.n > cap:
        raise CapExceededError(f"n={config.n} exceeds the solver cap {cap}")
    solver = _Solver(config)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        wins = solver.painter_wins((0,) * config.n, (0,) * config.n, True, config.p)
    finally:
        sys.setrecursionlimit(limit)
    winner = Status.PAINTER_WIN if wins else Status.BUILDER_WIN
    return SolveResult(config, winner, len(solver.memo))


@lru_cache(maxsize=None)
def _winner_cached(n: int, k: int, p: int, b: int, cap: int | None) -> Status:
    return solve_game(GameConfig(n, k, p, b), cap).winner


def k_min_exact(n: int, p: int = 1, b: int = 1, cap: int | None = None) -> int:
    """Smallest palette with which Painter wins; a larger palette never hurts her."""
    for k in range(1, n + 1):
        if _winner_cached(n, k, p, b, cap) is Status.PAINTER_WIN:
            return k
    # unreachable: with n colours every vertex can get its own colour
    raise AssertionError(f"no winning palette found for n={n}")


def solve_table(max_n: int, max_k: int, p: int = 1, b: int = 1, cap: int | None = None):
    """Rows ``(n, p, b, k, winner)`` for 2 <= n <= max_n, 1 <= k <= max_k."""
    rows = []
    for n in range(2, max_n + 1):
        for k in range(1, max_k + 1):
            rows.append((n, p, b, k, _winner_cached(n, k, p, b, cap).value))
    return rows


# -- independent oracle ------------------------------------------------------

def brute_force_winner(config: GameConfig) -> Status:
    """Plain exhaustive search: no memo, no symmetry, explicit edge sets.

    Only for n <= 4; cost grows factorially.
    """
    n, k, p, b = config.n, config.k, config.p, config.b
    if n > BRUTE_FORCE_CAP:
        raise CapExceededError(f"brute force is limited to n <= {BRUTE_FORCE_CAP}")
    verts = list(range(1, n + 1))

    def outcome(colour: dict, edges: frozenset) -> Status:
        if len(colour) == n:
            return Status.PAINTER_WIN
        for v in verts:
            if v in colour:
                continue
            seen = {colour[u] for e in edges if v in e for u in e if u != v and u in colour}
            if len(seen) == k:
                return Status.BUILDER_WIN
        return Status.ONGOING

    def painter(colour, edges, left) -> bool:
        st = outcome(colour, edges)
        if st is not Status.ONGOING:
            return st is Status.PAINTER_WIN
        for v in verts:
            if v in colour:
                continue
            nbr = {colour[u] for e in edges if v in e for u in e if u != v and u in colour}
            for c in range(1, k + 1):
                if c in nbr:
                    continue
                new = dict(colour)
                new[v] = c
                st = outcome(new, edges)
                if st is not Status.ONGOING:
                    won = st is Status.PAINTER_WIN
                elif left > 1:
                    won = painter(new, edges, left - 1)
                else:
                    won = builder(new, edges)
                if won:
                    return True
        return False

    def builder(colour, edges) -> bool:
        legal = [frozenset((u, v)) for u, v in itertools.combinations(verts, 2)
                 if frozenset((u, v)) not in edges
                 and not (u in colour and v in colour and colour[u] == colour[v])]
        if not legal:
            return painter(colour, edges, p)
        for chosen in itertools.combinations(legal, min(b, len(legal))):
            if not painter(colour, edges | set(chosen), p):
                return False
        return True

    return Status.PAINTER_WIN if painter({}, frozenset(), p) else Status.BUILDER_WIN
