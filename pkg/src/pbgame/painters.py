"""Painter strategies.

Each strategy is available as a plain function taking the position and the
relevant part of Builder's last move, and as an agent class with a
``paint(state)`` method that the game loop calls once per single paint.
Agents always return a legal paint when one exists; ``FORFEIT`` is returned
only when the vertex the strategy is obliged to colour is dead.
"""

from __future__ import annotations

import numpy as np

from .core import FORFEIT, Edge, GameState, Paint, smallest_legal_colour

RNG_ALGORITHM = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _paint_smallest(state: GameState, v: int):
    c = smallest_legal_colour(state, v)
    return FORFEIT if c is None else Paint(v, c)


def first_fit_move(state: GameState):
    """Lowest-index uncoloured vertex that still has a legal colour."""
    v = state.lowest_uncoloured()
    n = state.config.n
    while v is not None and v <= n:
        if not state.colour[v] and v not in state.dead:
            return _paint_smallest(state, v)
        v += 1
    return FORFEIT


def random_greedy_move(state: GameState, last_build_edge: Edge | None, rng: np.random.Generator):
    """Greedy-random response to Builder's last edge.

    Both endpoints uncoloured: fair coin.  One uncoloured: that one.  Otherwise
    (or on the opening move) the lowest-index uncoloured vertex.  The chosen
    vertex gets the smallest colour absent from its neighbourhood.
    """
    target = None
    if last_build_edge is not None:
        u, v = last_build_edge
        free = [w for w in (u, v) if not state.colour[w]]
        if len(free) == 2:
            target = free[int(rng.integers(2))]
        elif len(free) == 1:
            target = free[0]
    if target is None:
        target = state.lowest_uncoloured()
        if target is None:
            return FORFEIT
    return _paint_smallest(state, target)


def biased_weighted_move(state: GameState, last_build_edges, rng: np.random.Generator):
    """Pick an endpoint of Builder's last edges with probability d/(2m).

    ``d`` is the vertex degree in the subgraph formed by those ``m`` edges,
    realised by drawing one of the ``2m`` endpoint slots uniformly.  Mass that
    lands on an already coloured endpoint goes to the lowest-index uncoloured
    vertex.
    """
    slots = [w for e in last_build_edges for w in e]
    target = None
    if slots:
        target = slots[int(rng.integers(len(slots)))]
        if state.colour[target]:
            target = None
    if target is None:
        target = state.lowest_uncoloured()
        if target is None:
            return FORFEIT
    return _paint_smallest(state, target)


def _lowest_isolated_uncoloured(state: GameState, start: int = 1) -> int | None:
    # the set of uncoloured isolated vertices only shrinks, so callers may
    # resume the scan from a previous answer
    for v in range(start, state.config.n + 1):
        if not state.colour[v] and not state.adj[v]:
            return v
    return None


def two_for_one_move(state: GameState, last_build_edge: Edge | None) -> list[Paint]:
    """Both paints of a (2:1) Painter turn, planned from the current position.

    The endpoints of Builder's last edge are coloured first (1 and 2 when
    both are fresh); leftover paints go to the lowest-index uncoloured
    isolated vertex with colour 1.  Only colours 1 and 2 are used.
    """
    scratch = state.copy()
    out = []
    for _ in range(min(state.config.p, 2, scratch.n - scratch.n_coloured)):
        paint = _two_for_one_single(scratch, last_build_edge)
        if paint is FORFEIT:
            break
        scratch._set_colour(*paint)
        out.append(paint)
    return out


def _two_for_one_single(state: GameState, last_build_edge: Edge | None, iso_start: int = 1):
    if last_build_edge is not None:
        for w in sorted(last_build_edge):
            if not state.colour[w]:
                c = _smallest_of_two(state, w)
                if c is not None:
                    return Paint(w, c)
    v = _lowest_isolated_uncoloured(state, iso_start)
    if v is not None:
        return Paint(v, 1)
    v = state.lowest_uncoloured()
    while v is not None and v <= state.n:
        if not state.colour[v]:
            c = _smallest_of_two(state, v)
            if c is not None:
                return Paint(v, c)
        v += 1
    return first_fit_move(state)


def _smallest_of_two(state: GameState, v: int) -> int | None:
    used = state.nbr_colours[v]
    for c in (1, 2):
        if c <= state.config.k and c not in used:
            return c
    return None


# -- agents -------------------------------------------------------------------


class PainterAgent:
    """Base class.  Subclasses implement ``_first`` for the first paint of a
    turn; further paints in a ``p > 1`` turn fall back to first-fit."""

    name = "painter"

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.rng = make_rng(self.seed)

    def paint(self, state: GameState):
        if state.paints_left == state.config.p:
            return self._first(state)
        return first_fit_move(state)

    def _first(self, state: GameState):
        raise NotImplementedError

    def describe(self) -> dict:
        return {"agent": self.name, "seed": self.seed}


class FirstFitPainter(PainterAgent):
    name = "first_fit"

    def _first(self, state):
        return first_fit_move(state)


class RandomGreedyPainter(PainterAgent):
    """In a ``b > 1`` game the last edge of Builder's move plays the role of
    the single edge."""

    name = "random_greedy"

    def _first(self, state):
        last = state.last_build[-1] if state.last_build else None
        return random_greedy_move(state, last, self.rng)


class BiasedWeightedPainter(PainterAgent):
    name = "biased_weighted"

    def _first(self, state):
        return biased_weighted_move(state, state.last_build, self.rng)


class TwoForOnePainter(PainterAgent):
    """Keeps every non-isolated vertex coloured; wins the (2:1) game with k=2."""

    name = "two_for_one"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._iso = 1

    def paint(self, state):
        last = state.last_build[-1] if state.last_build else None
        self._iso = _lowest_isolated_uncoloured(state, self._iso) or state.config.n + 1
        return _two_for_one_single(state, last, self._iso)


PAINTERS = {
    cls.name: cls
    for cls in (RandomGreedyPainter, BiasedWeightedPainter, TwoForOnePainter, FirstFitPainter)
}


def make_painter(name: str, seed: int = 0) -> PainterAgent:
    try:
        return PAINTERS[name](seed)
    except KeyError:
        raise ValueError(f"unknown painter {name!r}; choose from {sorted(PAINTERS)}") from None
