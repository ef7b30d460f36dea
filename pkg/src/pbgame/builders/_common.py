from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Iterator, NamedTuple

from ..core import Edge, GameState, norm_edge

log = logging.getLogger("pbgame.builders")


@dataclass(frozen=True)
class BuilderConstants:
    """Numerical constants of the logarithmic Builder.

    Defaults are the values the guarantees are proven for; anything else is
    a relaxed, desk-scale run.
    """

    shrink: float = 0.001
    min_size: int = 1000
    room_fraction: float = 0.1
    round_cap: float = 0.2
    room_min_n: int = 50
    proven_min_n: int = 10**8

    @property
    def proven(self) -> bool:
        return self == BuilderConstants()

    def as_dict(self) -> dict:
        d = asdict(self)
        d["proven"] = self.proven
        return d


class Step(NamedTuple):
    """One Builder move yielded by a strategy procedure.

    ``before``/``after`` are annotation dicts recorded around the move so an
    auditor can evaluate phase certificates at the right moment.
    """

    edges: list[Edge]
    before: tuple = ()
    after: tuple = ()


def note(kind: str, **data) -> dict:
    return {"kind": kind, "data": data}


Procedure = Iterator[Step]


def run_procedure(proc, driver: Callable[[Step], bool]):
    """Drive a Builder procedure to completion.

    ``driver(step)`` must apply the move, let Painter respond and return
    whether the game is still going.  Returns the procedure's result, or
    ``None`` if the game ended first.
    """
    try:
        step = next(proc)
        while True:
            if not driver(step):
                proc.close()
                return None
            step = next(proc)
    except StopIteration as stop:
        return stop.value


class IsolatedCursor:
    """Lowest-index uncoloured isolated vertex; that set only ever shrinks."""

    def __init__(self):
        self.pos = 1

    def next(self, state: GameState, skip: set[int] | frozenset = frozenset()) -> int | None:
        n = state.config.n
        v = self.pos
        while v <= n and (state.colour[v] or state.adj[v]):
            v += 1
        self.pos = v
        while v <= n and (state.colour[v] or state.adj[v] or v in skip):
            v += 1
        return v if v <= n else None


def lowest_legal_pairs(state: GameState, count: int, exclude: set[Edge] = frozenset(),
                       accept: Callable[[int, int], bool] | None = None,
                       avoid: set[int] | frozenset = frozenset()) -> list[Edge]:
    """Up to ``count`` lexicographically smallest legal pairs.

    Pairs rejected by ``accept`` or touching ``avoid`` are skipped.
    """
    out: list[Edge] = []
    if count <= 0:
        return out
    n = state.config.n
    colour = state.colour
    for u in range(1, n + 1):
        if u in avoid:
            continue
        cu = colour[u]
        adj_u = state.adj[u]
        for v in range(u + 1, n + 1):
            if v in adj_u or v in avoid or (cu and colour[v] == cu):
                continue
            if (u, v) in exclude or (accept is not None and not accept(u, v)):
                continue
            out.append((u, v))
            if len(out) == count:
                return out
    return out


def pad_build(state: GameState, edges: list[Edge], accept=None, avoid=frozenset()) -> list[Edge]:
    """Complete a Builder move to exactly min(b, legal pairs) edges."""
    need = min(state.config.b, state.legal_pair_count())
    edges = [norm_edge(*e) for e in edges][:need]
    if len(edges) < need:
        chosen = set(edges)
        extra = lowest_legal_pairs(state, need - len(edges), chosen, accept, avoid)
        if len(edges) + len(extra) < need and (accept is not None or avoid):
            chosen |= set(extra)
            extra += lowest_legal_pairs(state, need - len(edges) - len(extra), chosen)
        edges += extra
    return edges


class BuilderAgent:
    """Base for Builder agents: ``build(state)`` returns this turn's edges and
    leaves ``(when, note)`` annotation pairs in ``pending_notes``."""

    name = "builder"

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.pending_notes: list[tuple[str, dict]] = []

    def build(self, state: GameState) -> list[Edge]:
        raise NotImplementedError

    def drain_notes(self) -> list[tuple[str, dict]]:
        out, self.pending_notes = self.pending_notes, []
        return out

    def describe(self) -> dict:
        return {"agent": self.name, "seed": self.seed}
