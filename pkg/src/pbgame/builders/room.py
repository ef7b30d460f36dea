"""Waiting-room construction and stalling."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from ..certificates import check_disjoint_short_paths, check_waiting_room
from ..core import Edge, GameState, norm_edge
from ..errors import PreconditionError, RoomExhaustedError
from ._common import BuilderConstants, IsolatedCursor, Step, note, run_procedure


@dataclass
class WaitingRoom:
    """Two matched independent sets; every vertex of ``A`` has ``colour``.

    No vertex of ``B`` can ever receive ``colour``, so any A-B pair is a legal
    Builder edge for the rest of the game.
    """

    A: list[int]
    B: list[int]
    colour: int
    builder_moves: int = 0
    _cursor: int = field(default=0, repr=False)

    @property
    def capacity(self) -> int:
        return len(self.A) * len(self.B)

    def certificate(self, state: GameState, constants: BuilderConstants) -> list[str]:
        min_size = constants.room_fraction * state.config.n / state.config.k
        return check_waiting_room(state, self.A, self.B, self.colour, min_size)

    def as_dict(self) -> dict:
        return {"A": list(self.A), "B": list(self.B), "colour": self.colour,
                "builder_moves": self.builder_moves}


def stall_in_waiting_room(state: GameState, room: WaitingRoom,
                          exclude: set[Edge] = frozenset()) -> Edge:
    """Lowest unused A-B pair, scanning A x B in lexicographic order."""
    nb = len(room.B)
    total = room.capacity
    i = room._cursor
    while i < total:
        a, b = room.A[i // nb], room.B[i % nb]
        if not state.has_edge(a, b):
            e = norm_edge(a, b)
            if e not in exclude and state.legal_pair(a, b):
                room._cursor = i
                return e
        i += 1
    room._cursor = total
    raise RoomExhaustedError(f"all {total} waiting-room pairs are used")


def room_size(n: int, k: int, constants: BuilderConstants = BuilderConstants()) -> tuple[int, int]:
    """(matching rounds, |A|) = (ceil(f n), ceil(f n / k))."""
    f = constants.room_fraction
    return math.ceil(f * n), math.ceil(f * n / k)


def waiting_room_procedure(state: GameState, constants: BuilderConstants = BuilderConstants()):
    """Builder procedure creating a waiting-room; returns the ``WaitingRoom``.

    A matching on fresh vertices first, so that Painter has coloured enough
    vertices; then each vertex of the most popular colour class is joined to
    a new uncoloured isolated vertex.
    """
    n, k = state.config.n, state.config.k
    if n <= constants.room_min_n or k < 2:
        raise PreconditionError(f"waiting-room needs n > {constants.room_min_n} and k >= 2")
    if state.config.b != 1:
        # extra edges of a biased move would break the matching structure
        raise PreconditionError("waiting-room needs one Builder edge per move")
    match_rounds, t = room_size(n, k, constants)
    start = state.round
    cursor = IsolatedCursor()
    for _ in range(match_rounds):
        u = cursor.next(state)
        v = cursor.next(state, {u}) if u is not None else None
        if v is None:
            raise PreconditionError("no isolated uncoloured pair left for the matching")
        yield Step([(u, v)])

    counts = Counter(c for c in state.colour[1:] if c)
    best = min(counts, key=lambda c: (-counts[c], c)) if counts else None
    if best is None or counts[best] < t:
        raise PreconditionError(f"no colour class of size {t}")
    A = [v for v in state.vertices() if state.colour[v] == best][:t]
    B: list[int] = []
    for i, a in enumerate(A):
        u = cursor.next(state)
        if u is None:
            raise PreconditionError("no isolated uncoloured vertex left for B")
        B.append(u)
        if i < t - 1:
            yield Step([(a, u)])
    room = WaitingRoom(A, B, best, builder_moves=state.round - start + 1)
    yield Step([(A[-1], B[-1])], after=(note("waiting_room", **room.as_dict()),))
    return room


def build_waiting_room(state: GameState, driver, constants: BuilderConstants = BuilderConstants()):
    """Run the waiting-room procedure with ``driver`` and certify the result.

    Returns ``(room, state)``.  Raises ``PreconditionError`` when the board
    is too small.
    """
    room = run_procedure(waiting_room_procedure(state, constants), driver)
    if room is not None:
        problems = room.certificate(state, constants) + check_disjoint_short_paths(state)
        if problems:
            raise AssertionError("waiting-room certificate failed: " + "; ".join(problems))
    return room, state
