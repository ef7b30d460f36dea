"""Synthetic positions shared by several test modules."""

from __future__ import annotations

import itertools

from pbgame.builders import WaitingRoom
from pbgame.core import GameConfig, GameState, Turn


def level_position(k: int, t: int, size: int, classes: list[tuple[int, ...]] | str,
                   spares: int = 0, room: int = 60, room_colour: int | None = None):
    """A position satisfying the escalation hypotheses at level ``t``.

    Layout by index: ``spares`` isolated vertices first (so a first-fit
    Painter spends her moves there), then the waiting-room, then ``size``
    stars whose centres form ``V_t``; centre ``i`` gets leaves coloured with
    ``classes[i % len(classes)]``.  ``classes="all"`` cycles through every
    t-subset of the palette.
    """
    if classes == "all":
        classes = list(itertools.combinations(range(1, k + 1), t))
    room_colour = room_colour or k
    n = spares + 2 * room + size + sum(len(classes[i % len(classes)]) for i in range(size))
    edges, colours = [], {}
    A = list(range(spares + 1, spares + room + 1))
    B = list(range(spares + room + 1, spares + 2 * room + 1))
    for a, b in zip(A, B):
        edges.append((a, b))
        colours[a] = room_colour
    V = []
    nxt = spares + 2 * room + 1
    for i in range(size):
        v = nxt
        nxt += 1
        V.append(v)
        for c in classes[i % len(classes)]:
            edges.append((v, nxt))
            colours[nxt] = c
            nxt += 1
    state = GameState.from_position(GameConfig(n, k), edges, colours, turn=Turn.BUILDER)
    return state, WaitingRoom(A, B, room_colour), V
