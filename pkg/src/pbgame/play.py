"""Game loop connecting a Painter agent, a Builder agent and an optional recorder."""

from __future__ import annotations

from dataclasses import dataclass, field

from .builders._common import Step, pad_build
from .core import (
    FORFEIT,
    GameConfig,
    GameState,
    Status,
    Turn,
    apply_build,
    apply_forfeit,
    apply_paint,
    new_game,
    norm_edge,
)


@dataclass
class GameResult:
    status: Status
    rounds: int
    edges: int
    coloured: int
    forfeit: bool
    digest: str
    state: GameState = field(repr=False)


def _painter_turn(state: GameState, painter, recorder) -> bool:
    """Let Painter finish her turn.  Returns False if she forfeited."""
    while state.status is Status.ONGOING and state.turn is Turn.PAINTER:
        move = painter.paint(state)
        if move is FORFEIT or move is None:
            apply_forfeit(state)
            if recorder is not None:
                recorder.forfeit(state)
            return False
        v, c = move
        apply_paint(state, v, c)
        if recorder is not None:
            recorder.paint(state, v, c)
    return True


def _builder_turn(state: GameState, edges, notes, recorder) -> None:
    if recorder is not None:
        for when, nt in notes:
            if when == "before":
                recorder.note(state, nt)
    apply_build(state, edges)
    if recorder is not None:
        recorder.build(state, edges)
        for when, nt in notes:
            if when == "after":
                recorder.note(state, nt)


def play_game(config: GameConfig, painter, builder, recorder=None) -> GameResult:
    """Play one full game and return its outcome."""
    state = new_game(config)
    if recorder is not None:
        recorder.start(config, painter, builder)
    forfeit = False
    while state.status is Status.ONGOING:
        if state.turn is Turn.PAINTER:
            forfeit = not _painter_turn(state, painter, recorder)
        else:
            edges = [norm_edge(*e) for e in builder.build(state)]
            _builder_turn(state, edges, builder.drain_notes(), recorder)
    if recorder is not None:
        recorder.finish(state)
    return GameResult(state.status, state.painter_turns, state.n_edges, state.n_coloured,
                      forfeit, state.digest(), state)


class Driver:
    """Applies a Builder procedure's ``Step`` and lets Painter answer.

    Use with ``run_procedure`` to run a single strategy phase outside the
    full game loop; the state must have Builder to move.
    """

    def __init__(self, state: GameState, painter, recorder=None):
        self.state = state
        self.painter = painter
        self.recorder = recorder
        self.moves = 0

    def __call__(self, step: Step) -> bool:
        state = self.state
        edges = pad_build(state, step.edges)
        notes = [("before", nt) for nt in step.before] + [("after", nt) for nt in step.after]
        _builder_turn(state, edges, notes, self.recorder)
        self.moves += 1
        _painter_turn(state, self.painter, self.recorder)
        return state.status is Status.ONGOING
