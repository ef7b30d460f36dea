"""Painter-Builder proper colouring game: engine, strategies, exact solver,
transcripts and a batch harness."""

from .core import (
    FORFEIT,
    GameConfig,
    GameState,
    Paint,
    Status,
    Turn,
    apply_build,
    apply_forfeit,
    apply_paint,
    dead_vertices,
    legal_colours,
    new_game,
    status,
)
from .errors import (
    CapExceededError,
    ConfigurationError,
    EscalationError,
    IllegalMoveError,
    PreconditionError,
    RoomExhaustedError,
    TranscriptFormatError,
)
from .painters import PAINTERS, make_painter
from .builders import BUILDERS, BuilderConstants, make_builder
from .play import Driver, GameResult, play_game
from .transcript import TranscriptRecorder, read_transcript, record, replay, replay_verify

__version__ = "0.1.0"

import logging as _logging

_logging.getLogger("pbgame").addHandler(_logging.NullHandler())
