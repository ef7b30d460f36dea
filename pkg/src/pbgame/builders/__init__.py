"""Builder strategies: waiting-room, escalation, clique building, baselines."""

from ._common import BuilderAgent, BuilderConstants, Step, run_procedure
from .agents import (
    BUILDERS,
    BiasedCliqueBuilder,
    LogarithmicBuilder,
    RandomBuilder,
    make_builder,
    random_builder_move,
)
from .clique import CliqueState, clique_procedure
from .escalation import (
    EscalationState,
    escalate_step,
    escalation_preconditions,
    escalation_procedure,
)
from .room import WaitingRoom, build_waiting_room, stall_in_waiting_room, waiting_room_procedure

__all__ = [
    "BUILDERS", "BiasedCliqueBuilder", "BuilderAgent", "BuilderConstants", "CliqueState",
    "EscalationState", "LogarithmicBuilder", "RandomBuilder", "Step", "WaitingRoom",
    "build_waiting_room", "clique_procedure", "escalate_step", "escalation_preconditions",
    "escalation_procedure", "make_builder", "random_builder_move", "run_procedure",
    "stall_in_waiting_room", "waiting_room_procedure",
]
