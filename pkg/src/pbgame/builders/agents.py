"""Builder agents usable by the game loop."""

from __future__ import annotations

import numpy as np

from ..certificates import ParityDSU
from ..core import Edge, GameState, norm_edge
from ..errors import EscalationError, PreconditionError, RoomExhaustedError
from ..painters import make_rng
from ._common import (
    BuilderAgent,
    BuilderConstants,
    Step,
    log,
    lowest_legal_pairs,
    note,
    pad_build,
)
from .clique import CliqueState, clique_procedure
from .escalation import EscalationState, escalation_preconditions, escalation_procedure
from .room import WaitingRoom, stall_in_waiting_room, waiting_room_procedure


def all_legal_pairs(state: GameState) -> list[Edge]:
    return lowest_legal_pairs(state, state.legal_pair_count())


def random_builder_move(state: GameState, rng: np.random.Generator) -> list[Edge]:
    """``b`` distinct legal pairs drawn uniformly, or all of them if fewer."""
    b = state.config.b
    n = state.config.n
    legal = state.legal_pair_count()
    if legal == 0:
        return []
    if legal <= b:
        return all_legal_pairs(state)
    chosen: list[Edge] = []
    seen: set[Edge] = set()
    attempts = 0
    # rejection sampling is uniform; switch to enumeration when pairs are rare
    if 4 * legal >= n * (n - 1) // 2:
        while len(chosen) < b and attempts < 64 * b:
            attempts += 1
            u, v = (int(x) for x in rng.integers(1, n + 1, size=2))
            if u == v:
                continue
            e = norm_edge(u, v)
            if e not in seen and state.legal_pair(u, v):
                seen.add(e)
                chosen.append(e)
    if len(chosen) < b:
        rest = [e for e in all_legal_pairs(state) if e not in seen]
        picks = rng.choice(len(rest), size=b - len(chosen), replace=False)
        chosen += [rest[int(i)] for i in picks]
    return chosen


class RandomBuilder(BuilderAgent):
    name = "random"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self.rng = make_rng(self.seed)

    def build(self, state):
        return random_builder_move(state, self.rng)


class _ProcedureBuilder(BuilderAgent):
    """Runs a generator of ``Step``s, one per turn, then a fallback."""

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self._plan = None

    def _phases(self, state):
        raise NotImplementedError

    def _fallback(self, state, count, chosen):
        return lowest_legal_pairs(state, count, chosen)

    def _next_step(self, state) -> Step:
        if self._plan is None:
            self._plan = self._phases(state)
        return next(self._plan)

    def build(self, state):
        step = self._next_step(state)
        self.pending_notes += [("before", nt) for nt in step.before]
        edges = [norm_edge(*e) for e in step.edges]
        need = min(state.config.b, state.legal_pair_count())
        edges = edges[:need]
        if len(edges) < need:
            edges += self._fallback(state, need - len(edges), set(edges))
        self.pending_notes += [("after", nt) for nt in step.after]
        return pad_build(state, edges)


class LogarithmicBuilder(_ProcedureBuilder):
    """Waiting-room, then escalation level by level, keeping the graph bipartite.

    Whenever a phase cannot run (small board, biased game, thresholds not met)
    the agent stalls in the waiting-room and then plays the lowest legal pair
    that keeps the graph bipartite.  An escalation step that ends with a
    failed postcondition is recorded as an ``escalation_failed`` annotation.
    """

    name = "logarithmic"

    def __init__(self, seed: int = 0, constants: BuilderConstants | None = None):
        super().__init__(seed)
        self.constants = constants or BuilderConstants()
        self.dsu: ParityDSU | None = None
        self.room: WaitingRoom | None = None
        self.esc: EscalationState | None = None
        self.levels: list[EscalationState] = []

    def describe(self):
        return {"agent": self.name, "seed": self.seed, "constants": self.constants.as_dict()}

    def _next_step(self, state):
        if self.dsu is None:
            self.dsu = ParityDSU(state.config.n)
            for u, v in state.edges():
                self.dsu.union(u, v)
        try:
            return super()._next_step(state)
        except EscalationError as exc:
            log.error("escalation failed: %s", exc)
            self.pending_notes.append(("before", note("escalation_failed", error=str(exc))))
            self._plan = self._stall_forever(state)
            return next(self._plan)

    def build(self, state):
        edges = super().build(state)
        for u, v in edges:
            self.dsu.union(u, v)
        return edges

    def _fallback(self, state, count, chosen):
        # edges of this turn are joined first so that later picks see them
        for u, v in chosen:
            self.dsu.union(u, v)
        out = []
        chosen = set(chosen)
        for _ in range(count):
            pick = lowest_legal_pairs(state, 1, chosen, accept=self.dsu.keeps_bipartite)
            if not pick:
                pick = lowest_legal_pairs(state, 1, chosen)
                if pick:
                    log.warning("no bipartite-preserving legal pair left; playing %s", pick[0])
                    self.pending_notes.append(("before", note("bipartite_lost", edge=list(pick[0]))))
            if not pick:
                break
            out += pick
            chosen |= set(pick)
            self.dsu.union(*pick[0])
        return out

    def _kill_edge(self, state):
        """k = 1: joining a coloured vertex to an uncoloured one kills the latter."""
        coloured = next((v for v in state.vertices() if state.colour[v]), None)
        if coloured is None:
            return None
        for v in state.vertices():
            if not state.colour[v] and self.dsu.keeps_bipartite(coloured, v) \
                    and not state.has_edge(coloured, v):
                return norm_edge(coloured, v)
        return None

    def _stall_forever(self, state):
        while True:
            edge = None
            if state.config.k == 1:
                edge = self._kill_edge(state)
            if edge is None and self.room is not None:
                try:
                    edge = stall_in_waiting_room(state, self.room)
                except RoomExhaustedError:
                    self.room = None
                    log.info("waiting-room exhausted; playing arbitrary bipartite edges")
            yield Step([edge] if edge else [])

    def _phases(self, state):
        c = self.constants
        if state.config.k == 1:
            yield from self._stall_forever(state)
        try:
            self.room = yield from waiting_room_procedure(state, c)
        except PreconditionError as exc:
            log.info("no waiting-room: %s", exc)
            self.pending_notes.append(("before", note("phase_skipped", phase="waiting_room",
                                                      reason=str(exc))))
            yield from self._stall_forever(state)
        V0 = [v for v in state.vertices() if not state.colour[v] and not state.adj[v]]
        esc = EscalationState(0, V0, c)
        self.levels.append(esc)
        while esc.t < state.config.k:
            problems = escalation_preconditions(state, esc, self.room)
            if problems:
                self.pending_notes.append(("before", note(
                    "escalation_stop", t=esc.t, size=len(esc.V), reasons=problems[:5])))
                break
            esc = yield from escalation_procedure(state, esc, self.room)
            self.esc = esc
            self.levels.append(esc)
            self.pending_notes.append(("before", note(
                "escalation", t=esc.t, V=esc.V, prev_size=esc.prev_size,
                shrink=c.shrink, branch=esc.branch)))
        yield from self._stall_forever(state)


class BiasedCliqueBuilder(_ProcedureBuilder):
    """Builds the nested cliques of the (1 : b) game, then plays arbitrary
    lowest-index legal pairs."""

    name = "biased_clique"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self.clique: CliqueState | None = None

    def _phases(self, state):
        self.clique = yield from clique_procedure(state)
        while True:
            yield Step([])


BUILDERS = {cls.name: cls for cls in (LogarithmicBuilder, BiasedCliqueBuilder, RandomBuilder)}


def make_builder(name: str, seed: int = 0, constants: BuilderConstants | None = None) -> BuilderAgent:
    if name not in BUILDERS:
        raise ValueError(f"unknown builder {name!r}; choose from {sorted(BUILDERS)}")
    if name == "logarithmic":
        return LogarithmicBuilder(seed, constants)
    return BUILDERS[name](seed)
