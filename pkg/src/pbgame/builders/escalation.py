"""Colour-neighbourhood escalation.

Starting from a large set ``V_t`` of uncoloured vertices that each see at
least ``t`` colours, Builder forces a set ``V_{t+1}`` a constant fraction
as large whose members see ``t + 1`` colours, while every ``V`` vertex stays
alone in a tree component and the only cycles live inside the waiting-room.

All branch conditions are evaluated on the live position rather than on
counts predicted by the analysis.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field

from ..certificates import (
    check_cycles_confined,
    check_distinct_tree_components,
    check_escalation,
    check_level_set,
)
from ..core import GameState
from ..errors import EscalationError, PreconditionError, RoomExhaustedError
from ._common import BuilderConstants, Step, lowest_legal_pairs, log, run_procedure
from .room import WaitingRoom, stall_in_waiting_room


def colour_class(state: GameState, v: int) -> tuple[int, ...]:
    return tuple(sorted(state.nbr_colours[v]))


@dataclass
class EscalationState:
    t: int
    V: list[int]
    constants: BuilderConstants = field(default_factory=BuilderConstants)
    prev_size: int | None = None
    branch: str = "initial"

    def class_index(self, state: GameState) -> dict[tuple[int, ...], list[int]]:
        """Vertices of ``V`` grouped by their neighbour colour set."""
        index: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for v in self.V:
            index[colour_class(state, v)].append(v)
        return dict(index)


def escalation_preconditions(state: GameState, esc: EscalationState,
                             room: WaitingRoom | None, structural: bool = True) -> list[str]:
    cfg = state.config
    c = esc.constants
    out = []
    if not (cfg.p == 1 and cfg.b == 1):
        out.append("escalation is defined for the (1:1) game")
    if not 0 <= esc.t < cfg.k:
        out.append(f"level t={esc.t} outside 0..k-1")
    size = len(esc.V)
    if 0 <= esc.t <= cfg.k and not size > 2 * math.comb(cfg.k, esc.t):
        out.append(f"|V_t|={size} not above 2*C({cfg.k},{esc.t})")
    if not size > c.min_size:
        out.append(f"|V_t|={size} not above {c.min_size}")
    if room is None:
        out.append("no waiting-room")
    if out or not structural:
        return out
    out += check_level_set(state, esc.V, esc.t)
    out += check_distinct_tree_components(state, esc.V)
    out += check_cycles_confined(state, room.A, room.B)
    return out


class _Stall:
    """Stalling edges: the waiting-room first, a harmless forest edge after."""

    def __init__(self, state: GameState, room: WaitingRoom, protected: set[int]):
        self.state = state
        self.room = room
        self.protected = protected
        self.exhausted = False

    def edge(self):
        try:
            return stall_in_waiting_room(self.state, self.room)
        except RoomExhaustedError:
            if not self.exhausted:
                log.warning("waiting-room exhausted during escalation; guarantees void")
                self.exhausted = True
        state = self.state
        pairs = lowest_legal_pairs(
            state, 1, avoid=self.protected,
            accept=lambda u, v: not state.adj[u] and not state.adj[v])
        if not pairs:
            pairs = lowest_legal_pairs(state, 1)
        return pairs[0]


def escalation_procedure(state: GameState, esc: EscalationState, room: WaitingRoom):
    """Builder procedure for one level; returns the next ``EscalationState``.

    Raises ``EscalationError`` if the set it ends with violates a
    postcondition.
    """
    t = esc.t
    V = list(esc.V)
    n_t = len(V)
    shrink = esc.constants.shrink
    colour = state.colour
    cc = state.colour_count

    def finish(V_next, branch):
        V_next = sorted(V_next)
        problems = check_escalation(state, V_next, t + 1, n_t, shrink, room.A, room.B)
        if problems:
            raise EscalationError(f"level {t}->{t + 1} ({branch}): " + "; ".join(problems[:5]))
        log.info("escalation %d->%d via %s: |V|=%d -> %d", t, t + 1, branch, n_t, len(V_next))
        return EscalationState(t + 1, V_next, esc.constants, prev_size=n_t, branch=branch)

    already = [v for v in V if not colour[v] and cc(v) >= t + 1]
    if len(already) > shrink * n_t:
        return finish(already, "direct")

    # match strict vertices of equal colour class for as long as possible
    buckets: dict[tuple[int, ...], deque[int]] = defaultdict(deque)
    for v in V:
        if not colour[v] and cc(v) == t:
            buckets[colour_class(state, v)].append(v)
    keys = sorted(buckets)
    matching: list[tuple[int, int, tuple[int, ...]]] = []

    def eligible(v):
        # a strict vertex only leaves its class by being coloured or by
        # seeing a new colour, both permanent
        return not colour[v] and cc(v) == t

    def take_pair():
        for key in keys:
            bucket = buckets[key]
            got = []
            while bucket and len(got) < 2:
                v = bucket.popleft()
                if eligible(v):
                    got.append(v)
            if len(got) == 2:
                return got[0], got[1], key
            bucket.extendleft(reversed(got))
        return None

    while (pair := take_pair()) is not None:
        matching.append(pair)
        yield Step([(pair[0], pair[1])])

    lower = (n_t - math.comb(state.config.k, t)) / 3
    if len(matching) < lower:
        log.warning("matching has %d edges, analysis expects >= %.1f", len(matching), lower)

    one_coloured = []
    fresh = []
    for u, w, key in matching:
        cu, cw = bool(colour[u]), bool(colour[w])
        if cu != cw:
            one_coloured.append(w if cu else u)
        elif not cu:
            fresh.append((u, w, key))
    if len(one_coloured) > shrink * n_t:
        return finish(one_coloured, "one-coloured")

    m = len(fresh)
    by_class: dict[tuple[int, ...], list] = defaultdict(list)
    for e in fresh:
        by_class[e[2]].append(e)
    stall = _Stall(state, room, {x for e in fresh for x in e[:2]})
    big = min(by_class, key=lambda key: (-len(by_class[key]), key)) if by_class else None
    if big is not None and len(by_class[big]) >= math.ceil(m / 3):
        V_next = yield from _single_class(state, by_class[big][:math.ceil(m / 3)], t, stall)
        branch = "case1"
    else:
        V_next = yield from _many_classes(state, fresh, by_class, m, t, stall)
        branch = "case2"
    if stall.exhausted:
        branch += "+room-exhausted"
    return finish(V_next, branch)


def _pick(state: GameState, candidates, t: int) -> int | None:
    for x in candidates:
        if not state.colour[x] and state.colour_count(x) >= t + 1:
            return x
    return None


def _single_class(state: GameState, edges, t: int, stall: _Stall):
    """Most fresh matching edges share one class: wait for Painter to touch a
    sixth of them, then reuse the coloured endpoints as new neighbours."""
    colour = state.colour
    m1 = len(edges)
    m2 = m1 // 6
    if m1 > 0 and not (m1 - m2) // 2 > m1 / 3:
        log.warning("branch inequality floor((m'-m'')/2) > m'/3 fails for m'=%d", m1)

    # Painter colours one vertex per round, so the count grows by at most 1
    owner = {x: i for i, e in enumerate(edges) for x in e[:2]}
    hit: set[int] = {i for i, e in enumerate(edges) if colour[e[0]] or colour[e[1]]}
    while len(hit) < m2:
        yield Step([stall.edge()])
        for p in state.last_paints:
            if p.vertex in owner:
                hit.add(owner[p.vertex])
    coloured_edges = [edges[i] for i in sorted(hit)][:m2]
    sources = [min(x for x in e[:2] if colour[x]) for e in coloured_edges]
    used = set(sorted(hit)[:m2])
    remaining = [e for i, e in enumerate(edges) if i not in used and not (colour[e[0]] or colour[e[1]])]

    ready = []
    strict = []
    for u, w, _ in remaining:
        x = _pick(state, sorted((u, w)), t)
        if x is not None:
            ready.append(x)
        else:
            strict.append(tuple(sorted((u, w))))
    if len(ready) >= (m1 - m2) // 2:
        return ready

    targets = []
    ptr = 0
    for src in sources:
        c = colour[src]
        while ptr < len(strict):
            a, b = strict[ptr]
            ptr += 1
            x = a if not colour[a] else (b if not colour[b] else None)
            if x is None or c in state.nbr_colours[x] or src in state.adj[x]:
                continue
            targets.append((a, b))
            yield Step([(src, x)])
            break
        else:
            break
    return [x for a, b in targets if (x := _pick(state, (a, b), t)) is not None]


def _many_classes(state: GameState, fresh, by_class, m: int, t: int, stall: _Stall):
    """No class dominates: split off a union of classes holding between a
    sixth and a third of the fresh edges and use coloured neighbours of one
    side to hand a missing colour to the other."""
    colour = state.colour
    keys = sorted(by_class)
    chosen = next((key for key in keys if m / 6 <= len(by_class[key]) <= m / 3), None)
    if chosen is not None:
        chosen_keys = {chosen}
    else:
        chosen_keys, total = set(), 0
        for key in keys:
            if total >= m / 6:
                break
            chosen_keys.add(key)
            total += len(by_class[key])
    X = [e for e in fresh if e[2] in chosen_keys]
    Y = [e for e in fresh if e[2] not in chosen_keys]
    log.info("case 2: m=%d, m0=%d over %d classes", m, len(X), len(chosen_keys))

    targets = []
    ptr = 0
    for u, w, _ in X:
        sources = sorted(s for x in (u, w) for s in state.adj[x] if colour[s])
        sources += [x for x in sorted((u, w)) if colour[x]]
        if not sources:
            continue
        while ptr < len(Y):
            a, b = sorted(Y[ptr][:2])
            ptr += 1
            x = a if not colour[a] else (b if not colour[b] else None)
            if x is None:
                continue
            src = next((s for s in sources
                        if colour[s] not in state.nbr_colours[x] and s not in state.adj[x]), None)
            targets.append((a, b))
            if src is None:
                # x already sees every colour around u; nothing to add
                continue
            yield Step([(src, x)])
            break
        else:
            break
    return [x for a, b in targets if (x := _pick(state, (a, b), t)) is not None]


def escalate_step(state: GameState, esc: EscalationState, room: WaitingRoom, driver):
    """Run one escalation level with ``driver`` supplying Painter's replies.

    Raises ``PreconditionError`` when the level's hypotheses are not met and
    ``EscalationError`` if a postcondition fails afterwards.
    """
    problems = escalation_preconditions(state, esc, room)
    if problems:
        raise PreconditionError("; ".join(problems))
    return run_procedure(escalation_procedure(state, esc, room), driver)
