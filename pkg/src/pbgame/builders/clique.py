"""Clique building in the (1 : b) game.

Each phase picks an apex ``x`` in the current pool ``V_j`` of uncoloured
vertices (all joined to the clique ``K_j``), joins ``b`` uncoloured pool
vertices to ``x`` per round, and keeps the survivors as ``V_{j+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..certificates import clique_depth, clique_recurrence
from ..core import GameState
from ._common import Step, lowest_legal_pairs, note


@dataclass
class CliqueState:
    K: list[int] = field(default_factory=list)
    V: list[int] = field(default_factory=list)
    phase: int = 0
    targets: list[int] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return max(i for i, m in enumerate(self.targets) if m > 0)


def clique_procedure(state: GameState, cs: CliqueState | None = None):
    """Yield Builder moves until a clique on ``t + 1`` vertices exists.

    Returns the final ``CliqueState``; its clique is ``K_t`` plus the lowest
    vertex of ``V_t``.  Phase certificates are attached as annotations right
    after the move that completes each phase, i.e. immediately before the
    Painter move at which they are claimed.
    """
    n, b = state.config.n, state.config.b
    targets = clique_recurrence(n, b)
    t = clique_depth(n, b)
    if cs is None:
        cs = CliqueState(K=[], V=list(state.vertices()), targets=targets)
    pending_final = t == 0
    # the size guarantee counts one Painter paint per round
    certify = state.config.p == 1
    first_before = () if certify else (note("uncertified", reason="clique bounds assume p = 1"),)
    for j in range(cs.phase, t):
        pool = [v for v in cs.V if not state.colour[v]][:targets[j]]
        if not pool:
            break
        x = pool[0]
        rest = pool[1:]
        joined: list[int] = []
        done = set()
        while True:
            for v in rest:
                if v not in done and v in state.adj[x]:
                    done.add(v)
                    joined.append(v)
            fresh = [v for v in rest if v not in done and not state.colour[v]]
            batch = fresh[:b]
            done.update(batch)
            joined.extend(batch)
            last = len(fresh) <= b
            edges = [(x, v) for v in batch]
            if len(edges) < b:
                # pad without touching the pool
                edges += lowest_legal_pairs(state, b - len(edges), {tuple(sorted(e)) for e in edges},
                                            avoid=set(cs.V))
            if not last:
                yield Step(edges, before=first_before)
                first_before = ()
                continue
            V_next = [v for v in joined if not state.colour[v]]
            cs = CliqueState(K=cs.K + [x], V=V_next, phase=j + 1, targets=targets)
            after = [note("clique_phase", j=j + 1, K=cs.K, V=V_next, n_j=targets[j + 1])]
            if j + 1 == t and V_next:
                after.append(note("clique", vertices=cs.K + [V_next[0]], t=t))
            yield Step(edges, before=first_before, after=tuple(after) if certify else ())
            first_before = ()
            break
    if pending_final and certify:
        yield Step(lowest_legal_pairs(state, b),
                   before=(note("clique", vertices=[cs.V[0] if cs.V else 1], t=0),))
    return cs
