"""Graph predicates used to certify strategy phases and audit transcripts.

Every ``check_*`` function returns a list of human-readable failures; an
empty list means the certificate holds.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable

import networkx as nx

from .core import GameState


class ParityDSU:
    """Union-find with parity bits; detects the first odd cycle."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.parity = [0] * (n + 1)  # parity relative to parent
        self.size = [1] * (n + 1)
        self.bipartite = True

    def find(self, v: int) -> tuple[int, int]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress, accumulating parity from the top down
        acc = 0
        for w in reversed(path):
            acc ^= self.parity[w]
            self.parity[w] = acc
            self.parent[w] = root
        return root, (self.parity[path[0]] if path else 0)

    def same(self, u: int, v: int) -> bool:
        return self.find(u)[0] == self.find(v)[0]

    def keeps_bipartite(self, u: int, v: int) -> bool:
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        return ru != rv or pu != pv

    def union(self, u: int, v: int) -> bool:
        """Add edge uv; returns whether the graph is still bipartite."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            if pu == pv:
                self.bipartite = False
            return self.bipartite
        if self.size[ru] < self.size[rv]:
            ru, rv, pu, pv = rv, ru, pv, pu
        self.parent[rv] = ru
        self.parity[rv] = pu ^ pv ^ 1
        self.size[ru] += self.size[rv]
        return self.bipartite


def to_networkx(state: GameState) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(state.vertices())
    g.add_edges_from(state.edges())
    return g


def is_bipartite(state: GameState) -> bool:
    return nx.is_bipartite(to_networkx(state))


def check_proper(state: GameState) -> list[str]:
    bad = [f"edge {u}-{v} is monochromatic" for u, v in state.edges()
           if state.colour[u] and state.colour[u] == state.colour[v]]
    return bad


def _component(state: GameState, v: int) -> tuple[set[int], int]:
    seen = {v}
    queue = deque([v])
    deg_sum = 0
    while queue:
        x = queue.popleft()
        deg_sum += len(state.adj[x])
        for y in state.adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen, deg_sum // 2


def check_disjoint_short_paths(state: GameState) -> list[str]:
    """The whole graph is a disjoint union of paths with at most two edges."""
    out = []
    done: set[int] = set()
    for v in state.vertices():
        if v in done or not state.adj[v]:
            continue
        comp, m = _component(state, v)
        done |= comp
        if m != len(comp) - 1:
            out.append(f"component of {v} has a cycle")
        elif len(comp) > 3:
            out.append(f"component of {v} has {m} edges")
    return out


def check_waiting_room(state: GameState, A: list[int], B: list[int], colour: int,
                       min_size: float) -> list[str]:
    out = []
    sa, sb = set(A), set(B)
    if len(sa) != len(A) or len(sb) != len(B):
        out.append("repeated vertex in A or B")
    if sa & sb:
        out.append("A and B intersect")
    if len(A) != len(B):
        out.append(f"|A|={len(A)} != |B|={len(B)}")
    if len(A) < min_size:
        out.append(f"|A|={len(A)} below {min_size:g}")
    for side, name in ((sa, "A"), (sb, "B")):
        for v in side:
            if state.adj[v] & side:
                out.append(f"{name} is not independent at {v}")
                break
    union = sa | sb
    for v in union:
        inside = state.adj[v] & union
        if len(inside) != 1:
            out.append(f"vertex {v} has {len(inside)} neighbours inside A u B")
            break
    for v in A:
        if state.colour[v] != colour:
            out.append(f"A vertex {v} has colour {state.colour[v]}, not {colour}")
            break
    return out


def check_distinct_tree_components(state: GameState, V: Iterable[int]) -> list[str]:
    out = []
    owner: dict[int, int] = {}
    for v in V:
        if v in owner:
            out.append(f"{v} shares a component with {owner[v]}")
            continue
        comp, m = _component(state, v)
        if m != len(comp) - 1:
            out.append(f"component of {v} is not a tree")
        for x in comp:
            owner[x] = v
    return out


def check_cycles_confined(state: GameState, A: Iterable[int], B: Iterable[int]) -> list[str]:
    """Every edge lying on a cycle joins A to B, i.e. all other edges are bridges."""
    sa, sb = set(A), set(B)
    g = to_networkx(state)
    bridges = {tuple(sorted(e)) for e in nx.bridges(g)}
    out = []
    for u, v in state.edges():
        if (u, v) in bridges:
            continue
        if not ((u in sa and v in sb) or (u in sb and v in sa)):
            out.append(f"edge {u}-{v} lies on a cycle outside the waiting-room")
            break
    return out


def check_level_set(state: GameState, V: Iterable[int], t: int) -> list[str]:
    out = []
    for v in V:
        if state.colour[v]:
            out.append(f"{v} is coloured")
        elif state.colour_count(v) < t:
            out.append(f"{v} sees {state.colour_count(v)} colours, needs {t}")
        if len(out) > 5:
            break
    return out


def check_escalation(state: GameState, V_next: list[int], t_next: int, prev_size: int,
                     shrink: float, A: Iterable[int], B: Iterable[int]) -> list[str]:
    """All four postconditions of one escalation step."""
    out = []
    if not len(V_next) > shrink * prev_size:
        out.append(f"|V_{t_next}|={len(V_next)} not above {shrink}*{prev_size}")
    out += check_level_set(state, V_next, t_next)
    out += check_distinct_tree_components(state, V_next)
    out += check_cycles_confined(state, A, B)
    return out


def clique_recurrence(n: int, b: int) -> list[int]:
    """n_0 = n, n_{i+1} = n_i - ceil((n_i - 1)/b) - 1, up to the first value <= 0."""
    seq = [n]
    while seq[-1] > 0:
        m = seq[-1]
        seq.append(m - (-(-(m - 1) // b)) - 1)
    return seq


def clique_depth(n: int, b: int) -> int:
    """t = max{i : n_i > 0}."""
    return max(i for i, m in enumerate(clique_recurrence(n, b)) if m > 0)


def biased_lower_bound(n: int, b: int) -> float:
    return b / 2 * math.log(n / (2 * b) + 1)


def check_clique(state: GameState, K: list[int], V: list[int] | None = None,
                 min_v: int = 0) -> list[str]:
    out = []
    for i, u in enumerate(K):
        for w in K[i + 1:]:
            if not state.has_edge(u, w):
                out.append(f"clique edge {u}-{w} missing")
    if V is not None:
        if set(K) & set(V):
            out.append("K and V intersect")
        if len(V) < min_v:
            out.append(f"|V|={len(V)} below {min_v}")
        for v in V:
            if state.colour[v]:
                out.append(f"V vertex {v} is coloured")
                break
        missing = [(u, v) for u in K for v in V if not state.has_edge(u, v)]
        if missing:
            out.append(f"{len(missing)} K-V edges missing, e.g. {missing[0]}")
    return out
