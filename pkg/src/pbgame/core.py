"""Game state and rules of the Painter-Builder proper colouring game.

Vertices are the integers ``1..n``; colours are ``1..k`` and ``0`` marks an
uncoloured vertex.  Painter moves first.  In the biased ``(p : b)`` game a
Painter turn consists of ``p`` single paints and a Builder turn adds ``b``
edges at once; both are truncated when fewer options remain.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ConfigurationError, IllegalMoveError

Edge = tuple[int, int]


class Status(str, enum.Enum):
    ONGOING = "Ongoing"
    PAINTER_WIN = "PainterWin"
    BUILDER_WIN = "BuilderWin"


class Turn(str, enum.Enum):
    PAINTER = "Painter"
    BUILDER = "Builder"


@dataclass(frozen=True)
class GameConfig:
    n: int
    k: int
    p: int = 1
    b: int = 1

    def __post_init__(self):
        for name, low in (("n", 2), ("k", 1), ("p", 1), ("b", 1)):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < low:
                raise ConfigurationError(f"{name} must be an integer >= {low}, got {value!r}")

    @property
    def unbiased(self) -> bool:
        return self.p == 1 and self.b == 1

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "p": self.p, "b": self.b}


class Paint(NamedTuple):
    vertex: int
    colour: int


class _Forfeit:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FORFEIT"

    def __bool__(self):
        return False


FORFEIT = _Forfeit()
"""Returned by a Painter agent whose chosen vertex has no available colour."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GameState:
    """Mutable game position.

    Besides the colouring and the adjacency sets, the state keeps per-vertex
    counters of neighbour colours so that legal colours, dead vertices and
    the number of legal Builder pairs are all cheap to query.
    """

    def __init__(self, config: GameConfig):
        n = config.n
        self.config = config
        self.colour = [0] * (n + 1)
        self.adj: list[set[int]] = [set() for _ in range(n + 1)]
        # nbr_colours[v][c] = number of neighbours of v with colour c
        self.nbr_colours: list[dict[int, int]] = [{} for _ in range(n + 1)]
        self.class_size = [0] * (config.k + 1)
        self.n_edges = 0
        self.n_coloured = 0
        self.dead: set[int] = set()
        self.turn = Turn.PAINTER
        self.round = 0  # completed full rounds
        self.painter_turns = 1
        self.paints_left = config.p
        self.status = Status.ONGOING
        self.last_build: tuple[Edge, ...] = ()
        self.last_paints: list[Paint] = []
        self._low_uncoloured = 1

    # -- queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def k(self) -> int:
        return self.config.k

    def vertices(self) -> range:
        return range(1, self.config.n + 1)

    def is_coloured(self, v: int) -> bool:
        return self.colour[v] != 0

    def uncoloured(self) -> list[int]:
        return [v for v in self.vertices() if not self.colour[v]]

    def lowest_uncoloured(self) -> int | None:
        n = self.config.n
        v = self._low_uncoloured
        while v <= n and self.colour[v]:
            v += 1
        self._low_uncoloured = v
        return v if v <= n else None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def colour_count(self, v: int) -> int:
        """Number of distinct colours on the neighbours of ``v``."""
        return len(self.nbr_colours[v])

    def neighbour_colours(self, v: int) -> frozenset[int]:
        return frozenset(self.nbr_colours[v])

    def edges(self) -> list[Edge]:
        return [(u, v) for u in self.vertices() for v in sorted(self.adj[u]) if u < v]

    def legal_pair(self, u: int, v: int) -> bool:
        if u == v or v in self.adj[u]:
            return False
        cu = self.colour[u]
        return cu == 0 or cu != self.colour[v]

    def legal_pair_count(self) -> int:
        """Unconnected pairs that are not monochromatic.

        Monochromatic pairs are never edges, so the count follows from the
        colour-class sizes alone.
        """
        n = self.config.n
        mono = sum(s * (s - 1) // 2 for s in self.class_size)
        return n * (n - 1) // 2 - self.n_edges - mono

    def copy(self) -> "GameState":
        other = GameState.__new__(GameState)
        other.config = self.config
        other.colour = self.colour[:]
        other.adj = [set(s) for s in self.adj]
        other.nbr_colours = [dict(d) for d in self.nbr_colours]
        other.class_size = self.class_size[:]
        other.n_edges = self.n_edges
        other.n_coloured = self.n_coloured
        other.dead = set(self.dead)
        other.turn = self.turn
        other.round = self.round
        other.painter_turns = self.painter_turns
        other.paints_left = self.paints_left
        other.status = self.status
        other.last_build = self.last_build
        other.last_paints = list(self.last_paints)
        other._low_uncoloured = self._low_uncoloured
        return other

    def digest(self) -> str:
        """SHA-256 over the colouring and the sorted edge list."""
        h = hashlib.sha256()
        h.update(",".join(map(str, self.colour[1:])).encode())
        h.update(b"|")
        h.update(";".join(f"{u}-{v}" for u, v in self.edges()).encode())
        return h.hexdigest()

    # -- low-level mutation (no turn bookkeeping) -------------------------

    def _set_colour(self, v: int, c: int) -> None:
        self.colour[v] = c
        self.n_coloured += 1
        self.class_size[c] += 1
        k = self.config.k
        for u in self.adj[v]:
            counts = self.nbr_colours[u]
            if c in counts:
                counts[c] += 1
            else:
                counts[c] = 1
                if not self.colour[u] and len(counts) == k:
                    self.dead.add(u)

    def _add_edge(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.n_edges += 1
        k = self.config.k
        for a, b in ((u, v), (v, u)):
            c = self.colour[b]
            if c:
                counts = self.nbr_colours[a]
                if c in counts:
                    counts[c] += 1
                else:
                    counts[c] = 1
                    if not self.colour[a] and len(counts) == k:
                        self.dead.add(a)

    def _refresh_status(self) -> Status:
        if self.n_coloured == self.config.n:
            self.status = Status.PAINTER_WIN
        elif self.dead:
            self.status = Status.BUILDER_WIN
        return self.status

    @classmethod
    def from_position(cls, config: GameConfig, edges: Iterable[Edge] = (),
                      colours: dict[int, int] | None = None,
                      turn: Turn = Turn.PAINTER) -> "GameState":
        """Set up an arbitrary proper position, e.g. for synthetic experiments."""
        state = cls(config)
        for u, v in edges:
            state._check_vertex(u)
            state._check_vertex(v)
            if u == v or state.has_edge(u, v):
                raise IllegalMoveError(f"bad edge {(u, v)}", "edge")
            state._add_edge(u, v)
        for v, c in sorted((colours or {}).items()):
            state._check_vertex(v)
            if not 1 <= c <= config.k or c in state.nbr_colours[v] or state.colour[v]:
                raise IllegalMoveError(f"cannot colour {v} with {c}", "colour")
            state._set_colour(v, c)
        state.turn = turn
        state._refresh_status()
        return state

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.config.n:
            raise IllegalMoveError(f"vertex {v!r} outside 1..{self.config.n}", "vertex")

    def __repr__(self):
        return (f"GameState(n={self.n}, k={self.k}, edges={self.n_edges}, "
                f"coloured={self.n_coloured}, turn={self.turn.value}, status={self.status.value})")


def new_game(config: GameConfig) -> GameState:
    """Empty graph, nothing coloured, Painter to move."""
    if not isinstance(config, GameConfig):
        config = GameConfig(*config)
    return GameState(config)


def legal_colours(state: GameState, v: int) -> set[int]:
    state._check_vertex(v)
    if state.colour[v]:
        raise ValueError(f"vertex {v} is already coloured")
    used = state.nbr_colours[v]
    return {c for c in range(1, state.config.k + 1) if c not in used}


def smallest_legal_colour(state: GameState, v: int) -> int | None:
    used = state.nbr_colours[v]
    for c in range(1, state.config.k + 1):
        if c not in used:
            return c
    return None


def dead_vertices(state: GameState) -> set[int]:
    return set(state.dead)


def dead_vertices_from_scratch(state: GameState) -> set[int]:
    """Recompute dead vertices directly from colours and adjacency."""
    k = state.config.k
    out = set()
    for v in state.vertices():
        if state.colour[v]:
            continue
        seen = {state.colour[u] for u in state.adj[v]} - {0}
        if len(seen) == k:
            out.add(v)
    return out


def status(state: GameState) -> Status:
    return state.status


def apply_paint(state: GameState, v: int, c: int) -> GameState:
    if state.status is not Status.ONGOING:
        raise IllegalMoveError("game is over", "game-over")
    if state.turn is not Turn.PAINTER:
        raise IllegalMoveError("it is not Painter's turn", "turn")
    state._check_vertex(v)
    if state.colour[v]:
        raise IllegalMoveError(f"vertex {v} is already coloured", "recolour")
    if not isinstance(c, int) or not 1 <= c <= state.config.k:
        raise IllegalMoveError(f"colour {c!r} outside 1..{state.config.k}", "colour-range")
    if c in state.nbr_colours[v]:
        raise IllegalMoveError(f"vertex {v} has a neighbour of colour {c}", "proper-colouring")
    if state.paints_left == state.config.p:
        state.last_paints = []
    state._set_colour(v, c)
    state.last_paints.append(Paint(v, c))
    state.paints_left -= 1
    if state._refresh_status() is Status.ONGOING and (
            state.paints_left == 0 or state.n_coloured == state.config.n):
        state.turn = Turn.BUILDER
    return state


def apply_build(state: GameState, edges: Iterable[Edge]) -> GameState:
    """Add Builder's edges for this turn.

    The turn must carry exactly ``min(b, legal pairs)`` edges; an empty list
    is a pass and is accepted only when no legal pair exists.
    """
    if state.status is not Status.ONGOING:
        raise IllegalMoveError("game is over", "game-over")
    if state.turn is not Turn.BUILDER:
        raise IllegalMoveError("it is not Builder's turn", "turn")
    chosen: list[Edge] = []
    seen = set()
    for e in edges:
        u, v = e
        state._check_vertex(u)
        state._check_vertex(v)
        if u == v:
            raise IllegalMoveError(f"self-loop at {u}", "self-loop")
        e = norm_edge(u, v)
        if e in seen or state.has_edge(u, v):
            raise IllegalMoveError(f"edge {e} already present", "duplicate-edge")
        cu = state.colour[u]
        if cu and cu == state.colour[v]:
            raise IllegalMoveError(f"edge {e} joins two vertices of colour {cu}", "monochromatic-edge")
        seen.add(e)
        chosen.append(e)
    required = min(state.config.b, state.legal_pair_count())
    if len(chosen) != required:
        raise IllegalMoveError(
            f"Builder must add {required} edge(s), got {len(chosen)}", "edge-count")
    for u, v in chosen:
        state._add_edge(u, v)
    state.last_build = tuple(chosen)
    state.round += 1
    if state._refresh_status() is Status.ONGOING:
        state.turn = Turn.PAINTER
        state.paints_left = state.config.p
        state.painter_turns += 1
    return state


def apply_forfeit(state: GameState) -> GameState:
    """Painter gives up on her turn; the game goes to Builder."""
    if state.status is not Status.ONGOING:
        raise IllegalMoveError("game is over", "game-over")
    if state.turn is not Turn.PAINTER:
        raise IllegalMoveError("it is not Painter's turn", "turn")
    state.status = Status.BUILDER_WIN
    return state
