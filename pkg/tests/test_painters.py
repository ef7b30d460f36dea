import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbgame import FORFEIT, GameConfig, Status, Turn, apply_build, apply_paint, make_builder, make_painter, play_game
from pbgame.core import GameState, Paint, new_game
from pbgame.harness import binomial_gate
from pbgame.painters import (
    PAINTERS,
    biased_weighted_move,
    first_fit_move,
    make_rng,
    random_greedy_move,
    two_for_one_move,
)


def test_random_greedy_single_free_endpoint():
    s = GameState.from_position(GameConfig(4, 3), [(1, 2)], {1: 2})
    assert random_greedy_move(s, (1, 2), make_rng(0)) == Paint(2, 1)


def test_random_greedy_coin_is_seeded():
    s = GameState.from_position(GameConfig(4, 3), [(1, 2)], {})
    a = random_greedy_move(s, (1, 2), make_rng(7))
    b = random_greedy_move(s, (1, 2), make_rng(7))
    assert a == b and a.vertex in (1, 2) and a.colour == 1
    picks = [random_greedy_move(s, (1, 2), make_rng(i)).vertex for i in range(400)]
    assert 140 < picks.count(1) < 260


def test_random_greedy_both_coloured_takes_lowest():
    s = GameState.from_position(GameConfig(8, 3), [(1, 2), (3, 1)], {1: 1, 2: 2, 4: 1, 5: 1, 6: 1, 8: 1})
    assert random_greedy_move(s, (1, 2), make_rng(0)) == Paint(3, 2)
    assert random_greedy_move(s, None, make_rng(0)).vertex == 3


def test_random_greedy_forfeits_on_dead_vertex():
    s = GameState.from_position(GameConfig(3, 1), [(1, 2)], {1: 1})
    assert random_greedy_move(s, (1, 2), make_rng(0)) is FORFEIT


def test_biased_weighted_path_probabilities():
    # path x-y-z from b = 2 edges: 1/4, 1/2, 1/4
    s = GameState.from_position(GameConfig(6, 3, 1, 2), [(1, 2), (2, 3)], {})
    rng = make_rng(11)
    draws = [biased_weighted_move(s, [(1, 2), (2, 3)], rng).vertex for _ in range(8000)]
    for v, p in ((1, 0.25), (2, 0.5), (3, 0.25)):
        hits = draws.count(v)
        sd = math.sqrt(8000 * p * (1 - p))
        assert abs(hits - 8000 * p) < 4 * sd


def test_biased_weighted_single_edge_is_a_coin():
    s = GameState.from_position(GameConfig(4, 2), [(3, 4)], {})
    rng = make_rng(3)
    draws = [biased_weighted_move(s, [(3, 4)], rng).vertex for _ in range(2000)]
    assert abs(draws.count(3) - 1000) < 4 * math.sqrt(500)


def test_biased_weighted_redirects_coloured_mass():
    s = GameState.from_position(GameConfig(6, 3, 1, 2), [(3, 4), (4, 5)], {3: 1, 4: 2, 5: 1, 1: 3})
    assert biased_weighted_move(s, [(3, 4), (4, 5)], make_rng(0)) == Paint(2, 1)


def test_biased_weighted_redirect_keeps_lower_bound():
    # endpoints 2 (coloured) and 3: vertex 3 keeps its 1/2, vertex 1 gets the rest
    s = GameState.from_position(GameConfig(4, 3), [(2, 3)], {2: 1})
    rng = make_rng(5)
    draws = [biased_weighted_move(s, [(2, 3)], rng).vertex for _ in range(4000)]
    assert set(draws) == {1, 3}
    assert abs(draws.count(3) - 2000) < 4 * math.sqrt(1000)


def test_two_for_one_examples():
    s = GameState.from_position(GameConfig(6, 2, 2, 1), [(3, 5)], {})
    assert two_for_one_move(s, (3, 5)) == [Paint(3, 1), Paint(5, 2)]
    s = GameState.from_position(GameConfig(6, 2, 2, 1), [(3, 5)], {3: 1})
    assert two_for_one_move(s, (3, 5)) == [Paint(5, 2), Paint(1, 1)]
    s = GameState.from_position(GameConfig(6, 2, 2, 1), [(3, 5)], {1: 1, 2: 2, 3: 1, 4: 2, 5: 2})
    assert two_for_one_move(s, (3, 5)) == [Paint(6, 1)]


def test_two_for_one_lone_vertex_wins():
    s = GameState.from_position(GameConfig(3, 2, 2, 1), [(1, 2)], {1: 1, 2: 2})
    p = make_painter("two_for_one")
    apply_paint(s, *p.paint(s))
    assert s.status is Status.PAINTER_WIN


def test_first_fit_examples():
    assert first_fit_move(new_game(GameConfig(3, 2))) == Paint(1, 1)
    s = GameState.from_position(GameConfig(5, 2), [(1, 4), (1, 5), (2, 5)], {4: 1, 5: 2})
    assert s.status is Status.BUILDER_WIN
    # first-fit skips the dead vertex 1
    assert first_fit_move(s) == Paint(2, 1)
    s = GameState.from_position(GameConfig(3, 1), [(1, 3), (2, 3)], {3: 1})
    assert first_fit_move(s) is FORFEIT


class UniformBuilder:
    """Adversarial test Builder: uniformly random legal edges."""

    name = "uniform"

    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)
        self.pending_notes = []

    def build(self, state):
        from pbgame.builders import random_builder_move
        return random_builder_move(state, self.rng)

    def drain_notes(self):
        return []

    def describe(self):
        return {"agent": self.name}


@given(st.sampled_from(sorted(PAINTERS)), st.integers(2, 30), st.integers(1, 5),
       st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31))
def test_painters_always_legal(name, n, k, p, b, seed):
    # play_game applies every paint through the engine's validation
    res = play_game(GameConfig(n, k, p, b), make_painter(name, seed), UniformBuilder(seed))
    assert res.status in (Status.PAINTER_WIN, Status.BUILDER_WIN)
    assert not res.forfeit


@given(st.sampled_from(sorted(PAINTERS)), st.integers(0, 2**63 - 1))
def test_painters_deterministic(name, seed):
    cfg = GameConfig(20, 3, 1, 2)
    a = play_game(cfg, make_painter(name, seed), make_builder("random", 5))
    b = play_game(cfg, make_painter(name, seed), make_builder("random", 5))
    assert a.digest == b.digest


@given(st.integers(2, 60), st.integers(0, 2**31), st.sampled_from(["random", "logarithmic", "biased_clique"]))
def test_two_for_one_postcondition(n, seed, builder):
    cfg = GameConfig(n, 2, 2, 1)
    s = new_game(cfg)
    painter = make_painter("two_for_one", seed)
    bld = make_builder(builder, seed)
    while s.status is Status.ONGOING:
        if s.turn is Turn.PAINTER:
            apply_paint(s, *painter.paint(s))
            if s.turn is Turn.BUILDER or s.status is not Status.ONGOING:
                assert all(s.colour[u] and s.colour[v] for u, v in s.edges())
        else:
            apply_build(s, bld.build(s))
            bld.drain_notes()
    assert s.status is Status.PAINTER_WIN


@pytest.mark.parametrize("builder", ["logarithmic", "random"])
def test_event_av_frequency(builder):
    # A_v: vertex v reaches degree floor(log2 n)+1 while uncoloured; one
    # tracked vertex per game keeps the trials independent
    n = 16
    d = int(math.log2(n)) + 1
    hits = 0
    trials = 800
    for seed in range(trials):
        target = seed % n + 1
        s = new_game(GameConfig(n, d))
        painter = make_painter("random_greedy", seed)
        bld = make_builder(builder, seed)
        hit = False
        while s.status is Status.ONGOING:
            if s.turn is Turn.PAINTER:
                apply_paint(s, *painter.paint(s))
            else:
                apply_build(s, bld.build(s))
                bld.drain_notes()
                hit |= not s.colour[target] and s.degree(target) >= d
        hits += hit
    gate = binomial_gate(hits, trials, 0.5 ** d)
    assert gate.passed, gate.line()
