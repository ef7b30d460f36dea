"""Acceptance suite: one test per criterion; the terminal summary prints a
pass/fail line for each."""

import itertools
import math

import pytest

from helpers import level_position
from pbgame import Driver, GameConfig, Status, make_builder, make_painter, play_game
from pbgame.builders import BUILDERS, EscalationState, escalate_step
from pbgame.certificates import biased_lower_bound, clique_depth
from pbgame.harness import ExperimentSpec, binomial_gate, simulate_batch
from pbgame.painters import PAINTERS
from pbgame.solver import brute_force_winner, k_min_exact, solve_game, solve_table
from pbgame.transcript import TranscriptRecorder, read_transcript, record, replay, replay_verify
from test_builders import RandomLegalPainter, _independent_postconditions


def _line(text):
    print(text)


def _recorded(config, painter, builder, ps=0, bs=0):
    rec = TranscriptRecorder()
    res = play_game(config, painter if not isinstance(painter, str) else make_painter(painter, ps),
                    make_builder(builder, bs), rec)
    return res, rec.transcript


def test_criterion_01_exact_values_and_table():
    assert k_min_exact(2, 1, 1) == 2
    assert solve_game(GameConfig(2, 1)).winner is brute_force_winner(GameConfig(2, 1)) is Status.BUILDER_WIN
    assert solve_game(GameConfig(2, 2)).winner is brute_force_winner(GameConfig(2, 2)) is Status.PAINTER_WIN
    assert solve_game(GameConfig(3, 2)).winner is Status.PAINTER_WIN
    assert brute_force_winner(GameConfig(3, 2)) is Status.PAINTER_WIN
    import time
    t0 = time.perf_counter()
    rows = solve_table(5, 4)
    elapsed = time.perf_counter() - t0
    assert elapsed < 300
    for n, p, b, k, winner in rows:
        if n <= 4:
            assert brute_force_winner(GameConfig(n, k, p, b)).value == winner
    _line(f"table n<=5, k<=4 in {elapsed:.2f}s: {rows}")


def test_criterion_02_log_upper_bound_on_solved_boards():
    for n in range(2, 7):
        km = k_min_exact(n)
        assert km <= math.floor(math.log2(n)) + 1, (n, km)
        _line(f"n={n}: k_min={km} <= {math.floor(math.log2(n)) + 1}")


@pytest.mark.parametrize("builder", ["logarithmic", "random"])
def test_criterion_03_random_greedy_loss_rate(builder):
    batch = simulate_batch(ExperimentSpec(n=[16], k=[5], painter="random_greedy", builder=builder,
                                          trials=10_000, seed=2024))
    row = batch.rows[0]
    assert row.errors == 0 and row.audit_pass == row.trials
    gate = binomial_gate(row.builder_wins, row.trials, 16 * 0.5 ** 5)
    _line(f"vs {builder}: {gate.line()}")
    assert gate.passed


def test_criterion_04_waiting_room_certificate():
    games = 0
    for n, k, painter, seed in itertools.product((60, 100, 500), (2, 3), sorted(PAINTERS), range(100)):
        res, t = _recorded(GameConfig(n, k), painter, "logarithmic", seed, seed)
        report = replay_verify(t, ["waiting_room", "proper"])
        check = report.checks["waiting_room"]
        assert check.evaluations == 1 and check.passed, (n, k, painter, seed, report.summary())
        note = next(r for r in t.records if r["type"] == "note" and r["kind"] == "waiting_room")
        assert note["data"]["builder_moves"] <= 0.2 * n
        games += 1
    _line(f"{games} games, all certified")


def test_criterion_05_escalation_postconditions():
    steps = 0
    # synthetic large-V_t positions, every branch, several Painters
    setups = [(5, 1, 1500, [(1,), (1, 2)], 0), (5, 1, 1500, [(1,)], 3000), (3, 0, 2000, [()], 3000),
              (5, 1, 1500, "all", 3000), (6, 2, 1500, "all", 3000), (4, 1, 1200, "all", 500)]
    branches = set()
    for (k, t, size, classes, spares), painter in itertools.product(
            setups, ["random_greedy", "biased_weighted", "first_fit", "random_legal"]):
        for seed in range(2):
            s, room, V = level_position(k, t, size, classes, spares)
            agent = RandomLegalPainter(seed) if painter == "random_legal" else make_painter(painter, seed)
            out = escalate_step(s, EscalationState(t, V), room, Driver(s, agent))
            if out is None:
                continue
            _independent_postconditions(s, out.V, t + 1, size, room)
            branches.add(out.branch)
            steps += 1
    assert {"direct", "one-coloured", "case1", "case2"} <= branches
    # live games at n = 10^4
    live = 0
    for k, painter in itertools.product((2, 3), sorted(PAINTERS)):
        res, t = _recorded(GameConfig(10_000, k), painter, "logarithmic", 7, 7)
        report = replay_verify(t, ["escalation", "waiting_room"])
        assert report.passed, report.summary()
        assert not any(r["type"] == "note" and r["kind"] == "escalation_failed" for r in t.records)
        live += report.checks["escalation"].evaluations
    assert live > 0
    _line(f"{steps} synthetic steps over branches {sorted(branches)}; {live} live steps")


def test_criterion_06_bipartite_and_one_colour():
    audited = 0
    grid = itertools.product((5, 16, 60, 150, 600), (2, 3, 4), sorted(PAINTERS), range(5))
    for n, k, painter, seed in grid:
        p = 2 if painter == "two_for_one" and seed % 2 else 1
        _, t = _recorded(GameConfig(n, k, p, 1), painter, "logarithmic", seed, seed)
        report = replay_verify(t, ["bipartite", "proper", "digest"])
        assert report.passed, (n, k, painter, seed, report.summary())
        audited += 1
    for n in (3000, 10_000):
        _, t = _recorded(GameConfig(n, 3), "random_greedy", "logarithmic", n, n)
        assert replay_verify(t, ["bipartite"]).passed
        audited += 1
    wins = 0
    for n, painter, seed in itertools.product(range(3, 41), sorted(PAINTERS), range(3)):
        res, t = _recorded(GameConfig(n, 1), painter, "logarithmic", seed, seed)
        assert res.status is Status.BUILDER_WIN
        assert replay_verify(t, ["bipartite"]).passed
        wins += 1
    _line(f"{audited} transcripts bipartite at every move; k=1 Builder won {wins}/{wins}")


def test_criterion_07_clique_certificate():
    cells = 0
    for n, b, painter in itertools.product((10, 50, 200, 1000), (2, 3, 5), sorted(PAINTERS)):
        t_depth = clique_depth(n, b)
        assert t_depth + 1 > biased_lower_bound(n, b)
        for seed in range(2):
            _, tr = _recorded(GameConfig(n, n, 1, b), painter, "biased_clique", seed, seed)
            report = replay_verify(tr, ["clique", "proper"])
            assert report.passed, (n, b, painter, report.summary())
            final = [r for r in tr.records if r["type"] == "note" and r["kind"] == "clique"]
            assert len(final) == 1 and len(set(final[0]["data"]["vertices"])) == t_depth + 1
            # edge by edge from the transcript itself
            edges = {tuple(sorted(e)) for r in tr.records if r["type"] == "build" for e in r["edges"]}
            verts = final[0]["data"]["vertices"]
            assert all(tuple(sorted(e)) in edges for e in itertools.combinations(verts, 2))
        cells += 1
    _line(f"{cells} (n, b, painter) cells, clique size t+1 everywhere")


@pytest.mark.parametrize("b", [2, 3])
@pytest.mark.parametrize("builder", ["biased_clique", "random"])
def test_criterion_08_biased_painter_loss_rate(builder, b):
    n = 100
    k = math.ceil(2 * b * math.log(n))
    batch = simulate_batch(ExperimentSpec(n=[n], k=[k], b=[b], painter="biased_weighted",
                                          builder=builder, trials=5000, seed=77, audit=False))
    row = batch.rows[0]
    assert row.errors == 0 and row.k == k
    gate = binomial_gate(row.builder_wins, row.trials, 1 / n)
    _line(f"b={b} k={k} vs {builder}: {gate.line()}")
    assert gate.passed
    sample = simulate_batch(ExperimentSpec(n=[n], k=[k], b=[b], painter="biased_weighted",
                                           builder=builder, trials=100, seed=77))
    assert sample.rows[0].audit_pass == 100


def test_criterion_09_two_for_one_always_wins():
    games = 0
    for n, builder, seed in itertools.product((10, 100, 1000), sorted(BUILDERS), range(100)):
        res, t = _recorded(GameConfig(n, 2, 2, 1), "two_for_one", builder, seed, seed)
        assert res.status is Status.PAINTER_WIN, (n, builder, seed)
        if seed < 5:
            assert replay_verify(t, ["proper", "digest"]).passed
        games += 1
    _line(f"TwoForOne won {games}/{games}")


def test_criterion_10_replay_determinism(tmp_path):
    import numpy as np
    rng = np.random.default_rng(10)
    for i in range(100):
        painter = sorted(PAINTERS)[rng.integers(len(PAINTERS))]
        builder = sorted(BUILDERS)[rng.integers(len(BUILDERS))]
        n = int(rng.integers(2, 120))
        k = int(rng.integers(1, 8))
        p = 2 if painter == "two_for_one" else int(rng.integers(1, 3))
        b = int(rng.integers(1, 4))
        seed = int(rng.integers(2**62))
        cfg = GameConfig(n, k, p, b)
        res, t = _recorded(cfg, painter, builder, seed, seed + 1)
        path = record(t, tmp_path / f"{i}.jsonl")
        _, t2 = _recorded(cfg, painter, builder, seed, seed + 1)
        assert record(t2, tmp_path / f"{i}b.jsonl").read_bytes() == path.read_bytes()
        loaded = read_transcript(path)
        final = replay(loaded)
        assert final.digest() == loaded.terminal["digest"] == res.digest
        report = replay_verify(path)
        assert report.passed, (cfg, painter, builder, report.summary())
    _line("100 transcripts: byte-identical reruns, digests reproduced, audits clean")
