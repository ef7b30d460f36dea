import json
import math

import pytest

from pbgame import ConfigurationError, GameConfig
from pbgame.cli import main
from pbgame.harness import (
    ExperimentSpec,
    binomial_gate,
    bounds_report,
    biased_regime,
    format_bounds,
    sigma_alpha,
    simulate_batch,
    trial_seeds,
)
from pbgame.transcript import read_transcript


def test_batch_deterministic():
    spec = dict(n=[12, 20], k=[3], painter="random_greedy", builder="random", trials=60, seed=9)
    a = simulate_batch(ExperimentSpec(**spec))
    b = simulate_batch(ExperimentSpec(**spec))
    assert a.rows == b.rows
    assert [t.status for t in a.trials] == [t.status for t in b.trials]


def test_seeds_depend_only_on_position():
    cfg = GameConfig(16, 5)
    s1 = trial_seeds(1, cfg, "random_greedy", "random", 3)
    assert s1 == trial_seeds(1, cfg, "random_greedy", "random", 3)
    assert s1 != trial_seeds(1, cfg, "random_greedy", "random", 4)
    assert s1 != trial_seeds(2, cfg, "random_greedy", "random", 3)
    # adding a cell leaves existing cells untouched
    one = simulate_batch(ExperimentSpec(n=[10], k=[3], builder="random", trials=20, seed=4))
    two = simulate_batch(ExperimentSpec(n=[8, 10], k=[3], builder="random", trials=20, seed=4))
    assert one.rows[0] == two.rows[1]


def test_parallel_matches_serial(monkeypatch):
    spec = dict(n=[14], k=[3], builder="logarithmic", trials=24, seed=2)
    serial = simulate_batch(ExperimentSpec(**spec))
    monkeypatch.setenv("PBGAME_WORKERS", "2")
    par = simulate_batch(ExperimentSpec(**spec))
    assert serial.rows == par.rows
    assert [t.painter_seed for t in serial.trials] == [t.painter_seed for t in par.trials]


def test_outputs_and_counts_match_transcripts(tmp_path, monkeypatch):
    monkeypatch.setenv("PBGAME_OUT_DIR", str(tmp_path))
    batch = simulate_batch(ExperimentSpec(n=[10], k=[2, 3], builder="random", trials=15,
                                          retain="all"))
    assert batch.csv_path.exists() and batch.jsonl_path.exists()
    lines = batch.jsonl_path.read_text().splitlines()
    assert len(lines) == 30
    for row in batch.rows:
        wins = {"PainterWin": 0, "BuilderWin": 0}
        for f in (tmp_path / "transcripts").glob(f"n10_k{row.k}_*.jsonl"):
            wins[read_transcript(f).terminal["status"]] += 1
        assert wins == {"PainterWin": row.painter_wins, "BuilderWin": row.builder_wins}
        assert row.audit_pass == row.trials


def test_trial_errors_are_recorded(monkeypatch):
    import pbgame.harness as h

    def boom(*a, **k):
        raise RuntimeError("agent crashed")

    monkeypatch.setattr(h, "play_game", boom)
    batch = simulate_batch(ExperimentSpec(n=[6], k=[2], trials=3))
    assert batch.rows[0].errors == 3
    assert all("agent crashed" in t.error for t in batch.trials)


@pytest.mark.parametrize("bad", [dict(trials=0), dict(painter="nobody"), dict(builder="x"),
                                 dict(n=[1]), dict(retain="some"), dict(constants={"zzz": 1})])
def test_invalid_spec(bad):
    with pytest.raises(ConfigurationError):
        ExperimentSpec(**bad)


def test_spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"n": [30], "k": ["log"], "b": [2], "trials": 2}))
    spec = ExperimentSpec.from_file(path)
    assert spec.cells() == [GameConfig(30, 5, 1, 2)]
    assert ExperimentSpec(n=[100], k=["biased"], b=[2]).cells()[0].k == 19


def test_bounds_examples():
    r = bounds_report(100, 2)
    assert r["biased_upper"] == 19
    assert r["biased_lower"] == pytest.approx(math.log(26))
    assert r["clique_size"] == 6
    assert "outside proven range" in bounds_report(10**6, 1)["unbiased_lower_note"]
    assert bounds_report(10**9, 1)["unbiased_lower_note"] == "valid"
    assert "19" in format_bounds(r)


def test_regimes():
    assert biased_regime(1000, 1).startswith("unbiased")
    assert biased_regime(1000, 5).startswith("Theta(b ln n)")
    assert biased_regime(1000, 500).startswith("Theta(n)")
    assert biased_regime(1000, 80).startswith("Theta(b ln n)")
    assert biased_regime(10**12, 8 * 10**10).startswith("open")


def test_binomial_gate():
    alpha = sigma_alpha(4)
    assert alpha == pytest.approx(3.167e-5, rel=1e-3)
    g = binomial_gate(5000, 10000, 0.5)
    assert g.passed and g.threshold > 5000
    assert not binomial_gate(g.threshold, 10000, 0.5).passed
    assert binomial_gate(g.threshold - 1, 10000, 0.5).passed
    assert binomial_gate(0, 10, 0.01).passed


def test_cli(tmp_path, capsys):
    assert main(["bounds", "--n", "100", "--b", "2"]) == 0
    assert "19" in capsys.readouterr().out
    assert main(["solve", "--max-n", "3", "--max-k", "2"]) == 0
    out = capsys.readouterr().out
    assert "2\t1\t1\t1\tBuilderWin" in out and "3\t1\t1\t2\tPainterWin" in out
    assert main(["simulate", "--n", "12", "--k", "3", "--painter", "first_fit", "--builder",
                 "random", "--trials", "5", "--seed", "1", "--out", str(tmp_path),
                 "--retain", "all"]) == 0
    capsys.readouterr()
    files = sorted((tmp_path / "transcripts").glob("*.jsonl"))
    assert main(["replay", "--file", str(files[0]), "--checks", "proper,digest"]) == 0
    assert main(["verify", str(tmp_path)]) == 0
    assert "5/5 transcripts passed" in capsys.readouterr().out
    assert main(["solve", "--max-n", "9"]) == 2
    assert main(["replay", "--file", str(tmp_path / "nope.jsonl")]) == 2
