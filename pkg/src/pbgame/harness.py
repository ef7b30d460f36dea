"""Batch experiments, statistical gates and bound formulas."""

from __future__ import annotations

import csv
import itertools
import json
import logging
import math
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .builders import BUILDERS, BuilderConstants, make_builder
from .certificates import clique_depth
from .core import GameConfig, Status
from .errors import ConfigurationError
from .painters import PAINTERS, make_painter
from .play import play_game
from .transcript import TranscriptRecorder, record, replay_verify

log = logging.getLogger("pbgame.harness")

RETENTION = ("none", "failures", "all")


@dataclass
class ExperimentSpec:
    """A grid of game configurations and the agents to pit against each other.

    Each of ``n``, ``k``, ``p``, ``b`` is a list; the grid is their product.
    ``k`` may also hold the strings ``"log"`` (floor(log2 n) + 1) or
    ``"biased"`` (ceil(2 b ln n)) to tie the palette to the cell.
    """

    n: list = field(default_factory=lambda: [16])
    k: list = field(default_factory=lambda: [5])
    p: list = field(default_factory=lambda: [1])
    b: list = field(default_factory=lambda: [1])
    painter: str = "random_greedy"
    builder: str = "logarithmic"
    trials: int = 100
    seed: int = 0
    audit: bool = True
    retain: str = "none"
    out: str | None = None
    workers: int | None = None
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("n", "k", "p", "b"):
            value = getattr(self, name)
            if not isinstance(value, (list, tuple)):
                setattr(self, name, [value])
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if self.painter not in PAINTERS:
            raise ConfigurationError(f"unknown painter {self.painter!r}")
        if self.builder not in BUILDERS:
            raise ConfigurationError(f"unknown builder {self.builder!r}")
        if self.retain not in RETENTION:
            raise ConfigurationError(f"retain must be one of {RETENTION}")
        try:
            BuilderConstants(**self.constants)
        except TypeError as exc:
            raise ConfigurationError(f"bad builder constants: {exc}") from None
        self.cells()  # validates every configuration

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "ExperimentSpec":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigurationError(f"{path}: {exc}") from None

    def cells(self) -> list[GameConfig]:
        out = []
        for n, k, p, b in itertools.product(self.n, self.k, self.p, self.b):
            out.append(GameConfig(int(n), _resolve_k(k, int(n), int(b)), int(p), int(b)))
        return out


def _resolve_k(k, n: int, b: int) -> int:
    if k == "log":
        return int(math.floor(math.log2(n))) + 1
    if k == "biased":
        return min(math.ceil(2 * b * math.log(n)), n)
    return int(k)


def trial_seeds(master: int, config: GameConfig, painter: str, builder: str,
                trial: int) -> tuple[int, int]:
    """Painter and Builder seeds from the master seed and the trial's position.

    Only the cell coordinates and trial index enter, so adding cells or
    changing the worker count never moves an existing trial's seeds.
    """
    key = (config.n, config.k, config.p, config.b,
           zlib.crc32(painter.encode()), zlib.crc32(builder.encode()), trial)
    words = np.random.SeedSequence(master, spawn_key=key).generate_state(4, np.uint32)
    ps = int(words[0]) << 32 | int(words[1])
    bs = int(words[2]) << 32 | int(words[3])
    return ps, bs


@dataclass
class TrialResult:
    n: int
    k: int
    p: int
    b: int
    painter: str
    builder: str
    trial: int
    painter_seed: int
    builder_seed: int
    status: str = ""
    rounds: int = 0
    forfeit: bool = False
    audit: bool | None = None
    audit_detail: str = ""
    error: str = ""
    transcript: str | None = None


def run_trial(config: GameConfig, painter: str, builder: str, trial: int, master: int,
              constants: dict | None = None, audit: bool = True, retain: str = "none",
              out_dir: str | None = None) -> TrialResult:
    ps, bs = trial_seeds(master, config, painter, builder, trial)
    res = TrialResult(config.n, config.k, config.p, config.b, painter, builder, trial, ps, bs)
    try:
        consts = BuilderConstants(**(constants or {}))
        rec = TranscriptRecorder(seeds={"master": master, "trial": trial})
        need_rec = audit or retain != "none"
        game = play_game(config, make_painter(painter, ps), make_builder(builder, bs, consts),
                         rec if need_rec else None)
        res.status = game.status.value
        res.rounds = game.rounds
        res.forfeit = game.forfeit
        if audit:
            report = replay_verify(rec.transcript)
            res.audit = report.passed
            if not report.passed:
                res.audit_detail = report.summary()
        keep = retain == "all" or (retain == "failures" and res.audit is False)
        if keep and out_dir:
            d = Path(out_dir) / "transcripts"
            d.mkdir(parents=True, exist_ok=True)
            name = f"n{config.n}_k{config.k}_p{config.p}_b{config.b}_{painter}_{builder}_{trial}.jsonl"
            res.transcript = str(record(rec.transcript, d / name))
    except Exception as exc:  # recorded per trial; the batch goes on
        log.exception("trial %d of %s failed", trial, config)
        res.error = f"{type(exc).__name__}: {exc}"
    return res


def _run_chunk(args) -> list[TrialResult]:
    config, spec_dict, trials = args
    return [run_trial(config, spec_dict["painter"], spec_dict["builder"], t, spec_dict["seed"],
                      spec_dict["constants"], spec_dict["audit"], spec_dict["retain"],
                      spec_dict["out"])
            for t in trials]


@dataclass
class CellSummary:
    n: int
    k: int
    p: int
    b: int
    painter: str
    builder: str
    trials: int
    painter_wins: int
    builder_wins: int
    forfeits: int
    errors: int
    mean_rounds: float
    audit_pass: int


@dataclass
class BatchResult:
    rows: list[CellSummary]
    trials: list[TrialResult]
    csv_path: Path | None = None
    jsonl_path: Path | None = None

    def table(self) -> str:
        cols = list(CellSummary.__dataclass_fields__)
        lines = ["\t".join(cols)]
        for r in self.rows:
            d = asdict(r)
            d["mean_rounds"] = f"{r.mean_rounds:.2f}"
            lines.append("\t".join(str(d[c]) for c in cols))
        return "\n".join(lines)


def _summarize(config: GameConfig, spec: ExperimentSpec, results: list[TrialResult]) -> CellSummary:
    done = [r for r in results if not r.error]
    return CellSummary(
        config.n, config.k, config.p, config.b, spec.painter, spec.builder, len(results),
        sum(r.status == Status.PAINTER_WIN.value for r in done),
        sum(r.status == Status.BUILDER_WIN.value for r in done),
        sum(r.forfeit for r in done),
        len(results) - len(done),
        float(np.mean([r.rounds for r in done])) if done else float("nan"),
        sum(bool(r.audit) for r in done),
    )


def _workers(spec: ExperimentSpec) -> int:
    env = os.environ.get("PBGAME_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, spec.workers or 1)


def simulate_batch(spec: ExperimentSpec) -> BatchResult:
    """Run every trial of every cell; deterministic for a fixed master seed."""
    out = os.environ.get("PBGAME_OUT_DIR") or spec.out
    spec_dict = {"painter": spec.painter, "builder": spec.builder, "seed": spec.seed,
                 "constants": spec.constants, "audit": spec.audit, "retain": spec.retain,
                 "out": out}
    workers = _workers(spec)
    rows, all_trials = [], []
    for config in spec.cells():
        if workers == 1:
            results = _run_chunk((config, spec_dict, range(spec.trials)))
        else:
            size = max(1, math.ceil(spec.trials / (4 * workers)))
            chunks = [(config, spec_dict, range(i, min(i + size, spec.trials)))
                      for i in range(0, spec.trials, size)]
            with ProcessPoolExecutor(workers) as pool:
                results = [r for part in pool.map(_run_chunk, chunks) for r in part]
        rows.append(_summarize(config, spec, results))
        all_trials += results
    batch = BatchResult(rows, all_trials)
    if out:
        batch.csv_path, batch.jsonl_path = write_outputs(batch, out)
    return batch


def write_outputs(batch: BatchResult, out_dir: str | os.PathLike) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "summary.csv"
    jsonl_path = out / "trials.jsonl"
    cols = list(CellSummary.__dataclass_fields__)
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        for r in batch.rows:
            w.writerow(asdict(r))
    with open(jsonl_path, "w", encoding="utf-8") as fh:
        for t in batch.trials:
            fh.write(json.dumps(asdict(t), separators=(",", ":")) + "\n")
    return csv_path, jsonl_path


# -- statistics ---------------------------------------------------------------

def sigma_alpha(sigmas: float = 4.0) -> float:
    """One-sided tail mass of a normal beyond ``sigmas`` standard deviations."""
    return float(stats.norm.sf(sigmas))


@dataclass(frozen=True)
class GateResult:
    passed: bool
    events: int
    trials: int
    bound: float
    rate: float
    threshold: int
    p_value: float

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (f"{verdict}: {self.events}/{self.trials} = {self.rate:.4f} vs bound {self.bound:.4g}; "
                f"reject at >= {self.threshold}; p = {self.p_value:.3g}")


def binomial_gate(events: int, trials: int, bound: float, sigmas: float = 4.0) -> GateResult:
    """Exact one-sided binomial test of "event rate <= bound".

    Fails only when ``P(Bin(trials, bound) >= events)`` is below the normal
    ``sigmas``-tail, i.e. the count is implausible under the bound.
    """
    alpha = sigma_alpha(sigmas)
    p_value = float(stats.binom.sf(events - 1, trials, bound)) if events > 0 else 1.0
    # smallest count whose upper tail is below alpha
    threshold = int(stats.binom.isf(alpha, trials, bound)) + 1
    while threshold > 0 and stats.binom.sf(threshold - 2, trials, bound) <= alpha:
        threshold -= 1
    while stats.binom.sf(threshold - 1, trials, bound) > alpha:
        threshold += 1
    return GateResult(p_value > alpha, events, trials, bound, events / trials, threshold, p_value)


# -- bound formulas ------------------------------------------------------------

UNBIASED_LOWER_VALID_N = 10**8


def biased_regime(n: int, b: int, eps: float = 0.1, linear_fraction: float = 0.1) -> str:
    """Which growth regime of k_min(b, n) applies, for reporting only.

    ``eps`` and ``linear_fraction`` stand in for asymptotic conditions
    (b <= n^(1-eps), b = Theta(n)) that no single n can decide.
    """
    if b == 1:
        return "unbiased: Theta(log n)"
    if b >= linear_fraction * n:
        return f"Theta(n) (b >= {linear_fraction:g} n)"
    if b <= n ** (1 - eps):
        return f"Theta(b ln n) (2 <= b <= n^(1-{eps:g}))"
    return "open: b = n^(1-f(n)), f -> 0; only Theta(f b ln n) <= k_min <= Theta(b ln n)"


def bounds_report(n: int, b: int = 1, eps: float = 0.1) -> dict:
    """All closed-form bounds on k_min for board size ``n`` and Builder bias ``b``."""
    if n < 2 or b < 1:
        raise ConfigurationError("need n >= 2 and b >= 1")
    log2n = math.log2(n)
    t = clique_depth(n, b)
    rep = {
        "n": n,
        "b": b,
        "unbiased_lower": 0.01 * log2n,
        "unbiased_lower_note": ("valid" if n > UNBIASED_LOWER_VALID_N
                                else "outside proven range (n <= 10^8)"),
        "unbiased_upper": log2n + 1,
        "unbiased_upper_int": math.floor(log2n) + 1,
        "biased_lower": b / 2 * math.log(n / (2 * b) + 1),
        "biased_upper": min(math.ceil(2 * b * math.log(n)), n),
        "clique_size": t + 1,
        "regime": biased_regime(n, b, eps),
    }
    return rep


def format_bounds(rep: dict) -> str:
    rows = [
        ("unbiased lower 0.01 log2 n", f"{rep['unbiased_lower']:.4f}", rep["unbiased_lower_note"]),
        ("unbiased upper log2 n + 1", f"{rep['unbiased_upper']:.4f}",
         f"integer form {rep['unbiased_upper_int']}"),
        ("biased lower (b/2) ln(n/(2b)+1)", f"{rep['biased_lower']:.4f}", ""),
        ("biased upper min(ceil(2b ln n), n)", str(rep["biased_upper"]), ""),
        ("clique builder forces", str(rep["clique_size"]), "colours (clique size t+1)"),
        ("regime", rep["regime"], ""),
    ]
    width = max(len(r[0]) for r in rows)
    head = f"n = {rep['n']}, b = {rep['b']}"
    return "\n".join([head] + [f"{a:<{width}}  {v}  {note}".rstrip() for a, v, note in rows])
