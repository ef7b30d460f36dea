"""
A seeded batch of games
=======================

The harness runs a grid of cells, each with many trials, writes a summary
CSV plus per-trial JSONL, and audits every transcript.  Rerunning with the
same master seed reproduces the numbers exactly.
"""

import tempfile

from pbgame.harness import ExperimentSpec, binomial_gate, bounds_report, format_bounds, simulate_batch

out = tempfile.mkdtemp(prefix="pbgame-demo-")
spec = ExperimentSpec(n=[16, 64], k=[2, 3], painter="random_greedy", builder="random",
                      trials=500, seed=11, out=out, workers=1)
batch = simulate_batch(spec)
print(batch.table())
print("written to", batch.csv_path, "and", batch.jsonl_path)

# an observed rate against a claimed bound, at about four sigma
gate = binomial_gate(batch.rows[3].builder_wins, batch.rows[3].trials, 0.05)
print("n=64 k=3, Builder win rate below 5%:", gate.line())

again = simulate_batch(spec)
assert [r.builder_wins for r in again.rows] == [r.builder_wins for r in batch.rows]

print(format_bounds(bounds_report(10_000, 3)))
