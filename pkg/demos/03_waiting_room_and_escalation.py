"""
The logarithmic Builder at work
===============================

A long game against the logarithmic Builder.  The transcript carries the
Builder's claims as annotations, and the auditor re-checks each of them on
the replayed position.
"""

from pbgame import GameConfig, TranscriptRecorder, make_builder, make_painter, play_game
from pbgame.transcript import replay_verify

rec = TranscriptRecorder()
res = play_game(GameConfig(n=10_000, k=3), make_painter("random_greedy", 7),
                make_builder("logarithmic", 7), rec)
t = rec.transcript
print(res.status, "in", res.rounds, "Painter turns")

# what the Builder announced along the way
for r in t.records:
    if r["type"] == "note":
        d = r["data"]
        if r["kind"] == "waiting_room":
            print(f"record {r['i']}: room |A|={len(d['A'])} |B|={len(d['B'])} colour {d['colour']}")
        elif r["kind"] == "escalation":
            print(f"record {r['i']}: level {d['t']} reached, |V|={len(d['V'])} via {d['branch']}")
        else:
            print(f"record {r['i']}: {r['kind']}")

# the audit replays every move; the graph stays two-colourable throughout
report = replay_verify(t)
print(report.summary())
