"""
Cliques in the biased game
==========================

With b edges per turn the clique Builder forces a clique on t+1 vertices,
which needs t+1 colours.  Here we compare the forced size with the lower
bound on the palette.
"""

from pbgame import GameConfig, TranscriptRecorder, make_builder, make_painter, play_game
from pbgame.certificates import biased_lower_bound, clique_depth
from pbgame.transcript import replay_verify

for n, b in [(50, 2), (200, 3), (1000, 5)]:
    rec = TranscriptRecorder()
    # a palette of n colours so that Painter cannot lose before the clique is done
    play_game(GameConfig(n, n, 1, b), make_painter("first_fit", 0), make_builder("biased_clique", 0), rec)
    clique = next(r for r in rec.transcript.records if r["type"] == "note" and r["kind"] == "clique")
    size = len(clique["data"]["vertices"])
    ok = replay_verify(rec.transcript, ["clique"]).passed
    print(f"n={n:>5} b={b}: clique of {size} (depth {clique_depth(n, b)}), "
          f"bound {biased_lower_bound(n, b):.2f}, audit {'ok' if ok else 'FAILED'}")
