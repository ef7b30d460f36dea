"""
A first game by hand
====================

Play a few moves of the (p:b) game directly on a GameState, then let two
agents finish a game and look at the result.
"""

from pbgame import GameConfig, Status, apply_build, apply_paint, new_game, play_game
from pbgame import make_builder, make_painter

# a board with 6 vertices and 2 colours; Painter moves first
state = new_game(GameConfig(n=6, k=2))
apply_paint(state, 1, 1)
apply_build(state, [(1, 2)])
print(state.turn, state.status)

# vertex 2 now sees colour 1, so Painter must avoid it there
apply_paint(state, 2, 2)
apply_build(state, [(2, 3)])
apply_paint(state, 4, 1)
apply_build(state, [(3, 4)])

# vertex 3 sees both colours: a dead vertex ends the game for Builder
print(state.status)
assert state.status is Status.BUILDER_WIN

# the same board played out by agents
res = play_game(GameConfig(n=6, k=3), make_painter("random_greedy", 1), make_builder("random", 2))
print(res.status, "after", res.rounds, "Painter turns,", res.edges, "edges")
print("digest", res.digest[:16])
