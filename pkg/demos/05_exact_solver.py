"""
Small boards solved exactly
===========================

Minimax with a canonical-form memo.  For n <= 4 a plain exhaustive search
agrees with it; beyond that only the memoized solver is practical.
"""

import math
import time

from pbgame import GameConfig
from pbgame.solver import brute_force_winner, k_min_exact, solve_game, solve_table

t0 = time.perf_counter()
rows = solve_table(5, 4)
print(f"table n<=5, k<=4 in {time.perf_counter() - t0:.2f}s")
for n, p, b, k, winner in rows:
    print(f"  n={n} k={k}: {winner}")

# cross-check against the independent oracle
for n in range(2, 5):
    for k in range(1, 4):
        cfg = GameConfig(n, k)
        assert solve_game(cfg).winner is brute_force_winner(cfg)

print("smallest winning palette, next to floor(log2 n) + 1")
for n in range(2, 7):
    print(f"  n={n}: {k_min_exact(n)}  vs  {math.floor(math.log2(n)) + 1}")

for p, b in [(1, 2), (2, 1)]:
    print(f"(p:b)=({p}:{b}):", [k_min_exact(n, p, b) for n in range(2, 6)])
