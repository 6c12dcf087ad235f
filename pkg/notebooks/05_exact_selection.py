# %% [markdown]
# Picking one candidate per cluster with the exact branch and bound, checked
# against full enumeration.

# %%
import random
import time

from ilpsumm.ilpselect import SelectionProblem, brute_force, dump_json, solve_exact

p = SelectionProblem([[0.9, 0.5], [0.8]], frozenset({((0, 0), (1, 0))}))
sol = solve_exact(p)
print(sol.chosen, sol.objective)
print(dump_json(p, sol))

# %%
rng = random.Random(0)
worst = 0.0
start = time.perf_counter()
for _ in range(300):
    utils = [[rng.random() for _ in range(rng.randint(1, 6))] for _ in range(rng.randint(1, 6))]
    vs = [(j, i) for j, g in enumerate(utils) for i in range(len(g))]
    conflicts = frozenset((a, b) for a in vs for b in vs if a < b and a[0] != b[0] and rng.random() < 0.3)
    prob = SelectionProblem(utils, conflicts)
    worst = max(worst, abs(solve_exact(prob).objective - brute_force(prob)[0]))
print(f"max gap to brute force: {worst}, {time.perf_counter() - start:.2f} s")
