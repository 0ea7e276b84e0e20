"""Three sensors, three targets, each target seen by two sensors.

The LP optimum is 1.5 (every pair runs for half a unit). HEF with w = 1 drains
the first pair completely and stops at 1.0; w = 0.5 finds the optimum.
"""

from coverlife import CoverageMatrix, GkConfig, Generator, GreedyConfig, exact_optimum, run_gk, run_greedy, total_lifetime, upper_bound

M = CoverageMatrix.from_rows([{0, 1}, {1, 2}, {0, 2}], 3)
b = (1.0, 1.0, 1.0)

print(f"upper bound {upper_bound(M, b):.4f}")
print(f"LP optimum  {exact_optimum(M, b).objective:.4f}")
for gen in Generator:
    for w in (1.0, 0.5, 0.1):
        res = run_greedy(M, b, GreedyConfig(w, gen))
        print(f"{gen.value:>7} w={w:<4} lifetime {total_lifetime(res.schedule):.4f}  covers {[c.members for c in res.schedule.covers]}")
for eps in (0.5, 0.25, 0.1, 0.05):
    print(f"     gk eps={eps:<4} lifetime {total_lifetime(run_gk(M, b, GkConfig(eps)).schedule):.4f}")
