"""
Unfolding a recursive mergesort
===============================

The mergesort algorithm calls sort on both halves. Unfolding substitutes
the algorithm for its own sort calls a fixed number of times; calls left
over at the bottom are undefined, so a too-shallow unfolding gets stuck.
"""

from algograph import corpus, unfold
from algograph.algorithms import abstract_run

ms = corpus.mergesort()
xs = (9, 4, 7, 1, 8, 2, 6, 3)

for depth in range(5):
    u = unfold(ms, "sort", depth)
    out = abstract_run(u, {"x": xs}, budget=100_000).outcome
    result = out.configuration["x"] if hasattr(out, "configuration") else type(out).__name__
    print(f"depth {depth}: {len(u.syntax.states):4d} states -> {result}")

# the two recursive calls may run in either order
forward = abstract_run(unfold(ms, "sort", 4, "forward"), {"x": xs}).outcome
reverse = abstract_run(unfold(ms, "sort", 4, "reverse"), {"x": xs}).outcome
print(forward.configuration["x"] == reverse.configuration["x"])
