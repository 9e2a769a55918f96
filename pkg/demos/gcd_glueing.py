"""
Two presentations of Euclid's algorithm
=======================================

gcd_A takes remainders in one step; gcd_B subtracts. Glueing a
subtraction loop into gcd_A's remainder edge gives gcd_B back, and glueing
concrete programs into every edge gives a runnable program.
"""

from algograph import corpus, glue, glue_alg, run, single_edge
from algograph.isomorphism import is_isomorphic
from algograph.algorithms import abstract_run
from algograph.data import Environment

A = corpus.gcd_A()
for e in A.syntax.edges:
    print(f"{e.source} --[{e.label}]--> {e.target}")

# run the algorithm directly, each label acting on the variables x and y
out = abstract_run(A, {"x": 84, "y": 36}).outcome
print(out.configuration, "after", out.steps, "steps")

# replace the remainder edge by the subtraction algorithm, keep the rest
phi = {label: single_edge(label) for label in A.labels}
phi[corpus.EUCLID] = corpus.subtraction_remainder()
B = glue_alg(A.syntax, phi)
print("same graph as gcd_B:", is_isomorphic(B, corpus.gcd_B()))

# glue concrete programs over a three-variable machine into gcd_A
P = glue(A.syntax, corpus.gcd_component_programs())
print(len(P.states), "states,", len(P.edges), "edges")
out = run(corpus.naturals_xyz_model(), P, Environment.of(x=84, y=36, z=0), 100_000).outcome
print("gcd(84, 36) =", out.configuration["x"], "after", out.steps, "steps")
