"""
Booleans on a Turing machine tape
=================================

Encode 0 and 1 as a single tape cell and check the shipped machines
against the abstract boolean operations.
"""

from algograph import parse_tape, run, tm_model
from algograph.representation import boolean_implementation, delta_bool, verify_implementation
from algograph.structures import booleans

tm = tm_model()
encode = delta_bool()

# a pair of booleans sits on the tape with one blank between them
print(encode(1, 0))

# tm_not reads the cell under the head and writes the complement
not_program = boolean_implementation().programs["not"]
trace = run(tm, not_program, parse_tape("^0"))
print(trace.outcome.configuration, "after", trace.outcome.steps, "steps")

# every structural map with a program attached, on every input
print(verify_implementation(tm, booleans(), boolean_implementation()))
