"""
Small programs rarely compress
==============================

Enumerate every program of a given size over two instructions (up to
isomorphism) and count those that decompose along a strictly smaller
algorithm built from a library of short pieces.
"""

from algograph import corpus, glue
from algograph.graph import size
from algograph.succinct import census, census_csv, find_succinct, parse_size_function

# a program that does compress: the glued gcd program
P = glue(corpus.gcd_A_syntax(), corpus.gcd_component_programs())
library = {f"piece{k}": p for k, p in enumerate(corpus.gcd_component_programs().values())}
found = find_succinct(P, library, parse_size_function("n/2"))
print("program size", size(P), "-> algorithm size", size(found.algorithm))

# tiny programs mostly do not
print(census_csv(census(6, parse_size_function("n-1"))), end="")
