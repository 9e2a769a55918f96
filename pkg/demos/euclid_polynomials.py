"""
One algorithm, two Euclidean domains
====================================

gcd_A is written against the symbols of a small theory (add, mult, div,
mod, zero tests). Any structure that satisfies the theory can run it.
"""

from algograph import corpus
from algograph.algorithms import abstract_run
from algograph.logic import check_model
from algograph.structures import gf2_polynomials, naturals, parse_gf2, render_gf2

theory = corpus.euclidean_theory()
for sentence in theory.sentences[:3]:
    print(sentence.name, ":", sentence.text)

# sampled model checking; no counterexample means we may instantiate
print(check_model(naturals(), theory, corpus.NAT_BINDING).summary())
print(check_model(gf2_polynomials(), theory, corpus.GF2_BINDING).summary())

# binary polynomials: gcd(x^3 + 1, x^2 + 1) = x + 1 over GF(2)
poly_gcd = corpus.gcd_A(gf2_polynomials())
a, b = parse_gf2("x^3 + 1"), parse_gf2("x^2 + 1")
out = abstract_run(poly_gcd, {"x": a, "y": b}).outcome
print(render_gf2(out.configuration["x"]))

# a wrong binding is caught before anything runs
bad = dict(corpus.NAT_BINDING, add="mult")
print(check_model(naturals(), theory, bad).summary())
