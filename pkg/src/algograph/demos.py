"""End-to-end showcases behind ``algograph demo``."""

from __future__ import annotations

import sys

from . import corpus
from .algorithms import abstract_run, single_edge
from .data import Environment
from .glueing import glue, glue_alg, unfold
from .graph import size
from .isomorphism import graph_isomorphic
from .model import tm_model
from .program import Terminated, run
from .representation import boolean_implementation, verify_implementation
from .structures import booleans
from .succinct import census, census_csv, find_succinct, parse_size_function


def demo_booleans(seed: int = 0, out=sys.stdout) -> int:
    print("Turing machine programs for the boolean structure, encoding 0/1 as one cell", file=out)
    report = verify_implementation(tm_model(), booleans(), boolean_implementation(), seed=seed)
    print(report, file=out)
    return 0 if report.passed else 4


def demo_gcd(seed: int = 0, out=sys.stdout) -> int:
    ok = True
    A = corpus.gcd_A()
    tr = abstract_run(A, {"x": 12, "y": 8})
    x = tr.outcome.configuration["x"]
    print(f"gcd_A abstract run on {{x: 12, y: 8}}: x = {x} after {tr.outcome.steps} steps", file=out)
    ok &= x == 4

    P = glue(corpus.gcd_A_syntax(), corpus.gcd_component_programs())
    M = corpus.naturals_xyz_model()
    tr = run(M, P, Environment.of(x=12, y=8, z=0), 100_000)
    x = tr.outcome.configuration["x"]
    print(f"glued program ({len(P.states)} states, {len(P.edges)} edges) on the same input: x = {x}", file=out)
    ok &= x == 4

    phi = {lab: single_edge(lab) for lab in corpus.gcd_A_syntax().labels}
    phi[corpus.EUCLID] = corpus.subtraction_remainder()
    B = glue_alg(corpus.gcd_A_syntax(), phi)
    iso = graph_isomorphic(B, corpus.gcd_B().syntax)
    print(f"gcd_B is gcd_A with the remainder edge glued to the subtraction loop: {iso is not None}", file=out)
    ok &= iso is not None

    lib = {f"component {k}": p for k, p in enumerate(corpus.gcd_component_programs().values())}
    res = find_succinct(P, lib, parse_size_function("n/2"))
    if res:
        print(f"decomposition found: size {size(res.algorithm)} against program size {size(P)}", file=out)
    ok &= bool(res)
    return 0 if ok else 4


def demo_mergesort(seed: int = 0, out=sys.stdout) -> int:
    xs = (5, 3, 8, 1, 9, 2, 7, 4)
    ms = corpus.mergesort()
    u = unfold(ms, "sort", 4)
    tr = abstract_run(u, {"x": xs})
    got = tr.outcome.configuration["x"] if isinstance(tr.outcome, Terminated) else None
    print(f"mergesort unfolded to depth 4: {len(u.syntax.states)} states, {len(u.syntax.edges)} edges", file=out)
    print(f"sorts {list(xs)} to {list(got) if got else got} in {len(tr)} steps", file=out)
    for d in range(4):
        print(f"  depth {d}: {len(unfold(ms, 'sort', d).syntax.states)} states", file=out)
    return 0 if got == tuple(sorted(xs)) else 4


def demo_census(seed: int = 0, out=sys.stdout) -> int:
    rows = census(6, parse_size_function("n-1"))
    out.write(census_csv(rows))
    return 0


DEMOS = {
    "booleans": demo_booleans,
    "gcd": demo_gcd,
    "mergesort": demo_mergesort,
    "census": demo_census,
}
