"""Command-line front end.

Every reference to a program, algorithm, theory or labelling may be a
built-in name (see ``algograph list``) or a path to a file.

Exit codes: 0 success (or Terminated), 1 usage or input error, 2 Stuck,
3 OutOfBudget, 4 a check that ran and failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import corpus, formats
from .algorithms import LogicalAlgorithm, SemanticAlgorithm, abstract_run, as_syntactic, instantiate
from .data import parse_environment
from .errors import AlgographError, ModelCheckFailed, ParseError
from .glueing import check_implements, glue, unfold
from .graph import size, to_dot
from .logic import check_model
from .model import ModelOfComputation, tm_model
from .program import Program, Stuck, Terminated, run
from .representation import (
    BUILTIN_INTERPRETATIONS,
    ImplementationMap,
    boolean_implementation,
    builtin_tm_programs,
    verify_implementation,
)
from .structures import BUILTIN_STRUCTURES
from .succinct import census, census_csv, find_succinct, is_f_succinct, parse_size_function

EXIT_OK, EXIT_USAGE, EXIT_STUCK, EXIT_BUDGET, EXIT_FAILED = 0, 1, 2, 3, 4


class UsageError(AlgographError):
    pass


class Workspace:
    """Registries of built-in objects plus whatever files are loaded."""

    def __init__(self):
        self.models = {"tm": tm_model, "naturals[x,y,z]": corpus.naturals_xyz_model}
        self.structures = dict(BUILTIN_STRUCTURES)
        self.interpretations = dict(BUILTIN_INTERPRETATIONS)
        self.theories = {"euclidean": corpus.euclidean_theory}
        self.bindings = {"naturals": corpus.NAT_BINDING, "gf2poly": corpus.GF2_BINDING}
        programs = {k: (lambda p=p: p) for k, p in builtin_tm_programs().items()}
        gcd_names = {
            corpus.NONZERO: "gcd_nonzero",
            corpus.ISZERO: "gcd_iszero",
            corpus.RETURN: "gcd_return",
            corpus.EUCLID: "gcd_remainder",
        }
        for lab, p in corpus.gcd_component_programs().items():
            programs[gcd_names[lab]] = lambda p=p: p
        programs["gcd_glued"] = lambda: glue(corpus.gcd_A_syntax(), corpus.gcd_component_programs())
        self.programs = programs
        self.algorithms = {
            "gcd_A": corpus.gcd_A_logical,
            "gcd_A_nat": corpus.gcd_A,
            "gcd_A_syntax": corpus.gcd_A_syntax,
            "gcd_B": corpus.gcd_B,
            "subtraction_remainder": corpus.subtraction_remainder,
            "mergesort": corpus.mergesort,
            "mergesort_ab": lambda: corpus.mergesort("ab"),
            "mergesort_ba": lambda: corpus.mergesort("ba"),
            "merge": corpus.merge,
            "mergesort_outer": corpus.mergesort_outer,
        }
        # labellings shipped with the corpus: name -> (targets, model, label -> object)
        self.labellings = {
            "gcd_components": lambda: ("programs", "naturals[x,y,z]", corpus.gcd_component_programs()),
        }
        self._structure_cache: dict = {}

    # -- lookups -------------------------------------------------------------

    def model(self, name: str) -> ModelOfComputation:
        if name not in self.models:
            raise UsageError(f"unknown model {name!r}; known: {', '.join(self.models)}")
        return self.models[name]()

    def structure(self, name: str):
        if name not in self.structures:
            raise UsageError(f"unknown structure {name!r}; known: {', '.join(self.structures)}")
        if name not in self._structure_cache:
            self._structure_cache[name] = self.structures[name]()
        return self._structure_cache[name]

    def theory(self, ref: str, base: Path | None = None):
        if ref in self.theories:
            return self.theories[ref]()
        path = _resolve(ref, base)
        return formats.theory_from_text(path.read_text(encoding="utf-8"), path.stem)

    def program(self, ref: str, base: Path | None = None) -> Program:
        if ref in self.programs:
            return self.programs[ref]()
        return formats.program_from_dict(formats.read_json(_resolve(ref, base)))

    def algorithm(self, ref: str, base: Path | None = None):
        if ref in self.algorithms:
            return self.algorithms[ref]()
        path = _resolve(ref, base)
        return formats.algorithm_from_dict(
            formats.read_json(path), self.structure, lambda t: self.theory(t, path.parent)
        )

    def binding(self, ref: str, base: Path | None = None) -> dict:
        if ref in self.bindings:
            return dict(self.bindings[ref])
        return dict(formats.read_json(_resolve(ref, base)))

    def labelling(self, ref: str):
        if ref in self.labellings:
            return self.labellings[ref]()
        path = _resolve(ref, None)
        d = formats.read_json(path)
        targets = d.get("targets", "programs")
        if targets not in ("programs", "algorithms"):
            raise ParseError(f"{ref}: targets must be 'programs' or 'algorithms'")
        load = self.program if targets == "programs" else self.algorithm
        objs = {lab: load(f, path.parent) for lab, f in d["map"].items()}
        return targets, d.get("model"), objs

    def anything(self, ref: str):
        """A program or an algorithm, by name or file."""
        if ref in self.programs:
            return self.programs[ref]()
        if ref in self.algorithms:
            return self.algorithms[ref]()
        path = _resolve(ref, None)
        d = formats.read_json(path)
        if d.get("model") == "algorithm" or "labels" in d:
            return self.algorithm(ref)
        return formats.program_from_dict(d)


def _resolve(ref: str, base: Path | None) -> Path:
    p = Path(ref)
    if not p.is_absolute() and base is not None:
        p = base / p
    if not p.exists():
        raise UsageError(f"no built-in named {ref!r} and no such file")
    return p


# ---------------------------------------------------------------------------
# output helpers


def _emit(text: str, out: str | None) -> None:
    if out:
        formats.write_text(out, text)
    else:
        sys.stdout.write(text)


def _outcome_code(outcome) -> int:
    if isinstance(outcome, Terminated):
        return EXIT_OK
    if isinstance(outcome, Stuck):
        return EXIT_STUCK
    return EXIT_BUDGET


def _describe(model, outcome) -> str:
    if isinstance(outcome, Terminated):
        return f"Terminated after {outcome.steps} steps\nfinal: {model.render(outcome.configuration)}"
    if isinstance(outcome, Stuck):
        s = outcome.state
        return f"Stuck at control state {s.control}\nconfiguration: {model.render(s.configuration)}"
    return f"OutOfBudget after {outcome.budget} steps"


def _visited_dot(program, trace) -> str:
    from .graph import ControlGraph

    seen = dict.fromkeys(s.control for s in trace.states)
    edges = tuple(dict.fromkeys(program.edges[i] for i in trace.edges))
    states = tuple(seen) + tuple(s for s in (program.terminal,) if s not in seen)
    return to_dot(ControlGraph(states, edges, program.initial, program.terminal), "visited")


# ---------------------------------------------------------------------------
# commands


def cmd_run(args, ws: Workspace) -> int:
    obj = ws.anything(args.target)
    if isinstance(obj, LogicalAlgorithm):
        raise UsageError("instantiate a logical algorithm before running it")
    if isinstance(obj, SemanticAlgorithm):
        model = obj.induced()
        program = obj.program_view()
        env = parse_environment(args.input or "{}", obj.structure.domain)
        trace = abstract_run(obj, env, args.budget)
    elif isinstance(obj, Program):
        model = ws.model(args.model or obj.model)
        x0 = model.parse(args.input if args.input is not None else "*")
        program = obj
        trace = run(model, program, x0, args.budget)
    else:
        raise UsageError("a bare syntactic algorithm has no semantics to run")
    if args.json:
        print(json.dumps({"outcome": type(trace.outcome).__name__, "steps": len(trace),
                          "final": model.render(trace.final.configuration),
                          "control": trace.final.control}, ensure_ascii=False))
    else:
        print(_describe(model, trace.outcome))
    if args.dot:
        formats.write_text(args.dot, _visited_dot(program, trace))
    return _outcome_code(trace.outcome)


def cmd_glue(args, ws: Workspace) -> int:
    A = ws.algorithm(args.algorithm)
    targets, model, phi = ws.labelling(args.labelling)
    if targets == "programs":
        P = glue(as_syntactic(A), phi, model)
        _emit(formats.dumps(formats.program_to_dict(P)), args.out)
    else:
        from .glueing import glue_alg

        _emit(formats.dumps(formats.algorithm_to_dict(glue_alg(as_syntactic(A), phi))), args.out)
    return EXIT_OK


def cmd_check_implements(args, ws: Workspace) -> int:
    P = ws.program(args.program)
    A = ws.algorithm(args.algorithm)
    _, _, phi = ws.labelling(args.labelling)
    v = check_implements(P, A, phi)
    if args.json:
        print(json.dumps({"implements": v.holds, "witness": v.witness, "reason": v.reason}, ensure_ascii=False))
    else:
        print("implements: yes" if v else f"implements: no ({v.reason})")
        if v.witness:
            for a, b in v.witness.items():
                print(f"  {a} -> {b}")
    return EXIT_OK if v else EXIT_FAILED


def cmd_verify_impl(args, ws: Workspace) -> int:
    if args.manifest:
        path = _resolve(args.manifest, None)
        d = formats.read_json(path)
        interp = ws.interpretations[d["interpretation"]]()
        structure = ws.structure(d["structure"])
        progs = {m: ws.program(f, path.parent) for m, f in d["programs"].items()}
        impl = ImplementationMap(interp, progs)
        default = next(iter(progs.values())).model if progs else "tm"
        model = ws.model(args.model or default)
    else:
        impl = boolean_implementation()
        structure = ws.structure("booleans")
        model = tm_model()
    report = verify_implementation(model, structure, impl, args.samples, args.budget, args.seed)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_check_model(args, ws: Workspace) -> int:
    S = ws.structure(args.structure)
    T = ws.theory(args.theory)
    binding = ws.binding(args.binding or args.structure)
    report = check_model(S, T, binding, args.samples, args.seed)
    print(report)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_instantiate(args, ws: Workspace) -> int:
    L = ws.algorithm(args.algorithm)
    if not isinstance(L, LogicalAlgorithm):
        raise UsageError(f"{args.algorithm} is not a logically specified algorithm")
    S = ws.structure(args.structure)
    try:
        alg = instantiate(L, S, ws.binding(args.binding or args.structure), args.samples, args.seed)
    except ModelCheckFailed as exc:
        print(exc.report)
        print(exc.report.summary())
        return EXIT_FAILED
    _emit(formats.dumps(formats.algorithm_to_dict(alg)), args.out)
    return EXIT_OK


def cmd_unfold(args, ws: Workspace) -> int:
    alg = ws.algorithm(args.algorithm)
    u = unfold(alg, args.label, args.depth, args.order)
    g = as_syntactic(u)
    if args.input is not None:
        if not isinstance(u, SemanticAlgorithm):
            raise UsageError("only semantic algorithms can be run")
        trace = abstract_run(u, parse_environment(args.input, u.structure.domain), args.budget)
        print(_describe(u.induced(), trace.outcome))
        return _outcome_code(trace.outcome)
    print(f"depth {args.depth}: {len(g.states)} states, {len(g.edges)} edges")
    if args.out:
        # composite call wiring is not serializable; write the labelled graph
        formats.write_text(args.out, formats.dumps(formats.algorithm_to_dict(g)))
    return EXIT_OK


def cmd_dot(args, ws: Workspace) -> int:
    obj = ws.anything(args.target)
    _emit(to_dot(obj, Path(args.target).stem), args.out)
    return EXIT_OK


def cmd_succinct_check(args, ws: Workspace) -> int:
    P = ws.program(args.program)
    A = ws.algorithm(args.algorithm)
    _, _, phi = ws.labelling(args.labelling)
    v = is_f_succinct(P, A, phi, parse_size_function(args.f))
    print(f"implements: {'yes' if v.implements else 'no'}")
    print(f"size(A) = {v.size_algorithm}, size(P) = {v.size_program}, f(size(P)) = {v.bound:g}")
    print("f-succinct: " + ("yes" if v else "no"))
    return EXIT_OK if v else EXIT_FAILED


def cmd_succinct_find(args, ws: Workspace) -> int:
    P = ws.program(args.program)
    _, _, library = ws.labelling(args.library)
    res = find_succinct(P, library, parse_size_function(args.f), args.budget)
    if not res:
        print("NotFound")
        return EXIT_FAILED
    A = res.algorithm
    print(f"found algorithm of size {size(A)} (program size {size(P)}, bound {res.verdict.bound:g})")
    for e in A.edges:
        print(f"  {e.source} -[{e.label}]-> {e.target}")
    if args.out:
        formats.write_text(args.out, formats.dumps(formats.algorithm_to_dict(A)))
    return EXIT_OK


def cmd_census(args, ws: Workspace) -> int:
    instructions = [s for s in args.instructions.split(",") if s]
    rows = census(args.n, parse_size_function(args.f), instructions, budget=args.max_programs)
    _emit(census_csv(rows), args.out)
    return EXIT_OK


def cmd_list(args, ws: Workspace) -> int:
    for kind in ("models", "structures", "interpretations", "theories", "programs", "algorithms", "labellings"):
        print(f"{kind}: {', '.join(getattr(ws, kind))}")
    return EXIT_OK


def cmd_demo(args, ws: Workspace) -> int:
    from . import demos

    return demos.DEMOS[args.name](seed=args.seed, out=sys.stdout)


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step (default 0)")
    common.add_argument("--budget", type=int, default=100_000, help="step budget (default 100000)")
    common.add_argument("--samples", type=int, default=50, help="sample size for checks (default 50)")
    common.add_argument("--json", action="store_true", help="machine-readable output where supported")

    parser = _Parser(prog="algograph", description="Programs, algorithms and glueings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("run", cmd_run, "run a program or a semantic algorithm")
    p.add_argument("target")
    p.add_argument("--input", help='tape literal such as "^0", or environment such as "{x: 12, y: 8}"')
    p.add_argument("--model")
    p.add_argument("--dot", help="write the visited subgraph here")

    p = add("demo", cmd_demo, "end-to-end showcase")
    p.add_argument("name", choices=["booleans", "gcd", "mergesort", "census"])

    p = add("glue", cmd_glue, "glue a labelling along an algorithm")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--labelling", required=True)
    p.add_argument("--out")

    p = add("check-implements", cmd_check_implements, "is a program the glueing of a labelling along an algorithm")
    p.add_argument("--program", required=True)
    p.add_argument("--algorithm", required=True)
    p.add_argument("--labelling", required=True)

    p = add("verify-impl", cmd_verify_impl, "check an implementation of a data structure")
    p.add_argument("--manifest", help="implementation manifest (default: the shipped boolean one)")
    p.add_argument("--model")

    p = add("check-model", cmd_check_model, "look for counterexamples to a theory in a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--theory", required=True)
    p.add_argument("--binding", help="binding file or built-in name (default: the structure's name)")

    p = add("instantiate", cmd_instantiate, "instantiate a logical algorithm over a structure")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--binding")
    p.add_argument("--out")

    p = add("unfold", cmd_unfold, "unfold a recursive label")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--order", choices=["forward", "reverse"], default="forward")
    p.add_argument("--input", help="run the unfolded algorithm on this environment")
    p.add_argument("--out")

    p = add("dot", cmd_dot, "DOT text for a program or algorithm")
    p.add_argument("target")
    p.add_argument("--out")

    p = add("succinct-check", cmd_succinct_check, "check f-succinctness of a given decomposition")
    p.add_argument("--program", required=True)
    p.add_argument("--algorithm", required=True)
    p.add_argument("--labelling", required=True)
    p.add_argument("--f", required=True)

    p = add("succinct-find", cmd_succinct_find, "search for an f-succinct decomposition")
    p.add_argument("--program", required=True)
    p.add_argument("--library", required=True, help="labelling whose programs form the library")
    p.add_argument("--f", required=True)
    p.add_argument("--out")

    p = add("census", cmd_census, "succinct fraction among small programs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--instructions", default="right,write_1")
    p.add_argument("--max-programs", type=int, default=1_000_000)
    p.add_argument("--out")

    add("list", cmd_list, "list built-in objects")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    random.seed(args.seed)
    ws = Workspace()
    try:
        return args.fn(args, ws)
    except (AlgographError, KeyError, OSError) as exc:
        print(f"algograph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
