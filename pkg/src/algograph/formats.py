"""JSON file formats for programs, algorithms, labellings and manifests.

Programs::

    {"model": "tm", "states": [...], "initial": "i", "terminal": "t",
     "edges": [{"from": "i", "to": "t", "label": "right"}]}

Algorithms add ``labels`` and ``frame``, and optionally either
``structure`` + ``semantics`` (label -> anchored map, or a pipeline of
them) or ``theory`` + ``symbols`` (label -> symbol steps). Theories are
s-expression text files. Paths inside a file are relative to that file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Mapping

from .algorithms import LogicalAlgorithm, SemanticAlgorithm, SymbolStep, SyntacticAlgorithm
from .data import BOTTOM, AbstractDataStructure, AnchoredOperation, compose_maps
from .errors import ParseError
from .graph import Edge
from .logic import Theory, format_theory, parse_theory
from .program import Program


def dumps(obj: Mapping) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _graph_dict(g, model: str) -> dict:
    return {
        "model": model,
        "states": list(g.states),
        "initial": g.initial,
        "terminal": g.terminal,
        "edges": [{"from": e.source, "to": e.target, "label": e.label} for e in g.edges],
    }


def _graph_parts(d: Mapping):
    try:
        edges = tuple(Edge(e["from"], e["to"], e["label"]) for e in d["edges"])
        return tuple(d["states"]), edges, d["initial"], d["terminal"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph: missing {exc}") from None


def program_to_dict(p: Program) -> dict:
    return _graph_dict(p, p.model)


def program_from_dict(d: Mapping) -> Program:
    states, edges, i, t = _graph_parts(d)
    return Program(states, edges, i, t, d.get("model", "tm"))


def _op_dict(op: AnchoredOperation) -> dict:
    return {"map": op.map.name, "in": list(op.inputs), "out": list(op.outputs)}


def _meaning_dict(op: AnchoredOperation) -> dict:
    if not op.map.pipeline:
        return _op_dict(op)
    d = {"pipeline": [_op_dict(s) for s in op.map.pipeline], "in": list(op.inputs), "out": list(op.outputs)}
    if op.map.frame_in != op.inputs or op.map.frame_out != op.outputs:
        d["frame_in"] = list(op.map.frame_in)
        d["frame_out"] = list(op.map.frame_out)
    return d


def _lookup(structure: AbstractDataStructure, name: str):
    if name == BOTTOM.name and name not in structure:
        return BOTTOM
    from .algorithms import PLUMBING

    if name not in structure and name in PLUMBING:
        return PLUMBING[name]
    try:
        return structure[name]
    except KeyError:
        raise ParseError(f"structure {structure.name} has no map {name!r}") from None


def _meaning_from(d: Mapping, label: str, structure) -> AnchoredOperation:
    if "pipeline" in d:
        stages = [AnchoredOperation(_lookup(structure, s["map"]), s["in"], s["out"]) for s in d["pipeline"]]
        fin = tuple(d.get("frame_in", d["in"]))
        fout = tuple(d.get("frame_out", d["out"]))
        return AnchoredOperation(compose_maps(label, fin, fout, stages), d["in"], d["out"])
    return AnchoredOperation(_lookup(structure, d["map"]), d["in"], d["out"])


def algorithm_to_dict(alg, theory_ref: str | None = None) -> dict:
    syntax = getattr(alg, "syntax", alg)
    d = _graph_dict(syntax, "algorithm")
    d["labels"] = list(syntax.labels)
    d["frame"] = list(getattr(alg, "frame", ()))
    if isinstance(alg, SemanticAlgorithm):
        d["structure"] = alg.structure.name
        d["semantics"] = {lab: _meaning_dict(alg.meaning[lab]) for lab in syntax.labels}
        if alg.computes is not None:
            d["computes"] = _op_dict(alg.computes)
    elif isinstance(alg, LogicalAlgorithm):
        d["theory"] = theory_ref or alg.theory.name
        d["symbols"] = {
            lab: [{"symbol": s.symbol, "in": list(s.inputs), "out": list(s.outputs)} for s in alg.meaning[lab]]
            for lab in syntax.labels
        }
    if getattr(alg, "name", ""):
        d["name"] = alg.name
    return d


def algorithm_from_dict(
    d: Mapping,
    structures: Callable[[str], AbstractDataStructure],
    theories: Callable[[str], Theory],
):
    states, edges, i, t = _graph_parts(d)
    syntax = SyntacticAlgorithm(states, edges, i, t, tuple(d.get("labels", ())))
    frame = tuple(d.get("frame", ()))
    name = d.get("name", "")
    if "semantics" in d:
        S = structures(d["structure"])
        meaning = {lab: _meaning_from(m, lab, S) for lab, m in d["semantics"].items()}
        computes = None
        if "computes" in d:
            c = d["computes"]
            computes = AnchoredOperation(_lookup(S, c["map"]), c["in"], c["out"])
        return SemanticAlgorithm(syntax, S, meaning, frame, computes, name)
    if "symbols" in d:
        theory = theories(d["theory"])
        meaning = {}
        for lab, steps in d["symbols"].items():
            if isinstance(steps, Mapping):
                steps = [steps]
            meaning[lab] = tuple(SymbolStep(s["symbol"], s["in"], s["out"]) for s in steps)
        return LogicalAlgorithm(syntax, theory, meaning, frame, name)
    return syntax


def theory_to_text(theory: Theory) -> str:
    return format_theory(theory)


def theory_from_text(text: str, name: str) -> Theory:
    return parse_theory(text, name)


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def labelling_to_dict(targets: str, files: Mapping[str, str], model: str | None = None) -> dict:
    d: dict = {"targets": targets}
    if model is not None:
        d["model"] = model
    d["map"] = dict(files)
    return d


def manifest_to_dict(interpretation: str, structure: str, files: Mapping[str, str]) -> dict:
    return {"interpretation": interpretation, "structure": structure, "programs": dict(files)}
