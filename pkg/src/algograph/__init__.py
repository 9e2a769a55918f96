"""Programs over models of computation, specified algorithms, and glueing."""

from .algorithms import (
    LogicalAlgorithm,
    SemanticAlgorithm,
    SymbolStep,
    SyntacticAlgorithm,
    abstract_run,
    instantiate,
    make_algorithm,
    single_edge,
)
from .data import (
    AbstractDataStructure,
    AnchoredOperation,
    DataDomain,
    Environment,
    StructuralMap,
    anchor,
    compose_maps,
    induced_model,
    maximal_arity,
    parse_environment,
    product,
)
from .glueing import (
    NOT_FOUND,
    check_coherent,
    check_implements,
    compose_labellings,
    glue,
    glue_alg,
    preglue,
    search_implementation,
    unfold,
)
from .graph import ControlGraph, Edge, size, to_dot
from .isomorphism import graph_isomorphic
from .logic import Theory, check_model, parse_sentence, parse_theory
from .model import UNDEFINED, ModelOfComputation, Tape, apply_word, format_tape, parse_tape, tm_model
from .program import OutOfBudget, Program, Stuck, Terminated, Trace, make_program, run
from .recfun import eval_recfun, parse_term, recursive_functions
from .representation import Interpretation, delta_bool, delta_nat_binary, delta_nat_unary, verify_implementation
from .structures import booleans, gf2_polynomials, lists_of_naturals, naturals
from .succinct import census, find_succinct, is_f_succinct, parse_size_function

__version__ = "0.1.0"
