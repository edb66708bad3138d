"""Parallel communicating systems of one-way reversible finite automata."""

from .analysis import (
    PredecessorWitness,
    Runner,
    audit_reversibility,
    enumerate_language,
    equivalent_up_to,
    predecessors,
    system_verdicts,
    words,
)
from .automata import (
    LAMBDA,
    Alphabet,
    AutomatonError,
    LambdaDivergence,
    NonDeterministic,
    PartialFA,
    ReversibilityReport,
    RunResult,
    check,
    prefix_comparable,
    run_fa,
)
from .compiler import NotFullyDefined, build_transition_list, compile_dfa, irreversible_pairs
from .multihead import (
    MultiHeadRFA,
    NotReversible,
    NotTranslatable,
    check_mh,
    run_mh,
    translate,
)
from .system import (
    PCRFASystem,
    RunVerdict,
    SystemConfiguration,
    comm_round,
    degree_one,
    macro_step,
    read_step,
    run_system,
)
from .textformat import AutomatonDocument, parse, serialize

__all__ = [name for name in dir() if not name.startswith("_")]
