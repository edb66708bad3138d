"""Compile a fully defined DFA into a system of individually reversible automata.

Each transition that shares its (target, symbol) with another transition
is rerouted through a fresh query state in the master component.  The
query is answered by a satellite component whose only state is the
transition's target, so the master learns where to go without its own
transition map merging two arrows into one state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import AutomatonError, PartialFA, check
from .system import PCRFASystem


class NotFullyDefined(AutomatonError):
    pass


@dataclass(frozen=True, order=True)
class IrreversiblePair:
    target: str
    label: str


@dataclass(frozen=True)
class NumberedTransitionList:
    transitions: tuple[tuple[str, str, str], ...]  # (source, label, target)

    @property
    def n(self) -> int:
        return len(self.transitions) + 1

    def numbered(self):
        return list(enumerate(self.transitions, 2))


def _require_full(dfa: PartialFA):
    if not check(dfa).deterministic:
        raise NotFullyDefined("input automaton is not deterministic")
    if not dfa.fully_defined():
        raise NotFullyDefined("input automaton must define every (state, symbol) pair without lambda moves")


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def complete(dfa: PartialFA, sink: str = "sink") -> PartialFA:
    """Add a non-final sink for every missing (state, symbol) pair.

    Under halting acceptance this changes the language: a word on which the
    partial machine stops early in a final state is rejected afterwards.
    """
    if dfa.lambda_moves:
        raise NotFullyDefined("cannot complete an automaton with lambda moves")
    if dfa.fully_defined():
        return dfa
    sink = _fresh(sink, set(dfa.states))
    states = set(dfa.states) | {sink}
    trans = dict(dfa.trans)
    for q in states:
        for a in dfa.alphabet:
            trans.setdefault((q, a), sink)
    return PartialFA(dfa.alphabet, states, dfa.start, dfa.finals, trans)


def irreversible_pairs(dfa: PartialFA) -> list[IrreversiblePair]:
    _require_full(dfa)
    indegree: dict[tuple[str, str], int] = {}
    for (_, a), tgt in dfa.trans.items():
        indegree[tgt, a] = indegree.get((tgt, a), 0) + 1
    return sorted(IrreversiblePair(t, a) for (t, a), d in indegree.items() if d >= 2)


def build_transition_list(dfa: PartialFA) -> NumberedTransitionList:
    pairs = irreversible_pairs(dfa)
    listed = []
    for pair in pairs:
        sources = sorted(
            src for (src, a), tgt in dfa.trans.items() if a == pair.label and tgt == pair.target
        )
        listed.extend((src, pair.label, pair.target) for src in sources)
    return NumberedTransitionList(tuple(listed))


def compile_dfa(dfa: PartialFA, complete_partial: bool = False) -> PCRFASystem:
    """Master component plus one satellite per listed transition.

    The master keeps the DFA's states, start and finals; listed transition
    number k becomes a move into query state ``Kk``, which satellite k
    answers with its single (start, final, self-looping) state.
    """
    if complete_partial:
        dfa = complete(dfa)
    numbered = build_transition_list(dfa).numbered()

    taken = set(dfa.states)
    query_names = {}
    for k, t in numbered:
        query_names[k] = name = _fresh(f"K{k}", taken)
        taken.add(name)

    master_trans = dict(dfa.trans)
    for k, (src, a, _) in numbered:
        master_trans[src, a] = query_names[k]
    master = PartialFA(
        dfa.alphabet,
        set(dfa.states) | set(query_names.values()),
        dfa.start,
        dfa.finals,
        master_trans,
    )

    components = [master]
    for k, (_, _, tgt) in numbered:
        loops = {(tgt, a): tgt for a in dfa.alphabet}
        components.append(PartialFA(dfa.alphabet, {tgt}, tgt, {tgt}, loops))

    return PCRFASystem(
        dfa.alphabet,
        tuple(components),
        {query_names[k]: k for k, _ in numbered},
    )
