"""Parallel communicating systems of one-way reversible finite automata.

Every component reads its own copy of the input.  A read step moves all
components at once (each by a symbol or by a lambda move); afterwards any
component sitting in a query state ``K`` is handed the current state of
the component that ``K`` points to.  Read steps and the communication
rounds that follow them are bundled into a *macro step*.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

from .automata import LAMBDA, Alphabet, AutomatonError, NonDeterministic, PartialFA, Word


@dataclass(frozen=True)
class PCRFASystem:
    alphabet: Alphabet
    components: tuple[PartialFA, ...]
    query_states: dict = field(hash=False)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "query_states", dict(self.query_states))
        names = tuple(self.names) or tuple(f"A{i}" for i in range(1, len(comps) + 1))
        object.__setattr__(self, "names", names)
        if not comps:
            raise AutomatonError("a system needs at least one component")
        if len(names) != len(comps) or len(set(names)) != len(names):
            raise AutomatonError("component names must be distinct, one per component")
        for i, comp in enumerate(comps, 1):
            if comp.alphabet != self.alphabet:
                raise AutomatonError(f"component {i} does not share the system alphabet")
        for name, target in self.query_states.items():
            if not isinstance(target, int) or not 1 <= target <= len(comps):
                raise AutomatonError(f"query state {name} targets invalid component {target!r}")
            holders = [c for c in comps if name in c.states]
            if not holders:
                raise AutomatonError(f"query state {name} is not a state of any component")
            for i, comp in enumerate(comps, 1):
                if name not in comp.states:
                    continue
                if name in comp.finals:
                    raise AutomatonError(f"query state {name} is final in component {i}")
                if name == comp.start:
                    raise AutomatonError(f"query state {name} is the start state of component {i}")
                if any(src == name for src, _ in comp.trans):
                    raise AutomatonError(f"query state {name} has outgoing transitions in component {i}")

    @property
    def degree(self) -> int:
        return len(self.components)

    @cached_property
    def _query_index(self) -> dict[str, int]:
        return {name: j - 1 for name, j in self.query_states.items()}


def degree_one(fa: PartialFA, name: str = "A1") -> PCRFASystem:
    return PCRFASystem(fa.alphabet, (fa,), {}, (name,))


@dataclass(frozen=True)
class SystemConfiguration:
    """Per-component current state and unread suffix of the input."""

    states: tuple[str, ...]
    suffixes: tuple[Word, ...]

    @property
    def entries(self) -> list[tuple[str, Word]]:
        return list(zip(self.states, self.suffixes))

    @classmethod
    def initial(cls, sys: PCRFASystem, w: Sequence[str]) -> SystemConfiguration:
        w = tuple(w)
        return cls(tuple(c.start for c in sys.components), (w,) * sys.degree)

    def tape(self) -> tuple[Word, tuple[int, ...]]:
        """The longest suffix and each component's offset into it."""
        longest = max(self.suffixes, key=len)
        return longest, tuple(len(longest) - len(u) for u in self.suffixes)


@dataclass(frozen=True)
class ReadStep:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class CommRound:
    # (querier, queried, delivered state), 1-based indices
    resolutions: tuple[tuple[int, int, str], ...]


@dataclass(frozen=True)
class Halt:
    verdict: str  # accept | reject | deadlock | divergence


StepEvent = Union[ReadStep, CommRound, Halt]


def format_event(ev: StepEvent) -> str:
    if isinstance(ev, ReadStep):
        return "READ " + " ".join(f"{i}:{lab or '-'}" for i, lab in enumerate(ev.labels, 1))
    if isinstance(ev, CommRound):
        return "COMM " + " ".join(f"{i}<-{j}:{s}" for i, j, s in ev.resolutions)
    return f"HALT {ev.verdict}"


# The engine below works on (states, positions) over a shared tape; the
# public functions translate to and from SystemConfiguration.

def _read(sys: PCRFASystem, states, pos, tape):
    qidx = sys._query_index
    if any(s in qidx for s in states):
        return None
    new_states, new_pos, labels = [], [], []
    n = len(tape)
    for comp, s, p in zip(sys.components, states, pos):
        move = comp.step(s, tape[p] if p < n else None)
        if move is None:
            return None
        label, tgt = move
        new_states.append(tgt)
        new_pos.append(p if label == LAMBDA else p + 1)
        labels.append(label)
    return tuple(new_states), tuple(new_pos), tuple(labels)


def _comm(sys: PCRFASystem, states):
    qidx = sys._query_index
    resolutions = []
    new = list(states)
    for i, s in enumerate(states):
        j = qidx.get(s)
        if j is not None and states[j] not in qidx:
            new[i] = states[j]
            resolutions.append((i + 1, j + 1, states[j]))
    if not resolutions:
        return None
    return tuple(new), tuple(resolutions)


def _settle(sys: PCRFASystem, states, events):
    for _ in range(sys.degree):
        res = _comm(sys, states)
        if res is None:
            break
        states, resolutions = res
        events.append(CommRound(resolutions))
    return states


def _halt_verdict(sys: PCRFASystem, states) -> str:
    if any(s in sys._query_index for s in states):
        return "deadlock"
    ok = all(s in comp.finals for comp, s in zip(sys.components, states))
    return "accept" if ok else "reject"


def _macro(sys: PCRFASystem, states, pos, tape):
    """One read step plus communication to fixpoint, or a Halt."""
    r = _read(sys, states, pos, tape)
    if r is None:
        if _comm(sys, states) is not None:
            # only reachable from a hand-built configuration with pending queries
            events: list[StepEvent] = []
            return _settle(sys, states, events), pos, events
        return Halt(_halt_verdict(sys, states))
    states, pos, labels = r
    events = [ReadStep(labels)]
    states = _settle(sys, states, events)
    return states, pos, events


def _to_config(states, pos, tape) -> SystemConfiguration:
    return SystemConfiguration(tuple(states), tuple(tape[p:] for p in pos))


def _check_config(sys: PCRFASystem, c: SystemConfiguration):
    if len(c.states) != sys.degree or len(c.suffixes) != sys.degree:
        raise AutomatonError("configuration does not match the system degree")


def read_step(sys: PCRFASystem, c: SystemConfiguration) -> SystemConfiguration | None:
    """Lock-step move of every component; None when some component cannot move."""
    _check_config(sys, c)
    tape, pos = c.tape()
    r = _read(sys, c.states, pos, tape)
    return None if r is None else _to_config(r[0], r[1], tape)


def comm_round(sys: PCRFASystem, c: SystemConfiguration) -> SystemConfiguration | None:
    """Resolve every query whose target is not itself querying; None if none can be."""
    _check_config(sys, c)
    r = _comm(sys, c.states)
    return None if r is None else SystemConfiguration(r[0], c.suffixes)


def macro_step(
    sys: PCRFASystem, c: SystemConfiguration
) -> tuple[SystemConfiguration, list[StepEvent]] | Halt:
    _check_config(sys, c)
    tape, pos = c.tape()
    r = _macro(sys, c.states, pos, tape)
    if isinstance(r, Halt):
        return r
    states, pos, events = r
    return _to_config(states, pos, tape), events


def raw_step(sys: PCRFASystem, c: SystemConfiguration) -> SystemConfiguration | None:
    """A single application of the step relation: a comm round if any query
    is pending, otherwise a read step."""
    if any(s in sys._query_index for s in c.states):
        return comm_round(sys, c)
    return read_step(sys, c)


@dataclass(frozen=True)
class RunVerdict:
    accepted: bool
    final_config: SystemConfiguration
    trace: tuple[StepEvent, ...] = ()
    history: tuple[SystemConfiguration, ...] = ()
    verdict: str = "reject"


def run_system(sys: PCRFASystem, w: Sequence[str], trace: bool = True) -> RunVerdict:
    """Iterate macro steps from the initial configuration until the system halts.

    With ``trace`` the verdict carries every step event and the
    configuration after each macro step (``history[0]`` is the initial one).
    """
    for i, comp in enumerate(sys.components, 1):
        if not comp.report.deterministic:
            raise NonDeterministic(f"component {i} is not deterministic")
    tape = tuple(w)
    for s in tape:
        if s not in sys.alphabet:
            raise AutomatonError(f"symbol {s!r} is not in the alphabet")

    states = tuple(c.start for c in sys.components)
    pos = (0,) * sys.degree
    events: list[StepEvent] = []
    history = [_to_config(states, pos, tape)] if trace else []
    seen = {states}
    while True:
        r = _macro(sys, states, pos, tape)
        if isinstance(r, Halt):
            halt = r
            break
        new_states, new_pos, step_events = r
        if trace:
            events.extend(step_events)
            history.append(_to_config(new_states, new_pos, tape))
        if new_pos != pos:
            seen = set()
        elif new_states in seen:
            states = new_states
            halt = Halt("divergence")
            break
        states, pos = new_states, new_pos
        seen.add(states)

    final = _to_config(states, pos, tape)
    if trace:
        events.append(halt)
    return RunVerdict(halt.verdict == "accept", final, tuple(events), tuple(history), halt.verdict)
