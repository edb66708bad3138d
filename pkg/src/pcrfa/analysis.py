"""Bounded-exhaustive oracles over words and reachable configurations."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .automata import Alphabet, PartialFA, Word, run_fa
from .multihead import MultiHeadRFA, run_mh
from .system import (
    Halt,
    PCRFASystem,
    ReadStep,
    SystemConfiguration,
    _macro,
    _read,
    comm_round,
    macro_step,
    run_system,
)


@dataclass(frozen=True)
class Runner:
    """An acceptor of words over a fixed alphabet.

    ``table`` optionally computes all verdicts up to a length at once.
    """

    alphabet: Alphabet
    accepts: Callable[[Word], bool]
    name: str = ""
    table: Callable[[int], dict[Word, bool]] | None = None

    @classmethod
    def of(cls, model, name: str = "") -> Runner:
        if isinstance(model, Runner):
            return model
        if isinstance(model, PartialFA):
            return cls(model.alphabet, lambda w: run_fa(model, w).accepted, name)
        if isinstance(model, MultiHeadRFA):
            return cls(model.alphabet, lambda w: run_mh(model, w).accepted, name)
        if isinstance(model, PCRFASystem):
            return cls(
                model.alphabet,
                lambda w: run_system(model, w, trace=False).accepted,
                name,
                lambda n: system_verdicts(model, n),
            )
        raise TypeError(f"no runner for {type(model).__name__}")


def words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All words up to ``max_len``, shortest first, then lexicographic."""
    for n in range(max_len + 1):
        yield from product(alphabet.symbols, repeat=n)


def system_verdicts(sys: PCRFASystem, max_len: int) -> dict[Word, bool]:
    """Acceptance of every word up to ``max_len`` by one walk of the word tree.

    The simulation advances on a known prefix until some component needs
    the cell just past it; there the prefix itself is finished as a
    complete input and each one-symbol extension is explored.  A halt that
    never looked past the prefix decides every extension at once.
    """
    symbols = sys.alphabet.symbols
    lam = [c.lambda_moves for c in sys.components]
    qidx = sys._query_index
    table: dict[Word, bool] = {}

    def fill(p: Word, verdict: bool):
        for n in range(max_len - len(p) + 1):
            for tail in product(symbols, repeat=n):
                table[p + tail] = verdict

    def run(states, pos, p, seen) -> bool:
        while True:
            r = _macro(sys, states, pos, p)
            if isinstance(r, Halt):
                return r.verdict == "accept"
            new_states, new_pos, _ = r
            if new_pos != pos:
                seen = set()
            elif new_states in seen:
                return False
            states, pos = new_states, new_pos
            seen.add(states)

    def explore(states, pos, p, seen):
        end = len(p)
        while True:
            blocked = not any(s in qidx for s in states) and any(
                q == end and s not in lam_i for s, q, lam_i in zip(states, pos, lam)
            )
            if blocked:
                table[p] = run(states, pos, p, set(seen))
                if end < max_len:
                    for x in symbols:
                        explore(states, pos, p + (x,), set(seen))
                return
            r = _macro(sys, states, pos, p)
            if isinstance(r, Halt):
                fill(p, r.verdict == "accept")
                return
            new_states, new_pos, _ = r
            if new_pos != pos:
                seen = set()
            elif new_states in seen:
                fill(p, False)
                return
            states, pos = new_states, new_pos
            seen.add(states)

    start = tuple(c.start for c in sys.components)
    explore(start, (0,) * sys.degree, (), {start})
    return table


def _verdicts(r: Runner, max_len: int) -> Callable[[Word], bool]:
    if r.table is not None:
        return r.table(max_len).__getitem__
    return r.accepts


def enumerate_language(r, max_len: int) -> list[Word]:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    r = Runner.of(r)
    accepts = _verdicts(r, max_len)
    return [w for w in words(r.alphabet, max_len) if accepts(w)]


def equivalent_up_to(r1, r2, max_len: int) -> Word | None:
    """The least word of length <= max_len on which the verdicts differ."""
    r1, r2 = Runner.of(r1), Runner.of(r2)
    if r1.alphabet != r2.alphabet:
        raise ValueError("runners do not share an alphabet")
    a1, a2 = _verdicts(r1, max_len), _verdicts(r2, max_len)
    for w in words(r1.alphabet, max_len):
        if a1(w) != a2(w):
            return w
    return None


def successor(
    sys: PCRFASystem, c: SystemConfiguration, granularity: str = "macro"
) -> tuple[SystemConfiguration, tuple[str, ...] | None] | None:
    """Next configuration and the labels read on the way (None for a pure
    communication step); None when the system halts at ``c``."""
    if granularity == "macro":
        r = macro_step(sys, c)
        if isinstance(r, Halt):
            return None
        nxt, events = r
        reads = [ev.labels for ev in events if isinstance(ev, ReadStep)]
        return nxt, (reads[0] if reads else None)
    if granularity == "raw":
        if any(s in sys.query_states for s in c.states):
            nxt = comm_round(sys, c)
            return None if nxt is None else (nxt, None)
        tape, pos = c.tape()
        r = _read(sys, c.states, pos, tape)
        if r is None:
            return None
        states, pos, labels = r
        return SystemConfiguration(states, tuple(tape[p:] for p in pos)), labels
    raise ValueError(f"unknown granularity {granularity!r}")


def configuration_path(
    sys: PCRFASystem, w: Word, granularity: str = "macro"
) -> list[SystemConfiguration]:
    """Configurations visited on ``w`` until halting or the first repeat."""
    c = SystemConfiguration.initial(sys, w)
    path, seen = [c], {c}
    while True:
        nxt = successor(sys, c, granularity)
        if nxt is None or nxt[0] in seen:
            return path
        c = nxt[0]
        path.append(c)
        seen.add(c)


def predecessors(
    sys: PCRFASystem,
    c: SystemConfiguration,
    depth: int,
    w: Word,
    granularity: str = "macro",
) -> set[SystemConfiguration]:
    """Configurations at depth - 1 stepping to ``c`` at ``depth``.

    Configurations record only unread suffixes, so runs on different words
    can meet; every input of the same length as ``w`` is searched.
    """
    if depth <= 0:
        return set()
    found = set()
    for v in product(sys.alphabet.symbols, repeat=len(w)):
        path = configuration_path(sys, v, granularity)
        if len(path) > depth and path[depth] == c:
            found.add(path[depth - 1])
    return found


@dataclass(frozen=True)
class PredecessorWitness:
    configuration: SystemConfiguration
    labels: tuple[str, ...] | None
    predecessors: frozenset


def audit_reversibility(
    sys: PCRFASystem, max_len: int, granularity: str = "macro"
) -> list[PredecessorWitness]:
    """Every (configuration, read labels) with two or more predecessors among
    configurations reachable from inputs of length <= max_len."""
    incoming: dict[tuple, set] = defaultdict(set)
    frontier = [SystemConfiguration.initial(sys, w) for w in words(sys.alphabet, max_len)]
    visited = set(frontier)
    while frontier:
        p = frontier.pop()
        nxt = successor(sys, p, granularity)
        if nxt is None:
            continue
        c, labels = nxt
        incoming[c, labels].add(p)
        if c not in visited:
            visited.add(c)
            frontier.append(c)
    out = [
        PredecessorWitness(c, labels, frozenset(ps))
        for (c, labels), ps in incoming.items()
        if len(ps) >= 2
    ]
    out.sort(key=lambda wt: (len(wt.configuration.suffixes[0]), wt.configuration.states,
                             wt.configuration.suffixes, wt.labels or ()))
    return out
