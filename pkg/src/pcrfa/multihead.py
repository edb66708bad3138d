"""One-way multi-head reversible finite automata and their translation into
parallel communicating systems.

A k-head machine reads a vector of k labels per transition; a lambda entry
leaves that head in place.  The tape is the input word followed by one end
marker cell, on which a head parks once it gets there.

The translation runs one *protocol round* of k + 1 macro steps per
simulated transition.  Component i waits, asks component i - 1 for the
partial tuple ``q[a1,...,a(i-1)]``, reads its own symbol, then waits until
the last component has the complete tuple and learns the successor state
from it.  Component k itself obtains the successor from a satellite
component that permanently holds it, so no component's transition map
ever merges two arrows into one state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .automata import (
    END_MARKER,
    LAMBDA,
    LAMBDA_TOKEN,
    Alphabet,
    AutomatonError,
    LambdaDivergence,
    NonDeterministic,
    PartialFA,
    ReversibilityReport,
    transition_report,
    vectors_comparable,
)
from .system import PCRFASystem, RunVerdict


class NotReversible(AutomatonError):
    pass


class NotTranslatable(AutomatonError):
    """The machine is outside what the round protocol can simulate."""


@dataclass(frozen=True)
class MultiHeadRFA:
    alphabet: Alphabet
    heads: int
    states: frozenset
    start: str
    finals: frozenset
    trans: dict = field(hash=False)
    end_marker: str = END_MARKER

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "trans", {(q, tuple(v)): t for (q, v), t in self.trans.items()})
        if not isinstance(self.heads, int) or self.heads < 1:
            raise AutomatonError("head count must be a positive integer")
        for q in self.states:
            if not q or any(ch.isspace() or ch in "#=[]{}," for ch in q):
                raise AutomatonError(f"invalid state name {q!r}")
        if self.start not in self.states:
            raise AutomatonError(f"start state {self.start!r} is not a state")
        if not self.finals <= self.states:
            raise AutomatonError(f"final states {sorted(self.finals - self.states)} are not states")
        readable = set(self.alphabet) | {self.end_marker, LAMBDA}
        for (src, vec), tgt in self.trans.items():
            if src not in self.states or tgt not in self.states:
                raise AutomatonError(f"transition {src} -> {tgt} uses an unknown state")
            if len(vec) != self.heads:
                raise AutomatonError(f"label vector {vec} does not have {self.heads} entries")
            for x in vec:
                if x not in readable:
                    raise AutomatonError(f"label {x!r} is not in the alphabet")

    @cached_property
    def report(self) -> ReversibilityReport:
        return transition_report(self.trans, vectors_comparable)

    @cached_property
    def outgoing(self) -> dict[str, list[tuple[tuple[str, ...], str]]]:
        out: dict[str, list] = {}
        for (src, vec), tgt in sorted(self.trans.items()):
            out.setdefault(src, []).append((vec, tgt))
        return out


def check_mh(m: MultiHeadRFA) -> ReversibilityReport:
    return m.report


def render_vector(vec: Sequence[str]) -> str:
    return ",".join(x or LAMBDA_TOKEN for x in vec)


class HeadConfiguration(NamedTuple):
    state: str
    positions: tuple[int, ...]


@dataclass(frozen=True)
class HeadRunResult:
    halt_state: str
    positions: tuple[int, ...]
    accepted: bool
    diverged: bool = False
    path: tuple[HeadConfiguration, ...] = ()


def run_mh(
    m: MultiHeadRFA, w: Sequence[str], record: bool = False, raise_on_divergence: bool = False
) -> HeadRunResult:
    """Simulate ``m`` on ``w`` under halting acceptance.

    A transition applies when every non-lambda entry equals the cell under
    its head; those heads then advance, except that a head stays on the end
    marker.  Any repeated configuration is a cycle and rejects.
    """
    if not m.report.deterministic:
        raise NonDeterministic("run_mh needs a deterministic machine")
    for s in w:
        if s not in m.alphabet:
            raise AutomatonError(f"symbol {s!r} is not in the alphabet")
    tape = tuple(w) + (m.end_marker,)
    end = len(tape) - 1
    conf = HeadConfiguration(m.start, (0,) * m.heads)
    seen = {conf}
    path = [conf]
    while True:
        state, pos = conf
        cells = [tape[p] for p in pos]
        for vec, tgt in m.outgoing.get(state, ()):
            if all(x == LAMBDA or x == c for x, c in zip(vec, cells)):
                break
        else:
            return HeadRunResult(state, pos, state in m.finals, False, tuple(path))
        new_pos = tuple(p if x == LAMBDA else min(p + 1, end) for x, p in zip(vec, pos))
        conf = HeadConfiguration(tgt, new_pos)
        if conf in seen:
            if raise_on_divergence:
                raise LambdaDivergence(f"configuration {conf} repeats")
            return HeadRunResult(tgt, new_pos, False, True, tuple(path))
        seen.add(conf)
        if record:
            path.append(conf)


def head_order_conflicts(m: MultiHeadRFA) -> list[tuple[str, tuple[str, ...]]]:
    """(state, prefix) pairs where head i cannot choose locally.

    In the round protocol head i decides between a lambda move and reading
    knowing only the labels of heads 1..i-1, so among transitions that share
    a prefix the next entry must be lambda for all of them or for none.
    """
    options: dict[tuple[str, tuple[str, ...]], set[str]] = {}
    for (q, vec) in m.trans:
        for i in range(m.heads):
            options.setdefault((q, vec[:i]), set()).add(vec[i])
    return sorted(
        key for key, labels in options.items() if LAMBDA in labels and len(labels) > 1
    )


def translatable(m: MultiHeadRFA) -> bool:
    return (
        m.report.reversible
        and not head_order_conflicts(m)
        and not any(m.end_marker in vec for _, vec in m.trans)
    )


# structured state names

def tuple_name(q: str, labels: Sequence[str]) -> str:
    return f"{q}[{render_vector(labels)}]"


def wait_name(kind: str, index: int, carried: str | None) -> str:
    return f"{kind}{index}" if carried is None else f"{kind}{index}{{{carried}}}"


def query_name(target: int, carried: str | None) -> str:
    return wait_name("K", target, carried)


class StateName(NamedTuple):
    kind: str  # plain | tuple | wait_s | wait_p | query
    base: str  # plain state, tuple owner, or carried name ("" when absent)
    index: int = 0
    labels: tuple[str, ...] = ()


_WAIT = re.compile(r"^([spK])(\d+)(?:\{(.*)\})?$")
_TUPLE = re.compile(r"^([^\[\]{}]+)\[(.*)\]$")


def parse_state_name(name: str) -> StateName:
    """Inverse of the rendering used by ``translate``.

    Bare ``s3``/``p1``/``K2`` are read as wait or query states, so plain
    machine states must not look like that when the literal construction
    is used.
    """
    m = _WAIT.match(name)
    if m:
        kind = {"s": "wait_s", "p": "wait_p", "K": "query"}[m.group(1)]
        return StateName(kind, m.group(3) or "", int(m.group(2)))
    m = _TUPLE.match(name)
    if m:
        labels = tuple("" if x == LAMBDA_TOKEN else x for x in m.group(2).split(","))
        return StateName("tuple", m.group(1), 0, labels)
    return StateName("plain", name)


def _project(m: MultiHeadRFA) -> PCRFASystem:
    trans = {(q, vec[0]): t for (q, vec), t in m.trans.items()}
    fa = PartialFA(m.alphabet, m.states, m.start, m.finals, trans)
    return PCRFASystem(m.alphabet, (fa,), {}, ("H1",))


def translate(m: MultiHeadRFA, literal: bool = False) -> PCRFASystem:
    """Build a system simulating ``m``, one protocol round per transition.

    ``literal`` emits the literal construction instead: shared wait
    states ``s_j``/``p_j``, one query state ``K_j`` per component, final
    states only among the machine's own states, and component k stepping
    straight into the successor state. That variant simulates the same runs
    but its components are not reversible, and it rejects where the machine
    halts in a final state part-way through a round.
    """
    if not m.report.reversible:
        raise NotReversible("translate needs a reversible multi-head machine")
    if any(m.end_marker in vec for _, vec in m.trans):
        raise NotTranslatable("components cannot read the end marker")
    conflicts = head_order_conflicts(m)
    if conflicts:
        q, prefix = conflicts[0]
        raise NotTranslatable(
            f"head {len(prefix) + 1} cannot choose between lambda and a symbol in state {q} "
            f"after [{render_vector(prefix)}]"
        )
    if literal:
        clash = [q for q in m.states if _WAIT.match(q)]
        if clash:
            raise NotTranslatable(f"state names {clash} collide with literal wait/query names")
    if m.heads == 1:
        return _project(m)

    n = m.heads
    targets = sorted(set(m.trans.values()))
    satellite = {r: n + 1 + i for i, r in enumerate(targets)}
    trans: list[dict] = [{} for _ in range(n)]
    states: list[set] = [set(m.states) for _ in range(n)]
    finals: list[set] = [set(m.finals) for _ in range(n)]
    queries: dict[str, int] = {}

    def carried(x: str) -> str | None:
        return None if literal else x

    def add(i: int, src: str, label: str, tgt: str, owner: str):
        key = (src, label)
        if trans[i].get(key, tgt) != tgt:
            raise AssertionError(f"conflicting protocol move {key} in component {i + 1}")
        trans[i][key] = tgt
        for s in (src, tgt):
            states[i].add(s)
            if s in queries:
                continue
            if owner in m.finals and not literal:
                finals[i].add(s)

    def query(j: int, x: str | None) -> str:
        name = query_name(j, x)
        queries[name] = j
        return name

    for (q, vec), r in sorted(m.trans.items()):
        for i in range(1, n + 1):
            c = i - 1
            mine = tuple_name(q, vec[:i])
            if i == 1:
                add(c, q, vec[0], mine, q)
            else:
                # wait i - 2 read steps, then ask component i - 1 for its tuple
                prev = q
                for j in range(1, i - 1):
                    nxt = wait_name("p", j, carried(q))
                    add(c, prev, LAMBDA, nxt, q)
                    prev = nxt
                add(c, prev, LAMBDA, query(i - 1, carried(q)), q)
                add(c, tuple_name(q, vec[: i - 1]), vec[i - 1], mine, q)
            if i < n:
                prev = mine
                for j in range(i + 1, n + 1):
                    nxt = wait_name("s", j, carried(mine))
                    add(c, prev, LAMBDA, nxt, q)
                    prev = nxt
                add(c, prev, LAMBDA, query(n, carried(mine)), q)
            elif literal:
                add(c, mine, LAMBDA, r, q)
            else:
                add(c, mine, LAMBDA, query(satellite[r], mine), q)

    for name in queries:
        for f in finals:
            f.discard(name)

    components = [
        PartialFA(m.alphabet, states[i], m.start, finals[i], trans[i]) for i in range(n)
    ]
    names = [f"H{i}" for i in range(1, n + 1)]
    if not literal:
        for r in targets:
            components.append(PartialFA(m.alphabet, {r}, r, {r}, {(r, LAMBDA): r}))
            names.append(f"R{satellite[r]}")
    return PCRFASystem(m.alphabet, tuple(components), queries, tuple(names))


def round_length(m: MultiHeadRFA) -> int:
    return 1 if m.heads == 1 else m.heads + 1


def broadcast_violations(m: MultiHeadRFA, verdict: RunVerdict) -> list[int]:
    """Round boundaries (history indices) where the head components disagree
    or hold something other than a machine state."""
    step = round_length(m)
    bad = []
    for t in range(0, len(verdict.history), step):
        held = set(verdict.history[t].states[: m.heads])
        if len(held) != 1 or not held <= m.states:
            bad.append(t)
    return bad


def round_consumption(m: MultiHeadRFA, verdict: RunVerdict) -> list[tuple[int, ...]]:
    """Symbols consumed by each head component over each completed round."""
    step = round_length(m)
    hist = verdict.history
    out = []
    for t in range(step, len(hist), step):
        before, after = hist[t - step], hist[t]
        out.append(
            tuple(len(before.suffixes[i]) - len(after.suffixes[i]) for i in range(m.heads))
        )
    return out
