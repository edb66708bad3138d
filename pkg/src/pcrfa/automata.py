"""Alphabets, labels, and partially defined one-way finite automata.

Labels are plain strings: a symbol of the alphabet, or ``LAMBDA`` (the
empty string) for a transition that reads nothing.  Words are tuples of
symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

LAMBDA = ""
LAMBDA_TOKEN = "-"
END_MARKER = "$"

# Characters that would make the text format or structured state names ambiguous.
_RESERVED_CHARS = set(",#=[]{}")

Word = tuple[str, ...]


class AutomatonError(ValueError):
    """A model violates one of its structural invariants."""


class NonDeterministic(AutomatonError):
    pass


class LambdaDivergence(RuntimeError):
    """A run entered a cycle that consumes no input."""


def valid_symbol(token: str) -> bool:
    return (
        bool(token)
        and not any(ch.isspace() for ch in token)
        and token not in (LAMBDA_TOKEN, END_MARKER)
        and not (set(token) & _RESERVED_CHARS)
    )


@dataclass(frozen=True)
class Alphabet:
    """A finite set of symbol tokens, kept in sorted order."""

    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]):
        symbols = list(symbols)
        if len(set(symbols)) != len(symbols):
            raise AutomatonError(f"duplicate symbols in alphabet {symbols}")
        for s in symbols:
            if not valid_symbol(s):
                raise AutomatonError(f"invalid alphabet symbol {s!r}")
        object.__setattr__(self, "symbols", tuple(sorted(symbols)))

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, item: object) -> bool:
        return item in self.symbols

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def word(self, text: str) -> Word:
        """Split ``text`` into symbols.

        Concatenated characters are accepted when every symbol is one
        character long; otherwise symbols are comma separated.
        """
        if text == "":
            return ()
        if "," in text or not self.single_char:
            w = tuple(text.split(","))
        else:
            w = tuple(text)
        for s in w:
            if s not in self:
                raise AutomatonError(f"symbol {s!r} is not in the alphabet")
        return w

    def render(self, w: Sequence[str]) -> str:
        if self.single_char:
            return "".join(w)
        return ",".join(w)


def prefix_comparable(x: str, y: str) -> bool:
    """Single-symbol-or-lambda labels are comparable iff equal or one is lambda."""
    return x == y or x == LAMBDA or y == LAMBDA


def vectors_comparable(u: Sequence[str], v: Sequence[str]) -> bool:
    return len(u) == len(v) and all(prefix_comparable(a, b) for a, b in zip(u, v))


@dataclass(frozen=True)
class InjectivityViolation:
    """Two or more transitions with comparable labels enter ``target``."""

    target: str
    label: Hashable
    sources: frozenset


@dataclass(frozen=True)
class ReversibilityReport:
    deterministic: bool
    reversible: bool
    determinism_witnesses: tuple = ()
    reversibility_witnesses: tuple = ()

    def lines(self, render_label: Callable[[Hashable], str] = str) -> list[str]:
        out = [
            f"deterministic: {str(self.deterministic).lower()}",
            f"reversible: {str(self.reversible).lower()}",
        ]
        for state, x, y in self.determinism_witnesses:
            out.append(f"  nondeterministic: {state} on {render_label(x)} / {render_label(y)}")
        for v in self.reversibility_witnesses:
            srcs = ",".join(sorted(v.sources))
            out.append(f"  not injective: ({v.target},{render_label(v.label)}) <- {{{srcs}}}")
        return out


def transition_report(
    trans: Mapping[tuple[str, Hashable], str],
    comparable: Callable[[Hashable, Hashable], bool],
) -> ReversibilityReport:
    """Determinism and injectivity of a transition map under a label order.

    Shared by single- and multi-head automata; ``comparable`` decides
    when two labels could both apply.
    """
    outgoing: dict[str, list] = {}
    incoming: dict[str, list] = {}
    for (src, label), tgt in trans.items():
        outgoing.setdefault(src, []).append(label)
        incoming.setdefault(tgt, []).append((src, label))

    det_w = []
    for src in sorted(outgoing):
        labels = sorted(outgoing[src])
        for x, y in combinations(labels, 2):
            if comparable(x, y):
                det_w.append((src, x, y))

    rev_w = []
    for tgt in sorted(incoming):
        edges = incoming[tgt]
        for label in sorted({lab for _, lab in edges}):
            hits = [(s, lab) for s, lab in edges if comparable(label, lab)]
            if len(hits) >= 2:
                rev_w.append(InjectivityViolation(tgt, label, frozenset(s for s, _ in hits)))

    deterministic = not det_w
    return ReversibilityReport(
        deterministic=deterministic,
        reversible=deterministic and not rev_w,
        determinism_witnesses=tuple(det_w),
        reversibility_witnesses=tuple(rev_w),
    )


@dataclass(frozen=True)
class PartialFA:
    """A partially defined one-way finite automaton with lambda moves."""

    alphabet: Alphabet
    states: frozenset
    start: str
    finals: frozenset
    trans: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "trans", dict(self.trans))
        for q in self.states:
            if not q or any(ch.isspace() for ch in q) or "#" in q or "=" in q:
                raise AutomatonError(f"invalid state name {q!r}")
        if self.start not in self.states:
            raise AutomatonError(f"start state {self.start!r} is not a state")
        if not self.finals <= self.states:
            raise AutomatonError(f"final states {sorted(self.finals - self.states)} are not states")
        for (src, label), tgt in self.trans.items():
            if src not in self.states or tgt not in self.states:
                raise AutomatonError(f"transition {src} {label or LAMBDA_TOKEN} {tgt} uses an unknown state")
            if label != LAMBDA and label not in self.alphabet:
                raise AutomatonError(f"transition label {label!r} is not in the alphabet")

    @cached_property
    def report(self) -> ReversibilityReport:
        return transition_report(self.trans, prefix_comparable)

    @cached_property
    def lambda_moves(self) -> dict[str, str]:
        return {src: tgt for (src, lab), tgt in self.trans.items() if lab == LAMBDA}

    def fully_defined(self) -> bool:
        """Every (state, symbol) pair has a transition and no lambda is used."""
        if self.lambda_moves:
            return False
        return all((q, a) in self.trans for q in self.states for a in self.alphabet)

    def step(self, state: str, symbol: str | None) -> tuple[str, str] | None:
        """The unique applicable transition as ``(label, target)``.

        ``symbol`` is the next unread symbol, or None at the end of input.
        """
        tgt = self.lambda_moves.get(state)
        if tgt is not None:
            return LAMBDA, tgt
        if symbol is not None:
            tgt = self.trans.get((state, symbol))
            if tgt is not None:
                return symbol, tgt
        return None


def check(fa: PartialFA) -> ReversibilityReport:
    return fa.report


@dataclass(frozen=True)
class RunResult:
    halt_state: str
    consumed_length: int
    accepted: bool
    diverged: bool = False


def run_fa(fa: PartialFA, w: Sequence[str], raise_on_divergence: bool = False) -> RunResult:
    """Run ``fa`` until it halts; acceptance is halting in a final state.

    The whole word need not be consumed.  A cycle of lambda moves halts the
    run as rejecting (or raises ``LambdaDivergence`` when asked to).
    """
    if not fa.report.deterministic:
        raise NonDeterministic("run_fa needs a deterministic automaton")
    for s in w:
        if s not in fa.alphabet:
            raise AutomatonError(f"symbol {s!r} is not in the alphabet")
    state, pos = fa.start, 0
    seen = {state}
    while True:
        move = fa.step(state, w[pos] if pos < len(w) else None)
        if move is None:
            return RunResult(state, pos, state in fa.finals)
        label, state = move
        if label == LAMBDA:
            if state in seen:
                if raise_on_divergence:
                    raise LambdaDivergence(f"lambda cycle through {state!r} at position {pos}")
                return RunResult(state, pos, False, diverged=True)
            seen.add(state)
        else:
            pos += 1
            seen = {state}
