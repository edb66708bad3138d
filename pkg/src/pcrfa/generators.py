"""Seeded random automata for bounded-exhaustive checks."""

from __future__ import annotations

import random

from .automata import LAMBDA, Alphabet, PartialFA
from .multihead import MultiHeadRFA, translatable

SYMBOLS = "abc"


def random_dfa(rng: random.Random, max_states: int = 5, max_symbols: int = 3) -> PartialFA:
    """A fully defined DFA with 1..max_states states over 1..max_symbols symbols."""
    n = rng.randint(1, max_states)
    alphabet = Alphabet(SYMBOLS[: rng.randint(1, max_symbols)])
    states = [f"q{i}" for i in range(n)]
    trans = {(q, a): rng.choice(states) for q in states for a in alphabet}
    finals = {q for q in states if rng.random() < 0.5}
    return PartialFA(alphabet, states, "q0", finals, trans)


def random_dfas(seed: int, count: int, **kw) -> list[PartialFA]:
    rng = random.Random(seed)
    return [random_dfa(rng, **kw) for _ in range(count)]


def random_multihead(
    rng: random.Random,
    heads: int = 2,
    max_states: int = 4,
    max_symbols: int = 2,
    transitions: int = 3,
) -> MultiHeadRFA:
    """A machine with (up to) ``transitions`` distinct (state, vector) keys.

    Sources are drawn from states already reachable from the start, so
    runs get past the first move.
    """
    n = rng.randint(1, max_states)
    alphabet = Alphabet(SYMBOLS[: rng.randint(1, max_symbols)])
    states = [f"q{i}" for i in range(n)]
    labels = list(alphabet) + [LAMBDA]
    transitions = min(transitions, n * len(labels) ** heads)
    trans = {}
    reached = ["q0"]
    while len(trans) < transitions:
        vec = tuple(rng.choice(labels) for _ in range(heads))
        tgt = rng.choice(states)
        trans[rng.choice(reached), vec] = tgt
        if tgt not in reached:
            reached.append(tgt)
    finals = {q for q in states if rng.random() < 0.5}
    return MultiHeadRFA(alphabet, heads, states, "q0", finals, trans)


def reversible_multiheads(
    seed: int, count: int, min_transitions: int = 2, max_transitions: int = 6, **kw
) -> list[MultiHeadRFA]:
    """``count`` machines that pass the reversibility check and can be
    translated.  Each slot fixes a transition count, then draws whole
    machines until one passes; failing draws are discarded."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(min_transitions, max_transitions)
        while True:
            m = random_multihead(rng, transitions=k, **kw)
            if translatable(m):
                out.append(m)
                break
    return out
