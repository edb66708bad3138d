"""Line-oriented text format for every automaton kind.

Example::

    type dfa
    alphabet a b
    states q0 q1
    start q0
    final q1
    trans q0 a q1

``-`` is the lambda label; multi-head labels are comma-joined vectors such
as ``a,-``.  Systems (``type pcrfa``) declare ``query K2=2 ...`` and
repeat ``component NAME`` blocks.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .automata import (
    END_MARKER,
    LAMBDA,
    LAMBDA_TOKEN,
    Alphabet,
    AutomatonError,
    PartialFA,
)
from .multihead import MultiHeadRFA, render_vector
from .system import PCRFASystem

KINDS = ("dfa", "rfa", "mhrfa", "pcrfa")
Model = Union[PartialFA, MultiHeadRFA, PCRFASystem]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class FormatSyntaxError(ParseError):
    pass


class FormatSemanticError(ParseError):
    pass


@dataclass(frozen=True)
class AutomatonDocument:
    kind: str
    body: Model


@dataclass
class _Tok:
    text: str
    line: int
    col: int


@dataclass
class _Block:
    line: int
    name: str = ""
    states: list | None = None
    start: _Tok | None = None
    final: list = field(default_factory=list)
    trans: list = field(default_factory=list)
    seen: set = field(default_factory=set)


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        i = 0
        while i < len(line):
            if line[i].isspace():
                i += 1
                continue
            j = i
            while j < len(line) and not line[j].isspace():
                j += 1
            toks.append(_Tok(line[i:j], lineno, i + 1))
            i = j
        if toks:
            yield toks


def parse(text: str) -> AutomatonDocument:
    lines = list(_tokenize(text))
    if not lines:
        raise FormatSyntaxError("empty document", 1)
    head = lines[0]
    if head[0].text != "type" or len(head) != 2:
        raise FormatSyntaxError("document must start with 'type dfa|rfa|mhrfa|pcrfa'", head[0].line, head[0].col)
    kind = head[1].text
    if kind not in KINDS:
        raise FormatSemanticError(f"unknown automaton type {kind!r}", head[1].line, head[1].col)

    alphabet_tok = heads_tok = None
    queries: list[tuple[_Tok, str, str]] = []
    blocks: list[_Block] = []
    if kind != "pcrfa":
        blocks.append(_Block(head[0].line))

    for toks in lines[1:]:
        key, args = toks[0], toks[1:]
        k = key.text
        if k == "type":
            raise FormatSemanticError("duplicate 'type' line", key.line, key.col)
        if k == "alphabet":
            if alphabet_tok is not None:
                raise FormatSemanticError("duplicate 'alphabet' line", key.line, key.col)
            alphabet_tok = toks
        elif k == "heads":
            if kind != "mhrfa":
                raise FormatSemanticError("'heads' is only valid for mhrfa", key.line, key.col)
            if heads_tok is not None:
                raise FormatSemanticError("duplicate 'heads' line", key.line, key.col)
            if len(args) != 1 or not args[0].text.isdigit() or int(args[0].text) < 1:
                raise FormatSyntaxError("'heads' takes one positive integer", key.line, key.col)
            heads_tok = args[0]
        elif k == "query":
            if kind != "pcrfa":
                raise FormatSemanticError("'query' is only valid for pcrfa", key.line, key.col)
            for a in args:
                name, eq, idx = a.text.partition("=")
                if not eq or not name or not idx.isdigit():
                    raise FormatSyntaxError(f"malformed query binding {a.text!r}", a.line, a.col)
                queries.append((a, name, idx))
        elif k == "component":
            if kind != "pcrfa":
                raise FormatSemanticError("'component' is only valid for pcrfa", key.line, key.col)
            if len(args) != 1:
                raise FormatSyntaxError("'component' takes one name", key.line, key.col)
            blocks.append(_Block(key.line, args[0].text))
        elif k in ("states", "start", "final", "trans"):
            if not blocks:
                raise FormatSemanticError(f"'{k}' before any 'component' line", key.line, key.col)
            b = blocks[-1]
            if k != "trans":
                if k in b.seen:
                    raise FormatSemanticError(f"duplicate '{k}' line", key.line, key.col)
                b.seen.add(k)
            if k == "states":
                b.states = args
            elif k == "start":
                if len(args) != 1:
                    raise FormatSyntaxError("'start' takes one state", key.line, key.col)
                b.start = args[0]
            elif k == "final":
                b.final = args
            else:
                if len(args) != 3:
                    raise FormatSyntaxError("'trans' takes FROM LABEL TO", key.line, key.col)
                b.trans.append(args)
        else:
            raise FormatSyntaxError(f"unknown keyword {k!r}", key.line, key.col)

    if alphabet_tok is None:
        raise FormatSemanticError("missing 'alphabet' line", head[0].line)
    try:
        alphabet = Alphabet(t.text for t in alphabet_tok[1:])
    except AutomatonError as e:
        raise FormatSemanticError(str(e), alphabet_tok[0].line, alphabet_tok[0].col) from None
    if kind == "mhrfa" and heads_tok is None:
        raise FormatSemanticError("missing 'heads' line", head[0].line)
    heads = int(heads_tok.text) if heads_tok is not None else 1
    if kind == "pcrfa" and not blocks:
        raise FormatSemanticError("a system needs at least one component", head[0].line)

    def label(tok: _Tok) -> str:
        if tok.text == LAMBDA_TOKEN:
            return LAMBDA
        if tok.text in alphabet or (kind == "mhrfa" and tok.text == END_MARKER):
            return tok.text
        raise FormatSemanticError(f"unknown symbol {tok.text!r}", tok.line, tok.col)

    def build(b: _Block):
        if b.states is None:
            raise FormatSemanticError("missing 'states' line", b.line)
        if b.start is None:
            raise FormatSemanticError("missing 'start' line", b.line)
        states = set()
        for t in b.states:
            if t.text in states:
                raise FormatSemanticError(f"duplicate state {t.text!r}", t.line, t.col)
            states.add(t.text)

        def state(t: _Tok) -> str:
            if t.text not in states:
                raise FormatSemanticError(f"unknown state {t.text!r}", t.line, t.col)
            return t.text

        start = state(b.start)
        finals = {state(t) for t in b.final}
        trans = {}
        for src, lab, tgt in b.trans:
            if kind == "mhrfa":
                parts = lab.text.split(",")
                if len(parts) != heads:
                    raise FormatSemanticError(
                        f"label vector {lab.text!r} does not have {heads} entries", lab.line, lab.col
                    )
                key_label = tuple(label(_Tok(p, lab.line, lab.col)) for p in parts)
            else:
                key_label = label(lab)
            key = (state(src), key_label)
            if key in trans:
                raise FormatSemanticError(
                    f"duplicate transition key ({src.text}, {lab.text})", src.line, src.col
                )
            trans[key] = state(tgt)
        try:
            if kind == "mhrfa":
                return MultiHeadRFA(alphabet, heads, states, start, finals, trans)
            return PartialFA(alphabet, states, start, finals, trans)
        except AutomatonError as e:
            raise FormatSemanticError(str(e), b.line) from None

    if kind != "pcrfa":
        return AutomatonDocument(kind, build(blocks[0]))

    components = [build(b) for b in blocks]
    names = [b.name for b in blocks]
    seen_names = set()
    for b in blocks:
        if b.name in seen_names:
            raise FormatSemanticError(f"duplicate component name {b.name!r}", b.line)
        seen_names.add(b.name)
    qmap: dict[str, int] = {}
    for tok, name, idx in queries:
        if name in qmap:
            raise FormatSemanticError(f"duplicate query state {name!r}", tok.line, tok.col)
        if not 1 <= int(idx) <= len(components):
            raise FormatSemanticError(f"query {name} targets missing component {idx}", tok.line, tok.col)
        if not any(name in c.states for c in components):
            raise FormatSemanticError(f"query state {name!r} is not a state of any component", tok.line, tok.col)
        qmap[name] = int(idx)
    try:
        body = PCRFASystem(alphabet, tuple(components), qmap, tuple(names))
    except AutomatonError as e:
        line = queries[0][0].line if queries else head[0].line
        raise FormatSemanticError(str(e), line) from None
    return AutomatonDocument(kind, body)


def _render_label(label) -> str:
    if isinstance(label, tuple):
        return render_vector(label)
    return label or LAMBDA_TOKEN


def _block_lines(fa) -> list[str]:
    out = [
        "states " + " ".join(sorted(fa.states)),
        f"start {fa.start}",
        ("final " + " ".join(sorted(fa.finals))).rstrip(),
    ]
    for (src, lab), tgt in sorted(fa.trans.items()):
        out.append(f"trans {src} {_render_label(lab)} {tgt}")
    return out


def serialize(doc: AutomatonDocument) -> str:
    body = doc.body
    out = [f"type {doc.kind}", "alphabet " + " ".join(body.alphabet.symbols)]
    if isinstance(body, MultiHeadRFA):
        out.append(f"heads {body.heads}")
        out += _block_lines(body)
    elif isinstance(body, PCRFASystem):
        if body.query_states:
            qs = sorted(body.query_states.items(), key=lambda kv: (kv[1], kv[0]))
            out.append("query " + " ".join(f"{k}={j}" for k, j in qs))
        for name, comp in zip(body.names, body.components):
            out.append("")
            out.append(f"component {name}")
            out += _block_lines(comp)
    else:
        out += _block_lines(body)
    return "\n".join(out) + "\n"


def document(model: Model, kind: str | None = None) -> AutomatonDocument:
    if kind is None:
        if isinstance(model, PCRFASystem):
            kind = "pcrfa"
        elif isinstance(model, MultiHeadRFA):
            kind = "mhrfa"
        else:
            kind = "rfa" if model.report.reversible else "dfa"
    return AutomatonDocument(kind, model)


def load(path) -> AutomatonDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: AutomatonDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(doc))
