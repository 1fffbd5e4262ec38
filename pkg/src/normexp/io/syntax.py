"""Text format for theories (``.dfl``).

::

    # comment
    facts: insolvent, creditLicense.
    s2: creditLicense => creditActivity.
    s4: banned => -creditActivity.
    s4 > s2.

Arrows: ``->`` strict, ``=>`` defeasible, ``~>`` defeater. Rule labels may be omitted;
missing ones become the smallest unused ``r<k>`` in file order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..core import DefeasibleTheory, Literal, Rule, RuleKind

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->|=>|~>)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[:,.>\-])
""", re.VERBOSE)

_KINDS = {"->": RuleKind.STRICT, "=>": RuleKind.DEFEASIBLE, "~>": RuleKind.DEFEATER}
FACTS_KEYWORD = "facts"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    message: str
    expected: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


class TheorySyntaxError(ValueError):
    """Raised by :func:`load_theory` with every error found in the input."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


@dataclass(frozen=True)
class _Tok:
    kind: str          # ident, arrow, punct, eof, bad
    text: str
    line: int
    col: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.col, max(1, len(self.text)))

    @property
    def end(self) -> SourceSpan:
        return SourceSpan(self.line, self.col + max(1, len(self.text)), 1)

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            toks.append(_Tok("bad", text[pos], line, pos - line_start + 1))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


@dataclass
class _RawRule:
    label: str | None
    label_tok: _Tok | None
    body: list[Literal]
    head: Literal
    kind: RuleKind


@dataclass
class _Parser:
    toks: list[_Tok]
    pos: int = 0
    errors: list[ParseError] = field(default_factory=list)
    facts: list[Literal] = field(default_factory=list)
    rules: list[_RawRule] = field(default_factory=list)
    sups: list[tuple[str, str]] = field(default_factory=list)

    class _Abort(Exception):
        pass

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, expected: tuple[str, ...], what: str | None = None):
        t = self.tok
        found = "unexpected character " + repr(t.text) if t.kind == "bad" else t.describe()
        msg = f"expected {what or ' or '.join(expected)}, found {found}"
        self.errors.append(ParseError(t.span, msg, expected))
        raise self._Abort

    def expect_punct(self, ch: str) -> _Tok:
        if self.tok.kind == "punct" and self.tok.text == ch:
            return self.advance()
        self.fail((repr(ch),))

    def end_statement(self) -> None:
        t = self.tok
        if t.kind == "punct" and t.text == ".":
            self.advance()
            return
        prev = self.toks[self.pos - 1] if self.pos else None
        if prev is not None and (t.kind == "eof" or t.line > prev.line):
            # a statement left open at the end of its line: report and carry on
            self.errors.append(ParseError(prev.end, f"expected '.' after {prev.describe()}", ("'.'",)))
            return
        self.fail(("'.'",))

    def literal(self) -> Literal:
        negated = False
        if self.tok.kind == "punct" and self.tok.text == "-":
            self.advance()
            negated = True
        if self.tok.kind != "ident":
            self.fail(("ATOM",), "an atom" if negated else "a literal")
        return Literal(self.advance().text, not negated)

    def literal_list(self) -> list[Literal]:
        out = [self.literal()]
        while self.tok.kind == "punct" and self.tok.text == ",":
            self.advance()
            out.append(self.literal())
        return out

    def rule_tail(self, label: str | None, label_tok: _Tok | None) -> None:
        body: list[Literal] = []
        if self.tok.kind != "arrow":
            body = self.literal_list()
        if self.tok.kind != "arrow":
            self.fail(("ARROW",), "'->', '=>' or '~>'")
        kind = _KINDS[self.advance().text]
        head = self.literal()
        self.end_statement()
        self.rules.append(_RawRule(label, label_tok, body, head, kind))

    def statement(self) -> None:
        t = self.tok
        if t.kind == "ident":
            nxt = self.peek()
            if nxt.kind == "punct" and nxt.text == ":":
                self.advance()
                self.advance()
                if t.text == FACTS_KEYWORD:
                    self.facts.extend(self.literal_list())
                    self.end_statement()
                else:
                    self.rule_tail(t.text, t)
                return
            if nxt.kind == "punct" and nxt.text == ">":
                self.advance()
                self.advance()
                if self.tok.kind != "ident":
                    self.fail(("LABEL",), "a rule label")
                weaker = self.advance().text
                self.end_statement()
                self.sups.append((t.text, weaker))
                return
            self.rule_tail(None, None)
            return
        if t.kind == "arrow" or (t.kind == "punct" and t.text == "-"):
            self.rule_tail(None, None)
            return
        self.fail(("LABEL", "'facts:'", "ARROW", "lit"), "a statement")

    def recover(self, start: int) -> None:
        """Skip to just past the next '.' or to the first token on a later line."""
        line = self.toks[start].line
        if self.pos == start:
            self.advance()
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "punct" and t.text == ".":
                self.advance()
                return
            if t.line > line and self.pos > start:
                return
            self.advance()

    def run(self) -> None:
        while self.tok.kind != "eof":
            start = self.pos
            try:
                self.statement()
            except self._Abort:
                self.recover(start)


def _assign_labels(raw: list[_RawRule], errors: list[ParseError]) -> list[Rule]:
    taken = {r.label for r in raw if r.label is not None}
    seen: set[str] = set()
    out: list[Rule] = []
    k = 1
    for r in raw:
        label = r.label
        if label is None:
            while f"r{k}" in taken:
                k += 1
            label = f"r{k}"
            taken.add(label)
        elif label in seen:
            errors.append(ParseError(r.label_tok.span, f"duplicate rule label {label!r}", ()))
            continue
        seen.add(label)
        out.append(Rule(label, frozenset(r.body), r.head, r.kind))
    return out


def parse_theory(text: str) -> tuple[DefeasibleTheory | None, list[ParseError]]:
    """Parse ``text``. Returns ``(theory, [])`` or ``(None, errors)``; never raises."""
    p = _Parser(_lex(text))
    p.run()
    errors = p.errors
    rules = _assign_labels(p.rules, errors)
    if errors:
        return None, errors
    order = tuple(dict.fromkeys(p.facts))
    return DefeasibleTheory(frozenset(p.facts), frozenset(rules), frozenset(p.sups), order), []


def load_theory(text: str) -> DefeasibleTheory:
    """Parse ``text`` or raise :class:`TheorySyntaxError`."""
    theory, errors = parse_theory(text)
    if errors:
        raise TheorySyntaxError(errors)
    return theory


def format_rule(r: Rule) -> str:
    body = ", ".join(str(a) for a in sorted(r.antecedents))
    lhs = f"{body} " if body else ""
    return f"{r.label}: {lhs}{r.kind.arrow} {r.consequent}."


def serialize_theory(theory: DefeasibleTheory) -> str:
    """Canonical text: facts, then rules by label, then superiority pairs."""
    lines = []
    if theory.facts:
        lines.append(f"{FACTS_KEYWORD}: " + ", ".join(str(f) for f in sorted(theory.facts)) + ".")
    lines.extend(format_rule(r) for r in theory.sorted_rules)
    lines.extend(f"{a} > {b}." for a, b in sorted(theory.superiority))
    return "\n".join(lines) + "\n" if lines else ""
