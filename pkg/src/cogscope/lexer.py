"""MiniLang lexer and physical-line accounting.

Tokens keep exact byte offsets so the original source can be reconstructed
and so AST spans nest correctly.  Comments (// and /* */) and whitespace are
skipped but remembered by the line classifier: a physical line counts toward
LOC only when it bears at least one token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LexError, Span

KEYWORDS = frozenset(
    {
        "void",
        "int",
        "if",
        "else",
        "switch",
        "case",
        "default",
        "for",
        "while",
        "do",
        "parallel",
        "interrupt",
        "return",
    }
)

BUILTINS = frozenset({"read", "print"})

# Operator occurrences that count for N_i1 / n(k) and for per-statement
# operator counts.  Plain '=', '::', subscripts, calls and commas do not count.
COUNTED_OPERATORS = frozenset(
    {
        "+", "-", "*", "/", "%",
        "<", "<=", ">", ">=", "==", "!=",
        "&&", "||", "!",
        "&", "|", "^", "<<", ">>",
        "+=", "-=", "*=", "/=", "%=",
        "++", "--",
    }
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*|/\*(?:[^*]|\*(?!/))*\*/)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><<|>>|<=|>=|==|!=|&&|\|\||\+=|-=|\*=|/=|%=|\+\+|--|[+\-*/%<>=!&|^])
  | (?P<punct>::|[(){}\[\],;:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # identifier | integer-literal | string-literal | keyword | operator-symbol | punctuation
    text: str
    span: Span

    @property
    def line(self) -> int:
        return self.span.line


_KIND_BY_GROUP = {
    "string": "string-literal",
    "int": "integer-literal",
    "op": "operator-symbol",
    "punct": "punctuation",
}


def tokenize(source: str) -> list[Token]:
    """Lex MiniLang source into a token list.

    Raises LexError on the first unrecognizable character or unterminated
    block comment / string literal.
    """
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(source)
    for m in _TOKEN_RE.finditer(source):
        if m.start() != pos:
            break  # gap: unrecognizable input at pos
        text = m.group(0)
        group = m.lastgroup
        if group not in ("ws", "comment"):
            col = pos - line_start + 1
            if text == "/" and source.startswith("/*", pos):
                raise LexError("unterminated block comment", Span(pos, pos + 2, line, col))
            tokens.append(
                Token(
                    "keyword" if group == "ident" and text in KEYWORDS
                    else "identifier" if group == "ident"
                    else _KIND_BY_GROUP[group],
                    text,
                    Span(pos, pos + len(text), line, col),
                )
            )
        if "\n" in text:
            line += text.count("\n")
            line_start = pos + text.rfind("\n") + 1
        pos = m.end()
    if pos != n:
        span = Span(pos, pos + 1, line, pos - line_start + 1)
        ch = source[pos]
        if ch == '"':
            raise LexError("unterminated string literal", span)
        if source.startswith("/*", pos):
            raise LexError("unterminated block comment", span)
        raise LexError(f"unrecognizable character {ch!r}", span)
    return tokens


# ============================================================
# LINE CLASSIFICATION (LOC and per-line counts for WICS)
# ============================================================


@dataclass(frozen=True)
class LineRecord:
    """One token-bearing physical line."""

    lineno: int
    identifiers: int
    operators: int
    literals: int

    @property
    def n(self) -> int:
        """Identifier + operator count, the n(k) of the WICS sum."""
        return self.identifiers + self.operators


@dataclass(frozen=True)
class LineInfo:
    loc: int
    lines: tuple[LineRecord, ...]


def classify_lines(tokens: list[Token]) -> LineInfo:
    """Group tokens by physical line; blank and comment-only lines drop out."""
    by_line: dict[int, list[Token]] = {}
    for tok in tokens:
        by_line.setdefault(tok.line, []).append(tok)
    records = []
    for lineno in sorted(by_line):
        idents = ops = lits = 0
        for tok in by_line[lineno]:
            if tok.kind == "identifier":
                idents += 1
            elif tok.kind == "operator-symbol" and tok.text in COUNTED_OPERATORS:
                ops += 1
            elif tok.kind in ("integer-literal", "string-literal"):
                lits += 1
        records.append(LineRecord(lineno, idents, ops, lits))
    return LineInfo(loc=len(records), lines=tuple(records))


def count_lines(source: str) -> LineInfo:
    """LOC of raw source: number of lines bearing at least one token."""
    return classify_lines(tokenize(source))
