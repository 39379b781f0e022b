"""Lexical analysis of Java-syntax source text.

Tokenization, comment stripping/extraction, identifier and call-name
extraction, identifier word splitting, token normalization. This is a
tolerant lexer, not a grammar: malformed input degrades to warnings,
never failures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator

JAVA_KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null
    """.split()
)

PRIMITIVE_TYPES = frozenset(
    {"void", "int", "double", "float", "long", "short", "byte", "char", "boolean"}
)

# Longest-match first.
_MULTI_OPERATORS = (
    ">>>=", ">>>", "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "->",
    "::",
)

_PUNCTUATION = frozenset("(){}[];,.")

_NUMBER_RE = re.compile(
    r"0[xX][0-9a-fA-F_]+[lL]?"
    r"|0[bB][01_]+[lL]?"
    r"|\d[\d_]*\.?[\d_]*(?:[eE][+-]?\d+)?[fFdDlL]?"
    r"|\.\d[\d_]*(?:[eE][+-]?\d+)?[fFdD]?"
)

_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")

_WORD_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")


class TokenKind(str, Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    NUMBER = "number"
    STRING_LITERAL = "string_literal"
    CHAR_LITERAL = "char_literal"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"


class NormScheme(str, Enum):
    """Token-abstraction schemes mirroring clone category II insensitivity."""

    NONE = "none"
    ABSTRACT_IDS = "abstract_ids"
    ABSTRACT_IDS_AND_LITERALS = "abstract_ids_and_literals"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source_id: str = ""
    warnings: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def lexemes(self) -> tuple[str, ...]:
        return tuple(t.lexeme for t in self.tokens)


@dataclass(frozen=True)
class CommentBlock:
    text: str
    style: str  # "line" or "block"


class _Scanner:
    """Single-pass scanner shared by tokenize/strip/extract operations."""

    def __init__(self, text: str):
        self.text = text
        self.n = len(text)
        self.i = 0
        self.line = 1
        self.tokens: list[Token] = []
        self.comments: list[CommentBlock] = []
        # Spans (start, end) of comment regions in the original text.
        self.comment_spans: list[tuple[int, int]] = []
        self.warnings: list[str] = []

    def run(self) -> None:
        text, n = self.text, self.n
        while self.i < n:
            c = text[self.i]
            if c == "\n":
                self.line += 1
                self.i += 1
            elif c.isspace():
                self.i += 1
            elif c == "/" and text.startswith("//", self.i):
                self._line_comment()
            elif c == "/" and text.startswith("/*", self.i):
                self._block_comment()
            elif c == '"':
                self._string_literal()
            elif c == "'":
                self._char_literal()
            elif c == "@":
                self._annotation()
            elif c.isdigit() or (c == "." and self.i + 1 < n and text[self.i + 1].isdigit()):
                self._number()
            elif _IDENT_RE.match(text, self.i):
                self._identifier()
            else:
                self._operator_or_punct()

    def _emit(self, kind: TokenKind, lexeme: str) -> None:
        self.tokens.append(Token(kind, lexeme, self.line))

    def _line_comment(self) -> None:
        start = self.i
        end = self.text.find("\n", self.i)
        if end == -1:
            end = self.n
        body = self.text[start + 2 : end].strip()
        self.comments.append(CommentBlock(body, "line"))
        self.comment_spans.append((start, end))
        self.i = end

    def _block_comment(self) -> None:
        start = self.i
        end = self.text.find("*/", self.i + 2)
        if end == -1:
            self.warnings.append(f"unterminated block comment at line {self.line}")
            end = self.n
            span_end = self.n
            raw = self.text[start + 2 :]
        else:
            span_end = end + 2
            raw = self.text[start + 2 : end]
        lines = []
        for ln in raw.split("\n"):
            stripped = ln.strip()
            if stripped.startswith("*"):
                stripped = stripped[1:]
                if stripped.startswith(" "):
                    stripped = stripped[1:]
            lines.append(stripped)
        self.comments.append(CommentBlock("\n".join(lines).strip(), "block"))
        self.comment_spans.append((start, span_end))
        self.line += raw.count("\n")
        self.i = span_end

    def _string_literal(self) -> None:
        j = self.i + 1
        text, n = self.text, self.n
        while j < n:
            if text[j] == "\\":
                j += 2
                continue
            if text[j] == '"':
                j += 1
                break
            if text[j] == "\n":
                self.warnings.append(f"unterminated string literal at line {self.line}")
                break
            j += 1
        else:
            self.warnings.append(f"unterminated string literal at line {self.line}")
        self._emit(TokenKind.STRING_LITERAL, text[self.i : j])
        self.i = j

    def _char_literal(self) -> None:
        j = self.i + 1
        text, n = self.text, self.n
        while j < n:
            if text[j] == "\\":
                j += 2
                continue
            if text[j] == "'":
                j += 1
                break
            if text[j] == "\n":
                self.warnings.append(f"unterminated char literal at line {self.line}")
                break
            j += 1
        else:
            self.warnings.append(f"unterminated char literal at line {self.line}")
        self._emit(TokenKind.CHAR_LITERAL, text[self.i : j])
        self.i = j

    def _annotation(self) -> None:
        # Annotations are discarded: `@` plus the following dotted name.
        self.i += 1
        while True:
            m = _IDENT_RE.match(self.text, self.i)
            if not m:
                break
            self.i = m.end()
            if self.i < self.n and self.text[self.i] == ".":
                self.i += 1
            else:
                break

    def _number(self) -> None:
        m = _NUMBER_RE.match(self.text, self.i)
        assert m is not None
        self._emit(TokenKind.NUMBER, m.group())
        self.i = m.end()

    def _identifier(self) -> None:
        m = _IDENT_RE.match(self.text, self.i)
        assert m is not None
        lexeme = m.group()
        kind = TokenKind.KEYWORD if lexeme in JAVA_KEYWORDS else TokenKind.IDENTIFIER
        self._emit(kind, lexeme)
        self.i = m.end()

    def _operator_or_punct(self) -> None:
        for op in _MULTI_OPERATORS:
            if self.text.startswith(op, self.i):
                self._emit(TokenKind.OPERATOR, op)
                self.i += len(op)
                return
        c = self.text[self.i]
        kind = TokenKind.PUNCTUATION if c in _PUNCTUATION else TokenKind.OPERATOR
        self._emit(kind, c)
        self.i += 1


@lru_cache(maxsize=4096)
def _scan(text: str) -> _Scanner:
    s = _Scanner(text)
    s.run()
    return s


def clear_caches() -> None:
    """Drop memoized scan results (used before timed benchmark runs)."""
    _scan.cache_clear()


def tokenize(text: str, source_id: str = "") -> TokenStream:
    """Lex source text into a comment- and whitespace-free token stream."""
    s = _scan(text)
    return TokenStream(tuple(s.tokens), source_id, tuple(s.warnings))


def strip_comments(text: str) -> str:
    """Replace every comment region with a single space."""
    s = _scan(text)
    if not s.comment_spans:
        return text
    out = []
    prev = 0
    for start, end in s.comment_spans:
        out.append(text[prev:start])
        out.append(" ")
        prev = end
    out.append(text[prev:])
    return "".join(out)


def extract_comments(text: str) -> list[CommentBlock]:
    """All comment blocks in source order, delimiters and gutters removed."""
    return list(_scan(text).comments)


def extract_identifiers(ts: TokenStream) -> list[str]:
    """Identifier lexemes with multiplicities, in stream order."""
    return [t.lexeme for t in ts.tokens if t.kind is TokenKind.IDENTIFIER]


def extract_call_names(ts: TokenStream) -> set[str]:
    """Names of invoked functions/methods (declarations excluded).

    Heuristic: a name followed by `(` is a declaration when the preceding
    token is a plausible type (void/primitive or a capitalized identifier)
    and the construct sits directly inside a type body; `new Foo(...)` is a
    constructor use, not a named call.
    """
    calls: set[str] = set()
    tokens = ts.tokens
    # Context stack: True for a type body, False for any other brace scope.
    ctx: list[bool] = []
    pending_type_body = False
    for idx, tok in enumerate(tokens):
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in ("class", "interface", "enum"):
            pending_type_body = True
        elif tok.lexeme == "{":
            ctx.append(pending_type_body)
            pending_type_body = False
        elif tok.lexeme == "}":
            if ctx:
                ctx.pop()
        elif (
            tok.kind is TokenKind.IDENTIFIER
            and idx + 1 < len(tokens)
            and tokens[idx + 1].lexeme == "("
        ):
            prev = tokens[idx - 1] if idx > 0 else None
            if prev is not None and prev.lexeme == "new":
                continue
            # Top level counts as a declaration context so bare method
            # fragments (`void f() { ... }`) are not read as calls.
            in_type_body = ctx[-1] if ctx else True
            type_ish = prev is not None and (
                (prev.kind is TokenKind.KEYWORD and prev.lexeme in PRIMITIVE_TYPES)
                or (prev.kind is TokenKind.IDENTIFIER and prev.lexeme[:1].isupper())
                or prev.lexeme in (">", "]")
            )
            if in_type_body and type_ish:
                continue  # method declaration
            calls.add(tok.lexeme)
    return calls


def split_identifier(name: str) -> list[str]:
    """Split a name on camelCase boundaries, digits, and underscores."""
    return [w.lower() for w in _WORD_RE.findall(name)]


def normalize_tokens(ts: TokenStream, scheme: NormScheme | str = NormScheme.NONE) -> TokenStream:
    """Abstract identifiers (and optionally literals) to fixed placeholders."""
    scheme = NormScheme(scheme)
    if scheme is NormScheme.NONE:
        return ts
    abstract_literals = scheme is NormScheme.ABSTRACT_IDS_AND_LITERALS
    out = []
    for t in ts.tokens:
        if t.kind is TokenKind.IDENTIFIER:
            out.append(Token(t.kind, "ID", t.line))
        elif abstract_literals and t.kind is TokenKind.NUMBER:
            out.append(Token(t.kind, "NUM", t.line))
        elif abstract_literals and t.kind in (TokenKind.STRING_LITERAL, TokenKind.CHAR_LITERAL):
            out.append(Token(t.kind, "STR", t.line))
        else:
            out.append(t)
    return TokenStream(tuple(out), ts.source_id, ts.warnings)
