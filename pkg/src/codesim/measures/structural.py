"""Structure-aware similarity measures.

A heuristic brace/keyword-driven structural parser (not a full Java
grammar) feeds the AST, graph, PDG and metrics measures. Function-call,
name-semantics and statement-diff measures reuse the lexer directly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from codesim.core import MeasureId, SimilarityScore, SourceUnit
from codesim.lexsrc import (
    PRIMITIVE_TYPES,
    NormScheme,
    Token,
    TokenKind,
    extract_call_names,
    extract_identifiers,
    normalize_tokens,
    split_identifier,
    strip_comments,
    tokenize,
)
from codesim.measures.lexical import cosine, jaccard, lcs_length


class StructuralParse(ValueError):
    """Raised when brace recovery fails entirely."""


@dataclass
class TreeNode:
    kind: str
    label: str | None = None
    children: list["TreeNode"] = field(default_factory=list)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class CodeGraph:
    labels: tuple[str, ...]
    edges: tuple[tuple[int, str, int], ...]  # (src, "seq"|"nest", dst)


@dataclass(frozen=True)
class PdgGraph:
    node_kinds: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # (parent kind, child kind) signatures


@dataclass(frozen=True)
class MetricVector:
    loc: int
    tokens: int
    cyclomatic: int
    variables: int
    methods: int
    max_nesting: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.loc, self.tokens, self.cyclomatic, self.variables, self.methods, self.max_nesting)


_CONTROL_KEYWORDS = frozenset({"if", "for", "while", "do", "switch", "try"})
_PREDICATE_KINDS = frozenset({"if", "for", "while", "do", "switch", "case", "catch"})
_BRANCH_TOKENS = frozenset({"if", "for", "while", "case", "catch"})


class _Parser:
    """Recursive-descent structural pass over the token stream.

    Driven by keywords, braces, parentheses and semicolons; anything
    unrecognized becomes other_stmt. Never fails on malformed nesting:
    missing braces are recovered at end of input.
    """

    def __init__(self, tokens: tuple[Token, ...]):
        self.tokens = tokens
        self.i = 0

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def peek(self) -> str | None:
        return self.tokens[self.i].lexeme if self.i < len(self.tokens) else None

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def skip_parens(self) -> list[Token]:
        """Consume a balanced (...) group, returning its inner tokens."""
        inner: list[Token] = []
        if self.peek() != "(":
            return inner
        self.advance()
        depth = 1
        while not self.at_end():
            t = self.advance()
            if t.lexeme == "(":
                depth += 1
            elif t.lexeme == ")":
                depth -= 1
                if depth == 0:
                    break
            if depth > 0:
                inner.append(t)
        return inner

    def parse_unit(self) -> TreeNode:
        root = TreeNode("compilation_unit")
        while not self.at_end():
            if self.peek() == "}":
                self.advance()  # stray close brace: recover by skipping
                continue
            node = self.parse_statement(in_type_body=False)
            if node is not None:
                root.children.extend(node)
        return root

    def parse_body(self, in_type_body: bool) -> list[TreeNode]:
        """Statements up to the matching `}` (already inside the brace)."""
        out: list[TreeNode] = []
        while not self.at_end() and self.peek() != "}":
            nodes = self.parse_statement(in_type_body)
            if nodes:
                out.extend(nodes)
        if self.peek() == "}":
            self.advance()
        return out

    def parse_embedded(self) -> list[TreeNode]:
        """Body of a control statement: braced members or one statement."""
        if self.peek() == "{":
            self.advance()
            return self.parse_body(in_type_body=False)
        nodes = self.parse_statement(in_type_body=False)
        return nodes or []

    def parse_statement(self, in_type_body: bool) -> list[TreeNode]:
        if self.at_end():
            return []
        lex = self.peek()
        if lex == ";":
            self.advance()
            return []
        if lex == "{":
            self.advance()
            return [TreeNode("block", children=self.parse_body(in_type_body=False))]
        if lex in _CONTROL_KEYWORDS:
            return [self.parse_control()]
        if lex == "else":
            self.advance()
            if self.peek() == "if":
                inner = self.parse_control()
                return [TreeNode("else", children=[inner])]
            return [TreeNode("else", children=self.parse_embedded())]
        if lex == "return":
            self.advance()
            self.consume_simple()
            return [TreeNode("return")]
        if lex in ("case", "default"):
            return [self.parse_case()]
        if lex in ("catch", "finally"):
            # Orphan catch/finally (normally consumed by try): tolerate.
            return [self.parse_catch_like(self.advance().lexeme)]
        if lex in ("import", "package"):
            self.advance()
            self.consume_simple()
            return []
        return self.parse_declaration_or_simple(in_type_body)

    def parse_control(self) -> TreeNode:
        kw = self.advance().lexeme
        if kw == "try":
            node = TreeNode("try")
            if self.peek() == "(":
                self.skip_parens()  # try-with-resources
            if self.peek() == "{":
                self.advance()
                node.children = self.parse_body(in_type_body=False)
            while self.peek() in ("catch", "finally"):
                node.children.append(self.parse_catch_like(self.advance().lexeme))
            return node
        if kw == "do":
            node = TreeNode("do", children=self.parse_embedded())
            if self.peek() == "while":
                self.advance()
                self.skip_parens()
                self.consume_simple()
            return node
        self_node = TreeNode(kw)
        self.skip_parens()
        if kw == "switch":
            if self.peek() == "{":
                self.advance()
                self_node.children = self.parse_body(in_type_body=False)
            return self_node
        self_node.children = self.parse_embedded()
        return self_node

    def parse_catch_like(self, kw: str) -> TreeNode:
        node = TreeNode("catch" if kw == "catch" else "block")
        self.skip_parens()
        if self.peek() == "{":
            self.advance()
            node.children = self.parse_body(in_type_body=False)
        return node

    def parse_case(self) -> TreeNode:
        self.advance()  # case / default
        while not self.at_end() and self.peek() != ":":
            self.advance()
        if self.peek() == ":":
            self.advance()
        node = TreeNode("case")
        while not self.at_end() and self.peek() not in ("case", "default", "}"):
            node.children.extend(self.parse_statement(in_type_body=False))
        return node

    def consume_simple(self) -> list[Token]:
        """Tokens up to the terminating `;` at paren depth 0."""
        out: list[Token] = []
        depth = 0
        while not self.at_end():
            lex = self.peek()
            if lex == ";" and depth == 0:
                self.advance()
                break
            if lex in ("{", "}") and depth == 0:
                break  # malformed statement: stop at a brace boundary
            t = self.advance()
            if t.lexeme == "(":
                depth += 1
            elif t.lexeme == ")":
                depth = max(0, depth - 1)
            out.append(t)
        return out

    def parse_declaration_or_simple(self, in_type_body: bool) -> list[TreeNode]:
        """Type/method/field declarations and plain statements."""
        start = self.i
        head: list[Token] = []
        depth = 0
        kind_hint: str | None = None
        while not self.at_end():
            lex = self.peek()
            if lex in ("class", "interface", "enum") and depth == 0:
                kind_hint = "type_decl"
            if depth == 0 and lex in (";", "{", "}"):
                break
            t = self.advance()
            if t.lexeme == "(":
                depth += 1
            elif t.lexeme == ")":
                depth = max(0, depth - 1)
            head.append(t)
        if self.peek() == "{":
            self.advance()
            if kind_hint == "type_decl":
                label = _name_after(head, ("class", "interface", "enum"))
                return [TreeNode("type_decl", label, self.parse_body(in_type_body=True))]
            if any(t.lexeme == "(" for t in head):
                label = _method_name(head)
                body = TreeNode("block", children=self.parse_body(in_type_body=False))
                return [TreeNode("method_decl", label, [body])]
            return [TreeNode("block", children=self.parse_body(in_type_body=False))]
        if self.peek() == ";":
            self.advance()
        if self.i == start:  # no progress: drop one token to guarantee termination
            self.advance()
            return []
        return [_classify_simple(head)]


def _name_after(tokens: list[Token], keywords: tuple[str, ...]) -> str | None:
    for idx, t in enumerate(tokens):
        if t.lexeme in keywords and idx + 1 < len(tokens):
            return tokens[idx + 1].lexeme
    return None


def _method_name(tokens: list[Token]) -> str | None:
    for idx, t in enumerate(tokens):
        if t.lexeme == "(" and idx > 0 and tokens[idx - 1].kind is TokenKind.IDENTIFIER:
            return tokens[idx - 1].lexeme
    return None


def _is_type_token(t: Token) -> bool:
    if t.kind is TokenKind.KEYWORD and t.lexeme in PRIMITIVE_TYPES:
        return True
    return t.kind is TokenKind.IDENTIFIER and t.lexeme[:1].isupper()


def _classify_simple(tokens: list[Token]) -> TreeNode:
    """decl / assign / call / expr_stmt / other_stmt for a `;` statement."""
    if not tokens:
        return TreeNode("other_stmt")
    lexemes = [t.lexeme for t in tokens]
    has_assign = any(
        t.kind is TokenKind.OPERATOR and (t.lexeme == "=" or t.lexeme.endswith("=") and t.lexeme not in ("==", "!=", "<=", ">="))
        for t in tokens
    )
    is_decl_shape = len(tokens) >= 2 and _is_type_token(tokens[0]) and (
        tokens[1].kind is TokenKind.IDENTIFIER or tokens[1].lexeme == "["
    )
    if is_decl_shape and (len(lexemes) == 2 or has_assign or "[" in lexemes[1:3]):
        # Heuristic: `Type name ...` with init or bare declaration.
        name = next((t.lexeme for t in tokens[1:] if t.kind is TokenKind.IDENTIFIER), None)
        return TreeNode("decl", name)
    if has_assign:
        return TreeNode("assign")
    for idx, t in enumerate(tokens[:-1]):
        if t.kind is TokenKind.IDENTIFIER and tokens[idx + 1].lexeme == "(":
            return TreeNode("call", t.lexeme)
    if tokens[0].kind in (TokenKind.IDENTIFIER, TokenKind.NUMBER, TokenKind.OPERATOR):
        return TreeNode("expr_stmt")
    return TreeNode("other_stmt")


def build_ast(text: str) -> TreeNode:
    """Heuristic syntax tree; kinds and nesting only, never a full parse."""
    return _Parser(tokenize(text).tokens).parse_unit()


def _postorder(root: TreeNode) -> tuple[list[TreeNode], list[int]]:
    """Postorder nodes and, per node, the index of its leftmost leaf."""
    nodes: list[TreeNode] = []
    lml: list[int] = []

    def visit(n: TreeNode) -> int:
        first_leaf = None
        for c in n.children:
            idx = visit(c)
            if first_leaf is None:
                first_leaf = lml[idx]
        nodes.append(n)
        lml.append(first_leaf if first_leaf is not None else len(nodes) - 1)
        return len(nodes) - 1

    visit(root)
    return nodes, lml


def tree_edit_distance(t1: TreeNode, t2: TreeNode) -> int:
    """Zhang-Shasha ordered tree edit distance, unit costs.

    Relabel cost is 0 iff node kinds are equal; labels are ignored so
    renamed identifiers do not contribute distance.
    """
    n1, lml1 = _postorder(t1)
    n2, lml2 = _postorder(t2)
    kr1 = _keyroots(lml1)
    kr2 = _keyroots(lml2)
    td = [[0] * len(n2) for _ in range(len(n1))]

    for x in kr1:
        for y in kr2:
            _treedist(x, y, n1, n2, lml1, lml2, td)
    return td[len(n1) - 1][len(n2) - 1]


def _keyroots(lml: list[int]) -> list[int]:
    seen: dict[int, int] = {}
    for i, l in enumerate(lml):
        seen[l] = i  # last (highest) node per leftmost leaf
    return sorted(seen.values())


def _treedist(x, y, n1, n2, lml1, lml2, td) -> None:
    li, lj = lml1[x], lml2[y]
    m, n = x - li + 2, y - lj + 2
    fd = [[0] * n for _ in range(m)]
    for i in range(1, m):
        fd[i][0] = fd[i - 1][0] + 1
    for j in range(1, n):
        fd[0][j] = fd[0][j - 1] + 1
    for i in range(1, m):
        for j in range(1, n):
            ni, nj = li + i - 1, lj + j - 1
            if lml1[ni] == li and lml2[nj] == lj:
                rel = 0 if n1[ni].kind == n2[nj].kind else 1
                fd[i][j] = min(fd[i - 1][j] + 1, fd[i][j - 1] + 1, fd[i - 1][j - 1] + rel)
                td[ni][nj] = fd[i][j]
            else:
                i0, j0 = lml1[ni] - li, lml2[nj] - lj
                fd[i][j] = min(fd[i - 1][j] + 1, fd[i][j - 1] + 1, fd[i0][j0] + td[ni][nj])


def sim_ast(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    ta, tb = build_ast(a.text), build_ast(b.text)
    value = 1.0 - tree_edit_distance(ta, tb) / (ta.size() + tb.size())
    return SimilarityScore(value, MeasureId.AST)


_GRAPH_LABELS = {
    "type_decl": "class",
    "method_decl": "method",
    "expr_stmt": "stmt",
    "other_stmt": "stmt",
}


def build_graph(text: str) -> CodeGraph:
    """Statement graph: seq edges between siblings, nest edges to members."""
    root = build_ast(text)
    labels: list[str] = []
    edges: list[tuple[int, str, int]] = []
    index: dict[int, int] = {}

    def add_node(n: TreeNode) -> int:
        idx = labels_len = len(labels)
        labels.append(_GRAPH_LABELS.get(n.kind, n.kind))
        index[id(n)] = idx
        return labels_len

    def visit(n: TreeNode, parent_idx: int | None) -> None:
        prev_idx: int | None = None
        for c in n.children:
            idx = add_node(c)
            if parent_idx is not None:
                edges.append((parent_idx, "nest", idx))
            if prev_idx is not None:
                edges.append((prev_idx, "seq", idx))
            prev_idx = idx
            visit(c, idx)

    visit(root, None)
    return CodeGraph(tuple(labels), tuple(edges))


def sim_graph(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Cosine over node-label, edge-label and labeled-triple counts."""

    def features(g: CodeGraph) -> Counter:
        feats: Counter = Counter()
        for lb in g.labels:
            feats["n:" + lb] += 1
        for src, el, dst in g.edges:
            feats["e:" + el] += 1
            feats[f"t:{g.labels[src]}:{el}:{g.labels[dst]}"] += 1
        return feats

    ga, gb = build_graph(a.text), build_graph(b.text)
    return SimilarityScore(cosine(features(ga), features(gb)), MeasureId.GRAPH)


def build_pdg(text: str) -> PdgGraph:
    """Control-dependence edges: statement -> innermost enclosing predicate."""
    root = build_ast(text)
    kinds: list[str] = []
    edges: list[tuple[str, str]] = []

    def visit(n: TreeNode, predicate: str | None) -> None:
        for c in n.children:
            kinds.append(c.kind)
            if predicate is not None:
                edges.append((predicate, c.kind))
            visit(c, c.kind if c.kind in _PREDICATE_KINDS else predicate)

    visit(root, None)
    return PdgGraph(tuple(kinds), tuple(edges))


def sim_pdg(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Multiset Jaccard over control-dependence edge signatures.

    Two programs with no control dependence at all compare as identical.
    """
    ea = Counter(build_pdg(a.text).edges)
    eb = Counter(build_pdg(b.text).edges)
    if not ea and not eb:
        return SimilarityScore(1.0, MeasureId.PDG)
    inter = sum((ea & eb).values())
    union = sum((ea | eb).values())
    return SimilarityScore(inter / union, MeasureId.PDG)


def sim_calls(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Jaccard over call-name sets; two call-free files score 0.0."""
    ca = extract_call_names(tokenize(a.text))
    cb = extract_call_names(tokenize(b.text))
    if not ca and not cb:
        return SimilarityScore(0.0, MeasureId.CALLS)
    return SimilarityScore(len(ca & cb) / len(ca | cb), MeasureId.CALLS)


def compute_metrics(text: str) -> MetricVector:
    ts = tokenize(text)
    loc = sum(1 for ln in text.split("\n") if ln.strip())
    cyclomatic = 1 + sum(
        1
        for t in ts.tokens
        if t.lexeme in _BRANCH_TOKENS or t.lexeme in ("&&", "||", "?")
    )
    variables = 0
    lexes = ts.tokens
    for idx in range(len(lexes) - 2):
        if (
            _is_type_token(lexes[idx])
            and lexes[idx + 1].kind is TokenKind.IDENTIFIER
            and lexes[idx + 2].lexeme in ("=", ";", ",", ":")
        ):
            variables += 1
    depth = max_depth = 0
    for t in ts.tokens:
        if t.lexeme == "{":
            depth += 1
            max_depth = max(max_depth, depth)
        elif t.lexeme == "}":
            depth = max(0, depth - 1)
    methods = sum(1 for n in build_ast(text).walk() if n.kind == "method_decl")
    return MetricVector(loc, len(ts), cyclomatic, variables, methods, max_depth)


def sim_metrics(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    ma, mb = compute_metrics(a.text).as_tuple(), compute_metrics(b.text).as_tuple()
    ratios = []
    for x, y in zip(ma, mb):
        if x == 0 and y == 0:
            ratios.append(1.0)
        else:
            ratios.append(min(x, y) / max(x, y))
    return SimilarityScore(sum(ratios) / len(ratios), MeasureId.METRICS)


def sim_semnames(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Jaccard over the split-word sets of all identifiers."""

    def words(unit: SourceUnit) -> set[str]:
        out: set[str] = set()
        for ident in extract_identifiers(tokenize(unit.text)):
            out.update(split_identifier(ident))
        return out

    return SimilarityScore(jaccard(words(a), words(b)), MeasureId.SEMNAMES)


def _statement_sequences(text: str) -> list[tuple[str, ...]]:
    ts = normalize_tokens(
        tokenize(strip_comments(text)), NormScheme.ABSTRACT_IDS_AND_LITERALS
    )
    stmts: list[tuple[str, ...]] = []
    cur: list[str] = []
    for t in ts.tokens:
        if t.lexeme in (";", "{", "}"):
            if cur:
                stmts.append(tuple(cur))
                cur = []
        else:
            cur.append(t.lexeme)
    if cur:
        stmts.append(tuple(cur))
    return stmts


def sim_semdiff(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Dice-normalized LCS over normalized statement token sequences."""
    sa, sb = _statement_sequences(a.text), _statement_sequences(b.text)
    if not sa and not sb:
        return SimilarityScore(1.0, MeasureId.SEMDIFF)
    if not sa or not sb:
        return SimilarityScore(0.0, MeasureId.SEMDIFF)
    value = 2.0 * lcs_length(sa, sb) / (len(sa) + len(sb))
    return SimilarityScore(value, MeasureId.SEMDIFF)
