"""Lightweight C-family lexer and structural parser.

Produces a lossless token stream, extracts function definitions by brace
matching, and builds a pragmatic structural AST whose node kinds cover the
nine clone-vector categories plus the control-flow kinds needed for
complexity metrics. The parser is total: anything outside the grammar
becomes an ``other`` subtree, never an exception.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional


class TokKind(Enum):
    Identifier = "Identifier"
    NumberLiteral = "NumberLiteral"
    StringLiteral = "StringLiteral"
    CharLiteral = "CharLiteral"
    Punct = "Punct"
    Keyword = "Keyword"
    Comment = "Comment"
    Whitespace = "Whitespace"


@dataclass(frozen=True)
class Token:
    kind: TokKind
    text: str
    line: int  # 1-based line of the token's first character


class AstKind(Enum):
    # the nine clone-vector categories, in canonical order
    id = "id"
    lit = "lit"
    assign_e = "assign_e"
    incr_e = "incr_e"
    array_e = "array_e"
    cond_e = "cond_e"
    expr_s = "expr_s"
    decl = "decl"
    for_s = "for_s"
    # control flow / structure
    if_s = "if_s"
    while_s = "while_s"
    do_s = "do_s"
    switch_case = "switch_case"
    logical_and = "logical_and"
    logical_or = "logical_or"
    call_e = "call_e"
    return_s = "return_s"
    block = "block"
    other = "other"


# canonical index order for characteristic vectors
VECTOR_KINDS = (
    AstKind.id,
    AstKind.lit,
    AstKind.assign_e,
    AstKind.incr_e,
    AstKind.array_e,
    AstKind.cond_e,
    AstKind.expr_s,
    AstKind.decl,
    AstKind.for_s,
)


@dataclass
class AstNode:
    kind: AstKind
    children: list["AstNode"] = field(default_factory=list)
    is_default: bool = False  # only meaningful for switch_case nodes

    def walk(self) -> Iterator["AstNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def count(self) -> int:
        return sum(1 for _ in self.walk())


@dataclass
class FunctionUnit:
    specimen_id: str
    file: str
    name: str
    start_line: int
    end_line: int
    tokens: list[Token]  # significant tokens only (no comments/whitespace)
    body_ast: Optional[AstNode] = None
    comments: list[str] = field(default_factory=list)


KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    bool true false class namespace template typename new delete this public
    private protected virtual operator using try catch throw nullptr
    """.split()
)

TYPE_KEYWORDS = frozenset(
    """
    auto bool char const double enum extern float inline int long register
    restrict short signed static struct typedef union unsigned void volatile
    """.split()
)

_WS_RE = re.compile(r"[ \t\r\f\v]+|\n")
_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM_RE = re.compile(
    r"0[xX][0-9a-fA-F]+[uUlL]*|\d+\.\d*(?:[eE][+-]?\d+)?[fFlL]?"
    r"|\.\d+(?:[eE][+-]?\d+)?[fFlL]?|\d+(?:[eE][+-]?\d+)?[uUlLfF]*"
)
# longest first so e.g. ">>=" wins over ">>"
_PUNCTS = sorted(
    [
        "<<=", ">>=", "...", "->*", "::", "->", "++", "--", "<<", ">>", "<=",
        ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=",
        "|=", "^=", "##",
    ],
    key=len,
    reverse=True,
)


def lex(source: str) -> tuple[list[Token], list[str]]:
    """Lossless lexing: concatenating token texts reproduces the source.

    Returns (tokens, diagnostics). Unterminated strings and comments lex to
    end of file with a diagnostic rather than failing.
    """
    tokens: list[Token] = []
    diags: list[str] = []
    i = 0
    line = 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            tokens.append(Token(TokKind.Whitespace, "\n", line))
            line += 1
            i += 1
            continue
        m = _WS_RE.match(source, i)
        if m and m.group() != "\n":
            tokens.append(Token(TokKind.Whitespace, m.group(), line))
            i = m.end()
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            if j == -1:
                j = n
            tokens.append(Token(TokKind.Comment, source[i:j], line))
            i = j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j == -1:
                diags.append(f"line {line}: unterminated block comment")
                j = n
            else:
                j += 2
            text = source[i:j]
            tokens.append(Token(TokKind.Comment, text, line))
            line += text.count("\n")
            i = j
            continue
        if c == '"' or c == "'":
            quote = c
            j = i + 1
            while j < n:
                if source[j] == "\\":
                    j += 2
                    continue
                if source[j] == quote:
                    j += 1
                    break
                if source[j] == "\n" and quote == "'":
                    break  # char literals never span lines
                j += 1
            else:
                diags.append(f"line {line}: unterminated {quote} literal")
            text = source[i:j]
            kind = TokKind.StringLiteral if quote == '"' else TokKind.CharLiteral
            tokens.append(Token(kind, text, line))
            line += text.count("\n")
            i = j
            continue
        m = _NUM_RE.match(source, i)
        if m and c.isdigit() or (c == "." and m):
            tokens.append(Token(TokKind.NumberLiteral, m.group(), line))
            i = m.end()
            continue
        m = _ID_RE.match(source, i)
        if m:
            text = m.group()
            kind = TokKind.Keyword if text in KEYWORDS else TokKind.Identifier
            tokens.append(Token(kind, text, line))
            i = m.end()
            continue
        for p in _PUNCTS:
            if source.startswith(p, i):
                tokens.append(Token(TokKind.Punct, p, line))
                i += len(p)
                break
        else:
            tokens.append(Token(TokKind.Punct, c, line))
            i += 1
    return tokens, diags


_SKIP_KINDS = (TokKind.Comment, TokKind.Whitespace)


def significant(tokens: list[Token]) -> list[Token]:
    """Drop comments, whitespace, and preprocessor-directive lines."""
    out: list[Token] = []
    i = 0
    n = len(tokens)
    at_line_start = True
    while i < n:
        t = tokens[i]
        if at_line_start and t.kind is TokKind.Punct and t.text == "#":
            # consume the directive, honoring backslash continuations
            while i < n:
                t = tokens[i]
                if t.kind is TokKind.Whitespace and "\n" in t.text:
                    # a backslash just before the newline continues the line
                    if out_ends_with_backslash(tokens, i):
                        i += 1
                        continue
                    break
                i += 1
            at_line_start = True
            i += 1
            continue
        if t.kind is TokKind.Whitespace:
            if "\n" in t.text:
                at_line_start = True
            i += 1
            continue
        if t.kind is TokKind.Comment:
            i += 1
            continue
        out.append(t)
        at_line_start = False
        i += 1
    return out


def out_ends_with_backslash(tokens: list[Token], idx: int) -> bool:
    j = idx - 1
    while j >= 0 and tokens[j].kind is TokKind.Comment:
        j -= 1
    return j >= 0 and tokens[j].kind is TokKind.Punct and tokens[j].text == "\\"


_NOT_FUNC_NAMES = frozenset({"if", "while", "for", "switch", "return", "sizeof"})


def extract_functions(
    source: str, *, specimen_id: str = "", file: str = ""
) -> tuple[list[FunctionUnit], list[str]]:
    """Find top-level ``identifier ( ... ) { ... }`` definitions by brace matching.

    Declarations without bodies are excluded; unmatched braces end
    extraction for the file with a diagnostic. Best effort only: K&R and
    function-pointer definitions are out of grammar.
    """
    raw, diags = lex(source)
    toks = significant(raw)
    comments = [t for t in raw if t.kind is TokKind.Comment]

    def _attached_comments(all_comments, start_line, end_line):
        """Comments inside the span plus the contiguous doc-comment block
        ending on the line directly above the signature."""
        inside = [
            c.text for c in all_comments if start_line <= c.line <= end_line
        ]
        leading: list[str] = []
        expected = start_line - 1
        for c in reversed(all_comments):
            c_end = c.line + c.text.count("\n")
            if c_end == expected:
                leading.append(c.text)
                expected = c.line - 1
            elif c_end < expected:
                break
        return list(reversed(leading)) + inside
    units: list[FunctionUnit] = []

    n = len(toks)
    i = 0
    depth = 0
    stmt_start = 0  # token index where the current top-level statement began
    saw_assign = False
    while i < n:
        t = toks[i]
        if depth == 0:
            if t.kind is TokKind.Punct and t.text in (";",):
                stmt_start = i + 1
                saw_assign = False
                i += 1
                continue
            if t.kind is TokKind.Punct and t.text == "=":
                saw_assign = True
            if t.kind is TokKind.Punct and t.text == "{":
                sig = _match_signature(toks, i)
                if sig is not None and not saw_assign:
                    name_idx, close = _find_matching(toks, i, "{", "}")
                    if close is None:
                        diags.append(
                            f"{file or '<source>'}: unmatched brace at line {t.line}"
                        )
                        break
                    unit_toks = toks[stmt_start : close + 1]
                    start_line = toks[stmt_start].line
                    end_line = toks[close].line
                    units.append(
                        FunctionUnit(
                            specimen_id=specimen_id,
                            file=file,
                            name=sig,
                            start_line=start_line,
                            end_line=end_line,
                            tokens=unit_toks,
                            comments=_attached_comments(
                                comments, start_line, end_line
                            ),
                        )
                    )
                    i = close + 1
                    stmt_start = i
                    saw_assign = False
                    continue
                # non-function brace (initializer, struct body): skip over it
                _, close = _find_matching(toks, i, "{", "}")
                if close is None:
                    diags.append(
                        f"{file or '<source>'}: unmatched brace at line {t.line}"
                    )
                    break
                i = close + 1
                continue
        if t.kind is TokKind.Punct and t.text == "{":
            depth += 1
        elif t.kind is TokKind.Punct and t.text == "}":
            depth = max(0, depth - 1)
        i += 1

    for u in units:
        u.body_ast = build_ast(u)
    return units, diags


def _find_matching(
    toks: list[Token], open_idx: int, open_text: str, close_text: str
) -> tuple[int, Optional[int]]:
    depth = 0
    for j in range(open_idx, len(toks)):
        t = toks[j]
        if t.kind is TokKind.Punct:
            if t.text == open_text:
                depth += 1
            elif t.text == close_text:
                depth -= 1
                if depth == 0:
                    return open_idx, j
    return open_idx, None


def _match_signature(toks: list[Token], brace_idx: int) -> Optional[str]:
    """Walk back from '{' over ')' ... '(' and return the function name, if any."""
    j = brace_idx - 1
    # tolerate trailing qualifiers between ')' and '{' (const, noexcept, ...)
    while j >= 0 and toks[j].kind in (TokKind.Identifier, TokKind.Keyword):
        j -= 1
    if j < 0 or not (toks[j].kind is TokKind.Punct and toks[j].text == ")"):
        return None
    depth = 0
    while j >= 0:
        t = toks[j]
        if t.kind is TokKind.Punct:
            if t.text == ")":
                depth += 1
            elif t.text == "(":
                depth -= 1
                if depth == 0:
                    break
        j -= 1
    if j <= 0:
        return None
    name_tok = toks[j - 1]
    if name_tok.kind is not TokKind.Identifier:
        return None
    if name_tok.text in _NOT_FUNC_NAMES:
        return None
    return name_tok.text


# ---------------------------------------------------------------------------
# structural AST
# ---------------------------------------------------------------------------

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="})
_CMP_OPS = frozenset({"==", "!=", "<", ">", "<=", ">="})
_OTHER_BINOPS = frozenset({"+", "-", "*", "/", "%", "<<", ">>", "&", "|", "^", ".", "->", "->*", "::"})


class _Parser:
    """Tolerant recursive descent over a function body's significant tokens."""

    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.pos = 0

    def peek(self, offset: int = 0) -> Optional[Token]:
        idx = self.pos + offset
        return self.toks[idx] if idx < len(self.toks) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def _skip_to_semicolon(self) -> None:
        while self.peek() is not None and not self.at(";"):
            self.advance()
        self.accept(";")

    # -- statements --------------------------------------------------------

    def parse_block(self) -> AstNode:
        node = AstNode(AstKind.block)
        if not self.accept("{"):
            return node
        while self.peek() is not None and not self.at("}"):
            stmt = self.parse_statement()
            if stmt is not None:
                node.children.append(stmt)
        self.accept("}")
        return node

    def parse_statement(self) -> Optional[AstNode]:
        t = self.peek()
        if t is None:
            return None
        start = self.pos
        try:
            stmt = self._statement_inner(t)
        except RecursionError:
            stmt = None
        if self.pos == start:  # guarantee progress on anything unrecognized
            self.advance()
            return AstNode(AstKind.other)
        return stmt

    def _statement_inner(self, t: Token) -> Optional[AstNode]:
        if t.text == "{":
            return self.parse_block()
        if t.text == ";":
            self.advance()
            return None
        if t.text == "if":
            return self._parse_if()
        if t.text == "while":
            return self._parse_while()
        if t.text == "do":
            return self._parse_do()
        if t.text == "for":
            return self._parse_for()
        if t.text == "switch":
            return self._parse_switch()
        if t.text == "return":
            self.advance()
            node = AstNode(AstKind.return_s)
            if not self.at(";"):
                node.children.append(self.parse_expression())
            self.accept(";")
            return node
        if t.text in ("break", "continue", "goto"):
            self._skip_to_semicolon()
            return AstNode(AstKind.other)
        if t.text in ("case", "default"):
            return self._parse_case_label()
        if self._looks_like_declaration():
            return self._parse_declaration()
        # expression statement (comma-separated expressions allowed)
        node = AstNode(AstKind.expr_s)
        node.children.append(self.parse_expression())
        while self.accept(","):
            node.children.append(self.parse_expression())
        self.accept(";")
        return node

    def _parse_paren_condition(self) -> Optional[AstNode]:
        if not self.accept("("):
            return None
        cond = AstNode(AstKind.other) if self.at(")") else self.parse_expression()
        depth = 1
        while self.peek() is not None and depth > 0:
            if self.at("("):
                depth += 1
            elif self.at(")"):
                depth -= 1
                if depth == 0:
                    self.advance()
                    break
            self.advance()
        return cond

    def _parse_if(self) -> AstNode:
        self.advance()
        node = AstNode(AstKind.if_s)
        cond = self._parse_paren_condition()
        if cond is not None:
            node.children.append(cond)
        then = self.parse_statement()
        if then is not None:
            node.children.append(then)
        if self.at("else"):
            self.advance()
            els = self.parse_statement()
            if els is not None:
                node.children.append(els)
        return node

    def _parse_while(self) -> AstNode:
        self.advance()
        node = AstNode(AstKind.while_s)
        cond = self._parse_paren_condition()
        if cond is not None:
            node.children.append(cond)
        body = self.parse_statement()
        if body is not None:
            node.children.append(body)
        return node

    def _parse_do(self) -> AstNode:
        self.advance()
        node = AstNode(AstKind.do_s)
        body = self.parse_statement()
        if body is not None:
            node.children.append(body)
        if self.accept("while"):
            cond = self._parse_paren_condition()
            if cond is not None:
                node.children.append(cond)
        self.accept(";")
        return node

    def _parse_for(self) -> AstNode:
        self.advance()
        node = AstNode(AstKind.for_s)
        if self.accept("("):
            if not self.at(";"):
                if self._looks_like_declaration():
                    node.children.append(self._parse_for_decl())
                else:
                    node.children.append(self.parse_expression())
            self.accept(";")
            if not self.at(";"):
                node.children.append(self.parse_expression())
            self.accept(";")
            if not self.at(")"):
                node.children.append(self.parse_expression())
            depth = 1
            while self.peek() is not None and depth > 0:
                if self.at("("):
                    depth += 1
                elif self.at(")"):
                    depth -= 1
                    if depth == 0:
                        self.advance()
                        break
                self.advance()
        body = self.parse_statement()
        if body is not None:
            node.children.append(body)
        return node

    def _parse_for_decl(self) -> AstNode:
        # declaration inside for(...): ends at ';' which the caller consumes
        node = AstNode(AstKind.decl)
        while self.peek() is not None and not self.at(";") and not self.at(")"):
            if self.accept("="):
                node.children.append(self.parse_expression())
            elif self.peek().kind is TokKind.Identifier:
                node.children.append(AstNode(AstKind.id))
                self.advance()
            else:
                self.advance()
        return node

    def _parse_switch(self) -> AstNode:
        self.advance()
        node = AstNode(AstKind.other)  # wrapper; cases are switch_case children
        cond = self._parse_paren_condition()
        if cond is not None:
            node.children.append(cond)
        if self.at("{"):
            self.advance()
            current: Optional[AstNode] = None
            while self.peek() is not None and not self.at("}"):
                if self.at("case") or self.at("default"):
                    current = self._parse_case_label()
                    node.children.append(current)
                else:
                    stmt = self.parse_statement()
                    if stmt is not None:
                        (current.children if current else node.children).append(stmt)
            self.accept("}")
        else:
            stmt = self.parse_statement()
            if stmt is not None:
                node.children.append(stmt)
        return node

    def _parse_case_label(self) -> AstNode:
        node = AstNode(AstKind.switch_case)
        if self.accept("case"):
            node.children.append(self.parse_expression())
        else:
            self.accept("default")
            node.is_default = True
        self.accept(":")
        return node

    def _looks_like_declaration(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        if t.kind is TokKind.Keyword and t.text in TYPE_KEYWORDS:
            return True
        # `Type name ...` pattern: two identifiers in a row (possibly via *)
        if t.kind is TokKind.Identifier:
            k = 1
            while True:
                nxt = self.peek(k)
                if nxt is None:
                    return False
                if nxt.kind is TokKind.Punct and nxt.text == "*":
                    k += 1
                    continue
                return nxt.kind is TokKind.Identifier
        return False

    def _parse_declaration(self) -> AstNode:
        node = AstNode(AstKind.decl)
        # consume type tokens and declarators up to ';' (paren/bracket aware)
        while self.peek() is not None and not self.at(";"):
            if self.at("{"):
                node.children.append(self.parse_block())
                continue
            if self.accept("="):
                node.children.append(self.parse_expression())
                continue
            t = self.peek()
            if t.kind is TokKind.Identifier:
                node.children.append(AstNode(AstKind.id))
                self.advance()
                continue
            if self.at("["):
                self.advance()
                if not self.at("]"):
                    node.children.append(self.parse_expression())
                self.accept("]")
                continue
            self.advance()
        self.accept(";")
        return node

    # -- expressions --------------------------------------------------------

    def parse_expression(self) -> AstNode:
        return self._parse_assignment()

    def _parse_assignment(self) -> AstNode:
        left = self._parse_ternary()
        t = self.peek()
        if t is not None and t.kind is TokKind.Punct and t.text in _ASSIGN_OPS:
            self.advance()
            right = self._parse_assignment()
            return AstNode(AstKind.assign_e, [left, right])
        return left

    def _parse_ternary(self) -> AstNode:
        cond = self._parse_logical_or()
        if self.accept("?"):
            then = self.parse_expression()
            self.accept(":")
            els = self._parse_ternary()
            return AstNode(AstKind.cond_e, [cond, then, els])
        return cond

    def _parse_logical_or(self) -> AstNode:
        left = self._parse_logical_and()
        while self.at("||"):
            self.advance()
            right = self._parse_logical_and()
            left = AstNode(AstKind.logical_or, [left, right])
        return left

    def _parse_logical_and(self) -> AstNode:
        left = self._parse_comparison()
        while self.at("&&"):
            self.advance()
            right = self._parse_comparison()
            left = AstNode(AstKind.logical_and, [left, right])
        return left

    def _parse_comparison(self) -> AstNode:
        left = self._parse_binary()
        while True:
            t = self.peek()
            if t is not None and t.kind is TokKind.Punct and t.text in _CMP_OPS:
                self.advance()
                right = self._parse_binary()
                left = AstNode(AstKind.cond_e, [left, right])
            else:
                return left

    def _parse_binary(self) -> AstNode:
        left = self._parse_unary()
        while True:
            t = self.peek()
            if (
                t is not None
                and t.kind is TokKind.Punct
                and t.text in _OTHER_BINOPS
                and t.text not in (".", "->", "->*", "::")
            ):
                self.advance()
                right = self._parse_unary()
                left = AstNode(AstKind.other, [left, right])
            else:
                return left

    def _parse_unary(self) -> AstNode:
        t = self.peek()
        if t is None:
            return AstNode(AstKind.other)
        if t.kind is TokKind.Punct and t.text in ("++", "--"):
            self.advance()
            return AstNode(AstKind.incr_e, [self._parse_unary()])
        if t.kind is TokKind.Punct and t.text in ("!", "~", "-", "+", "*", "&"):
            self.advance()
            return AstNode(AstKind.other, [self._parse_unary()])
        if t.kind is TokKind.Keyword and t.text == "sizeof":
            self.advance()
            return AstNode(AstKind.other, [self._parse_unary()])
        return self._parse_postfix()

    def _parse_postfix(self) -> AstNode:
        node = self._parse_primary()
        while True:
            t = self.peek()
            if t is None or t.kind is not TokKind.Punct:
                return node
            if t.text == "(":
                self.advance()
                call = AstNode(AstKind.call_e, [node])
                if not self.at(")"):
                    call.children.append(self.parse_expression())
                    while self.accept(","):
                        call.children.append(self.parse_expression())
                depth = 1
                while self.peek() is not None and depth > 0:
                    if self.at("("):
                        depth += 1
                    elif self.at(")"):
                        depth -= 1
                        if depth == 0:
                            self.advance()
                            break
                    self.advance()
                node = call
            elif t.text == "[":
                self.advance()
                sub = AstNode(AstKind.array_e, [node])
                if not self.at("]"):
                    sub.children.append(self.parse_expression())
                self.accept("]")
                node = sub
            elif t.text in ("++", "--"):
                self.advance()
                node = AstNode(AstKind.incr_e, [node])
            elif t.text in (".", "->", "->*", "::"):
                self.advance()
                nxt = self.peek()
                if nxt is not None and nxt.kind is TokKind.Identifier:
                    self.advance()
                    node = AstNode(AstKind.other, [node, AstNode(AstKind.id)])
                else:
                    node = AstNode(AstKind.other, [node])
            else:
                return node

    def _parse_primary(self) -> AstNode:
        t = self.peek()
        if t is None:
            return AstNode(AstKind.other)
        if t.kind is TokKind.Identifier:
            self.advance()
            return AstNode(AstKind.id)
        if t.kind in (TokKind.NumberLiteral, TokKind.StringLiteral, TokKind.CharLiteral):
            self.advance()
            return AstNode(AstKind.lit)
        if t.kind is TokKind.Keyword and t.text in ("true", "false", "nullptr"):
            self.advance()
            return AstNode(AstKind.lit)
        if t.text == "(":
            self.advance()
            inner = self.parse_expression()
            self.accept(")")
            return inner
        if t.text == "{":
            # brace initializer inside an expression
            blk = self.parse_block()
            blk.kind = AstKind.other
            return blk
        self.advance()
        return AstNode(AstKind.other)


def build_ast(unit: FunctionUnit) -> AstNode:
    """Build the structural AST of a function body; total on any token stream."""
    # body starts at the first '{' after the parameter list
    toks = unit.tokens
    start = 0
    depth = 0
    for idx, t in enumerate(toks):
        if t.kind is TokKind.Punct:
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
            elif t.text == "{" and depth == 0:
                start = idx
                break
    parser = _Parser(toks[start:])
    try:
        return parser.parse_block()
    except Exception:
        return AstNode(AstKind.other)


def parse_source(
    source: str, *, specimen_id: str = "", file: str = ""
) -> list[FunctionUnit]:
    """Convenience wrapper: extract functions with ASTs, dropping diagnostics."""
    units, _ = extract_functions(source, specimen_id=specimen_id, file=file)
    return units
