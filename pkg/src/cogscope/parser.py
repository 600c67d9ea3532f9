"""Recursive-descent parser for MiniLang.

Grammar highlights (full grammar in docs/grammar.md):

  program    := (global_decl | function)*       -- exactly one 'main' required
  function   := ('void' | 'int') IDENT '(' params? ')' block
  stmt       := decl | assign ';' | call ';' | if | switch | for | while
              | do_while | 'parallel' block | 'interrupt' block
              | 'return' expr? ';' | block
  decl       := 'int' declarator (',' declarator)* ';'
  declarator := IDENT ('[' ']')? ('=' (expr | '{' expr_list '}'))?

Bodies of if/while/for may be a single statement; the parser normalizes
them to one-statement blocks, so every Block introduces exactly one scope.
Duplicate declarations in one scope, string literals outside print
arguments, and a missing main are rejected at parse time.
"""

from __future__ import annotations

from .errors import ParseError, Span
from .lexer import BUILTINS, Token, tokenize
from .syntax import (
    ArrayInit,
    Assign,
    Binary,
    Block,
    CallExpr,
    CallStmt,
    Decl,
    Declarator,
    DoWhile,
    Expr,
    For,
    FunctionDef,
    Ident,
    If,
    IntLit,
    Interrupt,
    Param,
    Parallel,
    Return,
    SourceUnit,
    StrLit,
    Stmt,
    Subscript,
    Switch,
    SwitchCase,
    Unary,
    While,
)

# Binary operator precedence for precedence climbing, loosest = 1.
_BIN_PREC: dict[str, int] = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "^": 4,
    "&": 5,
    "==": 6,
    "!=": 6,
    "<": 7,
    "<=": 7,
    ">": 7,
    ">=": 7,
    "<<": 8,
    ">>": 8,
    "+": 9,
    "-": 9,
    "*": 10,
    "/": 10,
    "%": 10,
}

_COMPOUND_ASSIGN = ("+=", "-=", "*=", "/=", "%=")


class _Parser:
    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.pos = 0
        self.source_len = source_len
        # Stack of per-scope declared-name sets for duplicate detection.
        self.scopes: list[set[str]] = []

    # ---------- token plumbing ----------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def at_kind(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(
                "unexpected end of input",
                Span(self.source_len, self.source_len, self._last_line(), 1),
            )
        self.pos += 1
        return tok

    def _last_line(self) -> int:
        return self.tokens[-1].line if self.tokens else 1

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            found = tok.text if tok else "end of input"
            span = tok.span if tok else Span(self.source_len, self.source_len, self._last_line(), 1)
            raise ParseError(f"expected {text!r}, found {found!r}", span)
        return self.advance()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != "identifier":
            found = tok.text if tok else "end of input"
            span = tok.span if tok else Span(self.source_len, self.source_len, self._last_line(), 1)
            raise ParseError(f"expected identifier, found {found!r}", span)
        return self.advance()

    def span_from(self, start: Span) -> Span:
        end = self.tokens[self.pos - 1].span.end if self.pos else start.end
        return Span(start.start, end, start.line, start.col)

    # ---------- scope bookkeeping ----------

    def declare(self, name: str, span: Span) -> None:
        if name in BUILTINS:
            raise ParseError(f"cannot declare reserved builtin name {name!r}", span)
        if name in self.scopes[-1]:
            raise ParseError(f"duplicate declaration of {name!r} in the same scope", span)
        self.scopes[-1].add(name)

    # ---------- top level ----------

    def parse_unit(self) -> SourceUnit:
        functions: list[FunctionDef] = []
        globals_: list[Decl] = []
        self.scopes.append(set())  # global scope
        seen_functions: set[str] = set()
        while self.peek() is not None:
            tok = self.peek()
            if tok.text in ("void", "int") and self._is_function_header():
                fn = self.parse_function(seen_functions)
                functions.append(fn)
            elif tok.text == "int":
                globals_.append(self.parse_decl())
            else:
                raise ParseError(
                    f"expected declaration or function, found {tok.text!r}", tok.span
                )
        self.scopes.pop()
        mains = [f for f in functions if f.name == "main"]
        if len(mains) != 1:
            where = functions[0].span if functions else Span(0, 0, 1, 1)
            raise ParseError("program must define exactly one function named 'main'", where)
        return SourceUnit(functions=functions, globals=globals_)

    def _is_function_header(self) -> bool:
        one = self.peek(1)
        two = self.peek(2)
        return (
            one is not None
            and one.kind == "identifier"
            and two is not None
            and two.text == "("
        )

    def parse_function(self, seen: set[str]) -> FunctionDef:
        start = self.advance().span  # void | int
        ret_type = self.tokens[self.pos - 1].text
        name_tok = self.expect_ident()
        if name_tok.text in BUILTINS:
            raise ParseError(f"cannot define reserved builtin {name_tok.text!r}", name_tok.span)
        if name_tok.text in seen:
            raise ParseError(f"duplicate function {name_tok.text!r}", name_tok.span)
        seen.add(name_tok.text)
        self.expect("(")
        params: list[Param] = []
        self.scopes.append(set())  # function scope (params + top-level block)
        while not self.at(")"):
            if params:
                self.expect(",")
            self.expect("int")
            pname = self.expect_ident()
            is_array = False
            if self.at("["):
                self.advance()
                self.expect("]")
                is_array = True
            self.declare(pname.text, pname.span)
            params.append(Param(pname.text, pname.span, is_array))
        self.expect(")")
        body = self.parse_block(new_scope=False)
        self.scopes.pop()
        return FunctionDef(
            name=name_tok.text,
            params=params,
            body=body,
            span=self.span_from(start),
            ret_type=ret_type,
        )

    # ---------- statements ----------

    def parse_block(self, new_scope: bool = True) -> Block:
        start = self.expect("{").span
        if new_scope:
            self.scopes.append(set())
        stmts: list[Stmt] = []
        while not self.at("}"):
            stmts.append(self.parse_stmt())
        if new_scope:
            self.scopes.pop()
        self.expect("}")
        return Block(span=self.span_from(start), stmts=stmts)

    def parse_body(self) -> Block:
        """A control-structure body: a block, or one statement wrapped in a block."""
        if self.at("{"):
            return self.parse_block()
        self.scopes.append(set())
        stmt = self.parse_stmt()
        self.scopes.pop()
        return Block(span=stmt.span, stmts=[stmt])

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        if tok is None:
            raise ParseError(
                "unexpected end of input",
                Span(self.source_len, self.source_len, self._last_line(), 1),
            )
        text = tok.text
        if text == "int":
            return self.parse_decl()
        if text == "if":
            return self.parse_if()
        if text == "switch":
            return self.parse_switch()
        if text == "for":
            return self.parse_for()
        if text == "while":
            return self.parse_while()
        if text == "do":
            return self.parse_do_while()
        if text == "parallel":
            start = self.advance().span
            body = self.parse_block()
            return Parallel(span=self.span_from(start), body=body)
        if text == "interrupt":
            start = self.advance().span
            body = self.parse_block()
            return Interrupt(span=self.span_from(start), body=body)
        if text == "return":
            start = self.advance().span
            value = None if self.at(";") else self.parse_expr()
            self.expect(";")
            return Return(span=self.span_from(start), value=value)
        if text == "{":
            return self.parse_block()
        stmt = self.parse_simple_stmt()
        self.expect(";")
        stmt.span = self.span_from(stmt.span)
        return stmt

    def parse_decl(self) -> Decl:
        start = self.expect("int").span
        declarators: list[Declarator] = []
        while True:
            name_tok = self.expect_ident()
            is_array = False
            if self.at("["):
                self.advance()
                self.expect("]")
                is_array = True
            init: Expr | None = None
            if self.at("="):
                self.advance()
                if self.at("{"):
                    if not is_array:
                        raise ParseError("brace initializer requires an array declarator", self.peek().span)
                    init = self.parse_array_init()
                else:
                    init = self.parse_expr()
            self.declare(name_tok.text, name_tok.span)
            declarators.append(
                Declarator(name=name_tok.text, name_span=name_tok.span, is_array=is_array, init=init)
            )
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(";")
        return Decl(span=self.span_from(start), declarators=declarators)

    def parse_array_init(self) -> ArrayInit:
        start = self.expect("{").span
        elements: list[Expr] = []
        while not self.at("}"):
            if elements:
                self.expect(",")
            elements.append(self.parse_expr())
        self.expect("}")
        return ArrayInit(span=self.span_from(start), elements=elements)

    def parse_simple_stmt(self) -> Stmt:
        """Assignment, ++/--, or a call statement."""
        tok = self.peek()
        if (
            tok.kind == "identifier"
            and tok.text in BUILTINS
            or (tok.kind == "identifier" and self._peek_is_plain_call())
        ):
            name = self.advance()
            args = self.parse_call_args(allow_strings=name.text == "print")
            return CallStmt(span=name.span, callee=name.text, args=args)
        target = self.parse_lvalue()
        nxt = self.peek()
        if nxt is None:
            raise ParseError("unexpected end of statement", target.span)
        if nxt.text in ("++", "--"):
            self.advance()
            return Assign(span=target.span, target=target, op=nxt.text, value=None)
        if nxt.text == "=" or nxt.text in _COMPOUND_ASSIGN:
            self.advance()
            value = self.parse_expr()
            return Assign(span=target.span, target=target, op=nxt.text, value=value)
        raise ParseError(f"expected assignment or call, found {nxt.text!r}", nxt.span)

    def _peek_is_plain_call(self) -> bool:
        one = self.peek(1)
        return one is not None and one.text == "("

    def parse_call_args(self, allow_strings: bool) -> list[Expr]:
        self.expect("(")
        args: list[Expr] = []
        while not self.at(")"):
            if args:
                self.expect(",")
            if self.at_kind("string-literal"):
                tok = self.advance()
                if not allow_strings:
                    raise ParseError(
                        "string literals are only allowed as print arguments", tok.span
                    )
                args.append(StrLit(span=tok.span, raw=tok.text))
            else:
                args.append(self.parse_expr())
        self.expect(")")
        return args

    def parse_lvalue(self) -> Expr:
        global_qualified = False
        start = self.peek()
        if start is None:
            raise ParseError(
                "unexpected end of input",
                Span(self.source_len, self.source_len, self._last_line(), 1),
            )
        if self.at("::"):
            self.advance()
            global_qualified = True
        name_tok = self.expect_ident()
        span = Span(start.span.start, name_tok.span.end, start.span.line, start.span.col)
        node: Expr = Ident(span=span, name=name_tok.text, global_qualified=global_qualified)
        if self.at("["):
            self.advance()
            index = self.parse_expr()
            close = self.expect("]")
            node = Subscript(
                span=Span(span.start, close.span.end, span.line, span.col),
                base=node,
                index=index,
            )
        return node

    def parse_if(self) -> If:
        start = self.expect("if").span
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then_block = self.parse_body()
        else_block: Block | None = None
        if self.at("else"):
            self.advance()
            if self.at("if"):
                nested = self.parse_if()
                else_block = Block(span=nested.span, stmts=[nested])
            else:
                else_block = self.parse_body()
        return If(span=self.span_from(start), cond=cond, then_block=then_block, else_block=else_block)

    def parse_switch(self) -> Switch:
        start = self.expect("switch").span
        self.expect("(")
        scrutinee = self.parse_expr()
        self.expect(")")
        self.expect("{")
        cases: list[SwitchCase] = []
        default_block: Block | None = None
        while not self.at("}"):
            if self.at("case"):
                self.advance()
                lit_tok = self.peek()
                negative = False
                if lit_tok is not None and lit_tok.text == "-":
                    self.advance()
                    negative = True
                    lit_tok = self.peek()
                if lit_tok is None or lit_tok.kind != "integer-literal":
                    raise ParseError(
                        "case label must be an integer literal",
                        lit_tok.span if lit_tok else start,
                    )
                self.advance()
                value = -int(lit_tok.text) if negative else int(lit_tok.text)
                literal = IntLit(span=lit_tok.span, value=value)
                self.expect(":")
                block = self.parse_block()
                cases.append(SwitchCase(literal=literal, block=block))
            elif self.at("default"):
                if default_block is not None:
                    raise ParseError("duplicate default case", self.peek().span)
                self.advance()
                self.expect(":")
                default_block = self.parse_block()
            else:
                raise ParseError(
                    f"expected 'case' or 'default', found {self.peek().text!r}",
                    self.peek().span,
                )
        self.expect("}")
        return Switch(
            span=self.span_from(start),
            scrutinee=scrutinee,
            cases=cases,
            default_block=default_block,
        )

    def parse_for(self) -> For:
        start = self.expect("for").span
        self.expect("(")
        # The for header opens a scope covering the whole loop.
        self.scopes.append(set())
        init: Stmt | None = None
        if not self.at(";"):
            if self.at("int"):
                init = self.parse_decl()  # consumes its ';'
            else:
                init = self.parse_simple_stmt()
                if not isinstance(init, Assign):
                    raise ParseError("for initializer must be a declaration or assignment", init.span)
                init.span = self.span_from(init.span)
                self.expect(";")
        else:
            self.expect(";")
        cond: Expr | None = None
        if not self.at(";"):
            cond = self.parse_expr()
        self.expect(";")
        step: Assign | None = None
        if not self.at(")"):
            stmt = self.parse_simple_stmt()
            if not isinstance(stmt, Assign):
                raise ParseError("for step must be an assignment", stmt.span)
            stmt.span = self.span_from(stmt.span)
            step = stmt
        self.expect(")")
        body = self.parse_body()
        self.scopes.pop()
        return For(span=self.span_from(start), init=init, cond=cond, step=step, body=body)

    def parse_while(self) -> While:
        start = self.expect("while").span
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        body = self.parse_body()
        return While(span=self.span_from(start), cond=cond, body=body)

    def parse_do_while(self) -> DoWhile:
        start = self.expect("do").span
        body = self.parse_block()
        self.expect("while")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        self.expect(";")
        return DoWhile(span=self.span_from(start), body=body, cond=cond)

    # ---------- expressions ----------

    def parse_expr(self, min_prec: int = 1) -> Expr:
        node = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "operator-symbol":
                return node
            prec = _BIN_PREC.get(tok.text)
            if prec is None or prec < min_prec:
                return node
            self.advance()
            rhs = self.parse_expr(prec + 1)  # left associative
            node = Binary(
                span=Span(node.span.start, rhs.span.end, node.span.line, node.span.col),
                op=tok.text,
                lhs=node,
                rhs=rhs,
            )

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.text in ("-", "!"):
            self.advance()
            operand = self.parse_unary()
            return Unary(
                span=Span(tok.span.start, operand.span.end, tok.span.line, tok.span.col),
                op=tok.text,
                operand=operand,
            )
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        node = self.parse_primary()
        while True:
            if self.at("["):
                self.advance()
                index = self.parse_expr()
                close = self.expect("]")
                node = Subscript(
                    span=Span(node.span.start, close.span.end, node.span.line, node.span.col),
                    base=node,
                    index=index,
                )
            else:
                return node

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError(
                "unexpected end of expression",
                Span(self.source_len, self.source_len, self._last_line(), 1),
            )
        if tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind == "integer-literal":
            self.advance()
            return IntLit(span=tok.span, value=int(tok.text))
        if tok.kind == "string-literal":
            raise ParseError("string literals are only allowed as print arguments", tok.span)
        if tok.text == "::":
            self.advance()
            name_tok = self.expect_ident()
            return Ident(
                span=Span(tok.span.start, name_tok.span.end, tok.span.line, tok.span.col),
                name=name_tok.text,
                global_qualified=True,
            )
        if tok.kind == "identifier":
            self.advance()
            if self.at("("):
                args = self.parse_call_args(allow_strings=tok.text == "print")
                return CallExpr(span=self.span_from(tok.span), callee=tok.text, args=args)
            return Ident(span=tok.span, name=tok.text)
        raise ParseError(f"unexpected token {tok.text!r} in expression", tok.span)


def parse(tokens: list[Token], source_len: int | None = None) -> SourceUnit:
    """Parse a token sequence into a SourceUnit."""
    if source_len is None:
        source_len = tokens[-1].span.end if tokens else 0
    return _Parser(tokens, source_len).parse_unit()


def parse_source(source: str) -> SourceUnit:
    return parse(tokenize(source), len(source))
