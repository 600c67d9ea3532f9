"""MiniLang abstract syntax tree.

MiniLang is a fixed C-like subset: `int` / `int[]` variables, one statement
form per basic control structure (sequence, if-then-else, switch-case,
for, while, do-while, call, parallel, interrupt), `read()` / `print(...)`
builtins, and a `::name` qualifier that reaches the global declaration of a
name regardless of shadowing.  Every node carries the span of its source
text; child spans nest inside parent spans.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Span

# ============================================================
# EXPRESSIONS
# ============================================================


@dataclass
class Expr:
    span: Span


@dataclass
class Ident(Expr):
    name: str
    global_qualified: bool = False


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class StrLit(Expr):
    raw: str  # literal text including the quotes


@dataclass
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass
class Unary(Expr):
    op: str
    operand: Expr


@dataclass
class Subscript(Expr):
    base: Expr
    index: Expr


@dataclass
class CallExpr(Expr):
    callee: str
    args: list[Expr]


@dataclass
class ArrayInit(Expr):
    """Brace-enclosed element list, valid only as an array declarator initializer."""

    elements: list[Expr]


# ============================================================
# STATEMENTS
# ============================================================


@dataclass
class Stmt:
    span: Span


@dataclass
class Declarator:
    name: str
    name_span: Span
    is_array: bool = False
    init: Expr | None = None


@dataclass
class Decl(Stmt):
    declarators: list[Declarator] = field(default_factory=list)


ASSIGN_KINDS = ("=", "+=", "-=", "*=", "/=", "%=", "++", "--")


@dataclass
class Assign(Stmt):
    target: Expr  # Ident or Subscript
    op: str = "="
    value: Expr | None = None  # None exactly for ++/--


@dataclass
class CallStmt(Stmt):
    callee: str
    args: list[Expr] = field(default_factory=list)


@dataclass
class Block(Stmt):
    stmts: list[Stmt] = field(default_factory=list)


@dataclass
class If(Stmt):
    cond: Expr
    then_block: Block
    else_block: Block | None


@dataclass
class SwitchCase:
    literal: IntLit
    block: Block


@dataclass
class Switch(Stmt):
    scrutinee: Expr
    cases: list[SwitchCase]
    default_block: Block | None


@dataclass
class For(Stmt):
    init: Stmt | None  # Decl or Assign
    cond: Expr | None
    step: Assign | None
    body: Block


@dataclass
class While(Stmt):
    cond: Expr
    body: Block


@dataclass
class DoWhile(Stmt):
    body: Block
    cond: Expr


@dataclass
class Parallel(Stmt):
    body: Block


@dataclass
class Interrupt(Stmt):
    body: Block


@dataclass
class Return(Stmt):
    value: Expr | None = None


CONTROL_STMTS = (If, Switch, For, While, DoWhile, Parallel, Interrupt)


# ============================================================
# TOP LEVEL
# ============================================================


@dataclass
class Param:
    name: str
    span: Span
    is_array: bool = False


@dataclass
class FunctionDef:
    name: str
    params: list[Param]
    body: Block
    span: Span
    ret_type: str = "void"  # void | int


@dataclass
class SourceUnit:
    functions: list[FunctionDef]
    globals: list[Decl]

    def function(self, name: str) -> FunctionDef:
        for fn in self.functions:
            if fn.name == name:
                return fn
        raise KeyError(name)


# ============================================================
# STRUCTURAL EQUALITY (spans excluded)
# ============================================================


def _strip(value):
    """Recursively convert a node to a span-free comparable structure."""
    if isinstance(value, (Expr, Stmt, Declarator, SwitchCase, Param, FunctionDef, SourceUnit)):
        items = [type(value).__name__]
        for key, val in vars(value).items():
            if key in ("span", "name_span"):
                continue
            items.append((key, _strip(val)))
        return tuple(items)
    if isinstance(value, list):
        return tuple(_strip(v) for v in value)
    return value


def same_structure(a, b) -> bool:
    """Structural identity of two trees, ignoring source spans."""
    return _strip(a) == _strip(b)
