"""Name resolution, occurrence extraction, and I/O classification.

Binds every identifier to a declaration-site symbol under lexical scoping
with shadowing.  `::name` reaches the global declaration regardless of
shadowing.  All variable occurrences come out in a single flat list in
evaluation order, which is the order the counting engines replay:

  * block statements in source order,
  * for headers textually (init, cond, step) before the body,
  * do-while bodies before their condition,
  * declarators left to right, initializers before the name they introduce.

Each write-like occurrence carries the operator count of its statement
(compound assignment and ++/-- count as one operator each; plain '=',
subscripts, calls and commas count zero), so the counting engines only add.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ResolveError, Span
from .lexer import BUILTINS, COUNTED_OPERATORS, Token
from .syntax import (
    ArrayInit,
    Assign,
    Binary,
    Block,
    CallExpr,
    CallStmt,
    Decl,
    DoWhile,
    Expr,
    For,
    Ident,
    If,
    IntLit,
    Interrupt,
    Parallel,
    Return,
    SourceUnit,
    Stmt,
    StrLit,
    Subscript,
    Switch,
    Unary,
    While,
)

# ============================================================
# SYMBOLS AND OCCURRENCES
# ============================================================


@dataclass(frozen=True)
class Symbol:
    uid: int
    name: str
    kind: str  # global | parameter | local
    decl_span: Span
    scope_depth: int

    def __repr__(self) -> str:  # compact in test diffs
        return f"Symbol({self.name}#{self.uid}:{self.kind}@{self.scope_depth})"


READ = "read"
WRITE = "write"
DECLARE = "declare"
DECLARE_INIT = "declare-init"


@dataclass(frozen=True)
class Occurrence:
    symbol: Symbol
    name: str
    kind: str  # read | write | declare | declare-init
    span: Span  # the identifier itself
    stmt_id: int  # identity of the statement anchoring this occurrence
    stmt_span: Span
    function: str | None  # None for global-scope occurrences
    ops_delta: int = 0  # operators of the statement, for write / declare-init
    in_print_arg: bool = False
    in_return: bool = False
    rhs_has_read: bool = False  # write whose source expression contains read()


@dataclass
class ResolvedUnit:
    unit: SourceUnit
    occurrences: tuple[Occurrence, ...]
    bindings: dict[int, Symbol]  # id(Ident node) -> Symbol
    call_graph: frozenset[tuple[str, str]]  # (caller, callee) for user callees
    stmt_user_callees: dict[int, tuple[str, ...]]  # stmt id -> user functions called
    function_names: tuple[str, ...]

    def function_occurrences(self, name: str) -> list[Occurrence]:
        return [o for o in self.occurrences if o.function == name]


# ============================================================
# OPERATOR COUNTING
# ============================================================


def _expr_ops(expr: Expr | None) -> int:
    if expr is None:
        return 0
    if isinstance(expr, Binary):
        return 1 + _expr_ops(expr.lhs) + _expr_ops(expr.rhs)
    if isinstance(expr, Unary):
        return 1 + _expr_ops(expr.operand)
    if isinstance(expr, Subscript):
        return _expr_ops(expr.base) + _expr_ops(expr.index)
    if isinstance(expr, CallExpr):
        return sum(_expr_ops(a) for a in expr.args)
    if isinstance(expr, ArrayInit):
        return sum(_expr_ops(e) for e in expr.elements)
    return 0  # Ident, IntLit, StrLit


def operator_count(node: Stmt | Expr | None) -> int:
    """Counted operator occurrences of one statement or expression.

    Counted: binary arithmetic/relational/logical/bitwise/shift operators,
    unary minus and '!', one per compound assignment, one per ++/--.
    Not counted: plain '=', subscripts, qualifier '::', calls, commas.
    """
    if node is None:
        return 0
    if isinstance(node, Expr):
        return _expr_ops(node)
    if isinstance(node, Assign):
        compound = 1 if node.op != "=" else 0
        return compound + _expr_ops(node.target) + _expr_ops(node.value)
    if isinstance(node, Decl):
        return sum(_expr_ops(d.init) for d in node.declarators)
    if isinstance(node, CallStmt):
        return sum(_expr_ops(a) for a in node.args)
    if isinstance(node, Return):
        return _expr_ops(node.value)
    raise TypeError(f"operator_count over {type(node).__name__} is not statement-local")


def _contains_read(expr: Expr | None) -> bool:
    if expr is None:
        return False
    if isinstance(expr, CallExpr):
        return expr.callee == "read" or any(_contains_read(a) for a in expr.args)
    if isinstance(expr, Binary):
        return _contains_read(expr.lhs) or _contains_read(expr.rhs)
    if isinstance(expr, Unary):
        return _contains_read(expr.operand)
    if isinstance(expr, Subscript):
        return _contains_read(expr.base) or _contains_read(expr.index)
    if isinstance(expr, ArrayInit):
        return any(_contains_read(e) for e in expr.elements)
    return False


# ============================================================
# RESOLVER
# ============================================================


class _Resolver:
    def __init__(self, unit: SourceUnit):
        self.unit = unit
        self.occurrences: list[Occurrence] = []
        self.bindings: dict[int, Symbol] = {}
        self.call_edges: set[tuple[str, str]] = set()
        self.stmt_user_callees: dict[int, list[str]] = {}
        self.scopes: list[dict[str, Symbol]] = []
        self.uid = 0
        self.function_names = {f.name for f in unit.functions}
        self.current_function: str | None = None
        self.current_stmt: Stmt | None = None

    # ---------- scopes ----------

    def push(self) -> None:
        self.scopes.append({})

    def pop(self) -> None:
        self.scopes.pop()

    def declare(self, name: str, kind: str, span: Span) -> Symbol:
        sym = Symbol(self.uid, name, kind, span, len(self.scopes) - 1)
        self.uid += 1
        self.scopes[-1][name] = sym
        return sym

    def lookup(self, ident: Ident) -> Symbol:
        if ident.global_qualified:
            sym = self.scopes[0].get(ident.name)
            if sym is None:
                raise ResolveError(
                    f"'::{ident.name}' has no global declaration", ident.span
                )
            return sym
        for frame in reversed(self.scopes):
            sym = frame.get(ident.name)
            if sym is not None:
                return sym
        raise ResolveError(f"unresolved name {ident.name!r}", ident.span)

    # ---------- occurrence emission ----------

    def emit(
        self,
        ident: Ident,
        kind: str,
        *,
        ops_delta: int = 0,
        in_print_arg: bool = False,
        in_return: bool = False,
        rhs_has_read: bool = False,
        symbol: Symbol | None = None,
    ) -> None:
        sym = symbol if symbol is not None else self.lookup(ident)
        self.bindings[id(ident)] = sym
        stmt = self.current_stmt
        self.occurrences.append(
            Occurrence(
                symbol=sym,
                name=ident.name,
                kind=kind,
                span=ident.span,
                stmt_id=id(stmt),
                stmt_span=stmt.span if stmt is not None else ident.span,
                function=self.current_function,
                ops_delta=ops_delta,
                in_print_arg=in_print_arg,
                in_return=in_return,
                rhs_has_read=rhs_has_read,
            )
        )

    def emit_declare(self, name: str, span: Span, kind: str, sym_kind: str, ops_delta: int, rhs_has_read: bool) -> Symbol:
        sym = self.declare(name, sym_kind, span)
        stmt = self.current_stmt
        self.occurrences.append(
            Occurrence(
                symbol=sym,
                name=name,
                kind=kind,
                span=span,
                stmt_id=id(stmt),
                stmt_span=stmt.span if stmt is not None else span,
                function=self.current_function,
                ops_delta=ops_delta,
                rhs_has_read=rhs_has_read,
            )
        )
        return sym

    # ---------- expressions (reads) ----------

    def walk_reads(self, expr: Expr | None, in_print_arg: bool = False, in_return: bool = False) -> None:
        if expr is None:
            return
        if isinstance(expr, Ident):
            self.emit(expr, READ, in_print_arg=in_print_arg, in_return=in_return)
        elif isinstance(expr, Binary):
            self.walk_reads(expr.lhs, in_print_arg, in_return)
            self.walk_reads(expr.rhs, in_print_arg, in_return)
        elif isinstance(expr, Unary):
            self.walk_reads(expr.operand, in_print_arg, in_return)
        elif isinstance(expr, Subscript):
            self.walk_reads(expr.base, in_print_arg, in_return)
            self.walk_reads(expr.index, in_print_arg, in_return)
        elif isinstance(expr, CallExpr):
            self.record_call(expr.callee, expr.span)
            if expr.callee == "print":
                raise ResolveError("print cannot be used in an expression", expr.span)
            inner_print = in_print_arg
            for arg in expr.args:
                self.walk_reads(arg, inner_print, in_return)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                self.walk_reads(element, in_print_arg, in_return)
        # IntLit / StrLit carry no occurrences

    def record_call(self, callee: str, span: Span) -> None:
        if callee in BUILTINS:
            return
        if callee not in self.function_names:
            raise ResolveError(f"call to undefined function {callee!r}", span)
        caller = self.current_function
        if caller is not None:
            self.call_edges.add((caller, callee))
        stmt = self.current_stmt
        if stmt is not None:
            self.stmt_user_callees.setdefault(id(stmt), []).append(callee)

    # ---------- statements ----------

    def walk_stmt(self, stmt: Stmt) -> None:
        outer = self.current_stmt
        self.current_stmt = stmt
        try:
            if isinstance(stmt, Decl):
                self.walk_decl(stmt)
            elif isinstance(stmt, Assign):
                self.walk_assign(stmt)
            elif isinstance(stmt, CallStmt):
                self.record_call(stmt.callee, stmt.span)
                is_print = stmt.callee == "print"
                for arg in stmt.args:
                    self.walk_reads(arg, in_print_arg=is_print)
            elif isinstance(stmt, Return):
                self.walk_reads(stmt.value, in_return=True)
            elif isinstance(stmt, Block):
                self.current_stmt = outer
                self.push()
                for inner in stmt.stmts:
                    self.walk_stmt(inner)
                self.pop()
            elif isinstance(stmt, If):
                self.walk_reads(stmt.cond)
                self.current_stmt = outer
                self.walk_block(stmt.then_block)
                if stmt.else_block is not None:
                    self.walk_block(stmt.else_block)
            elif isinstance(stmt, Switch):
                self.walk_reads(stmt.scrutinee)
                self.current_stmt = outer
                for case in stmt.cases:
                    self.walk_block(case.block)
                if stmt.default_block is not None:
                    self.walk_block(stmt.default_block)
            elif isinstance(stmt, While):
                self.walk_reads(stmt.cond)
                self.current_stmt = outer
                self.walk_block(stmt.body)
            elif isinstance(stmt, DoWhile):
                self.current_stmt = outer
                self.walk_block(stmt.body)
                self.current_stmt = stmt
                self.walk_reads(stmt.cond)
            elif isinstance(stmt, For):
                self.push()  # header scope covers init, cond, step, body
                if stmt.init is not None:
                    self.walk_stmt(stmt.init)
                self.current_stmt = stmt
                self.walk_reads(stmt.cond)
                if stmt.step is not None:
                    self.walk_stmt(stmt.step)
                self.current_stmt = outer
                self.walk_block(stmt.body)
                self.pop()
            elif isinstance(stmt, (Parallel, Interrupt)):
                self.current_stmt = outer
                self.walk_block(stmt.body)
            else:
                raise TypeError(f"unknown statement {type(stmt).__name__}")
        finally:
            self.current_stmt = outer

    def walk_block(self, block: Block) -> None:
        self.push()
        for inner in block.stmts:
            self.walk_stmt(inner)
        self.pop()

    def walk_decl(self, stmt: Decl) -> None:
        for d in stmt.declarators:
            if d.init is not None:
                self.walk_reads(d.init)
                self.emit_declare(
                    d.name,
                    d.name_span,
                    DECLARE_INIT,
                    "global" if self.current_function is None else "local",
                    ops_delta=_expr_ops(d.init),
                    rhs_has_read=_contains_read(d.init),
                )
            else:
                self.emit_declare(
                    d.name,
                    d.name_span,
                    DECLARE,
                    "global" if self.current_function is None else "local",
                    ops_delta=0,
                    rhs_has_read=False,
                )

    def walk_assign(self, stmt: Assign) -> None:
        ops = operator_count(stmt)
        has_read = _contains_read(stmt.value)
        self.walk_reads(stmt.value)
        # Subscript indices on the target are reads; the base identifier is
        # the written symbol (array-element writes mutate the base symbol).
        target = stmt.target
        if isinstance(target, Subscript):
            self.walk_reads(target.index)
            base = target.base
        else:
            base = target
        if not isinstance(base, Ident):
            raise ResolveError("assignment target must be a variable", stmt.span)
        sym = self.lookup(base)
        if stmt.op != "=":  # compound assignment and ++/-- also read the target
            read_ident = Ident(span=base.span, name=base.name, global_qualified=base.global_qualified)
            self.emit(read_ident, READ, symbol=sym)
        self.emit(base, WRITE, ops_delta=ops, rhs_has_read=has_read, symbol=sym)

    # ---------- top level ----------

    def run(self) -> ResolvedUnit:
        self.push()  # global scope
        for decl in self.unit.globals:
            self.current_stmt = decl
            self.walk_decl(decl)
            self.current_stmt = None
        for fn in self.unit.functions:
            self.current_function = fn.name
            self.push()  # function scope
            for param in fn.params:
                self.current_stmt = None
                sym = self.declare(param.name, "parameter", param.span)
                self.occurrences.append(
                    Occurrence(
                        symbol=sym,
                        name=param.name,
                        kind=DECLARE,
                        span=param.span,
                        stmt_id=id(fn),
                        stmt_span=param.span,
                        function=fn.name,
                    )
                )
            for stmt in fn.body.stmts:
                self.walk_stmt(stmt)
            self.pop()
            self.current_function = None
        self.pop()
        return ResolvedUnit(
            unit=self.unit,
            occurrences=tuple(self.occurrences),
            bindings=self.bindings,
            call_graph=frozenset(self.call_edges),
            stmt_user_callees={k: tuple(v) for k, v in self.stmt_user_callees.items()},
            function_names=tuple(f.name for f in self.unit.functions),
        )


def resolve(unit: SourceUnit) -> ResolvedUnit:
    """Bind every identifier occurrence and list occurrences in evaluation order."""
    return _Resolver(unit).run()


# ============================================================
# I/O CLASSIFICATION
# ============================================================


@dataclass(frozen=True)
class IoClassification:
    """Input/output variable sets and the occurrence counts metrics consume."""

    inputs: frozenset[Symbol]
    outputs: frozenset[Symbol]
    s_io: int
    n_operators: int  # total operator occurrences (N_i1)
    n_operands: int  # total identifier + literal occurrences (N_i2)
    line_counts: tuple[int, ...]  # identifiers+operators per token-bearing line
    loc: int


@dataclass(frozen=True)
class IoSummary:
    program: IoClassification
    functions: dict[str, IoClassification] = field(hash=False, default_factory=dict)


def _io_from(occurrences: list[Occurrence], params: list[Symbol], tokens: list[Token]) -> IoClassification:
    inputs = set(params)
    outputs = set()
    for occ in occurrences:
        if occ.kind in (WRITE, DECLARE_INIT) and occ.rhs_has_read:
            inputs.add(occ.symbol)
        if occ.in_print_arg or occ.in_return:
            outputs.add(occ.symbol)
    io_symbols = inputs | outputs
    s_io = 0
    read_groups: set[tuple[int, int]] = set()
    for occ in occurrences:
        if occ.symbol not in io_symbols:
            continue
        if occ.kind in (WRITE, DECLARE_INIT):
            s_io += 1
        elif occ.kind == READ:
            read_groups.add((occ.stmt_id, occ.symbol.uid))
    s_io += len(read_groups)

    n_ops = n_operands = 0
    by_line: dict[int, list[int]] = {}
    for tok in tokens:
        counted = 0
        if tok.kind == "identifier":
            n_operands += 1
            counted = 1
        elif tok.kind in ("integer-literal", "string-literal"):
            n_operands += 1
        elif tok.kind == "operator-symbol" and tok.text in COUNTED_OPERATORS:
            n_ops += 1
            counted = 1
        by_line.setdefault(tok.line, []).append(counted)
    line_counts = tuple(sum(v) for _, v in sorted(by_line.items()))
    return IoClassification(
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        s_io=s_io,
        n_operators=n_ops,
        n_operands=n_operands,
        line_counts=line_counts,
        loc=len(line_counts),
    )


def classify_io(resolved: ResolvedUnit, tokens: list[Token]) -> IoSummary:
    """Per-function and whole-unit I/O classification.

    inputs  = function parameters plus symbols assigned from read();
    outputs = symbols appearing inside print arguments or return values.
    S_io counts write occurrences of I/O symbols individually and read
    occurrences once per (statement, symbol).
    """
    param_symbols: dict[str, list[Symbol]] = {f.name: [] for f in resolved.unit.functions}
    occs_by_function: dict[str | None, list[Occurrence]] = {}
    for occ in resolved.occurrences:
        occs_by_function.setdefault(occ.function, []).append(occ)
        if occ.symbol.kind == "parameter" and occ.kind == DECLARE and occ.function:
            param_symbols.setdefault(occ.function, []).append(occ.symbol)

    from bisect import bisect_left, bisect_right

    starts = [t.span.start for t in tokens]
    functions: dict[str, IoClassification] = {}
    for fn in resolved.unit.functions:
        lo = bisect_left(starts, fn.span.start)
        hi = bisect_right(starts, fn.span.end - 1)
        functions[fn.name] = _io_from(
            occs_by_function.get(fn.name, []), param_symbols.get(fn.name, []), tokens[lo:hi]
        )

    all_params = [s for syms in param_symbols.values() for s in syms]
    program = _io_from(list(resolved.occurrences), all_params, tokens)
    return IoSummary(program=program, functions=functions)
