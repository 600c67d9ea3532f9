"""Naive replay oracle: an independent second implementation of the counters.

Walks the syntax tree directly with a name-keyed scope stack (save the outer
counter when a scope re-introduces a name, restore it on scope exit) and a
translation-unit-wide name counter, annotating every variable occurrence as
it goes.  No resolver bindings, occurrence lists, or engine counters are
consulted; only the parse tree.  The structural fold re-derives granule
regions from the tree as well, so ESCIM is recomputed end to end.

The test suite asserts record-for-record equality with the engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from cogscope.syntax import (
    ArrayInit,
    Assign,
    Block,
    CallExpr,
    CallStmt,
    Decl,
    DoWhile,
    Expr,
    For,
    Ident,
    If,
    Interrupt,
    Parallel,
    Return,
    SourceUnit,
    Stmt,
    Subscript,
    Switch,
    Unary,
    While,
    Binary,
)

BUILTINS = {"read", "print"}


@dataclass
class Record:
    name: str
    kind: str  # read | write | declare | declare-init
    start: int  # span start of the identifier
    icn: int
    sicn: int
    anchor: int  # id() of the anchoring statement node
    symbol_key: int  # oracle-side declaration identity


class _Frame:
    """One lexical scope: name -> (symbol_key, saved outer entry)."""

    def __init__(self):
        self.names: dict[str, int] = {}  # name -> symbol key


class Replay:
    def __init__(self, unit: SourceUnit):
        self.unit = unit
        self.icn: dict[str, int] = {}
        self.sicn: dict[int, int] = {}  # symbol key -> counter
        self.frames: list[_Frame] = []
        self.next_key = 0
        self.records: list[Record] = []
        self.current_anchor: int = 0

    # ---------- scope machinery (Definition-style save/restore) ----------

    def push(self) -> None:
        self.frames.append(_Frame())

    def pop(self) -> None:
        self.frames.pop()

    def declare(self, name: str) -> int:
        key = self.next_key
        self.next_key += 1
        self.frames[-1].names[name] = key
        return key

    def lookup(self, name: str, global_qualified: bool = False) -> int:
        if global_qualified:
            return self.frames[0].names[name]
        for frame in reversed(self.frames):
            if name in frame.names:
                return frame.names[name]
        raise KeyError(name)

    # ---------- operator counting (independent) ----------

    def ops_in_expr(self, expr: Expr | None) -> int:
        if expr is None:
            return 0
        if isinstance(expr, Binary):
            return 1 + self.ops_in_expr(expr.lhs) + self.ops_in_expr(expr.rhs)
        if isinstance(expr, Unary):
            return 1 + self.ops_in_expr(expr.operand)
        if isinstance(expr, Subscript):
            return self.ops_in_expr(expr.base) + self.ops_in_expr(expr.index)
        if isinstance(expr, CallExpr):
            return sum(self.ops_in_expr(a) for a in expr.args)
        if isinstance(expr, ArrayInit):
            return sum(self.ops_in_expr(e) for e in expr.elements)
        return 0

    # ---------- recording ----------

    def record(self, name: str, kind: str, start: int, key: int) -> None:
        self.records.append(
            Record(
                name=name,
                kind=kind,
                start=start,
                icn=self.icn.get(name, 0),
                sicn=self.sicn[key],
                anchor=self.current_anchor,
                symbol_key=key,
            )
        )

    def read_expr(self, expr: Expr | None) -> None:
        if expr is None:
            return
        if isinstance(expr, Ident):
            key = self.lookup(expr.name, expr.global_qualified)
            self.record(expr.name, "read", expr.span.start, key)
        elif isinstance(expr, Binary):
            self.read_expr(expr.lhs)
            self.read_expr(expr.rhs)
        elif isinstance(expr, Unary):
            self.read_expr(expr.operand)
        elif isinstance(expr, Subscript):
            self.read_expr(expr.base)
            self.read_expr(expr.index)
        elif isinstance(expr, CallExpr):
            for arg in expr.args:
                self.read_expr(arg)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                self.read_expr(element)

    # ---------- statements ----------

    def do_decl(self, stmt: Decl) -> None:
        self.current_anchor = id(stmt)
        for d in stmt.declarators:
            self.read_expr(d.init)
            key = self.declare(d.name)
            if d.init is not None:
                delta = self.ops_in_expr(d.init)
                self.icn[d.name] = self.icn.get(d.name, 0) + 1 + delta
                self.sicn[key] = 1 + delta
                self.record(d.name, "declare-init", d.name_span.start, key)
            else:
                self.sicn[key] = 1
                self.record(d.name, "declare", d.name_span.start, key)

    def do_assign(self, stmt: Assign) -> None:
        self.current_anchor = id(stmt)
        ops = self.ops_in_expr(stmt.value) + self.ops_in_expr(stmt.target)
        if stmt.op != "=":
            ops += 1
        self.read_expr(stmt.value)
        target = stmt.target
        if isinstance(target, Subscript):
            self.read_expr(target.index)
            base = target.base
        else:
            base = target
        key = self.lookup(base.name, base.global_qualified)
        if stmt.op != "=":
            self.record(base.name, "read", base.span.start, key)
        self.icn[base.name] = self.icn.get(base.name, 0) + 1 + ops
        self.sicn[key] = self.sicn[key] + 1 + ops
        self.record(base.name, "write", base.span.start, key)

    def do_stmt(self, stmt: Stmt) -> None:
        if isinstance(stmt, Decl):
            self.do_decl(stmt)
        elif isinstance(stmt, Assign):
            self.do_assign(stmt)
        elif isinstance(stmt, CallStmt):
            self.current_anchor = id(stmt)
            for arg in stmt.args:
                self.read_expr(arg)
        elif isinstance(stmt, Return):
            self.current_anchor = id(stmt)
            self.read_expr(stmt.value)
        elif isinstance(stmt, Block):
            self.push()
            for inner in stmt.stmts:
                self.do_stmt(inner)
            self.pop()
        elif isinstance(stmt, If):
            self.current_anchor = id(stmt)
            self.read_expr(stmt.cond)
            self.do_stmt(stmt.then_block)
            if stmt.else_block is not None:
                self.do_stmt(stmt.else_block)
        elif isinstance(stmt, Switch):
            self.current_anchor = id(stmt)
            self.read_expr(stmt.scrutinee)
            for case in stmt.cases:
                self.do_stmt(case.block)
            if stmt.default_block is not None:
                self.do_stmt(stmt.default_block)
        elif isinstance(stmt, While):
            self.current_anchor = id(stmt)
            self.read_expr(stmt.cond)
            self.do_stmt(stmt.body)
        elif isinstance(stmt, DoWhile):
            self.do_stmt(stmt.body)
            self.current_anchor = id(stmt)
            self.read_expr(stmt.cond)
        elif isinstance(stmt, For):
            self.push()
            if stmt.init is not None:
                self.do_stmt(stmt.init)
            self.current_anchor = id(stmt)
            self.read_expr(stmt.cond)
            if stmt.step is not None:
                self.do_stmt(stmt.step)
            self.do_stmt(stmt.body)
            self.pop()
        elif isinstance(stmt, (Parallel, Interrupt)):
            self.do_stmt(stmt.body)
        else:
            raise TypeError(type(stmt).__name__)

    def run(self) -> list[Record]:
        self.push()
        for decl in self.unit.globals:
            self.do_decl(decl)
        for fn in self.unit.functions:
            self.push()
            for param in fn.params:
                key = self.declare(param.name)
                self.sicn[key] = 1
                self.current_anchor = id(fn)
                self.record(param.name, "declare", param.span.start, key)
            for stmt in fn.body.stmts:
                self.do_stmt(stmt)
            self.pop()
        self.pop()
        return self.records


def replay(unit: SourceUnit) -> list[Record]:
    return Replay(unit).run()


# ============================================================
# REGION QUERIES OVER ORACLE RECORDS
# ============================================================


def oracle_si(records: list[Record], start: int, end: int) -> int:
    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    for r in records:
        if start <= r.start < end:
            if r.symbol_key not in lo:
                lo[r.symbol_key] = hi[r.symbol_key] = r.sicn
            else:
                lo[r.symbol_key] = min(lo[r.symbol_key], r.sicn)
                hi[r.symbol_key] = max(hi[r.symbol_key], r.sicn)
    return sum(hi[k] - lo[k] for k in lo)


def oracle_i(records: list[Record], start: int, end: int) -> int:
    best: dict[str, int] = {}
    for r in records:
        if start <= r.start < end:
            best[r.name] = max(best.get(r.name, 0), r.icn)
    return sum(best.values())


# ============================================================
# INDEPENDENT STRUCTURAL FOLD (ESCIM)
# ============================================================

_CONTROL = (If, Switch, For, While, DoWhile, Parallel, Interrupt)
_WEIGHT = {
    If: 2,
    Switch: 3,
    For: 3,
    While: 3,
    DoWhile: 3,
    Parallel: 4,
    Interrupt: 4,
}


def _flatten(stmts: list[Stmt]) -> list[Stmt]:
    out: list[Stmt] = []
    for s in stmts:
        if isinstance(s, Block):
            out.extend(_flatten(s.stmts))
        else:
            out.append(s)
    return out


def _streams(stmt: Stmt) -> list[list[Stmt]]:
    if isinstance(stmt, If):
        streams = [stmt.then_block.stmts]
        if stmt.else_block is not None:
            streams.append(stmt.else_block.stmts)
        return streams
    if isinstance(stmt, Switch):
        streams = [c.block.stmts for c in stmt.cases]
        if stmt.default_block is not None:
            streams.append(stmt.default_block.stmts)
        return streams
    return [stmt.body.stmts]


def _calls_user(stmt: Stmt, user_functions: set[str]) -> bool:
    hit = False

    def expr_walk(expr: Expr | None) -> None:
        nonlocal hit
        if expr is None or hit:
            return
        if isinstance(expr, CallExpr):
            if expr.callee in user_functions:
                hit = True
                return
            for arg in expr.args:
                expr_walk(arg)
        elif isinstance(expr, Binary):
            expr_walk(expr.lhs)
            expr_walk(expr.rhs)
        elif isinstance(expr, Unary):
            expr_walk(expr.operand)
        elif isinstance(expr, Subscript):
            expr_walk(expr.base)
            expr_walk(expr.index)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                expr_walk(element)

    if isinstance(stmt, CallStmt):
        if stmt.callee in user_functions:
            return True
        for arg in stmt.args:
            expr_walk(arg)
    elif isinstance(stmt, Assign):
        expr_walk(stmt.value)
        expr_walk(stmt.target)
    elif isinstance(stmt, Decl):
        for d in stmt.declarators:
            expr_walk(d.init)
    elif isinstance(stmt, Return):
        expr_walk(stmt.value)
    return hit


def _edges(unit: SourceUnit, user_functions: set[str]) -> set[tuple[str, str]]:
    edges: set[tuple[str, str]] = set()

    def expr_walk(caller: str, expr: Expr | None) -> None:
        if expr is None:
            return
        if isinstance(expr, CallExpr):
            if expr.callee in user_functions:
                edges.add((caller, expr.callee))
            for arg in expr.args:
                expr_walk(caller, arg)
        elif isinstance(expr, Binary):
            expr_walk(caller, expr.lhs)
            expr_walk(caller, expr.rhs)
        elif isinstance(expr, Unary):
            expr_walk(caller, expr.operand)
        elif isinstance(expr, Subscript):
            expr_walk(caller, expr.base)
            expr_walk(caller, expr.index)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                expr_walk(caller, element)

    def stmt_walk(caller: str, stmt: Stmt) -> None:
        if isinstance(stmt, CallStmt):
            if stmt.callee in user_functions:
                edges.add((caller, stmt.callee))
            for arg in stmt.args:
                expr_walk(caller, arg)
        elif isinstance(stmt, Assign):
            expr_walk(caller, stmt.target)
            expr_walk(caller, stmt.value)
        elif isinstance(stmt, Decl):
            for d in stmt.declarators:
                expr_walk(caller, d.init)
        elif isinstance(stmt, Return):
            expr_walk(caller, stmt.value)
        elif isinstance(stmt, Block):
            for inner in stmt.stmts:
                stmt_walk(caller, inner)
        elif isinstance(stmt, If):
            expr_walk(caller, stmt.cond)
            stmt_walk(caller, stmt.then_block)
            if stmt.else_block is not None:
                stmt_walk(caller, stmt.else_block)
        elif isinstance(stmt, Switch):
            expr_walk(caller, stmt.scrutinee)
            for case in stmt.cases:
                stmt_walk(caller, case.block)
            if stmt.default_block is not None:
                stmt_walk(caller, stmt.default_block)
        elif isinstance(stmt, For):
            if stmt.init is not None:
                stmt_walk(caller, stmt.init)
            expr_walk(caller, stmt.cond)
            if stmt.step is not None:
                stmt_walk(caller, stmt.step)
            stmt_walk(caller, stmt.body)
        elif isinstance(stmt, (While, DoWhile)):
            expr_walk(caller, stmt.cond)
            stmt_walk(caller, stmt.body)
        elif isinstance(stmt, (Parallel, Interrupt)):
            stmt_walk(caller, stmt.body)

    for fn in unit.functions:
        stmt_walk(fn.name, fn.body)
    return edges


def _cycle_through(edges: set[tuple[str, str]], callee: str, caller: str) -> bool:
    seen = {callee}
    frontier = [callee]
    while frontier:
        node = frontier.pop()
        if node == caller:
            return True
        for a, b in edges:
            if a == node and b not in seen:
                seen.add(b)
                frontier.append(b)
    return False


def oracle_escim(unit: SourceUnit, records: list[Record]) -> int:
    """End-to-end ESCIM recomputation from the parse tree and oracle records."""
    user_functions = {f.name for f in unit.functions}
    edges = _edges(unit, user_functions)
    by_anchor: dict[int, list[Record]] = {}
    for r in records:
        by_anchor.setdefault(r.anchor, []).append(r)

    def si_of(record_lists: list[list[Record]]) -> int:
        lo: dict[int, int] = {}
        hi: dict[int, int] = {}
        for chunk in record_lists:
            for r in chunk:
                if r.symbol_key not in lo:
                    lo[r.symbol_key] = hi[r.symbol_key] = r.sicn
                else:
                    lo[r.symbol_key] = min(lo[r.symbol_key], r.sicn)
                    hi[r.symbol_key] = max(hi[r.symbol_key], r.sicn)
        return sum(hi[k] - lo[k] for k in lo)

    def anchored(stmts: list[Stmt]) -> list[list[Record]]:
        return [by_anchor.get(id(s), []) for s in stmts]

    def block_value(stmts: list[Stmt], caller: str) -> int:
        items = _flatten(stmts)
        total = 0
        run: list[Stmt] = []

        def flush() -> int:
            nonlocal run
            if not run:
                return 0
            value = si_of(anchored(run))
            run = []
            return value  # SEQ weight 1

        for s in items:
            if isinstance(s, _CONTROL):
                total += flush()
                total += control_value(s, caller)
            elif _calls_user(s, user_functions):
                total += flush()
                recursive = any(
                    _cycle_through(edges, callee, caller)
                    for callee in _callees_of(s, user_functions)
                )
                weight = 3 if recursive else 2
                total += weight * si_of(anchored([s]))
            else:
                run.append(s)
        total += flush()
        return total

    def header_chunks(stmt: Stmt) -> list[list[Record]]:
        chunks = [by_anchor.get(id(stmt), [])]
        if isinstance(stmt, For):
            if stmt.init is not None:
                chunks.append(by_anchor.get(id(stmt.init), []))
            if stmt.step is not None:
                chunks.append(by_anchor.get(id(stmt.step), []))
        return chunks

    def control_value(stmt: Stmt, caller: str) -> int:
        weight = _WEIGHT[type(stmt)]
        streams = _streams(stmt)
        flat = [s for stream in streams for s in _flatten(stream)]
        nested = any(isinstance(s, _CONTROL) for s in flat) or any(
            _calls_user(s, user_functions) for s in flat
        )
        if not nested:
            chunks = header_chunks(stmt) + anchored(flat)
            return weight * si_of(chunks)
        inner = sum(block_value(stream, caller) for stream in streams)
        return weight * (inner + si_of(header_chunks(stmt)))

    return sum(block_value(fn.body.stmts, fn.name) for fn in unit.functions)


def _callees_of(stmt: Stmt, user_functions: set[str]) -> list[str]:
    out: list[str] = []

    def expr_walk(expr: Expr | None) -> None:
        if expr is None:
            return
        if isinstance(expr, CallExpr):
            if expr.callee in user_functions:
                out.append(expr.callee)
            for arg in expr.args:
                expr_walk(arg)
        elif isinstance(expr, Binary):
            expr_walk(expr.lhs)
            expr_walk(expr.rhs)
        elif isinstance(expr, Unary):
            expr_walk(expr.operand)
        elif isinstance(expr, Subscript):
            expr_walk(expr.base)
            expr_walk(expr.index)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                expr_walk(element)

    if isinstance(stmt, CallStmt):
        if stmt.callee in user_functions:
            out.append(stmt.callee)
        for arg in stmt.args:
            expr_walk(arg)
    elif isinstance(stmt, Assign):
        expr_walk(stmt.target)
        expr_walk(stmt.value)
    elif isinstance(stmt, Decl):
        for d in stmt.declarators:
            expr_walk(d.init)
    elif isinstance(stmt, Return):
        expr_walk(stmt.value)
    return out
