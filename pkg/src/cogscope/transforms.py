"""Program composition operators: concatenation, renaming, permutation.

These operate on program text and return canonical program text; callers
re-analyze the result.  Concatenation merges the two mains into one:

  * q's top-level re-declaration of a name from p's top level is dropped;
    its initializer (if any) survives as a plain assignment, array
    initializers as per-element assignments;
  * q's globals merge the same way, converted initializers running before
    q's part of the body;
  * q's non-main functions and main parameters are renamed fresh on
    collision.

A variable declared in p therefore keeps one live counter across the seam,
which is what makes the composition-sensitivity arguments expressible.
"""

from __future__ import annotations

import random

from .errors import DUMMY_SPAN
from .lexer import BUILTINS, KEYWORDS
from .parser import parse_source
from .render import render
from .resolve import resolve
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
    Parallel,
    Return,
    SourceUnit,
    Stmt,
    Subscript,
    Switch,
    Unary,
    While,
)

# ============================================================
# RENAMING
# ============================================================


def _rewrite_expr(expr: Expr | None, mapping: dict[str, str]) -> None:
    if expr is None:
        return
    if isinstance(expr, Ident):
        expr.name = mapping.get(expr.name, expr.name)
    elif isinstance(expr, Binary):
        _rewrite_expr(expr.lhs, mapping)
        _rewrite_expr(expr.rhs, mapping)
    elif isinstance(expr, Unary):
        _rewrite_expr(expr.operand, mapping)
    elif isinstance(expr, Subscript):
        _rewrite_expr(expr.base, mapping)
        _rewrite_expr(expr.index, mapping)
    elif isinstance(expr, CallExpr):
        if expr.callee not in BUILTINS:
            expr.callee = mapping.get(expr.callee, expr.callee)
        for arg in expr.args:
            _rewrite_expr(arg, mapping)
    elif isinstance(expr, ArrayInit):
        for element in expr.elements:
            _rewrite_expr(element, mapping)


def _rewrite_stmt(stmt: Stmt, mapping: dict[str, str]) -> None:
    if isinstance(stmt, Decl):
        for d in stmt.declarators:
            _rewrite_expr(d.init, mapping)
            d.name = mapping.get(d.name, d.name)
    elif isinstance(stmt, Assign):
        _rewrite_expr(stmt.target, mapping)
        _rewrite_expr(stmt.value, mapping)
    elif isinstance(stmt, CallStmt):
        if stmt.callee not in BUILTINS:
            stmt.callee = mapping.get(stmt.callee, stmt.callee)
        for arg in stmt.args:
            _rewrite_expr(arg, mapping)
    elif isinstance(stmt, Return):
        _rewrite_expr(stmt.value, mapping)
    elif isinstance(stmt, Block):
        for inner in stmt.stmts:
            _rewrite_stmt(inner, mapping)
    elif isinstance(stmt, If):
        _rewrite_expr(stmt.cond, mapping)
        _rewrite_stmt(stmt.then_block, mapping)
        if stmt.else_block is not None:
            _rewrite_stmt(stmt.else_block, mapping)
    elif isinstance(stmt, Switch):
        _rewrite_expr(stmt.scrutinee, mapping)
        for case in stmt.cases:
            _rewrite_stmt(case.block, mapping)
        if stmt.default_block is not None:
            _rewrite_stmt(stmt.default_block, mapping)
    elif isinstance(stmt, For):
        if stmt.init is not None:
            _rewrite_stmt(stmt.init, mapping)
        _rewrite_expr(stmt.cond, mapping)
        if stmt.step is not None:
            _rewrite_stmt(stmt.step, mapping)
        _rewrite_stmt(stmt.body, mapping)
    elif isinstance(stmt, (While, DoWhile)):
        _rewrite_expr(stmt.cond, mapping)
        _rewrite_stmt(stmt.body, mapping)
    elif isinstance(stmt, (Parallel, Interrupt)):
        _rewrite_stmt(stmt.body, mapping)


def _rewrite_unit(unit: SourceUnit, mapping: dict[str, str]) -> None:
    for decl in unit.globals:
        _rewrite_stmt(decl, mapping)
    for fn in unit.functions:
        fn.name = mapping.get(fn.name, fn.name)
        for param in fn.params:
            param.name = mapping.get(param.name, param.name)
        _rewrite_stmt(fn.body, mapping)


def _collect_names(unit: SourceUnit) -> set[str]:
    names: set[str] = set()

    def from_expr(expr: Expr | None) -> None:
        if expr is None:
            return
        if isinstance(expr, Ident):
            names.add(expr.name)
        elif isinstance(expr, Binary):
            from_expr(expr.lhs)
            from_expr(expr.rhs)
        elif isinstance(expr, Unary):
            from_expr(expr.operand)
        elif isinstance(expr, Subscript):
            from_expr(expr.base)
            from_expr(expr.index)
        elif isinstance(expr, CallExpr):
            if expr.callee not in BUILTINS:
                names.add(expr.callee)
            for arg in expr.args:
                from_expr(arg)
        elif isinstance(expr, ArrayInit):
            for element in expr.elements:
                from_expr(element)

    def from_stmt(stmt: Stmt) -> None:
        if isinstance(stmt, Decl):
            for d in stmt.declarators:
                names.add(d.name)
                from_expr(d.init)
        elif isinstance(stmt, Assign):
            from_expr(stmt.target)
            from_expr(stmt.value)
        elif isinstance(stmt, CallStmt):
            if stmt.callee not in BUILTINS:
                names.add(stmt.callee)
            for arg in stmt.args:
                from_expr(arg)
        elif isinstance(stmt, Return):
            from_expr(stmt.value)
        elif isinstance(stmt, Block):
            for inner in stmt.stmts:
                from_stmt(inner)
        elif isinstance(stmt, If):
            from_expr(stmt.cond)
            from_stmt(stmt.then_block)
            if stmt.else_block is not None:
                from_stmt(stmt.else_block)
        elif isinstance(stmt, Switch):
            from_expr(stmt.scrutinee)
            for case in stmt.cases:
                from_stmt(case.block)
            if stmt.default_block is not None:
                from_stmt(stmt.default_block)
        elif isinstance(stmt, For):
            if stmt.init is not None:
                from_stmt(stmt.init)
            from_expr(stmt.cond)
            if stmt.step is not None:
                from_stmt(stmt.step)
            from_stmt(stmt.body)
        elif isinstance(stmt, (While, DoWhile)):
            from_expr(stmt.cond)
            from_stmt(stmt.body)
        elif isinstance(stmt, (Parallel, Interrupt)):
            from_stmt(stmt.body)

    for decl in unit.globals:
        from_stmt(decl)
    for fn in unit.functions:
        names.add(fn.name)
        for param in fn.params:
            names.add(param.name)
        from_stmt(fn.body)
    return names


_IDENT_OK = __import__("re").compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def rename(program: str, mapping: dict[str, str]) -> str:
    """Apply a bijective renaming of identifiers; structure stays identical.

    Raises ValueError for non-bijective mappings, invalid or reserved target
    names, or attempts to rename 'main'.
    """
    unit = parse_source(program)
    names = _collect_names(unit)
    for src, dst in mapping.items():
        if dst in KEYWORDS or dst in BUILTINS or not _IDENT_OK.match(dst):
            raise ValueError(f"invalid rename target {dst!r}")
        if src == "main" and dst != "main":
            raise ValueError("cannot rename 'main'")
    full = {name: mapping.get(name, name) for name in names}
    if len(set(full.values())) != len(full):
        raise ValueError("renaming is not bijective over the program's names")
    _rewrite_unit(unit, full)
    return render(unit)


# ============================================================
# PERMUTATION
# ============================================================


def permute(program: str, seed: int) -> str:
    """Randomly reorder main's top-level statements, keeping the program valid.

    Tries seeded shuffles until the reordered program still resolves
    (declarations stay before the first use of their name); falls back to
    the original order.  Output is canonical text either way.
    """
    unit = parse_source(program)
    main = unit.function("main")
    stmts = list(main.body.stmts)
    if len(stmts) <= 1:
        return render(unit)
    rng = random.Random(seed)
    for _ in range(50):
        candidate = stmts[:]
        rng.shuffle(candidate)
        main.body.stmts = candidate
        text = render(unit)
        try:
            resolve(parse_source(text))
        except Exception:
            continue
        return text
    main.body.stmts = stmts
    return render(unit)


# ============================================================
# CONCATENATION  (the ";" operator)
# ============================================================


def _fresh_name(base: str, taken: set[str]) -> str:
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def _assign_from_declarator(d: Declarator) -> list[Stmt]:
    """Statements replacing a dropped re-declaration: its initializer effects."""
    if d.init is None:
        return []
    if isinstance(d.init, ArrayInit):
        out: list[Stmt] = []
        for i, element in enumerate(d.init.elements):
            target = Subscript(
                span=DUMMY_SPAN,
                base=Ident(span=DUMMY_SPAN, name=d.name),
                index=IntLit(span=DUMMY_SPAN, value=i),
            )
            out.append(Assign(span=DUMMY_SPAN, target=target, op="=", value=element))
        return out
    target = Ident(span=DUMMY_SPAN, name=d.name)
    return [Assign(span=DUMMY_SPAN, target=target, op="=", value=d.init)]


def _merge_decl(decl: Decl, taken: set[str]) -> list[Stmt]:
    """Split one declaration around declarators that collide with `taken`."""
    out: list[Stmt] = []
    pending: list[Declarator] = []

    def flush() -> None:
        if pending:
            out.append(Decl(span=DUMMY_SPAN, declarators=list(pending)))
            pending.clear()

    for d in decl.declarators:
        if d.name in taken:
            flush()
            out.extend(_assign_from_declarator(d))
        else:
            pending.append(d)
    flush()
    return out


def concat(p: str, q: str) -> str:
    """The P;Q composition: q's main body runs after p's inside one main."""
    p_unit = parse_source(p)
    q_unit = parse_source(q)
    p_main = p_unit.function("main")
    q_main = q_unit.function("main")

    p_names = _collect_names(p_unit)
    q_names = _collect_names(q_unit)
    taken = p_names | q_names

    # Freshen q's colliding non-main functions and main parameters.
    fresh: dict[str, str] = {}
    p_function_names = {f.name for f in p_unit.functions}
    for fn in q_unit.functions:
        if fn.name != "main" and fn.name in p_function_names:
            fresh[fn.name] = _fresh_name(fn.name, taken)
            taken.add(fresh[fn.name])
    p_top_names = {param.name for param in p_main.params}
    for stmt in p_main.body.stmts:
        if isinstance(stmt, Decl):
            p_top_names.update(d.name for d in stmt.declarators)
    for param in q_main.params:
        if param.name in p_top_names or param.name in {x.name for x in p_main.params}:
            fresh[param.name] = _fresh_name(param.name, taken)
            taken.add(fresh[param.name])
    if fresh:
        _rewrite_unit(q_unit, fresh)

    # Merge globals; colliding re-declarations become leading assignments.
    p_global_names = {d.name for decl in p_unit.globals for d in decl.declarators}
    merged_globals = list(p_unit.globals)
    q_start: list[Stmt] = []
    for decl in q_unit.globals:
        keep: list[Declarator] = []
        for d in decl.declarators:
            if d.name in p_global_names:
                q_start.extend(_assign_from_declarator(d))
            else:
                keep.append(d)
        if keep:
            merged_globals.append(Decl(span=DUMMY_SPAN, declarators=keep))

    # q's top-level statements, with re-declarations of p's top names dropped.
    q_body: list[Stmt] = list(q_start)
    for stmt in q_main.body.stmts:
        if isinstance(stmt, Decl):
            q_body.extend(_merge_decl(stmt, p_top_names))
        else:
            q_body.append(stmt)

    merged_main = FunctionDef(
        name="main",
        params=list(p_main.params) + list(q_main.params),
        body=Block(span=DUMMY_SPAN, stmts=list(p_main.body.stmts) + q_body),
        span=DUMMY_SPAN,
        ret_type=p_main.ret_type,
    )
    # q's helpers go before the merged main: name-keyed counters then see
    # every part of the combined program no earlier than they did alone.
    functions: list[FunctionDef] = []
    for fn in p_unit.functions:
        if fn.name == "main":
            functions.extend(f for f in q_unit.functions if f.name != "main")
            functions.append(merged_main)
        else:
            functions.append(fn)
    return render(SourceUnit(functions=functions, globals=merged_globals))
