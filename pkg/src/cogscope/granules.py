"""Decomposition of functions into basic-control-structure granules.

Each function body is partitioned into alternating maximal runs of simple
statements (one SEQ granule per run) and control-structure granules, in
source order.  Control bodies decompose recursively by the same rule; a
control structure with no nested control anywhere inside is a leaf.  A
simple statement that calls a user-defined function becomes its own CALL
granule (RECURSION when the callee sits on a call-graph cycle through the
caller).  Loop headers belong to the loop granule itself.  Bare blocks are
transparent: their statements join the surrounding stream.

Cognitive weights:

  SEQ 1, ITE 2, CASE 3, FOR 3, REPEAT 3, WHILE 3,
  CALL 2, RECURSION 3, PARALLEL 4, INTERRUPT 4
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Span
from .resolve import Occurrence, ResolvedUnit
from .syntax import (
    Assign,
    Block,
    CallStmt,
    Decl,
    DoWhile,
    For,
    If,
    Interrupt,
    Parallel,
    Return,
    Stmt,
    Switch,
    While,
)

SEQ = "SEQ"
ITE = "ITE"
CASE = "CASE"
FOR = "FOR"
REPEAT = "REPEAT"
WHILE = "WHILE"
CALL = "CALL"
RECURSION = "RECURSION"
PARALLEL = "PARALLEL"
INTERRUPT = "INTERRUPT"

WEIGHTS: dict[str, int] = {
    SEQ: 1,
    ITE: 2,
    CASE: 3,
    FOR: 3,
    REPEAT: 3,
    WHILE: 3,
    CALL: 2,
    RECURSION: 3,
    PARALLEL: 4,
    INTERRUPT: 4,
}

_CONTROL_KIND = {
    If: ITE,
    Switch: CASE,
    For: FOR,
    While: WHILE,
    DoWhile: REPEAT,
    Parallel: PARALLEL,
    Interrupt: INTERRUPT,
}


def weight_of(kind: str) -> int:
    """Cognitive weight of one BCS category."""
    return WEIGHTS[kind]


@dataclass
class Granule:
    id: int
    kind: str
    weight: int
    region: Span
    depth: int
    owned_stmts: tuple[int, ...]  # simple-statement identities owned directly
    anchor_ids: tuple[int, ...]  # owned_stmts plus the control node itself
    children: list[Granule] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class GranuleTree:
    function: str
    top: list[Granule]
    leaf_count: int
    max_depth: int

    def walk(self):
        stack = list(reversed(self.top))
        while stack:
            g = stack.pop()
            yield g
            stack.extend(reversed(g.children))


# ============================================================
# DECOMPOSITION
# ============================================================


def _flatten(stmts: list[Stmt]) -> list[Stmt]:
    """Expand bare blocks; Block nodes are containers, not BCS units."""
    out: list[Stmt] = []
    for s in stmts:
        if isinstance(s, Block):
            out.extend(_flatten(s.stmts))
        else:
            out.append(s)
    return out


def _body_streams(stmt: Stmt) -> list[list[Stmt]]:
    """The statement lists a control structure runs, in source order."""
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
    if isinstance(stmt, (For, While, DoWhile, Parallel, Interrupt)):
        return [stmt.body.stmts]
    raise TypeError(type(stmt).__name__)


def _has_nested_control(streams: list[list[Stmt]]) -> bool:
    for stream in streams:
        for s in _flatten(stream):
            if type(s) in _CONTROL_KIND:
                return True
    return False


def _header_stmt_ids(stmt: Stmt) -> list[int]:
    ids = []
    if isinstance(stmt, For):
        if stmt.init is not None:
            ids.append(id(stmt.init))
        if stmt.step is not None:
            ids.append(id(stmt.step))
    return ids


class _Builder:
    def __init__(self, resolved: ResolvedUnit, function: str):
        self.resolved = resolved
        self.function = function
        self.next_id = 0
        self.max_depth = 0
        self.leaf_count = 0

    def fresh(self) -> int:
        gid = self.next_id
        self.next_id += 1
        return gid

    def user_callees(self, stmt: Stmt) -> tuple[str, ...]:
        return self.resolved.stmt_user_callees.get(id(stmt), ())

    def call_kind(self, stmt: Stmt) -> str:
        for callee in self.user_callees(stmt):
            if _reaches(self.resolved.call_graph, callee, self.function):
                return RECURSION
        return CALL

    def decompose(self, stmts: list[Stmt], depth: int) -> list[Granule]:
        self.max_depth = max(self.max_depth, depth)
        items = _flatten(stmts)
        granules: list[Granule] = []
        run: list[Stmt] = []

        def flush_run() -> None:
            if not run:
                return
            region = Span(
                run[0].span.start, run[-1].span.end, run[0].span.line, run[0].span.col
            )
            ids = tuple(id(s) for s in run)
            granules.append(
                Granule(
                    id=self.fresh(),
                    kind=SEQ,
                    weight=WEIGHTS[SEQ],
                    region=region,
                    depth=depth,
                    owned_stmts=ids,
                    anchor_ids=ids,
                )
            )
            self.leaf_count += 1
            run.clear()

        for s in items:
            kind = _CONTROL_KIND.get(type(s))
            if kind is not None:
                flush_run()
                granules.append(self.control_granule(s, kind, depth))
            elif self.user_callees(s):
                flush_run()
                call_kind = self.call_kind(s)
                granules.append(
                    Granule(
                        id=self.fresh(),
                        kind=call_kind,
                        weight=WEIGHTS[call_kind],
                        region=s.span,
                        depth=depth,
                        owned_stmts=(id(s),),
                        anchor_ids=(id(s),),
                    )
                )
                self.leaf_count += 1
            else:
                run.append(s)
        flush_run()
        return granules

    def control_granule(self, stmt: Stmt, kind: str, depth: int) -> Granule:
        gid = self.fresh()
        streams = _body_streams(stmt)
        header_ids = _header_stmt_ids(stmt)
        nested = _has_nested_control(streams) or any(
            self.user_callees(s) for stream in streams for s in _flatten(stream)
        )
        if not nested:
            owned = list(header_ids)
            for stream in streams:
                owned.extend(id(s) for s in _flatten(stream))
            self.leaf_count += 1
            return Granule(
                id=gid,
                kind=kind,
                weight=WEIGHTS[kind],
                region=stmt.span,
                depth=depth,
                owned_stmts=tuple(owned),
                anchor_ids=tuple(owned) + (id(stmt),),
            )
        children: list[Granule] = []
        for stream in streams:
            children.extend(self.decompose(stream, depth + 1))
        return Granule(
            id=gid,
            kind=kind,
            weight=WEIGHTS[kind],
            region=stmt.span,
            depth=depth,
            owned_stmts=tuple(header_ids),
            anchor_ids=tuple(header_ids) + (id(stmt),),
            children=children,
        )


def _reaches(edges: frozenset[tuple[str, str]], src: str, dst: str) -> bool:
    """True when dst is reachable from src over user-call edges."""
    seen = {src}
    frontier = [src]
    while frontier:
        node = frontier.pop()
        if node == dst:
            return True
        for a, b in edges:
            if a == node and b not in seen:
                seen.add(b)
                frontier.append(b)
    return False


def granulate(resolved: ResolvedUnit, function: str) -> GranuleTree:
    """Decompose one function into its granule hierarchy."""
    fn = resolved.unit.function(function)
    builder = _Builder(resolved, function)
    top = builder.decompose(fn.body.stmts, depth=1)
    return GranuleTree(
        function=function,
        top=top,
        leaf_count=builder.leaf_count,
        max_depth=builder.max_depth,
    )


def structural_weight(tree: GranuleTree) -> int:
    """CFS weight Wc: nesting multiplies, sequence adds, leaves score their weight."""

    def value(g: Granule) -> int:
        if g.is_leaf:
            return g.weight
        return g.weight * sum(value(c) for c in g.children)

    return sum(value(g) for g in tree.top)


# ============================================================
# OCCURRENCE ROUTING
# ============================================================


def occurrence_routing(tree: GranuleTree, resolved: ResolvedUnit) -> dict[int, list[int]]:
    """Map granule id -> indices of occurrences anchored directly to it.

    An occurrence is anchored to the granule owning its statement; condition
    and header occurrences anchor to the control granule itself.
    """
    anchor_to_granule: dict[int, int] = {}
    for g in tree.walk():
        for sid in g.anchor_ids:
            anchor_to_granule[sid] = g.id
    routing: dict[int, list[int]] = {g.id: [] for g in tree.walk()}
    for idx, occ in enumerate(resolved.occurrences):
        if occ.function != tree.function:
            continue
        gid = anchor_to_granule.get(occ.stmt_id)
        if gid is not None:
            routing[gid].append(idx)
    return routing


def partition_check(tree: GranuleTree, resolved: ResolvedUnit) -> bool:
    """Every simple statement of the function is owned by exactly one granule."""
    fn = resolved.unit.function(tree.function)
    simple_ids: list[int] = []

    def collect(stmts: list[Stmt]) -> None:
        for s in stmts:
            if isinstance(s, Block):
                collect(s.stmts)
            elif isinstance(s, (Decl, Assign, CallStmt, Return)):
                simple_ids.append(id(s))
            else:
                for sid in _header_stmt_ids(s):
                    simple_ids.append(sid)
                for stream in _body_streams(s):
                    collect(stream)

    collect(fn.body.stmts)
    owned: list[int] = []
    for g in tree.walk():
        owned.extend(g.owned_stmts)
    return sorted(owned) == sorted(simple_ids)


def granule_occurrences(
    tree: GranuleTree, resolved: ResolvedUnit
) -> dict[int, list[Occurrence]]:
    routing = occurrence_routing(tree, resolved)
    occs = resolved.occurrences
    return {gid: [occs[i] for i in indices] for gid, indices in routing.items()}
