"""Predicate-site lowering.

Every if/while condition is rewritten so that each comparison becomes its
own single-clause branch (a PredicateSite) while short-circuit semantics
are preserved:

* a condition that is one comparison stays inline and is a site;
* a compound condition is decomposed into a flag-evaluation chain: each
  comparison becomes `if (cmp) flag = true; else flag = false;` nested so
  that && and || short-circuit exactly as before, and the construct tests
  the bare flag (bare boolean conditions are not sites);
* calls inside a comparison are hoisted to fresh temporary locals assigned
  immediately before that comparison is reached, so call timing is
  unchanged and patches can refer to the call results;
* a while loop evaluates its chain before the loop and again at the end of
  the body; both copies of a comparison share one site id.

`!` is normalized away first (comparison operators invert, De Morgan over
&& and ||, `!(A ^ B)` becomes `(!A) ^ B`), so no site sits under a
negation.  Site ids number comparisons in source order; a comparison in a
re-parsed identical source gets the same id.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .parser import INTRINSICS, resolve_program
from .printer import emit_expr
from .syntax import (
    Assign,
    Binary,
    Block,
    BoolLit,
    Call,
    Compare,
    Expr,
    FuncDecl,
    If,
    Index,
    NEGATED_OP,
    Print,
    Program,
    Return,
    Stmt,
    Unary,
    VarDecl,
    VarRef,
    While,
    walk,
)


@dataclass
class CaptureEntry:
    """One binding recorded in every snapshot of a site."""

    name: str  # source rendering, e.g. "ch" or "a[i]"
    ty: str
    expr: Expr  # VarRef or Index, evaluable in the site's frame


@dataclass
class PredicateSite:
    id: int
    function: str
    line: int
    col: int
    clause: Compare  # lowered single-clause comparison (calls replaced by temps)
    construct: str  # "if" or "while"
    source_nid: int  # the comparison node in the original program
    stmt_nid: int  # the enclosing If/While in the original program
    temps: list[tuple[str, str, Expr]] = field(default_factory=list)  # (name, ty, call)
    capture: list[CaptureEntry] = field(default_factory=list)

    @property
    def clause_text(self) -> str:
        return emit_expr(self.clause)


def _normalize(e: Expr) -> Expr:
    """Push ! down to comparisons and bare booleans. An inverted comparison
    keeps the original comparison's node id so patches can find it."""
    if isinstance(e, Unary) and e.op == "!":
        x = e.operand
        if isinstance(x, Compare):
            inv = Compare(NEGATED_OP[x.op], x.lhs, x.rhs, span=x.span)
            inv.nid = x.nid
            inv.ty = "bool"
            return inv
        if isinstance(x, Binary) and x.op in ("&&", "||"):
            flipped = "||" if x.op == "&&" else "&&"
            out = Binary(
                flipped,
                _normalize(Unary("!", x.lhs, span=x.span)),
                _normalize(Unary("!", x.rhs, span=x.span)),
                span=x.span,
            )
            out.ty = "bool"
            return out
        if isinstance(x, Binary) and x.op == "^":
            out = Binary("^", _normalize(Unary("!", x.lhs, span=x.span)), _normalize(x.rhs), span=x.span)
            out.ty = "bool"
            return out
        if isinstance(x, Unary) and x.op == "!":
            return _normalize(x.operand)
        if isinstance(x, BoolLit):
            return BoolLit(not x.value, span=x.span, ty="bool")
        e.operand = _normalize(x)
        return e
    if isinstance(e, Binary) and e.op in ("&&", "||", "^"):
        e.lhs = _normalize(e.lhs)
        e.rhs = _normalize(e.rhs)
        return e
    return e


def _is_bare_bool(e: Expr) -> bool:
    if isinstance(e, (VarRef, Call, Index, BoolLit)):
        return True
    if isinstance(e, Unary) and e.op == "!":
        return _is_bare_bool(e.operand)
    return False


class _FunctionLowerer:
    def __init__(self, program: Program, func: FuncDecl, taken: set[str], next_site: int):
        self.program = program
        self.func = func
        self.taken = set(taken)
        for p in func.params:
            self.taken.add(p.name)
        for node in walk(func.body):
            if isinstance(node, VarDecl):
                self.taken.add(node.name)
        self.next_site = next_site
        self.sites: list[PredicateSite] = []
        self.flag_names: set[str] = set()
        self._flag_n = 0
        self._temp_n = 0

    def fresh(self, prefix: str) -> str:
        while True:
            if prefix == "_c":
                name = f"_c{self._flag_n}"
                self._flag_n += 1
            else:
                name = f"_t{self._temp_n}"
                self._temp_n += 1
            if name not in self.taken:
                self.taken.add(name)
                return name

    def lower(self) -> None:
        self._lower_block(self.func.body)

    def _lower_block(self, block: Block) -> None:
        new_stmts: list[Stmt] = []
        for stmt in block.stmts:
            new_stmts.extend(self._lower_stmt(stmt))
        block.stmts = new_stmts

    def _lower_stmt(self, stmt: Stmt) -> list[Stmt]:
        if isinstance(stmt, If):
            pre, cond = self._lower_condition(stmt.cond, "if", stmt.nid)
            stmt.cond = cond
            self._lower_block(stmt.then)
            if stmt.orelse is not None:
                self._lower_block(stmt.orelse)
            return pre + [stmt]
        if isinstance(stmt, While):
            pre, cond, re_eval = self._lower_while_condition(stmt.cond, stmt.nid)
            stmt.cond = cond
            self._lower_block(stmt.body)
            stmt.body.stmts.extend(re_eval)
            return pre + [stmt]
        return [stmt]

    def _lower_condition(self, cond: Expr, construct: str, stmt_nid: int):
        cond = _normalize(cond)
        if isinstance(cond, Compare):
            decls, assigns, clause = self._hoist_calls(cond, construct, stmt_nid)
            return decls + assigns, clause
        if _is_bare_bool(cond):
            return [], cond
        flag = self.fresh("_c")
        self.flag_names.add(flag)
        decls: list[Stmt] = [VarDecl("bool", flag, None)]
        stmts = self._chain(cond, flag, construct, stmt_nid, decls)
        return decls + stmts, VarRef(flag, ty="bool", binding="local")

    def _lower_while_condition(self, cond: Expr, stmt_nid: int):
        cond = _normalize(cond)
        if isinstance(cond, Compare):
            decls, assigns, clause = self._hoist_calls(cond, "while", stmt_nid)
            return decls + assigns, clause, copy.deepcopy(assigns)
        if _is_bare_bool(cond):
            return [], cond, []
        flag = self.fresh("_c")
        self.flag_names.add(flag)
        decls: list[Stmt] = [VarDecl("bool", flag, None)]
        stmts = self._chain(cond, flag, "while", stmt_nid, decls)
        # The body re-evaluates the chain; deep copies keep the site ids.
        re_eval = copy.deepcopy(stmts)
        return decls + stmts, VarRef(flag, ty="bool", binding="local"), re_eval

    def _chain(self, e: Expr, flag: str, construct: str, stmt_nid: int, decls: list[Stmt]) -> list[Stmt]:
        def assign_flag(to: str, value: Expr) -> Assign:
            return Assign(VarRef(to, ty="bool", binding="local"), value)

        if isinstance(e, Compare):
            temp_decls, assigns, clause = self._hoist_calls(e, construct, stmt_nid)
            decls.extend(temp_decls)
            branch = If(
                clause,
                Block([assign_flag(flag, BoolLit(True, ty="bool"))]),
                Block([assign_flag(flag, BoolLit(False, ty="bool"))]),
            )
            return assigns + [branch]
        if isinstance(e, Binary) and e.op == "&&":
            first = self._chain(e.lhs, flag, construct, stmt_nid, decls)
            rest = self._chain(e.rhs, flag, construct, stmt_nid, decls)
            return first + [If(VarRef(flag, ty="bool", binding="local"), Block(rest), None)]
        if isinstance(e, Binary) and e.op == "||":
            first = self._chain(e.lhs, flag, construct, stmt_nid, decls)
            rest = self._chain(e.rhs, flag, construct, stmt_nid, decls)
            return first + [If(VarRef(flag, ty="bool", binding="local"), Block([]), Block(rest))]
        if isinstance(e, Binary) and e.op == "^":
            aux = self.fresh("_c")
            self.flag_names.add(aux)
            decls.append(VarDecl("bool", aux, None))
            first = self._chain(e.lhs, flag, construct, stmt_nid, decls)
            second = self._chain(e.rhs, aux, construct, stmt_nid, decls)
            combine = assign_flag(
                flag,
                Binary(
                    "^",
                    VarRef(flag, ty="bool", binding="local"),
                    VarRef(aux, ty="bool", binding="local"),
                    ty="bool",
                ),
            )
            return first + second + [combine]
        if _is_bare_bool(e):
            return [assign_flag(flag, e)]
        raise AssertionError(f"unexpected condition shape {e!r}")

    def _hoist_calls(self, cmp: Compare, construct: str, stmt_nid: int):
        """Replace calls in a comparison with fresh temps; register the site."""
        decls: list[Stmt] = []
        assigns: list[Stmt] = []
        temps: list[tuple[str, str, Expr]] = []

        def rewrite(e: Expr) -> Expr:
            if isinstance(e, Call):
                name = self.fresh("_t")
                temps.append((name, e.ty, copy.deepcopy(e)))
                decls.append(VarDecl(e.ty, name, None))
                inner = Call(e.name, [rewrite(a) for a in e.args], span=e.span, ty=e.ty)
                assigns.append(Assign(VarRef(name, ty=e.ty, binding="local"), inner))
                return VarRef(name, span=e.span, ty=e.ty, binding="local")
            if isinstance(e, Index):
                e.base = rewrite(e.base)
                e.index = rewrite(e.index)
                return e
            if isinstance(e, Unary):
                e.operand = rewrite(e.operand)
                return e
            if isinstance(e, (Binary, Compare)):
                e.lhs = rewrite(e.lhs)
                e.rhs = rewrite(e.rhs)
                return e
            return e

        cmp.lhs = rewrite(cmp.lhs)
        cmp.rhs = rewrite(cmp.rhs)

        site = PredicateSite(
            id=self.next_site + len(self.sites),
            function=self.func.name,
            line=cmp.span[0],
            col=cmp.span[1],
            clause=cmp,
            construct=construct,
            source_nid=cmp.nid,
            stmt_nid=stmt_nid,
            temps=temps,
        )
        cmp.site_id = site.id
        self.sites.append(site)
        return decls, assigns, cmp

    # --- capture plans ---

    def build_capture_plans(self) -> None:
        used = self._used_or_defined()
        local_decls = [
            (node.name, node.ty)
            for node in walk(self.func.body)
            if isinstance(node, VarDecl)
        ]
        for site in self.sites:
            entries: list[CaptureEntry] = []
            seen: set[str] = set()

            def add(name: str, ty: str, expr: Expr) -> None:
                if name not in seen:
                    seen.add(name)
                    entries.append(CaptureEntry(name, ty, expr))

            def visit(e: Expr) -> None:
                if isinstance(e, VarRef):
                    add(e.name, e.ty, copy.deepcopy(e))
                elif isinstance(e, Index):
                    add(emit_expr(e), e.ty, copy.deepcopy(e))
                    visit(e.base)
                    visit(e.index)
                elif isinstance(e, Unary):
                    visit(e.operand)
                elif isinstance(e, (Binary, Compare)):
                    visit(e.lhs)
                    visit(e.rhs)
                elif isinstance(e, Call):
                    for a in e.args:
                        visit(a)

            visit(site.clause.lhs)
            visit(site.clause.rhs)
            for p in self.func.params:
                add(p.name, p.ty, VarRef(p.name, ty=p.ty, binding="local"))
            for name, ty in local_decls:
                if name in self.flag_names or name not in used:
                    continue
                add(name, ty, VarRef(name, ty=ty, binding="local"))
            for g in self.program.globals:
                if g.name in used:
                    add(g.name, g.ty, VarRef(g.name, ty=g.ty, binding="global"))
            site.capture = entries

    def _used_or_defined(self) -> set[str]:
        names: set[str] = set()
        for node in walk(self.func.body):
            if isinstance(node, VarRef):
                names.add(node.name)
            elif isinstance(node, Assign):
                target = node.target
                if isinstance(target, VarRef):
                    names.add(target.name)
                elif isinstance(target, Index) and isinstance(target.base, VarRef):
                    names.add(target.base.name)
            elif isinstance(node, VarDecl) and node.init is not None:
                names.add(node.name)
        return names


def lower_predicates(program: Program) -> tuple[Program, list[PredicateSite]]:
    """Return a lowered deep copy of `program` plus its predicate sites.
    The input program is left untouched; site source_nid/stmt_nid refer to
    its node ids."""
    lowered = copy.deepcopy(program)
    taken = {g.name for g in lowered.globals}
    taken.update(f.name for f in lowered.functions)
    taken.update(INTRINSICS)
    sites: list[PredicateSite] = []
    lowerers: list[_FunctionLowerer] = []
    for func in lowered.functions:
        fl = _FunctionLowerer(lowered, func, taken, next_site=len(sites))
        fl.lower()
        sites.extend(fl.sites)
        lowerers.append(fl)
    resolve_program(lowered)
    for fl in lowerers:
        fl.build_capture_plans()
    return lowered, sites
