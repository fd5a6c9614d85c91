"""Canonical source emission.

parse(emit(p)) is structurally identical to p, and emission is
deterministic, so emitted text is a stable canonical form.  Operator
spacing is fixed; parentheses are the minimum required by precedence,
except that comparison operands of boolean connectives are always
parenthesized for readability (`(a <= b) && (b <= c)`).
"""

from __future__ import annotations

from .syntax import (
    ArrayLit,
    Assign,
    Binary,
    Block,
    BoolLit,
    Call,
    CharLit,
    Compare,
    Expr,
    FloatLit,
    FuncDecl,
    GlobalDecl,
    If,
    Index,
    IntLit,
    Print,
    Program,
    Return,
    Stmt,
    StringLit,
    Unary,
    VarDecl,
    VarRef,
    While,
)

_PREC = {
    "||": 1,
    "&&": 2,
    "^": 3,
    "==": 4,
    "!=": 4,
    "<": 5,
    "<=": 5,
    ">": 5,
    ">=": 5,
    "+": 6,
    "-": 6,
    "*": 7,
    "/": 7,
    "%": 7,
}
_UNARY_PREC = 8
_POSTFIX_PREC = 9
_ATOM_PREC = 10

_CHAR_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0"}
_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0"}


def _escape(text: str, table: dict[str, str]) -> str:
    return "".join(table.get(ch, ch) for ch in text)


def _prec(e: Expr) -> int:
    if isinstance(e, (Binary, Compare)):
        return _PREC[e.op]
    if isinstance(e, Unary):
        return _UNARY_PREC
    if isinstance(e, (Index, Call)):
        return _POSTFIX_PREC
    return _ATOM_PREC


def emit_expr(e: Expr) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, FloatLit):
        return repr(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, CharLit):
        return f"'{_escape(e.value, _CHAR_ESCAPES)}'"
    if isinstance(e, StringLit):
        return f'"{_escape(e.value, _STRING_ESCAPES)}"'
    if isinstance(e, ArrayLit):
        return "[" + ", ".join(emit_expr(x) for x in e.elements) + "]"
    if isinstance(e, VarRef):
        return e.name
    if isinstance(e, Index):
        return f"{_child(e.base, _POSTFIX_PREC, left=True)}[{emit_expr(e.index)}]"
    if isinstance(e, Call):
        return f"{e.name}(" + ", ".join(emit_expr(a) for a in e.args) + ")"
    if isinstance(e, Unary):
        operand = emit_expr(e.operand)
        if _prec(e.operand) < _UNARY_PREC or isinstance(e.operand, Unary):
            operand = f"({operand})"
        return f"{e.op}{operand}"
    if isinstance(e, (Binary, Compare)):
        prec = _PREC[e.op]
        boolean = isinstance(e, Binary) and e.op in ("&&", "||", "^")
        lhs = _child(e.lhs, prec, left=True, force=boolean and isinstance(e.lhs, Compare))
        rhs = _child(e.rhs, prec, left=False, force=boolean and isinstance(e.rhs, Compare))
        return f"{lhs} {e.op} {rhs}"
    raise AssertionError(f"unhandled expression {e!r}")


def _child(e: Expr, parent_prec: int, left: bool, force: bool = False) -> str:
    text = emit_expr(e)
    prec = _prec(e)
    if force or prec < parent_prec or (prec == parent_prec and not left):
        return f"({text})"
    return text


def _emit_stmt(stmt: Stmt, indent: int, out: list[str]) -> None:
    pad = "    " * indent
    if isinstance(stmt, VarDecl):
        if stmt.init is None:
            out.append(f"{pad}{stmt.ty} {stmt.name};")
        else:
            out.append(f"{pad}{stmt.ty} {stmt.name} = {emit_expr(stmt.init)};")
    elif isinstance(stmt, Assign):
        out.append(f"{pad}{emit_expr(stmt.target)} = {emit_expr(stmt.value)};")
    elif isinstance(stmt, If):
        out.append(f"{pad}if ({emit_expr(stmt.cond)}){{")
        _emit_block(stmt.then, indent + 1, out)
        orelse = stmt.orelse
        # Collapse a sole nested If into `else if`.
        while orelse is not None and len(orelse.stmts) == 1 and isinstance(orelse.stmts[0], If):
            nested = orelse.stmts[0]
            out.append(f"{pad}}} else if ({emit_expr(nested.cond)}){{")
            _emit_block(nested.then, indent + 1, out)
            orelse = nested.orelse
        if orelse is not None:
            out.append(f"{pad}}} else {{")
            _emit_block(orelse, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, While):
        out.append(f"{pad}while ({emit_expr(stmt.cond)}){{")
        _emit_block(stmt.body, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(stmt, Return):
        if stmt.value is None:
            out.append(f"{pad}return;")
        else:
            out.append(f"{pad}return {emit_expr(stmt.value)};")
    elif isinstance(stmt, Print):
        out.append(f"{pad}print({emit_expr(stmt.value)});")
    else:
        raise AssertionError(f"unhandled statement {stmt!r}")


def _emit_block(block: Block, indent: int, out: list[str]) -> None:
    for stmt in block.stmts:
        _emit_stmt(stmt, indent, out)


def emit_source(program: Program) -> str:
    out: list[str] = []
    for g in program.globals:
        out.append(f"{g.ty} {g.name} = {emit_expr(g.init)};")
    if program.globals:
        out.append("")
    for i, func in enumerate(program.functions):
        if i > 0:
            out.append("")
        params = ", ".join(f"{p.ty} {p.name}" for p in func.params)
        if func.body.stmts:
            out.append(f"{func.ret_ty} {func.name}({params}){{")
            _emit_block(func.body, 1, out)
            out.append("}")
        else:
            out.append(f"{func.ret_ty} {func.name}({params}){{ }}")
    return "\n".join(out) + "\n"
