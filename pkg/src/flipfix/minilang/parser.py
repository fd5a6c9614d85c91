"""Recursive-descent parser, name resolution, and type checking.

parse_program returns a fully resolved Program: every expression carries its
type, every VarRef its binding kind, and every node a dense id assigned in
depth-first source order (stable across re-parses of identical text).
"""

from __future__ import annotations

from .errors import ParseError, SemanticError
from .lexer import Token, tokenize
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
    NUMERIC_TYPES,
    Param,
    Print,
    Program,
    Return,
    Stmt,
    StringLit,
    Unary,
    VarDecl,
    VarRef,
    While,
    assign_node_ids,
    element_type,
    is_array_type,
)

INTRINSICS = ("hash", "len")

_TYPE_KEYWORDS = ("int", "float", "bool", "char", "string")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col)

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.cur
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, *ops: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    def take(self) -> Token:
        t = self.cur
        self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            want = text or kind
            self.error(f"expected {want!r}, found {self.cur.text or self.cur.kind!r}")
        return self.take()

    def span(self, tok: Token) -> tuple[int, int]:
        return (tok.line, tok.col)

    # --- declarations ---

    def parse_program(self) -> Program:
        if self.at("eof"):
            self.error("expected function declaration")
        globals_: list[GlobalDecl] = []
        functions: list[FuncDecl] = []
        while not self.at("eof"):
            start = self.cur
            if self.at("keyword", "void"):
                functions.append(self.parse_function())
                continue
            if self.cur.kind != "keyword" or self.cur.text not in _TYPE_KEYWORDS:
                self.error("expected function declaration")
            ty = self.parse_type()
            name = self.expect("ident").text
            if self.at_op("("):
                functions.append(self.finish_function(ty, name, start))
            else:
                if functions:
                    self.error("global declarations must precede all functions", start)
                self.expect("op", "=")
                init = self.parse_expr()
                self.expect("op", ";")
                globals_.append(GlobalDecl(ty, name, init, span=self.span(start)))
        return Program(globals_, functions)

    def parse_type(self) -> str:
        tok = self.take()
        ty = tok.text
        if self.at_op("["):
            save = self.pos
            self.take()
            if self.at_op("]"):
                self.take()
                return ty + "[]"
            self.pos = save
        return ty

    def parse_function(self) -> FuncDecl:
        start = self.expect("keyword", "void")
        name = self.expect("ident").text
        return self.finish_function("void", name, start)

    def finish_function(self, ret_ty: str, name: str, start: Token) -> FuncDecl:
        self.expect("op", "(")
        params: list[Param] = []
        if not self.at_op(")"):
            while True:
                ptok = self.cur
                if ptok.kind != "keyword" or ptok.text not in _TYPE_KEYWORDS:
                    self.error("expected parameter type")
                pty = self.parse_type()
                pname = self.expect("ident").text
                params.append(Param(pty, pname, span=self.span(ptok)))
                if self.at_op(","):
                    self.take()
                    continue
                break
        self.expect("op", ")")
        body = self.parse_block()
        return FuncDecl(ret_ty, name, params, body, span=self.span(start))

    # --- statements ---

    def parse_block(self) -> Block:
        start = self.expect("op", "{")
        stmts: list[Stmt] = []
        while not self.at_op("}"):
            if self.at("eof"):
                self.error("unterminated block")
            stmts.append(self.parse_stmt())
        self.expect("op", "}")
        return Block(stmts, span=self.span(start))

    def parse_stmt(self) -> Stmt:
        tok = self.cur
        if tok.kind == "keyword":
            if tok.text in _TYPE_KEYWORDS:
                ty = self.parse_type()
                name = self.expect("ident").text
                init = None
                if self.at_op("="):
                    self.take()
                    init = self.parse_expr()
                self.expect("op", ";")
                return VarDecl(ty, name, init, span=self.span(tok))
            if tok.text == "if":
                return self.parse_if()
            if tok.text == "while":
                self.take()
                self.expect("op", "(")
                cond = self.parse_expr()
                self.expect("op", ")")
                body = self.parse_block()
                return While(cond, body, span=self.span(tok))
            if tok.text == "return":
                self.take()
                value = None
                if not self.at_op(";"):
                    value = self.parse_expr()
                self.expect("op", ";")
                return Return(value, span=self.span(tok))
            if tok.text == "print":
                self.take()
                self.expect("op", "(")
                value = self.parse_expr()
                self.expect("op", ")")
                self.expect("op", ";")
                return Print(value, span=self.span(tok))
            self.error(f"unexpected keyword {tok.text!r}")
        if tok.kind == "ident":
            name = self.take().text
            target: Expr = VarRef(name, span=self.span(tok))
            if self.at_op("["):
                self.take()
                idx = self.parse_expr()
                self.expect("op", "]")
                target = Index(target, idx, span=self.span(tok))
            self.expect("op", "=")
            value = self.parse_expr()
            self.expect("op", ";")
            return Assign(target, value, span=self.span(tok))
        self.error("expected statement")

    def parse_if(self) -> If:
        tok = self.expect("keyword", "if")
        self.expect("op", "(")
        cond = self.parse_expr()
        self.expect("op", ")")
        then = self.parse_block()
        orelse = None
        if self.at("keyword", "else"):
            else_tok = self.take()
            if self.at("keyword", "if"):
                nested = self.parse_if()
                orelse = Block([nested], span=self.span(else_tok))
            else:
                orelse = self.parse_block()
        return If(cond, then, orelse, span=self.span(tok))

    # --- expressions, precedence climbing ---

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        e = self.parse_and()
        while self.at_op("||"):
            tok = self.take()
            e = Binary("||", e, self.parse_and(), span=self.span(tok))
        return e

    def parse_and(self) -> Expr:
        e = self.parse_xor()
        while self.at_op("&&"):
            tok = self.take()
            e = Binary("&&", e, self.parse_xor(), span=self.span(tok))
        return e

    def parse_xor(self) -> Expr:
        e = self.parse_equality()
        while self.at_op("^"):
            tok = self.take()
            e = Binary("^", e, self.parse_equality(), span=self.span(tok))
        return e

    def parse_equality(self) -> Expr:
        e = self.parse_relational()
        while self.at_op("==", "!="):
            tok = self.take()
            e = Compare(tok.text, e, self.parse_relational(), span=self.span(tok))
        return e

    def parse_relational(self) -> Expr:
        e = self.parse_additive()
        while self.at_op("<", "<=", ">", ">="):
            tok = self.take()
            e = Compare(tok.text, e, self.parse_additive(), span=self.span(tok))
        return e

    def parse_additive(self) -> Expr:
        e = self.parse_multiplicative()
        while self.at_op("+", "-"):
            tok = self.take()
            e = Binary(tok.text, e, self.parse_multiplicative(), span=self.span(tok))
        return e

    def parse_multiplicative(self) -> Expr:
        e = self.parse_unary()
        while self.at_op("*", "/", "%"):
            tok = self.take()
            e = Binary(tok.text, e, self.parse_unary(), span=self.span(tok))
        return e

    def parse_unary(self) -> Expr:
        if self.at_op("-", "!"):
            tok = self.take()
            return Unary(tok.text, self.parse_unary(), span=self.span(tok))
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        e = self.parse_primary()
        while self.at_op("["):
            tok = self.take()
            idx = self.parse_expr()
            self.expect("op", "]")
            e = Index(e, idx, span=self.span(tok))
        return e

    def parse_primary(self) -> Expr:
        tok = self.cur
        if tok.kind == "int":
            self.take()
            return IntLit(tok.value, span=self.span(tok))
        if tok.kind == "float":
            self.take()
            return FloatLit(tok.value, span=self.span(tok))
        if tok.kind == "char":
            self.take()
            return CharLit(tok.value, span=self.span(tok))
        if tok.kind == "string":
            self.take()
            return StringLit(tok.value, span=self.span(tok))
        if tok.kind == "keyword" and tok.text in ("true", "false"):
            self.take()
            return BoolLit(tok.text == "true", span=self.span(tok))
        if tok.kind == "ident":
            self.take()
            if self.at_op("("):
                self.take()
                args: list[Expr] = []
                if not self.at_op(")"):
                    while True:
                        args.append(self.parse_expr())
                        if self.at_op(","):
                            self.take()
                            continue
                        break
                self.expect("op", ")")
                return Call(tok.text, args, span=self.span(tok))
            return VarRef(tok.text, span=self.span(tok))
        if self.at_op("("):
            self.take()
            e = self.parse_expr()
            self.expect("op", ")")
            return e
        if self.at_op("["):
            self.take()
            elements: list[Expr] = []
            if not self.at_op("]"):
                while True:
                    elements.append(self.parse_expr())
                    if self.at_op(","):
                        self.take()
                        continue
                    break
            self.expect("op", "]")
            return ArrayLit(elements, span=self.span(tok))
        self.error("expected expression")


class _Resolver:
    """Binds names, checks types, and enforces the structural rules:
    exactly one void main, unique function names, flat per-function variable
    namespace with no shadowing of formals or globals, use after textual
    declaration, literal-only global initializers."""

    def __init__(self, program: Program):
        self.program = program
        self.functions: dict[str, FuncDecl] = {}
        self.globals: dict[str, str] = {}

    def error(self, msg: str, node) -> None:
        raise SemanticError(msg, node.span[0], node.span[1])

    def resolve(self) -> None:
        for func in self.program.functions:
            if func.name in INTRINSICS:
                self.error(f"{func.name!r} is a built-in function", func)
            if func.name in self.functions:
                self.error(f"duplicate function {func.name!r}", func)
            self.functions[func.name] = func
        mains = [f for f in self.program.functions if f.name == "main"]
        if len(mains) != 1:
            raise SemanticError("program must define exactly one main function")
        if mains[0].ret_ty != "void":
            self.error("main must return void", mains[0])
        for g in self.program.globals:
            self.check_var_name(g.name, g)
            self.check_literal_init(g)
            self.globals[g.name] = g.ty
        for func in self.program.functions:
            self.resolve_function(func)

    def check_var_name(self, name: str, node) -> None:
        if name in INTRINSICS or name in self.functions:
            self.error(f"{name!r} conflicts with a function name", node)
        if name in self.globals:
            self.error(f"duplicate declaration of {name!r}", node)

    def check_literal_init(self, g: GlobalDecl) -> None:
        def is_literal(e: Expr) -> bool:
            if isinstance(e, (IntLit, FloatLit, BoolLit, CharLit, StringLit)):
                return True
            if isinstance(e, Unary) and e.op == "-":
                return isinstance(e.operand, (IntLit, FloatLit))
            if isinstance(e, ArrayLit):
                return all(is_literal(x) for x in e.elements)
            return False

        if not is_literal(g.init):
            self.error("global initializer must be a literal", g.init)
        ty = self.type_expr(g.init, {})
        if ty != g.ty:
            self.error(f"global {g.name!r} declared {g.ty} but initialized with {ty}", g)

    def resolve_function(self, func: FuncDecl) -> None:
        scope: dict[str, str] = {}
        for p in func.params:
            if p.name in scope:
                self.error(f"duplicate parameter {p.name!r}", p)
            if p.name in self.globals or p.name in INTRINSICS or p.name in self.functions:
                self.error(f"parameter {p.name!r} shadows another declaration", p)
            if p.ty == "void":
                self.error("parameters cannot be void", p)
            scope[p.name] = p.ty
        self.resolve_block(func.body, func, scope)

    def resolve_block(self, block: Block, func: FuncDecl, scope: dict[str, str]) -> None:
        for stmt in block.stmts:
            self.resolve_stmt(stmt, func, scope)

    def resolve_stmt(self, stmt: Stmt, func: FuncDecl, scope: dict[str, str]) -> None:
        if isinstance(stmt, VarDecl):
            if stmt.name in scope:
                self.error(f"duplicate declaration of {stmt.name!r}", stmt)
            if stmt.name in self.globals or stmt.name in INTRINSICS or stmt.name in self.functions:
                self.error(f"local {stmt.name!r} shadows another declaration", stmt)
            if stmt.init is not None:
                ty = self.type_expr(stmt.init, scope)
                if ty != stmt.ty:
                    self.error(f"cannot initialize {stmt.ty} {stmt.name!r} with {ty}", stmt)
            scope[stmt.name] = stmt.ty
            return
        if isinstance(stmt, Assign):
            value_ty = self.type_expr(stmt.value, scope)
            target = stmt.target
            if isinstance(target, VarRef):
                ty = self.type_var(target, scope)
                if ty != value_ty:
                    self.error(f"cannot assign {value_ty} to {ty} {target.name!r}", stmt)
            elif isinstance(target, Index):
                base = target.base
                if not isinstance(base, VarRef):
                    self.error("indexed assignment target must be a variable", stmt)
                base_ty = self.type_var(base, scope)
                if not is_array_type(base_ty):
                    self.error("only array elements can be assigned by index", stmt)
                idx_ty = self.type_expr(target.index, scope)
                if idx_ty != "int":
                    self.error("array index must be int", target.index)
                target.ty = element_type(base_ty)
                if value_ty != target.ty:
                    self.error(f"cannot assign {value_ty} to {target.ty} element", stmt)
            else:
                self.error("invalid assignment target", stmt)
            return
        if isinstance(stmt, If):
            if self.type_expr(stmt.cond, scope) != "bool":
                self.error("if condition must be bool", stmt.cond)
            self.resolve_block(stmt.then, func, scope)
            if stmt.orelse is not None:
                self.resolve_block(stmt.orelse, func, scope)
            return
        if isinstance(stmt, While):
            if self.type_expr(stmt.cond, scope) != "bool":
                self.error("while condition must be bool", stmt.cond)
            self.resolve_block(stmt.body, func, scope)
            return
        if isinstance(stmt, Return):
            if stmt.value is None:
                if func.ret_ty != "void":
                    self.error(f"{func.name!r} must return a {func.ret_ty}", stmt)
            else:
                if func.ret_ty == "void":
                    self.error(f"{func.name!r} returns void", stmt)
                ty = self.type_expr(stmt.value, scope)
                if ty != func.ret_ty:
                    self.error(f"return type {ty} does not match {func.ret_ty}", stmt)
            return
        if isinstance(stmt, Print):
            self.type_expr(stmt.value, scope)
            return
        raise AssertionError(f"unhandled statement {stmt!r}")

    def type_var(self, ref: VarRef, scope: dict[str, str]) -> str:
        if ref.name in scope:
            ref.binding = "local"
            ref.ty = scope[ref.name]
        elif ref.name in self.globals:
            ref.binding = "global"
            ref.ty = self.globals[ref.name]
        else:
            self.error(f"unresolved identifier {ref.name!r}", ref)
        return ref.ty

    def type_expr(self, e: Expr, scope: dict[str, str]) -> str:
        e.ty = self._type_expr(e, scope)
        return e.ty

    def _type_expr(self, e: Expr, scope: dict[str, str]) -> str:
        if isinstance(e, IntLit):
            return "int"
        if isinstance(e, FloatLit):
            return "float"
        if isinstance(e, BoolLit):
            return "bool"
        if isinstance(e, CharLit):
            return "char"
        if isinstance(e, StringLit):
            return "string"
        if isinstance(e, ArrayLit):
            if not e.elements:
                self.error("cannot infer the type of an empty array literal", e)
            tys = [self.type_expr(x, scope) for x in e.elements]
            if any(is_array_type(t) for t in tys):
                self.error("nested arrays are not supported", e)
            if len(set(tys)) != 1:
                self.error("array elements must share one type", e)
            return tys[0] + "[]"
        if isinstance(e, VarRef):
            return self.type_var(e, scope)
        if isinstance(e, Index):
            base_ty = self.type_expr(e.base, scope)
            if self.type_expr(e.index, scope) != "int":
                self.error("index must be int", e.index)
            if base_ty == "string":
                return "char"
            if is_array_type(base_ty):
                return element_type(base_ty)
            self.error(f"cannot index a {base_ty}", e)
        if isinstance(e, Call):
            arg_tys = [self.type_expr(a, scope) for a in e.args]
            if e.name == "hash":
                if len(e.args) != 1:
                    self.error("hash takes one argument", e)
                return "int"
            if e.name == "len":
                if len(e.args) != 1 or not (arg_tys[0] == "string" or is_array_type(arg_tys[0])):
                    self.error("len takes one string or array argument", e)
                return "int"
            if e.name not in self.functions:
                self.error(f"call to undefined function {e.name!r}", e)
            func = self.functions[e.name]
            if len(arg_tys) != len(func.params):
                self.error(
                    f"{e.name!r} expects {len(func.params)} arguments, got {len(arg_tys)}", e
                )
            for got, param in zip(arg_tys, func.params):
                if got != param.ty:
                    self.error(f"argument {param.name!r} expects {param.ty}, got {got}", e)
            if func.ret_ty == "void":
                self.error(f"void function {e.name!r} used as a value", e)
            return func.ret_ty
        if isinstance(e, Unary):
            ty = self.type_expr(e.operand, scope)
            if e.op == "-":
                if ty not in NUMERIC_TYPES:
                    self.error(f"cannot negate a {ty}", e)
                return ty
            if ty != "bool":
                self.error("! expects a bool", e)
            return "bool"
        if isinstance(e, Compare):
            lt = self.type_expr(e.lhs, scope)
            rt = self.type_expr(e.rhs, scope)
            numeric = lt in NUMERIC_TYPES and rt in NUMERIC_TYPES
            same = lt == rt
            if e.op in ("==", "!="):
                ok = numeric or (same and lt in ("char", "string", "bool"))
            else:
                ok = numeric or (same and lt in ("char", "string"))
            if not ok:
                self.error(f"cannot compare {lt} {e.op} {rt}", e)
            return "bool"
        if isinstance(e, Binary):
            lt = self.type_expr(e.lhs, scope)
            rt = self.type_expr(e.rhs, scope)
            if e.op in ("&&", "||", "^"):
                if lt != "bool" or rt != "bool":
                    self.error(f"{e.op} expects bools, got {lt} and {rt}", e)
                return "bool"
            if e.op == "+" and lt in ("string", "char") and rt in ("string", "char"):
                return "string"
            if e.op == "%":
                if lt == "int" and rt == "int":
                    return "int"
                self.error("% expects ints", e)
            if lt == rt and lt in NUMERIC_TYPES:
                return lt
            self.error(f"cannot apply {e.op} to {lt} and {rt}", e)
        raise AssertionError(f"unhandled expression {e!r}")


def parse_program(source: str) -> Program:
    program = _Parser(tokenize(source)).parse_program()
    _Resolver(program).resolve()
    assign_node_ids(program)
    return program


def resolve_program(program: Program) -> Program:
    """Re-run resolution on a transformed AST (lowering, patching)."""
    _Resolver(program).resolve()
    assign_node_ids(program)
    return program
