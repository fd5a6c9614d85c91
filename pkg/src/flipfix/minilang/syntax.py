"""AST node classes for MiniImp.

Nodes are dataclasses whose equality covers semantic fields only; source
spans, node ids, inferred types, and site ids are metadata (compare=False)
so re-parsed programs compare structurally equal.  Types are plain strings:
"int", "float", "bool", "char", "string", element type + "[]" for arrays,
and "void" for function returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Span = tuple[int, int]

SCALAR_TYPES = ("int", "float", "bool", "char", "string")
NUMERIC_TYPES = ("int", "float")

COMPARE_OPS = ("==", "!=", "<", "<=", ">", ">=")
BOOL_OPS = ("&&", "||", "^")
ARITH_OPS = ("+", "-", "*", "/", "%")

# Negation of a comparison operator, used by !-normalization and by the
# false-branch edges of decision-tree paths.
NEGATED_OP = {"==": "!=", "!=": "==", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}


def is_array_type(ty: str) -> bool:
    return ty.endswith("[]")


def element_type(ty: str) -> str:
    return ty[:-2]


@dataclass
class Node:
    span: Span = field(default=(0, 0), compare=False, kw_only=True, repr=False)
    nid: int = field(default=-1, compare=False, kw_only=True, repr=False)


@dataclass
class Expr(Node):
    ty: Optional[str] = field(default=None, compare=False, kw_only=True, repr=False)


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class FloatLit(Expr):
    value: float


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class CharLit(Expr):
    value: str


@dataclass
class StringLit(Expr):
    value: str


@dataclass
class ArrayLit(Expr):
    elements: list[Expr]


@dataclass
class VarRef(Expr):
    name: str
    # "local" (covers formals) or "global", set by the resolver.
    binding: Optional[str] = field(default=None, compare=False, kw_only=True, repr=False)


@dataclass
class Index(Expr):
    base: Expr
    index: Expr


@dataclass
class Call(Expr):
    name: str
    args: list[Expr]


@dataclass
class Unary(Expr):
    op: str  # "-" or "!"
    operand: Expr


@dataclass
class Binary(Expr):
    op: str  # arithmetic or boolean connective; comparisons use Compare
    lhs: Expr
    rhs: Expr


@dataclass
class Compare(Expr):
    op: str  # one of COMPARE_OPS
    lhs: Expr
    rhs: Expr
    site_id: Optional[int] = field(default=None, compare=False, kw_only=True, repr=False)


@dataclass
class Stmt(Node):
    pass


@dataclass
class Block(Node):
    stmts: list[Stmt]


@dataclass
class VarDecl(Stmt):
    ty: str
    name: str
    init: Optional[Expr]


@dataclass
class Assign(Stmt):
    target: Expr  # VarRef or Index
    value: Expr


@dataclass
class If(Stmt):
    cond: Expr
    then: Block
    orelse: Optional[Block]


@dataclass
class While(Stmt):
    cond: Expr
    body: Block


@dataclass
class Return(Stmt):
    value: Optional[Expr]


@dataclass
class Print(Stmt):
    value: Expr


@dataclass
class Param(Node):
    ty: str
    name: str


@dataclass
class FuncDecl(Node):
    ret_ty: str
    name: str
    params: list[Param]
    body: Block


@dataclass
class GlobalDecl(Node):
    ty: str
    name: str
    init: Expr  # literal expression, required


@dataclass
class Program(Node):
    globals: list[GlobalDecl]
    functions: list[FuncDecl]

    def function(self, name: str) -> FuncDecl:
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def main(self) -> FuncDecl:
        return self.function("main")


def child_nodes(node: Node) -> list[Node]:
    """Direct child nodes in deterministic (source) order."""
    if isinstance(node, Program):
        return [*node.globals, *node.functions]
    if isinstance(node, GlobalDecl):
        return [node.init]
    if isinstance(node, FuncDecl):
        return [*node.params, node.body]
    if isinstance(node, Block):
        return list(node.stmts)
    if isinstance(node, VarDecl):
        return [node.init] if node.init is not None else []
    if isinstance(node, Assign):
        return [node.target, node.value]
    if isinstance(node, If):
        out: list[Node] = [node.cond, node.then]
        if node.orelse is not None:
            out.append(node.orelse)
        return out
    if isinstance(node, While):
        return [node.cond, node.body]
    if isinstance(node, Return):
        return [node.value] if node.value is not None else []
    if isinstance(node, Print):
        return [node.value]
    if isinstance(node, ArrayLit):
        return list(node.elements)
    if isinstance(node, Index):
        return [node.base, node.index]
    if isinstance(node, Call):
        return list(node.args)
    if isinstance(node, Unary):
        return [node.operand]
    if isinstance(node, (Binary, Compare)):
        return [node.lhs, node.rhs]
    return []


def walk(node: Node):
    """Yield node and all descendants, depth-first, source order."""
    yield node
    for child in child_nodes(node):
        yield from walk(child)


def assign_node_ids(program: Program) -> None:
    """Number every node in depth-first source order. Deterministic, so a
    node keeps its id across parses of the same text."""
    for i, node in enumerate(walk(program)):
        node.nid = i


def find_node(program: Program, nid: int) -> Node:
    for node in walk(program):
        if node.nid == nid:
            return node
    raise KeyError(f"no node with id {nid}")
