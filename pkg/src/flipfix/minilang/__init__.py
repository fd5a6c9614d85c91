"""MiniImp: parser, AST, predicate lowering, pretty-printer, test format."""

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
    Node,
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
)
from .errors import MiniLangError, ParseError, SemanticError
from .parser import parse_program
from .printer import emit_expr, emit_source
from .lower import PredicateSite, lower_predicates
from .testsuite import TestCase, TestSuite, format_test_line, parse_test_suite

__all__ = [
    "ArrayLit",
    "Assign",
    "Binary",
    "Block",
    "BoolLit",
    "Call",
    "CharLit",
    "Compare",
    "Expr",
    "FloatLit",
    "FuncDecl",
    "GlobalDecl",
    "If",
    "Index",
    "IntLit",
    "MiniLangError",
    "Node",
    "Param",
    "ParseError",
    "PredicateSite",
    "Print",
    "Program",
    "Return",
    "SemanticError",
    "Stmt",
    "StringLit",
    "TestCase",
    "TestSuite",
    "Unary",
    "VarDecl",
    "VarRef",
    "While",
    "emit_expr",
    "emit_source",
    "format_test_line",
    "lower_predicates",
    "parse_program",
    "parse_test_suite",
]
