"""Nested-radical expressions in prefix notation, with branch enumeration.

Grammar (whitespace separated, ``;`` starts a comment running to end of line)::

    expr  := INT | INT/INT | NAME
           | (add expr expr ...)  | (mul expr expr ...)
           | (sub expr expr)      | (sub expr)          ; unary minus
           | (neg expr)           | (div expr expr)
           | (pow expr INT)
           | (sqrt expr) | (cbrt expr) | (root expr INT)
           | (let NAME expr expr)  ; bind NAME inside the body

Every ``sqrt``/``cbrt``/``root`` node is a root node with a stable integer id
(creation order while parsing; inner roots get smaller ids). A name bound by
``let`` refers to one shared node, so a repeated radical contributes a single
branch choice.

Branch semantics: branch ``j`` multiplies the base root by exp(2 pi i j/n).
The base root is the principal complex root (argument in (-pi, pi], so a
negative real has argument +pi), except that an odd root of a negative real
is the real negative root.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from ..errors import DomainError, EvaluationError
from ..precision import PrecisionContext, real

MAX_ROOT_NODES = 8

BranchAssignment = dict[int, int]


@dataclass(frozen=True, eq=False)
class Num:
    value: Fraction


@dataclass(frozen=True, eq=False)
class Op:
    kind: str
    args: tuple


@dataclass(frozen=True, eq=False)
class Root:
    arg: "Node"
    n: int
    ident: int


Node = Union[Num, Op, Root]


@dataclass(frozen=True)
class RadicalExpr:
    root: Node
    roots: tuple[Root, ...] = field(default=())

    @property
    def root_ids(self) -> tuple[int, ...]:
        return tuple(r.ident for r in self.roots)

    def __str__(self) -> str:
        return render(self.root)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_INT = re.compile(r"^[+-]?\d+$")
_RAT = re.compile(r"^[+-]?\d+/\d+$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_NARY = {"add", "mul"}


def _tokenize(text: str) -> list[str]:
    lines = [ln.split(";", 1)[0] for ln in text.splitlines()]
    return _TOKEN.findall(" ".join(lines))


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0
        self.roots: list[Root] = []

    def next(self) -> str:
        if self.pos >= len(self.tokens):
            raise DomainError("unexpected end of radical expression")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def int_literal(self) -> int:
        tok = self.next()
        if not _INT.match(tok):
            raise DomainError(f"expected integer, got {tok!r}")
        return int(tok)

    def expr(self, env: dict[str, Node]) -> Node:
        tok = self.next()
        if tok == ")":
            raise DomainError("unexpected ')'")
        if tok != "(":
            if _INT.match(tok) or _RAT.match(tok):
                return Num(Fraction(tok))
            if _NAME.match(tok):
                if tok not in env:
                    raise DomainError(f"unbound name {tok!r}")
                return env[tok]
            raise DomainError(f"bad atom {tok!r}")
        head = self.next()
        if head == "let":
            name = self.next()
            if not _NAME.match(name):
                raise DomainError(f"bad let name {name!r}")
            bound = self.expr(env)
            body = self.expr({**env, name: bound})
            self.close()
            return body
        if head in ("sqrt", "cbrt", "root"):
            arg = self.expr(env)
            n = {"sqrt": 2, "cbrt": 3}.get(head) or self.int_literal()
            if n < 1:
                raise DomainError("root index must be >= 1")
            self.close()
            node = Root(arg, n, len(self.roots))
            self.roots.append(node)
            return node
        if head == "pow":
            base = self.expr(env)
            k = self.int_literal()
            self.close()
            return Op("pow", (base, k))
        args = []
        while self.peek() != ")":
            args.append(self.expr(env))
        self.close()
        if head in _NARY and args:
            return Op(head, tuple(args))
        if head == "sub" and len(args) in (1, 2):
            return Op("neg", tuple(args)) if len(args) == 1 else Op("sub", tuple(args))
        if head == "neg" and len(args) == 1:
            return Op("neg", tuple(args))
        if head == "div" and len(args) == 2:
            return Op("div", tuple(args))
        raise DomainError(f"bad form ({head} ...) with {len(args)} arguments")

    def peek(self) -> str:
        if self.pos >= len(self.tokens):
            raise DomainError("unbalanced parentheses")
        return self.tokens[self.pos]

    def close(self) -> None:
        if self.next() != ")":
            raise DomainError("expected ')'")


def parse_radical(text: str) -> RadicalExpr:
    parser = _Parser(_tokenize(text))
    node = parser.expr({})
    if parser.pos != len(parser.tokens):
        raise DomainError("trailing tokens after radical expression")
    if len(parser.roots) > MAX_ROOT_NODES:
        raise DomainError(f"more than {MAX_ROOT_NODES} root nodes")
    return RadicalExpr(node, tuple(parser.roots))


def render(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Root):
        inner = render(node.arg)
        if node.n == 2:
            return f"(sqrt {inner})"
        if node.n == 3:
            return f"(cbrt {inner})"
        return f"(root {inner} {node.n})"
    if node.kind == "pow":
        return f"(pow {render(node.args[0])} {node.args[1]})"
    return "(" + " ".join([node.kind, *(render(a) for a in node.args)]) + ")"


def _is_negative_real(v: mpc, eps: mpfr) -> bool:
    return v.real < 0 and abs(v.imag) <= eps * abs(v.real)


def _root(v: mpc, n: int, branch: int, eps: mpfr) -> mpc:
    negative_real = _is_negative_real(v, eps)
    if negative_real:
        # arg in (-pi, pi]: a signed-zero imaginary part must not flip the cut
        v = mpc(v.real, 0)
    if n == 1:
        base = v
    elif n % 2 == 1 and negative_real:
        base = mpc(-gmpy2.rootn(-v.real, n), 0)
    elif n == 2:
        base = gmpy2.sqrt(v)
    elif v == 0:
        base = mpc(0)
    else:
        mod = gmpy2.rootn(abs(v), n)
        theta = gmpy2.phase(v) / n
        base = mpc(mod * gmpy2.cos(theta), mod * gmpy2.sin(theta))
    if branch % n:
        base *= gmpy2.root_of_unity(n, branch % n)
    return base


def radical_eval(expr: RadicalExpr, branches: BranchAssignment | None, ctx: PrecisionContext) -> mpc:
    """Evaluate bottom-up in complex arithmetic under the given branch choice."""
    branches = branches or {}
    memo: dict[int, mpc] = {}
    with ctx.local():
        eps = mpfr(2) ** (8 - ctx.bits)
        tiny = mpfr(10) ** -ctx.digits

        def ev(node: Node) -> mpc:
            key = id(node)
            if key in memo:
                return memo[key]
            if isinstance(node, Num):
                out = mpc(mpfr(mpq(node.value.numerator, node.value.denominator)))
            elif isinstance(node, Root):
                out = _root(ev(node.arg), node.n, branches.get(node.ident, 0), eps)
            else:
                kind, args = node.kind, node.args
                if kind == "pow":
                    base, k = ev(args[0]), args[1]
                    if k < 0 and abs(base) < tiny:
                        raise EvaluationError(f"near-zero base in {render(node)}")
                    out = base**k
                elif kind == "neg":
                    out = -ev(args[0])
                elif kind == "add":
                    out = sum((ev(a) for a in args), mpc(0))
                elif kind == "sub":
                    out = ev(args[0]) - ev(args[1])
                elif kind == "mul":
                    out = mpc(1)
                    for a in args:
                        out *= ev(a)
                elif kind == "div":
                    den = ev(args[1])
                    if abs(den) < tiny:
                        raise EvaluationError(f"near-zero divisor {render(args[1])}")
                    out = ev(args[0]) / den
                else:  # pragma: no cover - parser never builds other kinds
                    raise DomainError(f"unknown node kind {kind}")
            memo[key] = out
            return out

        return ev(expr.root)


def branch_search(expr: RadicalExpr, target, ctx: PrecisionContext) -> BranchAssignment | None:
    """First assignment (lexicographic over root ids) whose value is real and equals ``target``."""
    if len(expr.roots) > MAX_ROOT_NODES:
        raise DomainError(f"more than {MAX_ROOT_NODES} root nodes")
    ids = expr.root_ids
    with ctx.local():
        target = real(target, ctx)
        tol = ctx.tolerance()
        imag_tol = mpfr(10) ** -(ctx.digits // 2)
        for combo in itertools.product(*(range(r.n) for r in expr.roots)):
            assignment = dict(zip(ids, combo))
            try:
                v = radical_eval(expr, assignment, ctx)
            except EvaluationError:
                continue
            if abs(v.imag) < imag_tol and abs(v.real - target) < tol:
                return assignment
    return None
