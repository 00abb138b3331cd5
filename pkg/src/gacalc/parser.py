"""Expression language for the command line.

Grammar (highest binding first)::

    expr    := product (("+" | "-") product)*
    product := unary (("*" | "|" | "^") unary)*        # one level, left-assoc
    unary   := ("-" | "~") unary | primary
    primary := NUMBER | NAME | NAME "(" [expr ("," expr)*] ")" | "(" expr ")"

``*`` is the geometric, ``|`` the inner and ``^`` the outer product.  All
three share a level, so ``a*b^c`` is ``(a*b)^c``.  There is no division
operator; use ``inv(x)`` or ``pow(x, -1)``.  Numbers have no exponent
notation, so ``3e1`` is a syntax error rather than thirty.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import get_algebra
from .analytic import FUNCTIONS
from .errors import GAError
from .models import CgaModel, PgaModel, hodge_dual
from .multivector import Multivector
from .scalars import DOMAINS, FLOAT, RATFUN, RationalFunction, ScalarDomain


class ParseError(GAError):
    """Malformed expression; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class EvalError(GAError):
    """Evaluation failure tied to the source span ``[start, end)`` (1-based columns)."""

    def __init__(self, message: str, start: int, end: int, cause: Exception | None = None):
        super().__init__(f"{message} (columns {start}-{end - 1})")
        self.start, self.end, self.cause = start, end, cause


# -- tokens ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str   # "num", "name", "op", "(", ")", ","
    text: str
    column: int


_OPS = set("+-*|^~/")
_NUM = re.compile(r"\d+(\.\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit() or ch == ".":
            m = _NUM.match(text, i)
            if not m:
                raise ParseError("malformed number", col)
            end = m.end()
            if end < len(text) and text[end] == ".":
                # "2." or "2..5": the dot must be followed by digits
                raise ParseError("malformed number", end + 1)
            tokens.append(Token("num", m.group(0), col))
            i = end
            continue
        if ch.isalpha() or ch == "_":
            m = _NAME.match(text, i)
            tokens.append(Token("name", m.group(0), col))
            i = m.end()
            continue
        if ch in _OPS:
            tokens.append(Token("op", ch, col))
        elif ch in "(),":
            tokens.append(Token(ch, ch, col))
        else:
            raise ParseError(f"illegal character {ch!r}", col)
        i += 1
    return tokens


# -- syntax tree -------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Num(Node):
    text: str = ""


@dataclass(frozen=True)
class Name(Node):
    name: str = ""


@dataclass(frozen=True)
class Unary(Node):
    op: str = ""
    operand: Node | None = None


@dataclass(frozen=True)
class Binary(Node):
    op: str = ""
    left: Node | None = None
    right: Node | None = None


@dataclass(frozen=True)
class Call(Node):
    func: str = ""
    args: tuple = ()


#: fixed arities; names missing here are the one-argument analytic functions
ARITY = {
    "inv": 1, "rev": 1, "dual": 1, "undual": 1, "hodge": 1, "grade": 2, "pow": 2,
    "norm": 1, "normalize": 1, "clean": 1, "push": 1, "pull": 1, "involute": 1,
    "conj": 1, "complement": 1, "abs": 1,
}
for _f in FUNCTIONS:
    ARITY.setdefault(_f, 1)


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _eof_col(self) -> int:
        return len(self.text) + 1

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._eof_col())
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind!r} before end of input", self._eof_col())
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.column)
        self.i += 1
        return tok

    def parse(self) -> Node:
        if not self.tokens:
            raise ParseError("empty expression", 1)
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            if tok.kind == ")":
                raise ParseError("unbalanced ')'", tok.column)
            raise ParseError(f"unexpected {tok.text!r}", tok.column)
        return node

    def expr(self) -> Node:
        node = self.product()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "+-":
            self.i += 1
            right = self.product()
            node = Binary(node.start, right.end, tok.text, node, right)
        return node

    def product(self) -> Node:
        node = self.unary()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "*|^/":
            if tok.text == "/":
                raise ParseError("division operator not defined; use inv()", tok.column)
            self.i += 1
            right = self.unary()
            node = Binary(node.start, right.end, tok.text, node, right)
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in "-~":
            self.i += 1
            operand = self.unary()
            return Unary(tok.column, operand.end, tok.text, operand)
        return self.primary()

    def primary(self) -> Node:
        tok = self.advance()
        end = tok.column + len(tok.text)
        if tok.kind == "num":
            return Num(tok.column, end, tok.text)
        if tok.kind == "name":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "(":
                return self.call(tok)
            return Name(tok.column, end, tok.text)
        if tok.kind == "(":
            node = self.expr()
            close = self.peek()
            if close is None or close.kind != ")":
                raise ParseError("unbalanced '('", tok.column)
            self.i += 1
            return node
        if tok.kind == "op" and tok.text == "/":
            raise ParseError("division operator not defined; use inv()", tok.column)
        raise ParseError(f"unexpected {tok.text!r}", tok.column)

    def call(self, name: Token) -> Node:
        if name.text not in ARITY:
            raise ParseError(f"unknown function {name.text!r}", name.column)
        open_tok = self.expect("(")
        args = []
        if (tok := self.peek()) is not None and tok.kind == ")":
            self.i += 1
        else:
            while True:
                args.append(self.expr())
                tok = self.peek()
                if tok is None:
                    raise ParseError("unbalanced '('", open_tok.column)
                self.i += 1
                if tok.kind == ")":
                    break
                if tok.kind != ",":
                    raise ParseError(f"expected ',' or ')', found {tok.text!r}", tok.column)
        want = ARITY[name.text]
        if len(args) != want:
            raise ParseError(f"{name.text}() takes {want} argument(s), got {len(args)}", name.column)
        end = self.tokens[self.i - 1].column + 1
        return Call(name.column, end, name.text, tuple(args))


def parse(text: str) -> Node:
    return Parser(text).parse()


# -- canonical renderer -------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "|": 2, "^": 2}


def render(node: Node) -> str:
    """Canonical text; ``parse(render(t))`` gives back ``t``."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({', '.join(render(a) for a in node.args)})"
    if isinstance(node, Unary):
        inner = render(node.operand)
        if isinstance(node.operand, Binary):
            inner = f"({inner})"
        return f"{node.op}{inner}"
    if isinstance(node, Binary):
        p = _PREC[node.op]
        left = render(node.left)
        right = render(node.right)
        if isinstance(node.left, Binary) and _PREC[node.left.op] < p:
            left = f"({left})"
        if isinstance(node.right, Binary) and _PREC[node.right.op] <= p:
            right = f"({right})"
        sep = " " if p == 1 else ""
        return f"{left}{sep}{node.op}{sep}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation -------------------------------------------------------------------------------

class Session:
    """Algebra (optionally a CGA/PGA model) and scalar domain for evaluation.

    Names resolve to basis blades of the algebra (``e0``, ``e1``, ``e12``...,
    or the null-basis names ``n0``, ``ni``... under CGA), the constant ``pi``,
    the Laplace variable ``s`` in the rational-function domain, and any
    entries of ``symbols``.
    """

    def __init__(self, signature=None, cga: int | None = None, scalars="float",
                 symbols: dict | None = None):
        self.domain: ScalarDomain = DOMAINS[scalars] if isinstance(scalars, str) else scalars
        self.model = None
        if cga is not None:
            self.model = CgaModel(cga)
            self.algebra = self.model.algebra
        else:
            if signature is None:
                raise GAError("a signature or a CGA dimension is required")
            self.algebra = get_algebra(signature)
            sig = self.algebra.signature
            if sig.r == 1 and sig.q == 0:
                self.model = PgaModel(sig.p)
        self.symbols = dict(symbols or {})

    def scalar(self, value) -> Multivector:
        return Multivector.scalar(self.algebra, value, self.model)

    def _coerce(self, mv: Multivector) -> Multivector:
        if self.domain is FLOAT:
            return mv.to_float()
        if self.domain is RATFUN and mv.exact:
            return mv._new(_as_ratfun(mv.coeffs))
        return mv

    def number(self, text: str) -> Multivector:
        value = self.domain.from_decimal_text(text)
        return self._coerce(self.scalar(value if not isinstance(value, float) else value))

    def name(self, name: str) -> Multivector:
        if name in self.symbols:
            return self.symbols[name]
        if name == "pi":
            if self.domain.exact:
                raise GAError("pi is not exact; use --scalars float")
            return self.scalar(math.pi)
        if name == "s" and self.domain is RATFUN:
            return self.scalar(RationalFunction.s())
        if isinstance(self.model, CgaModel):
            if name in self.model.basis_names():
                return self._coerce(self.model.basis_blade(name))
        else:
            names = self.algebra.basis_names
            if name in names:
                return self._coerce(Multivector.blade(self.algebra, names.index(name), 1, self.model))
        raise GAError(f"unknown symbol {name!r} in {self.algebra.signature}")


def _as_ratfun(coeffs):
    from .multivector import objarray
    return objarray([c if isinstance(c, RationalFunction) else RationalFunction.const(c)
                     for c in coeffs])


def _int_arg(mv: Multivector) -> int:
    if any(c != 0 for c in mv.coeffs[1:]):
        raise GAError("expected a scalar integer argument")
    v = mv.coeffs[0]
    if isinstance(v, RationalFunction):
        if not v.is_constant():
            raise GAError("expected a scalar integer argument")
        v = v(0)
    if v != int(v):
        raise GAError(f"expected an integer, got {v}")
    return int(v)


def _cga(session: Session, what: str) -> CgaModel:
    if not isinstance(session.model, CgaModel):
        raise GAError(f"{what}() needs a CGA session (--cga n)")
    return session.model


def _call(session: Session, func: str, args: list) -> Multivector:
    a = args[0]
    if func == "inv":
        return a.inverse()
    if func == "rev":
        return a.reverse()
    if func == "involute":
        return a.involute()
    if func == "conj":
        return a.conjugate()
    if func == "dual":
        return a.dual()
    if func == "undual":
        return a.undual()
    if func == "complement":
        return a.complement()
    if func == "hodge":
        return hodge_dual(a)
    if func == "grade":
        return a.grade(_int_arg(args[1]))
    if func == "pow":
        return a ** _int_arg(args[1])
    if func == "norm":
        return session.scalar(a.norm())
    if func == "normalize":
        return a.normalize()
    if func == "clean":
        return a.clean()
    if func == "abs":
        return abs(a)
    if func == "push":
        return _cga(session, "push").push(a)
    if func == "pull":
        return _cga(session, "pull").pull(a)
    return a.apply(func)


def evaluate(node: Node, session: Session) -> Multivector:
    try:
        return _eval(node, session)
    except EvalError:
        raise
    except (GAError, ZeroDivisionError, ArithmeticError, ValueError, TypeError) as exc:
        raise EvalError(str(exc), node.start, node.end, exc) from exc


def _eval(node: Node, session: Session) -> Multivector:
    if isinstance(node, Num):
        return session.number(node.text)
    if isinstance(node, Name):
        return session.name(node.name)
    if isinstance(node, Unary):
        v = evaluate(node.operand, session)
        return -v if node.op == "-" else v.reverse()
    if isinstance(node, Binary):
        left = evaluate(node.left, session)
        right = evaluate(node.right, session)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "|":
            return left | right
        return left ^ right
    if isinstance(node, Call):
        args = [evaluate(a, session) for a in node.args]
        return _call(session, node.func, args)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str, session: Session) -> Multivector:
    return evaluate(parse(text), session)
