"""Specification language: AST, parser and pretty printer.

Concrete syntax::

    env|sys (boolean|Int(lo..hi)) name;
    asm|gar [ini|alw|alwEv] expr;
    asm|gar respondsTo(p, q);
    monitor (boolean|Int(lo..hi)) name { ini expr; alw expr; }

Expressions use ``! & | -> <->``, comparisons ``= != < <= > >=``,
``+``/``-`` with a constant operand, and ``next(...)`` for primed values.
``//`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union


class SpecError(Exception):
    """Base class for all errors raised while reading a specification."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if column else (f"{line}: " if line else "")
        super().__init__(where + message)


class SpecSyntaxError(SpecError):
    pass


class SpecTypeError(SpecError):
    pass


class PrimeError(SpecError):
    """A ``next(...)`` appears where the assertion kind forbids it."""


class DuplicateVariableError(SpecError):
    pass


class EmptySpecError(SpecError):
    pass


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Domain:
    """Finite variable domain: boolean, or the inclusive integer range lo..hi."""

    kind: str  # "boolean" | "int"
    lo: int = 0
    hi: int = 1

    @property
    def values(self) -> tuple:
        if self.kind == "boolean":
            return (False, True)
        return tuple(range(self.lo, self.hi + 1))

    @property
    def size(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return "boolean" if self.kind == "boolean" else f"Int({self.lo}..{self.hi})"


BOOLEAN = Domain("boolean")


@dataclass(frozen=True)
class VarDecl:
    name: str
    owner: str  # "env" | "sys" | "aux"
    domain: Domain
    # aux variables belong to one player; only meaningful when owner == "aux"
    env_side: bool = False
    line: int = field(default=0, compare=False)

    @property
    def is_env(self) -> bool:
        return self.owner == "env" or (self.owner == "aux" and self.env_side)


@dataclass(frozen=True)
class Const:
    value: Union[bool, int]


@dataclass(frozen=True)
class Var:
    name: str
    primed: bool = False


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # & | -> <-> = != < <= > >= + -
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, Not, BinOp]

LOGIC_OPS = ("&", "|", "->", "<->")
COMPARE_OPS = ("=", "!=", "<", "<=", ">", ">=")
ARITH_OPS = ("+", "-")


@dataclass(frozen=True, order=True)
class ElementId:
    """Identity of one specification element.

    Ordering and equality use only the parse-order ordinal; the remaining
    fields are descriptive tags.
    """

    ordinal: int
    kind: str = field(default="", compare=False)  # ini | alw | alwEv | pattern
    line: int = field(default=0, compare=False)
    side: str = field(default="", compare=False)  # assumption | guarantee
    origin: str = field(default="declared", compare=False)

    def __repr__(self) -> str:
        return f"E{self.ordinal}@{self.line}"


@dataclass(frozen=True)
class ElementDecl:
    id: ElementId
    side: str
    kind: str
    expr: Expr
    text: str = field(default="", compare=False)

    @property
    def source_line(self) -> int:
        return self.id.line


@dataclass(frozen=True)
class MonitorDecl:
    var: VarDecl
    assertions: tuple  # of ElementDecl, side "guarantee", kind ini|alw


@dataclass(frozen=True)
class PatternDecl:
    id: ElementId
    side: str
    kind: str  # "respondsTo"
    trigger: Expr
    response: Expr
    text: str = field(default="", compare=False)

    @property
    def source_line(self) -> int:
        return self.id.line


Item = Union[VarDecl, ElementDecl, MonitorDecl, PatternDecl]


@dataclass(frozen=True)
class SpecAst:
    items: tuple  # declarations in source order

    @property
    def variables(self) -> tuple:
        """Declared env/sys variables (monitor variables live in ``monitors``)."""
        return tuple(i for i in self.items if isinstance(i, VarDecl))

    @property
    def monitors(self) -> tuple:
        return tuple(i for i in self.items if isinstance(i, MonitorDecl))

    @property
    def patterns(self) -> tuple:
        return tuple(i for i in self.items if isinstance(i, PatternDecl))

    @property
    def elements(self) -> tuple:
        """Every ID-bearing declaration, in ID order."""
        out = []
        for item in self.items:
            if isinstance(item, (ElementDecl, PatternDecl)):
                out.append(item)
            elif isinstance(item, MonitorDecl):
                out.extend(item.assertions)
        return tuple(out)

    @property
    def assumptions(self) -> tuple:
        return tuple(e for e in self.elements if e.side == "assumption")

    @property
    def guarantees(self) -> tuple:
        return tuple(e for e in self.elements if e.side == "guarantee")


# --------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><->|->|!=|<=|>=|\.\.|[=<>!&|+\-(){};,])
    """,
    re.VERBOSE,
)

KEYWORDS = {
    "env", "sys", "boolean", "Int", "asm", "gar", "ini", "alw", "alwEv",
    "monitor", "respondsTo", "next", "true", "false",
}


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | kw | op | eof
    text: str
    line: int
    col: int
    pos: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident" and chunk in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line, pos - line_start + 1, pos))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, pos))
    return tokens


# --------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.ordinal = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "op") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.describe(self.tok)}")
        return self.advance()

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.tok
        raise SpecSyntaxError(msg, tok.line, tok.col)

    @staticmethod
    def describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.error(f"expected identifier, found {self.describe(self.tok)}")
        return self.advance()

    def next_id(self, kind, line, side, origin) -> ElementId:
        eid = ElementId(self.ordinal, kind, line, side, origin)
        self.ordinal += 1
        return eid

    def source(self, start: Token) -> str:
        end = self.tokens[self.i - 1]
        return self.text[start.pos : end.pos + len(end.text)]

    # grammar
    def spec(self) -> SpecAst:
        items = []
        while self.tok.kind != "eof":
            items.append(self.item())
        return SpecAst(tuple(items))

    def item(self) -> Item:
        t = self.tok
        if self.at("env") or self.at("sys"):
            owner = self.advance().text
            dom = self.domain()
            name = self.ident()
            self.expect(";")
            return VarDecl(name.text, owner, dom, line=t.line)
        if self.at("asm") or self.at("gar"):
            side = "assumption" if self.advance().text == "asm" else "guarantee"
            if self.at("respondsTo"):
                return self.pattern(t, side)
            kind = "ini"
            for k in ("ini", "alw", "alwEv"):
                if self.accept(k):
                    kind = k
                    break
            expr = self.expr()
            self.expect(";")
            eid = self.next_id(kind, t.line, side, "declared")
            return ElementDecl(eid, side, kind, expr, self.source(t))
        if self.at("monitor"):
            return self.monitor()
        self.error(f"expected a declaration, found {self.describe(t)}")

    def domain(self) -> Domain:
        if self.accept("boolean"):
            return BOOLEAN
        if self.at("Int"):
            t = self.advance()
            self.expect("(")
            lo = self.signed_int()
            self.expect("..")
            hi = self.signed_int()
            self.expect(")")
            if lo > hi:
                raise SpecTypeError(f"empty range Int({lo}..{hi})", t.line, t.col)
            return Domain("int", lo, hi)
        self.error(f"expected 'boolean' or 'Int', found {self.describe(self.tok)}")

    def signed_int(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "num":
            self.error(f"expected integer, found {self.describe(self.tok)}")
        v = int(self.advance().text)
        return -v if neg else v

    def pattern(self, start: Token, side: str) -> PatternDecl:
        self.expect("respondsTo")
        self.expect("(")
        p = self.expr()
        self.expect(",")
        q = self.expr()
        self.expect(")")
        self.expect(";")
        eid = self.next_id("pattern", start.line, side, "pattern")
        return PatternDecl(eid, side, "respondsTo", p, q, self.source(start))

    def monitor(self) -> MonitorDecl:
        start = self.expect("monitor")
        dom = self.domain()
        name = self.ident()
        self.expect("{")
        var = VarDecl(name.text, "aux", dom, line=start.line)
        assertions = []
        while not self.accept("}"):
            t = self.tok
            if self.accept("ini"):
                kind = "ini"
            elif self.accept("alw"):
                kind = "alw"
            else:
                self.error(f"expected 'ini', 'alw' or '}}', found {self.describe(t)}")
            expr = self.expr()
            self.expect(";")
            eid = self.next_id(kind, t.line, "guarantee", "monitor-internal")
            assertions.append(ElementDecl(eid, "guarantee", kind, expr, self.source(t)))
        return MonitorDecl(var, tuple(assertions))

    # expressions, loosest binding first
    def expr(self) -> Expr:
        return self.iff()

    def iff(self) -> Expr:
        left = self.implies()
        while self.accept("<->"):
            left = BinOp("<->", left, self.implies())
        return left

    def implies(self) -> Expr:
        left = self.disj()
        if self.accept("->"):
            return BinOp("->", left, self.implies())
        return left

    def disj(self) -> Expr:
        left = self.conj()
        while self.accept("|"):
            left = BinOp("|", left, self.conj())
        return left

    def conj(self) -> Expr:
        left = self.comparison()
        while self.accept("&"):
            left = BinOp("&", left, self.comparison())
        return left

    def comparison(self) -> Expr:
        left = self.additive()
        for op in COMPARE_OPS:
            if self.at(op):
                self.advance()
                return BinOp(op, left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.unary()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.accept("!"):
            return Not(self.unary())
        if self.at("-"):
            t = self.advance()
            if self.tok.kind != "num":
                self.error("unary minus applies to integer literals only", t)
            return Const(-int(self.advance().text))
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Const(int(t.text))
        if self.accept("true"):
            return Const(True)
        if self.accept("false"):
            return Const(False)
        if self.accept("next"):
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if any(v.primed for v in variables(inner)):
                raise PrimeError("nested next(...)", t.line, t.col)
            return prime(inner)
        if t.kind == "ident":
            self.advance()
            return Var(t.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.error(f"expected an expression, found {self.describe(t)}")


def prime(expr: Expr) -> Expr:
    """Return ``expr`` with every variable reference read from the successor."""
    if isinstance(expr, Var):
        return Var(expr.name, True)
    if isinstance(expr, Not):
        return Not(prime(expr.operand))
    if isinstance(expr, BinOp):
        return BinOp(expr.op, prime(expr.left), prime(expr.right))
    return expr


def variables(expr: Expr) -> Iterator[Var]:
    if isinstance(expr, Var):
        yield expr
    elif isinstance(expr, Not):
        yield from variables(expr.operand)
    elif isinstance(expr, BinOp):
        yield from variables(expr.left)
        yield from variables(expr.right)


# --------------------------------------------------------------------------
# Type checking


def _type_of(expr: Expr, types: dict, line: int) -> str:
    if isinstance(expr, Const):
        return "bool" if isinstance(expr.value, bool) else "int"
    if isinstance(expr, Var):
        if expr.name not in types:
            raise SpecTypeError(f"undeclared variable {expr.name!r}", line)
        return types[expr.name]
    if isinstance(expr, Not):
        if _type_of(expr.operand, types, line) != "bool":
            raise SpecTypeError("'!' applied to an integer", line)
        return "bool"
    lt = _type_of(expr.left, types, line)
    rt = _type_of(expr.right, types, line)
    op = expr.op
    if op in LOGIC_OPS:
        if lt != "bool" or rt != "bool":
            raise SpecTypeError(f"'{op}' needs boolean operands", line)
        return "bool"
    if op in ("=", "!="):
        if lt != rt:
            raise SpecTypeError(f"'{op}' compares {lt} with {rt}", line)
        return "bool"
    if op in COMPARE_OPS:
        if lt != "int" or rt != "int":
            raise SpecTypeError(f"'{op}' needs integer operands", line)
        return "bool"
    # + / -
    if lt != "int" or rt != "int":
        raise SpecTypeError(f"'{op}' needs integer operands", line)
    if not (isinstance(expr.left, Const) or isinstance(expr.right, Const)):
        raise SpecTypeError(f"'{op}' needs a constant operand", line)
    return "int"


def _check_primes(expr, line, allowed_primes, allowed_vars=None, what=""):
    for v in variables(expr):
        if allowed_vars is not None and v.name not in allowed_vars:
            raise SpecTypeError(f"{what} may not mention {v.name!r}", line)
        if v.primed and v.name not in allowed_primes:
            raise PrimeError(f"{what} may not use next({v.name})", line)


def check(spec: SpecAst) -> None:
    """Validate names, types and prime placement; raise SpecError on failure."""
    decls = list(spec.variables) + [m.var for m in spec.monitors]
    types, seen = {}, set()
    for d in decls:
        if d.name in seen:
            raise DuplicateVariableError(f"variable {d.name!r} declared twice", d.line)
        seen.add(d.name)
        types[d.name] = "bool" if d.domain.kind == "boolean" else "int"
    if not spec.elements:
        raise EmptySpecError("specification declares no assumptions or guarantees")

    env_vars = {d.name for d in spec.variables if d.owner == "env"}
    all_vars = set(types)
    for e in spec.elements:
        line = e.source_line
        if isinstance(e, PatternDecl):
            for sub in (e.trigger, e.response):
                if _type_of(sub, types, line) != "bool":
                    raise SpecTypeError("respondsTo needs boolean arguments", line)
                scope = env_vars if e.side == "assumption" else None
                _check_primes(sub, line, set(), scope, f"{e.side} respondsTo")
            continue
        if _type_of(e.expr, types, line) != "bool":
            raise SpecTypeError("assertion is not boolean", line)
        what = f"{e.side} {e.kind}"
        if e.kind in ("ini", "alwEv"):
            scope = env_vars if (e.side == "assumption" and e.kind == "ini") else None
            _check_primes(e.expr, line, set(), scope, what)
        elif e.side == "assumption":
            _check_primes(e.expr, line, env_vars, None, what)
        else:
            _check_primes(e.expr, line, all_vars, None, what)


def parse_spec(text: str) -> SpecAst:
    """Parse and validate specification text."""
    spec = _Parser(text).spec()
    check(spec)
    return spec


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.describe(p.tok)}")
    return e


# --------------------------------------------------------------------------
# Pretty printing


def format_expr(expr: Expr, top: bool = True) -> str:
    if isinstance(expr, Const):
        if isinstance(expr.value, bool):
            return "true" if expr.value else "false"
        return str(expr.value)
    if isinstance(expr, Var):
        return f"next({expr.name})" if expr.primed else expr.name
    if isinstance(expr, Not):
        return "!" + format_expr(expr.operand, top=False)
    s = f"{format_expr(expr.left, False)} {expr.op} {format_expr(expr.right, False)}"
    return s if top else f"({s})"


def format_spec(spec: SpecAst) -> str:
    lines = []
    for item in spec.items:
        if isinstance(item, VarDecl):
            lines.append(f"{item.owner} {item.domain} {item.name};")
        elif isinstance(item, ElementDecl):
            kw = "asm" if item.side == "assumption" else "gar"
            lines.append(f"{kw} {item.kind} {format_expr(item.expr)};")
        elif isinstance(item, PatternDecl):
            kw = "asm" if item.side == "assumption" else "gar"
            p, q = format_expr(item.trigger), format_expr(item.response)
            lines.append(f"{kw} respondsTo({p}, {q});")
        else:
            lines.append(f"monitor {item.var.domain} {item.var.name} {{")
            for a in item.assertions:
                lines.append(f"  {a.kind} {format_expr(a.expr)};")
            lines.append("}")
    return "\n".join(lines) + "\n"
