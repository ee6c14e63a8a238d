"""Lowering to pure GR(1) with element traceability, and ID-subset projection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .syntax import (
    BOOLEAN,
    BinOp,
    ElementDecl,
    ElementId,
    Expr,
    Not,
    PatternDecl,
    SpecAst,
    Var,
    VarDecl,
    prime,
    variables,
)

KIND_TO_SLOT = {"ini": "ini", "alw": "safety", "alwEv": "justice"}


@dataclass(frozen=True)
class Assertion:
    """One pure GR(1) assertion, traced to the element that induced it."""

    element: ElementId
    player: str  # env | sys
    kind: str  # ini | alw | alwEv
    expr: Expr
    index: int  # unique within a problem

    @property
    def names(self) -> frozenset:
        return frozenset(v.name for v in variables(self.expr))


@dataclass(frozen=True)
class Module:
    ini: tuple = ()
    safety: tuple = ()
    justice: tuple = ()

    def __iter__(self):
        yield from self.ini
        yield from self.safety
        yield from self.justice


@dataclass(frozen=True)
class GameModules:
    variables: tuple  # VarDecl, env side first, in declaration order
    env: Module
    sys: Module

    @property
    def env_vars(self) -> tuple:
        return tuple(v for v in self.variables if v.is_env)

    @property
    def sys_vars(self) -> tuple:
        return tuple(v for v in self.variables if not v.is_env)


def _module(assertions: Iterable[Assertion]) -> Module:
    slots = {"ini": [], "safety": [], "justice": []}
    for a in assertions:
        slots[KIND_TO_SLOT[a.kind]].append(a)
    return Module(tuple(slots["ini"]), tuple(slots["safety"]), tuple(slots["justice"]))


class UnknownElementError(KeyError):
    pass


@dataclass(frozen=True)
class Gr1Problem:
    spec: SpecAst
    variables: tuple  # all VarDecls incl. aux
    assertions: tuple  # all reduced Assertions, index order
    traces: Mapping  # ElementId -> tuple[Assertion]
    aux_vars: Mapping  # ElementId -> tuple[str] of aux variables it induced
    decls: Mapping  # ElementId -> ElementDecl | PatternDecl

    @property
    def assumption_ids(self) -> frozenset:
        return frozenset(i for i in self.traces if i.side == "assumption")

    @property
    def guarantee_ids(self) -> frozenset:
        """The universe minimized by the core algorithms."""
        return frozenset(i for i in self.traces if i.side == "guarantee")

    @property
    def ids(self) -> tuple:
        return tuple(sorted(self.traces))

    @property
    def env(self) -> Module:
        return _module(a for a in self.assertions if a.player == "env")

    @property
    def sys(self) -> Module:
        return _module(a for a in self.assertions if a.player == "sys")

    def element(self, ordinal: int) -> ElementId:
        for i in self.traces:
            if i.ordinal == ordinal:
                return i
        raise UnknownElementError(ordinal)

    def ids_at_lines(self, lines: Iterable[int]) -> frozenset:
        wanted = set(lines)
        found = frozenset(i for i in self.traces if i.line in wanted)
        missing = wanted - {i.line for i in found}
        if missing:
            raise UnknownElementError(f"no element at line(s) {sorted(missing)}")
        return found

    def project(self, asm_ids: Iterable[ElementId], gar_ids: Iterable[ElementId]) -> GameModules:
        """Modules holding exactly the assertions traced to the given IDs.

        Aux variables survive only while some kept assertion mentions them.
        """
        asm_ids, gar_ids = frozenset(asm_ids), frozenset(gar_ids)
        for i in asm_ids:
            if i not in self.traces or i.side != "assumption":
                raise UnknownElementError(f"unknown assumption id {i!r}")
        for i in gar_ids:
            if i not in self.traces or i.side != "guarantee":
                raise UnknownElementError(f"unknown guarantee id {i!r}")
        chosen = asm_ids | gar_ids
        kept = [a for a in self.assertions if a.element in chosen]
        mentioned = set().union(*(a.names for a in kept)) if kept else set()
        vs = [v for v in self.variables if v.owner != "aux" or v.name in mentioned]
        vs.sort(key=lambda v: not v.is_env)
        return GameModules(
            tuple(vs),
            _module(a for a in kept if a.player == "env"),
            _module(a for a in kept if a.player == "sys"),
        )


def _pending_name(taken: set, eid: ElementId) -> str:
    # '$' cannot appear in source identifiers, so this never clashes
    name = f"$pend{eid.ordinal}"
    assert name not in taken
    return name


def response_encoding(pend: str, p: Expr, q: Expr) -> tuple:
    """ini/safety/justice triple encoding G(p -> F q) with one pending bit.

    ``pend`` holds iff some p is still waiting for a q (a q at the same step
    discharges it).
    """
    pv = Var(pend)
    ini = BinOp("=", pv, BinOp("&", p, Not(q)))
    step = BinOp(
        "=",
        Var(pend, True),
        BinOp("&", BinOp("|", prime(p), pv), Not(prime(q))),
    )
    return ini, step, Not(pv)


def reduce(spec: SpecAst) -> Gr1Problem:
    """Reduce monitors and patterns to aux variables plus pure GR(1) assertions."""
    variables_ = list(spec.variables)
    taken = {v.name for v in variables_}
    assertions: list = []
    traces: dict = {}
    aux: dict = {}
    decls: dict = {}

    def add(eid, player, kind, expr):
        a = Assertion(eid, player, kind, expr, len(assertions))
        assertions.append(a)
        traces[eid] = traces.get(eid, ()) + (a,)

    for item in spec.items:
        if isinstance(item, VarDecl):
            continue
        if isinstance(item, ElementDecl):
            player = "env" if item.side == "assumption" else "sys"
            add(item.id, player, item.kind, item.expr)
            aux[item.id] = ()
            decls[item.id] = item
        elif isinstance(item, PatternDecl):
            env_side = item.side == "assumption"
            name = _pending_name(taken, item.id)
            taken.add(name)
            variables_.append(VarDecl(name, "aux", BOOLEAN, env_side=env_side))
            player = "env" if env_side else "sys"
            ini, step, just = response_encoding(name, item.trigger, item.response)
            add(item.id, player, "ini", ini)
            add(item.id, player, "alw", step)
            add(item.id, player, "alwEv", just)
            aux[item.id] = (name,)
            decls[item.id] = item
        else:
            variables_.append(item.var)
            for a in item.assertions:
                add(a.id, "sys", a.kind, a.expr)
                aux[a.id] = (item.var.name,)
                decls[a.id] = a
    return Gr1Problem(spec, tuple(variables_), tuple(assertions), traces, aux, decls)
