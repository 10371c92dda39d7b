"""Timed automata built from DENF equations, plus DOT export."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import syntax as S
from .zones import ClockSpace, Federation, fed_from_guard, fed_to_guard

TAU = "τ"


@dataclass(frozen=True)
class Location:
    name: str
    urgent: bool
    invariant: Federation = field(compare=False)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str  # "τ", "!a" or "?a"
    guard: S.Guard = S.TRUE
    resets: tuple[str, ...] = ()

    @property
    def action(self) -> str | None:
        return None if self.label == TAU else self.label[1:]

    @property
    def polarity(self) -> str | None:
        return None if self.label == TAU else self.label[0]


class EncodingError(ValueError):
    pass


@dataclass
class TimedAutomaton:
    clocks: ClockSpace
    locations: dict  # name -> Location
    initial: str
    edges: list

    def __post_init__(self):
        if self.initial not in self.locations:
            raise EncodingError(f"initial location {self.initial} missing")
        for e in self.edges:
            if e.source not in self.locations or e.target not in self.locations:
                raise EncodingError(f"dangling edge {e}")

    @property
    def urgent(self) -> frozenset[str]:
        return frozenset(n for n, l in self.locations.items() if l.urgent)

    def invariant(self, name: str) -> Federation:
        return self.locations[name].invariant

    def out_edges(self, name: str) -> list[Edge]:
        return [e for e in self.edges if e.source == name]


def union(automata: Iterable[TimedAutomaton], init: str) -> TimedAutomaton:
    automata = list(automata)
    clocks = automata[0].clocks
    locs: dict = {}
    edges: list = []
    for a in automata:
        for n, l in a.locations.items():
            if n in locs:
                old = locs[n]
                locs[n] = Location(n, old.urgent or l.urgent, old.invariant.intersect(l.invariant))
            else:
                locs[n] = l
        for e in a.edges:
            if e not in edges:
                edges.append(e)
    if init not in locs:
        raise EncodingError(f"initial location {init} not in any component")
    return TimedAutomaton(clocks, locs, init, edges)


def _check_fresh(name: str, a: TimedAutomaton):
    # a same-named idle placeholder (a recursion target) is glued, anything else clashes
    if name in a.locations and a.out_edges(name):
        raise EncodingError(f"location {name} already used")


def idle(name: str, clocks: ClockSpace) -> TimedAutomaton:
    return TimedAutomaton(clocks, {name: Location(name, False, Federation.universe(clocks))}, name, [])


def pfx(name: str, label: str, resets: Iterable[str], a: TimedAutomaton) -> TimedAutomaton:
    _check_fresh(name, a)
    loc = Location(name, True, Federation.universe(a.clocks))
    head = TimedAutomaton(a.clocks, {name: loc}, name, [])
    edge = Edge(name, a.initial, label, S.TRUE, tuple(sorted(resets)))
    out = union([head, a], name)
    out.edges.append(edge)
    return out


def br(name: str, inv: Federation, branches) -> TimedAutomaton:
    """``branches``: iterable of ``(label, guard, resets, automaton)``."""
    branches = list(branches)
    clocks = inv.clocks
    head = TimedAutomaton(clocks, {name: Location(name, False, inv)}, name, [])
    parts = [head]
    new_edges = []
    for label, g, rs, a in branches:
        _check_fresh(name, a)
        parts.append(a)
        new_edges.append(Edge(name, a.initial, label, g, tuple(sorted(rs))))
    out = union(parts, name)
    out.edges.extend(new_edges)
    return out


def tau_name(x: str) -> str:
    return TAU + x


def committed_name(x: str, b: S.DBranch) -> str:
    return f"{x}!{b.action}"


def encode(d: S.Denf, clocks: ClockSpace | None = None) -> TimedAutomaton:
    if clocks is None:
        names = set()
        for body in d.equations.values():
            for b in body.branches:
                names |= S.guard_clocks(b.guard) | set(b.resets)
        clocks = ClockSpace.of(names)
    parts = []
    for x, body in d.equations.items():
        if body.kind == "1":
            parts.append(idle(x, clocks))
        elif body.kind == "?":
            parts.append(br(x, Federation.universe(clocks), [
                ("?" + b.action, b.guard, b.resets, idle(b.target, clocks)) for b in body.branches]))
        else:
            ready = Federation.empty(clocks)
            for b in body.branches:
                ready = ready.union(fed_from_guard(b.guard, clocks))
            inner = br(tau_name(x), ready.past(), [
                (TAU, b.guard, (), pfx(committed_name(x, b), "!" + b.action, b.resets,
                                       idle(b.target, clocks)))
                for b in body.branches])
            parts.append(pfx(x, TAU, (), inner))
    return union(parts, d.start)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_dot(a: TimedAutomaton, name: str = "TA") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for n in sorted(a.locations):
        loc = a.locations[n]
        attrs = [f"shape={'doublecircle' if loc.urgent else 'circle'}"]
        inv = S.print_guard(fed_to_guard(loc.invariant))
        label = n if inv == "true" else f"{n}\n{inv}"
        attrs.append(f"label={_q(label)}")
        if n == a.initial:
            attrs.append("style=bold")
        lines.append(f"  {_q(n)} [{', '.join(attrs)}];")
    for e in sorted(a.edges, key=lambda e: (e.source, e.target, e.label, S.print_guard(e.guard), e.resets)):
        parts = [e.label]
        if not isinstance(e.guard, S.TrueG):
            parts.append(S.print_guard(e.guard))
        if e.resets:
            parts.append("{" + ",".join(e.resets) + "}")
        lines.append(f"  {_q(e.source)} -> {_q(e.target)} [label={_q(' '.join(parts))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
