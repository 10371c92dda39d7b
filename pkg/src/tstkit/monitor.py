"""Deterministic runtime monitor for two endpoints with one-slot buffers."""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable

from . import semantics as sem
from . import syntax as S


@dataclass(frozen=True)
class Act:
    who: str  # "A" or "B"
    label: str  # "!a" or "?a"

    def __str__(self):
        return f"{self.who} {self.label}"


@dataclass(frozen=True)
class Tick:
    amount: Fraction

    def __post_init__(self):
        if self.amount <= 0:
            raise ValueError("delays must be positive")

    def __str__(self):
        a = self.amount
        return f"delay {a.numerator if a.denominator == 1 else _decimal(a)}"


def _decimal(x: Fraction) -> str:
    # exact decimal when the denominator allows it, a fraction otherwise
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass(frozen=True)
class Side:
    term: object  # Tst or CULPABLE
    buffer: str | None  # buffered output action, if any
    valuation: tuple  # sorted (clock, Fraction)

    @property
    def nu(self) -> dict:
        return dict(self.valuation)

    @property
    def culpable(self) -> bool:
        return isinstance(self.term, S.Culpable)

    def but(self, **kw) -> "Side":
        d = {"term": self.term, "buffer": self.buffer, "valuation": self.valuation}
        if "nu" in kw:
            kw["valuation"] = tuple(sorted(kw.pop("nu").items()))
        d.update(kw)
        return Side(**d)


@dataclass(frozen=True)
class MonitorConfig:
    A: Side
    B: Side

    def get(self, who: str) -> Side:
        return self.A if who == "A" else self.B

    def put(self, who: str, s: Side) -> "MonitorConfig":
        return MonitorConfig(s, self.B) if who == "A" else MonitorConfig(self.A, s)

    def digest(self) -> str:
        text = "|".join(
            f"{S.print_tst(s.term)};{s.buffer or ''};"
            + ",".join(f"{k}={v}" for k, v in s.valuation)
            for s in (self.A, self.B))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def start(p: S.Tst, q: S.Tst) -> MonitorConfig:
    z = lambda t: tuple((c, Fraction(0)) for c in sorted(S.clocks(t)))  # noqa: E731
    return MonitorConfig(Side(p, None, z(p)), Side(q, None, z(q)))


def _other(who: str) -> str:
    return "B" if who == "A" else "A"


def _ok_act(g: MonitorConfig, e: Act) -> MonitorConfig | None:
    me, peer = g.get(e.who), g.get(_other(e.who))
    if me.culpable:
        return None
    t = S.head(me.term)
    pol, action = e.label[0], e.label[1:]
    if pol == "!":
        if not isinstance(t, S.Internal) or me.buffer or peer.buffer:
            return None
        for b in t.branches:
            if b.action == action and S.eval_guard(b.guard, me.nu):
                return g.put(e.who, me.but(term=b.cont, buffer=action,
                                           nu=sem._reset(me.nu, b.resets)))
        return None
    if not isinstance(t, S.External) or me.buffer or peer.buffer != action:
        return None
    for b in t.branches:
        if b.action == action and S.eval_guard(b.guard, me.nu):
            g = g.put(_other(e.who), peer.but(buffer=None))
            return g.put(e.who, me.but(term=b.cont, nu=sem._reset(me.nu, b.resets)))
    return None


def _ready(side: Side, d: Fraction) -> bool:
    if side.culpable:
        return True
    return sem.in_rdy(side.term, sem._shift(side.nu, d))


def mstep(g: MonitorConfig, e) -> MonitorConfig:
    """The unique successor of ``g`` under event ``e``."""
    if isinstance(e, Act):
        if g.get(e.who).culpable:
            return g
        nxt = _ok_act(g, e)
        if nxt is not None:
            return nxt
        return g.put(e.who, g.get(e.who).but(term=S.CULPABLE))
    d = Fraction(e.amount)
    sides = {w: g.get(w) for w in "AB"}
    moved = {w: s.but(nu=sem._shift(s.nu, d)) for w, s in sides.items()}
    if not sides["A"].buffer and not sides["B"].buffer and all(_ready(s, d) for s in sides.values()):
        return MonitorConfig(moved["A"], moved["B"])
    for w in "AB":
        s, peer = sides[w], sides[_other(w)]
        if (not peer.buffer and not _ready(s, d)) or peer.buffer:
            moved[w] = moved[w].but(term=S.CULPABLE)
    return MonitorConfig(moved["A"], moved["B"])


def culpable(g: MonitorConfig) -> list[str]:
    return [w for w in "AB" if g.get(w).culpable]


def on_duty(g: MonitorConfig) -> list[str]:
    out = []
    for w in "AB":
        me, peer = g.get(w), g.get(_other(w))
        if me.culpable:
            continue
        if (isinstance(S.head(me.term), S.Internal) and not me.buffer) or peer.buffer:
            out.append(w)
    return out


def duty(g: MonitorConfig) -> str | None:
    d = on_duty(g)
    return d[0] if len(d) == 1 else (None if not d else "+".join(d))


def is_success(g: MonitorConfig) -> bool:
    return (isinstance(g.A.term, S.Success) and isinstance(g.B.term, S.Success)
            and not g.A.buffer and not g.B.buffer)


@dataclass
class Report:
    steps: list  # [(event, MonitorConfig)]
    final: MonitorConfig

    @property
    def success(self) -> bool:
        return is_success(self.final)

    @property
    def culpable(self) -> list[str]:
        return culpable(self.final)

    @property
    def on_duty(self) -> str | None:
        return duty(self.final)

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "culpable": self.culpable,
            "on_duty": self.on_duty,
            "steps": [{"event": str(e), "state_digest": g.digest()} for e, g in self.steps],
        }


def replay(p: S.Tst, q: S.Tst, trace: Iterable) -> Report:
    g = start(p, q)
    steps = []
    for e in trace:
        g = mstep(g, e)
        steps.append((e, g))
    return Report(steps, g)


# ---------------------------------------------------------------------------
# trace files


class TraceError(ValueError):
    pass


_ACT = re.compile(r"^(A|B)\s*([!?])\s*([A-Za-z_][A-Za-z0-9_']*)$")


def _number(text: str, lineno: int) -> Fraction:
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError, ZeroDivisionError):
        raise TraceError(f"line {lineno}: bad number {text!r}") from None


def parse_trace(text: str) -> list:
    """Parse ``.trc`` text: ``delay 1.2``, ``A !a``, ``B ?a``, optional ``@t`` stamps."""
    events = []
    now = Fraction(0)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            stamp, _, rest = line[1:].partition(" ")
            t = _number(stamp, lineno)
            if t < now:
                raise TraceError(f"line {lineno}: time stamp {stamp} goes backwards")
            if t > now:
                events.append(Tick(t - now))
                now = t
            line = rest.strip()
            if not line:
                continue
        if line.startswith("delay"):
            d = _number(line[5:].strip(), lineno)
            if d <= 0:
                raise TraceError(f"line {lineno}: delays must be positive")
            events.append(Tick(d))
            now += d
            continue
        m = _ACT.match(line)
        if not m:
            raise TraceError(f"line {lineno}: cannot parse {raw.strip()!r}")
        events.append(Act(m.group(1), m.group(2) + m.group(3)))
    return events


def format_trace(events: Iterable) -> str:
    return "".join(f"{e}\n" for e in events)


def from_semantics(events: Iterable) -> list:
    """Monitor events matching a run of the synchronous semantics."""
    out = []
    for e in events:
        if isinstance(e, sem.Delay):
            out.append(Tick(Fraction(e.amount)))
        elif isinstance(e, sem.Commit):
            out.append(Act(e.side, "!" + e.action))
        else:
            out.append(Act(_other(e.sender), "?" + e.action))
    return out


# ---------------------------------------------------------------------------
# monitoring compliance on the region quotient


def monitor_compliant(p: S.Tst, q: S.Tst, max_nodes: int = 200_000) -> bool:
    """Exhaustive check that no [M-Ok] run gets stuck outside success."""
    p, q = sem.disjoint_pair(p, q)
    dp = S.to_denf(p, S.FreshVars("P", S.all_vars(p)))
    dq = S.to_denf(q, S.FreshVars("Q", S.all_vars(q)))
    eqs = (dp.equations, dq.equations)
    consts = sem.clock_constants(p, q)

    def actions(st, nu):
        out = []
        for k in (0, 1):
            x, buf = st[2 * k], st[2 * k + 1]
            pbuf = st[2 * (1 - k) + 1]
            body = eqs[k][x]
            if body.kind == "!" and buf is None and pbuf is None:
                for b in body.branches:
                    if S.eval_guard(b.guard, nu):
                        ns = list(st)
                        ns[2 * k], ns[2 * k + 1] = b.target, b.action
                        out.append((("out", k, b.action), tuple(ns), sem._reset(nu, b.resets)))
            elif body.kind == "?" and buf is None and pbuf is not None:
                for b in body.branches:
                    if b.action == pbuf and S.eval_guard(b.guard, nu):
                        ns = list(st)
                        ns[2 * k] = b.target
                        ns[2 * (1 - k) + 1] = None
                        out.append((("in", k, b.action), tuple(ns), sem._reset(nu, b.resets)))
        return out

    def can_delay(st, nu):
        if st[1] is not None or st[3] is not None:
            return False
        for k in (0, 1):
            body = eqs[k][st[2 * k]]
            if body.kind == "!" and not sem.eventually((b.guard for b in body.branches), nu):
                return False
        return True

    def success(st):
        return (eqs[0][st[0]].kind == "1" and eqs[1][st[2]].kind == "1"
                and st[1] is None and st[3] is None)

    lv = (sem.live_clocks(dp), sem.live_clocks(dq))
    system = sem.TimedSystem(actions, can_delay, success,
                             lambda st: lv[0][st[0]] | lv[1][st[2]])
    ok, _ = sem.explore(system, (dp.start, None, dq.start, None),
                        sem.RegionSpace(consts), max_nodes)
    return ok
