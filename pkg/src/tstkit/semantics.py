"""Concrete semantics of TST configurations and a region-graph compliance oracle.

The oracle never touches federations: guards and ready sets are evaluated
pointwise on exact rational valuations, and the continuous delay relation
is quotiented by region keys.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Hashable, Iterable, Mapping

from . import syntax as S
from .zones import (ClockSpace, Dbm, Federation, bound, dbm_sample,
                    dbm_universe, _close, fed_from_guard)

# ---------------------------------------------------------------------------
# configurations and labels


@dataclass(frozen=True)
class Endpoint:
    term: object  # Tst, Committed or Culpable
    valuation: tuple  # sorted (clock, Fraction) pairs

    @classmethod
    def initial(cls, term, clocks: Iterable[str]) -> "Endpoint":
        return cls(term, tuple((c, Fraction(0)) for c in sorted(clocks)))

    @property
    def nu(self) -> dict[str, Fraction]:
        return dict(self.valuation)

    def with_(self, term=None, nu: Mapping[str, Fraction] | None = None) -> "Endpoint":
        return Endpoint(self.term if term is None else term,
                        self.valuation if nu is None else tuple(sorted(nu.items())))


@dataclass(frozen=True)
class Configuration:
    left: Endpoint
    right: Endpoint

    def side(self, k: str) -> Endpoint:
        return self.left if k == "A" else self.right


@dataclass(frozen=True)
class Delay:
    amount: Fraction

    def __str__(self):
        return f"delay {self.amount}"


@dataclass(frozen=True)
class Commit:
    side: str  # "A" (left) or "B" (right)
    action: str

    def __str__(self):
        return f"{self.side} commit !{self.action}"


@dataclass(frozen=True)
class Sync:
    action: str
    sender: str

    def __str__(self):
        return f"sync {self.action} from {self.sender}"


class StepError(ValueError):
    pass


def initial(p: S.Tst, q: S.Tst) -> Configuration:
    return Configuration(Endpoint.initial(p, S.clocks(p)), Endpoint.initial(q, S.clocks(q)))


def _shift(nu: Mapping[str, Fraction], d: Fraction) -> dict[str, Fraction]:
    return {k: v + d for k, v in nu.items()}


def _reset(nu: Mapping[str, Fraction], rs) -> dict[str, Fraction]:
    out = dict(nu)
    for r in rs:
        out[r] = Fraction(0)
    return out


# ---------------------------------------------------------------------------
# rdy


def rdy(p, clocks: ClockSpace) -> Federation:
    """Valuations from which ``p`` lets time pass."""
    if isinstance(p, (S.Committed, S.Culpable)):
        return Federation.empty(clocks)
    p = S.head(p)
    if isinstance(p, S.Internal):
        fed = Federation.empty(clocks)
        for b in p.branches:
            fed = fed.union(fed_from_guard(b.guard, clocks))
        return fed.past()
    return Federation.universe(clocks)


def _guard_breakpoints(guards, nu: Mapping[str, Fraction]) -> list[Fraction]:
    pts = set()
    for g in guards:
        for a in _atoms(g):
            if isinstance(a, S.Atom):
                d = a.const - nu[a.clock]
                if d > 0:
                    pts.add(d)
    return sorted(pts)


def _ray_points(breaks: list[Fraction]) -> list[Fraction]:
    """Delays hitting every breakpoint and every open interval between them."""
    pts = [Fraction(0)]
    prev = Fraction(0)
    for b in breaks:
        pts.append((prev + b) / 2)
        pts.append(b)
        prev = b
    pts.append(prev + 1)
    return pts


def eventually(guards: Iterable[S.Guard], nu: Mapping[str, Fraction]) -> bool:
    """Pointwise test of ``ν ∈ past(⋃ ⟦g⟧)``.

    Along the ray ``ν + δ`` every atom is true on an interval whose ends are
    among the breakpoints ``c - ν(x)``, so those points and the gaps between
    them are all that needs checking.
    """
    guards = list(guards)
    pts = _ray_points(_guard_breakpoints(guards, nu))
    return any(S.eval_guard(g, _shift(nu, d)) for d in pts for g in guards)


def in_rdy(p, nu: Mapping[str, Fraction]) -> bool:
    if isinstance(p, (S.Committed, S.Culpable)):
        return False
    p = S.head(p)
    if isinstance(p, S.Internal):
        return eventually((b.guard for b in p.branches), nu)
    return True


# ---------------------------------------------------------------------------
# one-step semantics


def _commits(side: str, ep: Endpoint):
    t = ep.term
    if isinstance(t, (S.Committed, S.Culpable, S.Success)):
        return
    t = S.head(t)
    if isinstance(t, S.Internal):
        nu = ep.nu
        for b in t.branches:
            if S.eval_guard(b.guard, nu):
                yield Commit(side, b.action), ep.with_(term=S.Committed(b))


def _sync(sender: Endpoint, receiver: Endpoint, action: str | None = None):
    if not isinstance(sender.term, S.Committed) or isinstance(receiver.term, (S.Committed, S.Culpable)):
        return None
    ob = sender.term.branch
    if action is not None and ob.action != action:
        return None
    r = S.head(receiver.term)
    if not isinstance(r, S.External):
        return None
    for ib in r.branches:
        if ib.action == ob.action and S.eval_guard(ib.guard, receiver.nu):
            return (sender.with_(term=ob.cont, nu=_reset(sender.nu, ob.resets)),
                    receiver.with_(term=ib.cont, nu=_reset(receiver.nu, ib.resets)))
    return None


def step(c: Configuration) -> list[tuple[object, Configuration]]:
    """All τ-successors of a configuration (commits and synchronisations)."""
    out = []
    for lab, ep in _commits("A", c.left):
        out.append((lab, Configuration(ep, c.right)))
    for lab, ep in _commits("B", c.right):
        out.append((lab, Configuration(c.left, ep)))
    r = _sync(c.left, c.right)
    if r:
        out.append((Sync(c.left.term.branch.action, "A"), Configuration(r[0], r[1])))
    r = _sync(c.right, c.left)
    if r:
        out.append((Sync(c.right.term.branch.action, "B"), Configuration(r[1], r[0])))
    return out


def can_delay(c: Configuration, d: Fraction) -> bool:
    if d <= 0:
        return False
    return (in_rdy(c.left.term, _shift(c.left.nu, d))
            and in_rdy(c.right.term, _shift(c.right.nu, d)))


def apply(c: Configuration, event) -> Configuration:
    """Fire one event, raising :class:`StepError` if it is not enabled."""
    if isinstance(event, Delay):
        d = Fraction(event.amount)
        if not can_delay(c, d):
            raise StepError(f"delay {d} not permitted")
        return Configuration(c.left.with_(nu=_shift(c.left.nu, d)),
                             c.right.with_(nu=_shift(c.right.nu, d)))
    for lab, nxt in step(c):
        if lab == event:
            return nxt
    raise StepError(f"{event} not enabled")


def run(p: S.Tst, q: S.Tst, events: Iterable) -> Configuration:
    c = initial(p, q)
    for e in events:
        c = apply(c, e)
    return c


def is_success(c: Configuration) -> bool:
    return isinstance(c.left.term, S.Success) and isinstance(c.right.term, S.Success)


def _joint(c: Configuration) -> tuple[ClockSpace, dict[str, Fraction]]:
    nu = {**c.left.nu, **c.right.nu}
    return ClockSpace.of(nu), nu


def _enabled_fed(c: Configuration, cs: ClockSpace) -> Federation:
    """Joint valuations at which the term pair can do a τ."""
    fed = Federation.empty(cs)
    for ep in (c.left, c.right):
        t = ep.term
        if isinstance(t, (S.Internal, S.Rec)):
            t = S.head(t)
            if isinstance(t, S.Internal):
                for b in t.branches:
                    fed = fed.union(fed_from_guard(b.guard, cs))
    for snd, rcv in ((c.left, c.right), (c.right, c.left)):
        if isinstance(snd.term, S.Committed) and not isinstance(rcv.term, (S.Committed, S.Culpable)):
            r = S.head(rcv.term)
            if isinstance(r, S.External):
                for ib in r.branches:
                    if ib.action == snd.term.branch.action:
                        fed = fed.union(fed_from_guard(ib.guard, cs))
    return fed


def deadlock_witness(c: Configuration) -> tuple[bool, Fraction | None]:
    """``(is_deadlock, δ)`` where δ is a delay after which a τ is possible."""
    if is_success(c):
        return False, None
    cs, nu = _joint(c)
    e = _enabled_fed(c, cs)
    if e.contains(nu):
        return False, Fraction(0)
    go = e.intersect(rdy(c.left.term, cs)).intersect(rdy(c.right.term, cs))
    d = go.delay_window(nu, strict_positive=True)
    if d is None:
        return True, None
    return False, d


def is_deadlock(c: Configuration) -> bool:
    return deadlock_witness(c)[0]


# ---------------------------------------------------------------------------
# region quotient


class RegionSpace:
    """Region keys over named clocks with per-clock maximal constants."""

    def __init__(self, consts: Mapping[str, int]):
        self.names = tuple(sorted(consts))
        self.consts = dict(consts)
        self.space = ClockSpace(self.names)
        self._caps = [self.consts[x] for x in self.names]

    def key(self, nu: Mapping[str, Fraction], live=None) -> tuple:
        """Region code vector; clocks outside ``live`` are masked with None."""
        vals = [nu[x] for x in self.names]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        ns = [v.numerator * (den // v.denominator) for v in vals]
        if live is not None:
            ns = [n if x in live else None for n, x in zip(ns, self.names)]
        caps = self._caps
        codes = [None if n is None else _icode(n, den, c) for n, c in zip(ns, caps)]
        m = len(ns)
        for i in range(m):
            ni, ci = ns[i], caps[i]
            for j in range(i + 1, m):
                if ni is None or ns[j] is None:
                    codes.append(None)
                    continue
                c = ci if ci > caps[j] else caps[j]
                codes.append(_icode(ni - ns[j], den, c))
        return tuple(codes)

    def dbm(self, key: tuple) -> Dbm:
        n = len(self.names) + 1
        m = list(dbm_universe(n).m)
        k = 0
        for i in range(1, n):
            _apply_code(m, n, i, 0, key[k], self.consts[self.names[i - 1]])
            k += 1
        for i in range(1, n):
            for j in range(i + 1, n):
                cap = max(self.consts[self.names[i - 1]], self.consts[self.names[j - 1]])
                _apply_code(m, n, i, j, key[k], cap)
                k += 1
        if not _close(m, n):  # pragma: no cover - keys come from real valuations
            raise ValueError(f"infeasible region key {key}")
        return Dbm(n, m)

    def representative(self, key: tuple) -> dict[str, Fraction]:
        return self.space.valuation(dbm_sample(self.dbm(key)))

    def delay_successor(self, nu: Mapping[str, Fraction], live=None):
        """``(δ, key)`` of the first region strictly after ν's, or None."""
        # the key only changes when a live clock at most its cap reaches an integer
        nxt = None
        for x in self.names:
            v = nu[x]
            if v <= self.consts[x] and (live is None or x in live):
                d = (v.numerator // v.denominator) + 1 - v
                if nxt is None or d < nxt:
                    nxt = d
        if nxt is None:
            return None
        k0 = self.key(nu, live)
        for d in (nxt / 2, nxt):
            k = self.key(_shift(nu, d), live)
            if k != k0:
                return d, k
        raise AssertionError("region boundary missed")  # pragma: no cover


def _icode(n: int, den: int, cap: int) -> int:
    """Region code of the rational ``n / den`` with cap ``cap``."""
    if n > cap * den:
        return 2 * cap + 1
    if n < -cap * den:
        return -(2 * cap + 1)
    q, r = divmod(n, den)
    return 2 * q if r == 0 else 2 * q + 1


def _apply_code(m, n, i, j, code, cap):
    if code is None:
        return
    def tight(a, b, val):
        if val < m[a * n + b]:
            m[a * n + b] = val

    if code == 2 * cap + 1:
        tight(j, i, bound(-cap, True))
    elif code == -(2 * cap + 1):
        tight(i, j, bound(-cap, True))
    elif code % 2 == 0:
        k = code // 2
        tight(i, j, bound(k, False))
        tight(j, i, bound(-k, False))
    else:
        k = (code - 1) // 2
        tight(i, j, bound(k + 1, True))
        tight(j, i, bound(-k, True))


class OracleLimit(RuntimeError):
    """The region graph exceeded its node budget."""


@dataclass
class TimedSystem:
    """A closed system explored on the region quotient.

    ``actions(state, ν)`` lists discrete successors ``(label, state', ν')``;
    ``can_delay(state, ν)`` says whether time may pass at ν (ready sets are
    past-closed, so checking the target of a delay suffices);
    ``is_success(state)`` marks accepting states;
    ``live(state)``, if given, names the clocks whose values may still be read.
    """

    actions: Callable
    can_delay: Callable
    is_success: Callable
    live: Callable | None = None


def explore(system: TimedSystem, init_state: Hashable, regions: RegionSpace,
            max_nodes: int = 200_000) -> tuple[bool, list]:
    """Return ``(deadlock_free, path_to_deadlock)`` over the region graph.

    A node is ``(state, region key)``; the first concrete valuation reaching a
    node stands for its whole region.  Valuations whose denominators grow
    too large are swapped for the canonical sample of their region.
    """
    live = system.live or (lambda _st: None)
    init_nu = {x: Fraction(0) for x in regions.names}
    start = (init_state, regions.key(init_nu, live(init_state)))
    parent: dict = {start: None}
    witness: dict = {start: init_nu}
    queue = deque([start])
    act_memo: dict = {}
    eventual: dict = {}

    def note(node, nu):
        if node not in witness:
            if any(v.denominator > 1 << 16 for v in nu.values()):
                nu = regions.representative(node[1])
            witness[node] = nu

    def acts(node):
        a = act_memo.get(node)
        if a is None:
            a = []
            for lab, s2, nu2 in system.actions(node[0], witness[node]):
                nxt = (s2, regions.key(nu2, live(s2)))
                note(nxt, nu2)
                a.append((lab, nxt))
            act_memo[node] = a
        return a

    def delay_succ(node):
        nu = witness[node]
        r = regions.delay_successor(nu, live(node[0]))
        if r is None:
            return None
        d, k = r
        nxt = (node[0], k)
        nu2 = _shift(nu, d)
        if not system.can_delay(node[0], nu2):
            return None
        note(nxt, nu2)
        return nxt

    def can_eventually_act(node) -> bool:
        chain = []
        cur = node
        res = False
        while cur is not None:
            if cur in eventual:
                res = eventual[cur]
                break
            chain.append(cur)
            if acts(cur):
                res = True
                break
            cur = delay_succ(cur)
        for c in chain:
            eventual[c] = res
        return res

    while queue:
        node = queue.popleft()
        if system.is_success(node[0]):
            continue  # nothing ever happens after success
        if not can_eventually_act(node):
            path = []
            n = node
            while n is not None:
                path.append(n)
                n = parent[n]
            return False, path[::-1]
        succs = [s for _, s in acts(node)]
        ds = delay_succ(node)
        if ds is not None:
            succs.append(ds)
        for s in succs:
            if s not in parent:
                if len(parent) >= max_nodes:
                    raise OracleLimit(f"region graph exceeds {max_nodes} nodes")
                parent[s] = node
                queue.append(s)
    return True, []


# ---------------------------------------------------------------------------
# compliance oracle on DENF terms


def _denf_system(dp: S.Denf, dq: S.Denf) -> TimedSystem:
    eqs = (dp.equations, dq.equations)

    def actions(st, nu):
        out = []
        for k in (0, 1):
            t = st[k]
            if t[0] == "v" and eqs[k][t[1]].kind == "!":
                for i, b in enumerate(eqs[k][t[1]].branches):
                    if S.eval_guard(b.guard, nu):
                        ns = list(st)
                        ns[k] = ("c", t[1], i)
                        out.append((("commit", k, b.action), tuple(ns), nu))
        for k in (0, 1):
            t, u = st[k], st[1 - k]
            if t[0] != "c" or u[0] != "v":
                continue
            ob = eqs[k][t[1]].branches[t[2]]
            ub = eqs[1 - k][u[1]]
            if ub.kind != "?":
                continue
            for ib in ub.branches:
                if ib.action == ob.action and S.eval_guard(ib.guard, nu):
                    ns = [None, None]
                    ns[k] = ("v", ob.target)
                    ns[1 - k] = ("v", ib.target)
                    out.append((("sync", k, ob.action), tuple(ns),
                                _reset(nu, ob.resets + ib.resets)))
        return out

    def can_delay_(st, nu):
        for k in (0, 1):
            t = st[k]
            if t[0] == "c":
                return False
            body = eqs[k][t[1]]
            if body.kind == "!" and not eventually((b.guard for b in body.branches), nu):
                return False
        return True

    def success(st):
        return all(t[0] == "v" and eqs[k][t[1]].kind == "1" for k, t in enumerate(st))

    lv = (live_clocks(dp), live_clocks(dq))

    def live(st):
        out = set()
        for k, t in enumerate(st):
            if t[0] == "v":
                out |= lv[k][t[1]]
            else:
                b = eqs[k][t[1]].branches[t[2]]
                out |= lv[k][b.target] - set(b.resets)
        return out

    return TimedSystem(actions, can_delay_, success, live)


def live_clocks(d: S.Denf) -> dict[str, frozenset]:
    """Clocks each equation may read before resetting them (least fixpoint)."""
    live = {x: frozenset() for x in d.equations}
    changed = True
    while changed:
        changed = False
        for x, body in d.equations.items():
            acc = set()
            for b in body.branches:
                acc |= S.guard_clocks(b.guard)
                acc |= live[b.target] - set(b.resets)
            if acc != live[x]:
                live[x] = frozenset(acc)
                changed = True
    return live


def clock_constants(*ps: S.Tst) -> dict[str, int]:
    """Per-clock maximal constant (diagonal constants count for both clocks)."""
    consts: dict[str, int] = {}
    for p in ps:
        for x in S.clocks(p):
            consts.setdefault(x, 0)
        for _, b in S.all_branches(p):
            for g in _atoms(b.guard):
                names = [g.clock] if isinstance(g, S.Atom) else [g.left, g.right]
                for x in names:
                    consts[x] = max(consts[x], g.const)
    return consts


def _atoms(g):
    if isinstance(g, (S.Atom, S.DiagAtom)):
        yield g
    elif isinstance(g, S.Not):
        yield from _atoms(g.arg)
    elif isinstance(g, (S.And, S.Or)):
        yield from _atoms(g.left)
        yield from _atoms(g.right)


def disjoint_pair(p: S.Tst, q: S.Tst, suffix: str = "_q") -> tuple[S.Tst, S.Tst]:
    """Rename ``q``'s clocks when they clash with ``p``'s."""
    if S.clocks(p) & S.clocks(q):
        q = S.rename_clocks(q, suffix)
    return p, q


def oracle_compliant(p: S.Tst, q: S.Tst, max_nodes: int = 200_000) -> bool:
    """Decide ``p ⋈ q`` by exhaustive exploration of the region graph."""
    p, q = disjoint_pair(p, q)
    dp = S.to_denf(p, S.FreshVars("P", S.all_vars(p)))
    dq = S.to_denf(q, S.FreshVars("Q", S.all_vars(q)))
    consts = clock_constants(p, q)
    regions = RegionSpace(consts)
    system = _denf_system(dp, dq)
    ok, _ = explore(system, (("v", dp.start), ("v", dq.start)), regions, max_nodes)
    return ok
