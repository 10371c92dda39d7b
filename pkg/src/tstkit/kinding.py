"""Kind inference, admissibility, canonical compliant and subtyping."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from . import syntax as S
from . import verify
from .zones import ClockSpace, Federation, fed_from_guard, fed_to_guard


class KindError(ValueError):
    pass


MAX_ITERATIONS = 10_000


def _space(p: S.Tst, clocks: ClockSpace | None) -> ClockSpace:
    return clocks if clocks is not None else ClockSpace.of(S.clocks(p))


def kind_infer(p: S.Tst, env: dict | None = None, clocks: ClockSpace | None = None,
               trace: list | None = None) -> Federation:
    """The kind of ``p`` under ``env`` (recursion variable -> Federation).

    If ``trace`` is a list, the iterates of every recursion fixpoint are
    appended to it as ``(variable, [K0, K1, ...])``.
    """
    cs = _space(p, clocks)
    return _kind(p, dict(env or {}), cs, trace, {})


def _kind(p, env, cs, trace, cache) -> Federation:
    if isinstance(p, S.Success):
        return Federation.universe(cs)
    if isinstance(p, S.Var):
        if p.name not in env:
            raise KindError(f"unbound variable {p.name}")
        return env[p.name]
    if isinstance(p, S.Rec):
        k = Federation.universe(cs)
        iterates = [k]
        for _ in range(MAX_ITERATIONS):
            nxt = _kind(p.body, {**env, p.var: k}, cs, trace, cache)
            iterates.append(nxt)
            if nxt.equals(k):
                break
            k = nxt
        else:  # pragma: no cover - finiteness of the d-zone lattice
            raise KindError("kind fixpoint did not stabilise")
        if trace is not None:
            trace.append((p.var, iterates))
        return k
    guards = [fed_from_guard(b.guard, cs) for b in p.branches]
    conts = [_kind(b.cont, env, cs, trace, cache).inverse_reset(b.resets) for b in p.branches]
    if isinstance(p, S.External):
        out = Federation.empty(cs)
        for g, k in zip(guards, conts):
            out = out.union(g.intersect(k).past())
        return out
    ready = Federation.empty(cs)
    bad = Federation.empty(cs)
    for g, k in zip(guards, conts):
        ready = ready.union(g.past())
        bad = bad.union(g.subtract(k).past())
    return ready.subtract(bad)


def admits_compliant(p: S.Tst) -> tuple[bool, Federation]:
    k = kind_infer(p)
    return k.contains(k.clocks.zero()), k


def admits(p: S.Tst) -> bool:
    return admits_compliant(p)[0]


def dual(p: S.Tst, env: dict | None = None, clocks: ClockSpace | None = None) -> S.Tst:
    """The canonical compliant of ``p``."""
    cs = _space(p, clocks)
    return _dual(p, dict(env or {}), cs)


def _dual(p, env, cs):
    if isinstance(p, (S.Success, S.Var)):
        return p
    if isinstance(p, S.Rec):
        k = kind_infer(p, env, cs)
        return S.Rec(p.var, _dual(p.body, {**env, p.var: k}, cs))
    if isinstance(p, S.Internal):
        return S.External(tuple(replace(b, cont=_dual(b.cont, env, cs)) for b in p.branches))
    out = []
    for b in p.branches:
        k = kind_infer(b.cont, env, cs).inverse_reset(b.resets)
        extra = S.TRUE if k.equals(Federation.universe(cs)) else fed_to_guard(k)
        out.append(S.Branch(b.action, S.conj([b.guard, extra]), b.resets, _dual(b.cont, env, cs)))
    return S.Internal(tuple(out))


def subtype(p: S.Tst, q: S.Tst, max_states: int = 1_000_000) -> bool:
    """``p ⊑ q``: every partner compliant with ``q`` is compliant with ``p``."""
    if not admits(q):
        return True
    return verify.compliant(p, dual(q), max_states=max_states).compliant


def kind_guard(k: Federation) -> str:
    return S.print_guard(fed_to_guard(k))


def contains_zero(k: Federation) -> bool:
    return k.contains({x: Fraction(0) for x in k.clocks.names})
