"""Shared generators and corpus access for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product
from importlib import resources

from hypothesis import strategies as st

from tstkit import syntax as S

OPS = ("<", "<=", "==", ">=", ">")


def corpus_text(name: str) -> str:
    return (resources.files("tstkit") / "corpus" / name).read_text(encoding="utf-8")


def load(name: str) -> S.Tst:
    return S.parse(corpus_text(name if "." in name else name + ".tst"))


# expected compliance verdicts for corpus pairs
VERDICTS = [
    ("untimed_p", "untimed_q", True),
    ("intro_p", "intro_q", False),
    ("intro_p", "intro_q_prime", False),
    ("timing_p", "timing_q_fast", True),
    ("timing_p", "timing_q_slow", False),
    ("loop_p", "loop_q", True),
    ("rec_p1", "rec_q1", True),
    ("paynow", "customer", True),
    ("paypal", "alice", True),
    ("zeno_p", "zeno_q", True),
    ("late_p", "late_q", True),
    ("commit_p", "commit_q", False),
    ("plain_p", "plain_q", True),
    ("monitor_p", "monitor_q", True),
]

ADMITTING = [n for n in (
    "alice", "commit_p", "commit_q", "customer", "intro_p", "intro_q", "kind_q1", "late_p",
    "late_q", "loop_p", "loop_q", "monitor_p", "monitor_q", "paynow", "paypal", "plain_p",
    "plain_q", "rec_p1", "rec_q1", "timing_p", "timing_q_fast", "untimed_p", "untimed_q",
    "zeno_p", "zeno_q")]

NOT_ADMITTING = ["nokind_p1", "nokind_p2", "nokind_p3", "intro_q_prime", "timing_q_slow"]


# ---------------------------------------------------------------------------
# guards


def guard_strategy(clocks=("x", "y"), max_const: int = 5, diagonals: bool = True, depth: int = 3):
    atoms = st.builds(S.Atom, st.sampled_from(clocks), st.sampled_from(OPS),
                      st.integers(0, max_const))
    leaves = [atoms, st.just(S.TRUE)]
    if diagonals and len(clocks) > 1:
        pairs = [(a, b) for a in clocks for b in clocks if a != b]
        leaves.append(st.builds(lambda p, op, c: S.DiagAtom(p[0], p[1], op, c),
                                st.sampled_from(pairs), st.sampled_from(OPS),
                                st.integers(0, max_const)))
    return st.recursive(st.one_of(leaves), lambda g: st.one_of(
        st.builds(S.And, g, g), st.builds(S.Or, g, g), st.builds(S.Not, g)), max_leaves=depth + 2)


def grid(denominator: int = 3, top: int = 6) -> list[Fraction]:
    return [Fraction(k, denominator) for k in range(top * denominator + 1)]


def region_closed(f, k: int, denominator: int = 3) -> bool:
    """Whether membership in ``f`` is constant on k-regions (diagonals included).

    Checked on a grid reaching past ``k``; closure may make implied bounds
    above ``k`` explicit in a DBM, so the check looks at the set only.
    """
    inside = dbm_member(f, denominator)
    seen: dict = {}
    for vals, key in _region_keys(k, len(f.clocks.names), denominator):
        hit = inside(vals)
        if seen.setdefault(key, hit) != hit:
            return False
    return True


@lru_cache(maxsize=None)
def _region_keys(k: int, n: int, denominator: int) -> tuple:
    top = k * denominator

    def cls(v):
        if v > top:
            return "big"
        if v < -top:
            return "small"
        return v // denominator, v % denominator == 0

    out = []
    for vals in product(range((k + 2) * denominator + 1), repeat=n):
        key = tuple(cls(v) for v in vals) + tuple(
            cls(vals[i] - vals[j]) for i in range(n) for j in range(i + 1, n))
        out.append((vals, key))
    return tuple(out)


# ---------------------------------------------------------------------------
# fast grid membership: valuations are integer tuples scaled by ``scale``


def compile_guard(g, names, scale: int):
    """``g`` as a predicate on integer tuples (clock values times ``scale``)."""
    idx = {x: i for i, x in enumerate(names)}
    cmp = {"<": int.__lt__, "<=": int.__le__, "==": int.__eq__,
           ">=": int.__ge__, ">": int.__gt__}

    def go(g):
        if isinstance(g, S.TrueG):
            return lambda v: True
        if isinstance(g, S.Not):
            a = go(g.arg)
            return lambda v: not a(v)
        if isinstance(g, S.And):
            a, b = go(g.left), go(g.right)
            return lambda v: a(v) and b(v)
        if isinstance(g, S.Or):
            a, b = go(g.left), go(g.right)
            return lambda v: a(v) or b(v)
        op, c = cmp[g.op], g.const * scale
        if isinstance(g, S.Atom):
            i = idx[g.clock]
            return lambda v: op(v[i], c)
        i, j = idx[g.left], idx[g.right]
        return lambda v: op(v[i] - v[j], c)

    return go(g)


def dbm_member(f, scale: int):
    """Membership in a federation read straight off its bound matrices."""
    from tstkit.zones import INF

    checks = []
    for part in f.parts:
        n = part.dim
        cs = []
        for i in range(n):
            for j in range(n):
                b = part[i, j]
                if i != j and b < INF:
                    cs.append((i, j, (b >> 1) * scale, b & 1))
        checks.append(cs)

    def inside(vals):
        v = (0,) + tuple(vals)
        for cs in checks:
            for i, j, c, weak in cs:
                d = v[i] - v[j]
                if d > c or (d == c and not weak):
                    break
            else:
                return True
        return False

    return inside


# ---------------------------------------------------------------------------
# random TSTs (seeded, deterministic)


def random_guard(rng: random.Random, clocks, max_const: int = 5) -> S.Guard:
    r = rng.random()
    if r < 0.25:
        return S.TRUE
    n = 1 if r < 0.7 else 2
    atoms = []
    for _ in range(n):
        if len(clocks) > 1 and rng.random() < 0.15:
            a, b = rng.sample(list(clocks), 2)
            atoms.append(S.DiagAtom(a, b, rng.choice(OPS), rng.randint(0, max_const)))
        else:
            atoms.append(S.Atom(rng.choice(list(clocks)), rng.choice(OPS),
                                rng.randint(0, max_const)))
    if n == 2 and rng.random() < 0.3:
        return S.Or(atoms[0], atoms[1])
    return S.conj(atoms)


def random_tst(rng: random.Random, clocks=("x", "y"), depth: int = 3,
               actions=("a", "b"), var: str | None = None) -> S.Tst:
    """A valid closed TST with nesting depth at most ``depth``."""
    if var is None and depth >= 2 and rng.random() < 0.25:
        body = _random_choice(rng, clocks, depth, actions, "X")
        return S.Rec("X", body)
    return _random_choice(rng, clocks, depth, actions, var)


def _random_choice(rng, clocks, depth, actions, var):
    kind = S.Internal if rng.random() < 0.5 else S.External
    acts = rng.sample(list(actions), rng.randint(1, len(actions)))
    branches = []
    for a in acts:
        if depth <= 1:
            cont = S.Var(var) if var and rng.random() < 0.5 else S.SUCCESS
        else:
            r = rng.random()
            if r < 0.3:
                cont = S.SUCCESS
            elif var and r < 0.5:
                cont = S.Var(var)
            else:
                cont = _random_choice(rng, clocks, depth - 1, actions, var)
        resets = tuple(c for c in clocks if rng.random() < 0.25)
        branches.append(S.Branch(a, random_guard(rng, clocks), resets, cont))
    return kind(tuple(branches))


_MIRROR_CLOCK = {"x": "u", "y": "v"}


def mirror(rng: random.Random, p: S.Tst, clocks=("u", "v")) -> S.Tst:
    """Same shape as ``p`` with flipped polarities.

    Each guard is either ``p``'s own (on renamed clocks) or a fresh random one.
    """
    if isinstance(p, (S.Success, S.Var)):
        return p
    if isinstance(p, S.Rec):
        return S.Rec(p.var, mirror(rng, p.body, clocks))
    kind = S.External if isinstance(p, S.Internal) else S.Internal
    bs = []
    for b in p.branches:
        if kind is S.External or rng.random() < 0.85:
            if rng.random() < 0.5:
                g = S.rename_guard(b.guard, lambda c: _MIRROR_CLOCK.get(c, c))
                resets = tuple(_MIRROR_CLOCK.get(c, c) for c in b.resets)
            else:
                g = random_guard(rng, clocks)
                resets = tuple(c for c in clocks if rng.random() < 0.25)
            bs.append(S.Branch(b.action, g, resets, mirror(rng, b.cont, clocks)))
    if not bs:
        bs.append(S.Branch(p.branches[0].action, S.TRUE, (), mirror(rng, p.branches[0].cont, clocks)))
    return kind(tuple(bs))


def random_pair(rng: random.Random) -> tuple[S.Tst, S.Tst]:
    p = random_tst(rng, ("x", "y")[: rng.randint(1, 2)])
    cq = ("u", "v")[: rng.randint(1, 2)]
    if rng.random() < 0.8:
        q = mirror(rng, p, ("u", "v"))
    else:
        q = random_tst(rng, cq)
    return p, q
