"""Exact sets of clock valuations.

A :class:`Dbm` is a canonical difference bound matrix over ``n`` clocks plus
the reference clock at index 0.  Entry ``(i, j)`` bounds ``x_i - x_j``.
A :class:`Federation` is a finite union of non-empty canonical DBMs over a
shared :class:`ClockSpace`; it is closed under past, inverse reset, union,
intersection, difference and complement, with exact semantics.

Bounds are encoded as integers: ``(v, <)`` is ``2*v`` and ``(v, <=)`` is
``2*v + 1``, so the natural integer order is the bound order.  ``INF`` is the
strict infinite bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

INF = 1 << 62
LE_ZERO = 1
LT_ZERO = 0


class ZoneError(ValueError):
    """Raised on clock-space mismatches and unknown clocks."""


def bound(value: int, strict: bool) -> int:
    return (value << 1) | (0 if strict else 1)


def bound_value(b: int) -> int:
    return b >> 1


def bound_is_strict(b: int) -> bool:
    return not (b & 1)


def bound_add(a: int, b: int) -> int:
    if a >= INF or b >= INF:
        return INF
    return (((a >> 1) + (b >> 1)) << 1) | (a & b & 1)


def bound_negate(b: int) -> int:
    """Bound of the complementary constraint on the reversed difference."""
    return ((-(b >> 1)) << 1) | (1 - (b & 1))


def bound_str(b: int) -> str:
    if b >= INF:
        return "<inf"
    return ("<" if bound_is_strict(b) else "<=") + str(bound_value(b))


# ---------------------------------------------------------------------------
# clock spaces and valuations


@dataclass(frozen=True)
class ClockSpace:
    """Ordered clock names; clock ``names[k]`` has DBM index ``k + 1``."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ZoneError(f"duplicate clock names in {self.names}")

    @classmethod
    def of(cls, names: Iterable[str]) -> "ClockSpace":
        return cls(tuple(sorted(set(names))))

    @property
    def dim(self) -> int:
        return len(self.names) + 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise ZoneError(f"unknown clock {name!r}") from None

    def indices(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.index(n) for n in names))

    def __add__(self, other: "ClockSpace") -> "ClockSpace":
        return ClockSpace(self.names + tuple(n for n in other.names if n not in self.names))

    def zero(self) -> dict[str, Fraction]:
        return {n: Fraction(0) for n in self.names}

    def vector(self, valuation: Mapping[str, Fraction]) -> tuple[Fraction, ...]:
        """Valuation as a tuple indexed like the DBM (slot 0 is the reference clock)."""
        return (Fraction(0),) + tuple(Fraction(valuation[n]) for n in self.names)

    def valuation(self, vector: Sequence[Fraction]) -> dict[str, Fraction]:
        return {n: vector[k + 1] for k, n in enumerate(self.names)}


def delay(valuation: Mapping[str, Fraction], d) -> dict[str, Fraction]:
    d = Fraction(d)
    return {k: v + d for k, v in valuation.items()}


def reset(valuation: Mapping[str, Fraction], clocks: Iterable[str]) -> dict[str, Fraction]:
    out = dict(valuation)
    for c in clocks:
        out[c] = Fraction(0)
    return out


# ---------------------------------------------------------------------------
# raw DBM kernels on flat lists


def _close(m: list[int], n: int) -> bool:
    """Floyd-Warshall in place; False if the result is empty."""
    for k in range(n):
        rk = k * n
        for i in range(n):
            ik = m[i * n + k]
            if ik >= INF:
                continue
            ri = i * n
            iv = ik >> 1
            iw = ik & 1
            for j in range(n):
                kj = m[rk + j]
                if kj >= INF:
                    continue
                s = ((iv + (kj >> 1)) << 1) | (iw & kj & 1)
                if s < m[ri + j]:
                    m[ri + j] = s
        if m[k * n + k] < LE_ZERO:
            return False
    for i in range(n):
        if m[i * n + i] < LE_ZERO:
            return False
    return True


def _constrain(m: list[int], n: int, i: int, j: int, b: int) -> bool:
    """Tighten x_i - x_j by ``b`` and restore canonical form in O(n^2)."""
    if b >= m[i * n + j]:
        return True
    if bound_add(b, m[j * n + i]) < LE_ZERO:
        return False
    m[i * n + j] = b
    col_i = [m[a * n + i] for a in range(n)]
    row_j = m[j * n: j * n + n]
    for a in range(n):
        ai = col_i[a]
        if ai >= INF:
            continue
        t = bound_add(ai, b)
        ra = a * n
        for c in range(n):
            jc = row_j[c]
            if jc >= INF:
                continue
            s = bound_add(t, jc)
            if s < m[ra + c]:
                m[ra + c] = s
    return True


def _universe(n: int) -> list[int]:
    m = [INF] * (n * n)
    for j in range(n):
        m[j] = LE_ZERO
        m[j * n + j] = LE_ZERO
    return m


class Dbm:
    """Immutable canonical non-empty DBM.  Use the module constructors."""

    __slots__ = ("dim", "m", "_hash")

    def __init__(self, dim: int, m: Sequence[int]):
        self.dim = dim
        self.m = tuple(m)
        self._hash = hash(self.m)

    def __eq__(self, other):
        return isinstance(other, Dbm) and self.m == other.m

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Dbm"):
        return self.m < other.m

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.m[i * self.dim + j]

    def __repr__(self):
        n = self.dim
        rows = [" ".join(f"{bound_str(self.m[i * n + j]):>6}" for j in range(n)) for i in range(n)]
        return "Dbm(\n  " + "\n  ".join(rows) + ")"

    def leq(self, other: "Dbm") -> bool:
        """Set inclusion ``self ⊆ other`` (exact for canonical DBMs)."""
        return all(a <= b for a, b in zip(self.m, other.m))

    def is_canonical(self) -> bool:
        n = self.dim
        m = self.m
        for i in range(n):
            if m[i * n + i] != LE_ZERO:
                return False
            if m[i] > LE_ZERO:  # row 0: clocks are non-negative
                return False
            for j in range(n):
                for k in range(n):
                    if m[i * n + j] > bound_add(m[i * n + k], m[k * n + j]):
                        return False
        return True

    def contains(self, vec: Sequence[Fraction]) -> bool:
        n = self.dim
        m = self.m
        for i in range(n):
            vi = vec[i]
            for j in range(n):
                b = m[i * n + j]
                if b >= INF or i == j:
                    continue
                diff = vi - vec[j]
                v = b >> 1
                if diff > v or (diff == v and not (b & 1)):
                    return False
        return True

    def max_constant(self) -> int:
        return max((abs(b >> 1) for b in self.m if b < INF), default=0)


def _make(m: list[int], n: int, closed: bool = False) -> Dbm | None:
    if not closed and not _close(m, n):
        return None
    return Dbm(n, m)


def dbm_universe(n: int) -> Dbm:
    return Dbm(n, _universe(n))


def dbm_intersect(a: Dbm, b: Dbm) -> Dbm | None:
    n = a.dim
    m = [x if x < y else y for x, y in zip(a.m, b.m)]
    return _make(m, n)


def dbm_constrain(a: Dbm, i: int, j: int, b: int) -> Dbm | None:
    m = list(a.m)
    if not _constrain(m, a.dim, i, j, b):
        return None
    return Dbm(a.dim, m)


def dbm_down(a: Dbm) -> Dbm:
    n = a.dim
    m = list(a.m)
    for j in range(1, n):
        m[j] = LE_ZERO
    _close(m, n)
    return Dbm(n, m)


def dbm_up(a: Dbm) -> Dbm:
    n = a.dim
    m = list(a.m)
    for i in range(1, n):
        m[i * n] = INF
    return Dbm(n, m)


def dbm_reset(a: Dbm, clocks: Iterable[int]) -> Dbm:
    n = a.dim
    m = list(a.m)
    for x in clocks:
        for j in range(n):
            m[x * n + j] = m[j]
            m[j * n + x] = m[j * n]
        m[x * n + x] = LE_ZERO
    return Dbm(n, m)


def dbm_free(a: Dbm, clocks: Iterable[int]) -> Dbm:
    n = a.dim
    m = list(a.m)
    for x in clocks:
        for j in range(n):
            if j != x:
                m[x * n + j] = INF
                m[j * n + x] = m[j * n]
        m[x] = LE_ZERO
        m[x * n + x] = LE_ZERO
    _close(m, n)
    return Dbm(n, m)


def dbm_subtract(a: Dbm, b: Dbm) -> list[Dbm]:
    """``a \\ b`` as a list of pairwise-disjoint DBMs."""
    if dbm_intersect(a, b) is None:
        return [a]
    n = a.dim
    cur = list(a.m)
    out: list[Dbm] = []
    bm = b.m
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = bm[i * n + j]
            if c >= cur[i * n + j]:
                continue
            piece = list(cur)
            if _constrain(piece, n, j, i, bound_negate(c)):
                out.append(Dbm(n, piece))
            if not _constrain(cur, n, i, j, c):
                return out
    return out


def dbm_extrapolate(a: Dbm, k: int) -> Dbm:
    """Classic maximal-constant extrapolation with one global constant."""
    n = a.dim
    m = list(a.m)
    hi = bound(k, False)
    lo = bound(-k, True)
    changed = False
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            b = m[i * n + j]
            if b >= INF:
                continue
            if i != 0 and b > hi:
                m[i * n + j] = INF
                changed = True
            elif j != 0 and b < lo:
                m[i * n + j] = lo
                changed = True
    if not changed:
        return a
    _close(m, n)
    return Dbm(n, m)


def dbm_from_valuation(vec: Sequence[Fraction]) -> Dbm | None:
    """Smallest DBM containing an integer valuation, or None if not integral."""
    n = len(vec)
    if any(v.denominator != 1 for v in vec):
        return None
    m = [bound(int(vec[i] - vec[j]), False) for i in range(n) for j in range(n)]
    return Dbm(n, m)


# ---------------------------------------------------------------------------
# rational sampling


def _rat_lt(a, b) -> bool:
    # a, b: (value, strict) or None for +inf
    if b is None:
        return a is not None
    if a is None:
        return False
    return a[0] < b[0] or (a[0] == b[0] and a[1] and not b[1])


def _rat_add(a, b):
    if a is None or b is None:
        return None
    return (a[0] + b[0], a[1] or b[1])


def dbm_sample(a: Dbm) -> tuple[Fraction, ...]:
    """Deterministic rational point of ``a``.

    Clocks are fixed in index order at their smallest feasible value; a strict
    lower bound is left by ``min(1/2, width/2)``.
    """
    n = a.dim
    r = [None if b >= INF else (Fraction(b >> 1), not (b & 1)) for b in a.m]
    vec = [Fraction(0)] * n
    for x in range(1, n):
        lo = r[x]  # -x_x ≺ lo
        hi = r[x * n]  # x_x ≺ hi
        low = -lo[0]
        if not lo[1]:
            v = low
        else:
            step = Fraction(1, 2)
            if hi is not None:
                step = min(step, (hi[0] - low) / 2)
            v = low + step
        vec[x] = v
        r[x * n] = (v, False)
        r[x] = (-v, False)
        for k in (x,):
            for i in range(n):
                ik = r[i * n + k]
                if ik is None:
                    continue
                for j in range(n):
                    s = _rat_add(ik, r[k * n + j])
                    if _rat_lt(s, r[i * n + j]):
                        r[i * n + j] = s
        # second pass through row/column 0 keeps later lower bounds exact
        for i in range(n):
            for j in range(n):
                s = _rat_add(r[i * n + x], r[x * n + j])
                if _rat_lt(s, r[i * n + j]):
                    r[i * n + j] = s
    return tuple(vec)


# ---------------------------------------------------------------------------
# federations


def _reduce(parts: Iterable[Dbm]) -> tuple[Dbm, ...]:
    uniq = sorted(set(parts))
    keep: list[Dbm] = []
    for idx, p in enumerate(uniq):
        if any(q is not p and p.leq(q) and (not q.leq(p) or jdx < idx)
               for jdx, q in enumerate(uniq)):
            continue
        keep.append(p)
    return tuple(keep)


class Federation:
    """A finite union of canonical DBMs over a clock space."""

    __slots__ = ("clocks", "parts")

    def __init__(self, clocks: ClockSpace, parts: Iterable[Dbm] = ()):
        self.clocks = clocks
        self.parts = _reduce(parts)

    # -- constructors
    @classmethod
    def universe(cls, clocks: ClockSpace) -> "Federation":
        return cls(clocks, [dbm_universe(clocks.dim)])

    @classmethod
    def empty(cls, clocks: ClockSpace) -> "Federation":
        return cls(clocks, [])

    @classmethod
    def constraint(cls, clocks: ClockSpace, i: int, j: int, b: int) -> "Federation":
        """The set ``{ν | x_i - x_j ≺ b}`` (with all clocks non-negative)."""
        d = dbm_constrain(dbm_universe(clocks.dim), i, j, b)
        return cls(clocks, [] if d is None else [d])

    @classmethod
    def point(cls, clocks: ClockSpace, valuation: Mapping[str, Fraction]) -> "Federation":
        d = dbm_from_valuation(clocks.vector(valuation))
        if d is None:
            raise ZoneError("only integer valuations are representable as zones")
        return cls(clocks, [d])

    def _check(self, other: "Federation"):
        if self.clocks != other.clocks:
            raise ZoneError(f"clock spaces differ: {self.clocks.names} vs {other.clocks.names}")

    @property
    def dim(self) -> int:
        return self.clocks.dim

    # -- set algebra
    def union(self, other: "Federation") -> "Federation":
        self._check(other)
        return Federation(self.clocks, self.parts + other.parts)

    def intersect(self, other: "Federation") -> "Federation":
        self._check(other)
        out = []
        for a in self.parts:
            for b in other.parts:
                c = dbm_intersect(a, b)
                if c is not None:
                    out.append(c)
        return Federation(self.clocks, out)

    def subtract(self, other: "Federation") -> "Federation":
        self._check(other)
        cur = list(self.parts)
        for b in other.parts:
            nxt = []
            for a in cur:
                nxt.extend(dbm_subtract(a, b))
            cur = list(_reduce(nxt))
            if not cur:
                break
        return Federation(self.clocks, cur)

    def complement(self) -> "Federation":
        return Federation.universe(self.clocks).subtract(self)

    __or__ = union
    __and__ = intersect
    __sub__ = subtract
    __invert__ = complement

    def is_empty(self) -> bool:
        return not self.parts

    def includes(self, other: "Federation") -> bool:
        """``other ⊆ self``."""
        self._check(other)
        if all(any(b.leq(a) for a in self.parts) for b in other.parts):
            return True
        return other.subtract(self).is_empty()

    def equals(self, other: "Federation") -> bool:
        return self.includes(other) and other.includes(self)

    def __eq__(self, other):
        return isinstance(other, Federation) and self.clocks == other.clocks and self.equals(other)

    def __hash__(self):  # semantic equality has no cheap hash
        return hash(self.clocks)

    # -- time and resets
    def past(self) -> "Federation":
        return Federation(self.clocks, [dbm_down(p) for p in self.parts])

    def future(self) -> "Federation":
        return Federation(self.clocks, [dbm_up(p) for p in self.parts])

    def reset(self, clocks: Iterable[str]) -> "Federation":
        idx = self.clocks.indices(clocks)
        if not idx:
            return self
        return Federation(self.clocks, [dbm_reset(p, idx) for p in self.parts])

    def free(self, clocks: Iterable[str]) -> "Federation":
        idx = self.clocks.indices(clocks)
        if not idx:
            return self
        return Federation(self.clocks, [dbm_free(p, idx) for p in self.parts])

    def inverse_reset(self, clocks: Iterable[str]) -> "Federation":
        """``{ν | ν[R↦0] ∈ self}`` computed as ``free_R(self ∩ ⋀ R = 0)``."""
        clocks = tuple(clocks)
        idx = self.clocks.indices(clocks)
        if not idx:
            return self
        zero = Federation.universe(self.clocks)
        for x in idx:
            zero = zero.intersect(Federation.constraint(self.clocks, x, 0, LE_ZERO))
        return self.intersect(zero).free(clocks)

    def extrapolate(self, k: int) -> "Federation":
        return Federation(self.clocks, [dbm_extrapolate(p, k) for p in self.parts])

    # -- points
    def contains(self, valuation: Mapping[str, Fraction]) -> bool:
        vec = self.clocks.vector(valuation)
        return any(p.contains(vec) for p in self.parts)

    def __contains__(self, valuation):
        return self.contains(valuation)

    def sample(self) -> dict[str, Fraction] | None:
        if not self.parts:
            return None
        return self.clocks.valuation(dbm_sample(self.parts[0]))

    def delay_window(self, valuation: Mapping[str, Fraction], strict_positive: bool = False):
        """Smallest delay ``δ`` (>= 0, or > 0) with ``ν + δ`` in the set, as a Fraction.

        Returns None when no such delay exists.  Among feasible delays the
        infimum is returned if attained, otherwise the infimum nudged inward
        like :meth:`sample`.
        """
        vec = self.clocks.vector(valuation)
        best = None
        for p in self.parts:
            d = _dbm_delay(p, vec, strict_positive)
            if d is not None and (best is None or d < best):
                best = d
        return best

    # -- misc
    def max_constant(self) -> int:
        return max((p.max_constant() for p in self.parts), default=0)

    def is_canonical(self) -> bool:
        return all(p.is_canonical() for p in self.parts)

    def __repr__(self):
        from .syntax import print_guard  # local import: syntax depends on zones

        return f"Federation({print_guard(fed_to_guard(self))!r})"

    def __iter__(self) -> Iterator[Dbm]:
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def _dbm_delay(p: Dbm, vec: Sequence[Fraction], strict_positive: bool) -> Fraction | None:
    n = p.dim
    lo = Fraction(0)
    lo_strict = strict_positive
    hi = None
    hi_strict = False
    for i in range(1, n):
        for j in range(1, n):
            if i == j:
                continue
            b = p[i, j]
            if b >= INF:
                continue
            diff = vec[i] - vec[j]
            v = b >> 1
            if diff > v or (diff == v and not (b & 1)):
                return None
    for i in range(1, n):
        b = p[i, 0]  # x_i + δ ≺ b
        if b < INF:
            cand = (b >> 1) - vec[i]
            strict = not (b & 1)
            if hi is None or cand < hi or (cand == hi and strict):
                hi, hi_strict = cand, strict
        b = p[0, i]  # -(x_i + δ) ≺ b  i.e.  δ ≻ -b - x_i
        cand = -(b >> 1) - vec[i]
        strict = not (b & 1)
        if cand > lo or (cand == lo and strict):
            lo, lo_strict = cand, strict
    if hi is not None:
        if hi < lo or (hi == lo and (hi_strict or lo_strict)):
            return None
    if not lo_strict:
        return lo
    step = Fraction(1, 2)
    if hi is not None:
        step = min(step, (hi - lo) / 2)
    return lo + step


# ---------------------------------------------------------------------------
# diagonal-aware normalisation


def split_normalize(d: Dbm, k: int, diagonals: Sequence[tuple[int, int, int]]) -> list[Dbm]:
    """Extrapolate ``d`` soundly in presence of diagonal constraints.

    The zone is first split along every diagonal constraint ``x_i - x_j ≺ b``
    so each piece decides it; each piece is then extrapolated and re-restricted
    to the side of each constraint it lies on.
    """
    pieces = [d]
    for i, j, b in diagonals:
        nxt = []
        for z in pieces:
            yes = dbm_constrain(z, i, j, b)
            no = dbm_constrain(z, j, i, bound_negate(b))
            if yes is not None and no is not None:
                nxt.extend((yes, no))
            else:
                nxt.append(z)
        pieces = nxt
    out = []
    for z in pieces:
        e = dbm_extrapolate(z, k)
        for i, j, b in diagonals:
            if dbm_constrain(z, j, i, bound_negate(b)) is None:
                e = dbm_constrain(e, i, j, b)
            else:
                e = dbm_constrain(e, j, i, bound_negate(b))
            if e is None:
                break
        if e is not None:
            out.append(e)
    return out


# ---------------------------------------------------------------------------
# guards <-> federations


def fed_from_guard(guard, clocks: ClockSpace) -> Federation:
    """Exact set of valuations satisfying ``guard``."""
    from . import syntax as S

    if isinstance(guard, S.TrueG):
        return Federation.universe(clocks)
    if isinstance(guard, S.Not):
        return fed_from_guard(guard.arg, clocks).complement()
    if isinstance(guard, S.And):
        return fed_from_guard(guard.left, clocks).intersect(fed_from_guard(guard.right, clocks))
    if isinstance(guard, S.Or):
        return fed_from_guard(guard.left, clocks).union(fed_from_guard(guard.right, clocks))
    if isinstance(guard, S.Atom):
        return _fed_atom(clocks, clocks.index(guard.clock), 0, guard.op, guard.const)
    if isinstance(guard, S.DiagAtom):
        return _fed_atom(clocks, clocks.index(guard.left), clocks.index(guard.right),
                         guard.op, guard.const)
    raise TypeError(f"not a guard: {guard!r}")


def _fed_atom(clocks: ClockSpace, i: int, j: int, op: str, c: int) -> Federation:
    # x_i - x_j op c
    C = Federation.constraint
    if op == "<":
        return C(clocks, i, j, bound(c, True))
    if op == "<=":
        return C(clocks, i, j, bound(c, False))
    if op == ">":
        return C(clocks, j, i, bound(-c, True))
    if op == ">=":
        return C(clocks, j, i, bound(-c, False))
    if op == "==":
        return C(clocks, i, j, bound(c, False)).intersect(C(clocks, j, i, bound(-c, False)))
    raise ValueError(f"bad comparison {op!r}")


def minimal_constraints(d: Dbm) -> list[tuple[int, int, int]]:
    """A smallest subset of the entries of ``d`` whose closure is ``d``."""
    n = d.dim
    cands = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            b = d[i, j]
            if b >= INF or (i == 0 and b == LE_ZERO):
                continue
            cands.append((i, j, b))
    keep = list(cands)
    for c in cands:
        trial = [x for x in keep if x != c]
        m = _universe(n)
        for i, j, b in trial:
            if b < m[i * n + j]:
                m[i * n + j] = b
        if _close(m, n) and tuple(m) == d.m:
            keep = trial
    return keep


def fed_to_guard(fed: Federation):
    """A guard whose semantics is exactly ``fed``."""
    from . import syntax as S

    if fed.is_empty():
        return S.Not(S.TrueG())
    names = fed.clocks.names
    disjuncts = []
    for d in fed.parts:
        cons = minimal_constraints(d)
        used = set()
        atoms = []
        lookup = {(i, j): b for i, j, b in cons}
        for i, j, b in cons:
            if (i, j) in used:
                continue
            used.add((i, j))
            rev = lookup.get((j, i))
            if rev is not None and bound_value(rev) == -bound_value(b) \
                    and not bound_is_strict(b) and not bound_is_strict(rev):
                used.add((j, i))
                atoms.append(_atom(names, i, j, "==", bound_value(b)))
                continue
            atoms.append(_atom(names, i, j, "<" if bound_is_strict(b) else "<=", bound_value(b)))
        if not atoms:
            return S.TrueG()
        disjuncts.append(S.conj(atoms))
    return S.disj(disjuncts)


_FLIP = {"<": ">", "<=": ">=", "==": "=="}


def _atom(names, i: int, j: int, op: str, v: int):
    """Guard atom for ``x_i - x_j op v`` with a natural constant."""
    from . import syntax as S

    if j == 0:
        return S.Atom(names[i - 1], op, v)
    if i == 0:  # -x_j op v  <=>  x_j flip(op) -v
        return S.Atom(names[j - 1], _FLIP[op], -v)
    if v >= 0:
        return S.DiagAtom(names[i - 1], names[j - 1], op, v)
    return S.DiagAtom(names[j - 1], names[i - 1], _FLIP[op], -v)


# module-level aliases mirroring the operation names


def past(f: Federation) -> Federation:
    return f.past()


def inverse_reset(f: Federation, clocks: Iterable[str]) -> Federation:
    return f.inverse_reset(clocks)


def union(f: Federation, g: Federation) -> Federation:
    return f.union(g)


def intersect(f: Federation, g: Federation) -> Federation:
    return f.intersect(g)


def subtract(f: Federation, g: Federation) -> Federation:
    return f.subtract(g)


def complement(f: Federation) -> Federation:
    return f.complement()


def is_empty(f: Federation) -> bool:
    return f.is_empty()


def includes(f: Federation, g: Federation) -> bool:
    return f.includes(g)


def sample(f: Federation) -> dict[str, Fraction] | None:
    return f.sample()
