"""Brute-force membership on a rational grid for two-clock federations.

Guards use constants <= 5 over clocks x, y.  Membership of a valuation with
denominator 3 in ``past(F)`` only needs delays on the 1/6 grid: the ray
crosses region boundaries at multiples of 1/3, and the 1/6 grid hits every
boundary and every open stretch between two of them.
"""

from helpers import compile_guard, dbm_member, region_closed
from tstkit.zones import ClockSpace, Federation

CS = ClockSpace.of(["x", "y"])
NAMES = CS.names
K = 5
SCALE = 6  # grid points have denominator 3, past rays need steps of 1/6
STEP = SCALE // 3
POINTS = [(a, b) for a in range(0, 6 * SCALE + 1, STEP) for b in range(0, 6 * SCALE + 1, STEP)]
LINES: dict = {}
for _a, _b in POINTS:
    LINES.setdefault(_a - _b, []).append((_a, _b))


def members(f: Federation) -> set:
    inside = dbm_member(f, SCALE)
    return {p for p in POINTS if inside(p)}


def truth(g) -> set:
    ok = compile_guard(g, NAMES, SCALE)
    return {p for p in POINTS if ok(p)}


def bounded(f: Federation) -> bool:
    return f.is_canonical() and region_closed(f, K)


def past_truth(g) -> set:
    """Walk each diagonal line downwards in 1/6 steps, starting where both
    clocks exceed K (further delay changes no atom)."""
    ok = compile_guard(g, NAMES, SCALE)
    out = set()
    for diff, pts in LINES.items():
        x = max(K * SCALE + max(diff, 0) + 1, max(a for a, _ in pts))
        seen = False
        hit = {}
        while x >= max(diff, 0):
            seen = seen or ok((x, x - diff))
            hit[x] = seen
            x -= 1
        out.update(p for p in pts if hit[p[0]])
    return out
