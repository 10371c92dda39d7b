"""Runtime monitoring with blame.

A sends a within (2, 4); B accepts a or b within (2, 5).  The monitor follows
a concrete timed trace and, when something goes wrong, names who is to blame.
"""

from fractions import Fraction

from tstkit import parse, print_tst, replay
from tstkit.monitor import Act, Tick, parse_trace

p = parse("!a{2<t && t<4}")
q = parse("?a{2<t' && t'<5} + ?b{2<t' && t'<5}")

traces = {
    "on time": "delay 2.2\nA !a\nB ?a\n",
    "A too early": "delay 1\nA !a\n",
    "A never sends": "delay 6\n",
    "B never reads": "delay 2.2\nA !a\ndelay 4\n",
    "absolute stamps": "@2.5 A !a\n@2.5 B ?a\n",
    # a buffered message must be read before any time passes
    "B reads late": "@2.5 A !a\n@3 B ?a\n",
}

for title, text in traces.items():
    r = replay(p, q, parse_trace(text))
    verdict = "success" if r.success else f"culpable: {', '.join(r.culpable) or 'nobody'}"
    print(f"{title:16} {verdict:14} on duty: {r.on_duty or '-'}")

# Walking through a run step by step shows whose turn it is.
r = replay(p, q, [Tick(Fraction(3)), Act("A", "!a"), Act("B", "?b")])
print("\nstep by step:")
for event, conf in r.steps:
    print(f"  after {str(event):9}  A: {print_tst(conf.A.term):16} B: {print_tst(conf.B.term):40}"
          f" buffers {conf.A.buffer or '-'}/{conf.B.buffer or '-'}")
