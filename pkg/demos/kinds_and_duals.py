"""Which types have a compliant partner, and what is the best one?

The kind of a TST is the set of clock valuations from which it can still be
completed by some partner.  A type admits a partner iff the initial
valuation is in its kind; the dual then builds the most permissive partner,
and subtyping compares types by the partners they accept.
"""

from tstkit import compliant, dual, parse, print_tst
from tstkit.kinding import admits_compliant, kind_guard, kind_infer, subtype

examples = {
    "two reads, second tighter": "?a{x<=2} . ?b{x<=1}",
    "two writes, second tighter": "!a{x<=2} . !b{x<=1}",
    "a choice with a dead branch": "!a{x<=2} (+) !b{x<=1} . ?a{x<=0}",
    "a loop that never resets y": "rec X . ?a{x<=1 && y<=1} . !a{x<=1;x} . X",
}

for title, text in examples.items():
    p = parse(text)
    ok, k = admits_compliant(p)
    print(f"{title}\n  {text}\n  kind: {kind_guard(k)}  admits a partner: {ok}")
    if ok:
        d = dual(p)
        print(f"  dual: {print_tst(d)}  (compliant: {compliant(p, d).compliant})")

# The fixpoint for a recursive type, iterate by iterate.
trace = []
kind_infer(parse(examples["a loop that never resets y"]), trace=trace)
for var, iterates in trace:
    print(f"\niterates for {var}:", " -> ".join(kind_guard(k) for k in iterates))

# Subtyping: a service that answers sooner can replace a slower one, but not
# the other way round.  Both start their clock when the request arrives.
slow = parse("?req{;x} . !resp{x<5}")
fast = parse("?req{;x} . !resp{x<2}")
print("\nfast <= slow:", subtype(fast, slow), "  slow <= fast:", subtype(slow, fast))
