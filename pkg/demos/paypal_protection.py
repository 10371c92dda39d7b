"""PayPal buyer protection against a buyer who waits exactly ten days.

PayPal lets a buyer open a dispute within 180 days and escalate it to a claim
within 20 days, but only after 7 days have passed since payment.  The buyer
pays and then either confirms, or on day 10 files an "item not received"
dispute and immediately claims.  The checker confirms that this strategy is
always honoured, and the timed-automaton encoding shows what it explored.
"""

from importlib import resources

from tstkit import compliant, parse
from tstkit.encoding import encode
from tstkit.syntax import max_constant, to_denf
from tstkit.verify import event_text


def corpus(name):
    return parse((resources.files("tstkit") / "corpus" / f"{name}.tst").read_text())


paypal, buyer = corpus("paypal"), corpus("alice")
print("largest constant in the PayPal contract:", max_constant(paypal))

v = compliant(paypal, buyer)
print("PayPal vs buyer:", "compliant" if v.compliant else "NOT compliant")
print(f"symbolic states explored: {v.states} in {v.seconds:.3f}s")

a = encode(to_denf(paypal))
print(f"PayPal as a timed automaton: {len(a.locations)} locations, {len(a.edges)} edges,"
      f" {len(a.urgent)} urgent")

# Claims are only read after day 7.  A buyer who claims on day 5 commits to a
# message that PayPal cannot receive, and the pair deadlocks.
hasty = parse("""
!pay{;tpay} . (!ok{tpay<10}
  (+) !inr{tpay==5} . !claimINR{tpay==5} . !rcpt{tpay==5} . (?refund + ?notEligible))
""")
v = compliant(paypal, hasty)
print("\nPayPal vs a buyer claiming on day 5:", "compliant" if v.compliant else "NOT compliant")
print("stuck after:", ", ".join(event_text(e) for e in v.trace))
