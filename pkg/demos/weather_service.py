"""A weather service and three would-be clients.

The service reads a zip code, then within 5 to 10 time units after that
answers with the weather, or aborts within 1 unit.  We try it against an
untimed client, a client that resets its clock on sending, and a client with
a hard deadline on the zip code, and print why the timed ones fail.
"""

from tstkit import compliant, parse, print_tst
from tstkit.kinding import admits_compliant, dual, kind_guard
from tstkit.verify import event_text

service = parse("?zip{;x} . (!weather{5<x && x<10} (+) !abort{x<1})")

clients = {
    "untimed": parse("!zip . (?weather + ?abort)"),
    "resetting": parse("!zip{;y} . (?weather{y<7} + ?abort{y<5})"),
    "deadline": parse("!zip{y<10} . (?weather{y<7} + ?abort{y<5})"),
}

untimed_service = parse("?zip . (!weather (+) !abort)")
print("untimed service vs untimed client:",
      compliant(untimed_service, clients["untimed"]).compliant)

for name, client in clients.items():
    v = compliant(service, client)
    print(f"\nservice vs {name} client: {'compliant' if v.compliant else 'NOT compliant'}")
    if not v.compliant:
        print("  a run that gets stuck:")
        for e in v.trace:
            print("   ", event_text(e))

# The deadline client is hopeless: no service at all can satisfy it.
ok, k = admits_compliant(clients["deadline"])
print("\ndeadline client admits some compliant partner:", ok, "| kind:", kind_guard(k))

# The resetting client does admit partners; the canonical one is its dual.
partner = dual(clients["resetting"])
print("canonical partner of the resetting client:", print_tst(partner))
print("and they are compliant:", compliant(partner, clients["resetting"]).compliant)
