"""Timed session types: compliance, kinds, duals, subtyping and monitoring."""

from .kinding import admits_compliant, dual, kind_infer, subtype
from .monitor import replay
from .semantics import oracle_compliant
from .syntax import parse, print_tst, to_denf, validate
from .verify import compliant

__all__ = [
    "admits_compliant", "compliant", "dual", "kind_infer", "oracle_compliant",
    "parse", "print_tst", "replay", "subtype", "to_denf", "validate",
]
