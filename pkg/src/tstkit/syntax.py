"""Guards and timed session types: AST, parser, printer, DENF.

Concrete syntax::

    1                         success
    X                         recursion variable
    rec X . p                 recursion
    !a{g ; x,y} . p           output prefix (guard g, resets x,y)
    ?a{g} . p (+) ...         ``(+)`` separates internal (output) branches
    ?a . p + ?b . q           ``+`` separates external (input) branches

Guards use ``x<5``, ``x-y>=2``, ``5<x<10``, ``&&``, ``||``, ``!(...)`` and
``true``.  ``//`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

# ---------------------------------------------------------------------------
# guards

OPS = ("<", "<=", "==", ">=", ">")


@dataclass(frozen=True)
class TrueG:
    pass


@dataclass(frozen=True)
class Not:
    arg: "Guard"


@dataclass(frozen=True)
class And:
    left: "Guard"
    right: "Guard"


@dataclass(frozen=True)
class Or:
    left: "Guard"
    right: "Guard"


@dataclass(frozen=True)
class Atom:
    clock: str
    op: str
    const: int


@dataclass(frozen=True)
class DiagAtom:
    left: str
    right: str
    op: str
    const: int


Guard = Union[TrueG, Not, And, Or, Atom, DiagAtom]
TRUE = TrueG()


def conj(gs: Iterable[Guard]) -> Guard:
    gs = [g for g in gs if not isinstance(g, TrueG)]
    if not gs:
        return TRUE
    out = gs[0]
    for g in gs[1:]:
        out = And(out, g)
    return out


def disj(gs: Iterable[Guard]) -> Guard:
    gs = list(gs)
    if not gs:
        return Not(TRUE)
    out = gs[0]
    for g in gs[1:]:
        out = Or(out, g)
    return out


def _cmp(lhs: Fraction, op: str, c) -> bool:
    if op == "<":
        return lhs < c
    if op == "<=":
        return lhs <= c
    if op == "==":
        return lhs == c
    if op == ">=":
        return lhs >= c
    return lhs > c


def eval_guard(g: Guard, valuation: Mapping[str, Fraction]) -> bool:
    """Direct truth of ``g`` at a valuation (no zone machinery)."""
    if isinstance(g, TrueG):
        return True
    if isinstance(g, Not):
        return not eval_guard(g.arg, valuation)
    if isinstance(g, And):
        return eval_guard(g.left, valuation) and eval_guard(g.right, valuation)
    if isinstance(g, Or):
        return eval_guard(g.left, valuation) or eval_guard(g.right, valuation)
    if isinstance(g, Atom):
        return _cmp(valuation[g.clock], g.op, g.const)
    return _cmp(valuation[g.left] - valuation[g.right], g.op, g.const)


def guard_clocks(g: Guard) -> set[str]:
    if isinstance(g, TrueG):
        return set()
    if isinstance(g, Not):
        return guard_clocks(g.arg)
    if isinstance(g, (And, Or)):
        return guard_clocks(g.left) | guard_clocks(g.right)
    if isinstance(g, Atom):
        return {g.clock}
    return {g.left, g.right}


def guard_max_constant(g: Guard) -> int:
    if isinstance(g, (Atom, DiagAtom)):
        return g.const
    if isinstance(g, Not):
        return guard_max_constant(g.arg)
    if isinstance(g, (And, Or)):
        return max(guard_max_constant(g.left), guard_max_constant(g.right))
    return 0


def guard_diagonals(g: Guard) -> set[DiagAtom]:
    if isinstance(g, DiagAtom):
        return {g}
    if isinstance(g, Not):
        return guard_diagonals(g.arg)
    if isinstance(g, (And, Or)):
        return guard_diagonals(g.left) | guard_diagonals(g.right)
    return set()


def rename_guard(g: Guard, f) -> Guard:
    if isinstance(g, TrueG):
        return g
    if isinstance(g, Not):
        return Not(rename_guard(g.arg, f))
    if isinstance(g, And):
        return And(rename_guard(g.left, f), rename_guard(g.right, f))
    if isinstance(g, Or):
        return Or(rename_guard(g.left, f), rename_guard(g.right, f))
    if isinstance(g, Atom):
        return Atom(f(g.clock), g.op, g.const)
    return DiagAtom(f(g.left), f(g.right), g.op, g.const)


def print_guard(g: Guard) -> str:
    return _pg(g, 0)


def _pg(g: Guard, prec: int) -> str:
    # prec: 0 = or-level, 1 = and-level, 2 = atomic
    if isinstance(g, TrueG):
        return "true"
    if isinstance(g, Atom):
        return f"{g.clock}{g.op}{g.const}"
    if isinstance(g, DiagAtom):
        return f"{g.left}-{g.right}{g.op}{g.const}"
    if isinstance(g, Not):
        return "false" if isinstance(g.arg, TrueG) else f"!({_pg(g.arg, 0)})"
    if isinstance(g, And):
        s = f"{_pg(g.left, 1)} && {_pg(g.right, 2 if isinstance(g.right, And) else 1)}"
        return f"({s})" if prec > 1 else s
    s = f"{_pg(g.left, 0)} || {_pg(g.right, 1 if isinstance(g.right, Or) else 0)}"
    return f"({s})" if prec > 0 else s


# ---------------------------------------------------------------------------
# timed session types


@dataclass(frozen=True)
class Branch:
    action: str
    guard: Guard = TRUE
    resets: tuple[str, ...] = ()
    cont: "Tst" = None  # filled with Success by the constructors

    def __post_init__(self):
        object.__setattr__(self, "resets", tuple(sorted(set(self.resets))))
        if self.cont is None:
            object.__setattr__(self, "cont", SUCCESS)


@dataclass(frozen=True)
class Success:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Tst"


@dataclass(frozen=True)
class Internal:
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class External:
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class Committed:
    """A committed internal choice; arises only at runtime."""

    branch: Branch


@dataclass(frozen=True)
class Culpable:
    """The ⊥ marker of a monitored endpoint that violated its type."""


Tst = Union[Success, Var, Rec, Internal, External]
SUCCESS = Success()
CULPABLE = Culpable()


def out(action, guard=TRUE, resets=(), cont=SUCCESS) -> Internal:
    return Internal((Branch(action, guard, tuple(resets), cont),))


def inp(action, guard=TRUE, resets=(), cont=SUCCESS) -> External:
    return External((Branch(action, guard, tuple(resets), cont),))


def is_choice(p) -> bool:
    return isinstance(p, (Internal, External))


def branches_of(p) -> tuple[Branch, ...]:
    return p.branches if is_choice(p) else ()


def _children(p: Tst) -> Iterator[Tst]:
    if isinstance(p, Rec):
        yield p.body
    elif is_choice(p):
        for b in p.branches:
            yield b.cont


def subterms(p: Tst) -> Iterator[Tst]:
    yield p
    for c in _children(p):
        yield from subterms(c)


def all_branches(p: Tst) -> Iterator[tuple[str, Branch]]:
    for s in subterms(p):
        if isinstance(s, Internal):
            for b in s.branches:
                yield "!", b
        elif isinstance(s, External):
            for b in s.branches:
                yield "?", b


def clocks(p: Tst) -> set[str]:
    out_ = set()
    for _, b in all_branches(p):
        out_ |= guard_clocks(b.guard) | set(b.resets)
    return out_


def max_constant(p: Tst) -> int:
    return max((guard_max_constant(b.guard) for _, b in all_branches(p)), default=0)


def has_diagonals(p: Tst) -> bool:
    return any(guard_diagonals(b.guard) for _, b in all_branches(p))


def free_vars(p: Tst) -> set[str]:
    if isinstance(p, Var):
        return {p.name}
    if isinstance(p, Rec):
        return free_vars(p.body) - {p.var}
    if is_choice(p):
        return set().union(*(free_vars(b.cont) for b in p.branches))
    return set()


def all_vars(p: Tst) -> set[str]:
    out_ = set()
    for s in subterms(p):
        if isinstance(s, Var):
            out_.add(s.name)
        elif isinstance(s, Rec):
            out_.add(s.var)
    return out_


def map_branches(p: Tst, f) -> Tst:
    """Rebuild ``p`` applying ``f(polarity, branch, new_cont)`` to every branch."""
    if isinstance(p, Rec):
        return Rec(p.var, map_branches(p.body, f))
    if isinstance(p, Internal):
        return Internal(tuple(f("!", b, map_branches(b.cont, f)) for b in p.branches))
    if isinstance(p, External):
        return External(tuple(f("?", b, map_branches(b.cont, f)) for b in p.branches))
    return p


def rename_clocks(p: Tst, suffix: str) -> Tst:
    ren = lambda c: c + suffix  # noqa: E731
    return map_branches(p, lambda _pol, b, k: Branch(
        b.action, rename_guard(b.guard, ren), tuple(ren(r) for r in b.resets), k))


def substitute(p: Tst, name: str, q: Tst) -> Tst:
    """``p{name ↦ q}``; capture-free when ``q`` is closed."""
    if isinstance(p, Var):
        return q if p.name == name else p
    if isinstance(p, Rec):
        if p.var == name:
            return p
        if p.var in free_vars(q):
            fresh = _fresh_name(p.var, all_vars(p) | all_vars(q) | {name})
            body = substitute(p.body, p.var, Var(fresh))
            return Rec(fresh, substitute(body, name, q))
        return Rec(p.var, substitute(p.body, name, q))
    if isinstance(p, Internal):
        return Internal(tuple(replace(b, cont=substitute(b.cont, name, q)) for b in p.branches))
    if isinstance(p, External):
        return External(tuple(replace(b, cont=substitute(b.cont, name, q)) for b in p.branches))
    return p


def _fresh_name(base: str, used: set[str]) -> str:
    k = 1
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def unfold(p: Tst) -> Tst:
    if isinstance(p, Rec):
        return substitute(p.body, p.var, p)
    return p


def head(p: Tst) -> Tst:
    """Unfold until the term is not a ``rec``."""
    seen = 0
    while isinstance(p, Rec):
        p = unfold(p)
        seen += 1
        if seen > 64:
            raise ValueError("unguarded recursion")
    return p


# ---------------------------------------------------------------------------
# validation


class TstSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


class ValidationError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def validate(p: Tst, closed: bool = True) -> list[str]:
    """All well-formedness violations of ``p`` (empty list when valid)."""
    errs: list[str] = []

    def walk(t: Tst):
        if isinstance(t, Rec):
            if isinstance(t.body, (Var, Rec)):
                errs.append(f"unguarded recursion in rec {t.var}")
            walk(t.body)
        elif is_choice(t):
            if not t.branches:
                errs.append("empty choice")
            seen = set()
            for b in t.branches:
                if b.action in seen:
                    errs.append(f"duplicate action in choice: {b.action}")
                seen.add(b.action)
                walk(b.cont)

    walk(p)
    if closed:
        for v in sorted(free_vars(p)):
            errs.append(f"free variable {v}")
    return errs


# ---------------------------------------------------------------------------
# lexer / parser

_TOKEN = re.compile(r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<isep>\(\+\))
  | (?P<op><=|>=|==|<|>|=)
  | (?P<and>&&) | (?P<or>\|\|)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[!?{}();,.+\-])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TstSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            k = m.group()
            toks.append(_Tok(kind if kind != "sym" else k, k, line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str):
        t = self.tok
        raise TstSyntaxError(f"{msg} (found {t.text or 'end of input'!r})", t.line, t.col)

    def eat(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    # tst := "rec" X "." tst | choice | unit
    def tst(self) -> Tst:
        t = self.tok
        if t.kind == "ident" and t.text == "rec":
            self.i += 1
            name = self.eat("ident").text
            self.eat(".")
            return Rec(name, self.tst())
        if t.kind in ("!", "?"):
            return self.choice()
        return self.unit()

    def unit(self) -> Tst:
        t = self.tok
        if t.kind == "num" and t.text == "1":
            self.i += 1
            return SUCCESS
        if t.kind == "ident" and t.text != "rec":
            self.i += 1
            return Var(t.text)
        if t.kind == "(":
            self.i += 1
            p = self.tst()
            self.eat(")")
            return p
        if t.kind == "ident":
            return self.tst()
        if t.kind in ("!", "?"):
            pol, b = self.branch()
            return Internal((b,)) if pol == "!" else External((b,))
        self.error("expected a session type")

    def choice(self) -> Tst:
        first = self.tok
        pol, b = self.branch()
        bs = [b]
        sep = None
        while self.tok.kind in ("isep", "+"):
            s = self.tok
            if sep is None:
                sep = s.kind
                want = "isep" if pol == "!" else "+"
                if sep != want:
                    raise TstSyntaxError(
                        "'(+)' separates outputs and '+' separates inputs", s.line, s.col)
            elif s.kind != sep:
                raise TstSyntaxError("mixed choice separators", s.line, s.col)
            self.i += 1
            bt = self.tok
            pol2, b2 = self.branch()
            if pol2 != pol:
                raise TstSyntaxError("mixed polarities in one choice", bt.line, bt.col)
            bs.append(b2)
        del first
        return Internal(tuple(bs)) if pol == "!" else External(tuple(bs))

    def branch(self) -> tuple[str, Branch]:
        pol = self.tok.kind
        if pol not in ("!", "?"):
            self.error("expected '!' or '?'")
        self.i += 1
        action = self.eat("ident").text
        guard, resets = TRUE, ()
        if self.tok.kind == "{":
            guard, resets = self.annotation()
        cont = SUCCESS
        if self.accept("."):
            cont = self.unit()
        return pol, Branch(action, guard, resets, cont)

    def annotation(self):
        self.eat("{")
        guard = TRUE
        if self.tok.kind not in (";", "}"):
            guard = self.guard()
        resets = []
        if self.accept(";"):
            if self.tok.kind == "ident":
                resets.append(self.eat("ident").text)
                while self.accept(","):
                    resets.append(self.eat("ident").text)
        self.eat("}")
        return guard, tuple(resets)

    # guard := conj ("||" conj)* ; conj := gatom ("&&" gatom)*
    def guard(self) -> Guard:
        g = self.gconj()
        while self.accept("or"):
            g = Or(g, self.gconj())
        return g

    def gconj(self) -> Guard:
        g = self.gatom()
        while self.accept("and"):
            g = And(g, self.gatom())
        return g

    def gatom(self) -> Guard:
        t = self.tok
        if t.kind == "!":
            self.i += 1
            self.eat("(")
            g = self.guard()
            self.eat(")")
            return Not(g)
        if t.kind == "(":
            self.i += 1
            g = self.guard()
            self.eat(")")
            return g
        if t.kind == "ident" and t.text in ("true", "false"):
            self.i += 1
            return TRUE if t.text == "true" else Not(TRUE)
        if t.kind == "num":
            # c op x [op c']
            c = int(self.eat("num").text)
            op = _norm_op(self.eat("op").text)
            x = self.eat("ident").text
            g = Atom(x, _FLIP[op], c)
            if self.tok.kind == "op":
                op2 = _norm_op(self.eat("op").text)
                g = And(g, Atom(x, op2, int(self.eat("num").text)))
            return g
        if t.kind == "ident":
            x = self.eat("ident").text
            if self.accept("-"):
                y = self.eat("ident").text
                op = _norm_op(self.eat("op").text)
                return DiagAtom(x, y, op, int(self.eat("num").text))
            op = _norm_op(self.eat("op").text)
            return Atom(x, op, int(self.eat("num").text))
        self.error("expected a guard")


_FLIP = {"<": ">", "<=": ">=", "==": "==", ">=": "<=", ">": "<"}


def _norm_op(op: str) -> str:
    return "==" if op == "=" else op


def strip_comments(text: str) -> str:
    return re.sub(r"//[^\n]*", "", text)


def parse(text: str, check: bool = True) -> Tst:
    """Parse a TST; with ``check`` also validate it as a closed term."""
    p = _Parser(text)
    t = p.tst()
    if p.tok.kind != "eof":
        p.error("unexpected trailing input")
    if check:
        errs = validate(t)
        if errs:
            raise ValidationError(errs)
    return t


def parse_guard(text: str) -> Guard:
    p = _Parser(text)
    g = p.guard()
    if p.tok.kind != "eof":
        p.error("unexpected trailing input")
    return g


# ---------------------------------------------------------------------------
# printer


def print_tst(p) -> str:
    if isinstance(p, Success):
        return "1"
    if isinstance(p, Culpable):
        return "⊥"
    if isinstance(p, Var):
        return p.name
    if isinstance(p, Rec):
        return f"rec {p.var} . {print_tst(p.body)}"
    if isinstance(p, Committed):
        return "[" + _print_branch("!", p.branch) + "]"
    pol = "!" if isinstance(p, Internal) else "?"
    sep = " (+) " if pol == "!" else " + "
    return sep.join(_print_branch(pol, b) for b in p.branches)


def _print_branch(pol: str, b: Branch) -> str:
    s = pol + b.action
    g = "" if isinstance(b.guard, TrueG) else print_guard(b.guard)
    if g or b.resets:
        s += "{" + g + (";" + ",".join(b.resets) if b.resets else "") + "}"
    k = b.cont
    if isinstance(k, Success):
        return s
    body = print_tst(k)
    if isinstance(k, Rec) or (is_choice(k) and len(k.branches) > 1):
        body = f"({body})"
    return f"{s} . {body}"


# ---------------------------------------------------------------------------
# DENF


@dataclass(frozen=True)
class DBranch:
    action: str
    guard: Guard
    resets: tuple[str, ...]
    target: str


@dataclass(frozen=True)
class DBody:
    """Right-hand side of a defining equation: ``kind`` is '1', '!' or '?'."""

    kind: str
    branches: tuple[DBranch, ...] = ()


@dataclass(frozen=True)
class Denf:
    start: str
    equations: dict = field(hash=False)

    def check(self) -> list[str]:
        errs = []
        if self.start not in self.equations:
            errs.append(f"start {self.start} undefined")
        for x, body in self.equations.items():
            if body.kind not in ("1", "!", "?"):
                errs.append(f"{x}: bad body kind")
            if body.kind != "1" and not body.branches:
                errs.append(f"{x}: empty choice")
            acts = [b.action for b in body.branches]
            if len(set(acts)) != len(acts):
                errs.append(f"{x}: duplicate action")
            for b in body.branches:
                if b.target not in self.equations:
                    errs.append(f"{x}: undefined variable {b.target}")
        return errs

    def reachable(self) -> list[str]:
        seen = [self.start]
        i = 0
        while i < len(seen):
            for b in self.equations[seen[i]].branches:
                if b.target not in seen:
                    seen.append(b.target)
            i += 1
        return seen

    def to_tst(self, var: str | None = None) -> Tst:
        """Closed TST with the same behaviour from ``var`` (default: start)."""
        return _denf_to_tst(self, var or self.start, ())

    def __str__(self):
        lines = []
        for x in self.reachable():
            body = self.equations[x]
            if body.kind == "1":
                rhs = "1"
            else:
                sep = " (+) " if body.kind == "!" else " + "
                rhs = sep.join(
                    _print_branch(body.kind, Branch(b.action, b.guard, b.resets, Var(b.target)))
                    for b in body.branches)
            lines.append(f"{x} = {rhs}")
        return "\n".join(lines)


def _denf_to_tst(d: Denf, x: str, stack: tuple[str, ...]) -> Tst:
    if x in stack:
        return Var(x)
    body = d.equations[x]
    if body.kind == "1":
        return SUCCESS
    bs = tuple(Branch(b.action, b.guard, b.resets, _denf_to_tst(d, b.target, stack + (x,)))
               for b in body.branches)
    choice = Internal(bs) if body.kind == "!" else External(bs)
    return Rec(x, choice) if x in free_vars(choice) else choice


class FreshVars:
    """Deterministic supply ``P0, P1, ...`` skipping reserved names."""

    def __init__(self, prefix: str = "X", reserved: Iterable[str] = ()):
        self.prefix = prefix
        self.reserved = set(reserved)
        self.n = 0

    def __call__(self) -> str:
        while True:
            name = f"{self.prefix}{self.n}"
            self.n += 1
            if name not in self.reserved:
                return name


def to_denf(p: Tst, fresh: FreshVars | None = None) -> Denf:
    if fresh is None:
        fresh = FreshVars("X", all_vars(p))
    else:
        fresh.reserved |= all_vars(p)
    start, eqs = _nf(p, fresh)
    if start not in eqs:
        raise ValueError(f"to_denf needs a closed term (free variable {start})")
    return Denf(start, eqs)


def _nf(p: Tst, fresh: FreshVars) -> tuple[str, dict]:
    if isinstance(p, Success):
        x = fresh()
        return x, {x: DBody("1")}
    if isinstance(p, Var):
        return p.name, {}
    if isinstance(p, Rec):
        x, eqs = _nf(p.body, fresh)
        return x, _rename_targets(eqs, p.var, x)
    x = fresh()
    eqs: dict = {}
    dbs = []
    for b in p.branches:
        y, sub = _nf(b.cont, fresh)
        eqs.update(sub)
        dbs.append(DBranch(b.action, b.guard, b.resets, y))
    eqs[x] = DBody("!" if isinstance(p, Internal) else "?", tuple(dbs))
    # keep insertion order with the choice's own equation first
    return x, {x: eqs.pop(x), **eqs}


def _rename_targets(eqs: dict, old: str, new: str) -> dict:
    out_ = {}
    for x, body in eqs.items():
        out_[x] = DBody(body.kind, tuple(
            DBranch(b.action, b.guard, b.resets, new if b.target == old else b.target)
            for b in body.branches))
    return out_
