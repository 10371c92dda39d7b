import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from helpers import corpus_text, guard_strategy, load, random_tst
from tstkit import syntax as S

CORPUS = ["alice", "commit_p", "commit_q", "customer", "intro_p", "intro_q", "intro_q_prime",
          "kind_q1", "late_p", "late_q", "loop_p", "loop_q", "monitor_p", "monitor_q",
          "nokind_p1", "nokind_p2", "nokind_p3", "paynow", "paypal", "plain_p", "plain_q",
          "rec_p1", "rec_q1", "timing_p", "timing_q_fast", "timing_q_slow", "untimed_p", "untimed_q",
          "zeno_p", "zeno_q"]

random_tsts = st.integers(0, 2**32).map(
    lambda seed: random_tst(random.Random(seed), ("x", "y"), depth=3))


def test_success():
    assert S.parse("1") == S.SUCCESS


def test_intro_example():
    p = S.parse("?zip{;x} . ( !weather{5<x && x<10} (+) !abort{x<1} )")
    assert isinstance(p, S.External)
    (b,) = p.branches
    assert (b.action, b.resets) == ("zip", ("x",))
    assert isinstance(b.cont, S.Internal)
    assert [c.action for c in b.cont.branches] == ["weather", "abort"]
    assert S.eval_guard(b.cont.branches[0].guard, {"x": 7})
    assert not S.eval_guard(b.cont.branches[0].guard, {"x": 5})
    assert p == load("intro_p")


def test_recursive_example():
    p = S.parse("rec X . ( !a (+) !b{x<=1} . ?c . X )")
    assert isinstance(p, S.Rec) and isinstance(p.body, S.Internal)
    assert S.free_vars(p) == set()
    assert S.free_vars(p.body) == {"X"}


def test_chained_and_flipped_guards():
    assert S.parse_guard("5<x<10") == S.parse_guard("x>5 && x<10")
    assert S.parse_guard("c = 2") == S.parse_guard("c==2")
    g = S.parse_guard("!(x<1) || y-x>=2")
    assert S.eval_guard(g, {"x": 0, "y": 3}) and not S.eval_guard(g, {"x": 0, "y": 1})


def test_false_literal():
    assert S.parse_guard("false") == S.Not(S.TRUE)
    assert S.print_guard(S.Not(S.TRUE)) == "false"
    assert not S.eval_guard(S.parse_guard("false || x<0"), {"x": 0})


def test_trailing_branch_defaults_to_success():
    assert S.parse("!a{x<1}") == S.out("a", S.parse_guard("x<1"))
    assert S.parse("?a{}") == S.inp("a")


@pytest.mark.parametrize("text,line", [("!a . ", 1), ("!a{x<} . 1", 1), ("\n\n?a . ?", 3)])
def test_syntax_errors_are_positioned(text, line):
    with pytest.raises(S.TstSyntaxError) as e:
        S.parse(text)
    assert e.value.line == line


def test_mixed_separators_rejected():
    with pytest.raises(S.TstSyntaxError):
        S.parse("!a + !b")
    with pytest.raises(S.TstSyntaxError):
        S.parse("?a (+) ?b")


def test_validation():
    assert any("unguarded recursion" in v for v in S.validate(S.Rec("X", S.Var("X"))))
    assert any("duplicate action in choice" in v
               for v in S.validate(S.parse("!a (+) !a{x<1}", check=False)))
    assert S.validate(S.parse("?a . 1")) == []
    assert any("unguarded" in v
               for v in S.validate(S.parse("rec X . rec Y . !a . X", check=False)))
    assert S.validate(S.Var("X")) == ["free variable X"]
    with pytest.raises(S.ValidationError):
        S.parse("rec X . X")


def test_unfold():
    assert S.unfold(S.SUCCESS) == S.SUCCESS
    p = S.parse("rec X . !a . X")
    assert S.unfold(p) == S.out("a", cont=p)
    p3 = load("nokind_p3")
    u = S.unfold(p3)
    assert isinstance(u, S.External)
    assert p3 in S.subterms(u)


def test_unfold_avoids_capture():
    p = S.parse("rec X . ?a . rec Y . (!b . X (+) !c . Y)")
    inner = p.body.branches[0].cont
    assert S.free_vars(S.unfold(inner)) == S.free_vars(inner) == {"X"}


def test_max_constant():
    assert S.max_constant(S.SUCCESS) == 0
    assert S.max_constant(load("paynow")) == 180
    assert S.max_constant(S.parse("!a{x<=2} . !b{x<=1}")) == 2


def test_rename_clocks():
    p = S.parse("!a{x<1;x} . ?b{x-y>0}")
    assert S.clocks(S.rename_clocks(p, "_R")) == {"x_R", "y_R"}
    assert S.rename_clocks(S.parse("!a . ?b"), "_R") == S.parse("!a . ?b")
    assert S.clocks(load("intro_p")).isdisjoint(S.clocks(load("intro_q_prime")))


def test_denf_flat_choice():
    d = S.to_denf(S.parse("!a (+) !b"))
    assert d.check() == []
    body = d.equations[d.start]
    assert body.kind == "!" and [b.action for b in body.branches] == ["a", "b"]
    targets = [b.target for b in body.branches]
    assert len(set(targets)) == 2
    assert all(d.equations[t].kind == "1" for t in targets)
    assert len(d.equations) == 3


def test_denf_nested_recursion():
    d = S.to_denf(S.parse("rec X . !a . rec Y . (!b . X (+) !c . Y)"))
    assert d.check() == []
    x0 = d.equations[d.start]
    assert x0.kind == "!" and [b.action for b in x0.branches] == ["a"]
    x1 = x0.branches[0].target
    inner = d.equations[x1]
    assert [(b.action, b.target) for b in inner.branches] == [("b", d.start), ("c", x1)]
    assert len(d.reachable()) == 2


def test_denf_success():
    d = S.to_denf(S.SUCCESS)
    assert list(d.equations.values()) == [S.DBody("1")]


def test_denf_is_deterministic():
    p = load("paypal")
    assert str(S.to_denf(p)) == str(S.to_denf(p))


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip(name):
    p = S.parse(corpus_text(name + ".tst"))
    assert S.parse(S.print_tst(p)) == p
    d = S.to_denf(p)
    assert d.check() == []


def _triples(p):
    return Counter((pol, b.action, b.guard, b.resets) for pol, b in S.all_branches(p))


def _denf_triples(d):
    return Counter((body.kind, b.action, b.guard, b.resets)
                   for x in d.reachable() for body in [d.equations[x]] for b in body.branches)


@settings(max_examples=300, deadline=None)
@given(random_tsts)
def test_print_parse_identity(p):
    assert S.validate(p) == []
    assert S.parse(S.print_tst(p)) == p


@settings(max_examples=300, deadline=None)
@given(random_tsts)
def test_denf_closed_and_action_preserving(p):
    d = S.to_denf(p)
    assert d.check() == []
    assert _denf_triples(d) == _triples(p)


@settings(max_examples=300, deadline=None)
@given(random_tsts)
def test_unfold_keeps_free_variables(p):
    for q in S.subterms(p):
        if isinstance(q, S.Rec):
            assert S.free_vars(S.unfold(q)) == S.free_vars(q)


@settings(max_examples=300, deadline=None)
@given(guard_strategy())
def test_guard_print_parse(g):
    assert S.parse_guard(S.print_guard(g)) == g
