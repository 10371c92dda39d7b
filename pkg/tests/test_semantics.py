import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import VERDICTS, load, random_pair
from tstkit import semantics as sem
from tstkit import syntax as S
from tstkit.zones import ClockSpace, fed_from_guard

F = Fraction


def conf(p, q, nu=None, eta=None):
    c = sem.initial(p, q)
    if nu:
        c = sem.Configuration(c.left.with_(nu=nu), c.right)
    if eta:
        c = sem.Configuration(c.left, c.right.with_(nu=eta))
    return c


def test_rdy():
    cs = ClockSpace.of(["c", "t"])
    assert sem.rdy(S.SUCCESS, cs).equals(fed_from_guard(S.TRUE, cs))
    p = S.parse("rec X . (!a{c==2;c} . X (+) !b{t<7})")
    assert sem.rdy(p, cs).equals(fed_from_guard(S.parse_guard("c<=2 || t<7"), cs))
    committed = S.Committed(S.Branch("a", S.TRUE))
    assert sem.rdy(committed, cs).is_empty()
    assert sem.rdy(S.parse("?a{c>3}"), cs).equals(fed_from_guard(S.TRUE, cs))


def test_success_has_no_steps():
    c = sem.initial(S.SUCCESS, S.SUCCESS)
    assert sem.step(c) == []
    assert not sem.is_deadlock(c)


def test_commit_then_sync_reaches_success():
    p, q = load("commit_p"), load("commit_q")  # !a (+) !b{t>2}  vs  ?b{t>5}
    c = sem.run(p, q, [sem.Delay(F(7)), sem.Commit("A", "b"), sem.Sync("b", "A")])
    assert sem.is_success(c)


def test_committed_endpoint_blocks_time_and_other_moves():
    p = S.parse("!a (+) !b{t>2}")
    q = S.parse("?b{u>5}")
    c = sem.run(p, q, [sem.Delay(F(6)), sem.Commit("A", "b")])
    labels = [lab for lab, _ in sem.step(c)]
    assert labels == [sem.Sync("b", "A")]
    assert not sem.can_delay(c, F(1))
    with pytest.raises(sem.StepError):
        sem.apply(c, sem.Delay(F(1)))


def test_deadlocks_of_the_commit_example():
    p = S.parse("!a (+) !b{t>2}")
    q = S.parse("?b{u>5}")
    # committing to a leaves a partner that only reads b
    c = sem.apply(sem.initial(p, q), sem.Commit("A", "a"))
    assert sem.is_deadlock(c)
    # committing to b at time 3, before the partner is ready
    c = sem.run(p, q, [sem.Delay(F(3)), sem.Commit("A", "b")])
    assert sem.is_deadlock(c)
    # at time 7 the same commitment goes through
    c = sem.run(p, q, [sem.Delay(F(7)), sem.Commit("A", "b")])
    assert not sem.is_deadlock(c)


def test_deadlock_witness_delay_enables_a_step():
    p, q = load("timing_p"), load("timing_q_fast")
    c = sem.initial(p, q)
    dead, d = sem.deadlock_witness(c)
    assert not dead
    if d:
        c = sem.apply(c, sem.Delay(d))
    assert sem.step(c)


def test_expired_deadline_is_a_deadlock():
    # the output deadline has passed and nobody can move
    p, q = S.parse("!a{x<1}"), S.parse("?a")
    c = conf(p, q, nu={"x": F(2)})
    assert sem.is_deadlock(c)


def test_eventually_scans_every_open_gap():
    g = S.parse_guard("x>1 && x<2 && y>3")
    assert not sem.eventually([g], {"x": F(0), "y": F(0)})
    assert sem.eventually([g], {"x": F(0), "y": F(3, 2)})
    # delay never changes a clock difference
    assert not sem.eventually([S.parse_guard("x-y>1")], {"x": F(0), "y": F(0)})


@pytest.mark.parametrize("p,q,expected", VERDICTS)
def test_oracle_on_corpus(p, q, expected):
    assert sem.oracle_compliant(load(p), load(q)) is expected
    # compliance is symmetric
    assert sem.oracle_compliant(load(q), load(p)) is expected


def test_oracle_examples():
    p = S.parse("?a{t<5} . !b{t<3}")
    assert sem.oracle_compliant(p, S.parse("!a{t'<2} . ?b{t'<3}"))
    assert not sem.oracle_compliant(p, S.parse("!a{t'<5} . ?b{t'<3}"))


def test_oracle_node_cap():
    with pytest.raises(sem.OracleLimit):
        sem.oracle_compliant(load("paynow"), load("customer"), max_nodes=3)


def test_region_keys_separate_guard_atoms():
    rs = sem.RegionSpace({"x": 2, "y": 2})
    k = rs.key
    assert k({"x": F(1, 2), "y": F(1, 3)}) != k({"x": F(1, 3), "y": F(1, 2)})  # diagonal order
    assert k({"x": F(1, 2), "y": F(0)}) == k({"x": F(1, 3), "y": F(0)})
    assert k({"x": F(5), "y": F(0)}) == k({"x": F(9), "y": F(0)})
    assert k({"x": F(1), "y": F(0)}) != k({"x": F(3, 2), "y": F(0)})


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_region_representative_is_equivalent(seed):
    rng = random.Random(seed)
    rs = sem.RegionSpace({"x": 3, "y": 2})
    nu = {"x": F(rng.randint(0, 15), rng.randint(1, 4)), "y": F(rng.randint(0, 12), rng.randint(1, 4))}
    key = rs.key(nu)
    rep = rs.representative(key)
    assert rs.key(rep) == key
    assert rs.dbm(key).contains(ClockSpace.of(["x", "y"]).vector(nu))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_oracle_random_pairs_symmetric(seed):
    p, q = random_pair(random.Random(seed))
    assert sem.oracle_compliant(p, q) == sem.oracle_compliant(q, p)
