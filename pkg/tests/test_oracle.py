from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chaingen import random_case
from defectless.maclane import ChainError, MacLaneChain
from defectless.okutsu import TAME, full_report
from defectless.oracle import (
    FAIL,
    HYPOTHESIS_VIOLATION,
    ExtensionElement,
    crosscheck,
    omega_radical_family,
    omega_via_newton,
    radical_problem,
    sample_weight,
    shifted_valuations,
)
from defectless.poly import parse

Q = Fraction
CH3 = MacLaneChain(3, [("x", Q(1, 2))])
CH2 = MacLaneChain(2, [("x", Q(1, 2))])
CH5 = MacLaneChain(5, [("x", Q(1, 2)), ("x^2-5", Q(5, 4))])
F5 = parse("(x^2-5)^2-25*x")


def test_shifted_valuations_depth1():
    assert shifted_valuations(CH5, F5) == [Q(7, 4), 1, Q(1, 2), 0]


def test_omega_via_newton_examples():
    assert omega_via_newton(CH3, "x^2-3").entries == ((Q(1, 2), 1),)
    assert omega_via_newton(CH5, F5).entries == ((Q(1, 2), 2), (Q(3, 4), 1))
    assert omega_via_newton(CH2, "x^2-2").entries == ((Q(3, 2), 1),)


def test_extension_element_reduces_mod_F():
    el = ExtensionElement.of("x^3", CH3, "x^2-3")
    assert el.representative == parse("3*x")
    assert el.valuation() == Q(3, 2)


def test_radical_family_examples():
    assert omega_radical_family(3, 2, 1, 1).entries == ((Q(1, 2), 1),)
    assert omega_radical_family(7, 3, 2, 1).entries == ((Q(1, 3), 2),)
    with pytest.raises(ValueError):
        omega_radical_family(3, 2, 1, 2)
    with pytest.raises(ValueError):
        omega_radical_family(3, 3, 1, 1)
    with pytest.raises(ValueError):
        omega_radical_family(3, 2, 3, 1)


@settings(max_examples=40)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(2, 6), st.integers(1, 12),
       st.sampled_from([1, -1, 2, Q(2, 3), Q(-4, 9)]))
def test_radical_family_matches_newton(p, m, k, c):
    from math import gcd
    c = Q(c)
    assume(gcd(k, m) == 1 and m % p and c.numerator % p and c.denominator % p)
    chain, F = radical_problem(p, m, c, k)
    assert omega_via_newton(chain, F) == omega_radical_family(p, m, c, k)


def test_sample_weight_golden():
    s = sample_weight(CH5, F5, degree_bound=3, count=300, seed=7)
    assert s.ok and s.max_ratio == s.weight == Q(5, 8)
    assert s.witness == parse("x^2-5")
    s0 = sample_weight(CH5, F5, degree_bound=3, count=0)
    assert s0.max_ratio == Q(5, 8)
    assert sample_weight(CH3, "x^2-3", 1, 50).max_ratio == Q(1, 2)
    with pytest.raises(ChainError):
        sample_weight(CH5, F5, degree_bound=4, count=1)


def test_sample_weight_deterministic():
    a = sample_weight(CH5, F5, 3, 200, seed=11)
    b = sample_weight(CH5, F5, 3, 200, seed=11)
    assert (a.max_ratio, a.witness) == (b.max_ratio, b.witness)


def test_crosscheck_verdicts():
    assert crosscheck(CH5, F5).ok and not crosscheck(CH5, F5).violations
    assert crosscheck(CH3, "x^2-3").ok
    wild = crosscheck(CH2, "x^2-2")
    assert wild.ok
    assert {c.name for c in wild.violations} >= {"omega-multiset", "krasner-constant"}
    bad = crosscheck(MacLaneChain(5, [("x", Q(1, 2)), ("x^2-5", Q(9, 4))]), F5)
    assert not bad.ok
    assert {c.name for c in bad.failed} >= {"omega-multiset"}


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_oracle_properties(seed):
    case = random_case(seed)
    oracle = omega_via_newton(case.chain, case.F)
    assert oracle.cardinality == case.n - 1
    assert oracle.min >= case.chain.gammas[0]
    assert oracle.total() == case.chain.mu(case.F.derivative())
    rep = full_report(case.chain, case.F)
    if rep.tameness == TAME:
        assert oracle == rep.omega
    verdicts = {c.verdict for c in crosscheck(case.chain, case.F).checks}
    assert FAIL not in verdicts
    if rep.tameness == TAME:
        assert HYPOTHESIS_VIOLATION not in verdicts


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_sampled_weight_never_exceeds(seed):
    case = random_case(seed, max_degree=12)
    s = sample_weight(case.chain, case.F, case.n - 1, 40, seed=seed)
    assert s.ok
    assert s.max_ratio == s.weight
