"""Exit criteria. Every comparison is exact; there are no tolerances.

One test per criterion; the terminal summary prints a PASS/FAIL line for each.
"""

import io
import json
import random
import subprocess
import sys
from fractions import Fraction
from math import gcd

import pytest

from chaingen import random_case
from defectless.cli import main
from defectless.maclane import MacLaneChain, chain_invariants, newton_polygon, validate
from defectless.okutsu import (
    FLAG_UNVERIFIED,
    TAME,
    full_report,
    gamma_consistency,
    main_invariant_and_krasner,
    multiplicities,
)
from defectless.oracle import (
    FAIL,
    HYPOTHESIS_VIOLATION,
    crosscheck,
    omega_radical_family,
    omega_via_newton,
    radical_problem,
    random_monic,
    sample_weight,
    shifted_valuations,
)
from defectless.poly import parse

Q = Fraction
GOLDEN = ["sqrt3_p3.json", "depth1_p5.json", "sqrt2_p2.json"]
N_CASES = 200


def cli(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


def cli_subprocess(*argv):
    proc = subprocess.run([sys.executable, "-m", "defectless", *argv],
                          capture_output=True)
    return proc.returncode, proc.stdout


@pytest.fixture(scope="module")
def cases():
    return [random_case(seed) for seed in range(N_CASES)]


def radical_sweep():
    """20 admissible (p, m, c, k): p does not divide m, gcd(k, m) = 1."""
    rng = random.Random(20)
    units = [Q(1), Q(-1), Q(2), Q(-3, 2), Q(4, 7), Q(6)]
    out = set()
    while len(out) < 20:
        p = rng.choice([3, 5, 7, 11])
        m = rng.randint(2, 6)
        k = rng.randint(1, 13)
        c = rng.choice(units)
        if m % p == 0 or gcd(k, m) != 1 or c.numerator % p == 0 or c.denominator % p == 0:
            continue
        out.add((p, m, c, k))
    return sorted(out)


def test_criterion_1_golden_depth0_tame():
    chain = MacLaneChain(3, [("x", Q(1, 2))])
    F = parse("x^2-3")
    rep = full_report(chain, F)
    assert rep.weight == Q(1, 2)
    assert rep.main_invariant == rep.krasner == Q(1, 2)
    assert rep.omega.entries == ((Q(1, 2), 1),)
    assert (rep.e_F, rep.f_F, rep.tameness) == (2, 1, TAME)
    assert omega_via_newton(chain, F) == rep.omega
    assert omega_radical_family(3, 2, 1, 1) == rep.omega


def test_criterion_2_golden_depth1_tame():
    chain = MacLaneChain(5, [("x", Q(1, 2)), ("x^2-5", Q(5, 4))])
    F = parse("(x^2-5)^2-25*x")
    rep = full_report(chain, F)
    inv = chain_invariants(chain)
    assert inv.lambdas == (Q(1, 2), Q(1, 4))
    assert inv.e_rel == (2, 2)
    assert rep.weight == Q(5, 8)
    assert rep.delta_seq == [Q(1, 2), Q(3, 4)]
    assert rep.main_invariant == rep.krasner == Q(3, 4)
    assert rep.omega.entries == ((Q(1, 2), 2), (Q(3, 4), 1))
    assert (rep.e_F, rep.f_F, rep.tameness) == (4, 1, TAME)

    vals = shifted_valuations(chain, F)
    hull = newton_polygon([(j + 1, v) for j, v in enumerate(vals)]).hull
    assert [(s.slope, s.length) for s in hull] == [(Q(-3, 4), 1), (Q(-1, 2), 2)]
    assert omega_via_newton(chain, F) == rep.omega

    deriv = chain.mu(F.derivative())
    assert deriv == Q(7, 4) == 2 * Q(1, 2) + 1 * Q(3, 4)


def test_criterion_3_wild_counterexample(problems):
    chain = MacLaneChain(2, [("x", Q(1, 2))])
    F = parse("x^2-2")
    rep = full_report(chain, F)
    oracle = omega_via_newton(chain, F)
    assert rep.omega.entries == ((Q(1, 2), 1),)
    assert oracle.entries == ((Q(3, 2), 1),)
    assert FLAG_UNVERIFIED in rep.flags
    assert oracle.min == Q(3, 2) >= chain.gammas[0]

    code, text = cli("crosscheck", str(problems / "sqrt2_p2.json"))
    assert code == 0
    assert "hypothesis-violation demonstrated" in text
    code, text = cli("report", str(problems / "sqrt2_p2.json"), "--json")
    assert code == 0 and "hypothesis-unverified" in json.loads(text)["flags"]


def test_criterion_4_radical_family_sweep():
    sweep = radical_sweep()
    assert len(sweep) == 20
    for p, m, c, k in sweep:
        chain, F = radical_problem(p, m, c, k)
        assert validate(chain).ok
        formula = full_report(chain, F).omega
        newton = omega_via_newton(chain, F)
        closed = omega_radical_family(p, m, c, k)
        assert formula == newton == closed, (p, m, c, k)
        assert closed.entries == ((Q(k, m), m - 1),)


def test_criterion_5_property_suite(cases):
    rng = random.Random(5)
    assert len(cases) >= 200
    assert max(c.chain.depth for c in cases) == 3
    pairs = monic_samples = 0
    for case in cases:
        chain, F = case.chain, case.F
        assert validate(chain).ok
        assert chain.depth <= 3 and case.n <= 24
        inv = chain_invariants(chain)
        ms, gs = chain.degrees, chain.gammas
        r = chain.depth
        # (a) recurrence
        for i in range(r + 1):
            assert gs[i] / ms[i] == sum(inv.lambdas[j] / ms[j] for j in range(i + 1))
        # (b) monotonicity and slope fixing
        f = random_monic(rng, rng.randint(1, 12), chain.p, range(-1, 3))
        for i in range(1, r + 1):
            assert chain.mu(f, i - 1) <= chain.mu(f, i)
        for i in range(r + 1):
            for j in range(i + 1):
                assert chain.mu(chain.phis[j], i) == gs[j]
        # (c) multiplicativity, on 100 pairs overall
        if pairs < 100:
            g = random_monic(rng, rng.randint(1, 12), chain.p, range(-1, 3))
            for i in range(r + 1):
                assert chain.mu(f * g, i) == chain.mu(f, i) + chain.mu(g, i)
            pairs += 1
        # (d) weight bound, on 500 monic f overall
        for _ in range(3):
            h = random_monic(rng, rng.randint(1, 24), chain.p, range(-2, 4))
            assert chain.mu(h) / h.degree <= inv.weight
            monic_samples += 1
        # (e) m_i = e(phi_i) f(phi_i)
        for i in range(r + 1):
            assert ms[i] == inv.e_phi[i] * inv.f_phi[i]
        rep = full_report(chain, F)
        eff = rep.effective_chain
        # (f) sum t_i = n - 1
        assert sum(multiplicities(eff.degrees, case.n)) == case.n - 1
        assert rep.omega.cardinality == case.n - 1
        # (g) gamma consistency at every level
        assert gamma_consistency(eff).ok
        # (h) the two closed forms of delta agree (raises otherwise)
        delta, omega = main_invariant_and_krasner(eff)
        assert delta == omega == rep.delta_seq[-1]
    assert pairs == 100
    assert monic_samples >= 500


def test_criterion_6_oracle_formula_equivalence(cases):
    chain3 = MacLaneChain(3, [("x", Q(1, 2))])
    chain5 = MacLaneChain(5, [("x", Q(1, 2)), ("x^2-5", Q(5, 4))])
    inputs = [(chain3, parse("x^2-3")), (chain5, parse("(x^2-5)^2-25*x"))]
    inputs += [radical_problem(*t) for t in radical_sweep()]
    inputs += [(c.chain, c.F) for c in cases]
    checked = classified = 0
    for chain, F in inputs:
        rep = full_report(chain, F)
        oracle = omega_via_newton(chain, F)
        if rep.tameness == TAME:
            assert oracle == rep.omega, (chain, F)
            assert oracle.total() == chain.mu(F.derivative())
            checked += 1
        else:
            report = crosscheck(chain, F)
            assert all(c.verdict != FAIL for c in report.checks)
            if oracle != rep.omega:
                assert any(c.verdict == HYPOTHESIS_VIOLATION for c in report.checks)
            classified += 1
    assert checked >= 150
    assert classified > 0


@pytest.mark.parametrize("name", GOLDEN)
def test_criterion_7_weight_sampling(problems, name):
    code, text = cli("sample-weight", str(problems / name), "--count", "2000", "--seed", "7",
                     "--json")
    assert code == 0
    doc = json.loads(text)
    assert doc["exceeded"] == 0
    assert doc["max_sampled"] == doc["weight"]

    prob = json.loads((problems / name).read_text())
    chain = MacLaneChain(prob["p"], [(lv["phi"], lv["gamma"]) for lv in prob["chain"]])
    F = parse(prob["F"])
    s = sample_weight(chain, F, F.degree - 1, 2000, seed=7)
    assert s.ok
    assert chain.mu(chain.phis[-1]) / chain.degrees[-1] == s.weight


def test_criterion_8_cli_contract(problems):
    for name in GOLDEN:
        path = str(problems / name)
        for cmd in (["report", path, "--json"], ["crosscheck", path, "--json"],
                    ["sample-weight", path, "--json", "--seed", "3", "--count", "200"]):
            first, second = cli_subprocess(*cmd), cli_subprocess(*cmd)
            assert first == second
            assert first[0] == 0
            json.loads(first[1].decode().splitlines()[0])
    code, out = cli_subprocess("validate", str(problems / "malformed.json"))
    assert code == 3
    assert b"offset 12" in out
    code, out = cli_subprocess("crosscheck", str(problems / "corrupted_gamma_p5.json"))
    assert code == 2
