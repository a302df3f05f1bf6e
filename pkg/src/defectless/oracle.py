"""Independent recomputation of root distances and probing of the weight.

The Newton-polygon route never touches the secondary slopes: it evaluates
the shifted polynomial F(x + theta) coefficientwise and reads the
valuations of its nonzero roots theta' - theta off the lower hull.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .ground import INFINITY, GroundContext, to_fraction, vp
from .maclane import (
    ChainError,
    MacLaneChain,
    key_poly_necessary_check,
    newton_polygon,
    validate,
)
from .okutsu import (
    TAME,
    ValueMultiset,
    full_report,
    gamma_consistency,
    okutsu_depth,
    weight_of,
)
from .poly import Polynomial, divrem, poly, taylor_shift_coeffs


@dataclass(frozen=True)
class ExtensionElement:
    """g(theta) in Q_p[x]/(F), valued through mu_r of the reduced representative."""

    representative: Polynomial
    chain: MacLaneChain
    F: Polynomial

    @classmethod
    def of(cls, g, chain: MacLaneChain, F) -> "ExtensionElement":
        F = poly(F)
        return cls(divrem(poly(g), F)[1], chain, F)

    def valuation(self):
        return self.chain.mu(self.representative)


def shifted_valuations(chain: MacLaneChain, F) -> list:
    """[v(c_1(theta)), ..., v(c_n(theta))] for F(x + theta) = sum c_j(theta) x^j."""
    F = poly(F)
    return [ExtensionElement(c, chain, F).valuation() for c in taylor_shift_coeffs(F, F)]


def omega_via_newton(chain: MacLaneChain, F) -> ValueMultiset:
    """Multiset {v(theta - theta')} from the Newton polygon of F(x + theta)."""
    F = poly(F)
    vals = shifted_valuations(chain, F)
    if vals[0] is INFINITY:
        raise ChainError("F'(theta) = 0: F is not separable")
    polygon = newton_polygon([(j + 1, v) for j, v in enumerate(vals)])
    return ValueMultiset.from_values((-seg.slope, seg.length) for seg in polygon.hull)


def omega_radical_family(p: int, m: int, c, k: int) -> ValueMultiset:
    """Root distances of x^m - c p^k: all equal to k/m, with multiplicity m - 1."""
    GroundContext(p)
    c = to_fraction(c)
    if m < 2:
        raise ValueError("m must be at least 2")
    if vp(c, GroundContext(p)) != 0:
        raise ValueError("c must be a p-adic unit")
    if math.gcd(k, m) != 1:
        raise ValueError(f"gcd(k, m) = {math.gcd(k, m)} != 1: x^m - c p^k is reducible or non-radical")
    if m % p == 0:
        raise ValueError(f"p = {p} divides m = {m}: roots of unity are not at distance 0")
    return ValueMultiset(((Fraction(k, m), m - 1),))


def radical_problem(p: int, m: int, c, k: int) -> tuple[MacLaneChain, Polynomial]:
    """Depth-0 chain [(x, k/m)] and F = x^m - c p^k."""
    c = to_fraction(c)
    F = Polynomial.monomial(m) - Polynomial.constant(c * Fraction(p) ** k)
    return MacLaneChain(p, [("x", Fraction(k, m))]), F


# ---------------------------------------------------------------------------
# weight sampling


@dataclass
class WeightSample:
    max_ratio: Fraction
    witness: Polynomial
    weight: Fraction
    seed: int
    count: int
    degree_bound: int
    exceeded: list[tuple[Polynomial, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.exceeded and self.max_ratio <= self.weight


def random_monic(rng: random.Random, degree: int, p: int, valuation_range: range) -> Polynomial:
    coeffs = []
    for _ in range(degree):
        u = rng.choice((0, 1, -1, 2, -2))
        coeffs.append(Fraction(u) * Fraction(p) ** rng.choice(valuation_range))
    return Polynomial(coeffs + [1])


def sample_weight(chain: MacLaneChain, F, degree_bound: int, count: int,
                  seed: int = 0, valuation_range: range = range(-1, 4)) -> WeightSample:
    """Largest v(g(theta))/deg g over the frame's last key polynomial and ``count`` random monic g."""
    F = poly(F)
    n = F.degree
    if not 1 <= degree_bound < n:
        raise ChainError(f"degree bound must lie in 1..{n - 1}, got {degree_bound}")
    _, eff = okutsu_depth(chain, F)
    w = weight_of(eff)
    rng = random.Random(seed)
    phi = eff.phis[-1]
    best, witness = Fraction(chain.mu(phi)) / phi.degree, phi
    exceeded = []
    if best > w:
        exceeded.append((phi, best))
    for _ in range(count):
        g = random_monic(rng, rng.randint(1, degree_bound), chain.p, valuation_range)
        ratio = Fraction(chain.mu(g)) / g.degree
        if ratio > w:
            exceeded.append((g, ratio))
        if ratio > best:
            best, witness = ratio, g
    return WeightSample(best, witness, w, seed, count, degree_bound, exceeded)


# ---------------------------------------------------------------------------
# crosscheck

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_VIOLATION = "hypothesis-violation demonstrated"


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    detail: str


@dataclass
class CrosscheckReport:
    tameness: str
    checks: list[Check] = field(default_factory=list)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == HYPOTHESIS_VIOLATION]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {
            "tameness": self.tameness,
            "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail}
                       for c in self.checks],
        }


def crosscheck(chain: MacLaneChain, F) -> CrosscheckReport:
    """Compare closed-form invariants with the Newton-polygon oracle.

    A mismatch on an input that is not tame is classified as a demonstrated
    hypothesis violation rather than a failure. The lower bound
    min Omega >= gamma_0 holds unconditionally and always counts.
    """
    F = poly(F)
    if not validate(chain).ok:
        raise ChainError("invalid chain")
    checks: list[Check] = []

    key = key_poly_necessary_check(chain, F)
    checks.append(Check("key-polynomial-necessary", PASS if key.ok else FAIL,
                        "; ".join(r.detail for r in key.results)))

    report = full_report(chain, F, check_key=False)
    miss = FAIL if report.tameness == TAME else HYPOTHESIS_VIOLATION

    def verdict(same: bool) -> str:
        return PASS if same else miss

    oracle = omega_via_newton(chain, F)
    same = oracle == report.omega
    checks.append(Check("omega-multiset", verdict(same),
                        f"formula {report.omega}, oracle {oracle}"))

    same = oracle.max == report.krasner
    checks.append(Check("krasner-constant", verdict(same),
                        f"formula {report.krasner}, oracle max {oracle.max}"))

    deriv = chain.mu(F.derivative())
    formula_sum = report.omega.total()
    same = deriv == formula_sum
    checks.append(Check("derivative-identity", verdict(same),
                        f"mu_r(F') = {deriv}, sum t_i delta_i = {formula_sum}"))

    ok = oracle.total() == deriv
    checks.append(Check("oracle-derivative-sum", PASS if ok else FAIL,
                        f"sum over oracle Omega {oracle.total()}, mu_r(F') = {deriv}"))

    for r in gamma_consistency(report.effective_chain).results:
        checks.append(Check(f"gamma-consistency[{r.level}]", PASS if r.passed else FAIL, r.detail))

    gamma0 = chain.gammas[0]
    ok = oracle.min >= gamma0
    checks.append(Check("diameter-lower-bound", PASS if ok else FAIL,
                        f"min oracle Omega {oracle.min} >= gamma_0 = {gamma0}"))

    ok = oracle.cardinality == F.degree - 1
    checks.append(Check("oracle-cardinality", PASS if ok else FAIL,
                        f"|Omega| = {oracle.cardinality}, n - 1 = {F.degree - 1}"))
    return CrosscheckReport(report.tameness, checks)
