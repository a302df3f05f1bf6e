"""Optimal MacLane chains of inductive valuations on Q_p[x].

A chain is a list of levels (phi_i, gamma_i). Level 0 has a degree-one key
polynomial and is evaluated by the explicit base formula; level i > 0 is the
augmentation [mu_{i-1}; phi_i, gamma_i].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ground import (
    INFINITY,
    ExtRat,
    GroundContext,
    ValueGroup,
    group_index,
    group_join,
    is_finite,
    to_fraction,
    vp,
)
from .poly import Polynomial, phi_expansion, poly


class ChainError(ValueError):
    """A chain or polynomial violates a precondition."""


class InconsistencyError(ArithmeticError):
    """Two routes to the same quantity disagree; indicates bad input data or a bug."""


@dataclass(frozen=True)
class MacLaneChain:
    ctx: GroundContext
    levels: tuple[tuple[Polynomial, ExtRat], ...]

    def __init__(self, ctx, levels):
        if isinstance(ctx, int):
            ctx = GroundContext(ctx)
        lv = []
        for phi, gamma in levels:
            gamma = gamma if gamma is INFINITY else to_fraction(gamma)
            lv.append((poly(phi), gamma))
        if not lv:
            raise ChainError("a MacLane chain needs at least one level")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "levels", tuple(lv))

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def phis(self) -> list[Polynomial]:
        return [phi for phi, _ in self.levels]

    @property
    def gammas(self) -> list[ExtRat]:
        return [g for _, g in self.levels]

    @property
    def degrees(self) -> list[int]:
        return [phi.degree for phi, _ in self.levels]

    def truncate(self, r: int) -> "MacLaneChain":
        """Levels 0..r."""
        if not 0 <= r <= self.depth:
            raise ChainError(f"cannot truncate a depth-{self.depth} chain to depth {r}")
        return MacLaneChain(self.ctx, self.levels[: r + 1])

    def mu(self, f, level: int | None = None) -> ExtRat:
        return mu_eval(self, self.depth if level is None else level, f)

    def __repr__(self):
        body = ", ".join(f"({phi}, {g})" for phi, g in self.levels)
        return f"MacLaneChain(p={self.p}, [{body}])"


def mu_eval(chain: MacLaneChain, level: int, f) -> ExtRat:
    """mu_level(f) = min_s mu_{level-1}(a_s) + s*gamma_level over the phi-expansion."""
    if not 0 <= level <= chain.depth:
        raise ChainError(f"level {level} out of range 0..{chain.depth}")
    f = poly(f)
    return _mu(chain, level, f, {})


def _mu(chain: MacLaneChain, level: int, f: Polynomial, cache: dict) -> ExtRat:
    if f.is_zero():
        return INFINITY
    if f.degree == 0:
        return vp(f.coeffs[0], chain.ctx)
    key = (level, f)
    if key in cache:
        return cache[key]
    phi, gamma = chain.levels[level]
    best = INFINITY
    for s, a in enumerate(phi_expansion(f, phi)):
        if a.is_zero():
            continue
        if level == 0:
            # deg a < 1: a constant
            val = vp(a.coeffs[0], chain.ctx)
        else:
            val = _mu(chain, level - 1, a, cache)
        val = val + s * gamma
        if val < best:
            best = val
    cache[key] = best
    return best


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    level: int | None
    message: str

    def __str__(self):
        where = "" if self.level is None else f"level {self.level}: "
        return f"[{self.code}] {where}{self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def validate(chain: MacLaneChain) -> ValidationReport:
    """Structural checks of an optimal MacLane chain. Violations are data."""
    report = ValidationReport()
    add = report.violations.append
    prev_deg = None
    for i, (phi, gamma) in enumerate(chain.levels):
        if not phi.is_monic():
            add(Violation("not-monic", i, f"phi_{i} = {phi} is not monic"))
        deg = phi.degree
        if i == 0:
            if deg != 1:
                add(Violation("degree-phi0", 0, f"deg phi_0 = {deg}, expected 1"))
        elif deg is not None and prev_deg:
            if deg <= prev_deg:
                add(Violation("degree-not-increasing", i,
                              f"deg phi_{i} = {deg} <= deg phi_{i-1} = {prev_deg}"))
            if deg % prev_deg:
                add(Violation("degree-not-divisible", i,
                              f"deg phi_{i-1} = {prev_deg} does not divide deg phi_{i} = {deg}"))
        if gamma is INFINITY:
            add(Violation("gamma-infinite", i, f"gamma_{i} must be finite"))
        prev_deg = deg
    if not report.ok:
        return report
    for i in range(1, chain.depth + 1):
        phi, gamma = chain.levels[i]
        below = mu_eval(chain, i - 1, phi)
        if not gamma > below:
            add(Violation("augmentation", i,
                          f"gamma_{i} = {gamma} is not > mu_{i-1}(phi_{i}) = {below}"))
    return report


# ---------------------------------------------------------------------------
# chain invariants


@dataclass(frozen=True)
class ChainInvariants:
    lambdas: tuple[Fraction, ...]
    e_rel: tuple[int, ...]
    value_groups: tuple[ValueGroup, ...]
    e_phi: tuple[int, ...]
    f_phi: tuple[int, ...]
    weight: Fraction

    @property
    def e_rel_literal(self) -> tuple[int, ...]:
        """Relative indices with e_0 forced to 1, the other common convention."""
        return (1,) + self.e_rel[1:]


def chain_invariants(chain: MacLaneChain) -> ChainInvariants:
    """Secondary slopes, value groups, ramification data and weight of a valid chain.

    e_i is the index of Gamma_{mu_{i-1}} in Gamma_{mu_i} with Gamma_{mu_{-1}} = Z,
    so e_0 is the denominator of gamma_0 and e(phi_i) = e_0 ... e_{i-1}.
    e_phi carries one trailing entry, the index of Z in Gamma_{mu_r}.
    """
    gammas = chain.gammas
    degrees = chain.degrees
    lambdas = [gammas[0]]
    for i in range(1, chain.depth + 1):
        lambdas.append(gammas[i] - mu_eval(chain, i - 1, chain.phis[i]))

    groups = []
    g = ValueGroup(1)
    e_rel = []
    for gamma in gammas:
        h = group_join(g, gamma)
        e_rel.append(group_index(g, h))
        groups.append(h)
        g = h

    base = ValueGroup(1)
    e_phi = [1] + [group_index(base, groups[i - 1]) for i in range(1, len(groups))]
    e_phi.append(group_index(base, groups[-1]))
    f_phi = []
    for i, m in enumerate(degrees):
        f, rem = divmod(m, e_phi[i])
        if rem:
            raise InconsistencyError(
                f"f(phi_{i}) = {m}/{e_phi[i]} is not an integer; "
                "the chain does not come from defectless data")
        f_phi.append(f)
    weight = Fraction(gammas[-1]) / degrees[-1]
    return ChainInvariants(
        lambdas=tuple(lambdas),
        e_rel=tuple(e_rel),
        value_groups=tuple(groups),
        e_phi=tuple(e_phi),
        f_phi=tuple(f_phi),
        weight=weight,
    )


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, ExtRat], ...]
    vertices: tuple[tuple[int, Fraction], ...]
    hull: tuple[Segment, ...]

    @property
    def width(self) -> int:
        return sum(s.length for s in self.hull)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(points: Sequence[tuple[int, ExtRat]]) -> NewtonPolygon:
    """Lower convex hull of the finite points, as (slope, horizontal length) segments."""
    pts = tuple((int(i), v if v is INFINITY else to_fraction(v)) for i, v in points)
    finite = {}
    for i, v in pts:
        if is_finite(v):
            finite[i] = min(v, finite.get(i, v))
    if len(finite) < 2:
        raise ValueError("a Newton polygon needs at least two finite points")
    lower: list[tuple[int, Fraction]] = []
    for pt in sorted(finite.items()):
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    hull = tuple(
        Segment(Fraction(b[1] - a[1]) / (b[0] - a[0]), b[0] - a[0])
        for a, b in zip(lower, lower[1:])
    )
    return NewtonPolygon(points=pts, vertices=tuple(lower), hull=hull)


# ---------------------------------------------------------------------------
# key polynomial necessary condition


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    level: int | None = None


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.ok


def key_poly_necessary_check(chain: MacLaneChain, F) -> CheckReport:
    """Necessary condition for F to be a key polynomial of mu_r.

    In the phi_r-expansion of F the minimum of mu_{r-1}(a_s) + s*gamma_r must
    be attained both at s = 0 and at the top index deg F / m_r.
    """
    F = poly(F)
    r = chain.depth
    m = chain.degrees[-1]
    if F.degree is None or F.degree % m:
        raise ChainError(f"m_r = {m} does not divide deg F = {F.degree}")
    report = CheckReport()
    if not F.is_monic():
        report.results.append(CheckResult("monic", False, f"F = {F} is not monic"))
        return report
    phi, gamma = chain.levels[r]
    terms = []
    for s, a in enumerate(phi_expansion(F, phi)):
        if r == 0:
            val = vp(a[0], chain.ctx) if not a.is_zero() else INFINITY
        else:
            val = mu_eval(chain, r - 1, a)
        terms.append(val + s * gamma)
    low = min(terms)
    top = len(terms) - 1
    if top == 1 and F.degree == m:
        # same degree as phi_r: F is mu_r-equivalent to phi_r iff mu_r(F - phi_r) >= gamma_r
        passed = terms[top] == low
    else:
        passed = terms[0] == low and terms[top] == low
    detail = (f"s=0 term {terms[0]}, s={top} term {terms[top]}, minimum {low}")
    report.results.append(CheckResult("key-polynomial-necessary", passed, detail, r))
    return report
