"""Invariants of a defectless polynomial F read off an optimal MacLane chain.

All closed forms are evaluated on the *effective* chain returned by
:func:`okutsu_depth`: the chain itself when deg F > m_r, or the chain with
its last level dropped when deg F = m_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .ground import ExtRat
from .maclane import (
    ChainError,
    CheckReport,
    CheckResult,
    InconsistencyError,
    MacLaneChain,
    chain_invariants,
    key_poly_necessary_check,
    validate,
)
from .poly import Polynomial, poly

TAME = "tame"
QUASI_TAME_ONLY = "quasi-tame-only"
WILD = "wild"

FLAG_UNVERIFIED = "hypothesis-unverified"
FLAG_TRUNCATED = "weight-derived-by-truncation"


@dataclass(frozen=True)
class ValueMultiset:
    entries: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_values(cls, values: Iterable[tuple[ExtRat, int]]) -> "ValueMultiset":
        acc: dict = {}
        for v, k in values:
            if k < 0:
                raise ValueError("negative multiplicity")
            if k:
                acc[v] = acc.get(v, 0) + k
        return cls(tuple(sorted(acc.items())))

    @property
    def cardinality(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def min(self) -> ExtRat:
        return self.entries[0][0]

    @property
    def max(self) -> ExtRat:
        return self.entries[-1][0]

    def total(self) -> Fraction:
        """Sum of value * multiplicity."""
        return sum((v * k for v, k in self.entries), Fraction(0))

    def __str__(self):
        return "{" + ", ".join(f"{v}^{k}" for v, k in self.entries) + "}"


def okutsu_depth(chain: MacLaneChain, F) -> tuple[int, MacLaneChain]:
    """Okutsu depth of F and the chain whose key polynomials form its frame."""
    F = poly(F)
    n, m = F.degree, chain.degrees[-1]
    if n is None or n % m:
        raise ChainError(f"m_r = {m} does not divide deg F = {n}")
    if n > m:
        return chain.depth, chain
    if chain.depth == 0:
        raise ChainError("deg F = 1: no invariants are defined for linear F")
    return chain.depth - 1, chain.truncate(chain.depth - 1)


def weight_of(eff: MacLaneChain) -> Fraction:
    """w(F) = gamma_r / m_r, cross-checked against sum_i lambda_i / m_i."""
    inv = chain_invariants(eff)
    w = Fraction(eff.gammas[-1]) / eff.degrees[-1]
    alt = sum((lam / m for lam, m in zip(inv.lambdas, eff.degrees)), Fraction(0))
    if w != alt:
        raise InconsistencyError(f"weight forms disagree: {w} != {alt}")
    return w


def delta_sequence(eff: MacLaneChain) -> list[Fraction]:
    """delta_i = lambda_0 + ... + lambda_i."""
    out, acc = [], Fraction(0)
    for lam in chain_invariants(eff).lambdas:
        acc += lam
        out.append(acc)
    return out


def multiplicities(degrees: list[int], n: int) -> list[int]:
    """t_i = n/m_i - n/m_{i+1} with m_{r+1} = n."""
    ms = list(degrees) + [n]
    return [n // ms[i] - n // ms[i + 1] for i in range(len(degrees))]


def omega_multiset(eff: MacLaneChain, n: int) -> ValueMultiset:
    deltas = delta_sequence(eff)
    ts = multiplicities(eff.degrees, n)
    if any(t <= 0 for t in ts):
        raise InconsistencyError(f"non-positive multiplicity in {ts}")
    return ValueMultiset(tuple(zip(deltas, ts)))


def main_invariant_and_krasner(eff: MacLaneChain) -> tuple[Fraction, Fraction]:
    """delta(F) = omega(F) in both closed forms; they must agree exactly."""
    lam_form = delta_sequence(eff)[-1]
    ms, gs = eff.degrees, eff.gammas
    gamma_form = gs[-1] - sum(
        (Fraction(ms[i + 1] - ms[i], ms[i]) * gs[i] for i in range(len(ms) - 1)),
        Fraction(0),
    )
    if lam_form != gamma_form:
        raise InconsistencyError(f"closed forms disagree: {lam_form} != {gamma_form}")
    return lam_form, lam_form


def gamma_consistency(eff: MacLaneChain) -> CheckReport:
    """gamma_i = delta_i + sum_{j<i} (m_i/m_j - m_i/m_{j+1}) delta_j at every level."""
    deltas = delta_sequence(eff)
    ms, gs = eff.degrees, eff.gammas
    report = CheckReport()
    for i in range(len(ms)):
        rhs = deltas[i] + sum(
            (Fraction(ms[i], ms[j]) - Fraction(ms[i], ms[j + 1])) * deltas[j]
            for j in range(i)
        )
        report.results.append(CheckResult(
            "gamma-consistency", gs[i] == rhs, f"gamma_{i} = {gs[i]}, rebuilt {rhs}", i))
    return report


def ramification(eff: MacLaneChain) -> tuple[int, int]:
    """(e(F), e(phi_r)) for the effective chain."""
    inv = chain_invariants(eff)
    return inv.e_phi[-1], inv.e_phi[-2]


def tameness_class(eff: MacLaneChain, F=None) -> str:
    """Classify by the residue characteristic p.

    Residue fields are finite and F is separable, so tame means p does not
    divide e(F), and quasi-tame means p does not divide e(phi_r).
    """
    p = eff.p
    e_F, e_last = ramification(eff)
    if e_F % p:
        return TAME
    if e_last % p:
        return QUASI_TAME_ONLY
    return WILD


@dataclass
class OkutsuReport:
    depth: int
    frame_degrees: list[int]
    weight: Fraction
    lambdas: list[Fraction]
    e_rel: list[int]
    e_rel_literal: list[int]
    e_phi: list[int]
    f_phi: list[int]
    delta_seq: list[Fraction]
    main_invariant: Fraction
    krasner: Fraction
    omega: ValueMultiset
    e_F: int
    f_F: int
    tameness: str
    flags: list[str] = field(default_factory=list)
    effective_chain: MacLaneChain | None = None

    @property
    def n(self) -> int:
        return self.frame_degrees[-1]

    @property
    def hypothesis_verified(self) -> bool:
        return FLAG_UNVERIFIED not in self.flags

    def to_json(self) -> dict:
        q = str
        return {
            "depth": self.depth,
            "degrees": list(self.frame_degrees),
            "weight": q(self.weight),
            "lambda": [q(x) for x in self.lambdas],
            "e_rel": list(self.e_rel),
            "e_phi": list(self.e_phi),
            "f_phi": list(self.f_phi),
            "delta_seq": [q(x) for x in self.delta_seq],
            "delta": q(self.main_invariant),
            "krasner": q(self.krasner),
            "omega_multiset": [[q(v), k] for v, k in self.omega.entries],
            "e_F": self.e_F,
            "f_F": self.f_F,
            "tameness": self.tameness,
            "flags": list(self.flags),
        }


def full_report(chain: MacLaneChain, F, check_key: bool = True) -> OkutsuReport:
    """Every invariant of F relative to ``chain``.

    The root-distance values are only guaranteed by the theory for tame F;
    otherwise they are still computed from the closed forms and the report
    carries the ``hypothesis-unverified`` flag.
    """
    F = poly(F)
    structural = validate(chain)
    if not structural.ok:
        raise ChainError("invalid chain: " + "; ".join(map(str, structural.violations)))
    if check_key:
        key = key_poly_necessary_check(chain, F)
        if not key.ok:
            raise ChainError("F fails the key polynomial condition: "
                             + "; ".join(r.detail for r in key.results))
    n = F.degree
    r_eff, eff = okutsu_depth(chain, F)
    inv = chain_invariants(eff)
    w = weight_of(eff)
    deltas = delta_sequence(eff)
    delta, krasner = main_invariant_and_krasner(eff)
    omega = omega_multiset(eff, n)
    if omega.cardinality != n - 1:
        raise InconsistencyError(f"|Omega| = {omega.cardinality} != n - 1 = {n - 1}")
    e_F = inv.e_phi[-1]
    f_F, rem = divmod(n, e_F)
    if rem:
        raise InconsistencyError(f"e(F) = {e_F} does not divide n = {n}")
    tameness = tameness_class(eff, F)
    flags = []
    if tameness != TAME:
        flags.append(FLAG_UNVERIFIED)
    if r_eff < chain.depth:
        flags.append(FLAG_TRUNCATED)
    return OkutsuReport(
        depth=r_eff,
        frame_degrees=eff.degrees + [n],
        weight=w,
        lambdas=list(inv.lambdas),
        e_rel=list(inv.e_rel),
        e_rel_literal=list(inv.e_rel_literal),
        e_phi=list(inv.e_phi),
        f_phi=list(inv.f_phi),
        delta_seq=deltas,
        main_invariant=delta,
        krasner=krasner,
        omega=omega,
        e_F=e_F,
        f_F=f_F,
        tameness=tameness,
        flags=flags,
        effective_chain=eff,
    )


def derivative_value(chain: MacLaneChain, F: Polynomial):
    """mu_r(F'), which equals v(F'(theta)) since deg F' < deg F."""
    return chain.mu(F.derivative())
