"""Summary statistics and structural scans over the exact stopping law.

Moments stay rational for as long as mathematically possible: means,
variances, marginals, and expected payoffs are exact Fractions, and only the
standard deviation (an irrational square root) is delivered as a correctly
rounded decimal string.

The scans sweep parameter grids for structural properties of the law: that
every term of the bump sum is strictly positive wherever the index ranges
admit it, and that the per-outcome mass sequences are log-concave.  Band
log-concavity is a theorem and a violation would mean an engine bug; bump
log-concavity is an open conjecture, so scan hits there are findings to
report, not failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .distribution import (
    ConsistencyError,
    GameParams,
    JointDistribution,
    Outcome,
    band_joint,
    bump_joint,
    bump_k_range,
    bump_kpp_range,
    bump_summand,
)
from .exactnum import sqrt_decimal


# ==================== moments ====================


@dataclass(frozen=True)
class OutcomeMoments:
    """Moments of the stopping draw restricted to one outcome.

    mean/variance/sd are None when the outcome has no mass; the marginal of 0
    is the flag.
    """

    marginal: Fraction
    mean: Fraction | None
    variance: Fraction | None
    sd: str | None


@dataclass(frozen=True)
class MomentsReport:
    mean: Fraction
    variance: Fraction
    sd: str
    band: OutcomeMoments
    bump: OutcomeMoments
    sig_figs: int


def _conditional(dist: JointDistribution, outcome: Outcome, sig_figs: int) -> OutcomeMoments:
    marginal = sum((dist.mass(n, outcome) for n, _, _ in dist.rows), Fraction(0))
    if marginal == 0:
        return OutcomeMoments(marginal, None, None, None)
    mean = sum((n * dist.mass(n, outcome) for n, _, _ in dist.rows), Fraction(0)) / marginal
    second = sum((n * n * dist.mass(n, outcome) for n, _, _ in dist.rows), Fraction(0)) / marginal
    variance = second - mean * mean
    return OutcomeMoments(marginal, mean, variance, sqrt_decimal(variance, sig_figs))


def moments(dist: JointDistribution, sig_figs: int = 6) -> MomentsReport:
    """Exact mean/variance of the stopping draw, overall and per outcome."""
    mean = Fraction(0)
    second = Fraction(0)
    for n, band, bump in dist.rows:
        mass = band + bump
        mean += n * mass
        second += n * n * mass
    variance = second - mean * mean
    return MomentsReport(
        mean=mean,
        variance=variance,
        sd=sqrt_decimal(variance, sig_figs),
        band=_conditional(dist, Outcome.BAND, sig_figs),
        bump=_conditional(dist, Outcome.BUMP, sig_figs),
        sig_figs=sig_figs,
    )


# ==================== payoffs ====================


@dataclass(frozen=True)
class PayoffSpec:
    """Stakes per outcome, exact.  Positive favours the player."""

    band: Fraction
    bump: Fraction

    @classmethod
    def parse(cls, band: str, bump: str) -> PayoffSpec:
        """Parse decimal strings ("-3", "0.25") exactly; no binary rounding."""
        try:
            return cls(Fraction(band), Fraction(bump))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"unparseable payoff: {exc}") from exc


def payoff_ev(dist: JointDistribution, payoff: PayoffSpec) -> Fraction:
    """Exact expected payoff of one deal."""
    return payoff.band * dist.band_marginal + payoff.bump * dist.bump_marginal


# ==================== log-concavity ====================


@dataclass(frozen=True)
class LogConcavityResult:
    """ok means: support is a block of consecutive indices and
    seq[i-1] * seq[i+1] <= seq[i]**2 holds at every interior index."""

    ok: bool
    violations: tuple[int, ...]


def log_concavity(seq: Sequence[Fraction | int]) -> LogConcavityResult:
    """Exact log-concavity check; violation indices point into seq."""
    values = [Fraction(x) for x in seq]
    if any(v < 0 for v in values):
        raise ValueError("log-concavity is defined here for non-negative sequences")
    bad: set[int] = set()
    positive = [i for i, v in enumerate(values) if v > 0]
    if positive:
        for i in range(positive[0], positive[-1] + 1):
            if values[i] == 0:
                bad.add(i)  # hole in the support
    for i in range(1, len(values) - 1):
        if values[i - 1] * values[i + 1] > values[i] ** 2:
            bad.add(i)
    return LogConcavityResult(ok=not bad, violations=tuple(sorted(bad)))


# ==================== parameter-grid scans ====================


@dataclass(frozen=True)
class Finding:
    """One counterexample or conjecture hit located by a scan."""

    m: int
    s: int
    l: int
    u: int
    n: int | None
    k: int | None
    kpp: int | None
    note: str


@dataclass(frozen=True)
class ScanReport:
    kind: str
    m_range: tuple[int, int]
    s_range: tuple[int, int]
    cells: int
    checks: int
    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return not self.findings

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m_range": list(self.m_range),
            "s_range": list(self.s_range),
            "cells": self.cells,
            "checks": self.checks,
            "findings": [
                {
                    "m": f.m,
                    "s": f.s,
                    "l": f.l,
                    "u": f.u,
                    "n": f.n,
                    "k": f.k,
                    "kpp": f.kpp,
                    "note": f.note,
                }
                for f in self.findings
            ],
            "ok": self.ok,
        }


def _general_grid(m_range: tuple[int, int], s_range: tuple[int, int]):
    for m in range(m_range[0], m_range[1] + 1):
        for s in range(s_range[0], s_range[1] + 1):
            for l in range(1, s):
                for u in range(l + 1, s):
                    yield GameParams(m, s, l, u)


def nonvacuity_scan(
    m_range: tuple[int, int] = (2, 8), s_range: tuple[int, int] = (2, 8)
) -> ScanReport:
    """Verify the bump sum has work to do everywhere its index ranges claim.

    For every general-case cell on the grid, every draw n in the bump
    support, and every admissible k, the k'' window must be non-empty and
    every summand strictly positive.
    """
    cells = 0
    checks = 0
    findings: list[Finding] = []
    for p in _general_grid(m_range, s_range):
        cells += 1
        for n in range(p.u + 1, p.n_max + 1):
            k_lo, k_hi = bump_k_range(p, n)
            if k_lo > k_hi:
                findings.append(
                    Finding(p.m, p.s, p.l, p.u, n, None, None, "empty capped-rank range")
                )
                continue
            for k in range(k_lo, k_hi + 1):
                checks += 1
                try:
                    kpp_lo, kpp_hi = bump_kpp_range(p, n, k)
                except ConsistencyError:
                    findings.append(
                        Finding(p.m, p.s, p.l, p.u, n, k, None, "empty interior-rank window")
                    )
                    continue
                for kpp in range(kpp_lo, kpp_hi + 1):
                    checks += 1
                    if bump_summand(p, n, k, kpp) <= 0:
                        findings.append(
                            Finding(p.m, p.s, p.l, p.u, n, k, kpp, "non-positive summand")
                        )
    return ScanReport("nonvacuity", m_range, s_range, cells, checks, tuple(findings))


def _logconcavity_scan(
    kind: str,
    outcome: Outcome,
    m_range: tuple[int, int],
    s_range: tuple[int, int],
) -> ScanReport:
    cells = 0
    checks = 0
    findings: list[Finding] = []
    for p in _general_grid(m_range, s_range):
        cells += 1
        if outcome is Outcome.BAND:
            first = p.m * p.l
            seq = [band_joint(p, n) for n in range(first, p.n_max + 1)]
        else:
            first = p.u + 1
            seq = [bump_joint(p, n) for n in range(first, p.n_max + 1)]
        checks += max(len(seq) - 2, 0)
        result = log_concavity(seq)
        for i in result.violations:
            findings.append(
                Finding(p.m, p.s, p.l, p.u, first + i, None, None, f"{outcome.value} log-concavity violated")
            )
    return ScanReport(kind, m_range, s_range, cells, checks, tuple(findings))


def band_logconcavity_scan(
    m_range: tuple[int, int] = (2, 8), s_range: tuple[int, int] = (2, 8)
) -> ScanReport:
    """Band mass sequences over the grid: log-concavity here is a theorem."""
    return _logconcavity_scan("band-logconcavity", Outcome.BAND, m_range, s_range)


def bump_logconcavity_scan(
    m_range: tuple[int, int] = (2, 8), s_range: tuple[int, int] = (2, 8)
) -> ScanReport:
    """Bump mass sequences over the grid: log-concavity is conjectured only.

    Findings from this scan are research observations, not engine errors.
    """
    return _logconcavity_scan("bump-logconcavity", Outcome.BUMP, m_range, s_range)
