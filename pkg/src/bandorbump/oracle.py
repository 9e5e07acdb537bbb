"""Independent recomputation of the stopping law, for validating closed forms.

Two routes, sharing no algebra with the formula engine:

* ``exhaustive_distribution`` runs exact forward dynamic programming over
  tally configurations, applying the stopping rules directly from their
  definitions.  It is exponential in principle, so it refuses decks larger
  than a configurable cap.
* ``simulate`` plays the game for real on seeded shuffles and tallies the
  empirical law; ``compare`` scores it against an exact law cell by cell.

The DP walks unordered tally multisets rather than ordered vectors: both
stopping rules and the per-draw transition weights depend only on how many
ranks hold each tally, so aggregating permutations loses nothing and shrinks
the state space.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .distribution import ConsistencyError, GameParams, JointDistribution, Outcome


def _classify(state: tuple[int, ...], l: int, u: int) -> Outcome | None:
    """Apply the stopping rules to a tally multiset, None if play continues.

    States are only ever examined after at least one draw, so the empty
    tally never counts as a band even when l = 0.
    """
    if state[-1] > u:  # sorted ascending; only the top entry can overshoot
        return Outcome.BUMP
    if state[0] >= l:
        return Outcome.BAND
    return None


def exhaustive_distribution(params: GameParams, cap: int = 16) -> JointDistribution:
    """Exact stopping law by full dynamic programming; refuses t > cap.

    Transition: from a tally vector with n - 1 cards dealt, rank j is drawn
    next with probability (s - x_j) / (t - (n - 1)).
    """
    t = params.t
    if t > cap:
        raise ValueError(f"deck size t={t} exceeds the exhaustive cap {cap}")
    m, s, l, u = params.m, params.s, params.l, params.u
    horizon = max(params.n_max, 1)
    band: dict[int, Fraction] = {}
    bump: dict[int, Fraction] = {}
    alive: dict[tuple[int, ...], Fraction] = {(0,) * m: Fraction(1)}
    for n in range(1, horizon + 1):
        remaining = t - (n - 1)
        nxt: dict[tuple[int, ...], Fraction] = {}
        for state, p in alive.items():
            i = 0
            while i < m:
                v = state[i]
                j = i
                while j < m and state[j] == v:
                    j += 1
                if v < s:
                    # (j - i) ranks hold tally v; drawing any one of them
                    # leads to the same multiset.
                    q = p * Fraction((j - i) * (s - v), remaining)
                    child = state[:j - 1] + (v + 1,) + state[j:]
                    hit = _classify(child, l, u)
                    if hit is Outcome.BUMP:
                        bump[n] = bump.get(n, Fraction(0)) + q
                    elif hit is Outcome.BAND:
                        band[n] = band.get(n, Fraction(0)) + q
                    else:
                        nxt[child] = nxt.get(child, Fraction(0)) + q
                i = j
        alive = nxt
    if alive:
        leftover = sum(alive.values())
        raise ConsistencyError(
            f"{leftover} probability mass still alive past draw {horizon} for {params}"
        )
    first = min(band.keys() | bump.keys())
    last = max(band.keys() | bump.keys())
    rows = tuple(
        (n, band.get(n, Fraction(0)), bump.get(n, Fraction(0)))
        for n in range(first, last + 1)
    )
    return JointDistribution(params, rows)


@dataclass
class EmpiricalDistribution:
    """Outcome tallies from simulated deals."""

    params: GameParams
    trials: int
    seed: int
    counts: Counter[tuple[int, Outcome]]


def _trial_rng(seed: int, index: int) -> random.Random:
    # Stable splittable seeding: each trial's generator is derived from a
    # digest of (seed, index), so runs are reproducible and trials do not
    # share state.
    digest = hashlib.sha256(f"{seed}/{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def simulate(params: GameParams, trials: int, seed: int = 0) -> EmpiricalDistribution:
    """Play `trials` independent deals on seeded shuffles and tally outcomes."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    m, s, l, u = params.m, params.s, params.l, params.u
    base_deck = [rank for rank in range(m) for _ in range(s)]
    latest = max(params.n_max, 1)
    counts: Counter[tuple[int, Outcome]] = Counter()
    for index in range(trials):
        rng = _trial_rng(seed, index)
        deck = base_deck.copy()
        rng.shuffle(deck)
        tallies = [0] * m
        short = m if l > 0 else 0  # ranks still under their lower quota
        for n, rank in enumerate(deck, start=1):
            v = tallies[rank] + 1
            tallies[rank] = v
            if v > u:
                counts[(n, Outcome.BUMP)] += 1
                break
            if v == l:
                short -= 1
            if short == 0:
                counts[(n, Outcome.BAND)] += 1
                break
        else:
            raise ConsistencyError(f"deal ran through the whole deck for {params}")
        if n > latest:
            raise ConsistencyError(f"deal stopped at draw {n} > {latest} for {params}")
    return EmpiricalDistribution(params, trials, seed, counts)


@dataclass(frozen=True)
class CellCheck:
    """One (n, outcome) cell of an exact-vs-empirical comparison."""

    n: int
    outcome: Outcome
    expected: Fraction
    count: int
    z: float
    scored: bool  # whether the cell enters the pass/fail decision


@dataclass(frozen=True)
class ComparisonReport:
    params: GameParams
    trials: int
    z_threshold: float
    min_prob: float
    cells: tuple[CellCheck, ...]
    max_abs_z: float
    impossible: int  # cells the exact law forbids but the simulation hit
    passed: bool


def compare(
    exact: JointDistribution,
    empirical: EmpiricalDistribution,
    z_threshold: float = 4.0,
    min_prob: float = 0.0,
) -> ComparisonReport:
    """Score empirical frequencies against an exact law with binomial z-scores.

    Cells with exact probability below min_prob are reported but not scored;
    they are too thin for the normal approximation behind the z statistic.
    Any simulated hit on a cell of exact probability zero fails outright.
    """
    if exact.params != empirical.params:
        raise ValueError("distributions describe different parameters")
    trials = empirical.trials
    if trials == 0:
        raise ValueError("empirical distribution holds no trials")
    draws = set(range(exact.first_n, exact.last_n + 1))
    draws.update(n for n, _ in empirical.counts)
    cells = []
    impossible = 0
    max_abs_z = 0.0
    for n in sorted(draws):
        for outcome in Outcome:
            p = exact.mass(n, outcome)
            count = empirical.counts.get((n, outcome), 0)
            if p == 0 and count == 0:
                continue
            if p == 0:
                impossible += 1
                cells.append(CellCheck(n, outcome, p, count, math.inf, True))
                continue
            pf = float(p)
            se = math.sqrt(pf * (1.0 - pf) / trials)
            freq = count / trials
            z = 0.0 if se == 0.0 and freq == pf else (freq - pf) / se
            scored = pf >= min_prob and se > 0.0
            if scored:
                max_abs_z = max(max_abs_z, abs(z))
            cells.append(CellCheck(n, outcome, p, count, z, scored))
    passed = impossible == 0 and max_abs_z < z_threshold
    return ComparisonReport(
        params=exact.params,
        trials=trials,
        z_threshold=z_threshold,
        min_prob=min_prob,
        cells=tuple(cells),
        max_abs_z=max_abs_z,
        impossible=impossible,
        passed=passed,
    )
