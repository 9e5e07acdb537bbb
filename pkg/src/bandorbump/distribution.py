"""Exact joint law of the stopping time and outcome of a band-or-bump deal.

The game: a deck of t = m * s cards (m ranks, s cards per rank) is dealt one
card at a time while a tally is kept per rank.  Play stops the first time
either

* every rank's tally lies inside the window [l, u]  -- a *band*, or
* some rank's tally reaches u + 1                   -- a *bump*.

``joint_distribution`` returns the exact probability of each (stopping draw,
outcome) pair as rationals.  The general case 0 < l < u < s conditions on the
identity of the final card dealt: the band mass at draw n factors into the
chance the completing rank sits one short of quota after n - 1 cards times a
rectangle probability for the other m - 1 tallies, and the bump mass at draw
n sums over the configuration of the other ranks (k at the cap u, k' still
below l, k'' strictly inside the window) with a rectangle count for each
configuration.  Degenerate parameter corners (l = 0, l = u, u = s) stop the
deal by different mechanics and are dispatched to dedicated routines.

Every bump summand is computed in two algebraically equal arrangements and
the results are compared exactly; a disagreement raises ConsistencyError, as
does any internal range or mass check that fails.  Such an error means the
engine itself is wrong and must never be swallowed.

Architecture note: closed forms here are validated elsewhere against
independent recomputation (exhaustive dynamic programming and Monte Carlo in
``oracle``), which share none of this module's algebra beyond the rectangle
primitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache

from .exactnum import binomial, multinomial
from .hypergeom import HypergeomSpec, Rectangle, point_prob, rect_count, rect_prob


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; the engine's own math is inconsistent."""


class Outcome(Enum):
    BAND = "band"
    BUMP = "bump"


@dataclass(frozen=True)
class GameParams:
    """Deck shape and stopping window: m ranks of s cards, window [l, u]."""

    m: int
    s: int
    l: int
    u: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if not (0 <= self.l <= self.u <= self.s):
            raise ValueError(
                f"window must satisfy 0 <= l <= u <= s, got l={self.l}, u={self.u}, s={self.s}"
            )

    @property
    def t(self) -> int:
        """Deck size."""
        return self.m * self.s

    @property
    def n_max(self) -> int:
        """Latest draw at which play can still be running: l + (m - 1) * u."""
        return self.l + (self.m - 1) * self.u

    @property
    def is_general(self) -> bool:
        """True when 0 < l < u < s, the configuration the closed forms cover."""
        return 0 < self.l < self.u < self.s


def _require_general(params: GameParams) -> None:
    if not params.is_general:
        raise ValueError(
            f"parameters l={params.l}, u={params.u}, s={params.s} are a boundary "
            "configuration; use joint_distribution, which dispatches it"
        )


@dataclass(frozen=True)
class JointDistribution:
    """Joint law over (stopping draw n, outcome), stored as consecutive rows.

    rows holds (n, band mass, bump mass) for every n in the stored span,
    explicit zeros included.  Masses are exact and must total 1.
    """

    params: GameParams
    rows: tuple[tuple[int, Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("a distribution needs at least one row")
        first = self.rows[0][0]
        total = Fraction(0)
        for i, (n, band, bump) in enumerate(self.rows):
            if n != first + i:
                raise ValueError(f"rows must cover consecutive n; gap before n={n}")
            if band < 0 or bump < 0:
                raise ValueError(f"negative mass at n={n}")
            total += band + bump
        if total != 1:
            raise ConsistencyError(f"total mass is {total}, not 1, for {self.params}")

    @property
    def first_n(self) -> int:
        return self.rows[0][0]

    @property
    def last_n(self) -> int:
        return self.rows[-1][0]

    def band_mass(self, n: int) -> Fraction:
        if self.first_n <= n <= self.last_n:
            return self.rows[n - self.first_n][1]
        return Fraction(0)

    def bump_mass(self, n: int) -> Fraction:
        if self.first_n <= n <= self.last_n:
            return self.rows[n - self.first_n][2]
        return Fraction(0)

    def mass(self, n: int, outcome: Outcome) -> Fraction:
        return self.band_mass(n) if outcome is Outcome.BAND else self.bump_mass(n)

    @property
    def band_marginal(self) -> Fraction:
        return sum((r[1] for r in self.rows), Fraction(0))

    @property
    def bump_marginal(self) -> Fraction:
        return sum((r[2] for r in self.rows), Fraction(0))

    def matches(self, other: JointDistribution) -> bool:
        """Exact equality of both mass functions (row spans may differ)."""
        if self.params != other.params:
            return False
        lo = min(self.first_n, other.first_n)
        hi = max(self.last_n, other.last_n)
        return all(
            self.band_mass(n) == other.band_mass(n) and self.bump_mass(n) == other.bump_mass(n)
            for n in range(lo, hi + 1)
        )


# ==================== general case: band ====================


@cache
def band_joint(params: GameParams, n: int) -> Fraction:
    """P[stop at draw n with a band], general case 0 < l < u < s.

    The last card dealt completes some rank's lower quota: that rank holds
    l - 1 of the first n - 1 cards, and the remaining m - 1 tallies must
    already sit inside [l, u] after n - l of their cards appeared.
    """
    _require_general(params)
    if n < params.m * params.l or n > params.n_max:
        return Fraction(0)
    lead = point_prob(n, params.s, params.t, params.l)
    others = rect_prob(
        HypergeomSpec(params.m - 1, n - params.l, params.s),
        Rectangle.cube(params.m - 1, params.l, params.u),
    )
    return lead * others


def band_marginal(params: GameParams) -> Fraction:
    """P[the deal ends in a band], general case."""
    _require_general(params)
    return sum(
        (band_joint(params, n) for n in range(params.m * params.l, params.n_max + 1)),
        Fraction(0),
    )


# ==================== general case: bump ====================


def bump_k_range(params: GameParams, n: int) -> tuple[int, int]:
    """Admissible count k of capped ranks for a bump at draw n.

    Returns (k_lo, k_hi); an empty range (k_lo > k_hi) signals that no
    configuration exists at this n, it is not an error.
    """
    _require_general(params)
    k_lo = max(1, n - (params.l + (params.m - 1) * (params.u - 1)))
    k_hi = (n - 1) // params.u
    return k_lo, k_hi


def bump_kpp_range(params: GameParams, n: int, k: int) -> tuple[int, int]:
    """Admissible count k'' of interior ranks, given k capped ranks at draw n.

    For every n and k accepted by bump_k_range this window is provably
    non-empty; if the bounds ever cross, the engine is inconsistent and
    ConsistencyError is raised.
    """
    _require_general(params)
    m, l, u = params.m, params.l, params.u
    if not (u + 1 <= n <= params.n_max):
        raise ValueError(f"n={n} outside bump support [{u + 1}, {params.n_max}]")
    k_lo, k_hi = bump_k_range(params, n)
    if not (k_lo <= k <= k_hi):
        raise ValueError(f"k={k} outside admissible range [{k_lo}, {k_hi}] at n={n}")
    n_k = n - 1 - k * u
    num = n_k - (m - k) * (l - 1)
    kpp_lo = max(0, -((-num) // (u - l)))
    kpp_hi = min(n_k // l, m - k - 1)
    if kpp_lo > kpp_hi:
        raise ConsistencyError(
            f"empty interior-rank window at {params}, n={n}, k={k}: "
            f"[{kpp_lo}, {kpp_hi}] should be non-empty"
        )
    return kpp_lo, kpp_hi


@dataclass(frozen=True)
class KppBounds:
    """Interior-rank window for one capped-rank count k at a fixed draw n."""

    k: int
    n_k: int  # cards among non-capped ranks after the first n - 1 deals
    kpp_lo: int
    kpp_hi: int
    kpp_lo_raw: Fraction  # lower cutoff before the ceiling and the clamp at 0


@dataclass(frozen=True)
class BumpIndexRange:
    """Full index bookkeeping for the bump sum at draw n.

    k_lo_raw is the k lower cutoff before clamping at 1; n_hi is the draw
    threshold (m - l) * u + l * (l - 1) beyond which that raw cutoff binds.
    Both exist so range edge cases can be inspected and scanned directly.
    """

    n: int
    k_lo: int
    k_hi: int
    k_lo_raw: int
    n_hi: int
    per_k: tuple[KppBounds, ...]


def bump_index_range(params: GameParams, n: int) -> BumpIndexRange:
    """All admissible (k, k'') windows for a bump at draw n, with raw cutoffs."""
    _require_general(params)
    m, l, u = params.m, params.l, params.u
    k_lo, k_hi = bump_k_range(params, n)
    per_k = []
    for k in range(k_lo, k_hi + 1):
        n_k = n - 1 - k * u
        kpp_lo, kpp_hi = bump_kpp_range(params, n, k)
        raw = Fraction(n_k - (m - k) * (l - 1), u - l)
        per_k.append(KppBounds(k, n_k, kpp_lo, kpp_hi, raw))
    return BumpIndexRange(
        n=n,
        k_lo=k_lo,
        k_hi=k_hi,
        k_lo_raw=n - (l + (m - 1) * (u - 1)),
        n_hi=(m - l) * u + l * (l - 1),
        per_k=tuple(per_k),
    )


def bump_summand(params: GameParams, n: int, k: int, kpp: int) -> Fraction:
    """One (k, k'') term of the bump mass at draw n.

    k ranks sit at the cap u after n - 1 deals, k'' sit strictly inside
    [l, u - 1], the remaining k' = m - k - kpp sit below l, and the nth card
    pushes one capped rank over.  The combinatorial weight is evaluated both
    as the raw multinomial arrangement and in its reduced form; the two must
    agree exactly.
    """
    m, s, l, u, t = params.m, params.s, params.l, params.u, params.t
    kp = m - k - kpp
    n_k = n - 1 - k * u
    rect = Rectangle((0,) * kp + (l,) * kpp, (l - 1,) * kp + (u - 1,) * kpp)
    count = rect_count(HypergeomSpec(m - k, n_k, s), rect)
    weight = Fraction(multinomial(m, (k, kp, kpp)) * k * (s - u), t - n + 1) / binomial(t, n - 1)
    reduced = Fraction(binomial(m, k) * binomial(m - k, kpp) * k * (s - u), n) / binomial(t, n)
    if weight != reduced:
        raise ConsistencyError(
            f"combinatorial weight disagreement at {params}, n={n}, k={k}, kpp={kpp}: "
            f"{weight} vs {reduced}"
        )
    return weight * binomial(s, u) ** k * count


@cache
def bump_joint(params: GameParams, n: int) -> Fraction:
    """P[stop at draw n with a bump], general case 0 < l < u < s."""
    _require_general(params)
    if n < params.u + 1 or n > params.n_max:
        return Fraction(0)
    total = Fraction(0)
    k_lo, k_hi = bump_k_range(params, n)
    for k in range(k_lo, k_hi + 1):
        kpp_lo, kpp_hi = bump_kpp_range(params, n, k)
        for kpp in range(kpp_lo, kpp_hi + 1):
            total += bump_summand(params, n, k, kpp)
    return total


def bump_marginal(params: GameParams) -> Fraction:
    """P[the deal ends in a bump], general case."""
    _require_general(params)
    return sum(
        (bump_joint(params, n) for n in range(params.u + 1, params.n_max + 1)),
        Fraction(0),
    )


# ==================== boundary cases ====================


def coupon_band(params: GameParams, n: int) -> Fraction:
    """P[stop at draw n], u = s case: a bump is impossible.

    With the cap at s every tally stays inside [0, s], so the deal is a pure
    collection race ending when the last rank reaches l.  The stopping mass
    is the increment of P[every tally >= l after n cards].
    """
    if params.u != params.s or params.l < 1:
        raise ValueError(f"coupon_band needs 0 < l <= u = s, got {params}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    box = Rectangle.cube(params.m, params.l, params.s)
    here = rect_prob(HypergeomSpec(params.m, n, params.s), box)
    prev = rect_prob(HypergeomSpec(params.m, n - 1, params.s), box)
    return here - prev


def equal_quota(params: GameParams, n: int) -> tuple[Fraction, Fraction]:
    """(band mass, bump mass) at draw n for the 0 < l = u < s case.

    A band needs every tally to equal u simultaneously, which can only
    happen when the deck is dealt out to exactly n = m * u cards with no rank
    ever passing u; any earlier stop is a bump.  The bump mass at n is the
    decrement of P[no tally has passed u after n cards].
    """
    if not (0 < params.l == params.u < params.s):
        raise ValueError(f"equal_quota needs 0 < l = u < s, got {params}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    last = params.m * params.u
    if n > last:
        return Fraction(0), Fraction(0)
    box = Rectangle.cube(params.m, 0, params.u)
    here = rect_prob(HypergeomSpec(params.m, n, params.s), box)
    prev = rect_prob(HypergeomSpec(params.m, n - 1, params.s), box)
    band = here if n == last else Fraction(0)
    return band, prev - here


# ==================== assembly ====================


@cache
def joint_distribution(params: GameParams) -> JointDistribution:
    """The full joint law, dispatching boundary parameter configurations.

    Row span: the general case stores n from min(m*l, u+1) through n_max with
    explicit zeros, so both outcome columns are visible from their earliest
    possible draw.  Degenerate corners store their actual support.
    """
    m, s, l, u = params.m, params.s, params.l, params.u
    one = Fraction(1)
    zero = Fraction(0)
    if l == 0 and u == 0:
        # Any first card overshoots a zero cap immediately.
        rows = [(1, zero, one)]
    elif l == 0:
        # Quotas are met before the first draw; the first card cannot leave
        # [0, u], so the deal stops at once with a band.
        rows = [(1, one, zero)]
    elif u == s:
        rows = [
            (n, coupon_band(params, n), zero) for n in range(m * l, params.n_max + 1)
        ]
    elif l == u:
        start = min(u + 1, params.n_max)
        rows = [(n, *equal_quota(params, n)) for n in range(start, params.n_max + 1)]
    else:
        start = min(m * l, u + 1)
        rows = [
            (n, band_joint(params, n), bump_joint(params, n))
            for n in range(start, params.n_max + 1)
        ]
    return JointDistribution(params, tuple(rows))
