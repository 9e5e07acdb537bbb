"""Exact combinatorial arithmetic and decimal rendering.

Everything here is integer or rational arithmetic with no floating point.
Probabilities live as ``fractions.Fraction`` values until the moment they
are printed; printing is correctly rounded (round half to even) to a fixed
number of significant figures.
"""

from __future__ import annotations

import math
from fractions import Fraction


class BinomialTable:
    """Pascal-triangle rows 0..max_n, built once and then read-only."""

    __slots__ = ("max_n", "_rows")

    def __init__(self, max_n: int) -> None:
        if max_n < 0:
            raise ValueError(f"max_n must be >= 0, got {max_n}")
        rows: list[tuple[int, ...]] = [(1,)]
        for a in range(1, max_n + 1):
            prev = rows[a - 1]
            row = [1] * (a + 1)
            for b in range(1, a):
                row[b] = prev[b - 1] + prev[b]
            rows.append(tuple(row))
        self.max_n = max_n
        self._rows = tuple(rows)

    def binom(self, a: int, b: int) -> int:
        """C(a, b) with the convention C(a, b) = 0 for b < 0 or b > a."""
        if a < 0:
            raise ValueError(f"binomial requires a >= 0, got a={a}")
        if a > self.max_n:
            raise ValueError(f"a={a} exceeds table max_n={self.max_n}")
        if b < 0 or b > a:
            return 0
        return self._rows[a][b]

    def row(self, a: int) -> tuple[int, ...]:
        return self._rows[a]


# Shared table, grown by replacement (never mutated) so readers always see
# a consistent snapshot.  Sized generously up front; doubles on demand.
_TABLE = BinomialTable(64)


def binomial(a: int, b: int) -> int:
    """C(a, b) as an exact integer; 0 when b < 0 or b > a; a < 0 is an error."""
    global _TABLE
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got a={a}")
    if b < 0 or b > a:
        return 0
    table = _TABLE
    if a > table.max_n:
        table = BinomialTable(max(a, 2 * table.max_n))
        _TABLE = table
    return table.binom(a, b)


def multinomial(n: int, parts: list[int] | tuple[int, ...]) -> int:
    """n! / (parts[0]! * parts[1]! * ...) for non-negative parts summing to n."""
    if n < 0:
        raise ValueError(f"multinomial requires n >= 0, got {n}")
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {list(parts)}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {list(parts)} do not sum to {n}")
    out = 1
    remaining = n
    for p in parts:
        out *= binomial(remaining, p)
        remaining -= p
    return out


def _floor_log10(x: Fraction) -> int:
    """Largest e with 10**e <= x, for x > 0."""
    e = len(str(x.numerator)) - len(str(x.denominator))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def _round_half_even(x: Fraction) -> int:
    """Nearest integer to x >= 0, ties to the even neighbour."""
    n, r = divmod(x.numerator, x.denominator)
    twice = 2 * r
    if twice > x.denominator or (twice == x.denominator and n % 2 == 1):
        return n + 1
    return n


def _place_point(digits: str, e: int) -> str:
    # digits is the significand; the leading digit sits at magnitude 10**e.
    if e >= len(digits) - 1:
        return digits + "0" * (e - len(digits) + 1)
    if e >= 0:
        return digits[: e + 1] + "." + digits[e + 1 :]
    return "0." + "0" * (-e - 1) + digits


def to_decimal(x: Fraction | int, sig_figs: int = 6) -> str:
    """Render x as a plain decimal string with exactly sig_figs significant figures.

    Rounding is round-half-to-even on the exact rational value, so the output
    is the correctly rounded decimal.  Exact zero renders as "0".
    """
    if sig_figs < 1:
        raise ValueError(f"sig_figs must be >= 1, got {sig_figs}")
    f = Fraction(x)
    if f == 0:
        return "0"
    sign = "-" if f < 0 else ""
    f = abs(f)
    e = _floor_log10(f)
    d = _round_half_even(f * Fraction(10) ** (sig_figs - 1 - e))
    if d == 10**sig_figs:
        d //= 10
        e += 1
    return sign + _place_point(str(d), e)


def sqrt_decimal(x: Fraction | int, sig_figs: int = 6) -> str:
    """Correctly rounded decimal rendering of sqrt(x) for x >= 0.

    sqrt(x) is generally irrational, so the rounding is decided by exact
    integer comparisons against the halfway point rather than by computing
    any approximation first.
    """
    if sig_figs < 1:
        raise ValueError(f"sig_figs must be >= 1, got {sig_figs}")
    f = Fraction(x)
    if f < 0:
        raise ValueError(f"sqrt_decimal requires x >= 0, got {x}")
    if f == 0:
        return "0"
    e = _floor_log10(f) // 2  # 10**e <= sqrt(f) < 10**(e+1)
    w = f * Fraction(10) ** (2 * (sig_figs - 1 - e))
    a = math.isqrt(w.numerator * w.denominator) // w.denominator
    # Compare sqrt(w) against a + 1/2 without leaving the integers:
    # sqrt(w) > a + 1/2  iff  4*num > den*(2a+1)^2.
    lhs = 4 * w.numerator
    rhs = w.denominator * (2 * a + 1) ** 2
    if lhs > rhs or (lhs == rhs and a % 2 == 1):
        d = a + 1
    else:
        d = a
    if d == 10**sig_figs:
        d //= 10
        e += 1
    return _place_point(str(d), e)
