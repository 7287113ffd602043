"""Exact null distributions of the run-count and head-count statistics.

Under the null model (two equiprobable symbols, independent trials)
every length-n sequence has probability 2^-n, so every tail probability
is a dyadic rational.  All computations here use exact integer and
Fraction arithmetic; decimals exist only as renderings.

Two independent routes produce the run-count law.  The closed form,
2*C(n-1, r-1) sequences with exactly r runs (choose which of the n-1
adjacent pairs are breaks, times 2 for the first symbol), scales to any
n.  The enumeration route tallies the statistic over all 2^n sequences
and is the oracle the closed form is validated against in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

# Exact probabilities are plain Fractions; the alias marks intent.
ExactProb = Fraction

# Tail conventions for the head-count test.
ONE_SIDED = "paper-one-sided"
TWO_SIDED_DOUBLED = "two-sided-doubled"
CONVENTIONS = (ONE_SIDED, TWO_SIDED_DOUBLED)

# Full enumeration of {0,1}^n is refused above this length.
ENUMERATION_CAP = 24

_CHUNK = 1 << 20


class CapExceededError(ValueError):
    """An exhaustive computation was requested beyond its configured cap."""


def as_probability(value: Fraction | int | str) -> Fraction:
    """Coerce to an exact Fraction and require it to lie in [0, 1]."""
    p = Fraction(value)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


def parse_probability(text: str) -> Fraction:
    """Parse ``1/20`` or ``0.05`` style text to an exact probability.

    Decimal strings are expanded exactly (0.05 becomes 1/20), never
    routed through floating point.
    """
    try:
        p = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse probability from {text!r}: {exc}") from None
    return as_probability(p)


def decimal_string(p: Fraction, places: int = 3) -> str:
    """Round to ``places`` decimal digits, exactly (ties to even)."""
    if places < 0:
        raise ValueError("places must be nonnegative")
    if p < 0:
        raise ValueError("negative probabilities are not rendered")
    scale = 10**places
    q = round(p * scale)  # Fraction.__round__ is exact
    if places == 0:
        return str(q)
    return f"{q // scale}.{q % scale:0{places}d}"


def exact_decimal_string(p: Fraction) -> str:
    """Exact terminating decimal expansion when one exists.

    Dyadic probabilities always terminate.  Non-terminating values fall
    back to 12 rounded places.
    """
    den = p.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return decimal_string(p, places=12)
    k = max(twos, fives)
    if k == 0:
        return str(p.numerator)
    digits = p.numerator * 10**k // p.denominator
    text = f"{digits // 10**k}.{digits % 10**k:0{k}d}"
    return text.rstrip("0").rstrip(".") if "." in text else text


def sequence_probability(n: int) -> Fraction:
    """Probability 2^-n of any single length-n sequence under the null."""
    if n < 1:
        raise ValueError("length must be at least 1")
    return Fraction(1, 1 << n)


def runs_count_exact(n: int, r: int) -> int:
    """Number of length-n binary sequences with exactly r runs.

    Closed form 2*C(n-1, r-1); the enumeration oracle below certifies it.
    """
    if n < 1:
        raise ValueError("length must be at least 1")
    if not 1 <= r <= n:
        raise ValueError(f"run count {r} out of range 1..{n}")
    return 2 * comb(n - 1, r - 1)


@dataclass(frozen=True)
class RunsDistribution:
    """Exact counts of sequences by run count, for one length n."""

    n: int
    counts: tuple[int, ...]  # counts[r - 1] = number of sequences with r runs

    @property
    def total(self) -> int:
        return 1 << self.n

    def count(self, r: int) -> int:
        if not 1 <= r <= self.n:
            raise ValueError(f"run count {r} out of range 1..{self.n}")
        return self.counts[r - 1]

    def pmf(self, r: int) -> Fraction:
        return Fraction(self.count(r), self.total)

    def cdf(self, r: int) -> Fraction:
        """P(R <= r) under the uniform null."""
        if not 1 <= r <= self.n:
            raise ValueError(f"run count {r} out of range 1..{self.n}")
        return Fraction(sum(self.counts[: r]), self.total)

    def sf(self, r: int) -> Fraction:
        """P(R >= r) under the uniform null."""
        if not 1 <= r <= self.n:
            raise ValueError(f"run count {r} out of range 1..{self.n}")
        return Fraction(sum(self.counts[r - 1 :]), self.total)

    def to_csv(self) -> str:
        lines = ["r,count,pmf-numerator,pmf-denominator,pmf-decimal"]
        for r in range(1, self.n + 1):
            p = self.pmf(r)
            lines.append(
                f"{r},{self.count(r)},{p.numerator},{p.denominator},{exact_decimal_string(p)}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        rows = []
        for r in range(1, self.n + 1):
            p = self.pmf(r)
            rows.append(
                {
                    "r": r,
                    "count": self.count(r),
                    "pmf": {
                        "num": p.numerator,
                        "den": p.denominator,
                        "decimal": exact_decimal_string(p),
                    },
                }
            )
        return {"n": self.n, "total": self.total, "rows": rows}


def runs_distribution(n: int) -> RunsDistribution:
    """Run-count distribution from the closed form; any n."""
    if n < 1:
        raise ValueError("length must be at least 1")
    return RunsDistribution(n, tuple(runs_count_exact(n, r) for r in range(1, n + 1)))


def enumerate_runs_distribution(n: int, cap: int = ENUMERATION_CAP) -> RunsDistribution:
    """Run-count distribution by tallying the statistic over all 2^n sequences.

    This is the oracle route: independent of the closed form above.  The
    run count of a packed sequence x is one more than the number of set
    bits in ``x ^ (x >> 1)`` restricted to the n-1 adjacent pairs.
    """
    if n < 1:
        raise ValueError("length must be at least 1")
    if n > cap:
        raise CapExceededError(f"enumeration over 2^{n} sequences exceeds cap {cap}")
    counts = np.zeros(n + 1, dtype=np.int64)
    pair_mask = (1 << (n - 1)) - 1
    for start in range(0, 1 << n, _CHUNK):
        x = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.uint32)
        r = _popcount((x ^ (x >> np.uint32(1))) & np.uint32(pair_mask)) + 1
        counts += np.bincount(r, minlength=n + 1)
    return RunsDistribution(n, tuple(int(c) for c in counts[1:]))


def _popcount(values: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values).astype(np.int64)
    v = values.astype(np.uint32)
    total = np.zeros(v.shape, dtype=np.int64)
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    for shift in (0, 8, 16, 24):
        total += table[(v >> np.uint32(shift)) & np.uint32(0xFF)]
    return total


def _runs_tail_count(n: int, r: int, tail: str) -> int:
    if tail == "lower":
        return sum(runs_count_exact(n, i) for i in range(1, r + 1))
    if tail == "upper":
        return sum(runs_count_exact(n, i) for i in range(r, n + 1))
    raise ValueError(f"unknown tail {tail!r}; expected 'lower' or 'upper'")


def runs_pvalue(n: int, r: int, tail: str) -> Fraction:
    """Exact tail probability of the run count under the uniform null.

    ``lower`` gives P(R <= r), ``upper`` gives P(R >= r).
    """
    if not 1 <= r <= n:
        raise ValueError(f"run count {r} out of range 1..{n}")
    return Fraction(_runs_tail_count(n, r, tail), 1 << n)


def binomial_pvalue(n: int, k: int, convention: str = ONE_SIDED) -> Fraction:
    """Exact tail probability of the count of first-symbol outcomes.

    Under ``paper-one-sided`` this is P(K >= k) when k >= n/2 and
    P(K <= k) otherwise, for K binomial(n, 1/2).  Under
    ``two-sided-doubled`` the one-sided value is doubled and clipped
    at 1.
    """
    if n < 1:
        raise ValueError("length must be at least 1")
    if not 0 <= k <= n:
        raise ValueError(f"count {k} out of range 0..{n}")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    if 2 * k >= n:
        tail = sum(comb(n, i) for i in range(k, n + 1))
    else:
        tail = sum(comb(n, i) for i in range(0, k + 1))
    p = Fraction(tail, 1 << n)
    if convention == TWO_SIDED_DOUBLED:
        p = min(Fraction(1), 2 * p)
    return p
