"""Counting trit strings without a 12-pair, and the B23 compression-ratio bound.

S(n) is the number of length-n trit strings with no adjacent (1, 2). It is
computed three ways that are checked against each other: exhaustive
enumeration, the recurrence S(n) = 3 S(n-1) - S(n-2), and the golden-ratio
closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath
import numpy as np

from .codec import symbol_bits
from .trits import ENGLISH_FREQUENCIES, FrequencyTable, SymbolTable, get_table

PHI = (1 + math.sqrt(5)) / 2
BRUTEFORCE_CAP = 14


def count_no12_bruteforce(n: int) -> int:
    """Enumerate all 3**n strings and count those with no 12 substring."""
    if not 1 <= n <= BRUTEFORCE_CAP:
        raise ValueError(f"brute force supports 1 <= n <= {BRUTEFORCE_CAP}, got {n}")
    values = np.arange(3**n, dtype=np.int64)
    bad = np.zeros(values.shape, dtype=bool)
    prev = values % 3
    for _ in range(n - 1):
        values //= 3
        cur = values % 3
        # digits are read least-significant first, so a 12 reads as cur=1, prev=2
        bad |= (cur == 1) & (prev == 2)
        prev = cur
    return int((~bad).sum())


@lru_cache(maxsize=None)
def _recurrence_table(n: int) -> tuple[int, ...]:
    s = [1, 3, 8]  # S(0) = 1 (empty string) extends the recurrence
    while len(s) <= n:
        s.append(3 * s[-1] - s[-2])
    return tuple(s)


def count_no12_recurrence(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _recurrence_table(n)[n]


@dataclass(frozen=True)
class ClosedForm:
    value: float
    rounded: int
    exact: bool
    precision: int


def count_no12_closed_form(n: int, prec: int | None = None) -> ClosedForm:
    """(phi**(2n+2) - phi**(-2n-2)) / sqrt(5) in binary floating point.

    ``prec`` is the working precision in bits; by default it grows with n so the
    rounded value is always exact. Plain doubles (``prec=53``) stop rounding
    correctly at n = 35. ``exact`` is False, with a warning, when the rounding
    error bound reaches 1/4.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 2 * n + 2
    if prec is None:
        prec = max(53, math.ceil(k * math.log2(PHI)) + 32)
    with mpmath.workprec(prec):
        phi = (1 + mpmath.sqrt(5)) / 2
        value = (phi**k - phi ** (-k)) / mpmath.sqrt(5)
        rounded = int(mpmath.nint(value))
    # each of the ~k+4 roundings contributes at most one unit in the last place
    exact = float(value) * (k + 4) * 2.0**-prec < 0.25
    if not exact:
        warnings.warn(f"closed form for n={n} at {prec} bits may round incorrectly", stacklevel=2)
    return ClosedForm(float(value), rounded, exact, prec)


def proof_diagram_sum(n: int) -> int:
    """2 S(n-1) + S(n-2) + ... + S(1) + 2, valid for n >= 3."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return 2 * count_no12_recurrence(n - 1) + sum(
        count_no12_recurrence(i) for i in range(1, n - 1)
    ) + 2


def fibonacci_identity_check(n_max: int) -> bool:
    """Check S(n) == G(2n) for n <= n_max, with G(1)=2, G(2)=3, G(k)=G(k-1)+G(k-2)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    g = [None, 2, 3]
    while len(g) <= 2 * n_max:
        g.append(g[-1] + g[-2])
    return all(count_no12_recurrence(n) == g[2 * n] for n in range(1, n_max + 1))


def p_at_least_one_12_exact(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 3**n
    return Fraction(total - count_no12_recurrence(n), total)


def p_at_least_one_12(n: int) -> float:
    """Probability that a uniform random length-n trit string contains a 12-pair."""
    return float(p_at_least_one_12_exact(n))


def decay_ratio_fit(n_lo: int = 10, n_hi: int = 40) -> float:
    """Per-step ratio of 1 - P(n) from a log-linear least-squares fit."""
    ns = np.arange(n_lo, n_hi + 1)
    log_q = [math.log(count_no12_recurrence(int(n))) - int(n) * math.log(3) for n in ns]
    slope, _ = np.polyfit(ns, log_q, 1)
    return math.exp(slope)


@dataclass(frozen=True)
class CountingReport:
    n: int
    s_n_recurrence: int
    s_n_closed_form: float
    s_n_closed_rounded: int
    closed_form_exact: bool
    p_n: float
    s_n_bruteforce: int | None = None

    @property
    def consistent(self) -> bool:
        ok = self.s_n_closed_rounded == self.s_n_recurrence or not self.closed_form_exact
        if self.s_n_bruteforce is not None:
            ok = ok and self.s_n_bruteforce == self.s_n_recurrence
        return ok


def counting_report(n: int, bruteforce_cap: int = BRUTEFORCE_CAP) -> CountingReport:
    closed = count_no12_closed_form(n)
    return CountingReport(
        n=n,
        s_n_recurrence=count_no12_recurrence(n),
        s_n_closed_form=closed.value,
        s_n_closed_rounded=closed.rounded,
        closed_form_exact=closed.exact,
        p_n=p_at_least_one_12(n),
        s_n_bruteforce=count_no12_bruteforce(n) if n <= min(bruteforce_cap, BRUTEFORCE_CAP) else None,
    )


def code_lengths(table: SymbolTable | None = None) -> dict[str, int]:
    """Compressed bit length of each symbol's code."""
    return {s: len(b) for s, b in symbol_bits(table or get_table()).items()}


def compression_ratio_bound(
    freqs: FrequencyTable = ENGLISH_FREQUENCIES,
    table: SymbolTable | None = None,
    lengths: Mapping[str, int] | None = None,
    space_weight: float = 100.0,
) -> float:
    """Expected compressed/uncompressed length for English text.

    Space is given half of all occurrences and the letters share the other half
    in proportion to their frequencies: with weights out of 200,
    (len(space) * 100 + sum(len(c) * f(c))) / (8 * 200).
    ``lengths`` overrides the per-symbol code lengths.
    """
    lengths = lengths if lengths is not None else code_lengths(table)
    letters = freqs.letter_frequencies
    compressed = lengths[" "] * space_weight + sum(lengths[c] * f for c, f in letters.items())
    return compressed / (8 * 2 * space_weight)


def frequency_mass_by_length(
    freqs: FrequencyTable = ENGLISH_FREQUENCIES, table: SymbolTable | None = None
) -> dict[int, float]:
    """Total letter frequency grouped by compressed code length."""
    lengths = code_lengths(table)
    out: dict[int, float] = {}
    for c, f in freqs.letter_frequencies.items():
        out[lengths[c]] = out.get(lengths[c], 0.0) + f
    return out
