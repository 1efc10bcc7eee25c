"""Monte Carlo exploration of 12-pair counts under different trit distributions.

Seed contract: trials are split into fixed blocks of ``BLOCK_SIZE``; block ``k``
draws from ``numpy.random.default_rng(SeedSequence(seed, spawn_key=(k,)))``.
Per-block results are exact integer sums, so the summary is bit-identical
whatever the number of workers.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .codec import text_trits
from .trits import SymbolTable

BLOCK_SIZE = 8192
_TOL = 1e-12


@dataclass(frozen=True)
class TritDistribution:
    """iid trits, or a first-order Markov chain over trits."""

    kind: str
    probs: tuple[float, float, float] | None = None
    matrix: tuple[tuple[float, float, float], ...] | None = None
    initial: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.kind == "iid":
            _check_row(self.probs, "probs")
        elif self.kind in ("markov", "empirical"):
            if self.matrix is None or len(self.matrix) != 3:
                raise ValueError("markov distribution needs a 3x3 transition matrix")
            for i, row in enumerate(self.matrix):
                _check_row(row, f"matrix row {i}")
            _check_row(self.initial, "initial")
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    @classmethod
    def iid(cls, p0: float, p1: float, p2: float) -> "TritDistribution":
        return cls("iid", probs=(p0, p1, p2))

    @classmethod
    def uniform(cls) -> "TritDistribution":
        return cls.iid(1 / 3, 1 / 3, 1 / 3)

    @classmethod
    def markov(cls, matrix, initial=(1 / 3, 1 / 3, 1 / 3)) -> "TritDistribution":
        return cls("markov", matrix=tuple(tuple(r) for r in matrix), initial=tuple(initial))

    @classmethod
    def from_json(cls, path: str | Path) -> "TritDistribution":
        """Load ``{"matrix": [[...], [...], [...]], "initial": [...]}``."""
        data = json.loads(Path(path).read_text())
        return cls.markov(data["matrix"], data.get("initial", (1 / 3, 1 / 3, 1 / 3)))

    @classmethod
    def empirical(cls, text: str, table: SymbolTable | None = None) -> "TritDistribution":
        """Markov chain fitted to the trit stream of ``text`` under the coding table."""
        trits = text_trits(text, table)
        if len(trits) < 2:
            raise ValueError("need at least one character of text")
        pair_counts = Counter(zip(trits, trits[1:]))
        rows = []
        for a in range(3):
            total = sum(pair_counts[a, b] for b in range(3))
            rows.append(
                tuple(pair_counts[a, b] / total for b in range(3)) if total else (1 / 3,) * 3
            )
        first = Counter(trits)
        initial = tuple(first[t] / len(trits) for t in range(3))
        return cls("empirical", matrix=tuple(rows), initial=initial)

    @property
    def transition(self) -> np.ndarray:
        if self.kind == "iid":
            return np.tile(np.asarray(self.probs, dtype=float), (3, 1))
        return np.asarray(self.matrix, dtype=float)

    @property
    def start(self) -> np.ndarray:
        return np.asarray(self.probs if self.kind == "iid" else self.initial, dtype=float)


def _check_row(row, name):
    if row is None or len(row) != 3:
        raise ValueError(f"{name}: need three probabilities")
    if any(p < 0 or not math.isfinite(p) for p in row):
        raise ValueError(f"{name}: probabilities must be finite and non-negative")
    if abs(sum(row) - 1) > _TOL:
        raise ValueError(f"{name}: probabilities sum to {sum(row)!r}, not 1")


def sample_trits(dist: TritDistribution, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` x ``n`` array of trits."""
    if dist.kind == "iid":
        return rng.choice(3, size=(size, n), p=dist.probs).astype(np.int8)
    cdf = np.cumsum(dist.transition, axis=1)
    out = np.empty((size, n), dtype=np.int8)
    u = rng.random((size, n))
    out[:, 0] = np.searchsorted(np.cumsum(dist.start), u[:, 0], side="right").clip(max=2)
    for j in range(1, n):
        rows = cdf[out[:, j - 1]]
        out[:, j] = (u[:, j, None] >= rows).sum(axis=1).clip(max=2)
    return out


def greedy_pair_counts(samples: np.ndarray) -> np.ndarray:
    """Greedy B23 12-pair count for each row of ``samples``."""
    counts = np.zeros(samples.shape[0], dtype=np.int64)
    free_one = np.zeros(samples.shape[0], dtype=bool)
    for j in range(samples.shape[1]):
        cur = samples[:, j]
        fused = free_one & (cur == 2)
        counts += fused
        free_one = cur == 1
    return counts


def substring_pair_counts(samples: np.ndarray) -> np.ndarray:
    return ((samples[:, :-1] == 1) & (samples[:, 1:] == 2)).sum(axis=1)


def _run_block(args) -> tuple[int, int, int, int]:
    dist, n, seed, block, size = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    samples = sample_trits(dist, n, size, rng)
    greedy = greedy_pair_counts(samples)
    return size, int(greedy.sum()), int((greedy**2).sum()), int(substring_pair_counts(samples).sum())


@dataclass(frozen=True)
class PairSummary:
    n: int
    trials: int
    mean_pairs: float
    variance: float
    mean_substring_pairs: float

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.trials)

    @property
    def mean_bits_saved(self) -> float:
        return 2 * self.mean_pairs


def pair_frequency_monte_carlo(
    dist: TritDistribution, n: int, trials: int, seed: int, workers: int = 1
) -> PairSummary:
    """Empirical mean and variance of greedy 12-pair counts in length-n strings."""
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be >= 1")
    nblocks = -(-trials // BLOCK_SIZE)
    jobs = [
        (dist, n, seed, k, min(BLOCK_SIZE, trials - k * BLOCK_SIZE)) for k in range(nblocks)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_block, jobs))
    else:
        parts = [_run_block(j) for j in jobs]
    total = sum(p[0] for p in parts)
    s1 = sum(p[1] for p in parts)
    s2 = sum(p[2] for p in parts)
    sub = sum(p[3] for p in parts)
    mean = Fraction(s1, total)
    var = Fraction(s2, total) - mean**2
    if total > 1:
        var *= Fraction(total, total - 1)
    return PairSummary(n, total, float(mean), float(var), sub / total)


def exact_pair_moments(dist: TritDistribution, n: int) -> tuple[float, float]:
    """Exact mean and variance of the greedy pair count, by dynamic programming.

    State is (last trit, pairs so far); the chain is advanced one trit at a time.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    trans = dist.transition
    state: dict[tuple[int, int], float] = {
        (t, 0): float(p) for t, p in enumerate(dist.start) if p > 0
    }
    for _ in range(n - 1):
        nxt: dict[tuple[int, int], float] = {}
        for (last, k), p in state.items():
            for t in range(3):
                q = trans[last, t]
                if q == 0:
                    continue
                key = (t, k + (last == 1 and t == 2))
                nxt[key] = nxt.get(key, 0.0) + p * q
        state = nxt
    mean = sum(k * p for (_, k), p in state.items())
    second = sum(k * k * p for (_, k), p in state.items())
    return mean, second - mean**2
