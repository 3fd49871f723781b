"""Seeded, reproducible sampling and statistical verification.

Randomness comes from counter-based Philox streams keyed by a master
seed and a stream index, so trial i always sees the same bits no matter
how trials are scheduled across workers.  Integer tallies make every
aggregate order-insensitive; rerunning with the same seed reproduces
results bit for bit, sequentially or in parallel.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping as MappingABC

import numpy as np

from .core import Mapping
from .exploration import Closure, SmallestLabel, explore

_U64 = 1 << 64


@dataclass(frozen=True)
class RngStream:
    """One independent random stream, (master_seed, stream_index).

    Distinct indices under the same master seed give statistically
    independent Philox streams; the pair fully determines the bits.
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < _U64:
            raise ValueError(f"master_seed must be a 64-bit integer, got {self.master_seed}")
        if not 0 <= self.stream_index < _U64:
            raise ValueError(f"stream_index must fit in 64 bits, got {self.stream_index}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.Philox(key=[self.master_seed, self.stream_index])
        )


@dataclass(frozen=True)
class Estimate:
    """A binomial point estimate with its Wilson score interval."""

    trials: int
    successes: int
    point: float
    ci_low: float
    ci_high: float
    z: float

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "point": self.point,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "z": self.z,
        }


@dataclass(frozen=True)
class Histogram:
    """Integer-valued counts over a contiguous support range."""

    lo: int
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts) != self.total:
            raise ValueError("total must equal the sum of counts")

    @property
    def hi(self) -> int:
        return self.lo + len(self.counts) - 1

    def support(self) -> range:
        return range(self.lo, self.lo + len(self.counts))

    def count_of(self, value: int) -> int:
        if self.lo <= value <= self.hi:
            return self.counts[value - self.lo]
        return 0

    @classmethod
    def from_samples(cls, samples: Iterable[int], lo: int, hi: int) -> "Histogram":
        counts = [0] * (hi - lo + 1)
        total = 0
        for s in samples:
            counts[s - lo] += 1
            total += 1
        return cls(lo, tuple(counts), total)

    def to_json_dict(self) -> dict:
        return {"lo": self.lo, "counts": list(self.counts), "total": self.total}


def wilson_interval(successes: int, trials: int, z: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion, clamped to [0,1]."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes={successes} outside [0, {trials}]")
    if z <= 0:
        raise ValueError(f"z must be > 0, got {z}")
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    margin = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    return (max(0.0, centre - margin), min(1.0, centre + margin))


def make_estimate(successes: int, trials: int, z: float = 1.96) -> Estimate:
    low, high = wilson_interval(successes, trials, z)
    return Estimate(trials, successes, successes / trials, low, high, z)


def sample_mapping(n: int, stream: RngStream) -> Mapping:
    """Draw a uniform random mapping on [n] from the given stream.

    Each table entry is i.i.d. uniform on [1..n]; the underlying bounded
    integer sampling is rejection-based, hence exactly uniform.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = stream.generator().integers(1, n + 1, size=n)
    return Mapping(n, tuple(int(x) for x in table))


def _unique_cyclic_mask(tables: np.ndarray) -> np.ndarray:
    """Row-wise unique-cyclic test for a batch of 0-based tables.

    Iterating f doubling-wise, f^(2^t) with 2^t >= n maps every vertex
    into the cyclic set and is onto it, so a row has a unique cyclic
    vertex exactly when all entries of the iterated row agree.
    """
    _, n = tables.shape
    g = tables
    for _ in range(max(1, (n - 1).bit_length())):
        g = np.take_along_axis(g, g, axis=1)
    return (g == g[:, :1]).all(axis=1)


def count_unique_cyclic(
    n: int, master_seed: int, start: int, stop: int, batch: int = 4096
) -> int:
    """Successes of the unique-cyclic event over trial indices [start, stop).

    Trial i draws its mapping from stream (master_seed, i), so any
    partition of the index range tallies to the same total.
    """
    successes = 0
    for lo in range(start, stop, batch):
        hi = min(lo + batch, stop)
        rows = np.empty((hi - lo, n), dtype=np.int64)
        for j, trial in enumerate(range(lo, hi)):
            gen = RngStream(master_seed, trial).generator()
            rows[j] = gen.integers(0, n, size=n)
        successes += int(_unique_cyclic_mask(rows).sum())
    return successes


def _split_ranges(trials: int, jobs: int) -> list[tuple[int, int]]:
    step = (trials + jobs - 1) // jobs
    return [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]


def estimate_unique_cyclic(
    n: int, trials: int, master_seed: int, *, z: float = 1.96, jobs: int = 1
) -> Estimate:
    """Monte Carlo estimate of P(uniform mapping has a unique cyclic vertex).

    The point estimate targets 1/n.  Results are bit-identical for any
    jobs value because each trial owns its derived stream.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if jobs == 1 or trials < 2 * jobs:
        successes = count_unique_cyclic(n, master_seed, 0, trials)
    else:
        ranges = _split_ranges(trials, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                count_unique_cyclic,
                [n] * len(ranges),
                [master_seed] * len(ranges),
                [lo for lo, _ in ranges],
                [hi for _, hi in ranges],
            )
            successes = sum(parts)
    return make_estimate(successes, trials, z)


@dataclass(frozen=True)
class ConditionalBin:
    """Empirical vs predicted closure frequency for one (i, T_{i-1}, T_i)."""

    round_index: int
    t_prev: int
    t_cur: int
    observations: int
    successes: int
    predicted: Fraction
    frequency: float
    deviation_se: float
    flagged: bool

    def to_json_dict(self) -> dict:
        return {
            "round": self.round_index,
            "t_prev": self.t_prev,
            "t_cur": self.t_cur,
            "observations": self.observations,
            "successes": self.successes,
            "predicted": f"{self.predicted.numerator}/{self.predicted.denominator}",
            "frequency": self.frequency,
            "deviation_se": self.deviation_se,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class ConditionalReport:
    """Per-bin comparison of closure frequencies with their predictions."""

    n: int
    trials: int
    master_seed: int
    bins: tuple[ConditionalBin, ...]
    se_threshold: float

    def flagged_bins(self, min_observations: int = 100) -> list[ConditionalBin]:
        return [
            b for b in self.bins if b.flagged and b.observations >= min_observations
        ]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.master_seed,
            "se_threshold": self.se_threshold,
            "bins": [b.to_json_dict() for b in self.bins],
        }


def tally_round_events(
    n: int, master_seed: int, start: int, stop: int
) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Raw (observations, successes) tallies keyed by (i, T_{i-1}, T_i)."""
    tallies: dict[tuple[int, int, int], tuple[int, int]] = {}
    strategy = SmallestLabel()
    for trial in range(start, stop):
        m = sample_mapping(n, RngStream(master_seed, trial))
        trace = explore(m, strategy)
        t_prev = 0
        for r, t_cur in zip(trace.rounds, trace.T):
            if r.index == 1:
                success = r.closure is Closure.SELF_LOOP
            else:
                success = r.closure is Closure.PRIOR_ROUND
            key = (r.index, t_prev, t_cur)
            obs, succ = tallies.get(key, (0, 0))
            tallies[key] = (obs + 1, succ + int(success))
            t_prev = t_cur
    return tallies


def _merge_tallies(parts) -> dict[tuple[int, int, int], tuple[int, int]]:
    merged: dict[tuple[int, int, int], tuple[int, int]] = {}
    for part in parts:
        for key, (obs, succ) in part.items():
            o, s = merged.get(key, (0, 0))
            merged[key] = (o + obs, s + succ)
    return merged


def check_round_conditionals(
    n: int,
    trials: int,
    master_seed: int,
    *,
    se_threshold: float = 4.0,
    jobs: int = 1,
) -> ConditionalReport:
    """Test the per-round closure predictions against sampled traces.

    For each trial a uniform mapping is explored (smallest-label starts)
    and every round's closure outcome lands in the bin of its observed
    (i, T_{i-1}, T_i).  Round 1 succeeds on a self loop, predicted at
    1/T_1; later rounds succeed on attaching to earlier rounds,
    predicted at T_{i-1}/T_i.  A bin is flagged when its empirical
    frequency sits more than se_threshold binomial standard errors from
    the prediction.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if jobs == 1 or trials < 2 * jobs:
        tallies = tally_round_events(n, master_seed, 0, trials)
    else:
        ranges = _split_ranges(trials, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                tally_round_events,
                [n] * len(ranges),
                [master_seed] * len(ranges),
                [lo for lo, _ in ranges],
                [hi for _, hi in ranges],
            )
            tallies = _merge_tallies(parts)
    bins = []
    for key in sorted(tallies):
        i, t_prev, t_cur = key
        obs, succ = tallies[key]
        predicted = Fraction(1, t_cur) if i == 1 else Fraction(t_prev, t_cur)
        freq = succ / obs
        p = float(predicted)
        se = math.sqrt(p * (1 - p) / obs)
        if se > 0:
            deviation = abs(freq - p) / se
        else:
            deviation = 0.0 if freq == p else math.inf
        bins.append(
            ConditionalBin(
                round_index=i,
                t_prev=t_prev,
                t_cur=t_cur,
                observations=obs,
                successes=succ,
                predicted=predicted,
                frequency=freq,
                deviation_se=deviation,
                flagged=deviation > se_threshold,
            )
        )
    return ConditionalReport(n, trials, master_seed, tuple(bins), se_threshold)


def chi_square_statistic(
    h: Histogram, pmf: MappingABC[int, Fraction | float]
) -> tuple[float, int]:
    """Goodness-of-fit statistic of a histogram against an exact pmf.

    Bins with expected count below 5 are pooled into a single upper-tail
    bin before summing (obs - exp)^2 / exp; degrees of freedom are the
    post-merge bin count minus one.  A histogram whose whole mass ends
    up in one bin yields df 0 and a degenerate-input warning.
    """
    if h.total < 1:
        raise ValueError("histogram is empty")
    for v in h.support():
        if h.count_of(v) > 0 and float(pmf.get(v, 0.0)) <= 0.0:
            raise ValueError(f"pmf does not cover histogram value {v}")
    kept: list[tuple[int, float]] = []  # (observed, expected), in value order
    tail_obs = 0
    tail_exp = 0.0
    for v in sorted(pmf):
        exp = float(pmf[v]) * h.total
        obs = h.count_of(v)
        if exp >= 5.0:
            kept.append((obs, exp))
        else:
            tail_obs += obs
            tail_exp += exp
    if tail_exp > 0.0 or tail_obs > 0:
        if tail_exp >= 5.0 or not kept:
            kept.append((tail_obs, tail_exp))
        else:
            obs, exp = kept[-1]
            kept[-1] = (obs + tail_obs, exp + tail_exp)
    df = len(kept) - 1
    if df == 0:
        warnings.warn("all probability mass merged into one bin; df=0", stacklevel=2)
    statistic = sum((obs - exp) ** 2 / exp for obs, exp in kept if exp > 0)
    return statistic, df


def two_sample_chi_square(h1: Histogram, h2: Histogram) -> tuple[float, int]:
    """Two-sample chi-square that the histograms share one distribution.

    Contingency-table form: expected counts come from the pooled
    frequencies; bins whose smaller expected count is below 5 are pooled
    into the upper tail, df is the post-merge bin count minus one.
    """
    if h1.total < 1 or h2.total < 1:
        raise ValueError("histograms must be non-empty")
    lo = min(h1.lo, h2.lo)
    hi = max(h1.hi, h2.hi)
    n1, n2 = h1.total, h2.total
    grand = n1 + n2
    kept: list[tuple[int, int]] = []
    tail = (0, 0)
    for v in range(lo, hi + 1):
        o1, o2 = h1.count_of(v), h2.count_of(v)
        pooled = o1 + o2
        if pooled == 0:
            continue
        if min(n1, n2) * pooled / grand >= 5.0:
            kept.append((o1, o2))
        else:
            tail = (tail[0] + o1, tail[1] + o2)
    if tail != (0, 0):
        if not kept or min(n1, n2) * (tail[0] + tail[1]) / grand >= 5.0:
            kept.append(tail)
        else:
            kept[-1] = (kept[-1][0] + tail[0], kept[-1][1] + tail[1])
    statistic = 0.0
    for o1, o2 in kept:
        pooled = o1 + o2
        e1 = n1 * pooled / grand
        e2 = n2 * pooled / grand
        statistic += (o1 - e1) ** 2 / e1 + (o2 - e2) ** 2 / e2
    df = len(kept) - 1
    if df == 0:
        warnings.warn("all probability mass merged into one bin; df=0", stacklevel=2)
    return statistic, df
