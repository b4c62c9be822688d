"""Monte Carlo estimation of the meta distribution of the conditional success.

Each traffic realization draws the active interferers on both roads from
independent Poisson processes. Its conditional success probability (averaged
over Rayleigh fading only) is either evaluated exactly,

    p_c = exp(-beta' * gamma0) * prod_i 1 / (1 + beta' * l(x_i)),

or estimated from ``n_f`` joint fading draws. Every realization ``i`` owns
the random streams seeded by ``(master_seed, i)`` and
``(master_seed, i, FADING_KEY)``, so results do not depend on scheduling or
thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import beta_prime
from .scene import Link, Position, RoadNetwork, Scenario, pathloss_many, tx_grid_all

FADING_KEY = 0x46414445  # "FADE"
THREADS_ENV = "CORNER_SINR_THREADS"


@dataclass(frozen=True)
class PppRealization:
    interferers_x: np.ndarray
    interferers_y: np.ndarray

    @property
    def count(self) -> int:
        return len(self.interferers_x) + len(self.interferers_y)


def realization_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, index]))


def fading_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, index, FADING_KEY]))


def sample_realization(roads: RoadNetwork, rng: np.random.Generator) -> PppRealization:
    """Thinned Poisson traffic on both roads (thinning folded into the intensity)."""
    out = []
    for half, lam in ((roads.half_len_x, roads.intensity_x), (roads.half_len_y, roads.intensity_y)):
        if not math.isfinite(half):
            raise ValueError("cannot sample traffic on an infinite road")
        n = rng.poisson(roads.tx_prob * lam * 2.0 * half)
        out.append(rng.uniform(-half, half, size=n))
    return PppRealization(*out)


def _gains(real: PppRealization, s: Scenario, rx: Position) -> np.ndarray:
    return np.concatenate([
        pathloss_many(s.channel, "x", real.interferers_x, rx),
        pathloss_many(s.channel, "y", real.interferers_y, rx),
    ])


def conditional_success_exact(real: PppRealization, s: Scenario, link: Link) -> float:
    bp = beta_prime(s, link)
    g = _gains(real, s, link.rx)
    return math.exp(-bp * s.radio.gamma0 - float(np.sum(np.log1p(bp * g))))


def conditional_success_fading(
    real: PppRealization,
    s: Scenario,
    link: Link,
    n_f: int,
    rng: np.random.Generator,
) -> float:
    """Fraction of ``n_f`` Rayleigh fading draws with SINR at or above threshold."""
    if n_f < 1:
        raise ValueError("n_f must be at least 1")
    bp = beta_prime(s, link)
    g = _gains(real, s, link.rx)
    wanted = rng.standard_exponential(n_f)
    interference = rng.standard_exponential((n_f, len(g))) @ g
    # SINR >= beta  <=>  h0 >= beta' * (I + gamma0)
    return float(np.count_nonzero(wanted >= bp * (interference + s.radio.gamma0))) / n_f


def beta_fit(moment1: float, moment2: float) -> tuple[float, float] | None:
    """Method-of-moments beta parameters, or ``None`` for a degenerate sample."""
    var = moment2 - moment1 * moment1
    # variance at rounding level means a constant sample
    if not (0.0 < moment1 < 1.0 and var > 8 * np.finfo(float).eps * moment2 and moment2 < moment1):
        return None
    a = moment1 * (moment1 - moment2) / var
    return a, a * (1.0 - moment1) / moment1


@dataclass(frozen=True)
class MetaEstimate:
    """Empirical meta distribution of the conditional success probability."""

    samples: np.ndarray
    n_bins: int = 150

    @property
    def n_ppp(self) -> int:
        return len(self.samples)

    @property
    def histogram(self) -> tuple[np.ndarray, np.ndarray]:
        """``(counts, edges)`` over ``n_bins`` uniform bins on [0, 1]."""
        return np.histogram(self.samples, bins=self.n_bins, range=(0.0, 1.0))

    def cdf_at(self, p) -> float | np.ndarray:
        """Fraction of realizations whose conditional success is at least ``p``."""
        srt = np.sort(self.samples)
        idx = np.searchsorted(srt, p, side="left")
        return (len(srt) - idx) / len(srt)

    @property
    def moment1(self) -> float:
        return math.fsum(self.samples) / self.n_ppp

    @property
    def moment2(self) -> float:
        return math.fsum(self.samples * self.samples) / self.n_ppp

    @property
    def std_error(self) -> float:
        """Standard error of :attr:`moment1`."""
        if self.n_ppp < 2:
            return math.nan
        return float(np.std(self.samples, ddof=1)) / math.sqrt(self.n_ppp)

    @property
    def beta_params(self) -> tuple[float, float] | None:
        return beta_fit(self.moment1, self.moment2)

    def beta_ks_distance(self) -> float | None:
        """Sup distance between the empirical and the fitted beta CDF."""
        from scipy import stats

        ab = self.beta_params
        if ab is None:
            return None
        srt = np.sort(self.samples)
        model = stats.beta.cdf(srt, *ab)
        n = len(srt)
        upper = np.arange(1, n + 1) / n - model
        lower = model - np.arange(n) / n
        return float(max(upper.max(), lower.max()))


def bimodality(outage: np.ndarray, target: float, width: float = 0.05) -> dict:
    """Mass near zero outage and beyond twice the target outage, against mass near the mean.

    ``holds`` is true when the two tails together outweigh the neighbourhood
    of the mean, the signature of "either very reliable or very unreliable".
    """
    outage = np.asarray(outage)
    mean = float(np.mean(outage))
    low = float(np.mean(outage < width))
    high = float(np.mean(outage > 2.0 * (1.0 - target)))
    mid = float(np.mean(np.abs(outage - mean) <= width))
    return {"mean": mean, "low": low, "high": high, "mid": mid, "holds": low + high > mid}


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def _map_indices(fn, n: int, threads: int | None) -> list:
    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or n < 64:
        return [fn(i) for i in range(n)]
    chunk = max(16, n // (4 * threads))
    blocks = [range(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda blk: [fn(i) for i in blk], blocks)
        return [v for part in parts for v in part]


def meta_distribution(
    s: Scenario,
    link: Link,
    n_ppp: int,
    mode: str = "exact",
    n_f: int = 1000,
    n_b: int = 150,
    master_seed: int = 0,
    threads: int | None = None,
) -> MetaEstimate:
    if n_ppp < 1:
        raise ValueError("n_ppp must be at least 1")
    if mode not in ("exact", "fading"):
        raise ValueError(f"unknown mode {mode!r}")

    def one(i: int) -> float:
        real = sample_realization(s.roads, realization_rng(master_seed, i))
        if mode == "exact":
            return conditional_success_exact(real, s, link)
        return conditional_success_fading(real, s, link, n_f, fading_rng(master_seed, i))

    return MetaEstimate(np.array(_map_indices(one, n_ppp, threads)), n_b)


@dataclass
class FineGrainedResult:
    separations: np.ndarray
    positions: list[Position]
    outage: np.ndarray  # [realization, position]
    target: float
    n_b: int = 150
    estimates: list[MetaEstimate] = field(init=False)

    def __post_init__(self):
        self.estimates = [MetaEstimate(1.0 - col, self.n_b) for col in self.outage.T]

    @property
    def mean_outage(self) -> np.ndarray:
        return np.array([1.0 - e.moment1 for e in self.estimates])

    @property
    def cdf_at_target(self) -> np.ndarray:
        return np.array([e.cdf_at(self.target) for e in self.estimates])

    @property
    def cdf_at_mean(self) -> np.ndarray:
        return np.array([e.cdf_at(e.moment1) for e in self.estimates])

    def _group_mean(self, good: bool) -> np.ndarray:
        meets = (1.0 - self.outage) >= self.target
        mask = meets if good else ~meets
        out = np.full(self.outage.shape[1], np.nan)
        cnt = mask.sum(axis=0)
        has = cnt > 0
        out[has] = (self.outage * mask).sum(axis=0)[has] / cnt[has]
        return out

    @property
    def cond_mean_good(self) -> np.ndarray:
        """Mean outage of the realizations meeting the target, per position."""
        return self._group_mean(True)

    @property
    def cond_mean_bad(self) -> np.ndarray:
        return self._group_mean(False)


def fine_grained_sweep(
    s: Scenario,
    rx: Position,
    d_max: float,
    m_e: int,
    n_ppp: int,
    mode: str = "exact",
    master_seed: int = 0,
    target: float = 0.9,
    n_f: int = 1000,
    n_b: int = 150,
    threads: int | None = None,
) -> FineGrainedResult:
    """Conditional outage of every realization at every TX position of the walk.

    The same traffic realizations are reused for all TX positions, so each
    row of the outage matrix is one realization's fine-grained curve.
    """
    positions = tx_grid_all(m_e, d_max, rx.norm)
    links = [Link(p, rx) for p in positions]
    bps = np.array([beta_prime(s, lk) for lk in links])
    noise = bps * s.radio.gamma0
    if mode not in ("exact", "fading"):
        raise ValueError(f"unknown mode {mode!r}")

    def one(i: int) -> np.ndarray:
        real = sample_realization(s.roads, realization_rng(master_seed, i))
        g = _gains(real, s, rx)
        if mode == "exact":
            return -np.expm1(-noise - np.log1p(np.outer(bps, g)).sum(axis=1))
        rng = fading_rng(master_seed, i)
        return np.array([
            1.0 - conditional_success_fading(real, s, lk, n_f, rng) for lk in links
        ])

    rows = _map_indices(one, n_ppp, threads)
    seps = np.array([lk.separation for lk in links])
    return FineGrainedResult(seps, positions, np.vstack(rows), target, n_b)
