"""Geometry, radio constants, traffic and the two intersection path-loss models.

Nodes live on one of two orthogonal roads crossing at the origin. The
receiver is always on the horizontal road; transmitters and interferers may
be on either road.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal, Union

import numpy as np

Road = Literal["x", "y"]


def db_to_lin(db: float) -> float:
    return 10.0 ** (db / 10.0)


def lin_to_db(lin: float) -> float:
    return 10.0 * math.log10(lin)


@dataclass(frozen=True)
class Position:
    """A point on the horizontal (``road="x"``) or vertical (``road="y"``) road.

    ``coord`` is the signed offset from the junction in meters.
    """

    road: Road
    coord: float

    def __post_init__(self):
        if self.road not in ("x", "y"):
            raise ValueError(f"road must be 'x' or 'y', got {self.road!r}")
        if not math.isfinite(self.coord):
            raise ValueError("coordinate must be finite")

    @classmethod
    def horizontal(cls, x: float) -> "Position":
        return cls("x", float(x))

    @classmethod
    def vertical(cls, y: float) -> "Position":
        return cls("y", float(y))

    @property
    def norm(self) -> float:
        """Distance to the junction."""
        return abs(self.coord)

    @property
    def xy(self) -> tuple[float, float]:
        return (self.coord, 0.0) if self.road == "x" else (0.0, self.coord)


def euclidean(a: Position, b: Position) -> float:
    (ax, ay), (bx, by) = a.xy, b.xy
    return math.hypot(ax - bx, ay - by)


def manhattan(a: Position, b: Position) -> float:
    (ax, ay), (bx, by) = a.xy, b.xy
    return abs(ax - bx) + abs(ay - by)


@dataclass(frozen=True)
class RadioParams:
    tx_power_dbm: float = 20.0
    noise_dbm: float = -99.0
    sinr_threshold_db: float = 8.0

    @property
    def beta(self) -> float:
        """Linear SINR threshold."""
        return db_to_lin(self.sinr_threshold_db)

    @property
    def gamma0(self) -> float:
        """Noise-to-transmit-power ratio."""
        return db_to_lin(self.noise_dbm - self.tx_power_dbm)


def default_a0_db(alpha: float) -> float:
    """LOS/WLOS coefficient of the simulation table, in dB."""
    return -37.86 + 10.0 * alpha


def default_a0p_db(alpha: float, breakpoint_m: float) -> float:
    """NLOS coefficient of the simulation table, in dB."""
    return -38.32 + (7.0 + 10.0 * math.log10(breakpoint_m)) * alpha


@dataclass(frozen=True)
class Suburban:
    """Inverse power law ``a0 * d**-alpha`` on the Euclidean distance."""

    alpha: float = 2.0
    a0_db: float = field(default=None)  # type: ignore[assignment]

    kind = "suburban"

    def __post_init__(self):
        if self.a0_db is None:
            object.__setattr__(self, "a0_db", default_a0_db(self.alpha))

    @property
    def a0(self) -> float:
        return db_to_lin(self.a0_db)


@dataclass(frozen=True)
class Urban:
    """Three-branch urban junction model (LOS, WLOS Manhattan, NLOS virtual source)."""

    alpha: float = 1.68
    a0_db: float = field(default=None)  # type: ignore[assignment]
    a0p_db: float = field(default=None)  # type: ignore[assignment]
    breakpoint_m: float = 15.0

    kind = "urban"

    def __post_init__(self):
        if self.a0_db is None:
            object.__setattr__(self, "a0_db", default_a0_db(self.alpha))
        if self.a0p_db is None:
            object.__setattr__(
                self, "a0p_db", default_a0p_db(self.alpha, self.breakpoint_m)
            )

    @property
    def a0(self) -> float:
        return db_to_lin(self.a0_db)

    @property
    def a0p(self) -> float:
        return db_to_lin(self.a0p_db)


ChannelParams = Union[Suburban, Urban]


@dataclass(frozen=True)
class RoadNetwork:
    half_len_x: float = 200.0
    half_len_y: float = 200.0
    intensity_x: float = 0.01
    intensity_y: float = 0.01
    tx_prob: float = 0.02


@dataclass(frozen=True)
class Link:
    tx: Position
    rx: Position

    def __post_init__(self):
        if self.rx.road != "x":
            raise ValueError("receiver must be on the horizontal road")
        if self.tx.xy == self.rx.xy:
            raise ValueError("zero distance: transmitter coincides with receiver")

    @property
    def separation(self) -> float:
        """Manhattan (driving) distance between TX and RX."""
        return manhattan(self.tx, self.rx)


@dataclass(frozen=True)
class Scenario:
    radio: RadioParams = field(default_factory=RadioParams)
    channel: ChannelParams = field(default_factory=Suburban)
    roads: RoadNetwork = field(default_factory=RoadNetwork)

    def with_tx_prob(self, p: float) -> "Scenario":
        return replace(self, roads=replace(self.roads, tx_prob=p))

    def with_half_len(self, r_x: float, r_y: float | None = None) -> "Scenario":
        r_y = r_x if r_y is None else r_y
        return replace(self, roads=replace(self.roads, half_len_x=r_x, half_len_y=r_y))


def worst_case_link(rx_dist: float = 50.0, d_target: float = 100.0) -> Link:
    """Worst-case pair: RX at ``-rx_dist`` on road x, TX ``d_target`` away by road."""
    rx = Position.horizontal(-rx_dist)
    if d_target <= rx_dist:
        tx = Position.horizontal(d_target - rx_dist)
    else:
        tx = Position.vertical(d_target - rx_dist)
    return Link(tx, rx)


@dataclass
class Diagnostics:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_scenario(s: Scenario) -> Diagnostics:
    """Check every hard constraint on a scenario; soft ones go to ``warnings``."""
    d = Diagnostics()
    r, ch = s.roads, s.channel
    if not (r.half_len_x > 0 and r.half_len_y > 0):
        d.violations.append("road length: half lengths must be positive")
    if not (r.intensity_x >= 0 and r.intensity_y >= 0):
        d.violations.append("intensity: traffic intensities must be non-negative")
    if not (0.0 <= r.tx_prob <= 1.0):
        d.violations.append(f"tx_prob range: {r.tx_prob} not in [0, 1]")
    if not ch.alpha > 1:
        d.violations.append(f"alpha: path loss exponent must exceed 1, got {ch.alpha}")
    if isinstance(ch, Urban):
        if not ch.breakpoint_m > 0:
            d.violations.append("breakpoint: break-point distance must be positive")
        elif min(r.half_len_x, r.half_len_y) < ch.breakpoint_m:
            d.violations.append(
                f"breakpoint: min(R_x, R_y) = {min(r.half_len_x, r.half_len_y)} m "
                f"is below the break-point distance {ch.breakpoint_m} m"
            )
        if ch.breakpoint_m > 0 and ch.alpha > 1:
            bound = ch.a0 * (ch.breakpoint_m / 2.0) ** ch.alpha
            if not ch.a0p < bound:
                d.warnings.append(
                    f"coefficient: NLOS coefficient {ch.a0p:.4g} is not below "
                    f"a0*(breakpoint/2)**alpha = {bound:.4g}"
                )
    if s.radio.beta <= 0 or not math.isfinite(s.radio.beta):
        d.violations.append("sinr threshold: linear threshold must be positive")
    return d


def pathloss(ch: ChannelParams, x: Position, rx: Position) -> float:
    """Linear power gain from a node at ``x`` to the receiver at ``rx``."""
    if rx.road != "x":
        raise ValueError("receiver must be on the horizontal road")
    if x.xy == rx.xy:
        raise ValueError("zero distance: node coincides with receiver")
    if isinstance(ch, Urban) and x.road == "y":
        r = rx.norm
        if min(x.norm, r) > ch.breakpoint_m:
            return ch.a0p * (x.norm * r) ** -ch.alpha
        return ch.a0 * (x.norm + r) ** -ch.alpha
    return ch.a0 * euclidean(x, rx) ** -ch.alpha


def pathloss_many(ch: ChannelParams, road: Road, coords, rx: Position) -> np.ndarray:
    """Vectorized :func:`pathloss` for many nodes on the same road."""
    c = np.asarray(coords, dtype=float)
    x_rx = rx.coord
    if road == "x":
        dist = np.abs(c - x_rx)
    elif isinstance(ch, Urban):
        r = abs(x_rx)
        a = np.abs(c)
        nlos = np.minimum(a, r) > ch.breakpoint_m
        with np.errstate(divide="ignore"):
            return np.where(
                nlos,
                ch.a0p * (a * r) ** -ch.alpha,
                ch.a0 * (a + r) ** -ch.alpha,
            )
    else:
        dist = np.hypot(c, x_rx)
    with np.errstate(divide="ignore"):
        return ch.a0 * dist ** -ch.alpha


def tx_grid(k: int, m_e: int, d_max: float, rx_dist: float) -> Position:
    """k-th of ``m_e`` equidistant TX positions walking away from the RX.

    The walk starts at the RX (at ``-rx_dist`` on road x), passes the junction
    and continues up road y; the k-th point sits ``k * d_max / m_e`` meters
    from the RX by road.
    """
    if m_e <= 0 or d_max <= 0:
        raise ValueError("m_e and d_max must be positive")
    if not 1 <= k <= m_e:
        raise ValueError(f"k={k} out of range 1..{m_e}")
    m_x = math.floor(m_e * rx_dist / d_max)
    coord = k * d_max / m_e - rx_dist
    return Position.horizontal(coord) if k <= m_x else Position.vertical(coord)


def tx_grid_all(m_e: int, d_max: float, rx_dist: float) -> list[Position]:
    return [tx_grid(k, m_e, d_max, rx_dist) for k in range(1, m_e + 1)]


def region(ch: ChannelParams, separation: float, rx_dist: float) -> str:
    """LOS/WLOS/NLOS label of a TX at the given road separation from the RX."""
    if separation <= rx_dist:
        return "LOS"
    if isinstance(ch, Urban) and separation > rx_dist + ch.breakpoint_m:
        return "NLOS"
    return "WLOS"
