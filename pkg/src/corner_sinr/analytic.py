"""Closed-form average reliability of a V2V link near an intersection.

The success probability factors into a noise-only term and one degradation
term per road,

    P_c = P_noint * P_x * P_y,   P_q = exp(-p_I * lambda_q * zeta * F_q(R_q)),

where ``zeta`` is the interference-free link scale and ``F_q`` the road
factor built from :func:`~corner_sinr.specfun.g_func` and
:func:`~corner_sinr.specfun.h_func`. Infinite half lengths (``math.inf``)
select the infinite-road limits.

:func:`success_probability_oracle` integrates the per-road Laplace exponent
directly from the path-loss model with QUADPACK and shares no code with the
closed forms beyond :func:`~corner_sinr.scene.pathloss`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate as sp_integrate

from .scene import Link, Position, Scenario, Suburban, Urban, euclidean, pathloss
from .specfun import g_func, g_inf, h_func


@dataclass(frozen=True)
class ReliabilityBreakdown:
    p_noint: float
    p_x: float
    p_y: float
    p_c: float

    @classmethod
    def from_factors(cls, p_noint: float, p_x: float, p_y: float) -> "ReliabilityBreakdown":
        return cls(p_noint, p_x, p_y, p_noint * p_x * p_y)

    @property
    def outage(self) -> float:
        return 1.0 - self.p_c


def beta_prime(s: Scenario, link: Link) -> float:
    """SINR threshold normalized by the wanted link's path gain."""
    return s.radio.beta / pathloss(s.channel, link.tx, link.rx)


def p_noint(s: Scenario, link: Link) -> float:
    return math.exp(-beta_prime(s, link) * s.radio.gamma0)


def zeta(s: Scenario, link: Link) -> float:
    """Interference-free link scale in meters."""
    ch = s.channel
    if isinstance(ch, Suburban):
        return s.radio.beta ** (1.0 / ch.alpha) * euclidean(link.rx, link.tx)
    return (ch.a0 * beta_prime(s, link)) ** (1.0 / ch.alpha)


def x_factor(r_x: float, zeta: float, alpha: float, rx_dist: float) -> float:
    """Road-x factor; also serves the urban case with the urban ``zeta``."""
    if math.isinf(r_x):
        return x_factor_inf(alpha)
    g_far = g_func(alpha, (r_x + rx_dist) / zeta)
    if rx_dist <= r_x:
        return g_far + g_func(alpha, (r_x - rx_dist) / zeta)
    return g_far - g_func(alpha, (rx_dist - r_x) / zeta)


def y_factor_suburban(r_y: float, zeta: float, alpha: float, rx_dist: float) -> float:
    if math.isinf(r_y):
        return y_factor_inf_suburban(alpha, rx_dist, zeta)
    return h_func(alpha, (rx_dist / zeta) ** 2, (r_y / zeta) ** 2)


def _kappa(rx_dist: float, a0_lin: float, a0p_lin: float, alpha: float) -> float:
    return (a0_lin / a0p_lin) ** (1.0 / alpha) * rx_dist


def y_factor_urban(
    r_y: float,
    zeta_u: float,
    alpha: float,
    rx_dist: float,
    delta_bp: float,
    a0_lin: float,
    a0p_lin: float,
) -> float:
    """Road-y factor for the urban model.

    With the RX within the break-point of the junction every road-y
    interferer is WLOS; otherwise only ``|y| <= delta_bp`` is, and the rest
    is NLOS with the virtual-source gain.
    """
    g_rx = g_func(alpha, rx_dist / zeta_u)
    if rx_dist <= delta_bp:
        far = g_inf(alpha) if math.isinf(r_y) else g_func(alpha, (r_y + rx_dist) / zeta_u)
        return 2.0 * (far - g_rx)
    kappa = _kappa(rx_dist, a0_lin, a0p_lin, alpha)
    assert kappa > 0
    far = g_inf(alpha) if math.isinf(r_y) else g_func(alpha, kappa * r_y / zeta_u)
    nlos = (far - g_func(alpha, kappa * delta_bp / zeta_u)) / kappa
    return 2.0 * (g_func(alpha, (delta_bp + rx_dist) / zeta_u) + nlos - g_rx)


def x_factor_inf(alpha: float) -> float:
    return 2.0 * g_inf(alpha)


def y_factor_inf_suburban(alpha: float, rx_dist: float, zeta: float) -> float:
    if rx_dist == 0:
        return 2.0 * g_inf(alpha)
    return h_func(alpha, (rx_dist / zeta) ** 2, math.inf)


def y_factor_inf_urban(
    alpha: float,
    rx_dist: float,
    zeta_u: float,
    delta_bp: float,
    a0_lin: float,
    a0p_lin: float,
) -> float:
    return y_factor_urban(math.inf, zeta_u, alpha, rx_dist, delta_bp, a0_lin, a0p_lin)


def road_factors(s: Scenario, link: Link) -> tuple[float, float, float]:
    """``(zeta, X(R_x), Y(R_y))`` for the scenario's channel."""
    ch, roads = s.channel, s.roads
    z = zeta(s, link)
    r = link.rx.norm
    fx = x_factor(roads.half_len_x, z, ch.alpha, r)
    if isinstance(ch, Urban):
        fy = y_factor_urban(roads.half_len_y, z, ch.alpha, r, ch.breakpoint_m, ch.a0, ch.a0p)
    else:
        fy = y_factor_suburban(roads.half_len_y, z, ch.alpha, r)
    return z, fx, fy


def success_probability(s: Scenario, link: Link) -> ReliabilityBreakdown:
    roads = s.roads
    z, fx, fy = road_factors(s, link)
    p_x = math.exp(-roads.tx_prob * roads.intensity_x * z * fx)
    p_y = math.exp(-roads.tx_prob * roads.intensity_y * z * fy)
    return ReliabilityBreakdown.from_factors(p_noint(s, link), p_x, p_y)


# -- oracle -------------------------------------------------------------------

ORACLE_REL_TOL = 1e-9


def _road_exponent(s: Scenario, link: Link, road: str, half_len: float) -> float:
    bp = beta_prime(s, link)
    ch = s.channel
    make = Position.horizontal if road == "x" else Position.vertical

    def f(c: float) -> float:
        # 1 / (1 + 1/(beta' * l)) written to stay finite as l -> inf
        g = bp * pathloss(ch, make(c), link.rx)
        return g / (1.0 + g)

    # kinks and jumps of the integrand
    cuts = {-half_len, half_len, 0.0}
    if road == "x":
        cuts.add(link.rx.coord)
    if isinstance(ch, Urban) and road == "y":
        cuts.update((-ch.breakpoint_m, ch.breakpoint_m))
    finite = sorted(c for c in cuts if math.isfinite(c) and abs(c) <= half_len)
    pieces = list(zip(finite[:-1], finite[1:]))
    if math.isinf(half_len):
        pieces = [(-math.inf, finite[0])] + pieces + [(finite[-1], math.inf)]
    total = 0.0
    for lo, hi in pieces:
        val, _ = sp_integrate.quad(f, lo, hi, epsabs=0.0, epsrel=ORACLE_REL_TOL, limit=500)
        total += val
    return total


def success_probability_oracle(s: Scenario, link: Link) -> ReliabilityBreakdown:
    """Success probability by direct quadrature of the per-road Laplace exponent."""
    roads = s.roads
    factors = []
    for road, half_len, lam in (
        ("x", roads.half_len_x, roads.intensity_x),
        ("y", roads.half_len_y, roads.intensity_y),
    ):
        rate = roads.tx_prob * lam
        if rate == 0:
            factors.append(1.0)
            continue
        factors.append(math.exp(-rate * _road_exponent(s, link, road, half_len)))
    return ReliabilityBreakdown.from_factors(p_noint(s, link), *factors)
