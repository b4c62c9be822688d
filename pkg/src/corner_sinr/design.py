"""Aloha transmit-probability design for a target average reliability.

Solving ``P_noint * P_x * P_y >= target`` for the transmit probability gives

    p* = (ln P_noint - ln target) / (zeta * (lambda_x X(R_x) + lambda_y Y(R_y)))

which is the largest admissible ``p_I``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .analytic import p_noint, road_factors
from .scene import Link, Scenario


@dataclass(frozen=True)
class DesignPoint:
    half_len: float
    p_star: float
    p_inf: float
    feasible: bool
    interference_free: bool = False

    @property
    def p_star_clamped(self) -> float:
        return min(max(self.p_star, 0.0), 1.0)

    @property
    def saturated(self) -> bool:
        return self.p_star > 1.0


def _check_target(target: float) -> None:
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target}")


def _raw(s: Scenario, target: float, link: Link) -> tuple[float, bool, bool]:
    _check_target(target)
    pn = p_noint(s, link)
    z, fx, fy = road_factors(s, link)
    load = z * (s.roads.intensity_x * fx + s.roads.intensity_y * fy)
    ok = target <= pn
    if load == 0:
        return 1.0, ok, True
    return (math.log(pn) - math.log(target)) / load, ok, False


def optimal_tx_prob(
    s: Scenario,
    target: float,
    design_link: Link,
    r_x: float | None = None,
    r_y: float | None = None,
) -> DesignPoint:
    """Largest transmit probability meeting ``target`` on ``design_link``.

    ``s.roads.tx_prob`` is ignored. Half lengths default to the scenario's.
    ``p_star`` is the raw formula value: negative when the target exceeds the
    noise-only success probability, above one for very sparse traffic.
    """
    r_x = s.roads.half_len_x if r_x is None else r_x
    r_y = s.roads.half_len_y if r_y is None else r_y
    sized = s.with_half_len(r_x, r_y)
    p, ok, free = _raw(sized, target, design_link)
    p_inf = optimal_tx_prob_inf(s, target, design_link)
    return DesignPoint(
        half_len=r_x if r_x == r_y else math.nan,
        p_star=p,
        p_inf=p_inf,
        feasible=ok and p <= 1.0,
        interference_free=free,
    )


def optimal_tx_prob_inf(s: Scenario, target: float, design_link: Link) -> float:
    """Design value for infinitely long roads, the asymptote of :func:`optimal_tx_prob`."""
    return _raw(s.with_half_len(math.inf), target, design_link)[0]


def design_sweep(
    s: Scenario, target: float, design_link: Link, r_grid
) -> list[DesignPoint]:
    bp = getattr(s.channel, "breakpoint_m", 0.0)
    short = [r for r in r_grid if r < bp]
    if short:
        raise ValueError(f"road half lengths {short} are below the break-point {bp} m")
    return [optimal_tx_prob(s, target, design_link, r, r) for r in r_grid]


def designed(s: Scenario, target: float, design_link: Link) -> Scenario:
    """Copy of ``s`` with ``tx_prob`` set to the clamped design value."""
    point = optimal_tx_prob(s, target, design_link)
    if point.p_star < 0:
        raise ValueError(
            f"infeasible target {target}: exceeds the noise-only success probability"
        )
    return replace(s, roads=replace(s.roads, tx_prob=point.p_star_clamped))
