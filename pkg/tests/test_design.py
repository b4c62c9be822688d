import math
from dataclasses import replace

import numpy as np
import pytest

from corner_sinr.analytic import p_noint, success_probability
from corner_sinr.design import (
    design_sweep,
    designed,
    optimal_tx_prob,
    optimal_tx_prob_inf,
)
from corner_sinr.scene import RoadNetwork, Scenario, Suburban, Urban, worst_case_link, tx_grid_all, Link, Position

SUB = Scenario(channel=Suburban())
URB = Scenario(channel=Urban())
LINK = worst_case_link()
R_GRID = [15.0, 50.0, 200.0, 500.0, 2e3, 1e4, 1e5]


@pytest.mark.parametrize("s", [SUB, URB], ids=["suburban", "urban"])
@pytest.mark.parametrize("r", [200.0, 500.0, 1e4])
def test_round_trip(s, r):
    point = optimal_tx_prob(s, 0.9, LINK, r, r)
    assert point.feasible and 0 < point.p_star < 1
    sized = s.with_half_len(r).with_tx_prob(point.p_star)
    assert success_probability(sized, LINK).p_c == pytest.approx(0.9, abs=1e-9)


def test_reference_design_values():
    assert optimal_tx_prob(SUB, 0.9, LINK, 200.0, 200.0).p_star == pytest.approx(0.018286, rel=1e-4)
    assert optimal_tx_prob_inf(SUB, 0.9, LINK) == pytest.approx(0.0096206, rel=1e-4)
    assert optimal_tx_prob_inf(URB, 0.9, LINK) == pytest.approx(0.0022244, rel=1e-4)


def test_target_equal_p_noint_gives_zero():
    pn = p_noint(SUB, LINK)
    point = optimal_tx_prob(SUB, pn, LINK)
    assert point.p_star == pytest.approx(0.0, abs=1e-12)
    assert point.feasible


def test_infeasible_target():
    pn = p_noint(URB, LINK)
    target = min(0.999999, pn + 0.5 * (1 - pn))
    point = optimal_tx_prob(URB, target, LINK)
    assert not point.feasible and point.p_star < 0
    with pytest.raises(ValueError, match="infeasible target"):
        designed(URB, target, LINK)


@pytest.mark.parametrize("target", [0.0, 1.0, -0.2, 1.5])
def test_target_range(target):
    with pytest.raises(ValueError):
        optimal_tx_prob(SUB, target, LINK)


def test_zero_intensity_flagged():
    s = replace(SUB, roads=RoadNetwork(intensity_x=0.0, intensity_y=0.0))
    point = optimal_tx_prob(s, 0.9, LINK)
    assert point.interference_free and point.p_star == 1.0


def test_saturation_clamped():
    sparse = replace(SUB, roads=RoadNetwork(intensity_x=1e-6, intensity_y=1e-6))
    point = optimal_tx_prob(sparse, 0.9, LINK)
    assert point.saturated and not point.feasible
    assert point.p_star_clamped == 1.0
    assert designed(sparse, 0.9, LINK).roads.tx_prob == 1.0


def test_p_inf_uses_pi_for_suburban_x():
    # suburban alpha = 2, RX at the junction: both road factors equal pi
    link = Link(Position.vertical(100.0), Position.horizontal(0.0))
    s = SUB
    z = math.sqrt(s.radio.beta) * 100.0
    expect = (math.log(p_noint(s, link)) - math.log(0.9)) / (z * 0.02 * math.pi)
    assert optimal_tx_prob_inf(s, 0.9, link) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize("s", [SUB, URB], ids=["suburban", "urban"])
def test_sweep_monotone_with_asymptote(s):
    pts = design_sweep(s, 0.9, LINK, R_GRID)
    p = np.array([q.p_star for q in pts])
    assert np.all(np.diff(p) < 0)
    assert np.all(p >= pts[0].p_inf)
    # the asymptote is approached from above, slowly for alpha < 2
    assert optimal_tx_prob(s, 0.9, LINK, 1e7, 1e7).p_star / pts[0].p_inf - 1 < 2e-3


def test_sweep_singleton_and_breakpoint_guard():
    assert len(design_sweep(URB, 0.9, LINK, [300.0])) == 1
    with pytest.raises(ValueError):
        design_sweep(URB, 0.9, LINK, [10.0, 200.0])


@pytest.mark.parametrize("s", [SUB, URB], ids=["suburban", "urban"])
def test_higher_target_lower_curve(s):
    curves = [np.array([q.p_star for q in design_sweep(s, t, LINK, R_GRID)]) for t in (0.8, 0.9, 0.95)]
    assert np.all(curves[0] > curves[1]) and np.all(curves[1] > curves[2])


def test_suburban_allows_more_activity():
    assert optimal_tx_prob_inf(SUB, 0.9, LINK) > optimal_tx_prob_inf(URB, 0.9, LINK)


@pytest.mark.parametrize("s", [SUB, URB], ids=["suburban", "urban"])
def test_target_met_inside_design_range(s):
    ds = designed(s, 0.9, LINK)
    rx = LINK.rx
    for tx in tx_grid_all(140, 140.0, rx.norm):
        p = success_probability(ds, Link(tx, rx)).p_c
        sep = Link(tx, rx).separation
        if sep <= 100.0 + 1e-9:
            assert p >= 0.9 - 1e-9
