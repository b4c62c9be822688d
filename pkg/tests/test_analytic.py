import math
from dataclasses import replace

import pytest

from corner_sinr.analytic import (
    beta_prime,
    p_noint,
    road_factors,
    success_probability,
    success_probability_oracle,
    x_factor,
    x_factor_inf,
    y_factor_inf_suburban,
    y_factor_inf_urban,
    y_factor_suburban,
    y_factor_urban,
    zeta,
)
from corner_sinr.scene import (
    Link,
    Position,
    RadioParams,
    RoadNetwork,
    Scenario,
    Suburban,
    Urban,
    worst_case_link,
)
from corner_sinr.specfun import g_func

# Frozen brute-force values: midpoint rule on the raw per-road integrand, 10**7 panels,
# default radio constants, R = 200 m, design link TX (0, 50), RX (-50, 0).
ZETA_SUB = 177.61719292909024
Y_SUB_200 = 1.5894867780914492
ZETA_URB = 1060.2790448692374
Y_URB_200 = 0.25670625143576653

SUB = Scenario(channel=Suburban())
URB = Scenario(channel=Urban())
LINK = worst_case_link()


def test_p_noint_limits():
    quiet = replace(SUB, radio=RadioParams(noise_dbm=-math.inf))
    assert p_noint(quiet, LINK) == 1.0
    loud = replace(SUB, radio=RadioParams(sinr_threshold_db=400.0))
    assert p_noint(loud, LINK) == 0.0


def test_zeta_examples():
    link = Link(Position.horizontal(50.0), Position.horizontal(-50.0))
    s = replace(SUB, radio=RadioParams(sinr_threshold_db=10 * math.log10(4.0)))
    assert zeta(s, link) == pytest.approx(200.0, rel=1e-14)
    s1 = replace(SUB, radio=RadioParams(sinr_threshold_db=0.0))
    assert zeta(s1, link) == pytest.approx(100.0, rel=1e-14)


def test_zeta_urban_nlos_by_hand():
    ch = URB.channel
    a0p = 10 ** (ch.a0p_db / 10)
    a0 = 10 ** (ch.a0_db / 10)
    bp = URB.radio.beta / (a0p * (50.0 * 50.0) ** -ch.alpha)
    assert zeta(URB, LINK) == pytest.approx((a0 * bp) ** (1 / ch.alpha), rel=1e-13)
    assert zeta(URB, LINK) == pytest.approx(ZETA_URB, rel=1e-12)
    assert zeta(SUB, LINK) == pytest.approx(ZETA_SUB, rel=1e-12)


def test_x_factor_arctan_example():
    assert x_factor(200.0, 100.0, 2.0, 50.0) == pytest.approx(math.atan(2.5) + math.atan(1.5), rel=1e-14)


def test_x_factor_limit():
    z = 37.0
    assert x_factor(1e4 * z, z, 2.0, 50.0) == pytest.approx(x_factor_inf(2.0), abs=1e-3)
    assert x_factor_inf(2.0) == pytest.approx(math.pi)


def test_x_factor_continuous_at_road_end():
    for alpha in (1.68, 2.0, 4.0):
        inside = x_factor(200.0, 90.0, alpha, 200.0 - 1e-9)
        outside = x_factor(200.0, 90.0, alpha, 200.0 + 1e-9)
        assert inside == pytest.approx(outside, abs=1e-9)


def test_y_suburban_examples():
    assert y_factor_suburban(0.0, 120.0, 2.0, 50.0) == 0.0
    assert y_factor_suburban(300.0, 120.0, 2.0, 0.0) == pytest.approx(2 * math.atan(2.5), rel=1e-14)
    assert y_factor_inf_suburban(2.0, 0.0, 120.0) == pytest.approx(math.pi)


def test_y_suburban_brute_force():
    _, _, fy = road_factors(SUB, LINK)
    assert fy == pytest.approx(Y_SUB_200, rel=1e-10)


def test_y_urban_brute_force():
    _, _, fy = road_factors(URB, LINK)
    assert fy == pytest.approx(Y_URB_200, rel=1e-10)


def test_y_urban_examples():
    ch = URB.channel
    zu, al, bp = 500.0, ch.alpha, ch.breakpoint_m
    assert y_factor_urban(200.0, zu, al, 0.0, bp, ch.a0, ch.a0p) == pytest.approx(
        2 * g_func(al, 200.0 / zu), rel=1e-13)
    expect = 2 * (g_func(al, (bp + 50.0) / zu) - g_func(al, 50.0 / zu))
    assert y_factor_urban(bp, zu, al, 50.0, bp, ch.a0, ch.a0p) == pytest.approx(expect, rel=1e-13)


def test_y_urban_limit():
    ch = URB.channel
    zu = ZETA_URB
    args = (ch.alpha, 50.0, zu, ch.breakpoint_m, ch.a0, ch.a0p)
    far = y_factor_urban(1e6 * zu, zu, ch.alpha, 50.0, ch.breakpoint_m, ch.a0, ch.a0p)
    assert far == pytest.approx(y_factor_inf_urban(*args), abs=1e-4)


def test_no_interferers():
    for s in (SUB.with_tx_prob(0.0), replace(URB, roads=RoadNetwork(intensity_x=0.0, intensity_y=0.0))):
        for fn in (success_probability, success_probability_oracle):
            b = fn(s, LINK)
            assert b.p_x == 1.0 and b.p_y == 1.0
            assert b.p_c == b.p_noint == pytest.approx(p_noint(s, LINK))


LINKS = {
    "LOS": Link(Position.horizontal(30.0), Position.horizontal(-50.0)),
    "WLOS": Link(Position.vertical(10.0), Position.horizontal(-50.0)),
    "NLOS": Link(Position.vertical(80.0), Position.horizontal(-50.0)),
}


@pytest.mark.parametrize("channel", [Suburban(), Suburban(alpha=4.0, a0_db=-20.0), Urban()], ids=str)
@pytest.mark.parametrize("rx", [-25.0, -50.0, -250.0, 10.0])
@pytest.mark.parametrize("half_len", [200.0, 1e4, math.inf])
@pytest.mark.parametrize("geom", list(LINKS))
def test_closed_form_vs_oracle(channel, rx, half_len, geom):
    tx = LINKS[geom].tx
    if tx.road == "x" and tx.coord == rx:
        tx = Position.horizontal(rx + 40.0)
    link = Link(tx, Position.horizontal(rx))
    s = Scenario(channel=channel).with_half_len(half_len)
    a, b = success_probability(s, link), success_probability_oracle(s, link)
    for u, v in ((a.p_x, b.p_x), (a.p_y, b.p_y), (a.p_c, b.p_c)):
        assert u == pytest.approx(v, rel=1e-8)


@pytest.mark.parametrize("s", [SUB, URB], ids=["suburban", "urban"])
def test_success_decreases_with_road_length(s):
    prev = 1.0
    for r in (20.0, 200.0, 2e3, 2e4, math.inf):
        p = success_probability(s.with_half_len(r), LINK).p_c
        assert p < prev
        prev = p


def test_success_decreases_with_tx_prob():
    vals = [success_probability(SUB.with_tx_prob(p), LINK).p_c for p in (0.0, 0.01, 0.02, 0.1)]
    assert vals == sorted(vals, reverse=True)


def test_reference_values():
    assert success_probability(SUB, LINK).p_c == pytest.approx(0.89116, abs=5e-5)
    u10 = success_probability(URB.with_half_len(1e4), LINK)
    assert u10.outage == pytest.approx(0.554, abs=1e-3)


def test_beta_prime_positive():
    assert beta_prime(URB, LINK) > beta_prime(SUB, LINK) > 0
