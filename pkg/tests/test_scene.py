import math

import pytest
from hypothesis import given, strategies as st

from corner_sinr.scene import (
    Link,
    Position,
    RoadNetwork,
    Scenario,
    Suburban,
    Urban,
    db_to_lin,
    lin_to_db,
    manhattan,
    pathloss,
    pathloss_many,
    region,
    worst_case_link,
    tx_grid,
    validate_scenario,
)

RX50 = Position.horizontal(-50.0)


def test_default_coefficients():
    assert Suburban().a0_db == pytest.approx(-17.86)
    u = Urban()
    assert u.a0_db == pytest.approx(-37.86 + 16.8)
    assert u.a0p_db == pytest.approx(-38.32 + (7 + 10 * math.log10(15)) * 1.68)


def test_radio_constants():
    s = Scenario()
    assert s.radio.beta == pytest.approx(10 ** 0.8)
    assert s.radio.gamma0 == pytest.approx(10 ** -11.9)


def test_validate_default_urban_clean():
    d = validate_scenario(Scenario(channel=Urban()))
    assert d.ok and d.violations == []


def test_validate_breakpoint_violation():
    s = Scenario(channel=Urban(), roads=RoadNetwork(half_len_x=10.0))
    d = validate_scenario(s)
    assert not d.ok
    assert any(v.startswith("breakpoint") for v in d.violations)


def test_validate_tx_prob_range():
    d = validate_scenario(Scenario().with_tx_prob(1.5))
    assert any(v.startswith("tx_prob range") for v in d.violations)


def test_validate_coefficient_condition_is_a_warning():
    s = Scenario(channel=Urban(a0p_db=10.0))
    d = validate_scenario(s)
    assert d.ok
    assert any(w.startswith("coefficient") for w in d.warnings)


def test_validate_alpha():
    assert not validate_scenario(Scenario(channel=Suburban(alpha=1.0))).ok


def test_suburban_pathloss_example():
    ch = Suburban(alpha=2.0)
    val = pathloss(ch, Position.horizontal(50.0), RX50)
    assert val == pytest.approx(10 ** -1.786 * 100.0 ** -2, rel=1e-14)


def test_urban_branches():
    ch = Urban()
    a = ch.alpha
    # |y| = 10 <= 15: WLOS Manhattan
    wlos = pathloss(ch, Position.vertical(10.0), RX50)
    assert wlos == pytest.approx(ch.a0 * (10 + 50) ** -a, rel=1e-14)
    # min(30, 50) > 15: NLOS virtual source
    nlos = pathloss(ch, Position.vertical(30.0), RX50)
    assert nlos == pytest.approx(ch.a0p * (30 * 50) ** -a, rel=1e-14)
    # same road: Euclidean
    los = pathloss(ch, Position.horizontal(20.0), RX50)
    assert los == pytest.approx(ch.a0 * 70.0 ** -a, rel=1e-14)


def test_urban_breakpoint_equality_goes_wlos():
    ch = Urban()
    val = pathloss(ch, Position.vertical(15.0), RX50)
    assert val == pytest.approx(ch.a0 * 65.0 ** -ch.alpha)


def test_urban_rx_near_junction_is_wlos():
    ch = Urban()
    rx = Position.horizontal(-10.0)
    val = pathloss(ch, Position.vertical(100.0), rx)
    assert val == pytest.approx(ch.a0 * 110.0 ** -ch.alpha)


def test_junction_tx_either_tag_same_gain():
    ch = Urban()
    a = pathloss(ch, Position.vertical(0.0), RX50)
    b = pathloss(ch, Position.horizontal(0.0), RX50)
    assert a == pytest.approx(b, rel=1e-15)


def test_zero_distance_errors():
    with pytest.raises(ValueError, match="zero distance"):
        pathloss(Suburban(), RX50, RX50)
    with pytest.raises(ValueError, match="zero distance"):
        Link(Position.horizontal(-50.0), RX50)


def test_vertical_rx_forbidden():
    with pytest.raises(ValueError):
        Link(Position.horizontal(1.0), Position.vertical(5.0))
    with pytest.raises(ValueError):
        pathloss(Suburban(), Position.horizontal(1.0), Position.vertical(5.0))


@pytest.mark.parametrize("ch", [Suburban(), Suburban(alpha=4.0), Urban()])
def test_pathloss_many_matches_scalar(ch):
    for road, coords in (("x", [-190.0, -51.0, 3.0, 150.0]), ("y", [-120.0, -15.0, 0.5, 14.0, 16.0, 199.0])):
        vec = pathloss_many(ch, road, coords, RX50)
        for c, v in zip(coords, vec):
            assert v == pytest.approx(pathloss(ch, Position(road, c), RX50), rel=1e-13)


@pytest.mark.parametrize(
    "k,expected,sep",
    [(25, Position.horizontal(-25.0), 25.0), (50, Position.horizontal(0.0), 50.0),
     (140, Position.vertical(90.0), 140.0)],
)
def test_tx_grid_examples(k, expected, sep):
    p = tx_grid(k, 140, 140.0, 50.0)
    assert p == expected
    assert manhattan(p, RX50) == pytest.approx(sep)


def test_tx_grid_range():
    with pytest.raises(ValueError):
        tx_grid(0, 140, 140.0, 50.0)
    with pytest.raises(ValueError):
        tx_grid(141, 140, 140.0, 50.0)


@given(
    m_e=st.integers(1, 400),
    d_max=st.floats(1.0, 1000.0),
    rx_dist=st.floats(0.0, 500.0),
    data=st.data(),
)
def test_tx_grid_walk_property(m_e, d_max, rx_dist, data):
    k = data.draw(st.integers(1, m_e))
    p = tx_grid(k, m_e, d_max, rx_dist)
    rx = Position.horizontal(-rx_dist)
    assert manhattan(p, rx) == pytest.approx(k * d_max / m_e, rel=1e-12, abs=1e-9)


@given(st.floats(-200.0, 200.0))
def test_db_round_trip(db):
    assert lin_to_db(db_to_lin(db)) == pytest.approx(db, rel=1e-12, abs=1e-12)


@given(alpha=st.floats(1.05, 6.0), d1=st.floats(0.5, 1e4), d2=st.floats(0.5, 1e4))
def test_pathloss_decreasing_within_branch(alpha, d1, d2):
    lo, hi = sorted((d1, d2))
    if hi - lo < 1e-6 * hi:
        return
    ch = Suburban(alpha=alpha)
    rx = Position.horizontal(0.0)
    g_lo = pathloss(ch, Position.horizontal(lo), rx)
    g_hi = pathloss(ch, Position.horizontal(hi), rx)
    assert 0 < g_hi < g_lo
    u = Urban(alpha=alpha)
    # NLOS branch: vertical distances beyond the break-point
    n_lo = pathloss(u, Position.vertical(16.0 + lo), RX50)
    n_hi = pathloss(u, Position.vertical(16.0 + hi), RX50)
    assert 0 < n_hi < n_lo


@given(alpha=st.floats(1.05, 6.0), x=st.floats(-1e3, 1e3))
def test_urban_los_equals_suburban(alpha, x):
    if abs(x + 50.0) < 1e-6:
        return
    a = pathloss(Urban(alpha=alpha, a0_db=-20.0), Position.horizontal(x), RX50)
    b = pathloss(Suburban(alpha=alpha, a0_db=-20.0), Position.horizontal(x), RX50)
    assert a == b


def test_regions():
    assert region(Urban(), 50.0, 50.0) == "LOS"
    assert region(Urban(), 65.0, 50.0) == "WLOS"
    assert region(Urban(), 66.0, 50.0) == "NLOS"
    assert region(Suburban(), 140.0, 50.0) == "WLOS"


def test_worst_case_link():
    link = worst_case_link()
    assert link.tx == Position.vertical(50.0)
    assert link.rx == RX50
    assert link.separation == 100.0
    assert worst_case_link(d_target=20.0).tx == Position.horizontal(-30.0)
