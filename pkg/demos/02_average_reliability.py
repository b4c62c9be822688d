"""
Average reliability around a corner
===================================

RX sits 50 m before the junction. The TX walks towards it along the RX road,
through the junction and up the crossing road. Suburban corners see a smooth
decline; blind urban corners drop sharply once the TX leaves the break-point
zone of the crossing road.
"""

from corner_sinr import Link, Position, Scenario, Suburban, Urban, success_probability
from corner_sinr.analytic import success_probability_oracle
from corner_sinr.scene import region, tx_grid_all

rx = Position.horizontal(-50.0)
positions = tx_grid_all(14, 140.0, 50.0)

print(f"{'sep [m]':>8} {'region':>6} {'suburban':>9} {'urban':>9}")
for k, tx in enumerate(positions, start=1):
    sep = 10.0 * k
    link = Link(tx, rx)
    sub = success_probability(Scenario(channel=Suburban()), link).outage
    urb = success_probability(Scenario(channel=Urban()), link).outage
    print(f"{sep:8.0f} {region(Urban(), sep, 50.0):>6} {sub:9.4f} {urb:9.4f}")

# The closed form agrees with brute-force integration of the Laplace exponent.
link = Link(Position.vertical(50.0), rx)
for ch in (Suburban(), Urban()):
    s = Scenario(channel=ch).with_half_len(10_000.0)
    a, b = success_probability(s, link), success_probability_oracle(s, link)
    print(f"\n{ch.kind:9s} R=10 km: closed form {a.p_c:.12f}, direct quadrature {b.p_c:.12f}")
    print(f"          factors  noise {a.p_noint:.4f}  road x {a.p_x:.4f}  road y {a.p_y:.4f}")
