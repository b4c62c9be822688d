"""
How many vehicles may transmit?
===============================

Pick the Aloha probability so that a worst-case link at 100 m still meets a
90 % success target. Longer roads bring more interferers, so the admissible
probability falls with R and levels off at the infinite-road value.
"""

from corner_sinr import Scenario, Suburban, Urban, design_sweep, designed, success_probability, worst_case_link

link = worst_case_link(rx_dist=50.0, d_target=100.0)
grid = [15, 50, 200, 500, 2_000, 10_000, 100_000]

for ch in (Suburban(), Urban()):
    s = Scenario(channel=ch)
    print(f"\n{ch.kind}")
    for target in (0.8, 0.9, 0.95):
        pts = design_sweep(s, target, link, grid)
        row = " ".join(f"{p.p_star:.5f}" for p in pts)
        print(f"  target {target:.2f}: {row}   (infinite roads {pts[0].p_inf:.5f})")

# Plugging the design value back in gives the target exactly.
ds = designed(Scenario(channel=Urban()), 0.9, link)
print(f"\nurban, R=200 m: p* = {ds.roads.tx_prob:.6f}, success = {success_probability(ds, link).p_c:.12f}")
