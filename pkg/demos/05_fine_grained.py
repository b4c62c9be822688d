"""
Fine-grained reliability along the TX walk
==========================================

Reuse each traffic realization for every TX position. A single realization
then traces its own outage curve. With 200 m roads the curves split into a
reliable bundle near zero and a few bad ones. The good and bad columns
below give the mean outage of each group.
"""

from corner_sinr import Scenario, Suburban, Urban, designed, fine_grained_sweep, worst_case_link
from corner_sinr.montecarlo import bimodality

link = worst_case_link()

for ch in (Suburban(), Urban()):
    for r in (200.0, 10_000.0):
        s = designed(Scenario(channel=ch).with_half_len(r), 0.9, link)
        res = fine_grained_sweep(s, link.rx, 140.0, 14, 2000, master_seed=3)
        print(f"\n{ch.kind} R={r:g} m, p={s.roads.tx_prob:.5f}")
        print(f"{'sep':>5} {'mean':>7} {'F(0.9)':>7} {'good':>7} {'bad':>7} {'near 0':>7} {'near mean':>9}")
        for j, sep in enumerate(res.separations):
            b = bimodality(res.outage[:, j], 0.9)
            print(f"{sep:5.0f} {res.mean_outage[j]:7.4f} {res.cdf_at_target[j]:7.3f} "
                  f"{res.cond_mean_good[j]:7.4f} {res.cond_mean_bad[j]:7.4f} {b['low']:7.3f} {b['mid']:9.3f}")
        # a few individual curves, every other position
        for i in range(3):
            print(f"  realization {i}:", " ".join(f"{v:.2f}" for v in res.outage[i, ::2]))
