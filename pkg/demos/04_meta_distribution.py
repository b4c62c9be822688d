"""
Beyond the average: the meta distribution
=========================================

Fix the link and draw many traffic realizations. Each has its own success
probability once fading is averaged out. The average hides how these spread:
with short roads most realizations are nearly interference free and a few
are hopeless.
"""

import numpy as np

from corner_sinr import Scenario, Suburban, Urban, designed, meta_distribution, success_probability, worst_case_link

link = worst_case_link()

for ch, r in ((Suburban(), 200.0), (Urban(), 10_000.0)):
    for design in (False, True):
        s = Scenario(channel=ch).with_half_len(r)
        if design:
            s = designed(s, 0.9, link)
        est = meta_distribution(s, link, 2000, master_seed=1)
        label = f"{ch.kind} R={r:g} m {'designed' if design else 'p=0.02'}"
        print(f"\n{label}")
        print(f"  mean outage {1 - est.moment1:.4f} +- {est.std_error:.4f}"
              f"   analytic {success_probability(s, link).outage:.4f}")
        print(f"  share meeting 0.9: {est.cdf_at(0.9):.3f}   share above the mean: {est.cdf_at(est.moment1):.3f}")
        counts, _ = np.histogram(est.samples, bins=10, range=(0, 1))
        print("  deciles of p_c:", " ".join(f"{c:4d}" for c in counts))
        ab = est.beta_params
        if ab:
            print(f"  beta fit a={ab[0]:.2f} b={ab[1]:.2f}, KS distance {est.beta_ks_distance():.3f}")
