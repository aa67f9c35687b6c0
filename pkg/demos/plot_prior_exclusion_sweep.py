"""
Sweeping the time since spouse B's last exclusion
=================================================

Both spouses own and use the home for 120 months.  Spouse B claimed an
exclusion P months ago.  We vary P from 1 to 36 under every joint numerator
mode and look for where the readings disagree.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from sec121 import Variable, find_inconsistency_zone, round_dollars, sweep_prior_exclusion, table3_facts

rows = sweep_prior_exclusion((1, 36))
for r in rows[:3] + rows[22:25]:
    print(r.p, round_dollars(r.sum_a), round_dollars(r.min_six), round_dollars(r.held_b2A))

# %%
# The divergent values form one contiguous run ending just below 24.
print("zone:", find_inconsistency_zone(Variable.PRIOR_B, (1, 36), table3_facts(1)))

# %%
ps = [r.p for r in rows]
plt.step(ps, [float(r.sum_a) for r in rows], where="mid", label="sum of limitations")
plt.step(ps, [float(r.min_six) for r in rows], where="mid", label="joint cap (all modes)")
plt.axvline(24, color="grey", ls=":")
plt.xlabel("months since spouse B's prior exclusion")
plt.ylabel("exclusion limit ($)")
plt.legend()
plt.savefig("prior_exclusion_sweep.png", dpi=120)
