"""
Letting the search find conflicting fact patterns
=================================================

Instead of picking cases by hand, enumerate a box of ownership, use and
prior-exclusion periods and keep the patterns where the readings differ.
"""

from sec121 import SearchDomain, StatuteParams, bounded_search
from sec121.report import witness_line

params = StatuteParams()

# %%
# Spouse B's prior exclusion is the only free variable.
domain = SearchDomain(
    own_a=(120, 120), use_a=(120, 120), prior_a=(120, 120),
    own_b=(120, 120), use_b=(120, 120), prior_b=(1, 120),
    reason_a=False, reason_b=True,
)
found = bounded_search(domain, params, limit=domain.size)
print(len(found), "witnesses; the last one sits on the boundary:")
print(witness_line(found[-1]))

# %%
# A wider box where both spouses move and whoever falls short carries a
# qualifying reason.  Results come back in lexicographic order.
wide = SearchDomain(
    own_a=(20, 26), use_a=(20, 26), prior_a=(22, 26),
    own_b=(22, 26), use_b=(22, 26), prior_b=(22, 26),
    reason_policy="failing", require_failure=True,
)
for w in bounded_search(wide, params, limit=5):
    print(witness_line(w))
