"""
The ground-truth couple under both readings
===========================================

Spouse A has owned and lived in the home for 30 months.  Spouse B joined
12 months ago and the couple sells early because B changed jobs.
"""

from sec121 import CoupleFacts, SpouseTimeline, StatuteParams, evaluate, round_dollars

params = StatuteParams()  # months, 24-month test, $250,000 / $500,000
facts = CoupleFacts(
    SpouseTimeline(ownership=30, use=30),
    SpouseTimeline(ownership=12, use=12, qualifying_reason=True),
)

# %%
# Sum of limitations: A keeps a full $250,000 and B's $250,000 is prorated
# by 12/24.  Joint cap: one $500,000 limitation reduced by the couple's
# shortest period, again 12/24.
outcome = evaluate(facts, params)
print("sum of limitations:", round_dollars(outcome.sum_reading))
print("joint cap:         ", round_dollars(outcome.joint_reading))
print("diverges:", outcome.diverges, "by", round_dollars(outcome.delta))

# %%
# Without B's job change neither reading offers any proration.
no_reason = CoupleFacts(facts.spouse_a, SpouseTimeline(12, 12))
print(evaluate(no_reason, params))
