"""
Time units and spousal combination rules
========================================

The two-year test can be counted in days, months or years, and the joint
numerator can combine the spouses' periods by minimum, maximum or average.
Facts are written separately for each unit; nothing is converted.
"""

from sec121 import CoupleFacts, SpouseTimeline, cross_validation_grid
from sec121.report import render_grid

facts = {
    "years": CoupleFacts(SpouseTimeline(2, 2), SpouseTimeline(1, 1, qualifying_reason=True)),
    "months": CoupleFacts(SpouseTimeline(30, 30), SpouseTimeline(12, 12, qualifying_reason=True)),
    "days": CoupleFacts(SpouseTimeline(900, 800), SpouseTimeline(500, 420, 600, True)),
}

print(render_grid(cross_validation_grid(facts), "table"))
