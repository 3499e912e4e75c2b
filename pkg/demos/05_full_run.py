# The whole computation: every matroid in the ten cases, one verdict each.
# Takes about half a minute on one core.

from collections import Counter

from matrealize.pipeline import RunOptions, run_all, summary_table

reports, passed = run_all(RunOptions())
print(summary_table(reports))

# %% which certificates were needed
for r in reports:
    print(r.case, r.family_tallies)

# %% the empty ones are the Fano plane and its dual
for r in reports:
    for rec in r.records:
        if rec["verdict"]["kind"] == "empty":
            print(r.case, rec["bases"][:4], "...")

# %% how often the first pivot basis was not enough
print(Counter(len(rec["pivot_attempts"]) for r in reports for rec in r.records))
