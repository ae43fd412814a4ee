# coding: utf-8

# # A small campaign with CSV export
#
# Each cell draws a fresh instance per repetition (seed = base_seed + rep),
# runs the schedule and averages the per-run maximum target probability.
# The curves in the CSVs are mean target probability per iteration.

import tempfile
from pathlib import Path

from eqaoa.campaign import CampaignConfig, export_trajectories, run_campaign, summarize

cfg = CampaignConfig(
    n=12,
    cells=((440, "planted"), (440, "random-unsat")),
    reps=5,
    variant="full",
    gamma_form="odd",
    base_seed=7,
)
report = run_campaign(cfg)
print(summarize(report))

out = Path(tempfile.mkdtemp())
for path in export_trajectories(report, out):
    print(path.name, "rows:", len(path.read_text().splitlines()) - 1)
