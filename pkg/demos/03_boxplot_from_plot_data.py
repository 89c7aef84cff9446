"""Walkthrough: render the CTR box plot from the machine-readable report.

Run demos/02_generate_and_analyze.py first to produce
demo_out/plot_data.json. Requires matplotlib (not a package dependency;
the JSON schema exists precisely so any plotter can consume it).
"""

import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = Path("demo_out/plot_data.json")
if not path.exists():
    sys.exit("run demos/02_generate_and_analyze.py first")

doc = json.loads(path.read_text("utf-8"))
assert doc["schema_version"] == 1

fig, ax = plt.subplots(figsize=(6, 4))
stats = [{
    "label": b["product_category"],
    "med": b["median"], "q1": b["q1"], "q3": b["q3"],
    "whislo": b["whisker_low"], "whishi": b["whisker_high"],
    "mean": b["mean"], "fliers": [],
} for b in doc["boxplots"] if b["metric"] == "ctr"]
ax.bxp(stats, showmeans=True)
ax.set_ylabel("CTR")
ax.set_title("Product category CTR")
fig.tight_layout()
fig.savefig("demo_out/ctr_boxplot.png", dpi=120)
print("wrote demo_out/ctr_boxplot.png")
