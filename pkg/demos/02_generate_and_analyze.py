"""Walkthrough: generate a corpus with a planted CTR correlation and
recover it through the full analysis pipeline.

Writes the corpus to ./demo_out/ads.csv and the report artifacts next to
it, then prints the rendered correlation table. The negemo row should
land near the planted rho of 0.30.
"""

from pathlib import Path

from adappeal import compile_matcher, filter_by_impressions, parse_dictionary
from adappeal.pipeline import analyze
from adappeal.report import plot_data_json, render_report
from adappeal.synth import planted_corpus, write_csv

DICT = b"""%
1\taffect
2\tposemo
3\tnegemo
4\tdeath
%
happy\t2
unease\t3
dread\t3
worry*\t3
"""

out = Path("demo_out")
out.mkdir(exist_ok=True)

records = planted_corpus(seed=42, n_ads=3000, target_rho=0.30)
write_csv(records, out / "ads.csv")
print(f"generated {len(records)} records -> {out / 'ads.csv'}")

dictionary = parse_dictionary(DICT)
matcher = compile_matcher(dictionary)
ds = filter_by_impressions(records, 10000)

bundle = analyze(ds, dictionary, matcher, fields=("main",))
doc = render_report(bundle)
(out / "report.md").write_text(doc, "utf-8")
(out / "plot_data.json").write_text(plot_data_json(bundle), "utf-8")
print(f"report -> {out / 'report.md'}\n")

# show just the correlation table section
lines = doc.splitlines()
start = next(i for i, ln in enumerate(lines) if ln.startswith("Correlation"))
print("\n".join(lines[start:]))
