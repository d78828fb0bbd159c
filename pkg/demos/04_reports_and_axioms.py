"""Machine-readable reports, and t-norm / t-conorm axiom checks.

The same report is produced by the console script:
    genassoc check --spec my_scenario.json --out report.json

Run: python demos/04_reports_and_axioms.py
"""

import json

from genassoc import WitnessConfig, axiom_check, build_report, load_fixture
from genassoc.report import summarize

rep = build_report(load_fixture("identity_sum"), "check", method="all")
print(summarize(rep))
print("\nreport keys:", sorted(rep))
print("first finding:", json.dumps(rep["findings"][0], ensure_ascii=False))

grid = WitnessConfig(16)
ident = load_fixture("identity_sum").scenario
print("\nidentity generator with +: t-conorm?",
      axiom_check(ident.t_eval, "t-conorm", grid).outcome.value)

pole = load_fixture("pole_min").scenario
print("x/(1-x) with min, patched at 1: t-norm?",
      axiom_check(pole.t_modified, "t-norm", grid).outcome.value)
bad = axiom_check(lambda a, b: (a + b) / 2, "t-norm", grid)
print("arithmetic mean: t-norm?", bad.outcome.value, "-", bad.details["axiom"], "fails at", bad.to_json()["witness"])
