"""
Running the verification harness
================================

The harness samples conservative Maltsev operations, checks that each
derivative is a majority, and checks that it preserves every binary relation
the operation preserves (relations grown by closure from random seeds).
"""
from conslang.verify import run_verify

report = run_verify(2, "exhaustive")
print(report.to_text())

report = run_verify(3, "random", samples=200, seed=7, relations=50)
print(report.to_tsv())

# reports do not depend on the number of workers
again = run_verify(3, "random", samples=200, seed=7, relations=50, workers=2)
print("identical:", again.to_text() == report.to_text())
