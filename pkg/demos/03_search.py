"""
Searching for a conservative Maltsev polymorphism
=================================================

The search fills in the table of p cell by cell.  Cells forced by the Maltsev
identities are fixed up front, conservativity limits every other cell to its
arguments, and forward checking prunes against the relations.
"""
from pathlib import Path

from conslang import analyze
from conslang.formats import format_operation, read_language

data = Path(__file__).parent / "data"

# two-colouring: the inequality relation on {0,1}
lang = read_language(data / "neq2.lang")
result = analyze(lang)
print("found:", result.found, "derived majority works:", result.success)
print(format_operation(result.maltsev))

# two blocks {0,1} and {2}: "same block" and "different block"
result = analyze(read_language(data / "blocks.lang"))
print("blocks found:", result.found, "success:", result.success)
print(format_operation(result.majority))

# neither an order nor three-colouring has a Maltsev polymorphism
for name in ("chain3.lang", "k3.lang"):
    print(name, "found:", analyze(read_language(data / name)).found)
