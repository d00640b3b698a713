"""
Checking polymorphisms
======================

An operation preserves a relation when applying it row-wise to any three
members lands back in the relation.  The check is vectorised over all k**3
triples of members.
"""
from conslang import (Domain, Language, Relation, boolean_majority, boolean_minority,
                      closure_under, is_polymorphism, preservation_witness, preserves,
                      sample_maltsev_conservative)

dom = Domain(2)
neq = Relation.from_tuples(dom, 2, [(0, 1), (1, 0)])
leq = Relation.from_tuples(dom, 2, [(0, 0), (0, 1), (1, 1)])

minority, majority = boolean_minority(), boolean_majority()
print("minority preserves neq:", preserves(minority, neq))
print("minority preserves leq:", preserves(minority, leq))
# the witness is the first offending triple of rows
print("  witness:", preservation_witness(minority, leq))
print("majority preserves leq:", preserves(majority, leq))

# all 16 binary relations on {0,1}: the majority keeps every one of them
print(sum(preserves(majority, Relation(2, dom, m)) for m in range(16)), "of 16 kept by majority")
print(sum(preserves(minority, Relation(2, dom, m)) for m in range(16)), "of 16 kept by minority")

# a conservative language implicitly contains every unary relation
lang = Language(dom, {"neq": neq, "leq": leq}, conservative=True)
report = is_polymorphism(minority, lang)
print("minority on the language:", "ok" if report else report.violations)

# the smallest relation containing a seed that a random conservative
# Maltsev operation preserves
seed = Relation.from_tuples(Domain(3), 2, [(0, 1), (1, 2)])
p = sample_maltsev_conservative(Domain(3), seed=1)
print("closure of", seed.members, "->", closure_under(p, seed).members)
