"""
Solving instances with a majority polymorphism
==============================================

For binary constraints with a majority polymorphism, strong path consistency
decides satisfiability.  A solution is then built greedily, re-establishing
path consistency after each assignment.  A brute-force oracle cross-checks.
"""
from pathlib import Path

import numpy as np

from conslang import (analyze, brute_force_solve, establish_path_consistency, normalize,
                      solve_majority)
from conslang.formats import read_instance, read_language

data = Path(__file__).parent / "data"
lang = read_language(data / "blocks.lang")
witness = analyze(lang).majority

for name in ("blocks_sat.inst", "blocks_unsat.inst"):
    inst = read_instance(data / name, lang)
    net = establish_path_consistency(normalize(inst))
    print(name, "path consistency:", "empty" if net is None else "consistent")
    print("  majority solver:", solve_majority(inst, witness))
    print("  brute force:    ", brute_force_solve(inst))

# the network stores domains as an (m, n) boolean array
inst = read_instance(data / "blocks_sat.inst", lang)
net = establish_path_consistency(normalize(inst))
print(net.domains.astype(np.uint8))

# path consistency is confluent: a random rule order reaches the same network
shuffled = establish_path_consistency(normalize(inst), rng=np.random.default_rng(0))
print("same fixed point:", shuffled == net)
