"""Conservative Maltsev polymorphisms, their majority derivatives, and a
path-consistency CSP solver that uses them."""
from .algebra import (CASE_LABELS, Domain, TernaryOperation, apply, boolean_majority,
                      boolean_minority, classify_case, derivative, derivative_case,
                      is_conservative, is_maltsev, is_majority, projection)
from .relations import (Language, PolymorphismReport, Relation, closure_under,
                        conservativity_witness, is_polymorphism, preservation_witness,
                        preserved_relations, preserves)
from .search import (SearchSpec, analyze, enumerate_maltsev_conservative, find_polymorphism,
                     sample_maltsev_conservative)
from .solver import (Instance, Network, brute_force_solve, establish_path_consistency,
                     normalize, solve_majority)

__version__ = "0.1.0"
