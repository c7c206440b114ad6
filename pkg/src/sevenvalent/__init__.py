"""Toolkit for 7-valent symmetric graphs.

Permutation groups with stabilizer chains, graph constructions (Cayley graphs,
dihedrants, coset and orbital graphs, named graphs), automorphism groups by
partition refinement, s-arc transitivity, normal quotients and basicness, and
the simple-group order arithmetic behind the K_n scans.
"""

from .automorphism import (AutomorphismResult, BudgetExceeded, ColoredPartition, are_isomorphic,
                           automorphism_group, automorphism_search, is_automorphism, refine)
from .graphs import (CosetGraphSpec, DihedrantSpec, Graph, analyze, cayley_graph, coset_graph,
                     dihedrant, named_graph, orbital_graphs_valency7, solve_heptic_congruence)
from .numtheory import FactoredInteger, factorize, is_prime, prime_count
from .permgroup import (Permutation, PermutationGroup, build_group, compose, contains,
                        coset_action, minimal_normal_subgroups, normal_closure, orbit, order,
                        stabilizer, is_semiregular)
from .quotient import (BasicnessReport, QuotientResult, is_basic, normal_quotient, table1_verify,
                       verify_praeger)
from .symmetry import (TransitivityReport, count_s_arcs, is_s_arc_transitive,
                       stabilizer_profile_check, transitivity_degree)

__version__ = "0.1.0"
