"""Weak true-concurrency toolkit: event structures, weak bisimulations and their logics."""
from .errors import *  # noqa: F401,F403
from .pes import (TAU, EMPTY, PrimeEventStructure, are_concurrent, causes, enabled,
                  enumerate_configurations, is_configuration, is_consistent, residual,
                  validate_pes, visible_part)
from .pomset import (Pomset, PosetalTriple, extend_iso, history_prefixes, induced_pomset,
                     is_posetal_triple, pointwise_prefixes, pomset_isomorphic)
from .transitions import (ConfigurationGraph, build_configuration_graph, tau_closure,
                          weak_event_successors, weak_pomset_successors,
                          weak_pomset_successors_by_paths, weak_step_successors)
from .formula import (T, And, Bind, Box, Diamond, DualBind, Exec, Formula, Mu, Not, Nu, Or,
                      PropApply, Step, Top, desugar, fragment_of, free_vars, gfp_desugar,
                      pomset_class_member, pomset_formula)
from .semantics import denotation, holds, is_legal_pair, legal_pairs, satisfies
from .fixpoint import approximant, mu_denotation, positivity_check, stabilization_index
from .equivalence import (EquivalenceKind, Verdict, check, check_flat_bisim, check_hhp_bisim,
                          check_hp_bisim, is_bisimulation)
from .certificates import distinguishing_formula
from .syntax import format_formula, parse_formula
from .pesio import format_pes, load_pes, parse_pes
from .terms import compile_term, parse_term
from .enumeration import SearchResult, bounded_logical_equiv, bounded_mu_equiv, fixpoint_bodies
from .quotient import (QuotientPes, build_quotient_pes, check_projection, projection_properties,
                       projection_relation)
from .sweep import SweepSpec, pes_key, random_pes, sweep_small_pes
from .suites import SUITES, run_suite

__version__ = "0.1.0"
