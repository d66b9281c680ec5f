"""Finite F-graphs: graphs typed by a set functor, their homomorphisms,
limits and colimits, graph relations, cofree graphs and pattern classes."""

from .errors import (BudgetExceeded, DomainMismatch, EmptyColorSet, EnumerationCapExceeded,
                     FGraphError, MalformedValue, NotACongruence, NotAnOrientation,
                     ParentMismatch, PreconditionViolated, SpecMismatch, Unsupported)
from .functors import (ColoredSpec, DirectedHyper, DPair, FinPowerset, Identity, KTuple, Sum,
                       UPair, count_values, enumerate_values, map_value, support)
from .graph import (EquivPair, FGraph, Hom, Partition, SubgraphHandle, Verdict, compose,
                    factorize, first_iso, is_congruence, is_epi, is_hom, is_iso, is_mono,
                    is_regular_epi, is_regular_mono, iso_theorem_2, iso_theorem_3, kernel,
                    quotient, validate_graph, validate_hom)
from .search import are_isomorphic, count_homs, find_hom, find_iso, iter_homs
from .relations import (GraphRelation, RelationPair, edges_related, is_graph_relation,
                        kernel_relation, largest_graph_relation)
from .limits import (coequalize, cogenerated_subgraph, coproduct, equalize, generated_subgraph,
                     preimage, product, pullback, pushout, subgraph_lattice, terminal_graph,
                     to_terminal)
from .cofree import (ColorSet, Coloring, CofreeGraph, cofree_graph, extend_to_cofree,
                     induced_hom, is_regular_injective, unit_embedding)
from .transforms import (conjunct_decomposition, lift_orientation, minimize, orient, simplify)
from .covariety import (Pattern, closure_audit, is_invariant_subgraph, pat_of_class,
                        pattern_hat, satisfies_pattern)

__version__ = "0.1.0"
