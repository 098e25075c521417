"""Orientation numbers of diameter-4 tree vertex-multiplications.

Decide whether a multiplied diameter-4 tree admits a strong orientation of
diameter 4 (orientation number 4) or only 5, construct an explicit
diameter-4 orientation whenever one exists, and cross-check everything at
desk scale with an exhaustive oracle.  A squashed-order Sperner toolkit
(shadows, cascade bounds, deficiency functions) backs the thresholds.
"""

from .build import (ConstructionResult, ReducedSpec, SetSchedule,
                    build_base_orientation, construct_optimal, make_schedule,
                    reduce)
from .classify import (Classification, GapDetail, classify, half_binom,
                       select_case)
from .digraph import (UNREACHABLE, Orientation, center_in_set,
                      center_out_set, diameter, distance, eccentricities,
                      extend_orientation, from_arcs, from_edge_list,
                      in_projection, is_strong, out_projection, reverse,
                      to_dot, to_edge_list)
from .errors import ConstructionError, Refusal, UsageError
from .oracle import (OracleResult, bipartite_orientation_number,
                     orientation_number)
from .sperner import (Family, KSubset, family_of, first_m, is_antichain,
                      is_cross_intersecting, disjoint_pair_matching, kappa,
                      kappa_star, last_m, shade, shadow, shadow_size_kkt,
                      squashed_compare, squashed_level, squashed_rank,
                      squashed_unrank)
from .tree import (BranchSpec, NeighborPartition, TreeSpec, VertexId,
                   branch_copy, center, leaf_copy, load_spec,
                   multiplied_edges, multiplied_vertices, partition,
                   spec_from_dict, spec_to_dict, validate)

__version__ = "0.1.0"
