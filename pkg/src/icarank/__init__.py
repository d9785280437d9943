"""icarank: structure and rank bounds for groups of invertible cellular
automata over finite groups, with brute-force oracles for every formula.

Dihedral naming convention: groups are named by ORDER (D8 = 8 elements).
"""

__version__ = "0.1.0"

from .caps import Caps, DEFAULT_CAPS
from .errors import (CapExceeded, ConstructionError, IcarankError,
                     InternalInvariantError, NotASubgroupError,
                     NotNormalError, RankSearchTimeout, SpecParseError)
from .groups import (DivisorStats, FiniteGroup, direct_product, divisor_stats,
                     make_cyclic, make_dihedral, make_quaternion,
                     make_symmetric, make_wreath)
from .lattice import (MobiusTable, Subgroup, SubgroupClass, SubgroupClassTable,
                      conjugacy_classes, generated_subgroup, group_length,
                      is_dedekind, mobius_table, normalizer, quotient,
                      subgroup_as_group, subgroups)
from .isomorphism import describe_group, find_isomorphism, is_isomorphic
from .parsing import parse_group_spec
from .configspace import (Orbit, OrbitDecomposition, alpha_all, alpha_mobius,
                          burnside_orbit_count, decode_config, encode_config,
                          enumerate_orbits, shift, stabilizer)
from .structure import (BigCount, CaEnumeration, IcaEnumeration, IcaFactor,
                        IcaStructure, ca_order, enumerate_ca_bruteforce,
                        enumerate_ica_bruteforce, ica_order, ica_structure)
from .rankoracle import (ActionTable, RankResult, group_rank, rank_exact,
                         rank_info, rank_upper_witness)
from .bounds import (BoundValue, RankBounds, best_bounds, dedekind_ca_upper,
                     dedekind_ica_upper, dihedral_lower, dihedral_upper,
                     general_upper, ica_lower, mciver_neumann_upper,
                     rank_of_symmetric, wreath_rank_upper)
from .asymptotics import (AmbientGroup, DivergenceReport, DivergenceStage,
                          FamilyDescriptor, NonFgWitness, divergence,
                          parse_family, remark_nonfg_check)
from .verification import CheckResult, run_suite
