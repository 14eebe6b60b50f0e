"""Steiner designs from prescribed automorphism groups.

Construction (Kramer-Mesner reduction to exact cover), extension through a
new point, verification, derivation and isomorphism classification of
Steiner systems S(t,k,v), plus the file formats and command line driving
them.
"""

__version__ = "0.1.0"

from .designs import (
    AdmissibilityReport,
    Design,
    Params,
    VerificationResult,
    admissible,
    admissible_table,
    block_count,
    derived,
    design_from_orbits,
    is_rotational,
    verify,
)
from .errors import BudgetExceeded, ParseError, SteinerError
from .exact_cover import (
    CoverSolution,
    ExactCoverInstance,
    SearchStats,
    count_solutions,
    solve,
)
from .extension import ExtensionProblem, extend_steiner, extension_instance
from .iso import (
    Fingerprint,
    IsoCertificate,
    are_isomorphic,
    automorphism_group,
    filter_nonisomorphic,
    fingerprint,
)
from .kramer_mesner import KMMatrix, build_km, km_search, steiner_reduce
from .orbits import OrbitTransversal, SubsetOrbit, orbit_transversal, subset_orbit
from .perms import (
    PermGroup,
    Permutation,
    compose,
    enumerate_elements,
    fixed_points,
    format_permutation,
    group_order,
    identity,
    inverse,
    is_invariant,
    parse_permutation,
    perm_order,
    stabilizes,
)

__all__ = [
    "AdmissibilityReport",
    "BudgetExceeded",
    "CoverSolution",
    "Design",
    "ExactCoverInstance",
    "ExtensionProblem",
    "Fingerprint",
    "IsoCertificate",
    "KMMatrix",
    "OrbitTransversal",
    "Params",
    "ParseError",
    "PermGroup",
    "Permutation",
    "SearchStats",
    "SteinerError",
    "SubsetOrbit",
    "VerificationResult",
    "admissible",
    "admissible_table",
    "are_isomorphic",
    "automorphism_group",
    "block_count",
    "build_km",
    "compose",
    "count_solutions",
    "derived",
    "design_from_orbits",
    "enumerate_elements",
    "extend_steiner",
    "extension_instance",
    "filter_nonisomorphic",
    "fingerprint",
    "fixed_points",
    "format_permutation",
    "group_order",
    "identity",
    "inverse",
    "is_invariant",
    "is_rotational",
    "km_search",
    "orbit_transversal",
    "parse_permutation",
    "perm_order",
    "solve",
    "stabilizes",
    "steiner_reduce",
    "subset_orbit",
    "verify",
]
