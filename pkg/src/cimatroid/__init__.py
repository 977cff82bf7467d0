"""Conditional-independence structures, matroids and oriented matroids.

The package implements the dictionary between four axiom systems at desk
scale, with exhaustive checkers and brute-force oracles:

* CI-structures over a ground set [n] with deletion, contraction, dual,
  direct sum, minors and isomorphism testing (:mod:`cimatroid.ci`);
* the semigraphoid, matroid and gaussoid axiom checkers with violation
  witnesses (:mod:`cimatroid.axioms`);
* matroids as rank functions, both conversion directions, the minor
  calculus and the enumeration oracle (:mod:`cimatroid.matroid`);
* signed circuits, oriented CI-structures, the sign-pattern axioms and
  the chirotope route (:mod:`cimatroid.oriented`);
* exact rational models: vector configurations and Gaussian covariance
  matrices (:mod:`cimatroid.models`);
* an exhaustive scan over all structures on small ground sets with a
  numba kernel and a numpy fallback (:mod:`cimatroid.scan`);
* text formats (:mod:`cimatroid.formats`) and a command line front end
  (:mod:`cimatroid.cli`).

All membership decisions are exact: integer ranks, rational arithmetic,
no floating point.
"""

from .axioms import (
    ViolationWitness,
    check_gaussoid,
    check_mci,
    check_semigraphoid,
    is_matroid_ci,
    witness_replays,
)
from .ci import (
    CIStatement,
    CIStructure,
    StatementIndex,
    isomorphic,
    minors,
    removal_relabeling,
    statement_count,
    statement_index,
)
from .errors import (
    AxiomError,
    CapacityError,
    CIMatroidError,
    FormatError,
    InternalCheckError,
    LoopError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SubmodularityError,
)
from .matroid import (
    DependenceProfile,
    Matroid,
    RankFunction,
    SetFamily,
    SetFunction,
    check_submodular,
    ci_of_matroid,
    dependence_profile,
    dependent_via_circuits,
    enumerate_loopless_matroids,
    g_family,
    gaussoid_matroid_decision,
    independent_sets_from_ci,
    normalize_loopless,
    rank_from_ci,
    semimatroid_of_set_function,
    uniform,
    validate_matroid,
)
from .models import (
    RationalMatrix,
    VectorConfiguration,
    chirotope_from_vectors,
    gaussian_ci,
    signed_circuits_from_vectors,
)
from .oriented import (
    Chirotope,
    OrientedCIStructure,
    SignedCircuitSet,
    SignedSet,
    check_circuit_axioms,
    check_oci,
    chirotope_validate,
    oriented_matroid_from_sigma,
    sigma_from_chirotope,
    sigma_of_oriented_matroid,
    underlying_matroid,
)
from .scan import matroid_ci_masks

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "CapacityError",
    "Chirotope",
    "CIMatroidError",
    "CIStatement",
    "CIStructure",
    "DependenceProfile",
    "FormatError",
    "InternalCheckError",
    "LoopError",
    "Matroid",
    "NotPositiveDefiniteError",
    "NotSymmetricError",
    "OrientedCIStructure",
    "RankFunction",
    "RationalMatrix",
    "SetFamily",
    "SetFunction",
    "SignedCircuitSet",
    "SignedSet",
    "StatementIndex",
    "SubmodularityError",
    "VectorConfiguration",
    "ViolationWitness",
    "check_circuit_axioms",
    "check_gaussoid",
    "check_mci",
    "check_oci",
    "check_semigraphoid",
    "check_submodular",
    "chirotope_from_vectors",
    "chirotope_validate",
    "ci_of_matroid",
    "dependence_profile",
    "dependent_via_circuits",
    "enumerate_loopless_matroids",
    "g_family",
    "gaussian_ci",
    "gaussoid_matroid_decision",
    "independent_sets_from_ci",
    "is_matroid_ci",
    "isomorphic",
    "matroid_ci_masks",
    "minors",
    "normalize_loopless",
    "oriented_matroid_from_sigma",
    "rank_from_ci",
    "removal_relabeling",
    "semimatroid_of_set_function",
    "sigma_from_chirotope",
    "sigma_of_oriented_matroid",
    "signed_circuits_from_vectors",
    "statement_count",
    "statement_index",
    "underlying_matroid",
    "uniform",
    "validate_matroid",
    "witness_replays",
]
