"""Local-unitary orbit dimensions of n-qubit pure states.

The library builds the (3n+1)-column generator-action matrix of a state,
measures real span dimensions of column subsets (floating SVD or exact
rational elimination), and uses those spans to detect maximally entangled
pair factors, classify minimum-orbit-dimension states by their pairing,
and factor such states back into canonical pieces.
"""

from .analysis import (
    Factorization,
    InconsistentStructureError,
    MinimalityResult,
    NonCanonicalFactorError,
    NotMinimal,
    NotMinimalError,
    OrbitReport,
    SingletPairing,
    classify_min_orbit,
    detect_singlet_pairs,
    detect_unentangled,
    factor_state,
    is_minimum_orbit,
    min_orbit_dimension,
    orbit_dimension,
    orbit_report,
    pairing_equal,
)
from .lie_action import (
    TRIPLE_ORDER,
    TangentMatrix,
    apply_x,
    apply_y,
    apply_z,
    real_dot,
    real_view,
    tangent_matrix,
)
from .lu import GENERATORS, LocalUnitary, adjoint_rep, apply_local, random_su2
from .rank import (
    DEFAULT_TOL,
    ColumnSelector,
    RankResult,
    complement_basis,
    complement_dim,
    real_rank,
    span_dim,
)
from .rational import RationalComplex, as_fraction, fraction_str
from .states import (
    EXACT,
    FLOAT,
    MultiIndex,
    StateVector,
    ZeroResidualError,
    ZeroStateError,
    as_code,
    basis_state,
    canonical_pair_state,
    contract_pair,
    embed_product,
    flip_bit,
    load_state,
    random_rational_state,
    random_state,
    save_state,
    singlet_product,
    tensor,
)
from .verify import SUITES, SuiteReport, TrialFailure, verify_proposition

__version__ = "0.1.0"

__all__ = [
    "ColumnSelector",
    "DEFAULT_TOL",
    "EXACT",
    "FLOAT",
    "Factorization",
    "GENERATORS",
    "InconsistentStructureError",
    "LocalUnitary",
    "MinimalityResult",
    "MultiIndex",
    "NonCanonicalFactorError",
    "NotMinimal",
    "NotMinimalError",
    "OrbitReport",
    "RankResult",
    "RationalComplex",
    "SUITES",
    "SingletPairing",
    "StateVector",
    "SuiteReport",
    "TRIPLE_ORDER",
    "TangentMatrix",
    "TrialFailure",
    "ZeroResidualError",
    "ZeroStateError",
    "adjoint_rep",
    "apply_local",
    "apply_x",
    "apply_y",
    "apply_z",
    "as_code",
    "as_fraction",
    "basis_state",
    "canonical_pair_state",
    "classify_min_orbit",
    "complement_basis",
    "complement_dim",
    "contract_pair",
    "detect_singlet_pairs",
    "detect_unentangled",
    "embed_product",
    "factor_state",
    "flip_bit",
    "fraction_str",
    "is_minimum_orbit",
    "load_state",
    "min_orbit_dimension",
    "orbit_dimension",
    "orbit_report",
    "pairing_equal",
    "random_rational_state",
    "random_state",
    "random_su2",
    "real_dot",
    "real_rank",
    "real_view",
    "save_state",
    "singlet_product",
    "span_dim",
    "tangent_matrix",
    "tensor",
    "verify_proposition",
    "__version__",
]
