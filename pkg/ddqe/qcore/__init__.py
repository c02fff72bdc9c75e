from .linalg import (
    anticommutator,
    as_matrix,
    commutator,
    dagger,
    dissipator,
    is_hermitian,
    mat_exp,
    propagators,
    superoperator,
    symmetrize,
)
from .pauli import (
    IDENTITY2,
    KET_DOWN,
    KET_UP,
    P_DOWN,
    P_UP,
    PAULIS,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expectation_components,
    hermitian_basis,
)
from .random import RngStream, gaussian, haar_unitary
from .states import (
    BlochVector,
    DensityMatrix,
    bloch_map,
    density_from_bloch,
    pure_state,
    purity,
)

__all__ = [
    "anticommutator",
    "as_matrix",
    "commutator",
    "dagger",
    "dissipator",
    "is_hermitian",
    "mat_exp",
    "propagators",
    "superoperator",
    "symmetrize",
    "IDENTITY2",
    "KET_DOWN",
    "KET_UP",
    "P_DOWN",
    "P_UP",
    "PAULIS",
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "expectation_components",
    "hermitian_basis",
    "RngStream",
    "gaussian",
    "haar_unitary",
    "BlochVector",
    "DensityMatrix",
    "bloch_map",
    "density_from_bloch",
    "pure_state",
    "purity",
]
