"""Finite-scale geometry of orthogonal projection pairs.

Library + CLI for the two-projection geometry of a fixed orthogonal
splitting H = H+ (+) H-: block operators with the mixed (inf, p) norm,
spectral pictures and the eigenvalue pairing, Halmos angles, geodesics
with their Finsler distance bounds, the nine-class classification with
Fredholm indices, and three worked example families.
"""

__version__ = "0.1.0"

from .blockop import (
    BlockOperator,
    Splitting,
    adjoint,
    commutator_with_eplus,
    norm_infty_p,
    transport_unitary,
)
from .geodesics import (
    GeodesicSpec,
    build_geodesic,
    distance_report,
    geodesic_eval,
    sinc_identity_residual,
)
from .halmos import HalmosDecomposition, commutator_norm_via_angles, halmos_decompose
from .linalg import (
    EigDecomposition,
    hermitian_eig,
    matfun_hermitian,
    op_norm,
    polar,
    schatten_norm,
    sinc,
)
from .models import (
    INF,
    ClassLabel,
    ProjectionModel,
    TailSpec,
    Truncation,
    classify,
    complement_model,
    diagonalize_pair,
    index_of,
    materialize,
    model_from_json_dict,
    model_to_json_dict,
    norm_distance_check,
    norm_distance_oracle,
    validate_model,
)
from .gallery import (
    FourierConfig,
    HardyConfig,
    fourier_projection,
    hardy_projection,
    idempotent_range_projection,
    winding_number,
)
from .spectral import (
    SpectralPicture,
    extract_picture,
    reconstruct,
    t_pair,
    verify_pairing,
)
