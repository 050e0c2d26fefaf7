"""sectorkit: superselection sectors of permutation-invariant algebras.

Dense-matrix toolkit for the symmetric-group sector structure of
N-particle tensor spaces, the equivalence of parastatistics sectors with
boson/fermion systems carrying unobserved internal degrees of freedom,
finite-model covering-space quantization, and theta-sectors of a
particle on a circle.
"""

from .circle_theta import (
    ThetaSector,
    fd_convergence,
    gauge_equivalence_check,
    momentum_spectrum,
    position_operator,
    spectrum_rows,
    translation_unitary,
    twisted_momentum,
)
from .cover_quant import (
    FiniteCover,
    FiniteGroup,
    GroupRep,
    InvariantKernel,
    constrained_action,
    constrained_space,
    cover_from_action,
    cover_from_json,
    cover_to_json,
    irreps_of,
    random_invariant_kernel,
    randomize_section,
    realization_unitary,
    section_action,
    sector_census,
    symmetric_cover,
)
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .parastat_equiv import (
    EquivalenceCertificate,
    SectorRealization,
    doublet_isometry_3,
    general_equivalence,
    parafermion_constraint_space,
    parafermion_matrix,
    realize,
    singlet_isometry_2,
    verify_singlet_fermion_equivalence,
    verify_doublet_parafermion_equivalence,
)
from .permgroup import (
    IrrepMatrices,
    Partition,
    Permutation,
    StandardTableau,
    character,
    enumerate_partitions,
    hook_dimension,
    irrep,
    row_col_groups,
    standard_tableaux,
    symmetric_group,
)
from .tensor_rep import (
    SectorReport,
    TensorSpace,
    antisymmetrizer,
    central_projector,
    commutant_basis,
    commutant_dimension_nullspace,
    hermitian_range_projector,
    permutation_operator,
    sector_basis_span_check,
    sector_decomposition,
    symmetrizer,
    young_projector,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DomainError",
    "ResourceLimitError",
    "EquivalenceCertificate",
    "FiniteCover",
    "FiniteGroup",
    "GroupRep",
    "InvariantKernel",
    "IrrepMatrices",
    "Partition",
    "Permutation",
    "SectorRealization",
    "SectorReport",
    "StandardTableau",
    "TensorSpace",
    "ThetaSector",
    "antisymmetrizer",
    "central_projector",
    "character",
    "commutant_basis",
    "commutant_dimension_nullspace",
    "constrained_action",
    "constrained_space",
    "cover_from_action",
    "cover_from_json",
    "cover_to_json",
    "doublet_isometry_3",
    "enumerate_partitions",
    "fd_convergence",
    "gauge_equivalence_check",
    "general_equivalence",
    "hermitian_range_projector",
    "hook_dimension",
    "irrep",
    "irreps_of",
    "momentum_spectrum",
    "parafermion_constraint_space",
    "parafermion_matrix",
    "permutation_operator",
    "position_operator",
    "random_invariant_kernel",
    "randomize_section",
    "realization_unitary",
    "realize",
    "row_col_groups",
    "section_action",
    "sector_basis_span_check",
    "sector_census",
    "sector_decomposition",
    "singlet_isometry_2",
    "spectrum_rows",
    "standard_tableaux",
    "symmetric_cover",
    "symmetric_group",
    "symmetrizer",
    "translation_unitary",
    "twisted_momentum",
    "verify_singlet_fermion_equivalence",
    "verify_doublet_parafermion_equivalence",
    "__version__",
]
