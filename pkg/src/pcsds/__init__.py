"""Periodic complementary binary sequences and supplementary difference sets."""

from .errors import (
    BudgetExceeded,
    CatalogContradiction,
    InfeasibleParameters,
    ParseError,
    PcsError,
    VerificationError,
)
from .sds import (
    ParameterSet,
    ResidueSubset,
    SdsFamily,
    canonicalize,
    difference_profile,
    enumerate_parameter_sets,
    nu,
    pcs_to_sds,
    sds_to_pcs,
    verify_sds,
)
from .seqcore import (
    BinarySequence,
    CorrelationVector,
    SequenceFamily,
    cyclic_shift,
    is_acs,
    is_pcs,
    nacf,
    negate,
    pacf,
    pacf_from_nacf,
    reverse,
)

__version__ = "0.1.0"
