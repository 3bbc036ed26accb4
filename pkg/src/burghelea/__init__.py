"""Desk-scale exact-arithmetic workbench for the Hochschild homology of
group rings: conjugacy-class splittings, centralizer localizations, chain
homotopies, rapid-decay norm families and l1 filling functions."""

from .chains import Chain, chain_from_obj, chain_to_obj, support_diameter, tuple_diameter
from .errors import (
    DescriptorError,
    GroupMismatchError,
    KindMismatchError,
    NotABoundaryError,
    NotConjugateError,
    NotConjugateWithinError,
    OracleCapError,
    ResourceCapError,
    WindowExhaustedError,
    WorkbenchError,
)
from .groups import (
    FiniteTableGroup,
    FinitePermGroup,
    FreeAbelianGroup,
    FreeGroup,
    GroupModel,
    ProductGroup,
    parse_group,
)
from .metric import (
    ConjugacyClass,
    CosetSection,
    WordMetric,
    centralizer,
    conjugacy_bound_profile,
    conjugacy_class,
    conjugacy_classes,
    coset_section,
    find_conjugator,
    minimal_conjugator,
)
from .hochschild import (
    hochschild_boundary,
    homology_ranks,
    iota_h,
    pi_h,
    split_by_class,
)
from .bar_complexes import (
    bar_homology_ranks,
    boundary_cbar,
    boundary_cprime,
    localize_to_equivariant,
    phi_g,
    phi_g_inv,
    psi,
    psi_inv,
)
from .homotopy import (
    boundary_e,
    dbar,
    homotopy_d,
    i_e,
    p_e,
    theta_h,
    verify_homotopy_square,
)
from .norms import NormFamily, operator_growth_profile, rd_chain_seminorm_pair
from .dehn import (
    BarTruncation,
    FillingResult,
    SimplicialComplex,
    dehn_function,
    filling_estimate_check,
    min_l1_filling,
)

__version__ = "0.1.0"
