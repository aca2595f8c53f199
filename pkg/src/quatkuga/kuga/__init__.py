"""Kuga fiber spaces: data, group action, Riemann conditions and concrete families."""

from .action import (
    GammaLambdaElement,
    automorphy_factor,
    fiber_isomorphism,
    fiber_isomorphism_report,
    gamma_lambda,
    mobius,
    projective_action,
    translation,
)
from .data import (
    DegenerateLatticeError,
    GammaElement,
    KugaData,
    LatticeBasis,
    check_kuga_data,
    symplectic_form_E,
)
from .families import (
    build_elliptic_family,
    build_false_elliptic,
    endomorphism_commutation,
    fiber_product_data,
    paper_generators,
    paper_order,
    shimura_form_identity,
)
from .hh import h_tensor_h_iso, su2su2_to_so4
from .periods import (
    ComplexStructureAtTau,
    FiberLattice,
    PeriodMatrix,
    complex_structure,
    fiber_lattice,
    period_matrix,
    riemann_conditions,
)
