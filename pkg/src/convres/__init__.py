"""Exact resolutions and invariants of multidimensional convolutional codes.

A code is a submodule of S^q over S = F_p[D1..Dn].  The package
computes its minimal reduced polynomial resolution and everything that
falls out of it: degree and Forney tables, rate, memory, homological
dimension, Hilbert function, structural checks (resolution, column
reducedness, predictable degree property, minimality), observability
with parity-check extraction, and an independent linear-algebra oracle
for verification.
"""

from .algebra import (
    CodePresentation,
    ModElem,
    NEG_INF,
    Poly,
    PolyMatrix,
    Ring,
    parse_poly,
    twisted_degree,
)
from .complexes import (
    PolyComplex,
    ResolutionReport,
    check_minimal,
    check_pd,
    check_reduced,
    check_resolution,
    column_degree_table,
    homogenize_complex,
    leading_term_complex,
    minimal_resolution,
    minimalize_graded,
    validate_complex,
)
from .errors import (
    ConvresError,
    DomainError,
    InputError,
    PolyParseError,
    PreconditionError,
    StructuralError,
    UnsupportedDimensionError,
)
from .groebner import (
    GroebnerBasis,
    ModuleOrder,
    SubmodulePresentation,
    groebner_basis,
    left_kernel,
    matrix_kernel,
    membership,
    minimal_generators,
    module_equal,
    normal_form,
    syzygy_basis,
)
from .invariants import (
    CodeInvariants,
    ForneyTable,
    forney_table,
    hilbert_formula,
    hilbert_values,
    memory,
    rate_and_dimension,
)
from .observability import (
    ObservabilityReport,
    TorsionWitness,
    is_observable,
    monic_irreducibles,
    prop3_spot_check,
)
from .oracle import (
    TruncatedSpace,
    hilbert_oracle,
    memory_recovery_check,
    truncated_code_space,
    truncated_exactness,
    truncated_kernel,
)

__version__ = "0.1.0"
