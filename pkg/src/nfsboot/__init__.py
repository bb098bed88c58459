"""nfsboot: booting-step toolkit for individual discrete logs in F_{p^n}.

The booting (initialization) step rewrites a discrete-log target s as a
smooth product: find t such that some small preimage of s^t (or of a
subfield multiple of it) has a B-smooth norm.  The package covers the
whole pipeline -- polynomial selection, preimage lattice reduction with
optional quadratic-subfield simplification, smoothness testing, and
re-checkable boot certificates -- plus the asymptotic constants that
predict how large the norms and trial counts should be.
"""

from .arith import IntPoly, ModPoly, rational_reconstruction, resultant
from .boot import (
    BootCertificate,
    BootConfig,
    BootError,
    Prediction,
    VerifyReport,
    find_boot,
    predict,
    verify_boot,
)
from .fields import (
    DegenerateTargetError,
    FieldCtx,
    FqElement,
    Tower,
    TowerError,
    detect_tower,
    find_ell,
    is_in_proper_subfield,
    make_monic,
    subfield_reduce,
    subfield_reduce_general,
)
from .lattice import IntMatrix, LLLParams, first_vector_bound, lll_reduce
from .polyselect import (
    Selection,
    SelectionError,
    SelectionReport,
    select_conjugation,
    select_conjugation_with_subfield_tower,
    select_gjl,
    select_jlsv1,
    verify_selection,
)
from .preimage import (
    DegenerateLatticeError,
    Preimage,
    ReductionReport,
    combined_reduce,
    fraction_reduce,
    monic_reduce,
    naive_lift,
    small_combinations,
    subfield_lattice_reduce,
)
from .smooth import (
    CONJ,
    GJL,
    JLSV1,
    PLAIN,
    SUBFIELD,
    ComplexityProfile,
    Factorization,
    Smoothness,
    SmoothnessResult,
    baseline_exponents,
    booting_constants,
    dickman_rho,
    factor_with_bound,
    is_probable_prime,
    l_eval,
    norm_exponent,
    smooth_probability,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # arith
    "IntPoly", "ModPoly", "resultant", "rational_reconstruction",
    # lattice
    "IntMatrix", "LLLParams", "lll_reduce", "first_vector_bound",
    # polyselect
    "Selection", "SelectionError", "SelectionReport",
    "select_jlsv1", "select_gjl", "select_conjugation",
    "select_conjugation_with_subfield_tower", "verify_selection",
    # fields
    "FieldCtx", "FqElement", "Tower", "TowerError", "DegenerateTargetError",
    "detect_tower", "subfield_reduce", "subfield_reduce_general",
    "is_in_proper_subfield", "make_monic", "find_ell",
    # preimage
    "Preimage", "ReductionReport", "DegenerateLatticeError",
    "naive_lift", "fraction_reduce", "monic_reduce",
    "subfield_lattice_reduce", "combined_reduce", "small_combinations",
    # smooth
    "JLSV1", "GJL", "CONJ", "PLAIN", "SUBFIELD",
    "Smoothness", "SmoothnessResult", "Factorization", "ComplexityProfile",
    "factor_with_bound", "is_probable_prime", "dickman_rho",
    "smooth_probability", "l_eval", "booting_constants",
    "norm_exponent", "baseline_exponents",
    # boot
    "BootConfig", "BootCertificate", "BootError", "Prediction",
    "VerifyReport", "find_boot", "verify_boot", "predict",
]
