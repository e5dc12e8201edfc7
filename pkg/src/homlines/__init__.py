"""Combinatorics of lines on rational homogeneous spaces.

Marked Dynkin diagrams, families of lines and their tangent directions,
relative tangent splitting types, uniform-bundle splitting thresholds,
degree-gap bounds, and the supporting integer Chow-ring computations.
"""

from .diagrams import (
    LineFamilyReport,
    MarkedDiagram,
    ProductSpace,
    case_of,
    grassmannianization,
    is_exposed_short,
    line_family,
    marked,
    neighbors,
    space,
    special_family,
    universal_family,
    vmrt,
)
from .roots import (
    DynkinDiagram,
    Subdiagram,
    build_diagram,
    cartan_matrix,
    classify_subdiagram,
    components_without,
    positive_roots,
)
from .tangent import (
    SplittingType,
    classical_closed_form,
    splitting_type,
    splitting_type_general,
    tag,
    weights,
)
from .thresholds import (
    GapBound,
    VmrtFamily,
    classify_vmrt,
    factor_value,
    gap_bound,
    semistability_necessary,
    slope,
    space_threshold,
    splitting_threshold,
    uniform_verdict,
)

__version__ = "0.1.0"

__all__ = [
    "DynkinDiagram",
    "GapBound",
    "LineFamilyReport",
    "MarkedDiagram",
    "ProductSpace",
    "SplittingType",
    "Subdiagram",
    "VmrtFamily",
    "build_diagram",
    "cartan_matrix",
    "case_of",
    "classical_closed_form",
    "classify_subdiagram",
    "classify_vmrt",
    "components_without",
    "factor_value",
    "gap_bound",
    "grassmannianization",
    "is_exposed_short",
    "line_family",
    "marked",
    "neighbors",
    "positive_roots",
    "semistability_necessary",
    "slope",
    "space",
    "space_threshold",
    "special_family",
    "splitting_threshold",
    "splitting_type",
    "splitting_type_general",
    "tag",
    "uniform_verdict",
    "universal_family",
    "vmrt",
    "weights",
]
