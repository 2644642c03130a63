"""dngeo: exact symbolic checks for Dirac structures, Nijenhuis operators,
their compatibility, hierarchies, holomorphic counterparts and the
infinitesimal (Lie-algebroid) equations attached to them.

Everything is computed over Q or Q(i) with canonical rational-function
coefficients, so every verdict is an exact symbolic statement rather than a
numerical one.
"""

__version__ = "0.1.0"

from .symbolic import Chart, FracMatrix, GaussianRational, ScalarExpr  # noqa: E402
from .tensor import (  # noqa: E402
    Bivector,
    OneOneTensor,
    PForm,
    VectorField,
)
from .courant import GSection  # noqa: E402
from .dirac import DNReport, GFrame, Verdict, dirac_nijenhuis_report  # noqa: E402

__all__ = [
    "Bivector",
    "Chart",
    "DNReport",
    "FracMatrix",
    "GFrame",
    "GSection",
    "GaussianRational",
    "OneOneTensor",
    "PForm",
    "ScalarExpr",
    "VectorField",
    "Verdict",
    "dirac_nijenhuis_report",
    "__version__",
]
