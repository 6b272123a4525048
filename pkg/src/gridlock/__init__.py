"""Grid-diagram knot Floer homology over F2 and Legendrian concordance obstructions."""

__version__ = "0.1.0"

from .grid import (  # noqa: E402
    ClassicalInvariants,
    GridDiagram,
    Slope,
    classical_invariants,
    commute,
    mirror,
    reverse,
    slope_normalize,
    stabilize,
    trace_components,
    validate,
)
from .complex import (  # noqa: E402
    BigradedComplex,
    GridState,
    enumerate_states,
    filtered_differential,
    gradings,
    hat_dims_from_tilde,
    tilde_differential,
)
from .f2 import F2Matrix, PageData, homology_dims, rank, reduce_pages, solve  # noqa: E402
from .invariants import (  # noqa: E402
    InvariantClass,
    Verdict,
    canonical_cycles,
    concordance_obstruction,
    invariant_class,
)
from .cobordism import MoveScript, check_concordance, compose, euler_characteristic, parse_script  # noqa: E402
from .kernels import BACKEND  # noqa: E402
