"""Lattice sums, torus test functions and regulator integrals on elliptic curves."""
from .lattice import (  # noqa: F401
    Divisor,
    Lattice,
    TorusPoint,
    TruncationPlan,
    lattice_area,
    pairing,
    pairing_index,
    point_divisor,
    symmetric_divisor,
)
from .sums import (  # noqa: F401
    SumResult,
    ek3_direct,
    ek_sum,
    ek_sum_fft,
    green,
    green_complex,
    green_grid,
    green_normalization,
)
