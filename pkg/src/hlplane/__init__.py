"""Hall-Littlewood and Macdonald weighted plane partitions, computed exactly.

Three routes to the same generating function (enumeration, vertex-operator
transfer matrices, closed products) plus KP tau-function checks of the
finite-box case.
"""

from .partition import Partition, b_poly, interlaces, multiplicities, phi_poly, skew_hl
from .planepart import (PlanePartition, assemble, enumerate_by_volume, enumerate_in_box,
                        level_decompose, slices, weight_A, weight_via_slices)
from .ring import IntPolyT, IntPolyTQ, Rational, ZSeries, cyclotomic_reduce, poly_mul, series_mul
from .transfer import (WeightedState, gamma_minus_apply, macdonald_product_S, product_formula_S,
                       product_formula_S_box, scalar_product_S, scalar_product_S_box)

__version__ = "0.1.0"
