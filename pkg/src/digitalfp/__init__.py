"""Exhaustive checks for fixed-point questions on finite digital images.

Digital images are finite subsets of Z^n with an adjacency relation.  The
package decides continuity, approximate fixed point properties and
(weak) universality by enumerating continuous maps, builds normal-product
images, and validates the hypotheses of metric fixed-point results with
exact arithmetic.
"""

from .core import (CU, NPU, DigitalImage, Explicit, Point, Verdict, adjacent, adjacent_or_equal,
                   box, component_count, interval, is_connected, is_connected_subset, is_dominating,
                   neighbors)
from .errors import BudgetError, ContradictionError, DigitalFPError, InputError
from .maps import (DigitalMap, EnumerationBudget, all_functions, approximate_fixed_points, compose,
                   count_continuous, enumerate_continuous, find_isomorphism, fixed_points, has_afpp,
                   has_afpp_by_enumeration, inverse, is_continuous, is_continuous_by_connectivity,
                   is_inverse, is_isomorphism, is_universal, is_weakly_universal,
                   strictly_adjacent_points)
from .metric import (LP, DigitalMetricSpace, PointSequence, TableMetric, adjacency_gap_stats,
                     cauchy_modulus, diameter, distance, even_odd_gaps, is_eventually_constant,
                     min_gap, mod4_sequence)
from .product import ProductImage, build_product, product_map, projection

__version__ = "0.1.0"
