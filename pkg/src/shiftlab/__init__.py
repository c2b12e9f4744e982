"""Exact computations for Z^d shifts of finite type and related systems."""

from ._util import BudgetExceeded
from .numtheory import CountSequence
from .sft import (Pattern, SftSpec, Sublattice, TorusConfiguration, fixed_points, full_shift,
                  golden_mean, periodic_count_sequence, periodically_equivalent, product_sft,
                  sublattices_of_index)

__version__ = "0.1.0"
