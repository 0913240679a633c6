"""Weighted composition operators ``f -> psi * (f o phi)`` on the Schwartz space.

Exact symbolic rules for polynomial data, grid evidence elsewhere.
"""

__version__ = "0.1.0"

from .classifier import (  # noqa: E402
    ClassificationReport,
    ClassifierConfig,
    SymbolPair,
    classify_acts,
    classify_iterates_to_zero,
    classify_power_bounded,
    classify_supercyclicity,
    classify_topologizable,
    classify_universal_weights,
    full_report,
)
from .faadibruno import assemble_F, bell, enumerate_p, fdb_derivative  # noqa: E402
from .growth import check_small_decay, exists_q, numeric_sup, poly_sup_finite  # noqa: E402
from .iterates import IterateCache, iterate_symbol, weight_product  # noqa: E402
from .rootcheck import has_fixed_point, sturm_count  # noqa: E402
from .symcore import parse_expr  # noqa: E402
