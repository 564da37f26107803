"""Exact statistics of cyclotomic-polynomial coefficients.

Thin re-export of the compiled core: coefficient engines, value sets,
exact densities and scaled averages, k_min searches, and the bundled
reference tables.
"""

from ._core import (
    average_e,
    coeff,
    coeff_series,
    cyclotomic,
    density,
    empirical_stats,
    euler_phi,
    kmin,
    minus_two_construction,
    moebius,
    partition_count,
    ramanujan_sum,
    squarefree_kernel,
    table,
    twisted_averages,
    value_set,
    verify_tables,
)

__all__ = [
    "average_e",
    "coeff",
    "coeff_series",
    "cyclotomic",
    "density",
    "empirical_stats",
    "euler_phi",
    "kmin",
    "minus_two_construction",
    "moebius",
    "partition_count",
    "ramanujan_sum",
    "squarefree_kernel",
    "table",
    "twisted_averages",
    "value_set",
    "verify_tables",
]
