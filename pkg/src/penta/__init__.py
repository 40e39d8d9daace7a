"""Exact dimension bounds for unirationality via penultimate tangents."""

from .bounds import BoundReport, MTable, m_table, n_bound, n_of_degree, n_of_multidegree, r_bound, r_of_degree
from .multidegree import MultiDegree, MultiplicitySequence

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "MTable",
    "MultiDegree",
    "MultiplicitySequence",
    "m_table",
    "n_bound",
    "n_of_degree",
    "n_of_multidegree",
    "r_bound",
    "r_of_degree",
]
