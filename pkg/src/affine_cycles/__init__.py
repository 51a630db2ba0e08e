"""Exact conjugacy-class statistics for the affine group A(n,q), the parabolic P(n,q) and GL(n,q)."""

from .cycle_index import GroupKind
from .exact import QContext, Series, qcontext
from .measures import MeasureParams, PolyDescriptor, RationalFormData, measure_M, measure_N
from .partitions import Partition

__all__ = [
    "GroupKind",
    "MeasureParams",
    "Partition",
    "PolyDescriptor",
    "QContext",
    "RationalFormData",
    "Series",
    "measure_M",
    "measure_N",
    "qcontext",
]
