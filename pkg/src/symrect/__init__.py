"""Symmetric rectilinear partitioning of square sparse matrices."""

from .core import (InfeasibleError, InfeasibleLoadBoundError,
                   InvalidPartitionError, PartitioningError, PartitionVector,
                   SparseMatrix, TileLoadGrid, UndefinedImbalanceError,
                   leading_imbalance, load_imbalance, symmetric_imbalance,
                   tile_loads, transpose, uniform_partition)
from .onedim import IntervalSumTable, build_interval_sums, \
    optimal_1d_partition, refinement
from .oracle import (TooLargeError, VCInstance, has_cover, min_cover_size,
                     optimal_mli, optimal_mnc, vc_to_srp)
from .partitioners import (TransformedMatrix, bac, bal, nicol2d, opal, pal,
                           rac, transform)
from .sparsify import (SparsifyConfig, auto_factor, mnc_p_hint,
                       predicted_error, scale_bound, sparsify)
from .sps import DirectRectLoads, SparsePrefixSum

__all__ = [
    "DirectRectLoads", "InfeasibleError", "InfeasibleLoadBoundError",
    "IntervalSumTable", "InvalidPartitionError", "PartitioningError",
    "PartitionVector", "SparseMatrix", "SparsifyConfig", "SparsePrefixSum",
    "TileLoadGrid", "TooLargeError", "TransformedMatrix",
    "UndefinedImbalanceError", "VCInstance", "auto_factor",
    "bac", "bal", "build_interval_sums", "has_cover", "leading_imbalance",
    "load_imbalance", "min_cover_size", "mnc_p_hint", "nicol2d", "opal",
    "optimal_1d_partition", "optimal_mli", "optimal_mnc", "pal",
    "predicted_error", "rac", "refinement", "scale_bound", "sparsify",
    "symmetric_imbalance", "tile_loads", "transform", "transpose",
    "uniform_partition", "vc_to_srp",
]

__version__ = "0.1.0"
