from metrics.blocking import block_slices
from metrics.complexity import (SymbolSequence, concatenate_encode, encode_joint, interleave_encode,
                                joint_decode, joint_encode, lz_complexity, normalized_lz)
from metrics.correlations import CorrelationSeries, autocorrelation, cross_correlation, delta_correlation
from metrics.counting import counts_slope, cumulative_counts, emission_rate
from metrics.information import (OccupancyTable, occupancy_from_density_matrix, occupancy_table,
                                 shannon_entropy)
from metrics.statistics import UndefinedCorrelationError, mean_sem, spearman, welch_t_test

__all__ = ["OccupancyTable", "SymbolSequence", "UndefinedCorrelationError", "CorrelationSeries", "autocorrelation",
           "block_slices", "concatenate_encode", "counts_slope", "cross_correlation", "cumulative_counts",
           "delta_correlation", "emission_rate", "encode_joint", "interleave_encode", "joint_decode", "joint_encode",
           "lz_complexity", "mean_sem", "normalized_lz", "occupancy_from_density_matrix", "occupancy_table",
           "shannon_entropy", "spearman", "welch_t_test"]
