"""Regression floors for the random-graph experiments.

Measured once with ``experiment_random`` at master seed 0, 20 trials,
n = 2000, greedy min-index colouring, min-index extraction.  Re-measure and
update together with the provenance lines if any of those change.
"""

REFERENCE_SEED = 0
REFERENCE_TRIALS = 20
REFERENCE_N = 2000

# sparse: p = n^-0.7.  Measured min ratio 1.000000, median 1.0, min |X| 8.
SPARSE_C = 0.7
SPARSE_MIN_RATIO_FLOOR = 1.0

# dense: p = 0.1.  Measured min |X| 37 (median 39), min ratio 0.698113
# (median 0.75).  The nominal target ceil(1/(3p)) is 4.
DENSE_P = 0.1
DENSE_MIN_SIZE_FLOOR = 37
DENSE_MIN_RATIO_FLOOR = 0.698113
DENSE_NOMINAL_SIZE = 4
